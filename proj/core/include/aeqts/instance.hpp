#ifndef AEQTS_INSTANCE_HPP
#define AEQTS_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aeqts {

struct Item {
    std::int64_t weight = 0;
    std::int64_t profit = 0;

    bool operator==(const Item&) const = default;
};

enum class InstanceCase { I, II, III, Custom };

std::string to_string(InstanceCase c);
std::optional<InstanceCase> parse_case(std::string_view text);

// Immutable 0/1 knapsack instance. The capacity is stored doubled
// (capacity_x2) so the half-of-total-weight rule stays exact when the weight
// sum is odd; feasibility tests compare 2 * load against it.
class KnapsackInstance {
public:
    KnapsackInstance(std::vector<Item> items, std::int64_t capacity_x2,
                     InstanceCase case_tag = InstanceCase::Custom,
                     std::optional<std::uint64_t> gen_seed = std::nullopt);

    int size() const { return static_cast<int>(items_.size()); }
    const std::vector<Item>& items() const { return items_; }
    const Item& item(int i) const { return items_[static_cast<std::size_t>(i)]; }
    std::int64_t capacity_x2() const { return capacity_x2_; }
    double capacity() const { return static_cast<double>(capacity_x2_) / 2.0; }
    InstanceCase case_tag() const { return case_tag_; }
    std::optional<std::uint64_t> gen_seed() const { return gen_seed_; }

    bool fits(std::int64_t load) const { return 2 * load <= capacity_x2_; }

    std::string to_json_string() const;
    static KnapsackInstance from_json_string(const std::string& text);
    void save(const std::filesystem::path& path) const;
    static KnapsackInstance load(const std::filesystem::path& path);

    bool operator==(const KnapsackInstance&) const = default;

private:
    std::vector<Item> items_;
    std::int64_t capacity_x2_ = 0;
    InstanceCase case_tag_ = InstanceCase::Custom;
    std::optional<std::uint64_t> gen_seed_;
};

// A selection vector with cached totals. The caches are maintained
// incrementally by repair; tests recompute them from the bits.
struct Solution {
    std::vector<std::uint8_t> bits;
    std::int64_t weight = 0;
    std::int64_t profit = 0;

    bool operator==(const Solution&) const = default;
};

// Builds a Solution from raw bits with the caches filled in.
Solution make_solution(std::vector<std::uint8_t> bits, const KnapsackInstance& inst);

// Instance families: case I draws integer weights from {1..10} with profit
// w+5, case II adds a uniform increment from {0..5} instead, case III cycles
// weights 1..10 deterministically (the seed is ignored and not recorded).
KnapsackInstance generate_instance(InstanceCase c, int k, std::uint64_t seed);

std::int64_t total_weight(const Solution& s, const KnapsackInstance& inst);
std::int64_t total_profit(const Solution& s, const KnapsackInstance& inst);

// Exact optimum by dynamic programming over the integer budget floor(C),
// which is lossless because all weights are integers.
std::int64_t dp_optimum(const KnapsackInstance& inst);

struct OptimalSelection {
    std::int64_t profit = 0;
    std::vector<std::uint8_t> bits;
};

// Same optimum plus one witness selection achieving it.
OptimalSelection dp_optimum_selection(const KnapsackInstance& inst);

}  // namespace aeqts

#endif  // AEQTS_INSTANCE_HPP
