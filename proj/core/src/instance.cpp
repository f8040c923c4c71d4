#include "aeqts/instance.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aeqts/rng.hpp"

namespace aeqts {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string to_string(InstanceCase c) {
    switch (c) {
        case InstanceCase::I: return "I";
        case InstanceCase::II: return "II";
        case InstanceCase::III: return "III";
        case InstanceCase::Custom: return "custom";
    }
    return "custom";
}

std::optional<InstanceCase> parse_case(std::string_view text) {
    if (text == "I") return InstanceCase::I;
    if (text == "II") return InstanceCase::II;
    if (text == "III") return InstanceCase::III;
    if (text == "custom") return InstanceCase::Custom;
    return std::nullopt;
}

KnapsackInstance::KnapsackInstance(std::vector<Item> items, std::int64_t capacity_x2,
                                   InstanceCase case_tag,
                                   std::optional<std::uint64_t> gen_seed)
    : items_(std::move(items)),
      capacity_x2_(capacity_x2),
      case_tag_(case_tag),
      gen_seed_(gen_seed) {
    if (items_.empty()) throw std::invalid_argument("instance needs at least one item");
    if (capacity_x2_ < 0) throw std::invalid_argument("capacity must be nonnegative");
    for (const Item& it : items_) {
        if (it.weight < 0 || it.profit < 0)
            throw std::invalid_argument("item weights and profits must be nonnegative");
    }
}

KnapsackInstance generate_instance(InstanceCase c, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("generate_instance: k must be positive");

    std::vector<Item> items;
    items.reserve(static_cast<std::size_t>(k));
    Rng rng(seed);

    switch (c) {
        case InstanceCase::I:
            for (int i = 0; i < k; ++i) {
                const std::int64_t w = rng.next_int(1, 10);
                items.push_back({w, w + 5});
            }
            break;
        case InstanceCase::II:
            // Per item: weight draw first, then the profit increment.
            for (int i = 0; i < k; ++i) {
                const std::int64_t w = rng.next_int(1, 10);
                const std::int64_t l = rng.next_int(0, 5);
                items.push_back({w, w + l});
            }
            break;
        case InstanceCase::III:
            for (int i = 0; i < k; ++i) {
                const std::int64_t w = i % 10 + 1;
                items.push_back({w, w + 5});
            }
            break;
        case InstanceCase::Custom:
            throw std::invalid_argument("generate_instance: case must be I, II, or III");
    }

    std::int64_t weight_sum = 0;
    for (const Item& it : items) weight_sum += it.weight;

    // C = half the weight sum, so capacity_x2 is the weight sum itself.
    // Case III carries no seed: any seed yields the same instance.
    const auto recorded_seed =
        c == InstanceCase::III ? std::nullopt : std::optional<std::uint64_t>(seed);
    return KnapsackInstance(std::move(items), weight_sum, c, recorded_seed);
}

Solution make_solution(std::vector<std::uint8_t> bits, const KnapsackInstance& inst) {
    Solution s;
    s.bits = std::move(bits);
    s.weight = total_weight(s, inst);
    s.profit = total_profit(s, inst);
    return s;
}

std::int64_t total_weight(const Solution& s, const KnapsackInstance& inst) {
    if (static_cast<int>(s.bits.size()) != inst.size())
        throw std::invalid_argument("total_weight: bit vector length does not match instance");
    std::int64_t sum = 0;
    for (int i = 0; i < inst.size(); ++i)
        if (s.bits[static_cast<std::size_t>(i)]) sum += inst.item(i).weight;
    return sum;
}

std::int64_t total_profit(const Solution& s, const KnapsackInstance& inst) {
    if (static_cast<int>(s.bits.size()) != inst.size())
        throw std::invalid_argument("total_profit: bit vector length does not match instance");
    std::int64_t sum = 0;
    for (int i = 0; i < inst.size(); ++i)
        if (s.bits[static_cast<std::size_t>(i)]) sum += inst.item(i).profit;
    return sum;
}

std::int64_t dp_optimum(const KnapsackInstance& inst) {
    const std::int64_t budget = inst.capacity_x2() / 2;  // floor(C)
    std::vector<std::int64_t> best(static_cast<std::size_t>(budget) + 1, 0);
    for (const Item& it : inst.items()) {
        if (it.weight > budget) continue;
        for (std::int64_t w = budget; w >= it.weight; --w) {
            const std::int64_t with =
                best[static_cast<std::size_t>(w - it.weight)] + it.profit;
            if (with > best[static_cast<std::size_t>(w)])
                best[static_cast<std::size_t>(w)] = with;
        }
    }
    return best[static_cast<std::size_t>(budget)];
}

OptimalSelection dp_optimum_selection(const KnapsackInstance& inst) {
    const int k = inst.size();
    const std::int64_t budget = inst.capacity_x2() / 2;
    const auto cols = static_cast<std::size_t>(budget) + 1;

    std::vector<std::int64_t> best(cols, 0);
    // took[i][w]: item i improved the budget-w cell when it was processed.
    std::vector<std::vector<bool>> took(static_cast<std::size_t>(k),
                                        std::vector<bool>(cols, false));
    for (int i = 0; i < k; ++i) {
        const Item& it = inst.item(i);
        if (it.weight > budget) continue;
        for (std::int64_t w = budget; w >= it.weight; --w) {
            const std::int64_t with =
                best[static_cast<std::size_t>(w - it.weight)] + it.profit;
            if (with > best[static_cast<std::size_t>(w)]) {
                best[static_cast<std::size_t>(w)] = with;
                took[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)] = true;
            }
        }
    }

    OptimalSelection out;
    out.profit = best[static_cast<std::size_t>(budget)];
    out.bits.assign(static_cast<std::size_t>(k), 0);
    std::int64_t w = budget;
    for (int i = k - 1; i >= 0; --i) {
        if (took[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)]) {
            out.bits[static_cast<std::size_t>(i)] = 1;
            w -= inst.item(i).weight;
        }
    }
    return out;
}

std::string KnapsackInstance::to_json_string() const {
    ordered_json j;
    j["case"] = to_string(case_tag_);
    j["k"] = size();
    if (gen_seed_)
        j["seed"] = *gen_seed_;
    else
        j["seed"] = nullptr;
    j["capacity_x2"] = capacity_x2_;
    ordered_json arr = ordered_json::array();
    for (const Item& it : items_)
        arr.push_back(ordered_json{{"w", it.weight}, {"p", it.profit}});
    j["items"] = std::move(arr);
    return j.dump(2) + "\n";
}

KnapsackInstance KnapsackInstance::from_json_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid instance JSON: ") + e.what());
    }

    try {
        const auto case_text = j.at("case").get<std::string>();
        const auto tag = parse_case(case_text);
        if (!tag) throw std::runtime_error("invalid instance JSON: unknown case \"" + case_text + "\"");

        const int k = j.at("k").get<int>();
        std::optional<std::uint64_t> seed;
        if (!j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
        const auto capacity_x2 = j.at("capacity_x2").get<std::int64_t>();

        std::vector<Item> items;
        for (const auto& e : j.at("items")) {
            items.push_back({e.at("w").get<std::int64_t>(), e.at("p").get<std::int64_t>()});
        }
        if (static_cast<int>(items.size()) != k)
            throw std::runtime_error("invalid instance JSON: k does not match item count");

        return KnapsackInstance(std::move(items), capacity_x2, *tag, seed);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid instance JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid instance JSON: ") + e.what());
    }
}

void KnapsackInstance::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << to_json_string();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

KnapsackInstance KnapsackInstance::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

}  // namespace aeqts
