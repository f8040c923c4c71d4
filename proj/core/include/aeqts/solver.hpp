#ifndef AEQTS_SOLVER_HPP
#define AEQTS_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "aeqts/instance.hpp"
#include "aeqts/qreg.hpp"
#include "aeqts/rng.hpp"

namespace aeqts {

inline constexpr double kDefaultTheta = 0.031415926535897934;  // 0.01 * pi

// All tunables of one run. pair_count selects the update rule: N/2 pairs is
// the amplitude-ensemble update, a single pair is the classic tabu update.
struct SolverConfig {
    int population_size = 10;
    int max_iter = 1000;
    double theta = kDefaultTheta;
    int pair_count = 5;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

SolverConfig make_ae_qts_config(int population_size, int max_iter, double theta,
                                std::uint64_t seed);
SolverConfig make_qts_config(int population_size, int max_iter, double theta,
                             std::uint64_t seed);

using Population = std::vector<Solution>;

struct TrialResult {
    std::int64_t best_profit = 0;
    std::vector<std::uint8_t> best_bits;
    int last_update_iter = 0;
    std::vector<std::int64_t> curve;  // best-so-far profit per iteration
    std::uint64_t trial_seed = 0;
};

// Makes s feasible, then maximal. Removal phase: while the load exceeds the
// capacity, unset a uniformly chosen selected item. Addition phase: set a
// uniformly chosen unselected item that still fits, until none does.
//
// Draw protocol (part of the determinism contract): candidates are gathered
// in ascending index order, one draw picks a position, and the picked slot
// is back-filled from the end. Before each addition draw the no-longer-
// fitting candidates are dropped in a stable pass.
void repair(Solution& s, const KnapsackInstance& inst, Rng& rng);

// N measured solutions, drawn one at a time: the K measurement draws of a
// member come first, then its repair draws, before the next member starts.
Population make_population(const QubitRegister& reg, const KnapsackInstance& inst,
                           int n, Rng& rng);

// Rank the population by profit (descending, ties keep population order) and
// rotate the register once per pair (rank i, rank N-1-i), i = 0..pair_count-1.
// Pair i uses the table angle divided by i+1, so lower-ranked pairs pull
// less. Quadrants are re-read per rotation: pair i's result feeds pair i+1.
void update_register(QubitRegister& reg, const Population& pop, double theta,
                     int pair_count);

// First index of maximum profit / last index of minimum profit. These match
// the front and back of a stable descending sort, which is what the pairing
// in update_register uses.
int best_index(const Population& pop);
int worst_index(const Population& pop);

// One seeded run. Construction draws a full population to seed the incumbent
// (consuming RNG state ahead of the loop); each step() is one
// measure / repair / evaluate / update iteration. step() is public so tests
// can watch register trajectories.
//
// The instance must outlive the solver and is never modified.
class Solver {
public:
    Solver(const SolverConfig& config, const KnapsackInstance& inst);

    void step();
    bool done() const { return t_ >= config_.max_iter; }

    // Steps to max_iter and packages the result.
    TrialResult finish();

    int iteration() const { return t_; }
    const SolverConfig& config() const { return config_; }
    const QubitRegister& reg() const { return reg_; }
    const Solution& best() const { return best_; }
    int last_update_iter() const { return last_update_; }
    const std::vector<std::int64_t>& curve() const { return curve_; }
    const Population& last_population() const { return last_pop_; }
    std::int64_t iter_best_profit() const { return iter_best_; }
    std::int64_t iter_worst_profit() const { return iter_worst_; }

private:
    SolverConfig config_;
    const KnapsackInstance* inst_;
    Rng rng_;
    QubitRegister reg_;
    Population last_pop_;
    Solution best_;
    int t_ = 0;
    int last_update_ = 0;
    std::int64_t iter_best_ = 0;
    std::int64_t iter_worst_ = 0;
    std::vector<std::int64_t> curve_;
};

TrialResult run(const SolverConfig& config, const KnapsackInstance& inst);

}  // namespace aeqts

#endif  // AEQTS_SOLVER_HPP
