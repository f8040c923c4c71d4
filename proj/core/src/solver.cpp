#include "aeqts/solver.hpp"

#include <algorithm>
#include <cassert>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace aeqts {

void SolverConfig::validate() const {
    if (population_size < 2)
        throw std::invalid_argument("population_size must be at least 2");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be nonnegative");
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2))
        throw std::invalid_argument("theta must lie in (0, pi/2)");
    if (pair_count < 1 || pair_count > population_size / 2)
        throw std::invalid_argument("pair_count must lie in [1, population_size/2]");
}

SolverConfig make_ae_qts_config(int population_size, int max_iter, double theta,
                                std::uint64_t seed) {
    return {population_size, max_iter, theta, population_size / 2, seed};
}

SolverConfig make_qts_config(int population_size, int max_iter, double theta,
                             std::uint64_t seed) {
    return {population_size, max_iter, theta, 1, seed};
}

void repair(Solution& s, const KnapsackInstance& inst, Rng& rng) {
    const int k = inst.size();
    if (static_cast<int>(s.bits.size()) != k)
        throw std::invalid_argument("repair: bit vector length does not match instance");
    assert(s.weight == total_weight(s, inst) && s.profit == total_profit(s, inst));

    const auto& items = inst.items();

    if (!inst.fits(s.weight)) {
        std::vector<int> selected;
        selected.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            if (s.bits[static_cast<std::size_t>(i)]) selected.push_back(i);
        while (!inst.fits(s.weight)) {
            const auto pos = static_cast<std::size_t>(rng.next_below(selected.size()));
            const int j = selected[pos];
            selected[pos] = selected.back();
            selected.pop_back();
            s.bits[static_cast<std::size_t>(j)] = 0;
            s.weight -= items[static_cast<std::size_t>(j)].weight;
            s.profit -= items[static_cast<std::size_t>(j)].profit;
        }
    }

    std::vector<int> candidates;
    candidates.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        if (!s.bits[static_cast<std::size_t>(i)]) candidates.push_back(i);
    for (;;) {
        std::erase_if(candidates, [&](int i) {
            return !inst.fits(s.weight + items[static_cast<std::size_t>(i)].weight);
        });
        if (candidates.empty()) break;
        const auto pos = static_cast<std::size_t>(rng.next_below(candidates.size()));
        const int j = candidates[pos];
        candidates[pos] = candidates.back();
        candidates.pop_back();
        s.bits[static_cast<std::size_t>(j)] = 1;
        s.weight += items[static_cast<std::size_t>(j)].weight;
        s.profit += items[static_cast<std::size_t>(j)].profit;
    }

    assert(inst.fits(s.weight));
    assert(s.weight == total_weight(s, inst) && s.profit == total_profit(s, inst));
}

Population make_population(const QubitRegister& reg, const KnapsackInstance& inst,
                           int n, Rng& rng) {
    assert(n >= 1);
    Population pop;
    pop.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Solution s = make_solution(measure(reg, rng), inst);
        repair(s, inst, rng);
        pop.push_back(std::move(s));
    }
    return pop;
}

void update_register(QubitRegister& reg, const Population& pop, double theta,
                     int pair_count) {
    const int n = static_cast<int>(pop.size());
    if (n < 2)
        throw std::invalid_argument("update_register: population needs at least two members");
    if (pair_count < 1 || pair_count > n / 2)
        throw std::invalid_argument("update_register: pair_count out of range");

    std::vector<int> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pop[static_cast<std::size_t>(a)].profit > pop[static_cast<std::size_t>(b)].profit;
    });

    const int k = static_cast<int>(reg.size());
    for (int pair = 0; pair < pair_count; ++pair) {
        const Solution& best = pop[static_cast<std::size_t>(order[static_cast<std::size_t>(pair)])];
        const Solution& worst =
            pop[static_cast<std::size_t>(order[static_cast<std::size_t>(n - 1 - pair)])];
        assert(static_cast<int>(best.bits.size()) == k);
        const double divisor = pair + 1;
        for (int j = 0; j < k; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            const AngleDelta delta =
                lookup_delta(best.bits[jj], worst.bits[jj], quadrant(reg[jj]), theta);
            if (delta.radians == 0.0) continue;
            reg[jj] = rotate(reg[jj], AngleDelta{delta.radians / divisor});
        }
    }
}

int best_index(const Population& pop) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(pop.size()); ++i)
        if (pop[static_cast<std::size_t>(i)].profit > pop[static_cast<std::size_t>(best)].profit)
            best = i;
    return best;
}

int worst_index(const Population& pop) {
    int worst = 0;
    for (int i = 1; i < static_cast<int>(pop.size()); ++i)
        if (pop[static_cast<std::size_t>(i)].profit <= pop[static_cast<std::size_t>(worst)].profit)
            worst = i;
    return worst;
}

Solver::Solver(const SolverConfig& config, const KnapsackInstance& inst)
    : config_(config), inst_(&inst), rng_(config.seed) {
    config_.validate();
    reg_ = init_register(inst.size());
    last_pop_ = make_population(reg_, inst, config_.population_size, rng_);
    best_ = last_pop_[static_cast<std::size_t>(best_index(last_pop_))];
    iter_best_ = best_.profit;
    iter_worst_ = last_pop_[static_cast<std::size_t>(worst_index(last_pop_))].profit;
}

void Solver::step() {
    ++t_;
    last_pop_ = make_population(reg_, *inst_, config_.population_size, rng_);
    update_register(reg_, last_pop_, config_.theta, config_.pair_count);
    const Solution& b = last_pop_[static_cast<std::size_t>(best_index(last_pop_))];
    iter_best_ = b.profit;
    iter_worst_ = last_pop_[static_cast<std::size_t>(worst_index(last_pop_))].profit;
    if (b.profit > best_.profit) {
        best_ = b;
        last_update_ = t_;
    }
    curve_.push_back(best_.profit);
}

TrialResult Solver::finish() {
    while (!done()) step();
    TrialResult r;
    r.best_profit = best_.profit;
    r.best_bits = best_.bits;
    r.last_update_iter = last_update_;
    r.curve = curve_;
    r.trial_seed = config_.seed;
    return r;
}

TrialResult run(const SolverConfig& config, const KnapsackInstance& inst) {
    return Solver(config, inst).finish();
}

}  // namespace aeqts
