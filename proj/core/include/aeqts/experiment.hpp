#ifndef AEQTS_EXPERIMENT_HPP
#define AEQTS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "aeqts/instance.hpp"
#include "aeqts/solver.hpp"

namespace aeqts {

// Raised when two stats are compared that do not describe the same
// experiment (different instance or iteration budget).
struct MismatchedStatsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the improvement ratio has no meaning (baseline never improved
// past its initial incumbent, so its mean last-update iteration is zero).
struct UndefinedComparisonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cross-trial aggregate of R runs sharing one config and instance.
// std values are population standard deviations (divide by R).
struct AggregateStats {
    std::string algorithm;  // "qts" when pair_count == 1, "ae-qts" otherwise
    int population_size = 0;
    int max_iter = 0;
    int pair_count = 0;
    double theta = 0.0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::string instance_file;

    std::vector<double> mean_curve;        // mean best-so-far per iteration
    std::vector<double> std_curve;
    std::vector<std::int64_t> min_curve;
    std::vector<std::int64_t> max_curve;

    double mean_final_profit = 0.0;
    double std_final_profit = 0.0;
    double mean_last_update = 0.0;

    bool operator==(const AggregateStats&) const = default;
};

struct ComparisonReport {
    AggregateStats baseline;
    AggregateStats improved;
    double poi_percent = 0.0;
};

// R trials of config on inst; trial i runs with seed derive_seed(master, i).
// With threads > 1 the trials execute concurrently, but results are merged
// by trial index, so the aggregate is identical either way.
// instance_file is left empty; callers that export should fill it in.
AggregateStats run_trials(const SolverConfig& config, const KnapsackInstance& inst,
                          int trials, std::uint64_t master_seed, int threads = 1);

// Percentage of improvement: relative reduction of the mean last-update
// iteration of `improved` against `baseline`, in percent.
ComparisonReport poi(const AggregateStats& baseline, const AggregateStats& improved);

struct ExportPaths {
    std::filesystem::path curve_csv;
    std::filesystem::path summary_json;
};

// Writes <dir>/<algorithm>_curve.csv and <dir>/<algorithm>_summary.json.
// Numbers are written with enough digits that import_stats reproduces the
// stats exactly, and both files are byte-stable for identical stats.
ExportPaths export_stats(const AggregateStats& stats, const std::filesystem::path& dir);

AggregateStats import_stats(const std::filesystem::path& curve_csv,
                            const std::filesystem::path& summary_json);

// Reads only the scalar summary; curves are left empty.
AggregateStats load_summary(const std::filesystem::path& summary_json);

void write_comparison(const ComparisonReport& report, const std::filesystem::path& path);

}  // namespace aeqts

#endif  // AEQTS_EXPERIMENT_HPP
