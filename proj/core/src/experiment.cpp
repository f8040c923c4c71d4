#include "aeqts/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace aeqts {

namespace {

using ordered_json = nlohmann::ordered_json;

// %.17g round-trips any double through text.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json summary_to_json(const AggregateStats& s) {
    ordered_json j;
    j["algorithm"] = s.algorithm;
    j["pair_count"] = s.pair_count;
    j["n"] = s.population_size;
    j["max_iter"] = s.max_iter;
    j["theta"] = s.theta;
    j["trials"] = s.trials;
    j["master_seed"] = s.master_seed;
    j["mean_final_profit"] = s.mean_final_profit;
    j["std_final_profit"] = s.std_final_profit;
    j["mean_last_update"] = s.mean_last_update;
    j["instance_file"] = s.instance_file;
    return j;
}

AggregateStats summary_from_json(const ordered_json& j) {
    AggregateStats s;
    try {
        s.algorithm = j.at("algorithm").get<std::string>();
        s.pair_count = j.at("pair_count").get<int>();
        s.population_size = j.at("n").get<int>();
        s.max_iter = j.at("max_iter").get<int>();
        s.theta = j.at("theta").get<double>();
        s.trials = j.at("trials").get<int>();
        s.master_seed = j.at("master_seed").get<std::uint64_t>();
        s.mean_final_profit = j.at("mean_final_profit").get<double>();
        s.std_final_profit = j.at("std_final_profit").get<double>();
        s.mean_last_update = j.at("mean_last_update").get<double>();
        s.instance_file = j.at("instance_file").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid summary JSON: ") + e.what());
    }
    return s;
}

}  // namespace

AggregateStats run_trials(const SolverConfig& config, const KnapsackInstance& inst,
                          int trials, std::uint64_t master_seed, int threads) {
    config.validate();
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be positive");

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    auto run_one = [&](int i) {
        SolverConfig c = config;
        c.seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
        results[static_cast<std::size_t>(i)] = run(c, inst);
    };

    if (threads <= 1) {
        for (int i = 0; i < trials; ++i) run_one(i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= trials) return;
                run_one(i);
            }
        };
        const int count = std::min(threads, trials);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Merge in trial-index order; the arithmetic never depends on scheduling.
    AggregateStats s;
    s.algorithm = config.pair_count == 1 ? "qts" : "ae-qts";
    s.population_size = config.population_size;
    s.max_iter = config.max_iter;
    s.pair_count = config.pair_count;
    s.theta = config.theta;
    s.trials = trials;
    s.master_seed = master_seed;

    const auto iters = static_cast<std::size_t>(config.max_iter);
    s.mean_curve.resize(iters);
    s.std_curve.resize(iters);
    s.min_curve.resize(iters);
    s.max_curve.resize(iters);
    for (std::size_t t = 0; t < iters; ++t) {
        std::int64_t sum = 0;
        std::int64_t lo = results[0].curve[t];
        std::int64_t hi = lo;
        for (const TrialResult& r : results) {
            sum += r.curve[t];
            lo = std::min(lo, r.curve[t]);
            hi = std::max(hi, r.curve[t]);
        }
        const double mean = static_cast<double>(sum) / trials;
        double sq = 0.0;
        for (const TrialResult& r : results) {
            const double d = static_cast<double>(r.curve[t]) - mean;
            sq += d * d;
        }
        s.mean_curve[t] = mean;
        s.std_curve[t] = std::sqrt(sq / trials);
        s.min_curve[t] = lo;
        s.max_curve[t] = hi;
    }

    std::int64_t final_sum = 0;
    std::int64_t update_sum = 0;
    for (const TrialResult& r : results) {
        final_sum += r.best_profit;
        update_sum += r.last_update_iter;
    }
    s.mean_final_profit = static_cast<double>(final_sum) / trials;
    double sq = 0.0;
    for (const TrialResult& r : results) {
        const double d = static_cast<double>(r.best_profit) - s.mean_final_profit;
        sq += d * d;
    }
    s.std_final_profit = std::sqrt(sq / trials);
    s.mean_last_update = static_cast<double>(update_sum) / trials;
    return s;
}

ComparisonReport poi(const AggregateStats& baseline, const AggregateStats& improved) {
    if (baseline.instance_file != improved.instance_file)
        throw MismatchedStatsError("poi: stats describe different instances (\"" +
                                   baseline.instance_file + "\" vs \"" +
                                   improved.instance_file + "\")");
    if (baseline.max_iter != improved.max_iter)
        throw MismatchedStatsError("poi: stats use different max_iter budgets");
    if (baseline.mean_last_update == 0.0)
        throw UndefinedComparisonError("poi: baseline mean last-update iteration is zero");

    ComparisonReport r;
    r.baseline = baseline;
    r.improved = improved;
    r.poi_percent = (baseline.mean_last_update - improved.mean_last_update) /
                    baseline.mean_last_update * 100.0;
    return r;
}

ExportPaths export_stats(const AggregateStats& stats, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    ExportPaths paths{dir / (stats.algorithm + "_curve.csv"),
                      dir / (stats.algorithm + "_summary.json")};

    {
        std::ofstream csv(paths.curve_csv, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot open for writing: " + paths.curve_csv.string());
        csv << "iteration,mean_best,std_best,min_best,max_best\n";
        for (std::size_t t = 0; t < stats.mean_curve.size(); ++t) {
            csv << (t + 1) << ',' << fmt(stats.mean_curve[t]) << ','
                << fmt(stats.std_curve[t]) << ',' << stats.min_curve[t] << ','
                << stats.max_curve[t] << '\n';
        }
        if (!csv) throw std::runtime_error("write failed: " + paths.curve_csv.string());
    }
    {
        std::ofstream out(paths.summary_json, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + paths.summary_json.string());
        out << summary_to_json(stats).dump(2) << '\n';
        if (!out) throw std::runtime_error("write failed: " + paths.summary_json.string());
    }
    return paths;
}

AggregateStats load_summary(const std::filesystem::path& summary_json) {
    std::ifstream in(summary_json, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open summary file: " + summary_json.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid summary JSON: ") + e.what());
    }
    return summary_from_json(j);
}

AggregateStats import_stats(const std::filesystem::path& curve_csv,
                            const std::filesystem::path& summary_json) {
    AggregateStats s = load_summary(summary_json);

    std::ifstream csv(curve_csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open curve file: " + curve_csv.string());
    std::string line;
    if (!std::getline(csv, line) || line != "iteration,mean_best,std_best,min_best,max_best")
        throw std::runtime_error("invalid curve CSV header: " + curve_csv.string());

    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 5)
            throw std::runtime_error("invalid curve CSV row: " + line);
        s.mean_curve.push_back(std::stod(fields[1]));
        s.std_curve.push_back(std::stod(fields[2]));
        s.min_curve.push_back(std::stoll(fields[3]));
        s.max_curve.push_back(std::stoll(fields[4]));
    }
    if (static_cast<int>(s.mean_curve.size()) != s.max_iter)
        throw std::runtime_error("curve CSV row count does not match max_iter: " +
                                 curve_csv.string());
    return s;
}

void write_comparison(const ComparisonReport& report, const std::filesystem::path& path) {
    ordered_json j;
    j["baseline"] = summary_to_json(report.baseline);
    j["improved"] = summary_to_json(report.improved);
    j["poi_percent"] = report.poi_percent;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace aeqts
