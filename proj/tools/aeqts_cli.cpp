// Command-line front end: instance generation, single runs, multi-trial
// benchmarks, improvement comparisons, and the exact optimum oracle.
//
// Exit codes: 0 success, 1 runtime/IO failure, 2 usage error.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "aeqts/experiment.hpp"
#include "aeqts/instance.hpp"
#include "aeqts/solver.hpp"

namespace {

using namespace aeqts;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_capacity(const KnapsackInstance& inst) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", inst.capacity());
    return buf;
}

// Accepts plain radians ("0.0314") or a pi multiple ("0.01pi", "pi").
double parse_theta(const std::string& text) {
    std::string body = text;
    double factor = 1.0;
    if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
        factor = std::numbers::pi;
        body = body.substr(0, body.size() - 2);
        if (body.empty()) return factor;
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(body, &used);
        if (used != body.size()) throw UsageError("invalid theta: " + text);
        return value * factor;
    } catch (const std::logic_error&) {
        throw UsageError("invalid theta: " + text);
    }
}

struct SolverFlags {
    std::string algo = "ae-qts";
    int n = 10;
    int max_iter = 1000;
    std::string theta_text = "0.01pi";
    int pair_count = -1;  // -1: derive from algo
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--algo", f.algo, "Update rule: ae-qts or qts")
        ->check(CLI::IsMember({"ae-qts", "qts"}))
        ->capture_default_str();
    cmd->add_option("--n", f.n, "Population size")->capture_default_str();
    cmd->add_option("--max-iter", f.max_iter, "Iteration budget")->capture_default_str();
    cmd->add_option("--theta", f.theta_text, "Base rotation angle (radians or e.g. 0.01pi)")
        ->capture_default_str();
    cmd->add_option("--pair-count", f.pair_count,
                    "Best/worst pairs per update (ae-qts default: n/2)");
}

SolverConfig resolve_config(const SolverFlags& f, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.population_size = f.n;
    cfg.max_iter = f.max_iter;
    cfg.theta = parse_theta(f.theta_text);
    cfg.seed = seed;
    if (f.algo == "qts") {
        if (f.pair_count != -1 && f.pair_count != 1)
            throw UsageError("qts uses exactly one pair; drop --pair-count or pass 1");
        cfg.pair_count = 1;
    } else {
        cfg.pair_count = f.pair_count == -1 ? f.n / 2 : f.pair_count;
    }
    cfg.validate();
    return cfg;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

int cmd_gen(const std::string& case_text, int k, std::uint64_t seed,
            const std::string& out_path) {
    const auto tag = parse_case(case_text);
    if (!tag || *tag == InstanceCase::Custom)
        throw UsageError("case must be I, II, or III");
    const KnapsackInstance inst = generate_instance(*tag, k, seed);
    inst.save(out_path);
    std::cout << "k: " << inst.size() << "\n"
              << "capacity: " << fmt_capacity(inst) << "\n"
              << "seed: " << seed << "\n"
              << "wrote: " << out_path << "\n";
    return 0;
}

int cmd_run(const std::string& instance_path, const SolverFlags& flags,
            std::uint64_t seed, const std::string& trace_path,
            const std::string& register_path) {
    const KnapsackInstance inst = KnapsackInstance::load(instance_path);
    const SolverConfig cfg = resolve_config(flags, seed);

    Solver solver(cfg, inst);
    std::ofstream trace;
    if (!trace_path.empty()) {
        trace.open(trace_path, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot open for writing: " + trace_path);
        trace << "t,best_so_far,iter_best,iter_worst\n";
    }
    while (!solver.done()) {
        solver.step();
        if (trace.is_open())
            trace << solver.iteration() << ',' << solver.best().profit << ','
                  << solver.iter_best_profit() << ',' << solver.iter_worst_profit() << '\n';
    }
    if (!register_path.empty()) {
        std::ofstream reg_out(register_path, std::ios::binary);
        if (!reg_out) throw std::runtime_error("cannot open for writing: " + register_path);
        reg_out << "qubit_index,alpha,beta\n";
        const QubitRegister& reg = solver.reg();
        for (std::size_t i = 0; i < reg.size(); ++i)
            reg_out << i << ',' << fmt_double(reg[i].alpha) << ','
                    << fmt_double(reg[i].beta) << '\n';
    }

    const Solution& best = solver.best();
    const bool feasible = inst.fits(best.weight);
    std::cout << "instance: " << instance_path << " (k=" << inst.size()
              << ", capacity=" << fmt_capacity(inst) << ")\n"
              << "n: " << cfg.population_size << "\n"
              << "max_iter: " << cfg.max_iter << "\n"
              << "theta: " << fmt_double(cfg.theta) << "\n"
              << "pair_count: " << cfg.pair_count << "\n"
              << "seed: " << cfg.seed << "\n"
              << "best_profit: " << best.profit << "\n"
              << "last_update_iter: " << solver.last_update_iter() << "\n"
              << "feasible: " << (feasible ? "yes" : "no") << " (weight " << best.weight
              << " <= capacity " << fmt_capacity(inst) << ")\n";
    return feasible ? 0 : 1;
}

int cmd_bench(const std::string& instance_path, const SolverFlags& flags, int trials,
              std::uint64_t master_seed, const std::string& out_dir, int threads) {
    if (trials < 1) throw UsageError("--trials must be positive");
    if (threads < 1) throw UsageError("--threads must be positive");
    const KnapsackInstance inst = KnapsackInstance::load(instance_path);
    const SolverConfig cfg = resolve_config(flags, 0);

    AggregateStats stats = run_trials(cfg, inst, trials, master_seed, threads);
    stats.instance_file = instance_path;
    const ExportPaths paths = export_stats(stats, out_dir);
    std::cout << "trials: " << trials << "\n"
              << "mean_final_profit: " << fmt_double(stats.mean_final_profit) << "\n"
              << "mean_last_update: " << fmt_double(stats.mean_last_update) << "\n"
              << "wrote: " << paths.curve_csv.string() << "\n"
              << "wrote: " << paths.summary_json.string() << "\n";
    return 0;
}

int cmd_compare(const std::string& baseline_path, const std::string& improved_path,
                const std::string& out_path) {
    const AggregateStats baseline = load_summary(baseline_path);
    const AggregateStats improved = load_summary(improved_path);
    const ComparisonReport report = poi(baseline, improved);
    write_comparison(report, out_path);
    std::cout << "baseline_mean_last_update: " << fmt_double(baseline.mean_last_update) << "\n"
              << "improved_mean_last_update: " << fmt_double(improved.mean_last_update) << "\n"
              << "poi_percent: " << fmt_double(report.poi_percent) << "\n"
              << "wrote: " << out_path << "\n";
    return 0;
}

int cmd_oracle(const std::string& instance_path) {
    const KnapsackInstance inst = KnapsackInstance::load(instance_path);
    const OptimalSelection opt = dp_optimum_selection(inst);
    const Solution check = make_solution(opt.bits, inst);
    std::cout << "optimum: " << opt.profit << "\n"
              << "selection: " << bits_to_string(opt.bits) << "\n"
              << "weight: " << check.weight << "\n"
              << "capacity: " << fmt_capacity(inst) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-inspired tabu search solvers for the 0/1 knapsack problem"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a knapsack instance file");
    std::string gen_case;
    int gen_k = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--case", gen_case, "Instance family: I, II, or III")
        ->required()
        ->check(CLI::IsMember({"I", "II", "III"}));
    gen->add_option("--k", gen_k, "Number of items")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Generator seed (ignored by case III)")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "Output instance file")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "Run one solver trial");
    std::string run_instance;
    SolverFlags run_flags;
    std::uint64_t run_seed = 0;
    std::string run_trace;
    std::string run_register;
    run_cmd->add_option("instance", run_instance, "Instance file")->required();
    add_solver_flags(run_cmd, run_flags);
    run_cmd->add_option("--seed", run_seed, "Trial seed")->capture_default_str();
    run_cmd->add_option("--trace", run_trace, "Write per-iteration CSV to this path");
    run_cmd->add_option("--dump-register", run_register,
                        "Write the final register state CSV to this path");

    // bench
    auto* bench = app.add_subcommand("bench", "Aggregate many seeded trials");
    std::string bench_instance;
    SolverFlags bench_flags;
    int bench_trials = 100;
    std::uint64_t bench_master = 0;
    std::string bench_out;
    int bench_threads = 1;
    bench->add_option("instance", bench_instance, "Instance file")->required();
    add_solver_flags(bench, bench_flags);
    bench->add_option("--trials", bench_trials, "Number of trials")->capture_default_str();
    bench->add_option("--master-seed", bench_master, "Master seed for trial fan-out")
        ->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->required();
    bench->add_option("--threads", bench_threads, "Worker threads (results are identical)")
        ->capture_default_str();

    // compare
    auto* compare = app.add_subcommand("compare", "Improvement report from two summaries");
    std::string cmp_baseline;
    std::string cmp_improved;
    std::string cmp_out;
    compare->add_option("baseline", cmp_baseline, "Baseline summary JSON")->required();
    compare->add_option("improved", cmp_improved, "Improved summary JSON")->required();
    compare->add_option("--out", cmp_out, "Output comparison JSON")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact optimum of an instance file");
    std::string oracle_instance;
    oracle->add_option("instance", oracle_instance, "Instance file")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_case, gen_k, gen_seed, gen_out);
        if (run_cmd->parsed())
            return cmd_run(run_instance, run_flags, run_seed, run_trace, run_register);
        if (bench->parsed())
            return cmd_bench(bench_instance, bench_flags, bench_trials, bench_master,
                             bench_out, bench_threads);
        if (compare->parsed()) return cmd_compare(cmp_baseline, cmp_improved, cmp_out);
        if (oracle->parsed()) return cmd_oracle(oracle_instance);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
