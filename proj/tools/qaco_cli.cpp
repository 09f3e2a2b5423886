#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qaco/benchmark.hpp"
#include "qaco/circuit_export.hpp"

using namespace qaco;

namespace {

struct CommonOptions {
    std::uint64_t seed = 1;
    std::optional<double> beta0;
    std::optional<int> conver_condition;
    std::optional<int> max_iter;
    std::optional<double> rho;
    std::string mode;
    std::string exploration;
    double table_scale = 1.0;

    SolverOverrides overrides() const {
        SolverOverrides o;
        o.beta0 = beta0;
        o.conver_condition = conver_condition;
        o.max_iter = max_iter;
        o.rho = rho;
        o.table_scale = table_scale;
        if (mode == "unraveled") o.sim_mode = SimMode::Unraveled;
        if (mode == "explicit-reset") o.sim_mode = SimMode::ExplicitReset;
        if (exploration == "cnot") o.exploration = ExplorationMode::CnotPerQubit;
        if (exploration == "fredkin") o.exploration = ExplorationMode::RandomizedFredkinPairs;
        return o;
    }
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--seed", opts.seed, "master random seed");
    cmd->add_option("--beta0", opts.beta0, "starting exploration probability");
    cmd->add_option("--conver-condition", opts.conver_condition,
                    "consecutive non-improving iterations before stopping");
    cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
    cmd->add_option("--mode", opts.mode, "simulation mode")
        ->check(CLI::IsMember({"unraveled", "explicit-reset"}));
    cmd->add_option("--exploration", opts.exploration, "exploration gate family")
        ->check(CLI::IsMember({"cnot", "fredkin"}));
    cmd->add_option("--rho", opts.rho, "trail evaporation (classical solver)");
    cmd->add_option("--table-scale", opts.table_scale, "scale on the update-table magnitudes");
}

int run_solve(const std::string& instance_path, const std::string& algo,
              const CommonOptions& opts, int ants, const std::string& out_path) {
    const QapInstance instance = load_instance(instance_path);

    if (algo == "brute") {
        const Solution best = brute_force_opt(instance);
        std::printf("best %s\nfitness %.17g\n", best.bits.c_str(), best.fitness);
        return 0;
    }

    RunReport report;
    if (algo == "qaco") {
        QacoConfig config = resolve_qaco_config(instance, opts.overrides());
        config.seed = opts.seed;
        Rng rng(config.seed);
        report = run_qaco(instance, config, rng);
    } else {
        const AcoConfig config = resolve_aco_config(instance, opts.overrides(), ants);
        Rng rng(opts.seed);
        report = run_aco(instance, config, rng);
    }
    std::printf("best %s\nfitness %.17g\nexit_iteration %d\n", report.best.bits.c_str(),
                report.best.fitness, report.exit_iteration);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write report file: " + out_path);
        write_report(report, out);
    }
    return 0;
}

int run_benchmark_cmd(const BenchmarkSpec& spec, const std::string& out_path) {
    const BenchmarkSummary summary = run_benchmark(spec);
    std::cout << format_table(summary);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write csv file: " + out_path);
        out << to_csv(summary);
    }
    return 0;
}

int run_export(const std::string& instance_path, int iteration, std::uint64_t seed,
               const CommonOptions& opts, const std::string& out_path) {
    const QapInstance instance = load_instance(instance_path);
    const QacoConfig config = resolve_qaco_config(instance, opts.overrides());
    if (iteration < 0 || iteration > config.max_iter)
        throw std::runtime_error("iteration must lie in [0, " +
                                 std::to_string(config.max_iter) + "]");

    const double beta = beta_schedule(iteration, config.beta_e0, config.max_iter);
    Rng rng(seed);
    const ExplorationPlan plan =
        exploration_plan(instance.n(), config.exploration, rng, config.drop_last_fredkin_pair);
    const std::string text =
        export_circuit(PheromoneAngles::initial(instance.n()), beta, plan);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write circuit file: " + out_path);
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum/classical ant-colony solver for small binary quadratic problems"};
    app.set_config("--config", "", "key=value file mirroring the flags");
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on one instance");
    std::string solve_instance, solve_algo = "qaco", solve_out;
    int solve_ants = 1;
    CommonOptions solve_opts;
    solve->add_option("--instance", solve_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--algo", solve_algo, "solver")
        ->check(CLI::IsMember({"qaco", "aco", "brute"}));
    solve->add_option("--ants", solve_ants, "ants per iteration (classical solver)");
    solve->add_option("--out", solve_out, "write the run report here");
    add_common_flags(solve, solve_opts);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "run many seeded solves and tabulate");
    std::vector<std::string> bench_instances;
    std::vector<std::string> bench_algos = {"qaco", "aco"};
    std::string bench_out;
    BenchmarkSpec bench_spec;
    CommonOptions bench_opts;
    bench->add_option("--instances", bench_instances, "instance files")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("--algo", bench_algos, "algorithms to run")
        ->check(CLI::IsMember({"qaco", "aco"}));
    bench->add_option("--runs", bench_spec.runs, "runs per (instance, algorithm)");
    bench->add_option("--ants", bench_spec.ants, "starting ant count");
    bench->add_flag("--escalate-ants", bench_spec.escalate_ants,
                    "add ants until the error target is met");
    bench->add_option("--ant-cap", bench_spec.ant_cap, "escalation ceiling");
    bench->add_option("--out", bench_out, "write the summary csv here");
    add_common_flags(bench, bench_opts);

    // gen-instances
    auto* gen = app.add_subcommand("gen-instances", "write random instance files");
    int gen_n = 0, gen_count = 100, gen_ones = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "problem size")->required()->check(CLI::PositiveNumber);
    gen->add_option("--count", gen_count, "how many instances");
    gen->add_option("--ones", gen_ones, "exact-ones constraint (0 = unconstrained)");
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--out", gen_out, "output directory")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid-evaluate solver parameters");
    std::vector<std::string> sweep_instances;
    SweepSpec sweep_spec;
    CommonOptions sweep_opts;
    std::string sweep_out;
    int sweep_gen_n = 0, sweep_gen_count = 10, sweep_gen_ones = 0;
    std::string sweep_gen_dir = "sweep_instances";
    sweep->add_option("--instances", sweep_instances, "instance files")
        ->check(CLI::ExistingFile);
    sweep->add_option("--gen-n", sweep_gen_n, "generate instances of this size instead");
    sweep->add_option("--gen-count", sweep_gen_count, "how many to generate");
    sweep->add_option("--gen-ones", sweep_gen_ones, "constraint for generated instances");
    sweep->add_option("--gen-dir", sweep_gen_dir, "directory for generated instances");
    sweep->add_option("--beta0-list", sweep_spec.beta0_values, "grid over beta0")
        ->delimiter(',');
    sweep->add_option("--cc-list", sweep_spec.conver_condition_values,
                      "grid over the stagnation window")
        ->delimiter(',');
    sweep->add_option("--table-scale-list", sweep_spec.table_scale_values,
                      "grid over the update-table scale")
        ->delimiter(',');
    sweep->add_option("--runs", sweep_spec.runs, "runs per instance per grid point");
    sweep->add_option("--success-target", sweep_spec.success_target_percent,
                      "success percentage a grid point must reach to be flagged");
    sweep->add_option("--out", sweep_out, "write the sweep csv here");
    add_common_flags(sweep, sweep_opts);

    // export
    auto* export_cmd = app.add_subcommand("export", "emit one iteration as circuit text");
    std::string export_instance, export_out;
    int export_iteration = 1;
    CommonOptions export_opts;
    export_cmd->add_option("--instance", export_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    export_cmd->add_option("--iteration", export_iteration, "iteration index for the schedule");
    export_cmd->add_option("--out", export_out, "write the circuit here (stdout otherwise)");
    add_common_flags(export_cmd, export_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_instance, solve_algo, solve_opts, solve_ants,
                                              solve_out);
        if (bench->parsed()) {
            bench_spec.instance_paths = bench_instances;
            bench_spec.master_seed = bench_opts.seed;
            bench_spec.overrides = bench_opts.overrides();
            for (const std::string& name : bench_algos) {
                const auto algo = parse_algorithm(name);
                if (algo &&
                    std::find(bench_spec.algorithms.begin(), bench_spec.algorithms.end(),
                              *algo) == bench_spec.algorithms.end())
                    bench_spec.algorithms.push_back(*algo);
            }
            return run_benchmark_cmd(bench_spec, bench_out);
        }
        if (gen->parsed()) {
            const Constraint constraint =
                gen_ones > 0 ? Constraint::exact_ones(gen_ones) : Constraint::unconstrained();
            const auto paths =
                generate_instance_files(gen_n, gen_count, constraint, gen_seed, gen_out);
            std::printf("wrote %zu instance files to %s\n", paths.size(), gen_out.c_str());
            return 0;
        }
        if (sweep->parsed()) {
            if (sweep_instances.empty()) {
                if (sweep_gen_n <= 0)
                    throw CLI::ValidationError(
                        "sweep", "provide --instances or a --gen-n generation recipe");
                const Constraint constraint = sweep_gen_ones > 0
                                                  ? Constraint::exact_ones(sweep_gen_ones)
                                                  : Constraint::unconstrained();
                sweep_instances = generate_instance_files(sweep_gen_n, sweep_gen_count,
                                                          constraint, sweep_opts.seed,
                                                          sweep_gen_dir);
            }
            sweep_spec.instance_paths = sweep_instances;
            sweep_spec.master_seed = sweep_opts.seed;
            sweep_spec.base_overrides = sweep_opts.overrides();
            const SweepResult result = run_sweep(sweep_spec);
            const std::string csv = sweep_to_csv(result);
            std::cout << csv;
            if (!sweep_out.empty()) {
                std::ofstream out(sweep_out);
                if (!out) throw std::runtime_error("cannot write csv file: " + sweep_out);
                out << csv;
            }
            return 0;
        }
        if (export_cmd->parsed())
            return run_export(export_instance, export_iteration, export_opts.seed, export_opts,
                              export_out);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
