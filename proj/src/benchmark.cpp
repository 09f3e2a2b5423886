#include "qaco/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qaco {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// FNV-1a, used to fold instance names into seed substreams.
std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr std::uint64_t kQacoStream = 0x51;
constexpr std::uint64_t kAcoStream = 0xA0;

std::uint64_t run_seed(std::uint64_t master, std::string_view instance, std::uint64_t algo_tag,
                       std::uint64_t ants, std::uint64_t run) {
    std::uint64_t s = Rng::mix(master, hash_string(instance));
    s = Rng::mix(s, algo_tag);
    s = Rng::mix(s, ants);
    return Rng::mix(s, run);
}

struct RunStats {
    double mean_iterations = 0.0;
    double error = 0.0;
};

} // namespace

std::string algorithm_name(Algorithm algo) {
    return algo == Algorithm::Qaco ? "qaco" : "aco";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "qaco") return Algorithm::Qaco;
    if (name == "aco") return Algorithm::Aco;
    return std::nullopt;
}

std::string instance_label(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

QacoConfig resolve_qaco_config(const QapInstance& instance, const SolverOverrides& overrides) {
    QacoConfig config;
    const ConvergeParams fitted = converge_params(instance.solution_count());
    config.conver_condition = overrides.conver_condition.value_or(fitted.conver_condition);
    config.max_iter = overrides.max_iter.value_or(
        overrides.conver_condition
            ? static_cast<int>(std::ceil(1.05 * *overrides.conver_condition))
            : fitted.max_iter);
    config.beta_e0 = overrides.beta0.value_or(config.beta_e0);
    config.sim_mode = overrides.sim_mode.value_or(config.sim_mode);
    config.exploration =
        overrides.exploration.value_or(default_exploration_mode(instance.constraint()));
    if (overrides.table_scale != 1.0) {
        for (int x = 0; x < 2; ++x)
            for (int b = 0; b < 2; ++b)
                for (int better = 0; better < 2; ++better)
                    config.table.delta[x][b][better] *= overrides.table_scale;
    }
    config.validate();
    return config;
}

AcoConfig resolve_aco_config(const QapInstance& instance, const SolverOverrides& overrides,
                             int ants) {
    AcoConfig config;
    const ConvergeParams fitted = converge_params(instance.solution_count());
    config.conver_condition = overrides.conver_condition.value_or(fitted.conver_condition);
    config.max_iter = overrides.max_iter.value_or(
        overrides.conver_condition
            ? static_cast<int>(std::ceil(1.05 * *overrides.conver_condition))
            : fitted.max_iter);
    config.beta_e = overrides.beta0.value_or(config.beta_e);
    config.rho = overrides.rho.value_or(config.rho);
    config.ants_per_iteration = ants;
    config.validate();
    return config;
}

double error_percent(const std::vector<double>& best_fitness, double optimum, int runs) {
    int wrong = 0;
    for (double f : best_fitness)
        if (std::abs(f - optimum) > 1e-9) ++wrong;
    return 100.0 * wrong / runs;
}

namespace {

RunStats run_qaco_batch(const QapInstance& instance, double optimum, const QacoConfig& config,
                        const std::string& label, const BenchmarkSpec& spec) {
    std::vector<double> best;
    best.reserve(static_cast<std::size_t>(spec.runs));
    double iter_sum = 0.0;
    for (int r = 0; r < spec.runs; ++r) {
        Rng rng(run_seed(spec.master_seed, label, kQacoStream, 1, static_cast<std::uint64_t>(r)));
        const RunReport report = run_qaco(instance, config, rng);
        best.push_back(report.best.fitness);
        iter_sum += report.exit_iteration;
    }
    return {iter_sum / spec.runs, error_percent(best, optimum, spec.runs)};
}

RunStats run_aco_batch(const QapInstance& instance, double optimum, const AcoConfig& config,
                       const std::string& label, const BenchmarkSpec& spec) {
    std::vector<double> best;
    best.reserve(static_cast<std::size_t>(spec.runs));
    double iter_sum = 0.0;
    for (int r = 0; r < spec.runs; ++r) {
        Rng rng(run_seed(spec.master_seed, label, kAcoStream,
                         static_cast<std::uint64_t>(config.ants_per_iteration),
                         static_cast<std::uint64_t>(r)));
        const RunReport report = run_aco(instance, config, rng);
        best.push_back(report.best.fitness);
        iter_sum += report.exit_iteration;
    }
    return {iter_sum / spec.runs, error_percent(best, optimum, spec.runs)};
}

} // namespace

BenchmarkSummary run_benchmark(const BenchmarkSpec& spec) {
    if (spec.instance_paths.empty())
        throw std::invalid_argument("run_benchmark: no instances given");
    if (spec.algorithms.empty())
        throw std::invalid_argument("run_benchmark: no algorithms selected");
    if (spec.runs < 1) throw std::invalid_argument("run_benchmark: runs must be at least 1");

    BenchmarkSummary summary;
    for (const std::string& path : spec.instance_paths) {
        const QapInstance instance = load_instance(path);
        const std::string label = instance_label(path);
        const double optimum = brute_force_opt(instance).fitness;
        for (Algorithm algo : spec.algorithms) {
            if (algo == Algorithm::Qaco) {
                const QacoConfig config = resolve_qaco_config(instance, spec.overrides);
                const RunStats stats = run_qaco_batch(instance, optimum, config, label, spec);
                summary.rows.push_back({label, algorithm_name(algo), 1, spec.runs,
                                        stats.mean_iterations, stats.error, spec.master_seed});
            } else {
                int ants = spec.ants;
                for (;;) {
                    const AcoConfig config = resolve_aco_config(instance, spec.overrides, ants);
                    const RunStats stats = run_aco_batch(instance, optimum, config, label, spec);
                    summary.rows.push_back({label, algorithm_name(algo), ants, spec.runs,
                                            stats.mean_iterations, stats.error,
                                            spec.master_seed});
                    if (!spec.escalate_ants || stats.error <= spec.escalation_target_percent ||
                        ants >= spec.ant_cap)
                        break;
                    ++ants;
                }
            }
        }
    }
    return summary;
}

std::string to_csv(const BenchmarkSummary& summary) {
    std::ostringstream out;
    out << "instance,algorithm,ants,runs,mean_iterations,error_percent,seed\n";
    for (const SummaryRow& row : summary.rows)
        out << row.instance << ',' << row.algorithm << ',' << row.ants << ',' << row.runs << ','
            << fmt_double(row.mean_iterations) << ',' << fmt_double(row.error_percent) << ','
            << row.seed << '\n';
    return out.str();
}

BenchmarkSummary parse_csv(std::istream& in) {
    BenchmarkSummary summary;
    std::string line;
    if (!std::getline(in, line) ||
        line != "instance,algorithm,ants,runs,mean_iterations,error_percent,seed")
        throw std::runtime_error("benchmark csv: bad header");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        SummaryRow row;
        std::string field;
        try {
            if (!std::getline(ls, row.instance, ',')) throw std::runtime_error("instance");
            if (!std::getline(ls, row.algorithm, ',')) throw std::runtime_error("algorithm");
            if (!std::getline(ls, field, ',')) throw std::runtime_error("ants");
            row.ants = std::stoi(field);
            if (!std::getline(ls, field, ',')) throw std::runtime_error("runs");
            row.runs = std::stoi(field);
            if (!std::getline(ls, field, ',')) throw std::runtime_error("mean_iterations");
            row.mean_iterations = std::stod(field);
            if (!std::getline(ls, field, ',')) throw std::runtime_error("error_percent");
            row.error_percent = std::stod(field);
            if (!std::getline(ls, field)) throw std::runtime_error("seed");
            row.seed = std::stoull(field);
        } catch (const std::exception& e) {
            throw std::runtime_error("benchmark csv: bad field '" + std::string(e.what()) +
                                     "' on line " + std::to_string(lineno));
        }
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

std::string format_table(const BenchmarkSummary& summary) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-14s %-6s %5s %6s %10s %8s\n", "instance", "algo", "ants",
                  "runs", "mean_iter", "error%");
    out << buf;
    for (const SummaryRow& row : summary.rows) {
        std::snprintf(buf, sizeof buf, "%-14s %-6s %5d %6d %10.2f %8.2f\n", row.instance.c_str(),
                      row.algorithm.c_str(), row.ants, row.runs, row.mean_iterations,
                      row.error_percent);
        out << buf;
    }
    return out.str();
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.instance_paths.empty()) throw std::invalid_argument("run_sweep: no instances given");
    std::vector<double> beta0s = spec.beta0_values;
    if (beta0s.empty()) beta0s.push_back(0.13);
    std::vector<int> ccs = spec.conver_condition_values;
    if (ccs.empty()) ccs.push_back(0);  // per-instance default
    std::vector<double> scales = spec.table_scale_values;
    if (scales.empty()) scales.push_back(1.0);

    SweepResult result;
    for (double beta0 : beta0s) {
        for (int cc : ccs) {
            for (double scale : scales) {
                SolverOverrides overrides = spec.base_overrides;
                overrides.beta0 = beta0;
                if (cc > 0) overrides.conver_condition = cc;
                overrides.table_scale = scale;

                long total_runs = 0;
                long correct = 0;
                double iter_sum = 0.0;
                for (const std::string& path : spec.instance_paths) {
                    const QapInstance instance = load_instance(path);
                    const std::string label = instance_label(path);
                    const QacoConfig config = resolve_qaco_config(instance, overrides);
                    const double optimum = brute_force_opt(instance).fitness;
                    for (int r = 0; r < spec.runs; ++r) {
                        Rng rng(run_seed(spec.master_seed, label, kQacoStream, 1,
                                         static_cast<std::uint64_t>(r)));
                        const RunReport report = run_qaco(instance, config, rng);
                        iter_sum += report.exit_iteration;
                        if (std::abs(report.best.fitness - optimum) <= 1e-9) ++correct;
                        ++total_runs;
                    }
                }
                SweepRow row;
                row.beta0 = beta0;
                row.conver_condition = cc;
                row.table_scale = scale;
                row.mean_iterations = iter_sum / static_cast<double>(total_runs);
                row.success_percent = 100.0 * static_cast<double>(correct) /
                                      static_cast<double>(total_runs);
                row.meets_target = row.success_percent >= spec.success_target_percent;
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "beta0,conver_condition,table_scale,mean_iterations,success_percent,meets_target\n";
    for (const SweepRow& row : result.rows)
        out << fmt_double(row.beta0) << ','
            << (row.conver_condition > 0 ? std::to_string(row.conver_condition)
                                         : std::string("default"))
            << ',' << fmt_double(row.table_scale) << ',' << fmt_double(row.mean_iterations) << ','
            << fmt_double(row.success_percent) << ',' << (row.meets_target ? 1 : 0) << '\n';
    return out.str();
}

std::vector<std::string> generate_instance_files(int n, int count, const Constraint& constraint,
                                                 std::uint64_t seed, const std::string& out_dir) {
    if (count < 0) throw std::invalid_argument("generate_instance_files: negative count");
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> paths;
    paths.reserve(static_cast<std::size_t>(count));
    const std::string tag = constraint.kind == Constraint::Kind::Unconstrained
                                ? "u"
                                : "e" + std::to_string(constraint.ones);
    for (int i = 0; i < count; ++i) {
        Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(i));
        const QapInstance instance = random_instance(n, constraint, rng);
        char name[64];
        std::snprintf(name, sizeof name, "qap%d_%s_%03d.qap", n, tag.c_str(), i);
        const std::string path = (std::filesystem::path(out_dir) / name).string();
        save_instance(instance, path);
        paths.push_back(path);
    }
    return paths;
}

} // namespace qaco
