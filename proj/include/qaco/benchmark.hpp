#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qaco/aco.hpp"
#include "qaco/qaco.hpp"
#include "qaco/qap.hpp"

namespace qaco {

enum class Algorithm { Qaco, Aco };

std::string algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Optional overrides applied on top of the per-instance defaults
// (conver_condition/max_iter default to converge_params of the instance's
// solution count).
struct SolverOverrides {
    std::optional<double> beta0;
    std::optional<int> conver_condition;
    std::optional<int> max_iter;
    std::optional<SimMode> sim_mode;
    std::optional<ExplorationMode> exploration;
    std::optional<double> rho;
    double table_scale = 1.0;  // multiplies every update-table magnitude
};

QacoConfig resolve_qaco_config(const QapInstance& instance, const SolverOverrides& overrides);
AcoConfig resolve_aco_config(const QapInstance& instance, const SolverOverrides& overrides,
                             int ants);

struct BenchmarkSpec {
    std::vector<std::string> instance_paths;
    std::vector<Algorithm> algorithms;
    int runs = 100;
    std::uint64_t master_seed = 1;
    int ants = 1;                // starting ant count for the classical solver
    bool escalate_ants = false;  // add ants until error <= escalation target
    int ant_cap = 16;
    double escalation_target_percent = 1.0;
    SolverOverrides overrides;
};

struct SummaryRow {
    std::string instance;   // basename without extension
    std::string algorithm;
    int ants = 1;
    int runs = 0;
    double mean_iterations = 0.0;
    double error_percent = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const SummaryRow&) const = default;
};

struct BenchmarkSummary {
    std::vector<SummaryRow> rows;

    bool operator==(const BenchmarkSummary&) const = default;
};

// Runs each algorithm over each instance with per-(instance, algorithm,
// ants, run) substreams derived from the master seed. With escalation the
// classical solver emits one row per ant count tried.
BenchmarkSummary run_benchmark(const BenchmarkSpec& spec);

// Exact-optimum mismatch rate: the share of runs whose best fitness differs
// from the brute-force optimum by more than 1e-9.
double error_percent(const std::vector<double>& best_fitness, double optimum, int runs);

std::string to_csv(const BenchmarkSummary& summary);
BenchmarkSummary parse_csv(std::istream& in);
std::string format_table(const BenchmarkSummary& summary);

struct SweepSpec {
    std::vector<std::string> instance_paths;
    std::vector<double> beta0_values;
    std::vector<int> conver_condition_values;  // empty = per-instance default
    std::vector<double> table_scale_values;
    int runs = 100;
    std::uint64_t master_seed = 1;
    double success_target_percent = 98.5;
    SolverOverrides base_overrides;
};

struct SweepRow {
    double beta0 = 0.0;
    int conver_condition = 0;  // 0 = per-instance default
    double table_scale = 1.0;
    double mean_iterations = 0.0;
    double success_percent = 0.0;
    bool meets_target = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Plain grid evaluation of the quantum solver over the cartesian product of
// the listed parameter values.
SweepResult run_sweep(const SweepSpec& spec);
std::string sweep_to_csv(const SweepResult& result);

// Writes `count` random instances into out_dir; returns the file paths.
// Deterministic for a fixed seed.
std::vector<std::string> generate_instance_files(int n, int count, const Constraint& constraint,
                                                 std::uint64_t seed, const std::string& out_dir);

std::string instance_label(const std::string& path);

} // namespace qaco
