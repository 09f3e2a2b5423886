#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qaco/density_matrix.hpp"
#include "qaco/qap.hpp"
#include "qaco/rng.hpp"
#include "qaco/run_report.hpp"
#include "qaco/statevector.hpp"

namespace qaco {

// One rotation angle per ant qubit. theta near 0 biases the qubit toward
// measuring 0, theta near pi toward 1.
struct PheromoneAngles {
    std::vector<double> theta;

    // Uniform superposition start: pi/2 everywhere.
    static PheromoneAngles initial(int n);

    int size() const { return static_cast<int>(theta.size()); }
};

// Lookup table for the per-qubit angle update, indexed by
// (measured bit x_i, best-so-far bit b_i, strictly-better flag). Rows with
// `flip` set change sign when cos(theta_i / 2) < 0, which steers the angle
// back once it leaves [0, pi].
struct UpdateTable {
    double delta[2][2][2] = {};
    bool flip[2][2][2] = {};

    static UpdateTable defaults();

    double lookup(int x_bit, int b_bit, bool better, double theta) const;
};

enum class ExplorationMode { CnotPerQubit, RandomizedFredkinPairs };

// How the exploration control wire is realized. Both produce the same
// outcome distribution; Unraveled replaces the per-gate reset channel with
// an independent Bernoulli(beta) application of each target unitary.
enum class SimMode { Unraveled, ExplicitReset };

struct QacoConfig {
    double beta_e0 = 0.13;
    int conver_condition = 59;
    int max_iter = 62;
    UpdateTable table = UpdateTable::defaults();
    ExplorationMode exploration = ExplorationMode::CnotPerQubit;
    SimMode sim_mode = SimMode::Unraveled;
    std::uint64_t seed = 1;

    // Fredkin exploration normally emits all n(n-1)/2 pairs; this drops the
    // last one of the shuffled order.
    bool drop_last_fredkin_pair = false;

    // CNOT exploration pairs with unconstrained problems and Fredkin with
    // fixed-popcount ones; set to run a mismatched pairing anyway (the
    // validity filter then repairs out-of-subspace measurements).
    bool allow_mode_mismatch = false;

    void validate() const;
};

// Linear anneal from beta_e0 at iteration 0 to exactly 1 at max_iter.
double beta_schedule(int iteration, double beta_e0, int max_iter);

struct ConvergeParams {
    int conver_condition = 0;
    int max_iter = 0;
};

// Stagnation window and iteration cap fitted against the size of the valid
// solution set: converCondition = max(1, ceil(23.3*sqrt(nComb) - 35.1)),
// maxIter = ceil(1.05 * converCondition).
ConvergeParams converge_params(long long n_comb);

// Gate order for one iteration. CnotPerQubit targets each ant qubit once in
// wire order; RandomizedFredkinPairs covers every unordered pair in a fresh
// uniformly random order (the gates do not commute, so the order matters
// and is re-drawn per iteration).
ExplorationPlan exploration_plan(int n, ExplorationMode mode, Rng& rng,
                                 bool drop_last_fredkin_pair = false);

// One quantum step: pheromone rotations, exploration, measurement.
std::string run_iteration(const PheromoneAngles& angles, double beta, const ExplorationPlan& plan,
                          SimMode sim_mode, Rng& rng);

// Maps an invalid measurement to a valid solution, favouring small Hamming
// distance: P(s_i) = 1 / (Q * d_i) with Q = sum_j 1/d_j.
std::string gen_s(std::string_view invalid, const std::vector<std::string>& valid_set, Rng& rng);

// Applies the lookup table against the previous best b; returns the new
// angles. Angles are never clamped.
PheromoneAngles pheromone_update(const PheromoneAngles& angles, std::string_view x,
                                 std::string_view b, bool better, const UpdateTable& table);

// Full hybrid loop: anneal beta, explore, measure, repair, update pheromones
// against the previous best, stop after conver_condition consecutive
// non-improving iterations or at max_iter.
RunReport run_qaco(const QapInstance& instance, const QacoConfig& config, Rng& rng);

ExplorationMode default_exploration_mode(const Constraint& constraint);

} // namespace qaco
