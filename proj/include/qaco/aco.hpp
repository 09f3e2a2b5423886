#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qaco/qap.hpp"
#include "qaco/rng.hpp"
#include "qaco/run_report.hpp"

namespace qaco {

// Pheromone trails on the walk graph: positions 0..n+1 where 0 is the start
// node, 1..n are the decision variables and n+1 is the end node. Entry
// (i, j) is the trail on the directed edge i -> j.
class TrailMatrix {
public:
    explicit TrailMatrix(int n);

    int n() const { return n_; }
    double at(int from, int to) const;
    double& at(int from, int to);

private:
    int n_;
    std::vector<double> tau_;
};

struct AcoConfig {
    double rho = 0.05;      // evaporation
    double beta_e = 0.13;   // per-step probability of a uniform random move
    int max_iter = 62;
    int conver_condition = 59;
    int ants_per_iteration = 1;

    void validate() const;
};

// One ant walk: start at 0, take up to n moves to unvisited positions in
// {1..n+1} (uniform with probability beta, else proportional to the trail
// row; all-zero rows fall back to uniform), stop on reaching n+1. Returns
// the visit bitstring over positions 1..n.
std::string construct_path(const TrailMatrix& tau, double beta, int n, Rng& rng);

// Classical baseline: per iteration launch ants against a shared trail
// snapshot, deposit rho * g(F) on traversed edges (g is a positive
// increasing squash of the signed fitness), track the generation best, and
// stop on stagnation like the quantum loop.
RunReport run_aco(const QapInstance& instance, const AcoConfig& config, Rng& rng);

// Deposit weight for signed fitness: logistic squash, positive and
// increasing, so better solutions always deposit more and trails stay >= 0.
double deposit_weight(double fitness_value);

} // namespace qaco
