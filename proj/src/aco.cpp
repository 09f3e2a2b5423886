#include "qaco/aco.hpp"

#include <cmath>
#include <stdexcept>

namespace qaco {

TrailMatrix::TrailMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("TrailMatrix: size must be positive");
    tau_.assign(static_cast<std::size_t>(n + 2) * (n + 2), 0.0);
}

double TrailMatrix::at(int from, int to) const {
    if (from < 0 || from > n_ + 1 || to < 0 || to > n_ + 1)
        throw std::out_of_range("TrailMatrix: position out of range");
    return tau_[static_cast<std::size_t>(from) * (n_ + 2) + to];
}

double& TrailMatrix::at(int from, int to) {
    if (from < 0 || from > n_ + 1 || to < 0 || to > n_ + 1)
        throw std::out_of_range("TrailMatrix: position out of range");
    return tau_[static_cast<std::size_t>(from) * (n_ + 2) + to];
}

void AcoConfig::validate() const {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("AcoConfig: rho must lie in [0, 1]");
    if (beta_e < 0.0 || beta_e > 1.0)
        throw std::invalid_argument("AcoConfig: beta_e must lie in [0, 1]");
    if (conver_condition < 1)
        throw std::invalid_argument("AcoConfig: conver_condition must be at least 1");
    if (max_iter < conver_condition)
        throw std::invalid_argument("AcoConfig: max_iter must be >= conver_condition");
    if (ants_per_iteration < 1)
        throw std::invalid_argument("AcoConfig: need at least one ant per iteration");
}

double deposit_weight(double fitness_value) { return 1.0 / (1.0 + std::exp(-fitness_value)); }

namespace {

struct AntWalk {
    std::string bits;
    std::vector<std::pair<int, int>> edges;
    double fitness_value = 0.0;
};

int choose_move(const TrailMatrix& tau, int pos, const std::vector<int>& candidates, double beta,
                Rng& rng) {
    if (rng.bernoulli(beta)) return candidates[rng.below(candidates.size())];
    double total = 0.0;
    for (int p : candidates) total += tau.at(pos, p);
    // Undefined trail probabilities (always the case on a fresh matrix);
    // fall back to a uniform choice.
    if (total <= 0.0) return candidates[rng.below(candidates.size())];
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (int p : candidates) {
        acc += tau.at(pos, p);
        if (u < acc) return p;
    }
    return candidates.back();
}

AntWalk walk_ant(const TrailMatrix& tau, double beta, int n, Rng& rng) {
    std::vector<char> visited(static_cast<std::size_t>(n + 2), 0);
    visited[0] = 1;
    int pos = 0;
    AntWalk walk;
    walk.bits.assign(static_cast<std::size_t>(n), '0');

    for (int step = 0; step < n; ++step) {
        std::vector<int> candidates;
        candidates.reserve(static_cast<std::size_t>(n + 1));
        for (int p = 1; p <= n + 1; ++p)
            if (!visited[static_cast<std::size_t>(p)]) candidates.push_back(p);
        if (candidates.empty()) break;

        const int chosen = choose_move(tau, pos, candidates, beta, rng);
        walk.edges.emplace_back(pos, chosen);
        visited[static_cast<std::size_t>(chosen)] = 1;
        pos = chosen;
        if (chosen == n + 1) break;
        walk.bits[static_cast<std::size_t>(chosen - 1)] = '1';
    }
    return walk;
}

} // namespace

std::string construct_path(const TrailMatrix& tau, double beta, int n, Rng& rng) {
    if (n < 1 || n > tau.n()) throw std::invalid_argument("construct_path: bad size");
    return walk_ant(tau, beta, n, rng).bits;
}

RunReport run_aco(const QapInstance& instance, const AcoConfig& config, Rng& rng) {
    config.validate();
    if (instance.constraint().kind != Constraint::Kind::Unconstrained)
        throw std::invalid_argument("run_aco: the walk baseline handles unconstrained instances");

    const int n = instance.n();
    TrailMatrix tau(n);
    RunReport report;
    report.trace.reserve(static_cast<std::size_t>(config.max_iter));
    bool have_best = false;
    int stagnation = 0;

    for (int j = 1; j <= config.max_iter; ++j) {
        // All ants of the generation read the same snapshot.
        const TrailMatrix snapshot = tau;
        std::vector<AntWalk> walks;
        walks.reserve(static_cast<std::size_t>(config.ants_per_iteration));
        for (int a = 0; a < config.ants_per_iteration; ++a) {
            walks.push_back(walk_ant(snapshot, config.beta_e, n, rng));
            walks.back().fitness_value = fitness(instance, walks.back().bits);
        }

        // Deposits merge in ant order after the generation finishes:
        // tau <- (1 - rho) tau + rho g(F) on traversed edges, per ant.
        for (const AntWalk& walk : walks) {
            const double deposit = config.rho * deposit_weight(walk.fitness_value);
            for (int from = 0; from <= n + 1; ++from)
                for (int to = 0; to <= n + 1; ++to) tau.at(from, to) *= 1.0 - config.rho;
            for (const auto& [from, to] : walk.edges) tau.at(from, to) += deposit;
        }

        const AntWalk* gen_best = &walks.front();
        for (const AntWalk& walk : walks)
            if (walk.fitness_value > gen_best->fitness_value) gen_best = &walk;
        report.trace.push_back(
            {j, gen_best->bits, gen_best->bits, gen_best->fitness_value, config.beta_e});

        const bool better = !have_best || gen_best->fitness_value > report.best.fitness;
        if (better) {
            report.best = {gen_best->bits, gen_best->fitness_value};
            have_best = true;
            stagnation = 0;
        } else {
            ++stagnation;
        }
        report.exit_iteration = j;
        if (stagnation >= config.conver_condition) break;
    }
    return report;
}

} // namespace qaco
