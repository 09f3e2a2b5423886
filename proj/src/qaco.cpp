#include "qaco/qaco.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaco {

PheromoneAngles PheromoneAngles::initial(int n) {
    if (n < 1) throw std::invalid_argument("PheromoneAngles: need at least one qubit");
    return {std::vector<double>(static_cast<std::size_t>(n), std::numbers::pi / 2.0)};
}

UpdateTable UpdateTable::defaults() {
    constexpr double pi = std::numbers::pi;
    UpdateTable t;
    // delta[x][b][better]
    t.delta[0][0][1] = -0.01 * pi;  t.flip[0][0][1] = true;
    t.delta[0][0][0] = +0.04 * pi;
    t.delta[0][1][1] = -0.05 * pi;  t.flip[0][1][1] = true;
    t.delta[0][1][0] = +0.07 * pi;
    t.delta[1][0][1] = +0.05 * pi;  t.flip[1][0][1] = true;
    t.delta[1][0][0] = -0.07 * pi;
    t.delta[1][1][1] = +0.01 * pi;  t.flip[1][1][1] = true;
    t.delta[1][1][0] = -0.04 * pi;
    return t;
}

double UpdateTable::lookup(int x_bit, int b_bit, bool better, double theta) const {
    double d = delta[x_bit][b_bit][better];
    if (flip[x_bit][b_bit][better] && std::cos(theta / 2.0) < 0.0) d = -d;
    return d;
}

void QacoConfig::validate() const {
    if (beta_e0 < 0.0 || beta_e0 > 1.0)
        throw std::invalid_argument("QacoConfig: beta_e0 must lie in [0, 1]");
    if (conver_condition < 1)
        throw std::invalid_argument("QacoConfig: conver_condition must be at least 1");
    if (max_iter < conver_condition)
        throw std::invalid_argument("QacoConfig: max_iter must be >= conver_condition");
}

double beta_schedule(int iteration, double beta_e0, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("beta_schedule: max_iter must be positive");
    if (iteration < 0 || iteration > max_iter)
        throw std::out_of_range("beta_schedule: iteration " + std::to_string(iteration) +
                                " outside [0, " + std::to_string(max_iter) + "]");
    const double t = static_cast<double>(iteration) / static_cast<double>(max_iter);
    return beta_e0 + (1.0 - beta_e0) * t;
}

ConvergeParams converge_params(long long n_comb) {
    if (n_comb < 1) throw std::invalid_argument("converge_params: need at least one solution");
    const double fit = 23.3 * std::sqrt(static_cast<double>(n_comb)) - 35.1;
    const int cc = std::max(1, static_cast<int>(std::ceil(fit)));
    const int max_iter = static_cast<int>(std::ceil(1.05 * cc));
    return {cc, max_iter};
}

ExplorationPlan exploration_plan(int n, ExplorationMode mode, Rng& rng,
                                 bool drop_last_fredkin_pair) {
    ExplorationPlan plan;
    if (mode == ExplorationMode::CnotPerQubit) {
        plan.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) plan.push_back(ExplorationGate::flip(i));
        return plan;
    }
    if (n < 2)
        throw std::invalid_argument("exploration_plan: Fredkin pairs need at least 2 qubits");
    plan.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) plan.push_back(ExplorationGate::swap_pair(i, j));
    // Fisher-Yates; order is redrawn every iteration so per-generation bias
    // averages out.
    for (std::size_t k = plan.size(); k > 1; --k)
        std::swap(plan[k - 1], plan[rng.below(k)]);
    if (drop_last_fredkin_pair && plan.size() > 1) plan.pop_back();
    return plan;
}

std::string run_iteration(const PheromoneAngles& angles, double beta, const ExplorationPlan& plan,
                          SimMode sim_mode, Rng& rng) {
    const int n = angles.size();
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("run_iteration: beta must lie in [0, 1]");

    if (sim_mode == SimMode::Unraveled) {
        StateVector psi(n);
        for (int i = 0; i < n; ++i) psi.apply_ry(i, angles.theta[static_cast<std::size_t>(i)]);
        for (const ExplorationGate& g : plan) {
            if (!rng.bernoulli(beta)) continue;
            if (g.kind == ExplorationGate::Kind::FlipTarget)
                psi.apply_x(g.a);
            else {
                // SWAP = three alternating CNOTs.
                psi.apply_cnot(g.a, g.b);
                psi.apply_cnot(g.b, g.a);
                psi.apply_cnot(g.a, g.b);
            }
        }
        return psi.sample(rng);
    }

    // ExplicitReset: one extra wire holds the exploration probability and is
    // measured back to |0> after each controlled gate.
    const int ctrl = n;
    const double theta_e = 2.0 * std::asin(std::sqrt(beta));
    StateVector psi(n + 1);
    for (int i = 0; i < n; ++i) psi.apply_ry(i, angles.theta[static_cast<std::size_t>(i)]);
    for (const ExplorationGate& g : plan) {
        psi.apply_ry(ctrl, theta_e);
        if (g.kind == ExplorationGate::Kind::FlipTarget)
            psi.apply_cnot(ctrl, g.a);
        else
            psi.apply_cswap(ctrl, g.a, g.b);
        psi.reset_qubit(ctrl, rng);
    }
    return psi.sample(rng).substr(0, static_cast<std::size_t>(n));
}

std::string gen_s(std::string_view invalid, const std::vector<std::string>& valid_set, Rng& rng) {
    if (valid_set.empty()) throw std::invalid_argument("gen_s: empty valid set");
    std::vector<double> inv_dist(valid_set.size());
    double q = 0.0;
    for (std::size_t i = 0; i < valid_set.size(); ++i) {
        const std::string& s = valid_set[i];
        if (s.size() != invalid.size())
            throw std::invalid_argument("gen_s: solution length mismatch");
        int d = 0;
        for (std::size_t k = 0; k < s.size(); ++k) d += (s[k] != invalid[k]);
        if (d == 0)
            throw std::invalid_argument("gen_s: input is already a valid solution");
        inv_dist[i] = 1.0 / d;
        q += inv_dist[i];
    }
    const double u = rng.uniform() * q;
    double acc = 0.0;
    for (std::size_t i = 0; i < valid_set.size(); ++i) {
        acc += inv_dist[i];
        if (u < acc) return valid_set[i];
    }
    return valid_set.back();
}

PheromoneAngles pheromone_update(const PheromoneAngles& angles, std::string_view x,
                                 std::string_view b, bool better, const UpdateTable& table) {
    const std::size_t n = angles.theta.size();
    if (x.size() != n || b.size() != n)
        throw std::invalid_argument("pheromone_update: bitstring length mismatch");
    PheromoneAngles next = angles;
    for (std::size_t i = 0; i < n; ++i) {
        const int xb = x[i] - '0';
        const int bb = b[i] - '0';
        next.theta[i] += table.lookup(xb, bb, better, angles.theta[i]);
    }
    return next;
}

ExplorationMode default_exploration_mode(const Constraint& constraint) {
    return constraint.kind == Constraint::Kind::Unconstrained
               ? ExplorationMode::CnotPerQubit
               : ExplorationMode::RandomizedFredkinPairs;
}

RunReport run_qaco(const QapInstance& instance, const QacoConfig& config, Rng& rng) {
    config.validate();
    const int n = instance.n();
    const Constraint& constraint = instance.constraint();

    if (!config.allow_mode_mismatch) {
        const bool unconstrained = constraint.kind == Constraint::Kind::Unconstrained;
        const bool cnot = config.exploration == ExplorationMode::CnotPerQubit;
        // CNOT flips leave the fixed-popcount subspace; Fredkin swaps cannot
        // reach solutions of different weight.
        if (unconstrained != cnot)
            throw std::invalid_argument(
                "run_qaco: exploration mode does not match the constraint "
                "(CNOT <-> unconstrained, Fredkin <-> exact-ones); set "
                "allow_mode_mismatch to override");
    }

    std::vector<std::string> valid_set;
    if (constraint.kind == Constraint::Kind::ExactOnes)
        valid_set = valid_solutions(n, constraint);

    PheromoneAngles angles = PheromoneAngles::initial(n);
    RunReport report;
    report.trace.reserve(static_cast<std::size_t>(config.max_iter));
    bool have_best = false;
    int stagnation = 0;

    for (int j = 1; j <= config.max_iter; ++j) {
        const double beta = beta_schedule(j, config.beta_e0, config.max_iter);
        const ExplorationPlan plan =
            exploration_plan(n, config.exploration, rng, config.drop_last_fredkin_pair);
        const std::string measured = run_iteration(angles, beta, plan, config.sim_mode, rng);

        std::string repaired = measured;
        if (!constraint.allows(repaired)) repaired = gen_s(repaired, valid_set, rng);

        const double f = fitness(instance, repaired);
        report.trace.push_back({j, measured, repaired, f, beta});

        // The table compares against the best of the previous iterations;
        // the very first solution counts as an improvement over nothing and
        // is reinforced against itself.
        const bool better = !have_best || f > report.best.fitness;
        const std::string& reference = have_best ? report.best.bits : repaired;
        angles = pheromone_update(angles, repaired, reference, better, config.table);

        if (better) {
            report.best = {repaired, f};
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
