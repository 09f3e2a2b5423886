#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qaco/circuit_export.hpp"
#include "qaco/qaco.hpp"
#include "test_helpers.hpp"

using namespace qaco;
using testutil::data_path;
using testutil::Histogram;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("beta schedule") {
    CHECK(beta_schedule(0, 0.13, 62) == 0.13);
    CHECK(beta_schedule(62, 0.13, 62) == 1.0);
    CHECK(beta_schedule(31, 0.13, 62) == doctest::Approx(0.565).epsilon(1e-12));

    // Exact endpoints for a range of starting values.
    for (double beta0 : {0.0, 0.07, 0.13, 0.5, 0.93, 1.0}) {
        CHECK(beta_schedule(0, beta0, 17) == beta0);
        CHECK(beta_schedule(17, beta0, 17) == 1.0);
    }

    CHECK_THROWS_AS(beta_schedule(-1, 0.13, 62), std::out_of_range);
    CHECK_THROWS_AS(beta_schedule(63, 0.13, 62), std::out_of_range);
}

TEST_CASE("convergence parameter fit") {
    const ConvergeParams p16 = converge_params(16);
    CHECK(p16.conver_condition == 59);
    CHECK(p16.max_iter == 62);

    CHECK(converge_params(1).conver_condition == 1);  // clamped
    CHECK(converge_params(64).conver_condition == 152);

    CHECK_THROWS_AS(converge_params(0), std::invalid_argument);
}

TEST_CASE("exploration plans") {
    Rng rng(1);

    SUBCASE("cnot mode targets every ant qubit once") {
        const ExplorationPlan plan = exploration_plan(3, ExplorationMode::CnotPerQubit, rng);
        REQUIRE(plan.size() == 3);
        std::set<int> targets;
        for (const ExplorationGate& g : plan) {
            CHECK(g.kind == ExplorationGate::Kind::FlipTarget);
            targets.insert(g.a);
        }
        CHECK(targets == std::set<int>{0, 1, 2});
    }

    SUBCASE("fredkin mode covers every pair exactly once") {
        const ExplorationPlan plan =
            exploration_plan(4, ExplorationMode::RandomizedFredkinPairs, rng);
        REQUIRE(plan.size() == 6);
        std::set<std::pair<int, int>> pairs;
        for (const ExplorationGate& g : plan) {
            CHECK(g.kind == ExplorationGate::Kind::SwapPair);
            pairs.insert({std::min(g.a, g.b), std::max(g.a, g.b)});
        }
        CHECK(pairs.size() == 6);
    }

    SUBCASE("order is a deterministic function of the stream") {
        auto order = [](std::uint64_t seed) {
            Rng r(seed);
            std::vector<std::pair<int, int>> out;
            for (const ExplorationGate& g :
                 exploration_plan(5, ExplorationMode::RandomizedFredkinPairs, r))
                out.emplace_back(g.a, g.b);
            return out;
        };
        CHECK(order(7) == order(7));
        CHECK(order(7) != order(8));
    }

    SUBCASE("degenerate sizes") {
        Rng r(1);
        CHECK_THROWS_AS(exploration_plan(1, ExplorationMode::RandomizedFredkinPairs, r),
                        std::invalid_argument);
        CHECK(exploration_plan(4, ExplorationMode::RandomizedFredkinPairs, r, true).size() == 5);
    }
}

TEST_CASE("iteration outcomes: uniform start without exploration") {
    Rng rng(21);
    const PheromoneAngles angles = PheromoneAngles::initial(2);
    const ExplorationPlan plan = {ExplorationGate::flip(0), ExplorationGate::flip(1)};
    Histogram hist;
    for (int i = 0; i < 10000; ++i)
        hist.add(run_iteration(angles, 0.0, plan, SimMode::Unraveled, rng));
    for (const std::string bits : {"00", "01", "10", "11"})
        CHECK(std::abs(hist.frequency(bits) - 0.25) < 0.02);
}

TEST_CASE("iteration outcomes: cnot flip law from a basis state") {
    // From |000> with per-gate probability beta, the chance of flipping the
    // subset S is beta^|S| (1-beta)^(3-|S|). Chi-squared over all 8 cells.
    Rng rng(22);
    PheromoneAngles angles;
    angles.theta = {0.0, 0.0, 0.0};
    const ExplorationPlan plan = {ExplorationGate::flip(0), ExplorationGate::flip(1),
                                  ExplorationGate::flip(2)};
    const double beta = 0.3;
    const long samples = 50000;
    Histogram hist;
    for (long i = 0; i < samples; ++i)
        hist.add(run_iteration(angles, beta, plan, SimMode::Unraveled, rng));

    double chi2 = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        const std::string bits = StateVector::index_to_bits(static_cast<std::size_t>(mask), 3);
        int ones = 0;
        for (char c : bits) ones += (c == '1');
        const double p = std::pow(beta, ones) * std::pow(1.0 - beta, 3 - ones);
        const double expected = p * samples;
        const double observed = hist.frequency(bits) * samples;
        chi2 += (observed - expected) * (observed - expected) / expected;
    }
    CHECK(chi2 < 24.32);  // 99.9% quantile, 7 degrees of freedom
}

TEST_CASE("iteration outcomes: fredkin preserves popcount") {
    Rng rng(23);
    PheromoneAngles angles;
    angles.theta = {pi, pi, 0.0};  // encodes |110>
    for (double beta : {0.2, 0.7, 1.0}) {
        for (int i = 0; i < 2000; ++i) {
            Rng plan_rng = rng.derive(static_cast<std::uint64_t>(i));
            const ExplorationPlan plan =
                exploration_plan(3, ExplorationMode::RandomizedFredkinPairs, plan_rng);
            const std::string out = run_iteration(angles, beta, plan, SimMode::Unraveled, rng);
            CHECK(popcount(out) == 2);
        }
    }
}

TEST_CASE("both simulation modes match the reset-channel diagonal") {
    const std::vector<double> theta = {1.1, 0.7, 2.0};
    PheromoneAngles angles{theta};
    const ExplorationPlan plan = {ExplorationGate::swap_pair(0, 1),
                                  ExplorationGate::swap_pair(1, 2),
                                  ExplorationGate::swap_pair(0, 2)};
    const long samples = 50000;

    Rng rng(31);
    for (double beta : {0.1, 0.5, 0.9}) {
        const std::vector<double> diag = dm_run_reset_circuit(3, beta, plan, theta).diagonal();

        // Analytic cross-check of the unraveling itself.
        const std::vector<double> oracle = testutil::unraveled_distribution(theta, beta, plan);
        for (std::size_t k = 0; k < diag.size(); ++k)
            CHECK(std::abs(diag[k] - oracle[k]) < 1e-12);

        for (SimMode mode : {SimMode::Unraveled, SimMode::ExplicitReset}) {
            Histogram hist;
            for (long i = 0; i < samples; ++i)
                hist.add(run_iteration(angles, beta, plan, mode, rng));
            for (std::size_t k = 0; k < diag.size(); ++k) {
                const std::string bits = StateVector::index_to_bits(k, 3);
                CHECK(testutil::within_3sigma(hist.frequency(bits), diag[k], samples));
            }
        }
    }
}

TEST_CASE("escape law: flip distance q costs beta^q (1-beta)^(n-q)") {
    Rng rng(37);
    const std::string pinned = "1010";
    PheromoneAngles angles;
    for (char c : pinned) angles.theta.push_back(c == '1' ? pi : 0.0);
    const double beta = 0.3;
    const int n = 4;
    ExplorationPlan plan;
    for (int i = 0; i < n; ++i) plan.push_back(ExplorationGate::flip(i));

    const long samples = 100000;
    Histogram hist;
    for (long i = 0; i < samples; ++i)
        hist.add(run_iteration(angles, beta, plan, SimMode::Unraveled, rng));

    for (int mask = 0; mask < 16; ++mask) {
        const std::string target = StateVector::index_to_bits(static_cast<std::size_t>(mask), n);
        int q = 0;
        for (int i = 0; i < n; ++i) q += (target[static_cast<std::size_t>(i)] != pinned[static_cast<std::size_t>(i)]);
        const double bound = std::pow(beta, q) * std::pow(1.0 - beta, n - q);
        CHECK(hist.frequency(target) >= 0.9 * bound);
    }
}

TEST_CASE("gen_s distribution") {
    Rng rng(41);

    SUBCASE("symmetric distances split evenly") {
        Histogram hist;
        const std::vector<std::string> valid = {"01", "10"};
        for (int i = 0; i < 10000; ++i) hist.add(gen_s("00", valid, rng));
        CHECK(std::abs(hist.frequency("01") - 0.5) < 0.02);
        CHECK(std::abs(hist.frequency("10") - 0.5) < 0.02);
    }

    SUBCASE("inverse-distance weights") {
        // d = {1, 3} -> Q = 4/3 -> p = {3/4, 1/4}.
        Histogram hist;
        const std::vector<std::string> valid = {"100", "111"};
        for (int i = 0; i < 10000; ++i) hist.add(gen_s("000", valid, rng));
        CHECK(std::abs(hist.frequency("100") - 0.75) < 0.02);
        CHECK(std::abs(hist.frequency("111") - 0.25) < 0.02);
    }

    SUBCASE("output stays inside the valid set") {
        const std::vector<std::string> valid = {"01", "10"};
        for (int i = 0; i < 1000; ++i) CHECK(popcount(gen_s("11", valid, rng)) == 1);
    }

    SUBCASE("contract violations") {
        const std::vector<std::string> valid = {"01", "10"};
        CHECK_THROWS_AS(gen_s("01", valid, rng), std::invalid_argument);
        CHECK_THROWS_AS(gen_s("00", {}, rng), std::invalid_argument);
        CHECK_THROWS_AS(gen_s("0", valid, rng), std::invalid_argument);
    }

    SUBCASE("chi-squared against the inverse-distance law") {
        // Three fixed cases; 99.9% quantiles at 1 and 2 degrees of freedom.
        struct Case {
            std::string invalid;
            std::vector<std::string> valid;
            std::vector<double> p;
            double threshold;
        };
        const std::vector<Case> cases = {
            {"00", {"01", "10"}, {0.5, 0.5}, 10.83},
            {"000", {"100", "111"}, {0.75, 0.25}, 10.83},
            {"0000", {"1000", "1100", "1110"}, {6.0 / 11, 3.0 / 11, 2.0 / 11}, 13.82},
        };
        const long draws = 10000;
        for (const Case& c : cases) {
            Histogram hist;
            for (long i = 0; i < draws; ++i) hist.add(gen_s(c.invalid, c.valid, rng));
            double chi2 = 0.0;
            for (std::size_t k = 0; k < c.valid.size(); ++k) {
                const double expected = c.p[k] * draws;
                const double observed = hist.frequency(c.valid[k]) * draws;
                chi2 += (observed - expected) * (observed - expected) / expected;
            }
            CHECK(chi2 < c.threshold);
        }
    }
}

TEST_CASE("config validation") {
    QacoConfig config;
    config.beta_e0 = 1.5;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.beta_e0 = 0.13;
    config.conver_condition = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.conver_condition = 10;
    config.max_iter = 9;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.max_iter = 10;
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("pheromone update follows the lookup table") {
    const UpdateTable table = UpdateTable::defaults();

    SUBCASE("spec rows at theta = pi/2") {
        PheromoneAngles angles{{pi / 2.0}};
        const PheromoneAngles up = pheromone_update(angles, "1", "1", true, table);
        CHECK(up.theta[0] == doctest::Approx(pi / 2.0 + 0.01 * pi).epsilon(1e-12));

        const PheromoneAngles up2 = pheromone_update(angles, "0", "1", false, table);
        CHECK(up2.theta[0] == doctest::Approx(pi / 2.0 + 0.07 * pi).epsilon(1e-12));
    }

    SUBCASE("starred rows flip sign when cos(theta/2) < 0") {
        PheromoneAngles angles{{1.9 * pi}};
        const PheromoneAngles up = pheromone_update(angles, "0", "0", true, table);
        CHECK(up.theta[0] == doctest::Approx(1.91 * pi).epsilon(1e-12));
    }

    SUBCASE("every update moves theta by exactly the looked-up delta") {
        Rng rng(43);
        for (int trial = 0; trial < 500; ++trial) {
            const double theta = rng.uniform(-2.0 * pi, 2.0 * pi);
            const int x = static_cast<int>(rng.below(2));
            const int b = static_cast<int>(rng.below(2));
            const bool better = rng.bernoulli(0.5);
            PheromoneAngles angles{{theta}};
            const PheromoneAngles up = pheromone_update(
                angles, std::string(1, static_cast<char>('0' + x)),
                std::string(1, static_cast<char>('0' + b)), better, table);
            double expected = table.delta[x][b][better];
            if (table.flip[x][b][better] && std::cos(theta / 2.0) < 0.0) expected = -expected;
            CHECK(up.theta[0] - theta == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("length mismatch") {
        PheromoneAngles angles{{pi / 2.0, pi / 2.0}};
        CHECK_THROWS_AS(pheromone_update(angles, "1", "11", true, table), std::invalid_argument);
    }
}

TEST_CASE("full runs on the first bundled instance") {
    const QapInstance m1 = load_instance(data_path("m1.qap"));
    const Solution optimum = brute_force_opt(m1);

    QacoConfig config;  // defaults: beta0 0.13, CC 59, maxIter 62, cnot, unraveled
    int wrong = 0;
    double iter_sum = 0.0;
    const int runs = 100;
    for (int r = 0; r < runs; ++r) {
        Rng rng(Rng::mix(1000, static_cast<std::uint64_t>(r)));
        const RunReport report = run_qaco(m1, config, rng);
        if (std::abs(report.best.fitness - optimum.fitness) > 1e-9) ++wrong;
        iter_sum += report.exit_iteration;

        // Best fitness equals the running maximum of the trace.
        double running = -1e300;
        for (const IterationRecord& rec : report.trace) running = std::max(running, rec.fitness);
        CHECK(report.best.fitness == doctest::Approx(running));
        CHECK(report.exit_iteration <= config.max_iter);
    }
    CHECK(100.0 * wrong / runs <= 5.0);
    const double mean_exit = iter_sum / runs;
    CHECK(mean_exit >= 59.0);
    CHECK(mean_exit <= 62.0);
}

TEST_CASE("stagnation window of one exits at the first non-improvement") {
    const QapInstance m1 = load_instance(data_path("m1.qap"));
    QacoConfig config;
    config.conver_condition = 1;
    config.max_iter = 30;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(Rng::mix(2000, s));
        const RunReport report = run_qaco(m1, config, rng);
        CHECK(report.exit_iteration <= config.max_iter);
        // Every iteration before the exit strictly improved on its
        // predecessors; only at max_iter can the run end on an improvement.
        double best_so_far = -1e300;
        for (std::size_t i = 0; i + 1 < report.trace.size(); ++i) {
            CHECK(report.trace[i].fitness > best_so_far);
            best_so_far = std::max(best_so_far, report.trace[i].fitness);
        }
        if (report.exit_iteration < config.max_iter)
            CHECK(report.trace.back().fitness <= best_so_far);
    }
}

TEST_CASE("constrained runs never report an out-of-subspace solution") {
    Rng gen(51);
    const QapInstance instance = random_instance(4, Constraint::exact_ones(2), gen);
    QacoConfig config;
    config.exploration = ExplorationMode::RandomizedFredkinPairs;
    config.conver_condition = 10;
    config.max_iter = 11;
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(Rng::mix(3000, s));
        const RunReport report = run_qaco(instance, config, rng);
        CHECK(popcount(report.best.bits) == 2);
        for (const IterationRecord& rec : report.trace) CHECK(popcount(rec.repaired) == 2);
    }
}

TEST_CASE("exploration mode must match the constraint unless overridden") {
    Rng gen(52);
    const QapInstance constrained = random_instance(4, Constraint::exact_ones(2), gen);
    const QapInstance open = random_instance(4, Constraint::unconstrained(), gen);
    Rng rng(1);

    QacoConfig cnot_config;
    CHECK_THROWS_AS(run_qaco(constrained, cnot_config, rng), std::invalid_argument);

    QacoConfig fredkin_config;
    fredkin_config.exploration = ExplorationMode::RandomizedFredkinPairs;
    CHECK_THROWS_AS(run_qaco(open, fredkin_config, rng), std::invalid_argument);

    // Override: cnot exploration on a constrained problem leans on the
    // validity filter.
    QacoConfig forced = cnot_config;
    forced.allow_mode_mismatch = true;
    forced.conver_condition = 5;
    forced.max_iter = 6;
    const RunReport report = run_qaco(constrained, forced, rng);
    for (const IterationRecord& rec : report.trace) CHECK(popcount(rec.repaired) == 2);
}

TEST_CASE("identical seeds give identical runs") {
    const QapInstance m2 = load_instance(data_path("m2.qap"));
    QacoConfig config;
    auto serialize = [&](std::uint64_t seed) {
        Rng rng(seed);
        const RunReport report = run_qaco(m2, config, rng);
        std::ostringstream out;
        write_report(report, out);
        return out.str();
    };
    CHECK(serialize(77) == serialize(77));
    CHECK(serialize(77) != serialize(78));
}

TEST_CASE("circuit export") {
    PheromoneAngles angles = PheromoneAngles::initial(3);
    Rng rng(5);
    const ExplorationPlan plan =
        exploration_plan(3, ExplorationMode::RandomizedFredkinPairs, rng);
    const std::string text = export_circuit(angles, 0.13, plan);

    auto count_occurrences = [&](const std::string& needle) {
        std::size_t count = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            ++count;
            pos += needle.size();
        }
        return count;
    };

    CHECK(text.starts_with("OPENQASM 2.0;\n"));
    CHECK(count_occurrences(") ant[") == 3);       // pheromone layer
    CHECK(count_occurrences(") expl[0];") == 3);   // one exploration rotation per gate
    CHECK(count_occurrences("cswap expl[0],ant[") == 3);
    CHECK(count_occurrences("reset expl[0];") == 3);
    CHECK(count_occurrences("measure ant[") == 3);

    // Structure-preserving at beta = 0: rotations of angle 0 still emitted.
    const std::string zero_beta = export_circuit(angles, 0.0, plan);
    CHECK(count_occurrences("reset expl[0];") == 3);
    CHECK(zero_beta.find("ry(0) expl[0];") != std::string::npos);

    // Byte-identical for identical inputs.
    CHECK(export_circuit(angles, 0.13, plan) == text);
}
