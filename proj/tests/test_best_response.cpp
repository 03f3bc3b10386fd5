#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <doctest.h>

#include "helpers.hpp"
#include "teamreg/best_response.hpp"
#include "teamreg/contraction.hpp"
#include "teamreg/oracle_eval.hpp"
#include "teamreg/reward.hpp"
#include "teamreg/sync_solver.hpp"

using namespace teamreg;
using testutil::l1;

TEST_CASE("g_vector for a single agent is the reward row") {
    StaticTeam team = testutil::make_team(1, 2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 1.0);
    PolicyProfile prof = uniform_profile(team);
    CHECK(g_vector(team, prof, 0, 0) == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(g_vector(team, prof, 0, 1) == std::vector<double>{0.4, 0.5, 0.6});
}

TEST_CASE("g_vector against point-mass opponents with singleton observations") {
    rng::Engine eng(6);
    StaticTeam team = testutil::random_team(eng, 2, 1, 3);
    PolicyProfile prof = uniform_profile(team);
    prof.policies[1] = Policy{1, 1, 3, {0, 1, 0}};  // point mass on u2 = 1
    const auto g = g_vector(team, prof, 0, 0);
    for (int u = 0; u < 3; ++u)
        CHECK(g[u] == doctest::Approx(team.r_at(0, team.act_space.flatten({u, 1})))
                          .epsilon(1e-14));
}

TEST_CASE("g_matrix equals the naive enumeration oracle") {
    rng::Engine eng(17);
    for (int rep = 0; rep < 5; ++rep) {
        StaticTeam team = testutil::random_team(eng, 3, 2, 3);
        PolicyProfile prof = random_profile(eng, team);
        for (int j = 0; j < 3; ++j) {
            const auto fast = g_matrix(team, prof, j);
            const auto naive = serial::g_matrix(team, prof, j);
            REQUIRE(fast.size() == naive.size());
            for (std::size_t i = 0; i < fast.size(); ++i)
                CHECK(fast[i] == doctest::Approx(naive[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("g_matrix entries stay within the reward range") {
    rng::Engine eng(19);
    StaticTeam team = testutil::random_team(eng, 2, 3, 2);
    PolicyProfile prof = random_profile(eng, team);
    for (int j = 0; j < 2; ++j)
        for (double v : g_matrix(team, prof, j)) {
            CHECK(v >= team.min_reward() - 1e-12);
            CHECK(v <= team.max_reward() + 1e-12);
        }
}

TEST_CASE("best response to a constant reward is uniform") {
    StaticTeam team = testutil::make_team(2, 2, 3, std::vector<double>(36, 2.0), 1.0);
    rng::Engine eng(23);
    PolicyProfile prof = random_profile(eng, team);
    const PolicyProfile next = best_response_all(team, prof);
    for (const auto& p : next.policies)
        for (double v : p.table) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-13));

    // And the all-uniform profile is the fixed point.
    const PolicyProfile again = best_response_all(team, next);
    for (int j = 0; j < 2; ++j) CHECK(policy_l1_distance(again.policies[j], next.policies[j]) < 1e-14);
}

TEST_CASE("single-agent best response is the softmax of the reward") {
    StaticTeam team = testutil::make_team(1, 1, 2, {1.0, 0.0}, 1.0);
    Policy p = best_response_j(team, uniform_profile(team), 0);
    CHECK(p.row(0)[0] == doctest::Approx(0.7310585786300049).epsilon(1e-13));
    CHECK(p.row(0)[1] == doctest::Approx(0.2689414213699951).epsilon(1e-13));

    const auto grid = testutil::grid_maximizer(team.regularizers[0], {1.0, 0.0}, 1e-2);
    CHECK(l1({p.row(0)[0], p.row(0)[1]}, grid) < 1e-3);
}

TEST_CASE("best-response rows maximize the conditional regularized objective") {
    rng::Engine eng(29);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2, /*tau=*/0.8);
    PolicyProfile prof = random_profile(eng, team);
    const int j = 1;
    Policy br = best_response_j(team, prof, j);

    // Independent route: grid search over delta of
    //   sum_{y^-j} R(y, gamma^-j(y^-j), delta) prod pi - Omega_j(delta),
    // assembled through reward_R rather than G_j.
    for (int yj = 0; yj < team.num_obs(j); ++yj) {
        auto conditional = [&](const std::vector<double>& delta) {
            double acc = 0.0;
            for (int yo = 0; yo < team.num_obs(0); ++yo) {
                std::vector<std::vector<double>> d(2);
                d[0].assign(prof.policies[0].row(yo), prof.policies[0].row(yo) + 2);
                d[1] = delta;
                acc += reward_R(team, {yo, yj}, d) / team.num_obs(0);
            }
            return acc - omega_value(team.regularizers[j], delta);
        };
        // Fine grid with refinement.
        double best_val = -1e300;
        std::vector<double> best{0.5, 0.5};
        double lo = 0.0, hi = 1.0, step = 1e-3;
        for (int level = 0; level < 3; ++level) {
            for (double a = lo; a <= hi + 1e-15; a += step) {
                const double ac = std::min(1.0, std::max(0.0, a));
                const double v = conditional({ac, 1.0 - ac});
                if (v > best_val) {
                    best_val = v;
                    best = {ac, 1.0 - ac};
                }
            }
            lo = std::max(0.0, best[0] - 2 * step);
            hi = std::min(1.0, best[0] + 2 * step);
            step /= 10.0;
        }
        CHECK(l1({br.row(yj)[0], br.row(yj)[1]}, best) < 1e-4);
    }
}

TEST_CASE("best_response_all is Jacobi and not idempotent off the fixed point") {
    rng::Engine eng(37);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    PolicyProfile prof = random_profile(eng, team);
    const PolicyProfile once = best_response_all(team, prof);
    const PolicyProfile twice = best_response_all(team, once);
    double moved = 0.0;
    for (int j = 0; j < 2; ++j) moved += policy_l1_distance(twice.policies[j], once.policies[j]);
    CHECK(moved > 1e-6);

    // The solver's fixed point maps to itself.
    const SolveReport report = solve(team);
    REQUIRE(report.converged);
    const PolicyProfile mapped = best_response_all(team, report.fixed_point);
    for (int j = 0; j < 2; ++j)
        CHECK(policy_l1_distance(mapped.policies[j], report.fixed_point.policies[j]) < 1e-10);
}

TEST_CASE("l1 oscillation fact") {
    rng::Engine eng(41);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 2 + rng::uniform_int(eng, 4);
        std::vector<double> f(n);
        for (double& x : f) x = rng::uniform(eng, -2.0, 2.0);
        const auto mu = rng::simplex_point(eng, n);
        const auto nu = rng::simplex_point(eng, n);
        double s_mu = 0.0, s_nu = 0.0, mx = f[0], mn = f[0];
        for (int i = 0; i < n; ++i) {
            s_mu += f[i] * mu[i];
            s_nu += f[i] * nu[i];
            mx = std::max(mx, f[i]);
            mn = std::min(mn, f[i]);
        }
        CHECK(std::abs(s_mu - s_nu) <= 0.5 * (mx - mn) * l1(mu, nu) + 1e-9);
    }
}

TEST_CASE("reward difference bound from local oscillations") {
    rng::Engine eng(43);
    StaticTeam team = testutil::random_team(eng, 3, 2, 2);
    std::vector<double> lambdas(3);
    for (int j = 0; j < 3; ++j) lambdas[j] = local_oscillation(team, j);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<int> y(3);
        for (int i = 0; i < 3; ++i) y[i] = rng::uniform_int(eng, 2);
        std::vector<std::vector<double>> d, x;
        for (int i = 0; i < 3; ++i) {
            d.push_back(rng::simplex_point(eng, 2));
            x.push_back(rng::simplex_point(eng, 2));
        }
        double rhs = 0.0;
        for (int i = 0; i < 3; ++i) rhs += 0.5 * lambdas[i] * l1(d[i], x[i]);
        CHECK(std::abs(reward_R(team, y, d) - reward_R(team, y, x)) <= rhs + 1e-9);
    }
}

TEST_CASE("best responses are Lipschitz in the opponents' policies") {
    rng::Engine eng(47);
    StaticTeam team = testutil::random_team(eng, 2, 2, 3, /*tau=*/0.9);
    std::vector<double> lambdas(2);
    for (int j = 0; j < 2; ++j) lambdas[j] = local_oscillation(team, j);
    for (int rep = 0; rep < 1000; ++rep) {
        PolicyProfile a = random_profile(eng, team);
        PolicyProfile b = random_profile(eng, team);
        for (int j = 0; j < 2; ++j) {
            const double lhs =
                policy_l1_distance(best_response_j(team, a, j), best_response_j(team, b, j));
            double rhs = 0.0;
            for (int i = 0; i < 2; ++i) {
                if (i == j) continue;
                rhs += 0.5 * lambdas[i] * policy_l1_distance(a.policies[i], b.policies[i]);
            }
            CHECK(lhs <= rhs / team.regularizers[j].rho() + 1e-9);
        }
    }
}

TEST_CASE("best response dominates unilateral deviations") {
    rng::Engine eng(53);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    PolicyProfile prof = random_profile(eng, team);
    for (int j = 0; j < 2; ++j) {
        PolicyProfile with_br = prof;
        with_br.policies[j] = best_response_j(team, prof, j);
        const double best_value = reward_J_reg(team, with_br);
        for (int k = 0; k < 100; ++k) {
            PolicyProfile rival = prof;
            rival.policies[j] = random_policy(eng, j, team.num_obs(j), team.num_actions(j));
            CHECK(reward_J_reg(team, rival) <= best_value + 1e-9);
        }
    }
}

#ifdef _OPENMP
TEST_CASE("kernels are bitwise independent of the thread count") {
    rng::Engine eng(59);
    StaticTeam team = testutil::random_team(eng, 3, 2, 3);
    PolicyProfile prof = random_profile(eng, team);

    const int saved = omp_get_max_threads();
    const auto multi = g_matrix(team, prof, 1);
    const double j_multi = reward_J(team, prof);
    omp_set_num_threads(1);
    const auto single = g_matrix(team, prof, 1);
    const double j_single = reward_J(team, prof);
    omp_set_num_threads(saved);

    REQUIRE(multi.size() == single.size());
    for (std::size_t i = 0; i < multi.size(); ++i) CHECK(multi[i] == single[i]);
    CHECK(j_multi == j_single);
}
#endif
