#include <cmath>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "teamreg/errors.hpp"
#include "teamreg/reward.hpp"
#include "teamreg/static_reduction.hpp"
#include "teamreg/team.hpp"

using namespace teamreg;

TEST_CASE("policy and profile validation") {
    Policy p = Policy::uniform(0, 2, 3);
    CHECK_NOTHROW(p.validate());
    p.table[0] = 0.5;
    CHECK_THROWS_AS(p.validate(), ValidationError);

    PolicyProfile prof;
    prof.policies.push_back(Policy::uniform(1, 2, 2));  // wrong position
    CHECK_THROWS_AS(prof.validate(), ShapeError);
}

TEST_CASE("reward_R at vertices recovers table entries") {
    rng::Engine eng(5);
    StaticTeam team = testutil::random_team(eng, 2, 2, 3);
    for (int u1 = 0; u1 < 3; ++u1)
        for (int u2 = 0; u2 < 3; ++u2) {
            std::vector<std::vector<double>> delta{{0, 0, 0}, {0, 0, 0}};
            delta[0][u1] = 1.0;
            delta[1][u2] = 1.0;
            const std::vector<int> y{1, 0};
            const double want = team.r_at(team.obs_space.flatten(y),
                                          team.act_space.flatten({u1, u2}));
            CHECK(reward_R(team, y, delta) == doctest::Approx(want).epsilon(1e-14));
        }
}

TEST_CASE("reward_R of a constant table is the constant") {
    StaticTeam team = testutil::make_team(2, 2, 2, std::vector<double>(16, 3.25), 1.0);
    rng::Engine eng(8);
    for (int k = 0; k < 20; ++k) {
        std::vector<std::vector<double>> delta{rng::simplex_point(eng, 2),
                                               rng::simplex_point(eng, 2)};
        CHECK(reward_R(team, {0, 1}, delta) == doctest::Approx(3.25).epsilon(1e-14));
    }
}

TEST_CASE("reward_R uniform actions equal the four-term average") {
    rng::Engine eng(21);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    const std::vector<int> y{0, 1};
    const std::size_t yf = team.obs_space.flatten(y);
    const double avg = (team.r_at(yf, 0) + team.r_at(yf, 1) + team.r_at(yf, 2) +
                        team.r_at(yf, 3)) /
                       4.0;
    std::vector<std::vector<double>> delta{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(reward_R(team, y, delta) == doctest::Approx(avg).epsilon(1e-14));
    CHECK(serial::reward_R(team, y, delta) == doctest::Approx(avg).epsilon(1e-14));
}

TEST_CASE("reward_R is affine in each agent's distribution") {
    rng::Engine eng(31);
    StaticTeam team = testutil::random_team(eng, 3, 2, 3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::vector<double>> a, b;
        for (int i = 0; i < 3; ++i) {
            a.push_back(rng::simplex_point(eng, 3));
            b.push_back(a.back());
        }
        const int j = rng::uniform_int(eng, 3);
        b[j] = rng::simplex_point(eng, 3);
        const double lam = rng::uniform01(eng);
        auto mid = a;
        for (int u = 0; u < 3; ++u) mid[j][u] = lam * a[j][u] + (1.0 - lam) * b[j][u];
        const std::vector<int> y{0, 1, 0};
        const double interp =
            lam * reward_R(team, y, a) + (1.0 - lam) * reward_R(team, y, b);
        CHECK(reward_R(team, y, mid) == doctest::Approx(interp).epsilon(1e-12));
    }
}

TEST_CASE("reward_R shape errors") {
    rng::Engine eng(3);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    CHECK_THROWS_AS(reward_R(team, {0}, {{0.5, 0.5}, {0.5, 0.5}}), ShapeError);
    CHECK_THROWS_AS(reward_R(team, {0, 0}, {{0.5, 0.5}}), ShapeError);
    CHECK_THROWS_AS(reward_R(team, {0, 0}, {{0.5, 0.5}, {0.3, 0.3, 0.4}}), ShapeError);
}

TEST_CASE("reward_J basics") {
    StaticTeam team = testutil::make_team(2, 3, 2, std::vector<double>(36, 1.5), 1.0);
    rng::Engine eng(14);
    CHECK(reward_J(team, random_profile(eng, team)) == doctest::Approx(1.5).epsilon(1e-14));

    // Single agent, one observation: J = sum_u r(u) gamma(u).
    StaticTeam solo = testutil::make_team(1, 1, 3, {0.2, 0.9, 0.4}, 1.0);
    PolicyProfile prof;
    prof.policies.push_back(Policy{0, 1, 3, {0.5, 0.25, 0.25}});
    CHECK(reward_J(solo, prof) ==
          doctest::Approx(0.2 * 0.5 + 0.9 * 0.25 + 0.4 * 0.25).epsilon(1e-14));
}

TEST_CASE("reward_J agrees with the exhaustive sum and stays in [min r, max r]") {
    rng::Engine eng(77);
    for (int rep = 0; rep < 10; ++rep) {
        StaticTeam team = testutil::random_team(eng, 2, 3, 2);
        PolicyProfile prof = random_profile(eng, team);
        const double j = reward_J(team, prof);
        CHECK(j == doctest::Approx(serial::reward_J(team, prof)).epsilon(1e-13));
        CHECK(j >= team.min_reward() - 1e-12);
        CHECK(j <= team.max_reward() + 1e-12);
    }
}

TEST_CASE("reward_J_dynamic constants and deterministic trajectories") {
    rng::Engine eng(50);
    DynamicTeamSpec spec = testutil::random_dynamic_spec(eng, 2, 2, 2, 2);
    for (double& v : spec.reward_p) v = 0.75;
    CHECK(reward_J_dynamic(spec, uniform_profile_for_dynamic(spec)) ==
          doctest::Approx(0.75).epsilon(1e-13));

    // Deterministic channels and point-mass policies: p evaluated on the
    // induced trajectory, weighted by the prior.
    DynamicTeamSpec det = testutil::random_dynamic_spec(eng, 2, 2, 2, 2);
    // Agent 1 sees y = x; agent 2 sees y = u_1 (prefix is u1 only).
    det.channels[0] = {1, 0, 0, 1};  // rows: x=0 -> y=0, x=1 -> y=1
    det.channels[1] = {1, 0, 0, 1, 1, 0, 0, 1};  // rows (x,u1): y = u1
    PolicyProfile prof;
    // gamma_1(y) = y (follow observation), gamma_2(y) = 1 - y.
    prof.policies.push_back(Policy{0, 2, 2, {1, 0, 0, 1}});
    prof.policies.push_back(Policy{1, 2, 2, {0, 1, 1, 0}});

    // x=0: y1=0, u1=0, y2=0, u2=1; x=1: y1=1, u1=1, y2=1, u2=0.
    const double want =
        det.prior[0] * det.p_at(0, det.obs_space.flatten({0, 0}), det.act_space.flatten({0, 1})) +
        det.prior[1] * det.p_at(1, det.obs_space.flatten({1, 1}), det.act_space.flatten({1, 0}));
    CHECK(reward_J_dynamic(det, prof) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("reward_J_dynamic matches a Monte-Carlo estimate") {
    rng::Engine eng(60);
    DynamicTeamSpec spec = testutil::random_dynamic_spec(eng, 2, 3, 2, 2);
    PolicyProfile prof = random_profile_for_dynamic(eng, spec);
    const double exact = reward_J_dynamic(spec, prof);

    auto sample_categorical = [&](const double* w, int n) {
        double target = rng::uniform01(eng);
        for (int i = 0; i < n - 1; ++i) {
            target -= w[i];
            if (target < 0.0) return i;
        }
        return n - 1;
    };

    const int samples = 200000;
    double mean = 0.0, m2 = 0.0;
    for (int s = 1; s <= samples; ++s) {
        const int x = sample_categorical(spec.prior.data(), spec.num_states());
        std::vector<int> y(2), u(2);
        std::size_t u_prefix = 0;
        for (int i = 0; i < 2; ++i) {
            const int ny = spec.num_obs(i);
            std::vector<double> row(ny);
            for (int yy = 0; yy < ny; ++yy) row[yy] = spec.channel_at(i, x, u_prefix, yy);
            y[i] = sample_categorical(row.data(), ny);
            u[i] = sample_categorical(prof.policies[i].row(y[i]), spec.num_actions(i));
            u_prefix = u_prefix * static_cast<std::size_t>(spec.act_space.dims[i]) +
                       static_cast<std::size_t>(u[i]);
        }
        const double v = spec.p_at(x, spec.obs_space.flatten(y), spec.act_space.flatten(u));
        const double delta = v - mean;
        mean += delta / s;
        m2 += delta * (v - mean);
    }
    const double stderr_est = std::sqrt(m2 / (samples - 1.0) / samples);
    CHECK(std::abs(mean - exact) < 5.0 * stderr_est + 1e-6);
}

TEST_CASE("dynamic and reduced static rewards agree") {
    rng::Engine eng(90);
    for (int rep = 0; rep < 5; ++rep) {
        DynamicTeamSpec spec = testutil::random_dynamic_spec(eng, 2, 3, 2, 2);
        const std::vector<RegularizerSpec> regs(2, {RegularizerKind::NegEntropy, 1.0, 2});
        StaticTeam team = reduce(spec, regs);
        for (int k = 0; k < 20; ++k) {
            PolicyProfile prof = random_profile_for_dynamic(eng, spec);
            CHECK(std::abs(reward_J_dynamic(spec, prof) - reward_J(team, prof)) < 1e-10);
        }
    }
}

TEST_CASE("static team rejects oversize and malformed input") {
    rng::Engine eng(4);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    CHECK_THROWS_AS(team.validate(kSimplexTol, /*cap=*/8), SizeError);
    team.reward_r[3] = std::nan("");
    CHECK_THROWS_AS(team.validate(), ValidationError);
}
