#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "teamreg/errors.hpp"
#include "teamreg/io.hpp"

using namespace teamreg;
using nlohmann::json;

TEST_CASE("static problem files round-trip through the loader") {
    rng::Engine eng(3);
    StaticTeam team = testutil::random_team(eng, 2, 2, 3);
    SolverSettings settings;
    settings.tol = 1e-9;
    settings.seed = 42;

    const json j = static_problem_to_json(team, settings);
    const ProblemFile pf = problem_from_json(j, "mem");
    REQUIRE(pf.static_team.has_value());
    CHECK_FALSE(pf.is_dynamic());
    CHECK(pf.static_team->reward_r == team.reward_r);
    CHECK(pf.static_team->obs_labels == team.obs_labels);
    CHECK(pf.settings.tol == 1e-9);
    CHECK(pf.settings.seed == 42);
    // Save -> load -> save is the identity on the JSON form.
    CHECK(static_problem_to_json(*pf.static_team, pf.settings) == j);
}

TEST_CASE("dynamic problem files round-trip through the loader") {
    rng::Engine eng(13);
    DynamicTeamSpec spec = testutil::random_dynamic_spec(eng, 2, 3, 2, 2);
    const std::vector<RegularizerSpec> regs(2, {RegularizerKind::RelEntropyUniform, 0.8, 2});
    const json j = dynamic_problem_to_json(spec, regs, SolverSettings{});
    const ProblemFile pf = problem_from_json(j, "mem");
    REQUIRE(pf.is_dynamic());
    CHECK(pf.dynamic->reward_p == spec.reward_p);
    CHECK(pf.dynamic->channels == spec.channels);
    CHECK(pf.dynamic->prior == spec.prior);
    CHECK(pf.regularizers[0].kind == RegularizerKind::RelEntropyUniform);
    CHECK(dynamic_problem_to_json(*pf.dynamic, pf.regularizers, pf.settings) == j);
}

TEST_CASE("profiles round-trip and validate") {
    rng::Engine eng(23);
    StaticTeam team = testutil::random_team(eng, 2, 2, 3);
    PolicyProfile prof = random_profile(eng, team);
    const PolicyProfile back = profile_from_json(profile_to_json(prof));
    for (int j = 0; j < 2; ++j) CHECK(policy_l1_distance(back.policies[j], prof.policies[j]) == 0.0);

    json bad = profile_to_json(prof);
    bad["policies"][0]["rows"][0][0] = 0.9;  // row no longer sums to 1
    CHECK_THROWS_AS(profile_from_json(bad), ValidationError);
}

TEST_CASE("schedules round-trip") {
    const Schedule s = generate_schedule(ScheduleKind::RandomBounded, 3, 30, 3, 11);
    const Schedule back = schedule_from_json(schedule_to_json(s), 3);
    REQUIRE(back.horizon == s.horizon);
    for (int t = 1; t <= s.horizon; ++t)
        for (int i = 0; i < 3; ++i) {
            CHECK(back.at(t, i).compute == s.at(t, i).compute);
            CHECK(back.at(t, i).targets == s.at(t, i).targets);
        }
}

TEST_CASE("problem files must carry exactly one model section") {
    json j = {{"regularizers", json::array()}};
    CHECK_THROWS_AS(problem_from_json(j, "mem"), ParseError);
    j["dynamic"] = json::object();
    j["static"] = json::object();
    CHECK_THROWS_AS(problem_from_json(j, "mem"), ParseError);
}

TEST_CASE("malformed channel rows are rejected with the offending index") {
    rng::Engine eng(33);
    DynamicTeamSpec spec = testutil::random_dynamic_spec(eng, 2, 2, 2, 2);
    // Break channel row 3 of agent 2 (state 1, prefix 1): scale it to 0.9.
    const std::size_t row = 3;
    spec.channels[1][row * 2] *= 0.9;
    spec.channels[1][row * 2 + 1] *= 0.9;
    const json j = dynamic_problem_to_json(
        spec, std::vector<RegularizerSpec>(2, {RegularizerKind::NegEntropy, 1.0, 2}),
        SolverSettings{});
    try {
        problem_from_json(j, "mem");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("agent 2") != std::string::npos);
        CHECK(msg.find("row 3") != std::string::npos);
    }
}

TEST_CASE("regularizer entries are validated") {
    rng::Engine eng(43);
    StaticTeam team = testutil::random_team(eng, 2, 2, 2);
    json j = static_problem_to_json(team, SolverSettings{});
    j["regularizers"][0]["kind"] = "squared_l2";
    CHECK_THROWS_AS(problem_from_json(j, "mem"), ParseError);
    j["regularizers"][0]["kind"] = "neg_entropy";
    j["regularizers"][0]["temperature"] = -1.0;
    CHECK_THROWS_AS(problem_from_json(j, "mem"), ValidationError);
}

TEST_CASE("schedule parsing rejects bad targets and times") {
    json bad = json::array();
    bad.push_back({{"t", 0}, {"agent", 1}, {"action", "compute"}});
    CHECK_THROWS_AS(schedule_from_json(bad, 2), ParseError);

    json self = json::array();
    self.push_back({{"t", 1}, {"agent", 1}, {"action", "idle"}, {"transmit_to", {1}}});
    CHECK_THROWS_AS(schedule_from_json(self, 2), ParseError);
}

TEST_CASE("format_double survives the round trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
