#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamreg/async_sim.hpp"
#include "teamreg/contraction.hpp"
#include "teamreg/oracle_eval.hpp"
#include "teamreg/sync_solver.hpp"
#include "teamreg/team.hpp"

namespace teamreg {

struct SolverSettings {
    double tol = 1e-10;
    int max_iter = 10000;
    std::uint64_t seed = 0;
};

// Parsed problem file: exactly one of the dynamic/static sections, one
// regularizer per agent, optional solver settings. Agent indices are
// 1-based in files and reports, 0-based in memory.
struct ProblemFile {
    std::optional<DynamicTeamSpec> dynamic;
    std::optional<StaticTeam> static_team;
    std::vector<RegularizerSpec> regularizers;
    SolverSettings settings;

    bool is_dynamic() const { return dynamic.has_value(); }
};

ProblemFile load_problem(const std::string& path);
ProblemFile problem_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json static_problem_to_json(const StaticTeam& team, const SolverSettings& settings);
nlohmann::json dynamic_problem_to_json(const DynamicTeamSpec& spec,
                                       const std::vector<RegularizerSpec>& regs,
                                       const SolverSettings& settings);

PolicyProfile profile_from_json(const nlohmann::json& j);
// Accepts either a bare profile object or a report carrying "fixed_point".
PolicyProfile load_profile(const std::string& path);
nlohmann::json profile_to_json(const PolicyProfile& profile);

Schedule load_schedule(const std::string& path, int num_agents, int horizon_hint = 0);
Schedule schedule_from_json(const nlohmann::json& j, int num_agents, int horizon_hint = 0);
nlohmann::json schedule_to_json(const Schedule& schedule);

nlohmann::json certificate_to_json(const ContractionCertificate& cert);
nlohmann::json solve_report_to_json(const SolveReport& report);
nlohmann::json sandwich_to_json(const SandwichReport& report);
nlohmann::json brute_force_to_json(const StaticTeam& team, const BruteForceResult& result);
nlohmann::json validity_to_json(const ScheduleValidity& validity);

std::string format_double(double v);  // %.17g, round-trip exact

void write_text_file(const std::string& path, const std::string& text);
std::string sync_trace_csv(const SolveReport& report);
std::string async_trace_csv(const Schedule& schedule, const AsyncTrace& trace);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace teamreg
