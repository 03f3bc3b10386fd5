#include "teamreg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "teamreg/errors.hpp"

namespace teamreg {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(context + ": missing field '" + key + "'");
    return *it;
}

std::vector<double> double_array(const json& j, const std::string& context) {
    if (!j.is_array()) throw ParseError(context + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError(context + ": expected numeric entries");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::string> label_array(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty())
        throw ParseError(context + ": expected a non-empty array of labels");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError(context + ": labels must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<RegularizerSpec> regularizers_from_json(const json& j, int num_agents,
                                                    const std::vector<int>& action_counts,
                                                    const std::string& context) {
    if (!j.is_array() || static_cast<int>(j.size()) != num_agents)
        throw ParseError(context + ": expected one regularizer per agent");
    std::vector<RegularizerSpec> regs(num_agents);
    for (int i = 0; i < num_agents; ++i) {
        const json& r = j[i];
        const std::string ctx = context + "[" + std::to_string(i) + "]";
        regs[i].kind = kind_from_name(require(r, "kind", ctx).get<std::string>());
        regs[i].temperature = require(r, "temperature", ctx).get<double>();
        regs[i].action_count = action_counts[i];
        regs[i].validate();
    }
    return regs;
}

json regularizers_to_json(const std::vector<RegularizerSpec>& regs) {
    json arr = json::array();
    for (const auto& r : regs)
        arr.push_back({{"kind", kind_name(r.kind)}, {"temperature", r.temperature}});
    return arr;
}

json settings_to_json(const SolverSettings& s) {
    return {{"tol", s.tol}, {"max_iter", s.max_iter}, {"seed", s.seed}};
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ParseError("failed while writing '" + path + "'");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ProblemFile problem_from_json(const json& j, const std::string& context) {
    ProblemFile pf;
    const bool has_dynamic = j.contains("dynamic");
    const bool has_static = j.contains("static");
    if (has_dynamic == has_static)
        throw ParseError(context + ": exactly one of 'dynamic' or 'static' must be present");

    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (s.contains("tol")) pf.settings.tol = s["tol"].get<double>();
        if (s.contains("max_iter")) pf.settings.max_iter = s["max_iter"].get<int>();
        if (s.contains("seed")) pf.settings.seed = s["seed"].get<std::uint64_t>();
    }

    if (has_dynamic) {
        const json& d = j["dynamic"];
        const std::string ctx = context + ".dynamic";
        DynamicTeamSpec spec;
        spec.states = label_array(require(d, "states", ctx), ctx + ".states");
        spec.prior = double_array(require(d, "prior", ctx), ctx + ".prior");
        const json& agents = require(d, "agents", ctx);
        if (!agents.is_array() || agents.empty())
            throw ParseError(ctx + ".agents: expected a non-empty array");
        spec.num_agents = static_cast<int>(agents.size());
        for (int i = 0; i < spec.num_agents; ++i) {
            const std::string actx = ctx + ".agents[" + std::to_string(i) + "]";
            spec.obs_labels.push_back(
                label_array(require(agents[i], "observations", actx), actx + ".observations"));
            spec.action_labels.push_back(
                label_array(require(agents[i], "actions", actx), actx + ".actions"));
        }
        spec.finalize();
        for (int i = 0; i < spec.num_agents; ++i) {
            const std::string actx = ctx + ".agents[" + std::to_string(i) + "]";
            spec.channels.push_back(
                double_array(require(agents[i], "channel", actx), actx + ".channel"));
        }
        spec.reward_p = double_array(require(d, "reward_p", ctx), ctx + ".reward_p");
        spec.validate();

        std::vector<int> action_counts(spec.num_agents);
        for (int i = 0; i < spec.num_agents; ++i) action_counts[i] = spec.num_actions(i);
        pf.regularizers = regularizers_from_json(require(j, "regularizers", context),
                                                 spec.num_agents, action_counts,
                                                 context + ".regularizers");
        pf.dynamic = std::move(spec);
    } else {
        const json& s = j["static"];
        const std::string ctx = context + ".static";
        StaticTeam team;
        const json& agents = require(s, "agents", ctx);
        if (!agents.is_array() || agents.empty())
            throw ParseError(ctx + ".agents: expected a non-empty array");
        team.num_agents = static_cast<int>(agents.size());
        for (int i = 0; i < team.num_agents; ++i) {
            const std::string actx = ctx + ".agents[" + std::to_string(i) + "]";
            team.obs_labels.push_back(
                label_array(require(agents[i], "observations", actx), actx + ".observations"));
            team.action_labels.push_back(
                label_array(require(agents[i], "actions", actx), actx + ".actions"));
        }
        team.finalize();
        team.reward_r = double_array(require(s, "reward_r", ctx), ctx + ".reward_r");

        if (s.contains("obs_marginals")) {
            const json& m = s["obs_marginals"];
            if (!m.is_array() || static_cast<int>(m.size()) != team.num_agents)
                throw ParseError(ctx + ".obs_marginals: expected one row per agent");
            for (int i = 0; i < team.num_agents; ++i)
                team.obs_marginals.push_back(
                    double_array(m[i], ctx + ".obs_marginals[" + std::to_string(i) + "]"));
        } else {
            for (int i = 0; i < team.num_agents; ++i)
                team.obs_marginals.push_back(
                    std::vector<double>(team.num_obs(i), 1.0 / team.num_obs(i)));
        }

        std::vector<int> action_counts(team.num_agents);
        for (int i = 0; i < team.num_agents; ++i) action_counts[i] = team.num_actions(i);
        pf.regularizers = regularizers_from_json(require(j, "regularizers", context),
                                                 team.num_agents, action_counts,
                                                 context + ".regularizers");
        team.regularizers = pf.regularizers;
        team.validate();
        pf.static_team = std::move(team);
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    return problem_from_json(load_json_file(path), path);
}

json static_problem_to_json(const StaticTeam& team, const SolverSettings& settings) {
    json agents = json::array();
    for (int i = 0; i < team.num_agents; ++i)
        agents.push_back(
            {{"observations", team.obs_labels[i]}, {"actions", team.action_labels[i]}});
    return {{"static",
             {{"agents", agents},
              {"reward_r", team.reward_r},
              {"obs_marginals", team.obs_marginals}}},
            {"regularizers", regularizers_to_json(team.regularizers)},
            {"solver", settings_to_json(settings)}};
}

json dynamic_problem_to_json(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                             const SolverSettings& settings) {
    json agents = json::array();
    for (int i = 0; i < spec.num_agents; ++i)
        agents.push_back({{"observations", spec.obs_labels[i]},
                          {"actions", spec.action_labels[i]},
                          {"channel", spec.channels[i]}});
    return {{"dynamic",
             {{"states", spec.states},
              {"prior", spec.prior},
              {"agents", agents},
              {"reward_p", spec.reward_p}}},
            {"regularizers", regularizers_to_json(regs)},
            {"solver", settings_to_json(settings)}};
}

PolicyProfile profile_from_json(const json& j) {
    const json& src = j.contains("fixed_point") ? j["fixed_point"] : j;
    const json& pols = require(src, "policies", "profile");
    if (!pols.is_array() || pols.empty())
        throw ParseError("profile.policies: expected a non-empty array");
    PolicyProfile prof;
    prof.policies.resize(pols.size());
    for (const auto& pj : pols) {
        const int agent = require(pj, "agent", "profile.policies[]").get<int>();
        if (agent < 1 || agent > static_cast<int>(pols.size()))
            throw ParseError("profile: agent index " + std::to_string(agent) + " out of range");
        const json& rows = require(pj, "rows", "profile.policies[]");
        if (!rows.is_array() || rows.empty())
            throw ParseError("profile: agent " + std::to_string(agent) + " has no rows");
        Policy p;
        p.agent = agent - 1;
        p.num_obs = static_cast<int>(rows.size());
        p.num_actions = static_cast<int>(rows[0].size());
        for (const auto& row : rows) {
            auto r = double_array(row, "profile row of agent " + std::to_string(agent));
            if (static_cast<int>(r.size()) != p.num_actions)
                throw ParseError("profile: ragged rows for agent " + std::to_string(agent));
            p.table.insert(p.table.end(), r.begin(), r.end());
        }
        prof.policies[p.agent] = std::move(p);
    }
    prof.validate();
    return prof;
}

PolicyProfile load_profile(const std::string& path) {
    return profile_from_json(load_json_file(path));
}

json profile_to_json(const PolicyProfile& profile) {
    json pols = json::array();
    for (const auto& p : profile.policies) {
        json rows = json::array();
        for (int y = 0; y < p.num_obs; ++y)
            rows.push_back(std::vector<double>(p.row(y), p.row(y) + p.num_actions));
        pols.push_back({{"agent", p.agent + 1}, {"rows", rows}});
    }
    return {{"policies", pols}};
}

Schedule schedule_from_json(const json& j, int num_agents, int horizon_hint) {
    if (!j.is_array()) throw ParseError("schedule: expected a JSON array of events");
    int horizon = horizon_hint;
    for (const auto& ev : j) {
        const int t = require(ev, "t", "schedule event").get<int>();
        if (t < 1) throw ParseError("schedule: event time must be >= 1");
        horizon = std::max(horizon, t);
    }
    Schedule s;
    s.num_agents = num_agents;
    s.horizon = horizon;
    s.events.assign(horizon, std::vector<AgentEvent>(num_agents));
    for (const auto& ev : j) {
        const int t = ev["t"].get<int>();
        const int agent = require(ev, "agent", "schedule event").get<int>();
        if (agent < 1 || agent > num_agents)
            throw ParseError("schedule: agent index " + std::to_string(agent) +
                             " out of range at t=" + std::to_string(t));
        AgentEvent& slot = s.events[t - 1][agent - 1];
        if (ev.contains("action")) {
            const std::string action = ev["action"].get<std::string>();
            if (action == "compute")
                slot.compute = true;
            else if (action != "idle")
                throw ParseError("schedule: unknown action '" + action + "' at t=" +
                                 std::to_string(t));
        }
        if (ev.contains("transmit_to"))
            for (const auto& k : ev["transmit_to"]) {
                const int target = k.get<int>();
                if (target < 1 || target > num_agents || target == agent)
                    throw ParseError("schedule: invalid transmit target " +
                                     std::to_string(target) + " at t=" + std::to_string(t));
                slot.targets.push_back(target - 1);
            }
    }
    s.validate_shape();
    return s;
}

Schedule load_schedule(const std::string& path, int num_agents, int horizon_hint) {
    return schedule_from_json(load_json_file(path), num_agents, horizon_hint);
}

json schedule_to_json(const Schedule& schedule) {
    json arr = json::array();
    for (int t = 1; t <= schedule.horizon; ++t)
        for (int a = 0; a < schedule.num_agents; ++a) {
            const AgentEvent& ev = schedule.at(t, a);
            if (!ev.compute && ev.targets.empty()) continue;
            json targets = json::array();
            for (int k : ev.targets) targets.push_back(k + 1);
            arr.push_back({{"t", t},
                           {"agent", a + 1},
                           {"action", ev.compute ? "compute" : "idle"},
                           {"transmit_to", targets}});
        }
    return arr;
}

json certificate_to_json(const ContractionCertificate& cert) {
    json p = json::array();
    for (int i = 0; i < cert.matrix_p.n; ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < cert.matrix_p.n; ++j2) row.push_back(cert.matrix_p.at(i, j2));
        p.push_back(row);
    }
    return {{"lambdas", cert.lambdas},
            {"matrix_p", p},
            {"spectral_radius", cert.spectral_radius},
            {"weight_vector", cert.weight_vector},
            {"rate", cert.rate},
            {"satisfied", cert.satisfied}};
}

json solve_report_to_json(const SolveReport& report) {
    json j = {{"iterations", report.iterations},
              {"converged", report.converged},
              {"residual", report.residual},
              {"weighted_residual_max", report.weighted_residual_max},
              {"fixed_point", profile_to_json(report.fixed_point)},
              {"certificate", certificate_to_json(report.certificate)}};
    if (!report.aposteriori_bound.empty()) j["aposteriori_bound"] = report.aposteriori_bound;
    return j;
}

json sandwich_to_json(const SandwichReport& report) {
    return {{"J_star", report.j_star},
            {"J_of_gamma_star", report.j_of_gamma_star},
            {"sum_beta", report.sum_beta},
            {"lower_bound", report.lower_bound},
            {"satisfied", report.satisfied},
            {"tolerance", report.tolerance}};
}

json brute_force_to_json(const StaticTeam& team, const BruteForceResult& result) {
    json maximizer = json::array();
    for (int j2 = 0; j2 < team.num_agents; ++j2) {
        const Policy& p = result.maximizer.policies[j2];
        json actions = json::array();
        for (int y = 0; y < p.num_obs; ++y) {
            int act = 0;
            for (int u = 0; u < p.num_actions; ++u)
                if (p.row(y)[u] == 1.0) act = u;
            actions.push_back(team.action_labels[j2][act]);
        }
        maximizer.push_back({{"agent", j2 + 1}, {"actions_by_observation", actions}});
    }
    return {{"J_star", result.j_star},
            {"profiles_searched", result.profiles_searched},
            {"maximizer", maximizer}};
}

json validity_to_json(const ScheduleValidity& validity) {
    json per_agent = json::array();
    for (std::size_t j2 = 0; j2 < validity.first_violation.size(); ++j2) {
        json entry = {{"agent", j2 + 1}};
        if (validity.first_violation[j2] == 0)
            entry["first_violation_t"] = nullptr;
        else
            entry["first_violation_t"] = validity.first_violation[j2];
        per_agent.push_back(entry);
    }
    return {{"valid", validity.valid},
            {"witness_window", validity.witness_window},
            {"tail_start", validity.tail_start},
            {"per_agent", per_agent}};
}

std::string sync_trace_csv(const SolveReport& report) {
    std::ostringstream out;
    const std::size_t n = report.residual.size();
    out << "iter";
    for (std::size_t j = 0; j < n; ++j) out << ",residual_agent_" << (j + 1);
    out << ",weighted_residual\n";
    for (std::size_t k = 0; k < report.history.size(); ++k) {
        out << (k + 1);
        double weighted = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            out << ',' << format_double(report.history[k][j]);
            weighted = std::max(weighted,
                                report.history[k][j] / report.certificate.weight_vector[j]);
        }
        out << ',' << format_double(weighted) << '\n';
    }
    return out.str();
}

std::string async_trace_csv(const Schedule& schedule, const AsyncTrace& trace) {
    std::ostringstream out;
    const int n = schedule.num_agents;
    const bool have_dist = !trace.distance.empty();
    const bool have_mem = !trace.memory_weighted.empty();
    out << "t";
    for (int j = 0; j < n; ++j) out << ",event_agent_" << (j + 1);
    if (have_dist)
        for (int j = 0; j < n; ++j) out << ",dist_agent_" << (j + 1);
    if (have_mem)
        for (int j = 0; j < n; ++j) out << ",memdist_agent_" << (j + 1);
    out << '\n';
    for (int t = 1; t <= trace.horizon; ++t) {
        out << t;
        for (int j = 0; j < n; ++j) {
            const AgentEvent& ev = schedule.at(t, j);
            out << ',' << (ev.compute ? 'C' : 'I');
            for (std::size_t k = 0; k < ev.targets.size(); ++k)
                out << (k == 0 ? '>' : ';') << (ev.targets[k] + 1);
        }
        if (have_dist)
            for (int j = 0; j < n; ++j) out << ',' << format_double(trace.distance[t - 1][j]);
        if (have_mem)
            for (int j = 0; j < n; ++j)
                out << ',' << format_double(trace.memory_weighted[t - 1][j]);
        out << '\n';
    }
    return out.str();
}

}  // namespace teamreg
