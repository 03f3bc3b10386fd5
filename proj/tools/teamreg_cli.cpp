#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teamreg/async_sim.hpp"
#include "teamreg/best_response.hpp"
#include "teamreg/contraction.hpp"
#include "teamreg/errors.hpp"
#include "teamreg/io.hpp"
#include "teamreg/oracle_eval.hpp"
#include "teamreg/reward.hpp"
#include "teamreg/static_reduction.hpp"
#include "teamreg/sync_solver.hpp"
#include "teamreg/team.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUnsatisfied = 3;  // analyze: certificate exists but alpha(P) >= 1

// Resolves the problem file to a static team, reducing on the fly when the
// file carries a dynamic section.
teamreg::StaticTeam to_static(const teamreg::ProblemFile& pf) {
    if (pf.static_team) return *pf.static_team;
    return teamreg::reduce(*pf.dynamic, pf.regularizers);
}

void emit(const json& j, const std::string& output_path) {
    if (output_path.empty())
        std::cout << j.dump(2) << std::endl;
    else
        teamreg::write_json_file(output_path, j);
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = 0.0;
    bool tol_set = false;
    int max_iter = 0;
    bool max_iter_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input = true) {
    auto* in = cmd->add_option("--input,-i", opts.input, "problem file (JSON)");
    if (needs_input) in->required();
    cmd->add_option("--output,-o", opts.output, "output file (stdout when omitted)");
    cmd->add_option("--seed", opts.seed, "RNG seed")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--tol", opts.tol, "solver tolerance")->each([&opts](const std::string&) {
        opts.tol_set = true;
    });
    cmd->add_option("--max-iter", opts.max_iter, "solver iteration cap")
        ->each([&opts](const std::string&) { opts.max_iter_set = true; });
}

teamreg::SolveOptions solve_options(const teamreg::ProblemFile& pf, const CommonOpts& opts,
                                    bool keep_history) {
    teamreg::SolveOptions so;
    so.tol = opts.tol_set ? opts.tol : pf.settings.tol;
    so.max_iter = opts.max_iter_set ? opts.max_iter : pf.settings.max_iter;
    so.keep_history = keep_history;
    return so;
}

std::uint64_t effective_seed(const teamreg::ProblemFile& pf, const CommonOpts& opts) {
    return opts.seed_set ? opts.seed : pf.settings.seed;
}

int cmd_reduce(const CommonOpts& opts, int verify_profiles) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    if (!pf.is_dynamic()) {
        std::cerr << "reduce: input file has no dynamic section\n";
        return kExitBadInput;
    }
    const teamreg::StaticTeam team = teamreg::reduce(*pf.dynamic, pf.regularizers);

    if (verify_profiles > 0) {
        teamreg::rng::Engine eng(effective_seed(pf, opts));
        double worst = 0.0;
        for (int k = 0; k < verify_profiles; ++k) {
            const auto prof = teamreg::random_profile_for_dynamic(eng, *pf.dynamic);
            const double jd = teamreg::reward_J_dynamic(*pf.dynamic, prof);
            const double js = teamreg::reward_J(team, prof);
            worst = std::max(worst, std::abs(jd - js));
        }
        std::cerr << "reduce: max |J_dynamic - J_static| over " << verify_profiles
                  << " random profiles = " << teamreg::format_double(worst) << "\n";
        if (worst > teamreg::kEquivalenceTol) {
            std::cerr << "reduce: verification failed\n";
            return kExitFailure;
        }
    }

    emit(teamreg::static_problem_to_json(team, pf.settings), opts.output);
    return kExitOk;
}

int cmd_analyze(const CommonOpts& opts) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    const teamreg::StaticTeam team = to_static(pf);
    const teamreg::ContractionCertificate cert = teamreg::build_certificate(team);
    emit(teamreg::certificate_to_json(cert), opts.output);
    if (!cert.satisfied) {
        std::cerr << "analyze: alpha(P) = " << teamreg::format_double(cert.spectral_radius)
                  << " >= 1; fixed-point and convergence guarantees do not apply\n";
        return kExitUnsatisfied;
    }
    return kExitOk;
}

int cmd_solve_sync(const CommonOpts& opts, const std::string& trace_path,
                   const std::string& init_kind) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    const teamreg::StaticTeam team = to_static(pf);

    std::optional<teamreg::PolicyProfile> init;
    if (init_kind == "random") {
        teamreg::rng::Engine eng(effective_seed(pf, opts));
        init = teamreg::random_profile(eng, team);
    } else if (init_kind != "uniform") {
        std::cerr << "solve-sync: unknown --init '" << init_kind << "'\n";
        return kExitBadInput;
    }

    const teamreg::SolveReport report =
        teamreg::solve(team, solve_options(pf, opts, !trace_path.empty()), init);
    if (!report.certificate.satisfied)
        std::cerr << "solve-sync: warning: alpha(P) = "
                  << teamreg::format_double(report.certificate.spectral_radius)
                  << " >= 1, no convergence guarantee\n";
    if (!report.converged)
        std::cerr << "solve-sync: warning: iteration cap reached before tolerance\n";

    if (!trace_path.empty())
        teamreg::write_text_file(trace_path, teamreg::sync_trace_csv(report));
    emit(teamreg::solve_report_to_json(report), opts.output);
    return kExitOk;
}

int cmd_solve_async(const CommonOpts& opts, const std::string& schedule_path,
                    const std::string& schedule_kind, int horizon, int bound,
                    const std::string& init_kind, const std::string& report_path) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    const teamreg::StaticTeam team = to_static(pf);
    const std::uint64_t seed = effective_seed(pf, opts);

    teamreg::Schedule schedule;
    if (!schedule_path.empty()) {
        schedule = teamreg::load_schedule(schedule_path, team.num_agents, horizon);
    } else {
        schedule = teamreg::generate_schedule(teamreg::schedule_kind_from_name(schedule_kind),
                                              team.num_agents, horizon, bound, seed);
    }

    std::vector<teamreg::PolicyProfile> memories;
    if (init_kind == "random") {
        teamreg::rng::Engine eng(seed + 1);  // decoupled from schedule generation
        for (int m = 0; m < team.num_agents; ++m)
            memories.push_back(teamreg::random_profile(eng, team));
    } else if (init_kind == "uniform") {
        memories.assign(team.num_agents, teamreg::uniform_profile(team));
    } else {
        std::cerr << "solve-async: unknown --init-memories '" << init_kind << "'\n";
        return kExitBadInput;
    }

    const teamreg::SolveReport sync = teamreg::solve(team, solve_options(pf, opts, false));
    if (!sync.certificate.satisfied)
        std::cerr << "solve-async: warning: alpha(P) = "
                  << teamreg::format_double(sync.certificate.spectral_radius)
                  << " >= 1, no convergence guarantee\n";

    const teamreg::AsyncTrace trace =
        teamreg::run_async(team, schedule, memories, sync.fixed_point,
                           sync.certificate.satisfied
                               ? std::optional(sync.certificate.weight_vector)
                               : std::nullopt);

    if (!report_path.empty()) {
        json j = {{"horizon", trace.horizon},
                  {"validity", teamreg::validity_to_json(trace.validity)},
                  {"final_distance", trace.distance.empty() ? json() : json(trace.distance.back())},
                  {"certificate", teamreg::certificate_to_json(sync.certificate)}};
        teamreg::write_json_file(report_path, j);
    }
    const std::string csv = teamreg::async_trace_csv(schedule, trace);
    if (opts.output.empty())
        std::cout << csv;
    else
        teamreg::write_text_file(opts.output, csv);
    if (!trace.validity.valid)
        std::cerr << "solve-async: warning: schedule fails the liveness check\n";
    return kExitOk;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& profile_path, bool sandwich) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    const teamreg::StaticTeam team = to_static(pf);

    teamreg::PolicyProfile profile;
    if (!profile_path.empty()) {
        profile = teamreg::load_profile(profile_path);
    } else {
        profile = teamreg::solve(team, solve_options(pf, opts, false)).fixed_point;
    }

    json j = {{"J", teamreg::reward_J(team, profile)},
              {"J_reg", teamreg::reward_J_reg(team, profile)}};
    if (pf.is_dynamic()) j["J_dynamic"] = teamreg::reward_J_dynamic(*pf.dynamic, profile);
    if (sandwich) j["sandwich"] = teamreg::sandwich_to_json(teamreg::sandwich_check(team, profile));
    emit(j, opts.output);
    return kExitOk;
}

int cmd_brute_force(const CommonOpts& opts) {
    const teamreg::ProblemFile pf = teamreg::load_problem(opts.input);
    const teamreg::StaticTeam team = to_static(pf);
    const teamreg::BruteForceResult result = teamreg::brute_force_J_star(team);
    emit(teamreg::brute_force_to_json(team, result), opts.output);
    return kExitOk;
}

int cmd_schedule_gen(const CommonOpts& opts, const std::string& kind, int agents, int horizon,
                     int bound) {
    const teamreg::Schedule schedule = teamreg::generate_schedule(
        teamreg::schedule_kind_from_name(kind), agents, horizon, bound, opts.seed);
    emit(teamreg::schedule_to_json(schedule), opts.output);
    return kExitOk;
}

int cmd_schedule_validate(const CommonOpts& opts, const std::string& schedule_path, int agents) {
    const teamreg::Schedule schedule = teamreg::load_schedule(schedule_path, agents);
    const teamreg::ScheduleValidity validity = teamreg::validate_schedule(schedule);
    emit(teamreg::validity_to_json(validity), opts.output);
    return validity.valid ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and simulator for regularized finite team decision problems"};
    app.require_subcommand(1);

    CommonOpts reduce_opts;
    int verify_profiles = 0;
    auto* reduce = app.add_subcommand("reduce", "reduce a dynamic team to static form");
    add_common(reduce, reduce_opts);
    reduce->add_flag_callback("--verify", [&verify_profiles] { verify_profiles = 10; },
                              "check equivalence on 10 random profiles");

    CommonOpts analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "contraction certificate for a problem");
    add_common(analyze, analyze_opts);

    CommonOpts sync_opts;
    std::string sync_trace, sync_init = "uniform";
    auto* sync = app.add_subcommand("solve-sync", "synchronous fixed-point iteration");
    add_common(sync, sync_opts);
    sync->add_option("--trace", sync_trace, "per-iteration residual CSV path");
    sync->add_option("--init", sync_init, "initial profile: uniform|random");

    CommonOpts async_opts;
    std::string async_schedule, async_kind = "round-robin", async_init = "uniform", async_report;
    int async_horizon = 500, async_bound = 3;
    auto* async = app.add_subcommand("solve-async", "asynchronous distributed simulation");
    add_common(async, async_opts);
    async->add_option("--schedule", async_schedule, "schedule file (JSON)");
    async->add_option("--schedule-kind", async_kind,
                      "generator when no file: round-robin|random-bounded|gauss-seidel");
    async->add_option("--horizon", async_horizon, "event-time horizon");
    async->add_option("--bound", async_bound, "block length B for random-bounded");
    async->add_option("--init-memories", async_init, "initial memories: uniform|random");
    async->add_option("--report", async_report, "summary JSON path");

    CommonOpts eval_opts;
    std::string eval_profile;
    bool eval_sandwich = false;
    auto* evaluate = app.add_subcommand("evaluate", "evaluate J and J_reg of a profile");
    add_common(evaluate, eval_opts);
    evaluate->add_option("--profile", eval_profile,
                         "profile JSON (solves for the fixed point when omitted)");
    evaluate->add_flag("--sandwich", eval_sandwich, "include the J* bound report");

    CommonOpts bf_opts;
    auto* bf = app.add_subcommand("brute-force", "exhaustive deterministic optimum");
    add_common(bf, bf_opts);

    CommonOpts gen_opts;
    std::string gen_kind = "round-robin";
    int gen_agents = 0, gen_horizon = 0, gen_bound = 3;
    auto* gen = app.add_subcommand("schedule-gen", "generate an event schedule");
    add_common(gen, gen_opts, /*needs_input=*/false);
    gen->add_option("--kind", gen_kind, "round-robin|random-bounded|gauss-seidel");
    gen->add_option("--agents", gen_agents, "number of agents")->required();
    gen->add_option("--horizon", gen_horizon, "event-time horizon")->required();
    gen->add_option("--bound", gen_bound, "block length B for random-bounded");

    CommonOpts val_opts;
    std::string val_schedule;
    int val_agents = 0;
    auto* val = app.add_subcommand("schedule-validate", "liveness check for a schedule file");
    add_common(val, val_opts, /*needs_input=*/false);
    val->add_option("--schedule", val_schedule, "schedule file (JSON)")->required();
    val->add_option("--agents", val_agents, "number of agents")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (reduce->parsed()) return cmd_reduce(reduce_opts, verify_profiles);
        if (analyze->parsed()) return cmd_analyze(analyze_opts);
        if (sync->parsed()) return cmd_solve_sync(sync_opts, sync_trace, sync_init);
        if (async->parsed())
            return cmd_solve_async(async_opts, async_schedule, async_kind, async_horizon,
                                   async_bound, async_init, async_report);
        if (evaluate->parsed()) return cmd_evaluate(eval_opts, eval_profile, eval_sandwich);
        if (bf->parsed()) return cmd_brute_force(bf_opts);
        if (gen->parsed())
            return cmd_schedule_gen(gen_opts, gen_kind, gen_agents, gen_horizon, gen_bound);
        if (val->parsed()) return cmd_schedule_validate(val_opts, val_schedule, val_agents);
    } catch (const teamreg::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const teamreg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
