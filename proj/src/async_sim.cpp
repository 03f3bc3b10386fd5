#include "teamreg/async_sim.hpp"

#include <algorithm>

#include "teamreg/best_response.hpp"
#include "teamreg/errors.hpp"
#include "teamreg/rng.hpp"

namespace teamreg {

void Schedule::validate_shape() const {
    if (num_agents < 1) throw ShapeError("schedule: num_agents must be >= 1");
    if (horizon < 0) throw ShapeError("schedule: negative horizon");
    if (static_cast<int>(events.size()) != horizon)
        throw ShapeError("schedule: event table has " + std::to_string(events.size()) +
                         " rows, expected horizon " + std::to_string(horizon));
    for (int t = 1; t <= horizon; ++t) {
        if (static_cast<int>(events[t - 1].size()) != num_agents)
            throw ShapeError("schedule: row for t=" + std::to_string(t) +
                             " has wrong number of agents");
        for (int i = 0; i < num_agents; ++i)
            for (int k : events[t - 1][i].targets)
                if (k < 0 || k >= num_agents || k == i)
                    throw ShapeError("schedule: agent " + std::to_string(i + 1) + " at t=" +
                                     std::to_string(t) + " has invalid transmit target " +
                                     std::to_string(k + 1));
    }
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
    if (name == "round-robin") return ScheduleKind::RoundRobin;
    if (name == "random-bounded") return ScheduleKind::RandomBounded;
    if (name == "gauss-seidel") return ScheduleKind::GaussSeidelSweep;
    throw ParseError("unknown schedule kind: '" + name +
                     "' (expected 'round-robin', 'random-bounded' or 'gauss-seidel')");
}

const char* schedule_kind_name(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::RoundRobin: return "round-robin";
        case ScheduleKind::RandomBounded: return "random-bounded";
        case ScheduleKind::GaussSeidelSweep: return "gauss-seidel";
    }
    return "unknown";
}

ScheduleValidity validate_schedule(const Schedule& schedule) {
    schedule.validate_shape();
    const int n = schedule.num_agents;
    const int T = schedule.horizon;

    ScheduleValidity report;
    report.first_violation.assign(n, 0);

    // next_event[j][e][t] = earliest time s > t with event e of agent j,
    // where e = 0 is a compute and e = k+1 a transmission to agent k.
    // T+1 means "never".
    int window = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<int>> next(n + 1, std::vector<int>(T + 1, T + 1));
        for (int t = T; t >= 1; --t) {
            const AgentEvent& ev = schedule.at(t, j);
            for (int e = 0; e <= n; ++e) next[e][t - 1] = next[e][t];
            if (ev.compute) next[0][t - 1] = t;
            for (int k : ev.targets) next[k + 1][t - 1] = t;
        }

        for (int t = 1; t < T; ++t) {
            int witness = next[0][t];
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                witness = std::max(witness, next[k + 1][t]);
            }
            if (witness > T) {
                report.first_violation[j] = t;
                break;  // windows only shrink from here on
            }
            window = std::max(window, witness - t);
        }
    }

    report.witness_window = window;
    report.tail_start = std::max(1, T - window + 1);
    report.valid = true;
    for (int j = 0; j < n; ++j)
        if (report.first_violation[j] != 0 && report.first_violation[j] < report.tail_start)
            report.valid = false;
    return report;
}

Schedule generate_schedule(ScheduleKind kind, int num_agents, int horizon, int bound,
                           std::uint64_t seed) {
    if (num_agents < 1) throw ShapeError("generate_schedule: num_agents must be >= 1");
    Schedule s;
    s.num_agents = num_agents;
    s.horizon = horizon;
    s.events.assign(horizon, std::vector<AgentEvent>(num_agents));

    auto broadcast_targets = [num_agents](int self) {
        std::vector<int> t;
        for (int k = 0; k < num_agents; ++k)
            if (k != self) t.push_back(k);
        return t;
    };

    switch (kind) {
        case ScheduleKind::RoundRobin: {
            if (horizon < num_agents)
                throw SizeError("generate_schedule: round-robin needs horizon >= num_agents");
            for (int t = 1; t <= horizon; ++t) {
                const int a = (t - 1) % num_agents;
                s.events[t - 1][a].compute = true;
                s.events[t - 1][a].targets = broadcast_targets(a);
            }
            break;
        }
        case ScheduleKind::GaussSeidelSweep: {
            // Two ticks per agent: compute, then broadcast the fresh policy,
            // in ascending agent order. Emulates sequential sweeps exactly.
            if (horizon < 2 * num_agents)
                throw SizeError("generate_schedule: gauss-seidel needs horizon >= 2*num_agents");
            for (int t = 1; t <= horizon; ++t) {
                const int step = (t - 1) / 2;
                const int a = step % num_agents;
                if (t % 2 == 1) {
                    s.events[t - 1][a].compute = true;
                } else {
                    s.events[t - 1][a].targets = broadcast_targets(a);
                }
            }
            break;
        }
        case ScheduleKind::RandomBounded: {
            if (bound < 1) throw SizeError("generate_schedule: bound must be >= 1");
            if (horizon < bound)
                throw SizeError("generate_schedule: random-bounded needs horizon >= bound");
            rng::Engine eng(seed);
            // Every agent computes and broadcasts at a random time inside
            // every full length-`bound` block; consecutive forced events are
            // then at most 2*bound - 1 apart.
            for (int start = 1; start + bound - 1 <= horizon; start += bound) {
                for (int a = 0; a < num_agents; ++a) {
                    const int t = start + rng::uniform_int(eng, bound);
                    s.events[t - 1][a].compute = true;
                    s.events[t - 1][a].targets = broadcast_targets(a);
                }
            }
            // Sprinkle extra lone computations and single transmissions.
            for (int t = 1; t <= horizon; ++t) {
                for (int a = 0; a < num_agents; ++a) {
                    AgentEvent& ev = s.events[t - 1][a];
                    if (!ev.compute && rng::uniform01(eng) < 0.15) ev.compute = true;
                    if (num_agents > 1 && ev.targets.empty() && rng::uniform01(eng) < 0.10) {
                        int k = rng::uniform_int(eng, num_agents - 1);
                        if (k >= a) ++k;
                        ev.targets.push_back(k);
                    }
                }
            }
            break;
        }
    }
    return s;
}

namespace {

void check_memories(const StaticTeam& team, const std::vector<PolicyProfile>& memories) {
    if (static_cast<int>(memories.size()) != team.num_agents)
        throw ShapeError("run_async: expected one initial memory per agent");
    for (const auto& mem : memories) {
        if (mem.num_agents() != team.num_agents)
            throw ShapeError("run_async: memory profile has wrong number of agents");
        for (int i = 0; i < team.num_agents; ++i)
            if (mem.policies[i].num_obs != team.num_obs(i) ||
                mem.policies[i].num_actions != team.num_actions(i))
                throw ShapeError("run_async: memory entry for agent " + std::to_string(i + 1) +
                                 " does not match the team shape");
    }
}

PolicyProfile diagonal_of(const std::vector<PolicyProfile>& memories) {
    PolicyProfile diag;
    for (std::size_t j = 0; j < memories.size(); ++j) {
        diag.policies.push_back(memories[j].policies[j]);
        diag.policies.back().agent = static_cast<int>(j);
    }
    return diag;
}

std::vector<double> memory_weighted_of(const std::vector<PolicyProfile>& memories,
                                       const PolicyProfile& star,
                                       const std::vector<double>& v) {
    std::vector<double> out(memories.size(), 0.0);
    for (std::size_t m = 0; m < memories.size(); ++m) {
        double worst = 0.0;
        for (std::size_t j = 0; j < memories[m].policies.size(); ++j)
            worst = std::max(worst,
                             policy_l1_distance(memories[m].policies[j], star.policies[j]) / v[j]);
        out[m] = worst;
    }
    return out;
}

}  // namespace

AsyncTrace run_async(const StaticTeam& team, const Schedule& schedule,
                     const std::vector<PolicyProfile>& init_memories,
                     const std::optional<PolicyProfile>& gamma_star,
                     const std::optional<std::vector<double>>& weight_vector) {
    schedule.validate_shape();
    if (schedule.num_agents != team.num_agents)
        throw ShapeError("run_async: schedule agent count does not match the team");
    check_memories(team, init_memories);

    const int n = team.num_agents;
    const int T = schedule.horizon;

    AsyncTrace trace;
    trace.horizon = T;
    trace.validity = validate_schedule(schedule);
    trace.diagonal.reserve(T);

    std::vector<PolicyProfile> mem = init_memories;
    trace.initial_diagonal = diagonal_of(mem);
    if (gamma_star) {
        trace.initial_distance = profile_distance(trace.initial_diagonal, *gamma_star);
        if (weight_vector)
            trace.initial_memory_weighted = memory_weighted_of(mem, *gamma_star, *weight_vector);
    }

    for (int t = 1; t <= T; ++t) {
        std::vector<PolicyProfile> next = mem;
        // Computations: agent i replaces its own entry using its t-1 memory.
        for (int i = 0; i < n; ++i) {
            if (!schedule.at(t, i).compute) continue;
            Policy updated = best_response_j(team, mem[i], i);
            next[i].policies[i] = std::move(updated);
        }
        // Transmissions: deliver the sender's t-1 own policy.
        for (int i = 0; i < n; ++i)
            for (int k : schedule.at(t, i).targets) next[k].policies[i] = mem[i].policies[i];
        mem = std::move(next);

        trace.diagonal.push_back(diagonal_of(mem));
        if (gamma_star) {
            trace.distance.push_back(profile_distance(trace.diagonal.back(), *gamma_star));
            if (weight_vector)
                trace.memory_weighted.push_back(
                    memory_weighted_of(mem, *gamma_star, *weight_vector));
        }
    }

    trace.final_memories = std::move(mem);
    return trace;
}

}  // namespace teamreg
