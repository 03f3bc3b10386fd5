#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

// One agent's entry at one event time: compute or idle, plus transmit
// targets (an agent may transmit while computing or idling).
struct AgentEvent {
    bool compute = false;
    std::vector<int> targets;  // receiving agents, self excluded
};

// Integer-time event table, times 1..horizon. events[t-1][agent].
struct Schedule {
    int num_agents = 0;
    int horizon = 0;
    std::vector<std::vector<AgentEvent>> events;

    const AgentEvent& at(int t, int agent) const { return events[t - 1][agent]; }

    void validate_shape() const;
};

enum class ScheduleKind { RoundRobin, RandomBounded, GaussSeidelSweep };

ScheduleKind schedule_kind_from_name(const std::string& name);
const char* schedule_kind_name(ScheduleKind kind);

// Finite surrogate of the liveness condition: for agent j and time t the
// window (t, t'] must contain a compute by j and a transmission from j to
// every other agent. Windows shrink toward the horizon, so violations form
// a suffix per agent; a schedule is valid when every agent's violations
// start inside the final incomplete window (horizon - witness_window,
// horizon].
struct ScheduleValidity {
    bool valid = false;
    int witness_window = 0;            // max over satisfied (j,t) of minimal t' - t
    std::vector<int> first_violation;  // per agent; 0 = none, else earliest failing t
    int tail_start = 0;                // first t of the tolerated incomplete tail
};

ScheduleValidity validate_schedule(const Schedule& schedule);

Schedule generate_schedule(ScheduleKind kind, int num_agents, int horizon, int bound = 3,
                           std::uint64_t seed = 0);

// Simulation record. Row t-1 of each per-time vector describes the state
// after step t; the t=0 state is kept in the initial_* fields, so the
// per-time vectors have exactly `horizon` rows.
struct AsyncTrace {
    int horizon = 0;
    PolicyProfile initial_diagonal;
    std::vector<double> initial_distance;
    std::vector<double> initial_memory_weighted;
    std::vector<PolicyProfile> diagonal;               // [t-1], gamma^(t) with row j from memory j
    std::vector<std::vector<double>> distance;         // [t-1][agent], vs gamma_star if given
    std::vector<std::vector<double>> memory_weighted;  // [t-1][owner], max_j ||.||_{L1}/v_j
    std::vector<PolicyProfile> final_memories;
    ScheduleValidity validity;
};

// Event-driven replay of the memory-update rules with simultaneous
// within-step semantics: every read at time t sees the t-1 state, so a
// transmission at t delivers the sender's t-1 policy even if the sender
// also computes at t.
AsyncTrace run_async(const StaticTeam& team, const Schedule& schedule,
                     const std::vector<PolicyProfile>& init_memories,
                     const std::optional<PolicyProfile>& gamma_star = std::nullopt,
                     const std::optional<std::vector<double>>& weight_vector = std::nullopt);

}  // namespace teamreg
