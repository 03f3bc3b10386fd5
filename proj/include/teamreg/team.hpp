#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "teamreg/indexing.hpp"
#include "teamreg/regularizers.hpp"
#include "teamreg/rng.hpp"

namespace teamreg {

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kEquivalenceTol = 1e-10;
inline constexpr std::size_t kDefaultTensorCap = 100'000'000;

// One agent's decision rule: a probability row over actions for each
// observation. Rows are stored row-major, table[y * num_actions + u].
struct Policy {
    int agent = 0;
    int num_obs = 0;
    int num_actions = 0;
    std::vector<double> table;

    const double* row(int y) const { return table.data() + static_cast<std::size_t>(y) * num_actions; }
    double* row(int y) { return table.data() + static_cast<std::size_t>(y) * num_actions; }

    static Policy uniform(int agent, int num_obs, int num_actions);

    void validate(double tol = kSimplexTol) const;
};

struct PolicyProfile {
    std::vector<Policy> policies;

    int num_agents() const { return static_cast<int>(policies.size()); }

    void validate(double tol = kSimplexTol) const;
};

// Reduced static team: reward tensor r(y_1..y_N, u_1..u_N), independent
// uniform observation marginals, per-agent regularizers.
//
// Layout: reward_r[y_flat * act_space.total + u_flat] where y_flat and
// u_flat are row-major over agents in ascending index order.
struct StaticTeam {
    int num_agents = 0;
    std::vector<std::vector<std::string>> obs_labels;
    std::vector<std::vector<std::string>> action_labels;
    std::vector<double> reward_r;
    std::vector<std::vector<double>> obs_marginals;  // validated uniform
    std::vector<RegularizerSpec> regularizers;

    IndexSpace obs_space;
    IndexSpace act_space;

    int num_obs(int agent) const { return obs_space.dims[agent]; }
    int num_actions(int agent) const { return act_space.dims[agent]; }
    double r_at(std::size_t y_flat, std::size_t u_flat) const {
        return reward_r[y_flat * act_space.total + u_flat];
    }

    // Builds index spaces from the label sets; call after filling fields.
    void finalize();

    void validate(double tol = kSimplexTol, std::size_t cap = kDefaultTensorCap) const;

    double min_reward() const;
    double max_reward() const;
};

// Finite dynamic team in intrinsic-model form: prior over states,
// sequential observation channels, raw reward table.
//
// Layouts:
//   channels[i][(x * prefix_total(i) + u_prefix) * |Y_i| + y]
//     where u_prefix is row-major over actions of agents 0..i-1
//   reward_p[(x * obs_space.total + y_flat) * act_space.total + u_flat]
struct DynamicTeamSpec {
    int num_agents = 0;
    std::vector<std::string> states;
    std::vector<double> prior;
    std::vector<std::vector<std::string>> obs_labels;
    std::vector<std::vector<std::string>> action_labels;
    std::vector<std::vector<double>> channels;
    std::vector<double> reward_p;

    IndexSpace obs_space;
    IndexSpace act_space;

    int num_states() const { return static_cast<int>(states.size()); }
    int num_obs(int agent) const { return obs_space.dims[agent]; }
    int num_actions(int agent) const { return act_space.dims[agent]; }

    // Number of joint action prefixes u_1..u_{i-1} feeding agent i's channel.
    std::size_t prefix_total(int agent) const;

    double channel_at(int agent, int x, std::size_t u_prefix, int y) const {
        return channels[agent][(static_cast<std::size_t>(x) * prefix_total(agent) + u_prefix) *
                                   static_cast<std::size_t>(obs_space.dims[agent]) +
                               static_cast<std::size_t>(y)];
    }
    double p_at(int x, std::size_t y_flat, std::size_t u_flat) const {
        return reward_p[(static_cast<std::size_t>(x) * obs_space.total + y_flat) * act_space.total +
                        u_flat];
    }

    void finalize();
    void validate(double tol = kSimplexTol, std::size_t cap = kDefaultTensorCap) const;
};

// L1 distance between two policies of the same shape under the uniform
// observation marginal: sum_y pi(y) * sum_u |p(u|y) - q(u|y)|.
double policy_l1_distance(const Policy& p, const Policy& q);

// Per-agent L1 distance vector between two profiles.
std::vector<double> profile_distance(const PolicyProfile& a, const PolicyProfile& b);

PolicyProfile uniform_profile(const StaticTeam& team);
PolicyProfile uniform_profile_for_dynamic(const DynamicTeamSpec& spec);

Policy random_policy(rng::Engine& eng, int agent, int num_obs, int num_actions);
PolicyProfile random_profile(rng::Engine& eng, const StaticTeam& team);
PolicyProfile random_profile_for_dynamic(rng::Engine& eng, const DynamicTeamSpec& spec);

}  // namespace teamreg
