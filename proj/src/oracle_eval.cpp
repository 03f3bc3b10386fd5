#include "teamreg/oracle_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teamreg/errors.hpp"
#include "teamreg/regularizers.hpp"
#include "teamreg/reward.hpp"

namespace teamreg {

double reward_J_reg(const StaticTeam& team, const PolicyProfile& profile) {
    double j = reward_J(team, profile);
    for (int a = 0; a < team.num_agents; ++a) {
        const Policy& p = profile.policies[a];
        const double pi = 1.0 / p.num_obs;
        for (int y = 0; y < p.num_obs; ++y) {
            std::vector<double> row(p.row(y), p.row(y) + p.num_actions);
            j -= pi * omega_value(team.regularizers[a], row);
        }
    }
    return j;
}

namespace {

// Pure policies of one agent are numbered with observation 0 as the most
// significant base-|U| digit; profiles are numbered agent-major. The
// lexicographically smallest maximizer is therefore the smallest flat
// profile index.
struct PureSpace {
    std::vector<std::size_t> policy_counts;  // |U_j|^{|Y_j|} per agent
    std::size_t total = 1;
};

PureSpace pure_space(const StaticTeam& team, std::size_t cap) {
    PureSpace ps;
    ps.policy_counts.resize(team.num_agents);
    for (int j = 0; j < team.num_agents; ++j) {
        std::size_t m = 1;
        for (int y = 0; y < team.num_obs(j); ++y) {
            m *= static_cast<std::size_t>(team.num_actions(j));
            if (m > cap)
                throw SizeError("brute_force_J_star: deterministic profile count exceeds cap of " +
                                std::to_string(cap));
        }
        ps.policy_counts[j] = m;
        if (ps.total > cap / m)
            throw SizeError("brute_force_J_star: deterministic profile count exceeds cap of " +
                            std::to_string(cap));
        ps.total *= m;
    }
    return ps;
}

void decode_profile(const StaticTeam& team, const PureSpace& ps, std::size_t index,
                    std::vector<int>& actions /* concatenated per agent, obs-major */) {
    const int n = team.num_agents;
    std::size_t rest = index;
    std::size_t offset = actions.size();
    // Walk agents from last to first to peel the least significant part.
    for (int j = n - 1; j >= 0; --j) {
        std::size_t pj = rest % ps.policy_counts[j];
        rest /= ps.policy_counts[j];
        const int ny = team.num_obs(j);
        const int nu = team.num_actions(j);
        offset -= static_cast<std::size_t>(ny);
        for (int y = ny - 1; y >= 0; --y) {
            actions[offset + y] = static_cast<int>(pj % static_cast<std::size_t>(nu));
            pj /= static_cast<std::size_t>(nu);
        }
    }
}

double eval_deterministic(const StaticTeam& team, const std::vector<int>& actions,
                          const std::vector<int>& agent_offsets,
                          const std::vector<int>& y_digits) {
    const int n = team.num_agents;
    const std::size_t ny = team.obs_space.total;
    double sum = 0.0;
    for (std::size_t y_flat = 0; y_flat < ny; ++y_flat) {
        std::size_t u_flat = 0;
        const int* yd = y_digits.data() + y_flat * static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j)
            u_flat += static_cast<std::size_t>(actions[agent_offsets[j] + yd[j]]) *
                      team.act_space.strides[j];
        sum += team.r_at(y_flat, u_flat);
    }
    return sum / static_cast<double>(ny);
}

BruteForceResult search(const StaticTeam& team, std::size_t cap, bool parallel) {
    const PureSpace ps = pure_space(team, cap);
    const int n = team.num_agents;

    std::vector<int> agent_offsets(n);
    int total_rows = 0;
    for (int j = 0; j < n; ++j) {
        agent_offsets[j] = total_rows;
        total_rows += team.num_obs(j);
    }

    const std::size_t ny = team.obs_space.total;
    std::vector<int> y_digits(ny * static_cast<std::size_t>(n));
    for (std::size_t y_flat = 0; y_flat < ny; ++y_flat)
        for (int j = 0; j < n; ++j)
            y_digits[y_flat * static_cast<std::size_t>(n) + j] =
                team.obs_space.digit(y_flat, j);

    // Fixed-size blocks scanned ascending; the merge prefers earlier blocks
    // on ties, so the winner does not depend on the thread count.
    const std::size_t block = 4096;
    const std::size_t num_blocks = (ps.total + block - 1) / block;
    std::vector<double> best_val(num_blocks);
    std::vector<std::size_t> best_idx(num_blocks);

#pragma omp parallel for schedule(static) if (parallel)
    for (long long b = 0; b < static_cast<long long>(num_blocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * block;
        const std::size_t hi = std::min(lo + block, ps.total);
        std::vector<int> actions(total_rows);
        double bv = -std::numeric_limits<double>::infinity();
        std::size_t bi = lo;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            decode_profile(team, ps, idx, actions);
            const double v = eval_deterministic(team, actions, agent_offsets, y_digits);
            if (v > bv) {
                bv = v;
                bi = idx;
            }
        }
        best_val[b] = bv;
        best_idx[b] = bi;
    }

    double j_star = best_val[0];
    std::size_t winner = best_idx[0];
    for (std::size_t b = 1; b < num_blocks; ++b) {
        if (best_val[b] > j_star) {
            j_star = best_val[b];
            winner = best_idx[b];
        }
    }

    BruteForceResult result;
    result.j_star = j_star;
    result.profiles_searched = ps.total;
    std::vector<int> actions(total_rows);
    decode_profile(team, ps, winner, actions);
    for (int j = 0; j < n; ++j) {
        Policy p;
        p.agent = j;
        p.num_obs = team.num_obs(j);
        p.num_actions = team.num_actions(j);
        p.table.assign(static_cast<std::size_t>(p.num_obs) * p.num_actions, 0.0);
        for (int y = 0; y < p.num_obs; ++y) p.row(y)[actions[agent_offsets[j] + y]] = 1.0;
        result.maximizer.policies.push_back(std::move(p));
    }
    return result;
}

}  // namespace

BruteForceResult brute_force_J_star(const StaticTeam& team, std::size_t cap) {
    return search(team, cap, true);
}

SandwichReport sandwich_check(const StaticTeam& team, const PolicyProfile& gamma_star,
                              std::size_t cap) {
    SandwichReport report;
    report.j_star = brute_force_J_star(team, cap).j_star;
    report.j_of_gamma_star = reward_J(team, gamma_star);
    report.sum_beta = 0.0;
    for (const auto& reg : team.regularizers) report.sum_beta += beta(reg);
    report.lower_bound = report.j_star - report.sum_beta;
    report.satisfied = report.j_of_gamma_star >= report.lower_bound - report.tolerance &&
                       report.j_of_gamma_star <= report.j_star + report.tolerance;
    return report;
}

namespace serial {

BruteForceResult brute_force_J_star(const StaticTeam& team, std::size_t cap) {
    return search(team, cap, false);
}

}  // namespace serial

}  // namespace teamreg
