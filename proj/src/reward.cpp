#include "teamreg/reward.hpp"

#include <cmath>

#include "teamreg/errors.hpp"

namespace teamreg {

namespace {

void check_delta_shapes(const StaticTeam& team, const std::vector<std::vector<double>>& delta) {
    if (static_cast<int>(delta.size()) != team.num_agents)
        throw ShapeError("reward_R: expected one action distribution per agent");
    for (int i = 0; i < team.num_agents; ++i)
        if (static_cast<int>(delta[i].size()) != team.num_actions(i))
            throw ShapeError("reward_R: distribution of agent " + std::to_string(i + 1) +
                             " has wrong length");
}

// Contract the reward fiber r(y, .) against per-agent rows, last agent
// first so each pass reduces the contiguous axis.
double contract_fiber(const StaticTeam& team, const double* fiber, const double* const* rows) {
    const int n = team.num_agents;
    std::size_t len = team.act_space.total;
    std::vector<double> buf(fiber, fiber + len);
    std::vector<double> next;
    for (int i = n - 1; i >= 0; --i) {
        const int nu = team.act_space.dims[i];
        const std::size_t out_len = len / static_cast<std::size_t>(nu);
        next.assign(out_len, 0.0);
        for (std::size_t p = 0; p < out_len; ++p) {
            double acc = 0.0;
            const double* base = buf.data() + p * nu;
            for (int u = 0; u < nu; ++u) acc += base[u] * rows[i][u];
            next[p] = acc;
        }
        buf.swap(next);
        len = out_len;
    }
    return buf[0];
}

}  // namespace

double reward_R(const StaticTeam& team, const std::vector<int>& y,
                const std::vector<std::vector<double>>& delta) {
    if (static_cast<int>(y.size()) != team.num_agents)
        throw ShapeError("reward_R: joint observation has wrong length");
    for (int i = 0; i < team.num_agents; ++i)
        if (y[i] < 0 || y[i] >= team.num_obs(i))
            throw ShapeError("reward_R: observation index out of range for agent " +
                             std::to_string(i + 1));
    check_delta_shapes(team, delta);

    const std::size_t y_flat = team.obs_space.flatten(y);
    std::vector<const double*> rows(team.num_agents);
    for (int i = 0; i < team.num_agents; ++i) rows[i] = delta[i].data();
    return contract_fiber(team, team.reward_r.data() + y_flat * team.act_space.total, rows.data());
}

double reward_R_at(const StaticTeam& team, std::size_t y_flat, const PolicyProfile& profile) {
    std::vector<const double*> rows(team.num_agents);
    for (int i = 0; i < team.num_agents; ++i)
        rows[i] = profile.policies[i].row(team.obs_space.digit(y_flat, i));
    return contract_fiber(team, team.reward_r.data() + y_flat * team.act_space.total, rows.data());
}

double reward_J(const StaticTeam& team, const PolicyProfile& profile) {
    if (profile.num_agents() != team.num_agents)
        throw ShapeError("reward_J: profile has wrong number of agents");
    for (int i = 0; i < team.num_agents; ++i) {
        const Policy& p = profile.policies[i];
        if (p.num_obs != team.num_obs(i) || p.num_actions != team.num_actions(i))
            throw ShapeError("reward_J: policy of agent " + std::to_string(i + 1) +
                             " does not match the team shape");
    }

    const std::size_t ny = team.obs_space.total;
    std::vector<double> terms(ny);
#pragma omp parallel for schedule(static)
    for (long long yi = 0; yi < static_cast<long long>(ny); ++yi)
        terms[yi] = reward_R_at(team, static_cast<std::size_t>(yi), profile);

    double sum = 0.0;
    for (std::size_t yi = 0; yi < ny; ++yi) sum += terms[yi];
    return sum / static_cast<double>(ny);
}

double reward_J_dynamic(const DynamicTeamSpec& spec, const PolicyProfile& profile) {
    if (profile.num_agents() != spec.num_agents)
        throw ShapeError("reward_J_dynamic: profile has wrong number of agents");
    for (int i = 0; i < spec.num_agents; ++i) {
        const Policy& p = profile.policies[i];
        if (p.num_obs != spec.num_obs(i) || p.num_actions != spec.num_actions(i))
            throw ShapeError("reward_J_dynamic: policy of agent " + std::to_string(i + 1) +
                             " does not match the spec shape");
    }

    const int n = spec.num_agents;
    const std::size_t ny = spec.obs_space.total;
    const std::size_t nu = spec.act_space.total;
    const int nx = spec.num_states();

    // Per-y terms in parallel; serial accumulation in ascending y keeps the
    // result independent of the thread count. Within a term, x ascending
    // then u ascending.
    std::vector<double> terms(ny, 0.0);
#pragma omp parallel for schedule(static)
    for (long long yi = 0; yi < static_cast<long long>(ny); ++yi) {
        const std::size_t y_flat = static_cast<std::size_t>(yi);
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = spec.obs_space.digit(y_flat, i);
        double term = 0.0;
        for (int x = 0; x < nx; ++x) {
            double xterm = 0.0;
            for (std::size_t u_flat = 0; u_flat < nu; ++u_flat) {
                double w = 1.0;
                std::size_t u_prefix = 0;
                for (int i = 0; i < n; ++i) {
                    const int u_i = spec.act_space.digit(u_flat, i);
                    w *= spec.channel_at(i, x, u_prefix, y[i]) *
                         profile.policies[i].row(y[i])[u_i];
                    u_prefix = u_prefix * static_cast<std::size_t>(spec.act_space.dims[i]) +
                               static_cast<std::size_t>(u_i);
                }
                xterm += w * spec.p_at(x, y_flat, u_flat);
            }
            term += spec.prior[x] * xterm;
        }
        terms[yi] = term;
    }

    double sum = 0.0;
    for (std::size_t yi = 0; yi < ny; ++yi) sum += terms[yi];
    return sum;
}

namespace serial {

double reward_R(const StaticTeam& team, const std::vector<int>& y,
                const std::vector<std::vector<double>>& delta) {
    check_delta_shapes(team, delta);
    const std::size_t y_flat = team.obs_space.flatten(y);
    double sum = 0.0;
    for (std::size_t u_flat = 0; u_flat < team.act_space.total; ++u_flat) {
        double w = 1.0;
        for (int i = 0; i < team.num_agents; ++i) w *= delta[i][team.act_space.digit(u_flat, i)];
        sum += team.r_at(y_flat, u_flat) * w;
    }
    return sum;
}

double reward_J(const StaticTeam& team, const PolicyProfile& profile) {
    double sum = 0.0;
    for (std::size_t y_flat = 0; y_flat < team.obs_space.total; ++y_flat) {
        double term = 0.0;
        for (std::size_t u_flat = 0; u_flat < team.act_space.total; ++u_flat) {
            double w = 1.0;
            for (int i = 0; i < team.num_agents; ++i)
                w *= profile.policies[i].row(team.obs_space.digit(y_flat, i))
                        [team.act_space.digit(u_flat, i)];
            term += team.r_at(y_flat, u_flat) * w;
        }
        sum += term;
    }
    return sum / static_cast<double>(team.obs_space.total);
}

double reward_J_dynamic(const DynamicTeamSpec& spec, const PolicyProfile& profile) {
    const int n = spec.num_agents;
    double sum = 0.0;
    for (std::size_t y_flat = 0; y_flat < spec.obs_space.total; ++y_flat) {
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = spec.obs_space.digit(y_flat, i);
        double term = 0.0;
        for (int x = 0; x < spec.num_states(); ++x) {
            double xterm = 0.0;
            for (std::size_t u_flat = 0; u_flat < spec.act_space.total; ++u_flat) {
                double w = 1.0;
                std::size_t u_prefix = 0;
                for (int i = 0; i < n; ++i) {
                    const int u_i = spec.act_space.digit(u_flat, i);
                    w *= spec.channel_at(i, x, u_prefix, y[i]) *
                         profile.policies[i].row(y[i])[u_i];
                    u_prefix = u_prefix * static_cast<std::size_t>(spec.act_space.dims[i]) +
                               static_cast<std::size_t>(u_i);
                }
                xterm += w * spec.p_at(x, y_flat, u_flat);
            }
            term += spec.prior[x] * xterm;
        }
        sum += term;
    }
    return sum;
}

}  // namespace serial

}  // namespace teamreg
