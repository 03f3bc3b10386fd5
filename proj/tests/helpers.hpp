#pragma once

// Shared instance builders and independent oracles for the test suites.
// Oracles here stay on naive evaluation paths (plain loops, grids, series)
// so they do not share code with the kernels they check.

#include <cmath>
#include <string>
#include <vector>

#include "teamreg/contraction.hpp"
#include "teamreg/regularizers.hpp"
#include "teamreg/rng.hpp"
#include "teamreg/team.hpp"

namespace testutil {

using namespace teamreg;

inline std::vector<std::string> labels(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

// Uniform-shape static team with an externally supplied reward tensor.
inline StaticTeam make_team(int num_agents, int ny, int nu, std::vector<double> reward,
                            double tau, RegularizerKind kind = RegularizerKind::NegEntropy) {
    StaticTeam team;
    team.num_agents = num_agents;
    for (int i = 0; i < num_agents; ++i) {
        team.obs_labels.push_back(labels("y", ny));
        team.action_labels.push_back(labels("u", nu));
        team.obs_marginals.push_back(std::vector<double>(ny, 1.0 / ny));
        team.regularizers.push_back({kind, tau, nu});
    }
    team.finalize();
    team.reward_r = std::move(reward);
    team.validate();
    return team;
}

// Random rewards in [0,1]. With tau <= 0 the temperature is set from the
// actual oscillations so that every row sum of P is at most 0.9, which
// forces alpha(P) < 1.
inline StaticTeam random_team(rng::Engine& eng, int num_agents, int ny, int nu,
                              double tau = -1.0) {
    std::vector<double> r;
    {
        std::size_t cells = 1;
        for (int i = 0; i < 2 * num_agents; ++i) cells *= static_cast<std::size_t>(i < num_agents ? ny : nu);
        r.resize(cells);
        for (double& v : r) v = rng::uniform01(eng);
    }
    StaticTeam team = make_team(num_agents, ny, nu, std::move(r), 1.0);
    if (tau <= 0.0) {
        double lam_sum = 0.0;
        for (int j = 0; j < num_agents; ++j) lam_sum += local_oscillation(team, j);
        tau = num_agents > 1 ? lam_sum / (2.0 * 0.9) : 1.0;
    }
    for (auto& reg : team.regularizers) reg.temperature = tau;
    return team;
}

// 2-agent matching reward 1{u1 == u2} over binary spaces.
inline StaticTeam matching_team(double tau) {
    return make_team(2, 2, 2,
                     {1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1}, tau);
}

inline DynamicTeamSpec random_dynamic_spec(rng::Engine& eng, int num_agents, int nx, int ny,
                                           int nu) {
    DynamicTeamSpec spec;
    spec.num_agents = num_agents;
    spec.states = labels("x", nx);
    spec.prior = rng::simplex_point(eng, nx);
    for (int i = 0; i < num_agents; ++i) {
        spec.obs_labels.push_back(labels("y", ny));
        spec.action_labels.push_back(labels("u", nu));
    }
    spec.finalize();
    for (int i = 0; i < num_agents; ++i) {
        const std::size_t rows = static_cast<std::size_t>(nx) * spec.prefix_total(i);
        std::vector<double> ch;
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = rng::simplex_point(eng, ny);
            ch.insert(ch.end(), row.begin(), row.end());
        }
        spec.channels.push_back(std::move(ch));
    }
    spec.reward_p.resize(static_cast<std::size_t>(nx) * spec.obs_space.total *
                         spec.act_space.total);
    for (double& v : spec.reward_p) v = rng::uniform01(eng);
    spec.validate();
    return spec;
}

inline double l1(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Grid maximizer of <g, delta> - Omega(delta) over the simplex for 2 or 3
// actions: coarse pass at `step`, then two local refinements, each ten
// times finer.
inline std::vector<double> grid_maximizer(const RegularizerSpec& reg,
                                          const std::vector<double>& g, double step = 1e-3) {
    const int n = reg.action_count;
    auto objective = [&](const std::vector<double>& d) {
        double val = 0.0;
        for (int i = 0; i < n; ++i) val += g[i] * d[i];
        return val - omega_value(reg, d);
    };

    std::vector<double> center(n, 1.0 / n);
    double radius = 1.0;
    std::vector<double> best = center;
    for (int level = 0; level < 3; ++level) {
        const double h = step;
        double best_val = -1e300;
        if (n == 2) {
            const double lo = std::max(0.0, center[0] - radius);
            const double hi = std::min(1.0, center[0] + radius);
            for (double a = lo; a <= hi + 1e-15; a += h) {
                const double ac = std::min(1.0, std::max(0.0, a));
                const std::vector<double> d{ac, 1.0 - ac};
                const double v = objective(d);
                if (v > best_val) {
                    best_val = v;
                    best = d;
                }
            }
        } else if (n == 3) {
            const double lo0 = std::max(0.0, center[0] - radius);
            const double hi0 = std::min(1.0, center[0] + radius);
            for (double a = lo0; a <= hi0 + 1e-15; a += h) {
                const double lo1 = std::max(0.0, center[1] - radius);
                const double hi1 = std::min(1.0 - a, center[1] + radius);
                for (double b = lo1; b <= hi1 + 1e-15; b += h) {
                    const double ac = std::min(1.0, std::max(0.0, a));
                    const double bc = std::min(1.0 - ac, std::max(0.0, b));
                    const std::vector<double> d{ac, bc, 1.0 - ac - bc};
                    const double v = objective(d);
                    if (v > best_val) {
                        best_val = v;
                        best = d;
                    }
                }
            }
        }
        center = best;
        radius = 2.0 * h;
        step = h / 10.0;
    }
    return best;
}

// Truncated Neumann series sum_{k<=terms} P^k d.
inline std::vector<double> neumann_apply(const Matrix& p, const std::vector<double>& d,
                                         int terms) {
    std::vector<double> acc = d;
    std::vector<double> power = d;
    for (int k = 1; k <= terms; ++k) {
        power = p.apply(power);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += power[i];
    }
    return acc;
}

}  // namespace testutil
