#include "teamreg/best_response.hpp"

#include <string>

#include "teamreg/errors.hpp"
#include "teamreg/regularizers.hpp"

namespace teamreg {

namespace {

struct Tensor {
    std::vector<int> dims;
    std::vector<double> data;

    std::size_t total() const {
        std::size_t t = 1;
        for (int d : dims) t *= static_cast<std::size_t>(d);
        return t;
    }
};

// Sum out the axis pair (ay, au) of t against weights w[y*nu + u]. Output
// cells are independent, so the loop parallelizes without changing the
// fixed inner summation order.
Tensor contract_pair(const Tensor& t, int ay, int au, const double* w, int nwy, int nwu) {
    const int rank = static_cast<int>(t.dims.size());
    std::vector<std::size_t> in_strides(rank, 1);
    for (int a = rank - 2; a >= 0; --a)
        in_strides[a] = in_strides[a + 1] * static_cast<std::size_t>(t.dims[a + 1]);

    Tensor out;
    std::vector<std::size_t> kept_strides;
    for (int a = 0; a < rank; ++a) {
        if (a == ay || a == au) continue;
        out.dims.push_back(t.dims[a]);
        kept_strides.push_back(in_strides[a]);
    }
    const std::size_t out_total = out.total();
    out.data.assign(out_total, 0.0);

    const std::size_t sy = in_strides[ay];
    const std::size_t su = in_strides[au];
    const int k = static_cast<int>(out.dims.size());

#pragma omp parallel for schedule(static)
    for (long long oi = 0; oi < static_cast<long long>(out_total); ++oi) {
        std::size_t rem = static_cast<std::size_t>(oi);
        std::size_t base = 0;
        for (int a = k - 1; a >= 0; --a) {
            const std::size_t d = rem % static_cast<std::size_t>(out.dims[a]);
            rem /= static_cast<std::size_t>(out.dims[a]);
            base += d * kept_strides[a];
        }
        double acc = 0.0;
        for (int y = 0; y < nwy; ++y)
            for (int u = 0; u < nwu; ++u)
                acc += w[y * nwu + u] * t.data[base + static_cast<std::size_t>(y) * sy +
                                               static_cast<std::size_t>(u) * su];
        out.data[oi] = acc;
    }
    return out;
}

void check_profile(const StaticTeam& team, const PolicyProfile& profile, const char* where) {
    if (profile.num_agents() != team.num_agents)
        throw ShapeError(std::string(where) + ": profile has wrong number of agents");
    for (int i = 0; i < team.num_agents; ++i) {
        const Policy& p = profile.policies[i];
        if (p.num_obs != team.num_obs(i) || p.num_actions != team.num_actions(i))
            throw ShapeError(std::string(where) + ": policy of agent " + std::to_string(i + 1) +
                             " does not match the team shape");
    }
}

}  // namespace

std::vector<double> g_matrix(const StaticTeam& team, const PolicyProfile& profile, int j) {
    check_profile(team, profile, "g_matrix");
    if (j < 0 || j >= team.num_agents) throw ShapeError("g_matrix: agent index out of range");

    const int n = team.num_agents;

    // Axes of the working tensor: [y_1..y_N, u_1..u_N].
    Tensor t;
    t.dims.reserve(2 * n);
    for (int i = 0; i < n; ++i) t.dims.push_back(team.num_obs(i));
    for (int i = 0; i < n; ++i) t.dims.push_back(team.num_actions(i));
    t.data = team.reward_r;  // identical row-major layout

    // Current axis position of each agent's observation / action axis;
    // positions shift left as axes are removed.
    std::vector<int> ypos(n), upos(n);
    for (int i = 0; i < n; ++i) {
        ypos[i] = i;
        upos[i] = n + i;
    }

    for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        const int ny = team.num_obs(i);
        const int nu = team.num_actions(i);
        std::vector<double> w(static_cast<std::size_t>(ny) * nu);
        const double pi = 1.0 / ny;
        for (int y = 0; y < ny; ++y)
            for (int u = 0; u < nu; ++u) w[y * nu + u] = pi * profile.policies[i].row(y)[u];

        const int ay = ypos[i];
        const int au = upos[i];
        t = contract_pair(t, ay, au, w.data(), ny, nu);
        for (int m = 0; m < n; ++m) {
            if (ypos[m] > ay) --ypos[m];
            if (upos[m] > ay) --upos[m];
        }
        for (int m = 0; m < n; ++m) {
            if (ypos[m] > au - 1) --ypos[m];
            if (upos[m] > au - 1) --upos[m];
        }
    }
    // Remaining axes are [Y_j, U_j].
    return t.data;
}

std::vector<double> g_vector(const StaticTeam& team, const PolicyProfile& profile, int j,
                             int y_j) {
    if (j < 0 || j >= team.num_agents) throw ShapeError("g_vector: agent index out of range");
    if (y_j < 0 || y_j >= team.num_obs(j))
        throw ShapeError("g_vector: observation index out of range");
    const int nu = team.num_actions(j);
    std::vector<double> g = g_matrix(team, profile, j);
    return std::vector<double>(g.begin() + static_cast<std::size_t>(y_j) * nu,
                               g.begin() + static_cast<std::size_t>(y_j + 1) * nu);
}

Policy best_response_j(const StaticTeam& team, const PolicyProfile& profile, int j) {
    const std::vector<double> g = g_matrix(team, profile, j);
    const int ny = team.num_obs(j);
    const int nu = team.num_actions(j);

    Policy out;
    out.agent = j;
    out.num_obs = ny;
    out.num_actions = nu;
    out.table.resize(static_cast<std::size_t>(ny) * nu);
    for (int y = 0; y < ny; ++y) {
        std::vector<double> row(g.begin() + static_cast<std::size_t>(y) * nu,
                                g.begin() + static_cast<std::size_t>(y + 1) * nu);
        std::vector<double> delta = conjugate_gradient(team.regularizers[j], row);
        for (int u = 0; u < nu; ++u) out.row(y)[u] = delta[u];
    }
    return out;
}

PolicyProfile best_response_all(const StaticTeam& team, const PolicyProfile& profile) {
    check_profile(team, profile, "best_response_all");
    PolicyProfile next;
    next.policies.reserve(team.num_agents);
    for (int j = 0; j < team.num_agents; ++j)
        next.policies.push_back(best_response_j(team, profile, j));
    return next;
}

namespace serial {

std::vector<double> g_matrix(const StaticTeam& team, const PolicyProfile& profile, int j) {
    const int n = team.num_agents;
    const int nyj = team.num_obs(j);
    const int nuj = team.num_actions(j);
    std::vector<double> g(static_cast<std::size_t>(nyj) * nuj, 0.0);

    for (int yj = 0; yj < nyj; ++yj) {
        for (int uj = 0; uj < nuj; ++uj) {
            double acc = 0.0;
            for (std::size_t y_flat = 0; y_flat < team.obs_space.total; ++y_flat) {
                if (team.obs_space.digit(y_flat, j) != yj) continue;
                for (std::size_t u_flat = 0; u_flat < team.act_space.total; ++u_flat) {
                    if (team.act_space.digit(u_flat, j) != uj) continue;
                    double w = 1.0;
                    for (int i = 0; i < n; ++i) {
                        if (i == j) continue;
                        const int yi = team.obs_space.digit(y_flat, i);
                        const int ui = team.act_space.digit(u_flat, i);
                        w *= profile.policies[i].row(yi)[ui] / team.num_obs(i);
                    }
                    acc += team.r_at(y_flat, u_flat) * w;
                }
            }
            g[static_cast<std::size_t>(yj) * nuj + uj] = acc;
        }
    }
    return g;
}

}  // namespace serial

}  // namespace teamreg
