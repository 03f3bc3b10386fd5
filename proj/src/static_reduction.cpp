#include "teamreg/static_reduction.hpp"

#include "teamreg/errors.hpp"

namespace teamreg {

namespace {

StaticTeam make_shell(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                      std::size_t cap) {
    if (static_cast<int>(regs.size()) != spec.num_agents)
        throw ShapeError("reduce: expected one regularizer per agent");
    StaticTeam team;
    team.num_agents = spec.num_agents;
    team.obs_labels = spec.obs_labels;
    team.action_labels = spec.action_labels;
    team.regularizers = regs;
    team.finalize();
    const std::size_t cells = team.obs_space.total * team.act_space.total;
    if (cells > cap)
        throw SizeError("reduce: reduced reward tensor would hold " + std::to_string(cells) +
                        " entries, above the cap of " + std::to_string(cap));
    team.reward_r.assign(cells, 0.0);
    team.obs_marginals.resize(spec.num_agents);
    for (int i = 0; i < spec.num_agents; ++i)
        team.obs_marginals[i].assign(spec.num_obs(i), 1.0 / spec.num_obs(i));
    return team;
}

double reduce_cell(const DynamicTeamSpec& spec, const std::vector<int>& y, std::size_t y_flat,
                   std::size_t u_flat, double y_count) {
    const int n = spec.num_agents;
    double cell = 0.0;
    for (int x = 0; x < spec.num_states(); ++x) {
        double w = y_count;  // prod_i |Y_i|
        std::size_t u_prefix = 0;
        for (int i = 0; i < n; ++i) {
            w *= spec.channel_at(i, x, u_prefix, y[i]);
            u_prefix = u_prefix * static_cast<std::size_t>(spec.act_space.dims[i]) +
                       static_cast<std::size_t>(spec.act_space.digit(u_flat, i));
        }
        cell += spec.p_at(x, y_flat, u_flat) * spec.prior[x] * w;
    }
    return cell;
}

}  // namespace

StaticTeam reduce(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                  std::size_t cap) {
    StaticTeam team = make_shell(spec, regs, cap);
    const std::size_t ny = team.obs_space.total;
    const std::size_t nu = team.act_space.total;
    const double y_count = static_cast<double>(ny);
    const int n = spec.num_agents;

#pragma omp parallel for schedule(static)
    for (long long yi = 0; yi < static_cast<long long>(ny); ++yi) {
        const std::size_t y_flat = static_cast<std::size_t>(yi);
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = spec.obs_space.digit(y_flat, i);
        for (std::size_t u_flat = 0; u_flat < nu; ++u_flat)
            team.reward_r[y_flat * nu + u_flat] = reduce_cell(spec, y, y_flat, u_flat, y_count);
    }
    return team;
}

namespace serial {

StaticTeam reduce(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                  std::size_t cap) {
    StaticTeam team = make_shell(spec, regs, cap);
    const std::size_t ny = team.obs_space.total;
    const std::size_t nu = team.act_space.total;
    const double y_count = static_cast<double>(ny);
    const int n = spec.num_agents;

    for (std::size_t y_flat = 0; y_flat < ny; ++y_flat) {
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = spec.obs_space.digit(y_flat, i);
        for (std::size_t u_flat = 0; u_flat < nu; ++u_flat)
            team.reward_r[y_flat * nu + u_flat] = reduce_cell(spec, y, y_flat, u_flat, y_count);
    }
    return team;
}

}  // namespace serial

}  // namespace teamreg
