#pragma once

#include <cstddef>
#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

// R(y, delta) = sum_u r(y,u) * prod_i delta_i(u_i): the multilinear
// contraction of the reward fiber at y against one action distribution per
// agent. Contracts one agent at a time, last agent first (the contiguous
// axis), in a fixed order.
double reward_R(const StaticTeam& team, const std::vector<int>& y,
                const std::vector<std::vector<double>>& delta);

// Same contraction at a flat joint-observation index, reading agent rows
// from a profile. Used by the J kernels.
double reward_R_at(const StaticTeam& team, std::size_t y_flat, const PolicyProfile& profile);

// J(gamma) = sum_y R(y, gamma(y)) * prod_i pi_i(y_i). Per-observation terms
// are computed independently (parallel) and accumulated serially in
// ascending flat order, so the result does not depend on the thread count.
double reward_J(const StaticTeam& team, const PolicyProfile& profile);

// Exact expected reward E[p(X,Y,U)] of the dynamic model under a profile,
// by full summation over states, observations and actions with channel
// weights. Used to validate the static reduction.
double reward_J_dynamic(const DynamicTeamSpec& spec, const PolicyProfile& profile);

namespace serial {

// Naive single-loop references. Same math, no tensor factorization, no
// threading; kept as oracles for the parallel kernels and as benchmark
// baselines.
double reward_R(const StaticTeam& team, const std::vector<int>& y,
                const std::vector<std::vector<double>>& delta);
double reward_J(const StaticTeam& team, const PolicyProfile& profile);
double reward_J_dynamic(const DynamicTeamSpec& spec, const PolicyProfile& profile);

}  // namespace serial

}  // namespace teamreg
