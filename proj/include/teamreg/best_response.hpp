#pragma once

#include <cstddef>
#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

// Conditional score of agent j's actions against the other agents:
//   G_j(gamma^{-j}, y_j, u_j)
//     = sum over y^{-j}, u^{-j} of r(y,u) * prod_{i != j} gamma_i(u_i|y_i) pi_i(y_i)
//
// Computed by contracting the reward tensor against one agent at a time in
// ascending agent order (cost O(|Y||U|) overall instead of per entry).
// Returns the full |Y_j| x |U_j| matrix, row-major.
std::vector<double> g_matrix(const StaticTeam& team, const PolicyProfile& profile, int j);

// One row of g_matrix for a fixed observation of agent j.
std::vector<double> g_vector(const StaticTeam& team, const PolicyProfile& profile, int j, int y_j);

// Regularized best response of agent j against the profile (agent j's own
// entry is ignored): row y_j is the conjugate-gradient map applied to
// G_j(., y_j, .). Rows are strictly positive and unique by strong convexity.
Policy best_response_j(const StaticTeam& team, const PolicyProfile& profile, int j);

// Jacobi-style joint operator: every agent best-responds to the same input
// profile simultaneously.
PolicyProfile best_response_all(const StaticTeam& team, const PolicyProfile& profile);

namespace serial {

// Naive per-entry enumeration over the full joint spaces; the independent
// oracle for the contraction kernel and the benchmark baseline.
std::vector<double> g_matrix(const StaticTeam& team, const PolicyProfile& profile, int j);

}  // namespace serial

}  // namespace teamreg
