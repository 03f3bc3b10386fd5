#pragma once

#include <cstddef>
#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

inline constexpr std::size_t kDefaultBruteForceCap = 10'000'000;

// Regularized reward J_reg(gamma) = J(gamma) - sum_j sum_{y_j} pi_j(y_j)
// Omega_j(gamma_j(.|y_j)). The regularization term separates across agents
// and observations.
double reward_J_reg(const StaticTeam& team, const PolicyProfile& profile);

struct BruteForceResult {
    double j_star = 0.0;
    PolicyProfile maximizer;          // point-mass rows
    std::size_t profiles_searched = 0;
};

// Exhaustive maximum of J over deterministic profiles. J is multilinear in
// each policy row, so the supremum over the product of simplices is
// attained at a vertex; ties resolve to the lexicographically smallest
// profile (agent-major, observation-major action digits).
BruteForceResult brute_force_J_star(const StaticTeam& team,
                                    std::size_t cap = kDefaultBruteForceCap);

struct SandwichReport {
    double j_star = 0.0;
    double j_of_gamma_star = 0.0;   // unregularized J of the regularized fixed point
    double sum_beta = 0.0;
    double lower_bound = 0.0;       // j_star - sum_beta
    bool satisfied = false;         // lower - tol <= J(gamma*) <= J* + tol
    double tolerance = 1e-9;
};

// Checks J* - sum_j beta_j <= J(gamma_star) <= J*.
SandwichReport sandwich_check(const StaticTeam& team, const PolicyProfile& gamma_star,
                              std::size_t cap = kDefaultBruteForceCap);

namespace serial {

BruteForceResult brute_force_J_star(const StaticTeam& team,
                                    std::size_t cap = kDefaultBruteForceCap);

}  // namespace serial

}  // namespace teamreg
