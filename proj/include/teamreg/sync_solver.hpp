#pragma once

#include <optional>
#include <vector>

#include "teamreg/contraction.hpp"
#include "teamreg/team.hpp"

namespace teamreg {

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    bool keep_history = false;
};

struct SolveReport {
    PolicyProfile fixed_point;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual;          // ||gamma^k_j - gamma^{k-1}_j||_{L1}
    double weighted_residual_max = 0.0;    // max_j residual_j / v_j
    std::vector<double> first_step;        // ||gamma^1 - gamma^0||
    std::vector<std::vector<double>> history;  // per-iteration residual vectors
    std::vector<double> aposteriori_bound;     // (I-P)^{-1} P residual, when satisfied
    ContractionCertificate certificate;
};

// Fixed-point iteration gamma^{k+1} = B(gamma^k), stopping when every
// agent's L1 residual falls below tol. Starts from the all-uniform profile
// unless an initial profile is given.
SolveReport solve(const StaticTeam& team, const SolveOptions& opts = {},
                  const std::optional<PolicyProfile>& init = std::nullopt);

}  // namespace teamreg
