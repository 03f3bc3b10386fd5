#pragma once

#include <cstddef>
#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

// Small dense square matrix, row-major. Sized by the number of agents.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    std::vector<double> apply(const std::vector<double>& v) const;
};

// Contraction data for the joint best-response operator:
//   lambdas[j]   local oscillation of r in agent j's action
//   matrix_p     P(j,i) = lambdas[i] / (2 rho_j) for i != j, zero diagonal
//   spectral_radius  alpha(P), Perron root by power iteration
//   weight_vector    positive v with P v <= rate * v (when satisfied)
//   rate             max_j (P v)_j / v_j
//   satisfied        alpha(P) < 1 - 1e-12
struct ContractionCertificate {
    std::vector<double> lambdas;
    Matrix matrix_p;
    double spectral_radius = 0.0;
    std::vector<double> weight_vector;
    double rate = 0.0;
    bool satisfied = false;
};

// lambda_j(r) = sup over (y, u^{-j}) of [max_{u_j} r - min_{u_j} r].
// Exact enumeration.
double local_oscillation(const StaticTeam& team, int j);

// Perron root of a nonnegative square matrix. Computed as the Gelfand
// limit ||(m+I)^(2^s)||^(1/2^s) by repeated squaring with per-step
// normalization, minus the unit shift. The shift makes the dominant
// eigenvalue real and strictly modulus-dominant, so the limit converges
// for periodic patterns (both bundled instances) and reducible ones; 64
// squarings leave the truncation error far below 1e-8.
double spectral_radius(const Matrix& m);

ContractionCertificate build_certificate(const StaticTeam& team);

// Componentwise bound ||gamma^{k+m} - gamma^k|| <= (I-P)^{-1} P^k d1 for all
// m, where d1 = ||gamma^1 - gamma^0||. Requires a satisfied certificate.
std::vector<double> apriori_error_bound(const ContractionCertificate& cert,
                                        const std::vector<double>& first_step, int k);

// Solve (I - P) x = d by Gaussian elimination with partial pivoting.
std::vector<double> solve_i_minus_p(const Matrix& p, const std::vector<double>& d);

}  // namespace teamreg
