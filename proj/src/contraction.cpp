#include "teamreg/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teamreg/errors.hpp"

namespace teamreg {

std::vector<double> Matrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double local_oscillation(const StaticTeam& team, int j) {
    if (j < 0 || j >= team.num_agents) throw ShapeError("local_oscillation: agent out of range");
    const std::size_t ny = team.obs_space.total;
    const std::size_t nu = team.act_space.total;
    const int nuj = team.act_space.dims[j];
    const std::size_t stride_j = team.act_space.strides[j];
    const std::size_t outer = nu / (static_cast<std::size_t>(nuj) * stride_j);

    std::vector<double> per_y(ny, 0.0);
#pragma omp parallel for schedule(static)
    for (long long yi = 0; yi < static_cast<long long>(ny); ++yi) {
        const double* fiber = team.reward_r.data() + static_cast<std::size_t>(yi) * nu;
        double worst = 0.0;
        for (std::size_t hi = 0; hi < outer; ++hi) {
            for (std::size_t lo = 0; lo < stride_j; ++lo) {
                const std::size_t base = hi * static_cast<std::size_t>(nuj) * stride_j + lo;
                double mx = -std::numeric_limits<double>::infinity();
                double mn = std::numeric_limits<double>::infinity();
                for (int uj = 0; uj < nuj; ++uj) {
                    const double v = fiber[base + static_cast<std::size_t>(uj) * stride_j];
                    mx = std::max(mx, v);
                    mn = std::min(mn, v);
                }
                worst = std::max(worst, mx - mn);
            }
        }
        per_y[yi] = worst;
    }
    double lam = 0.0;
    for (std::size_t yi = 0; yi < ny; ++yi) lam = std::max(lam, per_y[yi]);
    return lam;
}

namespace {

double inf_norm(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.n; ++j) row += std::abs(m.at(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

Matrix square_of(const Matrix& m) {
    Matrix out(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m.n; ++k) acc += m.at(i, k) * m.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

}  // namespace

double spectral_radius(const Matrix& m) {
    const int n = m.n;
    if (n == 0) return 0.0;
    // The unit diagonal keeps every power's max row sum positive.
    Matrix b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.at(i, j) = m.at(i, j) + (i == j ? 1.0 : 0.0);

    double log_root = 0.0;
    double scale = 1.0;
    for (int s = 0; s < 64; ++s) {
        const double nrm = inf_norm(b);
        log_root += std::log(nrm) * scale;
        scale *= 0.5;
        for (double& x : b.a) x /= nrm;
        b = square_of(b);
    }
    log_root += std::log(inf_norm(b)) * scale;
    return std::max(0.0, std::exp(log_root) - 1.0);
}

namespace {

// Perron-style weight vector. Primary construction: power iteration on
// P + eps*I normalized to min entry 1. If the iterate degenerates (P
// reducible, near-zero components), falls back to the Neumann-type vector
// v = (I - P/w')^{-1} 1 with w' = (1 + alpha)/2, which is >= 1 and
// satisfies P v <= w' v whenever alpha < 1.
std::vector<double> weight_vector_for(const Matrix& p, double alpha, bool satisfied) {
    const int n = p.n;
    const double eps = 1e-9;
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < 20000; ++it) {
        std::vector<double> w = p.apply(v);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] += eps * v[i];
            norm += std::abs(w[i]);
        }
        if (norm == 0.0) break;
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] *= n / norm;
            diff = std::max(diff, std::abs(w[i] - v[i]));
        }
        v.swap(w);
        if (diff <= 1e-13) break;
    }
    double mn = *std::min_element(v.begin(), v.end());
    bool degenerate = !(mn > 1e-8);
    if (!degenerate) {
        for (double& x : v) x /= mn;
        if (satisfied) {
            // Reject the vector if it fails to certify a rate below 1.
            const std::vector<double> pv = p.apply(v);
            for (int i = 0; i < n; ++i)
                if (pv[i] >= v[i]) degenerate = true;
        }
    }
    if (degenerate && satisfied) {
        const double wprime = 0.5 * (1.0 + alpha);
        Matrix scaled(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) scaled.at(i, j) = p.at(i, j) / wprime;
        v = solve_i_minus_p(scaled, std::vector<double>(n, 1.0));
        const double m2 = *std::min_element(v.begin(), v.end());
        for (double& x : v) x /= m2;
    } else if (degenerate) {
        v.assign(n, 1.0);
    }
    return v;
}

}  // namespace

ContractionCertificate build_certificate(const StaticTeam& team) {
    const int n = team.num_agents;
    ContractionCertificate cert;
    cert.lambdas.resize(n);
    for (int j = 0; j < n; ++j) cert.lambdas[j] = local_oscillation(team, j);

    cert.matrix_p = Matrix(n);
    for (int j = 0; j < n; ++j) {
        const double rho_j = team.regularizers[j].rho();
        for (int i = 0; i < n; ++i)
            cert.matrix_p.at(j, i) = (i == j) ? 0.0 : cert.lambdas[i] / (2.0 * rho_j);
    }

    cert.spectral_radius = spectral_radius(cert.matrix_p);
    cert.satisfied = cert.spectral_radius < 1.0 - 1e-12;
    cert.weight_vector = weight_vector_for(cert.matrix_p, cert.spectral_radius, cert.satisfied);

    const std::vector<double> pv = cert.matrix_p.apply(cert.weight_vector);
    double w = 0.0;
    for (int j = 0; j < n; ++j) w = std::max(w, pv[j] / cert.weight_vector[j]);
    cert.rate = w;
    return cert;
}

std::vector<double> solve_i_minus_p(const Matrix& p, const std::vector<double>& d) {
    const int n = p.n;
    Matrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = (i == j ? 1.0 : 0.0) - p.at(i, j);
    std::vector<double> x = d;

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (a.at(piv, col) == 0.0) throw ValidationError("solve_i_minus_p: singular matrix");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
            std::swap(x[piv], x[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            x[r] -= f * x[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = x[r];
        for (int c = r + 1; c < n; ++c) acc -= a.at(r, c) * x[c];
        x[r] = acc / a.at(r, r);
    }
    return x;
}

std::vector<double> apriori_error_bound(const ContractionCertificate& cert,
                                        const std::vector<double>& first_step, int k) {
    if (!cert.satisfied)
        throw ValidationError("apriori_error_bound: certificate does not satisfy alpha(P) < 1");
    const int n = cert.matrix_p.n;
    if (static_cast<int>(first_step.size()) != n)
        throw ShapeError("apriori_error_bound: first_step has wrong length");
    std::vector<double> d = first_step;
    for (int s = 0; s < k; ++s) d = cert.matrix_p.apply(d);
    return solve_i_minus_p(cert.matrix_p, d);
}

}  // namespace teamreg
