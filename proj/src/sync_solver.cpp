#include "teamreg/sync_solver.hpp"

#include <algorithm>

#include "teamreg/best_response.hpp"
#include "teamreg/errors.hpp"

namespace teamreg {

SolveReport solve(const StaticTeam& team, const SolveOptions& opts,
                  const std::optional<PolicyProfile>& init) {
    if (!(opts.tol > 0.0)) throw ValidationError("solve: tolerance must be positive");

    SolveReport report;
    report.certificate = build_certificate(team);

    PolicyProfile current = init.value_or(uniform_profile(team));

    for (int k = 0; k < opts.max_iter; ++k) {
        PolicyProfile next = best_response_all(team, current);
        report.residual = profile_distance(next, current);
        if (k == 0) report.first_step = report.residual;
        if (opts.keep_history) report.history.push_back(report.residual);
        current = std::move(next);
        report.iterations = k + 1;
        if (*std::max_element(report.residual.begin(), report.residual.end()) < opts.tol) {
            report.converged = true;
            break;
        }
    }

    report.fixed_point = std::move(current);
    report.weighted_residual_max = 0.0;
    for (int j = 0; j < team.num_agents; ++j)
        report.weighted_residual_max = std::max(
            report.weighted_residual_max, report.residual[j] / report.certificate.weight_vector[j]);

    if (report.certificate.satisfied)
        report.aposteriori_bound =
            solve_i_minus_p(report.certificate.matrix_p,
                            report.certificate.matrix_p.apply(report.residual));
    return report;
}

}  // namespace teamreg
