#pragma once

#include <string>
#include <vector>

namespace teamreg {

enum class RegularizerKind {
    NegEntropy,         // tau * sum_u d(u) ln d(u)
    RelEntropyUniform,  // tau * (sum_u d(u) ln d(u) + ln |U|)
};

// Strongly convex regularizer on the action simplex of one agent.
// The base negative entropy is 1-strongly convex with respect to the
// l1 norm on the simplex; scaling by the temperature tau scales the
// strong-convexity modulus, so rho = tau.
struct RegularizerSpec {
    RegularizerKind kind = RegularizerKind::NegEntropy;
    double temperature = 1.0;
    int action_count = 0;

    double rho() const { return temperature; }

    void validate() const;
};

// Omega(delta) with the 0*ln(0) = 0 convention. Throws ValidationError on
// negative entries.
double omega_value(const RegularizerSpec& reg, const std::vector<double>& delta);

// Gradient of the Fenchel conjugate: the unique maximizer of
// <g, delta> - Omega(delta) over the simplex. For both supported kinds this
// is the softmax map delta(u) proportional to exp(g(u)/tau), computed with
// max subtraction and renormalized. Throws ValidationError on non-finite g.
std::vector<double> conjugate_gradient(const RegularizerSpec& reg, const std::vector<double>& g);

// Range of Omega over the simplex: sup - inf = tau * ln |U| for both kinds.
double beta(const RegularizerSpec& reg);

const char* kind_name(RegularizerKind kind);
RegularizerKind kind_from_name(const std::string& name);

}  // namespace teamreg
