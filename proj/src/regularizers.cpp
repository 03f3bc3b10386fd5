#include "teamreg/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teamreg/errors.hpp"

namespace teamreg {

void RegularizerSpec::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw ValidationError("regularizer temperature must be positive and finite");
    if (action_count < 1)
        throw ValidationError("regularizer action_count must be >= 1");
}

double omega_value(const RegularizerSpec& reg, const std::vector<double>& delta) {
    if (static_cast<int>(delta.size()) != reg.action_count)
        throw ShapeError("omega_value: distribution length does not match action_count");
    double h = 0.0;
    for (double d : delta) {
        if (d < 0.0) throw ValidationError("omega_value: negative probability entry");
        if (d > 0.0) h += d * std::log(d);
    }
    double value = reg.temperature * h;
    if (reg.kind == RegularizerKind::RelEntropyUniform)
        value += reg.temperature * std::log(static_cast<double>(reg.action_count));
    return value;
}

std::vector<double> conjugate_gradient(const RegularizerSpec& reg, const std::vector<double>& g) {
    if (static_cast<int>(g.size()) != reg.action_count)
        throw ShapeError("conjugate_gradient: score length does not match action_count");
    for (double x : g)
        if (!std::isfinite(x)) throw ValidationError("conjugate_gradient: non-finite score");

    // The RelEntropyUniform kind differs from NegEntropy by a constant, so
    // the argmax map is the same softmax for both.
    const double m = *std::max_element(g.begin(), g.end());
    std::vector<double> out(g.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        out[i] = std::exp((g[i] - m) / reg.temperature);
        sum += out[i];
    }
    for (double& x : out) x /= sum;
    return out;
}

double beta(const RegularizerSpec& reg) {
    // sup at a vertex, inf at the uniform distribution for both kinds.
    return reg.temperature * std::log(static_cast<double>(reg.action_count));
}

const char* kind_name(RegularizerKind kind) {
    switch (kind) {
        case RegularizerKind::NegEntropy: return "neg_entropy";
        case RegularizerKind::RelEntropyUniform: return "rel_entropy_uniform";
    }
    return "unknown";
}

RegularizerKind kind_from_name(const std::string& name) {
    if (name == "neg_entropy") return RegularizerKind::NegEntropy;
    if (name == "rel_entropy_uniform") return RegularizerKind::RelEntropyUniform;
    throw ParseError("unknown regularizer kind: '" + name +
                     "' (expected 'neg_entropy' or 'rel_entropy_uniform')");
}

}  // namespace teamreg
