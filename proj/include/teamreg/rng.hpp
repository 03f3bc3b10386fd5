#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace teamreg::rng {

using Engine = std::mt19937_64;

// Uniform double in (0,1). Derived directly from the engine word so the
// byte stream does not depend on the standard library's distribution
// implementation.
inline double uniform01(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

inline int uniform_int(Engine& eng, int n) {
    return static_cast<int>(eng() % static_cast<std::uint64_t>(n));
}

// Uniform point on the (n-1)-simplex: normalized i.i.d. exponentials.
inline std::vector<double> simplex_point(Engine& eng, int n) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = -std::log(uniform01(eng));
        sum += v[i];
    }
    for (int i = 0; i < n; ++i) v[i] /= sum;
    return v;
}

}  // namespace teamreg::rng
