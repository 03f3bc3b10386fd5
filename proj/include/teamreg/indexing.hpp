#pragma once

#include <cstddef>
#include <vector>

namespace teamreg {

// Mixed-radix index space over a list of finite sets. Axis 0 is the most
// significant digit (row-major), so flat order is lexicographic in the
// digit vector. All summation loops in the library iterate flat indices
// ascending, which fixes the floating-point accumulation order.
struct IndexSpace {
    std::vector<int> dims;
    std::vector<std::size_t> strides;
    std::size_t total = 1;

    IndexSpace() = default;

    explicit IndexSpace(std::vector<int> d) : dims(std::move(d)) {
        strides.assign(dims.size(), 1);
        for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
            strides[i] = strides[i + 1] * static_cast<std::size_t>(dims[i + 1]);
        total = dims.empty() ? 1 : strides[0] * static_cast<std::size_t>(dims[0]);
    }

    int size() const { return static_cast<int>(dims.size()); }

    std::size_t flatten(const std::vector<int>& digits) const {
        std::size_t f = 0;
        for (std::size_t i = 0; i < dims.size(); ++i)
            f += static_cast<std::size_t>(digits[i]) * strides[i];
        return f;
    }

    std::vector<int> unflatten(std::size_t flat) const {
        std::vector<int> digits(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) {
            digits[i] = static_cast<int>(flat / strides[i]);
            flat %= strides[i];
        }
        return digits;
    }

    int digit(std::size_t flat, std::size_t axis) const {
        return static_cast<int>((flat / strides[axis]) % static_cast<std::size_t>(dims[axis]));
    }
};

}  // namespace teamreg
