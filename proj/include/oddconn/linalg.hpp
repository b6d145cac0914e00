#pragma once

#include "oddconn/errors.hpp"
#include "oddconn/rational.hpp"

#include <utility>
#include <vector>

namespace oddconn {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss-Jordan elimination; throws InputError when singular.
inline RationalMatrix rational_inverse(RationalMatrix m) {
    const std::size_t n = m.size();
    RationalMatrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            throw InputError("matrix is singular");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0)
                continue;
            const Rational f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace oddconn
