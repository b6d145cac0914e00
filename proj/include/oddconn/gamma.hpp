#pragma once

#include "oddconn/rational.hpp"

#include <array>

namespace oddconn {

using Mat4 = std::array<std::array<Rational, 4>, 4>;

Mat4 mat_mul(const Mat4& a, const Mat4& b);
Mat4 mat_add(const Mat4& a, const Mat4& b);
Mat4 mat_scale(const Rational& c, const Mat4& a);
Mat4 mat_identity();
bool mat_symmetric(const Mat4& a);

/// Real rational Majorana data for Cl(3,1) with metric diag(-1,+1,+1,+1):
/// four gamma matrices and a charge conjugation matrix C with every C gamma^mu
/// symmetric. The construction is validated against these invariants, never
/// assumed; consumers only rely on the validated relations.
struct GammaData {
    std::array<Mat4, 4> gamma;
    Mat4 C;
    std::array<int, 4> eta_diag{-1, 1, 1, 1};

    /// (C gamma^mu)^{beta alpha}, row beta, column alpha (0-based).
    Rational c_gamma(std::size_t mu, std::size_t beta, std::size_t alpha) const;

    /// Throws ParityError/InputError on any violated invariant.
    void validate() const;
};

/// Builds the representation from tensor products of real 2x2 matrices and
/// validates it.
GammaData build_gamma();

} // namespace oddconn
