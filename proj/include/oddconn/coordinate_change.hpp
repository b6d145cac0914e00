#pragma once

#include "oddconn/fields.hpp"

#include <vector>

namespace oddconn {

/// An invertible polynomial change of coordinates x^{a'} = x^{a'}(x) given by
/// a forward/inverse substitution pair. Construction checks that the pair is
/// parity-preserving and composes to the identity exactly, both ways.
class CoordinateChange {
  public:
    CoordinateChange(ChartPtr source, ChartPtr target,
                     std::vector<GradedPoly> forward,  // x^{a'} as functions on the source chart
                     std::vector<GradedPoly> inverse); // x^a as functions on the target chart

    const ChartPtr& source() const { return source_; }
    const ChartPtr& target() const { return target_; }

    const GradedPoly& forward(std::size_t ap) const { return forward_.at(ap); }
    const GradedPoly& inverse(std::size_t a) const { return inverse_.at(a); }

    /// J(a, a') = d x^{a'} / d x^a, a function on the source chart.
    const GradedPoly& jacobian(std::size_t a, std::size_t ap) const { return jac_[a][ap]; }
    /// K(a', a) = d x^a / d x^{a'} expressed back on the source chart.
    const GradedPoly& inverse_jacobian_on_source(std::size_t ap, std::size_t a) const {
        return inv_jac_src_[ap][a];
    }
    /// Same matrix as a function on the target chart.
    const GradedPoly& inverse_jacobian_on_target(std::size_t ap, std::size_t a) const {
        return inv_jac_dst_[ap][a];
    }

    /// Expresses a source-chart function in target coordinates (f composed
    /// with the inverse map) and vice versa.
    GradedPoly to_target(const GradedPoly& f) const;
    GradedPoly to_source(const GradedPoly& g) const;

    CoordinateChange inverted() const;
    /// first, then second (source of `second` must be the target of `first`).
    static CoordinateChange compose(const CoordinateChange& first, const CoordinateChange& second);

  private:
    ChartPtr source_;
    ChartPtr target_;
    std::vector<GradedPoly> forward_;
    std::vector<GradedPoly> inverse_;
    SubstitutionMap fwd_map_;
    SubstitutionMap inv_map_;
    std::vector<std::vector<GradedPoly>> jac_;
    std::vector<std::vector<GradedPoly>> inv_jac_dst_;
    std::vector<std::vector<GradedPoly>> inv_jac_src_;
};

/// X^{a'} = X^a (dx^{a'}/dx^a), pushed into target coordinates.
VectorField transform(const VectorField& x, const CoordinateChange& c);

/// alpha_{a'} = (dx^a/dx^{a'}) alpha_a, pushed into target coordinates; the
/// valence-(1,0) case of the tensor law.
OneForm transform(const OneForm& alpha, const CoordinateChange& c);

} // namespace oddconn
