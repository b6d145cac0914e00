#pragma once

#include "oddconn/coordinate_change.hpp"
#include "oddconn/fields.hpp"

#include <span>
#include <vector>

namespace oddconn {

/// Mixed (p,q)-tensor with p vector-field slots and q one-form slots, stored
/// as a dense component array in the layout T_{a_p...a_1}^{b_q...b_1}: the
/// component addressed by (lower = a_1..a_p, upper = b_1..b_q) is the value on
/// the basis tuple (d_{a_1},...,d_{a_p}; dx^{b_1},...,dx^{b_q}). Components
/// fully determine the multilinear map. Every tensor carries a declared
/// parity; component (a..,b..) must be homogeneous of parity
/// T + sum(a) + sum(b), or zero.
class MixedTensor {
  public:
    MixedTensor(ChartPtr chart, std::size_t p, std::size_t q, Parity parity,
                std::vector<GradedPoly> components);

    static MixedTensor zero(ChartPtr chart, std::size_t p, std::size_t q, Parity parity);

    const ChartPtr& chart() const { return chart_; }
    std::size_t vector_slots() const { return p_; }
    std::size_t form_slots() const { return q_; }
    Parity parity() const { return parity_; }
    const std::vector<GradedPoly>& components() const { return comps_; }

    const GradedPoly& component(std::span<const std::size_t> lower, std::span<const std::size_t> upper) const;
    std::size_t flat_index(std::span<const std::size_t> lower, std::span<const std::size_t> upper) const;

    /// The single component of a (0,0) tensor.
    const GradedPoly& scalar() const;

    friend MixedTensor operator+(const MixedTensor& s, const MixedTensor& t);
    friend MixedTensor operator-(const MixedTensor& s, const MixedTensor& t);
    friend bool operator==(const MixedTensor& s, const MixedTensor& t);
    friend bool operator!=(const MixedTensor& s, const MixedTensor& t) { return !(s == t); }

  private:
    ChartPtr chart_;
    std::size_t p_;
    std::size_t q_;
    Parity parity_;
    std::vector<GradedPoly> comps_;
};

/// Rank-2 covariant tensor G_{ab}; no symmetry or non-degeneracy is assumed.
using Rank2Covariant = MixedTensor;

/// Steps a mixed-radix index (all digits run over [0, dim)); returns false
/// after the last tuple.
bool next_index(std::vector<std::size_t>& idx, std::size_t dim);

/// Evaluates the multilinear map on homogeneous arguments (non-homogeneous
/// ones are split and recombined). The coefficient of a vector argument exits
/// to the left across the earlier basis derivations, a one-form coefficient
/// exits to the right across the later basis differentials; this is the
/// unique multilinear extension of the local form that reproduces
/// T(Y; alpha) = Y^a T_a^b alpha_b and pairs with the transformation sign chi
/// (see transform below).
GradedPoly evaluate(const MixedTensor& t, const std::vector<VectorField>& vectors,
                    const std::vector<OneForm>& forms);

/// Component transformation law with the sign factor chi; empty sign sums
/// (p < 2, q < 2) contribute +1. Slotwise consistency with `evaluate` is part
/// of the test suite.
MixedTensor transform(const MixedTensor& t, const CoordinateChange& c);

} // namespace oddconn
