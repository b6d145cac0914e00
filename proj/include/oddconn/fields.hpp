#pragma once

#include "oddconn/graded_poly.hpp"

#include <optional>
#include <vector>

namespace oddconn {

/// Vector field X = X^a d_a with coefficients written to the left of the
/// coordinate derivations. A declared parity p requires every component X^a to
/// be homogeneous of parity p + a (or zero); fields without a uniform parity
/// carry no declared parity and are handled by splitting into homogeneous
/// parts.
class VectorField {
  public:
    VectorField(ChartPtr chart, std::vector<GradedPoly> components);
    VectorField(ChartPtr chart, std::vector<GradedPoly> components, Parity declared);

    static VectorField zero(ChartPtr chart);
    /// The coordinate derivation d_a (parity of the coordinate).
    static VectorField basis(ChartPtr chart, std::size_t a);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<GradedPoly>& components() const { return comps_; }
    const GradedPoly& component(std::size_t a) const { return comps_.at(a); }

    std::optional<Parity> parity() const { return parity_; }
    bool is_homogeneous() const { return parity_.has_value() || is_zero(); }
    bool is_zero() const;

    VectorField parity_part(Parity p) const;
    /// The (at most two) nonzero homogeneous parts.
    std::vector<VectorField> homogeneous_parts() const;

    VectorField operator-() const;
    VectorField& operator+=(const VectorField& y);
    VectorField& operator-=(const VectorField& y);
    friend VectorField operator+(const VectorField& x, const VectorField& y);
    friend VectorField operator-(const VectorField& x, const VectorField& y);
    /// Left module action (f X)^a = f * X^a.
    friend VectorField operator*(const GradedPoly& f, const VectorField& x);
    friend VectorField operator*(const Rational& c, const VectorField& x);
    friend bool operator==(const VectorField& x, const VectorField& y);
    friend bool operator!=(const VectorField& x, const VectorField& y) { return !(x == y); }

  private:
    ChartPtr chart_;
    std::vector<GradedPoly> comps_;
    std::optional<Parity> parity_;
};

/// One-form in the even convention alpha = dx^a alpha_a, where dx^a carries
/// the parity of x^a. A declared parity p requires alpha_a homogeneous of
/// parity p + a.
class OneForm {
  public:
    OneForm(ChartPtr chart, std::vector<GradedPoly> components);
    OneForm(ChartPtr chart, std::vector<GradedPoly> components, Parity declared);

    static OneForm zero(ChartPtr chart);
    /// The coordinate one-form dx^b.
    static OneForm basis(ChartPtr chart, std::size_t b);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<GradedPoly>& components() const { return comps_; }
    const GradedPoly& component(std::size_t a) const { return comps_.at(a); }

    std::optional<Parity> parity() const { return parity_; }
    bool is_homogeneous() const { return parity_.has_value() || is_zero(); }
    bool is_zero() const;

    OneForm parity_part(Parity p) const;
    std::vector<OneForm> homogeneous_parts() const;

    OneForm operator-() const;
    OneForm& operator+=(const OneForm& b);
    OneForm& operator-=(const OneForm& b);
    friend OneForm operator+(const OneForm& a, const OneForm& b);
    friend OneForm operator-(const OneForm& a, const OneForm& b);
    friend bool operator==(const OneForm& a, const OneForm& b);
    friend bool operator!=(const OneForm& a, const OneForm& b) { return !(a == b); }

  private:
    ChartPtr chart_;
    std::vector<GradedPoly> comps_;
    std::optional<Parity> parity_;
};

/// X(f) = sum_a X^a * del_a f; a graded derivation in f.
GradedPoly apply(const VectorField& x, const GradedPoly& f);

/// Graded commutator [X, Y](f) = X(Y(f)) - (-1)^{XY} Y(X(f)); non-homogeneous
/// arguments are split and recombined bilinearly.
VectorField bracket(const VectorField& x, const VectorField& y);

/// Invariant pairing <X, alpha> = sum_a X^a alpha_a.
GradedPoly pairing(const VectorField& x, const OneForm& alpha);

} // namespace oddconn
