#pragma once

#include "oddconn/chart.hpp"
#include "oddconn/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oddconn {

/// Canonical monomial x^k · xi_{i1}···xi_{ip} over a chart: non-negative
/// exponents for the even coordinates (packed, 8 bits each, up to 16 even
/// coordinates and exponent 255) and a strictly increasing subset of odd
/// generators stored as a bitmask (so xi^2 = 0 is structural). The sorting
/// sign of any odd reordering is folded into the coefficient by the ring
/// operations.
struct Monomial {
    static constexpr std::size_t max_even_dim = 16;
    static constexpr std::uint32_t max_exponent = 255;

    std::array<std::uint64_t, 2> even_packed{};
    std::uint64_t odd_mask = 0;

    Monomial() = default;
    Monomial(const std::vector<std::uint32_t>& even_exp, std::uint64_t mask);

    std::uint32_t even_exp(std::size_t i) const {
        return static_cast<std::uint32_t>((even_packed[i >> 3] >> ((i & 7) * 8)) & 0xff);
    }
    void set_even_exp(std::size_t i, std::uint32_t e);
    std::vector<std::uint32_t> even_exponents(std::size_t even_dim) const;

    Parity parity() const;
    std::uint32_t total_even_degree() const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.odd_mask == b.odd_mask && a.even_packed == b.even_packed;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.odd_mask != b.odd_mask)
            return a.odd_mask < b.odd_mask;
        return a.even_packed < b.even_packed;
    }
};

/// Exact polynomial superfunction on a chart: an element of
/// Q[x^1..x^n] (x) Lambda(xi^1..xi^m), stored as a normalized, sorted term
/// list with nonzero rational coefficients. Values are immutable after
/// construction; all operations are pure.
class GradedPoly {
  public:
    using Term = std::pair<Monomial, Rational>;

    explicit GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {}

    static GradedPoly zero(ChartPtr chart) { return GradedPoly(std::move(chart)); }
    static GradedPoly constant(ChartPtr chart, Rational value);
    /// The coordinate function x^a.
    static GradedPoly coordinate(ChartPtr chart, std::size_t a);
    static GradedPoly monomial(ChartPtr chart, Monomial m, Rational coeff);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// True when every stored monomial has parity p (the zero polynomial has
    /// every parity).
    bool has_parity(Parity p) const;
    /// The common parity of all monomials; nullopt when zero or inhomogeneous.
    std::optional<Parity> parity() const;
    bool is_homogeneous() const;
    /// The sub-sum of terms with parity p.
    GradedPoly parity_part(Parity p) const;

    std::uint32_t max_even_degree() const;

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& g);
    GradedPoly& operator-=(const GradedPoly& g);
    friend GradedPoly operator+(const GradedPoly& f, const GradedPoly& g);
    friend GradedPoly operator-(const GradedPoly& f, const GradedPoly& g);
    /// Graded-commutative product; reordering odd generators into canonical
    /// order contributes the Koszul sign.
    friend GradedPoly operator*(const GradedPoly& f, const GradedPoly& g);
    friend GradedPoly operator*(const Rational& c, const GradedPoly& f);
    friend GradedPoly operator*(const GradedPoly& f, const Rational& c) { return c * f; }

    friend bool operator==(const GradedPoly& f, const GradedPoly& g) {
        return *f.chart_ == *g.chart_ && f.terms_ == g.terms_;
    }
    friend bool operator!=(const GradedPoly& f, const GradedPoly& g) { return !(f == g); }

    GradedPoly pow(std::uint32_t k) const;

    /// Serializes as a sum of terms `coeff*x^k*...*xi_i*xi_j` with odd factors
    /// in ascending index order.
    std::string str() const;

  private:
    void merge_signed(const GradedPoly& g, bool negate);
    friend GradedPoly partial(const GradedPoly& f, std::size_t a);

    ChartPtr chart_;
    std::vector<Term> terms_; // sorted by monomial, no zero coefficients
};

/// Left partial derivative with respect to coordinate a: del_a x^b = delta_a^b
/// and del_a(fg) = (del_a f) g + (-1)^{a f} f (del_a g).
GradedPoly partial(const GradedPoly& f, std::size_t a);

/// Substitution map for gp-level coordinate images. Images must live on one
/// common target chart and match the parity of the coordinate they replace.
/// A coordinate that actually occurs in the polynomial must have an image.
using SubstitutionMap = std::map<std::size_t, GradedPoly>;

GradedPoly substitute(const GradedPoly& f, const SubstitutionMap& images, const ChartPtr& target);

/// Evaluates all even coordinates at rational values, leaving a polynomial
/// constant in the even coordinates (a pure Grassmann element).
GradedPoly eval_even(const GradedPoly& f, const std::map<std::size_t, Rational>& point);

} // namespace oddconn
