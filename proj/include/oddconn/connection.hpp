#pragma once

#include "oddconn/report.hpp"
#include "oddconn/tensor.hpp"

#include <utility>
#include <vector>

namespace oddconn {

/// Odd C^infty-module endomorphism rho of the vector fields, stored by the
/// component matrix rho(d_a) = rho_a^b d_b with parity(rho_a^b) = a + b + 1.
class OddEndomorphism {
  public:
    OddEndomorphism(ChartPtr chart, std::vector<std::vector<GradedPoly>> entries);

    static OddEndomorphism zero(ChartPtr chart);

    const ChartPtr& chart() const { return chart_; }
    /// rho_a^b
    const GradedPoly& entry(std::size_t a, std::size_t b) const { return entries_[a][b]; }
    const std::vector<std::vector<GradedPoly>>& entries() const { return entries_; }

    /// rho(X)^b = (-1)^{X+a} X^a rho_a^b; non-homogeneous X is split.
    VectorField apply(const VectorField& x) const;
    /// rho(X) f, the derivation rho(X) applied to a function.
    GradedPoly apply(const VectorField& x, const GradedPoly& f) const;

    bool is_zero() const;

    friend bool operator==(const OddEndomorphism& r, const OddEndomorphism& s) {
        return *r.chart_ == *s.chart_ && r.entries_ == s.entries_;
    }
    friend bool operator!=(const OddEndomorphism& r, const OddEndomorphism& s) { return !(r == s); }

  private:
    ChartPtr chart_;
    std::vector<std::vector<GradedPoly>> entries_;
};

/// True iff applying rho twice to every coordinate basis field gives it back
/// exactly; by C^infty-linearity this pins rho o rho = id on the module.
bool is_involution(const OddEndomorphism& rho);

/// True iff rho1 rho2 + rho2 rho1 = 2 id on every basis field.
bool clifford_dirac(const OddEndomorphism& rho1, const OddEndomorphism& rho2);

/// Standard (even) affine connection with Christoffel symbols
/// Gammabar_{ba}^c of parity a + b + c, acting as
/// nabla_X Y = X^a (dY^c/dx^a + (-1)^{a(Y+b)} Y^b Gammabar_{ba}^c) d_c.
class AffineConnection {
  public:
    AffineConnection(ChartPtr chart, std::vector<GradedPoly> christoffel);

    static AffineConnection flat(ChartPtr chart);

    const ChartPtr& chart() const { return chart_; }
    /// Gammabar_{ba}^c, direction index a.
    const GradedPoly& christoffel(std::size_t b, std::size_t a, std::size_t c) const {
        return gamma_[(b * chart_->dim() + a) * chart_->dim() + c];
    }
    const std::vector<GradedPoly>& christoffel_array() const { return gamma_; }

  private:
    ChartPtr chart_;
    std::vector<GradedPoly> gamma_; // flat [b][a][c]
};

VectorField nabla(const AffineConnection& conn, const VectorField& x, const VectorField& y);

/// Odd quasi-connection (nabla, rho) in its local form
///   nabla_X Y = (-1)^{X+a} X^a (rho_a^b dY^c/dx^b
///               + (-1)^{(a+1)(Y+b)} Y^b Gamma_{ba}^c) d_c,
/// with parity(rho_a^b) = a+b+1 and parity(Gamma_{ba}^c) = a+b+c+1. Entries of
/// the wrong parity are rejected at construction, not silently projected.
class OddQuasiConnection {
  public:
    OddQuasiConnection(OddEndomorphism rho, std::vector<GradedPoly> christoffel);

    static OddQuasiConnection banal(ChartPtr chart, std::vector<GradedPoly> christoffel);

    const ChartPtr& chart() const { return rho_.chart(); }
    const OddEndomorphism& rho() const { return rho_; }
    /// Gamma_{ba}^c, direction index a.
    const GradedPoly& christoffel(std::size_t b, std::size_t a, std::size_t c) const {
        return gamma_[(b * chart()->dim() + a) * chart()->dim() + c];
    }
    const std::vector<GradedPoly>& christoffel_array() const { return gamma_; }

    friend bool operator==(const OddQuasiConnection& c1, const OddQuasiConnection& c2) {
        return c1.rho_ == c2.rho_ && c1.gamma_ == c2.gamma_;
    }
    friend bool operator!=(const OddQuasiConnection& c1, const OddQuasiConnection& c2) {
        return !(c1 == c2);
    }

  private:
    OddEndomorphism rho_;
    std::vector<GradedPoly> gamma_; // flat [b][a][c]
};

/// Covariant derivatives. Non-homogeneous arguments are split into
/// homogeneous parts and recombined linearly.
VectorField nabla(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y);
/// nabla_X f = rho(X) f.
GradedPoly nabla(const OddQuasiConnection& conn, const VectorField& x, const GradedPoly& f);
/// (nabla_X alpha)_a = (-1)^{X(a+1)+a+b} (X^b rho_b^c d(alpha_a)/dx^c
///                      - X^b Gamma_{ab}^c alpha_c).
OneForm nabla(const OddQuasiConnection& conn, const VectorField& x, const OneForm& alpha);
/// Leibniz extension to (p,q)-tensors; valence (0,0) falls back to functions.
MixedTensor nabla(const OddQuasiConnection& conn, const VectorField& x, const MixedTensor& t);

/// T(X,Y) = nabla_X Y + (-1)^{XY} nabla_Y X + (-1)^X rho([rho(X), rho(Y)]).
VectorField torsion(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y);

/// R(X,Y)Z = [nabla_X, nabla_Y] Z - nabla_{rho[rho(X),rho(Y)]} Z, the operator
/// commutator computed by double application.
VectorField curvature(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y,
                      const VectorField& z);

struct TensorialityAnomalies {
    VectorField torsion_anomaly;             // T(X,fY) - (-1)^{(X+1)f} f T(X,Y)
    VectorField curvature_anomaly;           // R(X,fY)Z - (-1)^{fX} f R(X,Y)Z
    VectorField torsion_anomaly_predicted;   // rho(X)f (Y - rho(rho(Y)))
    VectorField curvature_anomaly_predicted; // (-1)^f rho(X)f nabla_{Y - rho(rho(Y))} Z
};

TensorialityAnomalies tensoriality_anomalies(const OddQuasiConnection& conn, const VectorField& x,
                                             const VectorField& y, const VectorField& z,
                                             const GradedPoly& f);

/// Both sides of the algebraic Bianchi identity for an odd connection; they
/// agree exactly when rho is an involution.
std::pair<VectorField, VectorField> bianchi_sides(const OddQuasiConnection& conn, const VectorField& x,
                                                  const VectorField& y, const VectorField& z);

/// Div X = (-1)^{a(X+1)} (nabla_a X)^a.
GradedPoly divergence(const OddQuasiConnection& conn, const VectorField& x);

/// Transformation of the structure functions under a change of coordinates:
/// tensorial law for rho, inhomogeneous law with the second-derivative term
/// for Gamma.
OddQuasiConnection transform(const OddQuasiConnection& conn, const CoordinateChange& c);

/// nabla := nablabar o (rho, id); requires an involutive rho.
OddQuasiConnection induce_from_affine(const AffineConnection& affine, const OddEndomorphism& rho);

/// nablabar := nabla o (rho, id); inverse of induce_from_affinet for
/// involutive rho.
AffineConnection extract_affine(const OddQuasiConnection& conn);

/// Odd banal quasi-connection, i.e. an odd (1,2)-type tensor B(X,Y).
class BanalTensor {
  public:
    BanalTensor(ChartPtr chart, std::vector<GradedPoly> components);

    const ChartPtr& chart() const { return conn_.chart(); }
    const GradedPoly& component(std::size_t b, std::size_t a, std::size_t c) const {
        return conn_.christoffel(b, a, c);
    }
    VectorField apply(const VectorField& x, const VectorField& y) const { return nabla(conn_, x, y); }

    friend bool operator==(const BanalTensor& s, const BanalTensor& t) { return s.conn_ == t.conn_; }

  private:
    OddQuasiConnection conn_;
};

/// B(X,Y) = nabla_X Y - nabla'_X Y for two quasi-connections sharing rho.
BanalTensor banal_difference(const OddQuasiConnection& c1, const OddQuasiConnection& c2);

/// t C1 + (1-t) C2, componentwise on both rho and Gamma.
OddQuasiConnection affine_combination(const OddQuasiConnection& c1, const OddQuasiConnection& c2,
                                      const Rational& t);

/// Homogeneous sample data for the axiom and compatibility checks.
struct SampleSet {
    std::vector<VectorField> fields;
    std::vector<GradedPoly> functions;
};

/// Verifies the three defining axioms of an odd quasi-connection on the
/// samples; each result carries the first counterexample found.
std::vector<CheckResult> axioms_check(const OddQuasiConnection& conn, const SampleSet& samples);

/// Even-mode axioms for an affine connection.
std::vector<CheckResult> axioms_check(const AffineConnection& conn, const SampleSet& samples);

/// rho(X)(G(Y,Z)) = G(nabla_X Y, Z) + (-1)^{(X+1)Y} G(Y, nabla_X Z) on all
/// sample triples.
std::vector<CheckResult> metric_compatibility_check(const OddQuasiConnection& conn, const Rank2Covariant& g,
                                                    const SampleSet& samples);

} // namespace oddconn
