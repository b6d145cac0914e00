#pragma once

#include "oddconn/connection.hpp"

namespace oddconn {

/// A global frame {Z_alpha} on an n|n chart: n even fields followed by n odd
/// ones, with the dual coframe {omega^alpha} computed by exact inversion of
/// the vierbein matrix over the function ring. Construction verifies the
/// orthonormality relations E_a^alpha E_beta^a = delta and
/// E_alpha^a E_b^alpha = delta as well as pairing(Z_beta, omega^alpha) = delta,
/// all exactly.
class Parallelisation {
  public:
    Parallelisation(ChartPtr chart, std::vector<VectorField> frame);

    /// Coordinate frame {d_a} on the chart.
    static Parallelisation coordinate(ChartPtr chart);

    const ChartPtr& chart() const { return chart_; }
    std::size_t size() const { return frame_.size(); }
    Parity slot_parity(std::size_t alpha) const {
        return alpha < frame_.size() / 2 ? Parity::even() : Parity::odd();
    }

    const std::vector<VectorField>& frame() const { return frame_; }
    const std::vector<OneForm>& coframe() const { return coframe_; }

    /// E_alpha^a = (-1)^{a alpha} Z_alpha^a.
    const GradedPoly& vierbein(std::size_t alpha, std::size_t a) const { return vierbein_[alpha][a]; }
    /// E_a^alpha, the two-sided inverse of the vierbein.
    const GradedPoly& covierbein(std::size_t a, std::size_t alpha) const { return covierbein_[a][alpha]; }

    /// Frame components Y^alpha with Y = Y^alpha Z_alpha, via the coframe
    /// pairing.
    std::vector<GradedPoly> frame_components(const VectorField& y) const;

  private:
    ChartPtr chart_;
    std::vector<VectorField> frame_;
    std::vector<OneForm> coframe_;
    std::vector<std::vector<GradedPoly>> vierbein_;
    std::vector<std::vector<GradedPoly>> covierbein_;
};

/// The canonical odd involution of a parallelisation: rho(X_i) = Y_i and
/// rho(Y_j) = X_j on the frame, extended as an odd module endomorphism.
OddEndomorphism frame_swap_involution(const Parallelisation& par);

/// Odd Weitzenboeck connection generated by rho and the frame:
/// nabla_X (Y^alpha Z_alpha) = rho(X)(Y^alpha) Z_alpha.
OddQuasiConnection weitzenbock(const Parallelisation& par, const OddEndomorphism& rho);

/// The same connection through the vierbein Christoffel formula
/// Gamma_{ba}^c = (-1)^{b(c+1)+d(c+alpha)} rho_a^d E_alpha^c dE_b^alpha/dx^d;
/// must agree with `weitzenbock` exactly.
OddQuasiConnection weitzenbock_via_vierbein(const Parallelisation& par, const OddEndomorphism& rho);

/// Induced odd Riemannian metric: g(X_i, X_j) = g(Y_i, Y_j) = 0 and
/// g(X_i, Y_j) = g(Y_j, X_i) = delta_ij on the frame (the graded-symmetric
/// completion of the frame blocks), expressed in coordinate components via
/// coframe contraction.
Rank2Covariant induced_odd_metric(const Parallelisation& par);

} // namespace oddconn
