#include "oddconn/parallelisation.hpp"

#include "oddconn/errors.hpp"
#include "oddconn/linalg.hpp"

namespace oddconn {

namespace {

Rational constant_term(const GradedPoly& f) {
    for (const auto& [m, c] : f.terms())
        if (m.odd_mask == 0 && m.total_even_degree() == 0)
            return c;
    return 0;
}

} // namespace

Parallelisation::Parallelisation(ChartPtr chart, std::vector<VectorField> frame)
    : chart_(std::move(chart)), frame_(std::move(frame)) {
    if (chart_->even_dim() != chart_->odd_dim())
        throw InputError("Parallelisation: the chart must have dimension n|n");
    const std::size_t d = chart_->dim();
    const std::size_t n = chart_->even_dim();
    if (frame_.size() != d)
        throw InputError("Parallelisation: expected " + std::to_string(d) + " frame fields");
    for (std::size_t alpha = 0; alpha < d; ++alpha) {
        require_same_chart(*frame_[alpha].chart(), *chart_, "Parallelisation");
        const Parity want = alpha < n ? Parity::even() : Parity::odd();
        if (!frame_[alpha].is_homogeneous() || frame_[alpha].parity().value_or(want) != want)
            throw ParityError("Parallelisation: frame field " + std::to_string(alpha) +
                              " must be homogeneous of parity " + to_string(want));
    }

    // Vierbein E_alpha^a = (-1)^{a alpha} Z_alpha^a.
    vierbein_.assign(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
    for (std::size_t alpha = 0; alpha < d; ++alpha)
        for (std::size_t a = 0; a < d; ++a) {
            GradedPoly e = frame_[alpha].component(a);
            if (parity_sign(chart_->parity(a).value() * slot_parity(alpha).value()) < 0)
                e = -e;
            vierbein_[alpha][a] = std::move(e);
        }

    // Two-sided inverse over the function ring. Split E = B + N with B the
    // numeric constant-term matrix, and iterate
    //   G <- (delta - N-contraction) B^{-1}
    // until the fixpoint; nilpotent or unit-triangular souls terminate, and
    // anything without a polynomial inverse fails the cap or the
    // verification below.
    std::vector<std::vector<Rational>> body(d, std::vector<Rational>(d, 0));
    for (std::size_t alpha = 0; alpha < d; ++alpha)
        for (std::size_t a = 0; a < d; ++a)
            body[alpha][a] = constant_term(vierbein_[alpha][a]);
    std::vector<std::vector<Rational>> body_inv;
    try {
        body_inv = rational_inverse(body);
    } catch (const InputError&) {
        throw InputError("Parallelisation: vierbein matrix is not invertible");
    }
    std::vector<std::vector<GradedPoly>> soul(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
    for (std::size_t alpha = 0; alpha < d; ++alpha)
        for (std::size_t a = 0; a < d; ++a)
            soul[alpha][a] = vierbein_[alpha][a] - GradedPoly::constant(chart_, body[alpha][a]);

    std::vector<std::vector<GradedPoly>> g(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
    bool converged = false;
    for (int iter = 0; iter < 64 && !converged; ++iter) {
        std::vector<std::vector<GradedPoly>> next(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
        for (std::size_t b = 0; b < d; ++b) {
            std::vector<GradedPoly> defect(d, GradedPoly(chart_)); // delta_{ab} - sum_alpha N(alpha,a) G(b,alpha)
            for (std::size_t a = 0; a < d; ++a) {
                GradedPoly acc =
                    a == b ? GradedPoly::constant(chart_, 1) : GradedPoly(chart_);
                for (std::size_t alpha = 0; alpha < d; ++alpha)
                    if (!soul[alpha][a].is_zero() && !g[b][alpha].is_zero())
                        acc -= soul[alpha][a] * g[b][alpha];
                defect[a] = std::move(acc);
            }
            for (std::size_t beta = 0; beta < d; ++beta) {
                GradedPoly acc(chart_);
                for (std::size_t a = 0; a < d; ++a)
                    if (!defect[a].is_zero() && body_inv[a][beta] != 0)
                        acc += body_inv[a][beta] * defect[a];
                next[b][beta] = std::move(acc);
            }
        }
        converged = next == g;
        g = std::move(next);
    }
    if (!converged)
        throw InputError("Parallelisation: the vierbein has no polynomial inverse");

    // g[b][alpha] solved sum_alpha E(alpha,a) g[b][alpha] = delta_ab, i.e.
    // g[b][alpha] = E_b^alpha. Verify both orthonormality conditions exactly.
    covierbein_.assign(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t alpha = 0; alpha < d; ++alpha)
            covierbein_[a][alpha] = g[a][alpha];
    for (std::size_t alpha = 0; alpha < d; ++alpha)
        for (std::size_t beta = 0; beta < d; ++beta) {
            GradedPoly acc(chart_);
            for (std::size_t a = 0; a < d; ++a)
                acc += covierbein_[a][alpha] * vierbein_[beta][a];
            GradedPoly want = alpha == beta ? GradedPoly::constant(chart_, 1) : GradedPoly(chart_);
            if (acc != want)
                throw InputError("Parallelisation: E_a^alpha E_beta^a = delta fails");
        }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            GradedPoly acc(chart_);
            for (std::size_t alpha = 0; alpha < d; ++alpha)
                acc += vierbein_[alpha][a] * covierbein_[b][alpha];
            GradedPoly want = a == b ? GradedPoly::constant(chart_, 1) : GradedPoly(chart_);
            if (acc != want)
                throw InputError("Parallelisation: E_alpha^a E_b^alpha = delta fails");
        }

    // Coframe (omega^alpha)_a = (-1)^{a(alpha+1)+alpha} E_a^alpha, the unique
    // sign making pairing(Z_beta, omega^alpha) = delta given the
    // orthonormality relations.
    coframe_.reserve(d);
    for (std::size_t alpha = 0; alpha < d; ++alpha) {
        std::vector<GradedPoly> comps(d, GradedPoly(chart_));
        for (std::size_t a = 0; a < d; ++a) {
            GradedPoly w = covierbein_[a][alpha];
            const unsigned e = chart_->parity(a).value() * (slot_parity(alpha).value() + 1) +
                               slot_parity(alpha).value();
            if (parity_sign(e) < 0)
                w = -w;
            comps[a] = std::move(w);
        }
        coframe_.emplace_back(chart_, std::move(comps), slot_parity(alpha));
    }
    for (std::size_t beta = 0; beta < d; ++beta)
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            GradedPoly want =
                alpha == beta ? GradedPoly::constant(chart_, 1) : GradedPoly(chart_);
            if (pairing(frame_[beta], coframe_[alpha]) != want)
                throw InputError("Parallelisation: pairing(Z_beta, omega^alpha) = delta fails");
        }
}

Parallelisation Parallelisation::coordinate(ChartPtr chart) {
    std::vector<VectorField> frame;
    frame.reserve(chart->dim());
    for (std::size_t a = 0; a < chart->dim(); ++a)
        frame.push_back(VectorField::basis(chart, a));
    return Parallelisation(std::move(chart), std::move(frame));
}

std::vector<GradedPoly> Parallelisation::frame_components(const VectorField& y) const {
    require_same_chart(*y.chart(), *chart_, "frame_components");
    std::vector<GradedPoly> comps;
    comps.reserve(frame_.size());
    for (std::size_t alpha = 0; alpha < frame_.size(); ++alpha)
        comps.push_back(pairing(y, coframe_[alpha]));
    return comps;
}

OddEndomorphism frame_swap_involution(const Parallelisation& par) {
    const ChartPtr& chart = par.chart();
    const std::size_t d = chart->dim();
    const std::size_t n = d / 2;
    std::vector<std::vector<GradedPoly>> entries(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t a = 0; a < d; ++a) {
        const auto ea = par.frame_components(VectorField::basis(chart, a));
        for (std::size_t b = 0; b < d; ++b) {
            GradedPoly acc(chart);
            for (std::size_t alpha = 0; alpha < d; ++alpha) {
                const std::size_t swapped = alpha < n ? alpha + n : alpha - n;
                if (ea[alpha].is_zero() || par.frame()[swapped].component(b).is_zero())
                    continue;
                GradedPoly term = ea[alpha] * par.frame()[swapped].component(b);
                const unsigned e = chart->parity(a).value() + par.slot_parity(alpha).value();
                if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
            }
            entries[a][b] = std::move(acc);
        }
    }
    return OddEndomorphism(chart, std::move(entries));
}

OddQuasiConnection weitzenbock(const Parallelisation& par, const OddEndomorphism& rho) {
    require_same_chart(*par.chart(), *rho.chart(), "weitzenbock");
    if (!is_involution(rho))
        throw InputError("weitzenbock: rho is not an involution");
    const ChartPtr& chart = par.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    for (std::size_t a = 0; a < d; ++a) {
        const VectorField rho_ea = rho.apply(VectorField::basis(chart, a));
        for (std::size_t b = 0; b < d; ++b) {
            // Gamma_{ba}^c = (nabla_{e_a} e_b)^c = sum_alpha rho(e_a)((omega^alpha)_b) Z_alpha^c.
            for (std::size_t c = 0; c < d; ++c) {
                GradedPoly acc(chart);
                for (std::size_t alpha = 0; alpha < d; ++alpha) {
                    GradedPoly coeff = apply(rho_ea, par.coframe()[alpha].component(b));
                    if (coeff.is_zero() || par.frame()[alpha].component(c).is_zero())
                        continue;
                    acc += coeff * par.frame()[alpha].component(c);
                }
                gamma[(b * d + a) * d + c] = std::move(acc);
            }
        }
    }
    return OddQuasiConnection(rho, std::move(gamma));
}

OddQuasiConnection weitzenbock_via_vierbein(const Parallelisation& par, const OddEndomorphism& rho) {
    require_same_chart(*par.chart(), *rho.chart(), "weitzenbock_via_vierbein");
    if (!is_involution(rho))
        throw InputError("weitzenbock_via_vierbein: rho is not an involution");
    const ChartPtr& chart = par.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                GradedPoly acc(chart);
                for (std::size_t dd = 0; dd < d; ++dd) {
                    if (rho.entry(a, dd).is_zero())
                        continue;
                    for (std::size_t alpha = 0; alpha < d; ++alpha) {
                        GradedPoly de = partial(par.covierbein(b, alpha), dd);
                        if (de.is_zero() || par.vierbein(alpha, c).is_zero())
                            continue;
                        GradedPoly term = rho.entry(a, dd) * par.vierbein(alpha, c) * de;
                        const unsigned e =
                            chart->parity(b).value() * (chart->parity(c).value() + 1) +
                            chart->parity(dd).value() *
                                (chart->parity(c).value() + par.slot_parity(alpha).value());
                        if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
                    }
                }
                gamma[(b * d + a) * d + c] = std::move(acc);
            }
    return OddQuasiConnection(rho, std::move(gamma));
}

Rank2Covariant induced_odd_metric(const Parallelisation& par) {
    const ChartPtr& chart = par.chart();
    const std::size_t d = chart->dim();
    const std::size_t n = d / 2;
    std::vector<GradedPoly> comps;
    comps.reserve(d * d);
    // Component on (d_a, d_b) via frame expansion; the frame blocks are
    // g(X_i, Y_j) = g(Y_j, X_i) = delta_ij and zero otherwise.
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const auto ca = par.frame_components(VectorField::basis(chart, a));
            const auto cb = par.frame_components(VectorField::basis(chart, b));
            GradedPoly acc(chart);
            for (std::size_t alpha = 0; alpha < d; ++alpha) {
                const std::size_t beta = alpha < n ? alpha + n : alpha - n; // the dual frame slot
                if (ca[alpha].is_zero() || cb[beta].is_zero())
                    continue;
                GradedPoly term = ca[alpha] * cb[beta];
                const unsigned e = (chart->parity(b).value() + par.slot_parity(beta).value()) *
                                   par.slot_parity(alpha).value();
                if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
            }
            // The stored component is (-1)^{ab} times the value on the basis
            // pair, matching the evaluation convention.
            if (parity_sign(chart->parity(a).value() * chart->parity(b).value()) < 0)
                acc = -acc;
            comps.push_back(std::move(acc));
        }
    return Rank2Covariant(chart, 2, 0, Parity::odd(), std::move(comps));
}

} // namespace oddconn
