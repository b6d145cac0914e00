#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oddconn/catalog.hpp"
#include "oddconn/sampling.hpp"

using namespace oddconn;

namespace {

ChartPtr r11() { return make_chart({"t"}, {"theta"}); }
ChartPtr r12() { return make_chart({"t"}, {"theta1", "theta2"}); }
ChartPtr r22() { return make_chart({"x1", "x2"}, {"xi1", "xi2"}); }

OddEndomorphism swap_rho(const ChartPtr& chart) {
    const std::size_t n = chart->even_dim(), d = chart->dim();
    std::vector<std::vector<GradedPoly>> entries(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        entries[i][n + i] = GradedPoly::constant(chart, 1);
        entries[n + i][i] = GradedPoly::constant(chart, 1);
    }
    return OddEndomorphism(chart, std::move(entries));
}

OddQuasiConnection canonical(const ChartPtr& chart) {
    const std::size_t d = chart->dim();
    return OddQuasiConnection(swap_rho(chart), std::vector<GradedPoly>(d * d * d, GradedPoly(chart)));
}

Parity flip(Sampler& s) { return s.uniform(2) ? Parity::odd() : Parity::even(); }

} // namespace

TEST_CASE("nabla on the canonical connection") {
    auto chart = r11();
    OddQuasiConnection conn = canonical(chart);
    GradedPoly t = GradedPoly::coordinate(chart, 0);
    GradedPoly theta = GradedPoly::coordinate(chart, 1);
    VectorField dt = VectorField::basis(chart, 0);
    VectorField dth = VectorField::basis(chart, 1);

    CHECK(nabla(conn, dt, t * dt).is_zero()); // d_theta(t) = 0
    CHECK(nabla(conn, dt, theta * dt) == dt); // d_theta(theta) = 1
    VectorField constant = Rational(3) * dt + theta * dt;
    Sampler s(1);
    VectorField x = s.field(chart, Parity::even(), 2);
    CHECK(nabla(conn, x, Rational(5) * dth).is_zero());

    // Exp on R^{1|1} SUSY frame: nabla_P (t D) = D(t) D = -theta D.
    CatalogEntry susy = susy_r11();
    const VectorField& p = susy.named_fields.at("P");
    const VectorField& d_field = susy.named_fields.at("D");
    CHECK(nabla(susy.connection, p, t * d_field) == (-theta) * d_field);
}

TEST_CASE("connection constructor rejects wrong parity data") {
    auto chart = r11();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    // Gamma_{theta t}^{t} must be even; theta is odd.
    gamma[(1 * d + 0) * d + 0] = GradedPoly::coordinate(chart, 1);
    CHECK_THROWS_AS(OddQuasiConnection(swap_rho(chart), gamma), ParityError);

    std::vector<std::vector<GradedPoly>> rho(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    rho[0][0] = GradedPoly::constant(chart, 1); // even entry where odd parity is required
    CHECK_THROWS_AS(OddEndomorphism(chart, rho), ParityError);
}

TEST_CASE("axioms hold for arbitrary parity-legal data") {
    Sampler s(101);
    for (const auto& chart : {r11(), r22()}) {
        for (int trial = 0; trial < 4; ++trial) {
            OddQuasiConnection conn = s.quasi_connection(chart, 2);
            SampleSet samples;
            samples.fields = {s.field(chart, Parity::even(), 2), s.field(chart, Parity::odd(), 2)};
            samples.functions = {s.nonzero_poly(chart, Parity::even(), 2),
                                 s.nonzero_poly(chart, Parity::odd(), 2)};
            for (const auto& r : axioms_check(conn, samples)) {
                INFO(r.name, ": ", r.counterexample);
                CHECK(r.passed);
            }
        }
        // Banal case: rho = 0, Gamma arbitrary.
        OddQuasiConnection banal = OddQuasiConnection::banal(chart, s.christoffel(chart, Parity::odd(), 2));
        SampleSet samples;
        samples.fields = {s.field(chart, Parity::even(), 1), s.field(chart, Parity::odd(), 1)};
        samples.functions = {s.nonzero_poly(chart, Parity::odd(), 1)};
        for (const auto& r : axioms_check(banal, samples))
            CHECK(r.passed);
    }
}

TEST_CASE("involution predicate") {
    auto chart = r22();
    OddEndomorphism rho = swap_rho(chart);
    CHECK(is_involution(rho));
    // Scaled swap squares to 4.
    std::vector<std::vector<GradedPoly>> scaled(chart->dim(),
                                                std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    for (std::size_t a = 0; a < chart->dim(); ++a)
        for (std::size_t b = 0; b < chart->dim(); ++b)
            scaled[a][b] = Rational(2) * rho.entry(a, b);
    CHECK_FALSE(is_involution(OddEndomorphism(chart, scaled)));
    CHECK_FALSE(is_involution(OddEndomorphism::zero(chart)));
    Sampler s(7);
    CHECK(is_involution(s.involution(chart)));
}

TEST_CASE("clifford-dirac relation") {
    auto chart = r22();
    OddEndomorphism rho = swap_rho(chart);
    CHECK(clifford_dirac(rho, rho));

    // Sign flip on the second pair: anticommutator is not 2 id.
    std::vector<std::vector<GradedPoly>> entries(chart->dim(),
                                                 std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    entries[0][2] = GradedPoly::constant(chart, 1);
    entries[2][0] = GradedPoly::constant(chart, 1);
    entries[1][3] = GradedPoly::constant(chart, -1);
    entries[3][1] = GradedPoly::constant(chart, -1);
    OddEndomorphism flipped(chart, entries);
    CHECK(is_involution(flipped));
    CHECK_FALSE(clifford_dirac(rho, flipped));

    // rho2 = -rho1 gives anticommutator -2 id.
    std::vector<std::vector<GradedPoly>> neg(chart->dim(),
                                             std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    for (std::size_t a = 0; a < chart->dim(); ++a)
        for (std::size_t b = 0; b < chart->dim(); ++b)
            neg[a][b] = -rho.entry(a, b);
    CHECK_FALSE(clifford_dirac(rho, OddEndomorphism(chart, neg)));

    // rho2 = rho1 + N with N odd, N^2 = 0, N rho + rho N = 0: a genuine
    // Clifford-Dirac partner. Affine combinations are then involutions.
    std::vector<std::vector<GradedPoly>> partner(chart->dim(),
                                                 std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    for (std::size_t a = 0; a < chart->dim(); ++a)
        for (std::size_t b = 0; b < chart->dim(); ++b)
            partner[a][b] = rho.entry(a, b);
    partner[1][2] = partner[1][2] + GradedPoly::constant(chart, 1); // N(d_{x2}) = d_{xi1}
    partner[3][0] = partner[3][0] - GradedPoly::constant(chart, 1); // N(d_{xi2}) = -d_{x1}
    OddEndomorphism rho2(chart, partner);
    CHECK(is_involution(rho2));
    CHECK(clifford_dirac(rho, rho2));
    for (const Rational& t : {Rational(1, 2), Rational(1, 3), Rational(-2)}) {
        std::vector<std::vector<GradedPoly>> mix(chart->dim(),
                                                 std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
        for (std::size_t a = 0; a < chart->dim(); ++a)
            for (std::size_t b = 0; b < chart->dim(); ++b)
                mix[a][b] = t * rho.entry(a, b) + (1 - t) * rho2.entry(a, b);
        CHECK(is_involution(OddEndomorphism(chart, mix)));
    }
}

TEST_CASE("torsion on the SUSY connection") {
    CatalogEntry susy = susy_r11();
    const VectorField& p = susy.named_fields.at("P");
    const VectorField& d_field = susy.named_fields.at("D");
    CHECK(torsion(susy.connection, p, p) == Rational(-2) * d_field);
    CHECK(torsion(susy.connection, p, d_field).is_zero());
    CHECK(torsion(susy.connection, d_field, d_field).is_zero());
}

TEST_CASE("torsion symmetry and parity") {
    Sampler s(55);
    for (const auto& chart : {r11(), r22()}) {
        for (int trial = 0; trial < 5; ++trial) {
            OddQuasiConnection conn = s.quasi_connection(chart, 2);
            VectorField x = s.field(chart, flip(s), 2);
            VectorField y = s.field(chart, flip(s), 2);
            const unsigned sx = x.parity().value_or(Parity::even()).value();
            const unsigned sy = y.parity().value_or(Parity::even()).value();
            VectorField txy = torsion(conn, x, y);
            VectorField tyx = torsion(conn, y, x);
            if (parity_sign(sx * sy) < 0)
                tyx = -tyx;
            CHECK(txy == tyx);
            const Parity want = x.parity().value_or(Parity::even()) +
                                y.parity().value_or(Parity::even()) + Parity::odd();
            for (std::size_t a = 0; a < chart->dim(); ++a)
                CHECK(txy.component(a).has_parity(want + chart->parity(a)));
        }
    }
}

TEST_CASE("curvature properties") {
    Sampler s(56);
    auto chart = r22();
    // Canonical connection is flat on all basis triples.
    OddQuasiConnection flat_conn = canonical(chart);
    for (std::size_t a = 0; a < chart->dim(); ++a)
        for (std::size_t b = 0; b < chart->dim(); ++b)
            for (std::size_t c = 0; c < chart->dim(); ++c)
                CHECK(curvature(flat_conn, VectorField::basis(chart, a), VectorField::basis(chart, b),
                                VectorField::basis(chart, c))
                          .is_zero());

    for (int trial = 0; trial < 4; ++trial) {
        OddQuasiConnection conn = s.quasi_connection(chart, 1);
        VectorField x = s.field(chart, flip(s), 1);
        VectorField y = s.field(chart, flip(s), 1);
        VectorField z = s.field(chart, flip(s), 1);
        const unsigned sx = x.parity().value_or(Parity::even()).value();
        const unsigned sy = y.parity().value_or(Parity::even()).value();
        // Graded antisymmetry in the first two slots.
        VectorField rxy = curvature(conn, x, y, z);
        VectorField ryx = curvature(conn, y, x, z);
        if (parity_sign((sx + 1) * (sy + 1)) > 0)
            ryx = -ryx;
        CHECK(rxy == ryx);
        // Parity.
        const Parity want = x.parity().value_or(Parity::even()) + y.parity().value_or(Parity::even()) +
                            z.parity().value_or(Parity::even());
        for (std::size_t a = 0; a < chart->dim(); ++a)
            CHECK(rxy.component(a).has_parity(want + chart->parity(a)));
        // R(X,X)Z matches the direct expansion of the definition for both
        // parities of X (even X makes it genuinely nontrivial).
        for (Parity px : {Parity::even(), Parity::odd()}) {
            VectorField xa = s.field(chart, px, 1);
            VectorField direct = nabla(conn, xa, nabla(conn, xa, z));
            VectorField second = nabla(conn, xa, nabla(conn, xa, z));
            direct = parity_sign((px.value() + 1) * (px.value() + 1)) > 0 ? direct - second
                                                                          : direct + second;
            VectorField w = conn.rho().apply(bracket(conn.rho().apply(xa), conn.rho().apply(xa)));
            direct = direct - nabla(conn, w, z);
            CHECK(curvature(conn, xa, xa, z) == direct);
        }
    }

    // C^infty-linearity in Z for involutive and banal rho.
    for (int trial = 0; trial < 4; ++trial) {
        OddQuasiConnection conn = trial % 2 == 0
                                      ? s.odd_connection(chart, 1)
                                      : OddQuasiConnection::banal(chart, s.christoffel(chart, Parity::odd(), 1));
        VectorField x = s.field(chart, flip(s), 1);
        VectorField y = s.field(chart, flip(s), 1);
        VectorField z = s.field(chart, flip(s), 1);
        GradedPoly f = s.nonzero_poly(chart, flip(s), 1);
        const unsigned sx = x.parity().value_or(Parity::even()).value();
        const unsigned sy = y.parity().value_or(Parity::even()).value();
        const unsigned sf = f.parity().value_or(Parity::even()).value();
        VectorField lhs = curvature(conn, x, y, f * z);
        VectorField rhs = f * curvature(conn, x, y, z);
        if (parity_sign((sx + sy) * sf) < 0)
            rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tensoriality anomalies") {
    Sampler s(57);
    auto chart = r22();
    for (int trial = 0; trial < 3; ++trial) {
        VectorField x = s.field(chart, flip(s), 1);
        VectorField y = s.field(chart, flip(s), 1);
        VectorField z = s.field(chart, flip(s), 1);
        GradedPoly f = s.nonzero_poly(chart, flip(s), 1);

        OddQuasiConnection involutive = s.odd_connection(chart, 1);
        TensorialityAnomalies a = tensoriality_anomalies(involutive, x, y, z, f);
        CHECK(a.torsion_anomaly.is_zero());
        CHECK(a.curvature_anomaly.is_zero());

        OddQuasiConnection banal =
            OddQuasiConnection::banal(chart, s.christoffel(chart, Parity::odd(), 1));
        a = tensoriality_anomalies(banal, x, y, z, f);
        CHECK(a.torsion_anomaly.is_zero());
        CHECK(a.curvature_anomaly.is_zero());

        // General quasi-connections: anomalies equal the closed forms.
        OddQuasiConnection quasi = s.quasi_connection(chart, 1);
        a = tensoriality_anomalies(quasi, x, y, z, f);
        CHECK(a.torsion_anomaly == a.torsion_anomaly_predicted);
        CHECK(a.curvature_anomaly == a.curvature_anomaly_predicted);
    }

    // rho = 2 * swap: anomaly rho(X)f (Y - 4Y) is nonzero generically.
    std::vector<std::vector<GradedPoly>> scaled(chart->dim(),
                                                std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    OddEndomorphism rho = swap_rho(chart);
    for (std::size_t a = 0; a < chart->dim(); ++a)
        for (std::size_t b = 0; b < chart->dim(); ++b)
            scaled[a][b] = Rational(2) * rho.entry(a, b);
    OddQuasiConnection doubled(OddEndomorphism(chart, scaled),
                               std::vector<GradedPoly>(chart->dim() * chart->dim() * chart->dim(),
                                                       GradedPoly(chart)));
    VectorField x = VectorField::basis(chart, 0);
    VectorField y = VectorField::basis(chart, 1);
    GradedPoly f = GradedPoly::coordinate(chart, 2); // rho(X)f = 2 del_{xi1}(xi1) != 0
    TensorialityAnomalies doubled_a =
        tensoriality_anomalies(doubled, x, y, VectorField::basis(chart, 2), f);
    CHECK_FALSE(doubled_a.torsion_anomaly.is_zero());
    CHECK(doubled_a.torsion_anomaly == doubled_a.torsion_anomaly_predicted);
    // rho(X)f (Y - rho(rho(Y))) = 2 * (Y - 4Y) = -6 Y.
    CHECK(doubled_a.torsion_anomaly == Rational(-6) * y);
}

TEST_CASE("induce and extract round trips") {
    Sampler s(58);
    for (const auto& chart : {r11(), r22()}) {
        // Flat affine connection + coordinate swap gives the canonical odd connection.
        OddQuasiConnection induced = induce_from_affine(AffineConnection::flat(chart), swap_rho(chart));
        CHECK(induced == canonical(chart));

        for (int trial = 0; trial < 4; ++trial) {
            AffineConnection affine = s.affine_connection(chart, 2);
            OddEndomorphism rho = s.involution(chart);
            OddQuasiConnection conn = induce_from_affine(affine, rho);

            // nabla agrees with the defining composition on samples.
            VectorField x = s.field(chart, flip(s), 1);
            VectorField y = s.field(chart, flip(s), 1);
            CHECK(nabla(conn, x, y) == nabla(affine, rho.apply(x), y));

            // Round trip: extract recovers the affine Christoffels.
            AffineConnection back = extract_affine(conn);
            CHECK(back.christoffel_array() == affine.christoffel_array());

            // And the other way.
            OddQuasiConnection odd = s.odd_connection(chart, 2);
            AffineConnection extracted = extract_affine(odd);
            SampleSet samples;
            samples.fields = {s.field(chart, Parity::even(), 1), s.field(chart, Parity::odd(), 1)};
            samples.functions = {s.nonzero_poly(chart, flip(s), 1)};
            for (const auto& r : axioms_check(extracted, samples)) {
                INFO(r.name, ": ", r.counterexample);
                CHECK(r.passed);
            }
            CHECK(induce_from_affine(extracted, odd.rho()) == odd);
        }

        // Gammabar = 0 with an arbitrary involutive rho gives Gamma = 0.
        OddQuasiConnection from_flat = induce_from_affine(AffineConnection::flat(chart), s.involution(chart));
        for (const auto& entry : from_flat.christoffel_array())
            CHECK(entry.is_zero());
    }
    // Non-involutive rho is rejected.
    auto chart = r11();
    Sampler s2(3);
    CHECK_THROWS_AS(induce_from_affine(AffineConnection::flat(chart), OddEndomorphism::zero(chart)),
                    InputError);
}

TEST_CASE("banal difference") {
    Sampler s(59);
    auto chart = r22();
    OddEndomorphism rho = s.involution(chart);
    std::vector<GradedPoly> gamma1 = s.christoffel(chart, Parity::odd(), 2);
    std::vector<GradedPoly> shift = s.christoffel(chart, Parity::odd(), 2);
    std::vector<GradedPoly> gamma2;
    for (std::size_t i = 0; i < gamma1.size(); ++i)
        gamma2.push_back(gamma1[i] + shift[i]);
    OddQuasiConnection c1(rho, gamma1);
    OddQuasiConnection c2(rho, gamma2);

    BanalTensor zero_b = banal_difference(c1, c1);
    for (std::size_t b = 0; b < chart->dim(); ++b)
        for (std::size_t a = 0; a < chart->dim(); ++a)
            for (std::size_t c = 0; c < chart->dim(); ++c)
                CHECK(zero_b.component(b, a, c).is_zero());

    // Difference recovers (minus) the shift, and B = nabla - nabla'.
    BanalTensor diff = banal_difference(c2, c1);
    for (std::size_t b = 0; b < chart->dim(); ++b)
        for (std::size_t a = 0; a < chart->dim(); ++a)
            for (std::size_t c = 0; c < chart->dim(); ++c)
                CHECK(diff.component(b, a, c) == shift[(b * chart->dim() + a) * chart->dim() + c]);
    VectorField x = s.field(chart, flip(s), 1);
    VectorField y = s.field(chart, flip(s), 1);
    GradedPoly f = s.nonzero_poly(chart, flip(s), 1);
    CHECK(diff.apply(x, y) == nabla(c2, x, y) - nabla(c1, x, y));

    // Exact bilinearity in both slots.
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sf = f.parity().value_or(Parity::even()).value();
    VectorField lhs = diff.apply(f * x, y);
    VectorField rhs = f * diff.apply(x, y);
    if (parity_sign(sf) < 0)
        rhs = -rhs;
    CHECK(lhs == rhs);
    lhs = diff.apply(x, f * y);
    rhs = f * diff.apply(x, y);
    if (parity_sign((sx + 1) * sf) < 0)
        rhs = -rhs;
    CHECK(lhs == rhs);

    // An odd connection minus an induced one is banal (difference well-formed).
    OddQuasiConnection induced = induce_from_affine(s.affine_connection(chart, 1), rho);
    BanalTensor mixed = banal_difference(c1, induced);
    CHECK(mixed.apply(x, y) == nabla(c1, x, y) - nabla(induced, x, y));

    // Differing rho is rejected.
    OddQuasiConnection other(s.involution(chart), gamma1);
    if (!(other.rho() == rho))
        CHECK_THROWS_AS(banal_difference(c1, other), InputError);
}

TEST_CASE("affine combinations of quasi-connections") {
    Sampler s(60);
    auto chart = r12();
    OddQuasiConnection c1 = s.quasi_connection(chart, 1);
    OddQuasiConnection c2 = s.quasi_connection(chart, 1);
    CHECK(affine_combination(c1, c2, Rational(1)) == c1);
    CHECK(affine_combination(c1, c2, Rational(0)) == c2);
    OddQuasiConnection mid = affine_combination(c1, c2, Rational(1, 2));
    SampleSet samples;
    samples.fields = {s.field(chart, Parity::even(), 1), s.field(chart, Parity::odd(), 1)};
    samples.functions = {s.nonzero_poly(chart, flip(s), 1)};
    for (const auto& r : axioms_check(mid, samples)) {
        INFO(r.name, ": ", r.counterexample);
        CHECK(r.passed);
    }
}

TEST_CASE("covariant derivative of functions") {
    CatalogEntry entry = catalog_get("canonical-r11");
    const ChartPtr& chart = entry.chart;
    GradedPoly t = GradedPoly::coordinate(chart, 0);
    GradedPoly theta = GradedPoly::coordinate(chart, 1);
    VectorField dt = VectorField::basis(chart, 0);
    VectorField dth = VectorField::basis(chart, 1);
    CHECK(nabla(entry.connection, dt, theta) == GradedPoly::constant(chart, 1));
    CHECK(nabla(entry.connection, dt, GradedPoly::constant(chart, 4)).is_zero());
    CHECK(nabla(entry.connection, dth, t) == GradedPoly::constant(chart, 1));
}

TEST_CASE("covariant derivative of one-forms and duality") {
    Sampler s(61);
    for (const auto& chart : {r11(), r22()}) {
        OddQuasiConnection conn = s.odd_connection(chart, 1);
        // Gamma = 0 and constant alpha: derivative vanishes.
        OddQuasiConnection flat_conn = canonical(chart);
        OneForm alpha0 = OneForm::basis(chart, 0);
        VectorField x0 = s.field(chart, flip(s), 1);
        CHECK(nabla(flat_conn, x0, alpha0).is_zero());

        for (int trial = 0; trial < 6; ++trial) {
            VectorField x = s.field(chart, flip(s), 1);
            VectorField y = s.field(chart, flip(s), 1);
            OneForm alpha = s.oneform(chart, flip(s), 1);
            const unsigned sx = x.parity().value_or(Parity::even()).value();
            const unsigned sy = y.parity().value_or(Parity::even()).value();
            // rho(X)<Y, alpha> = <nabla_X Y, alpha> + (-1)^{(X+1)Y} <Y, nabla_X alpha>.
            GradedPoly lhs = conn.rho().apply(x, pairing(y, alpha));
            GradedPoly rhs = pairing(nabla(conn, x, y), alpha);
            GradedPoly second = pairing(y, nabla(conn, x, alpha));
            rhs = parity_sign((sx + 1) * sy) > 0 ? rhs + second : rhs - second;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("covariant derivative of mixed tensors") {
    Sampler s(62);
    auto chart = r11();
    // Identity (1,1) tensor with Gamma = 0 is parallel.
    OddQuasiConnection flat_conn = canonical(chart);
    std::vector<GradedPoly> id_comps(chart->dim() * chart->dim(), GradedPoly(chart));
    for (std::size_t a = 0; a < chart->dim(); ++a)
        id_comps[a * chart->dim() + a] = GradedPoly::constant(chart, 1);
    MixedTensor identity_tensor(chart, 1, 1, Parity::even(), id_comps);
    VectorField x = s.field(chart, flip(s), 1);
    for (const auto& comp : nabla(flat_conn, x, identity_tensor).components())
        CHECK(comp.is_zero());

    for (int trial = 0; trial < 6; ++trial) {
        OddQuasiConnection conn = s.odd_connection(chart, 1);
        Parity tp = flip(s);
        VectorField xx = s.nonzero_field(chart, flip(s), 1);
        const unsigned sx = xx.parity().value_or(Parity::even()).value();

        // A tensor with one vector slot reduces to the one-form derivative.
        MixedTensor cov = s.tensor(chart, 1, 0, tp, 1);
        OneForm as_form(chart, cov.components(), tp);
        MixedTensor moved = nabla(conn, xx, cov);
        OneForm expected = nabla(conn, xx, as_form);
        CHECK(moved.components() == expected.components());

        // (1,1): the result evaluated on arguments matches the Leibniz rule.
        MixedTensor t = s.tensor(chart, 1, 1, tp, 1);
        VectorField y = s.nonzero_field(chart, flip(s), 1);
        OneForm alpha = s.oneform(chart, flip(s), 1);
        const unsigned sy = y.parity().value_or(Parity::even()).value();
        const unsigned st = tp.value();
        GradedPoly lhs = evaluate(nabla(conn, xx, t), {y}, {alpha});
        GradedPoly rhs = conn.rho().apply(xx, evaluate(t, {y}, {alpha}));
        if (parity_sign((sx + 1) * sy) < 0)
            rhs = -rhs;
        GradedPoly term_y = evaluate(t, {nabla(conn, xx, y)}, {alpha});
        rhs = parity_sign((sx + 1) * sy) > 0 ? rhs - term_y : rhs + term_y;
        GradedPoly term_a = evaluate(t, {y}, {nabla(conn, xx, alpha)});
        rhs = parity_sign((sx + 1) * st) > 0 ? rhs - term_a : rhs + term_a;
        CHECK(lhs == rhs);

        // The worked (1,1) component formula.
        GradedPoly display(chart);
        for (std::size_t a = 0; a < chart->dim(); ++a)
            for (std::size_t c = 0; c < chart->dim(); ++c) {
                if (y.component(a).is_zero() || xx.component(c).is_zero())
                    continue;
                const unsigned pa = chart->parity(a).value();
                const unsigned pc = chart->parity(c).value();
                GradedPoly inner(chart);
                for (std::size_t dd = 0; dd < chart->dim(); ++dd) {
                    const unsigned pd = chart->parity(dd).value();
                    for (std::size_t b = 0; b < chart->dim(); ++b) {
                        if (alpha.component(b).is_zero())
                            continue;
                        const std::size_t lo_a[1] = {a}, lo_d[1] = {dd};
                        const std::size_t up_b[1] = {b}, up_d[1] = {dd};
                        GradedPoly term1 =
                            conn.rho().entry(c, dd) * partial(t.component({lo_a, 1}, {up_b, 1}), dd) *
                            alpha.component(b);
                        if (parity_sign(pa + pc) < 0)
                            term1 = -term1;
                        GradedPoly term2 = conn.christoffel(a, c, dd) *
                                           t.component({lo_d, 1}, {up_b, 1}) * alpha.component(b);
                        if (parity_sign(pa + pc) > 0)
                            term2 = -term2;
                        GradedPoly term3 = t.component({lo_a, 1}, {up_d, 1}) *
                                           conn.christoffel(dd, c, b) * alpha.component(b);
                        if (parity_sign(st + pc * (pa + pd + 1) + pd) < 0)
                            term3 = -term3;
                        inner = inner + term1 + term2 + term3;
                    }
                }
                GradedPoly contribution = y.component(a) * xx.component(c) * inner;
                if (parity_sign(sx * (pa + 1)) < 0)
                    contribution = -contribution;
                display = display + contribution;
            }
        CHECK(lhs == display);
    }
}

TEST_CASE("metric compatibility check") {
    Sampler s(63);
    auto chart = r11();
    CatalogEntry entry = catalog_get("canonical-r11");
    SampleSet samples;
    samples.fields = {s.field(chart, Parity::even(), 1), s.field(chart, Parity::odd(), 1),
                      s.nonzero_field(chart, flip(s), 1)};

    // The zero metric is trivially compatible.
    Rank2Covariant zero_metric = Rank2Covariant::zero(chart, 2, 0, Parity::odd());
    for (const auto& r : metric_compatibility_check(entry.connection, zero_metric, samples))
        CHECK(r.passed);

    // A generic t-dependent entry breaks compatibility for the canonical connection.
    std::vector<GradedPoly> comps(chart->dim() * chart->dim(), GradedPoly(chart));
    comps[0 * chart->dim() + 1] = GradedPoly::coordinate(chart, 0);
    comps[1 * chart->dim() + 0] = GradedPoly::coordinate(chart, 0);
    Rank2Covariant bad(chart, 2, 0, Parity::odd(), comps);
    bool failed = false;
    SampleSet basis_samples;
    for (std::size_t a = 0; a < chart->dim(); ++a)
        basis_samples.fields.push_back(VectorField::basis(chart, a));
    for (const auto& r : metric_compatibility_check(entry.connection, bad, basis_samples))
        failed = failed || !r.passed;
    CHECK(failed);
}

TEST_CASE("bianchi identity") {
    Sampler s(64);
    // Torsion-free flat case: both sides vanish.
    auto chart = r22();
    OddQuasiConnection flat_conn = canonical(chart);
    for (int trial = 0; trial < 3; ++trial) {
        VectorField x = s.field(chart, flip(s), 1);
        VectorField y = s.field(chart, flip(s), 1);
        VectorField z = s.field(chart, flip(s), 1);
        auto [lhs, rhs] = bianchi_sides(flat_conn, x, y, z);
        CHECK(lhs.is_zero());
        CHECK(rhs.is_zero());
    }
    // Random odd connections on R^{1|1} with the canonical swap.
    auto small = r11();
    for (int trial = 0; trial < 6; ++trial) {
        OddQuasiConnection conn(swap_rho(small), s.christoffel(small, Parity::odd(), 2));
        VectorField x = s.field(small, flip(s), 2);
        VectorField y = s.field(small, flip(s), 2);
        VectorField z = s.field(small, flip(s), 2);
        auto [lhs, rhs] = bianchi_sides(conn, x, y, z);
        CHECK(lhs == rhs);
    }
    // Non-involutive rho is rejected.
    OddQuasiConnection quasi = s.quasi_connection(small, 1);
    if (!is_involution(quasi.rho()))
        CHECK_THROWS_AS(
            bianchi_sides(quasi, VectorField::basis(small, 0), VectorField::basis(small, 0),
                          VectorField::basis(small, 0)),
            InputError);
}

TEST_CASE("odd divergence") {
    CatalogEntry susy = susy_r11();
    const ChartPtr& chart = susy.chart;
    GradedPoly t = GradedPoly::coordinate(chart, 0);
    GradedPoly theta = GradedPoly::coordinate(chart, 1);
    const VectorField& p = susy.named_fields.at("P");
    const VectorField& d_field = susy.named_fields.at("D");

    // Frame formula Div X = D(X^P) - (-1)^X P(X^D) against the general operator.
    Sampler s(65);
    for (int trial = 0; trial < 8; ++trial) {
        VectorField x = s.field(chart, flip(s), 2);
        const unsigned sx = x.parity().value_or(Parity::even()).value();
        auto comps = susy.frame->frame_components(x);
        GradedPoly frame_div = apply(d_field, comps[0]);
        GradedPoly second = apply(p, comps[1]);
        frame_div = parity_sign(sx) > 0 ? frame_div - second : frame_div + second;
        CHECK(divergence(susy.connection, x) == frame_div);
    }

    CHECK(divergence(susy.connection, t * p) == -theta);
    CHECK(divergence(susy.connection, t * d_field) == GradedPoly::constant(chart, 1));

    // Leibniz rule.
    for (const auto& ch : {r11(), r22()}) {
        OddQuasiConnection conn = s.odd_connection(ch, 2);
        for (int trial = 0; trial < 6; ++trial) {
            VectorField x = s.field(ch, flip(s), 2);
            GradedPoly f = s.nonzero_poly(ch, flip(s), 2);
            const unsigned sx = x.parity().value_or(Parity::even()).value();
            const unsigned sf = f.parity().value_or(Parity::even()).value();
            GradedPoly lhs = divergence(conn, f * x);
            GradedPoly rhs = f * divergence(conn, x);
            if (parity_sign(sf) < 0)
                rhs = -rhs;
            GradedPoly rho_term = conn.rho().apply(x, f);
            rhs = parity_sign(sx * sf) > 0 ? rhs + rho_term : rhs - rho_term;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("connection transformation law") {
    Sampler s(66);
    for (const auto& chart : {r12(), r22()}) {
        OddQuasiConnection conn = s.quasi_connection(chart, 1);

        // Identity change leaves the data unchanged.
        std::vector<GradedPoly> images;
        for (std::size_t a = 0; a < chart->dim(); ++a)
            images.push_back(GradedPoly::coordinate(chart, a));
        CoordinateChange ident(chart, chart, images, images);
        CHECK(transform(conn, ident) == conn);

        for (int trial = 0; trial < 4; ++trial) {
            CoordinateChange c = s.change(chart);
            OddQuasiConnection primed = transform(conn, c);
            VectorField x = s.field(chart, flip(s), 1);
            VectorField y = s.field(chart, flip(s), 1);
            // Covariance oracle: nabla computed both ways agrees.
            CHECK(nabla(primed, transform(x, c), transform(y, c)) == transform(nabla(conn, x, y), c));
            // rho transforms tensorially.
            CHECK(primed.rho().apply(transform(x, c)) == transform(conn.rho().apply(x), c));
        }
    }
}
