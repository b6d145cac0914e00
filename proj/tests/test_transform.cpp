#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oddconn/sampling.hpp"
#include "oddconn/tensor.hpp"

using namespace oddconn;

namespace {

ChartPtr r11() { return make_chart({"t"}, {"theta"}); }
ChartPtr r12() { return make_chart({"t"}, {"theta1", "theta2"}); }

std::vector<GradedPoly> identity_images(const ChartPtr& chart) {
    std::vector<GradedPoly> images;
    for (std::size_t a = 0; a < chart->dim(); ++a)
        images.push_back(GradedPoly::coordinate(chart, a));
    return images;
}

CoordinateChange identity_change(const ChartPtr& chart) {
    return CoordinateChange(chart, chart, identity_images(chart), identity_images(chart));
}

/// t' = t + theta1 theta2 on R^{1|2}, odd coordinates fixed.
CoordinateChange soul_shear_r12(const ChartPtr& chart) {
    GradedPoly soul = GradedPoly::coordinate(chart, 1) * GradedPoly::coordinate(chart, 2);
    auto fwd = identity_images(chart);
    auto inv = identity_images(chart);
    fwd[0] = fwd[0] + soul;
    inv[0] = inv[0] - soul;
    return CoordinateChange(chart, chart, std::move(fwd), std::move(inv));
}

} // namespace

TEST_CASE("coordinate change validation") {
    auto chart = r12();
    CHECK_NOTHROW(identity_change(chart));
    CHECK_NOTHROW(soul_shear_r12(chart));

    // Non-inverse pair is rejected exactly.
    auto fwd = identity_images(chart);
    auto inv = identity_images(chart);
    fwd[0] = Rational(2) * fwd[0];
    CHECK_THROWS_AS(CoordinateChange(chart, chart, fwd, inv), InputError);

    // Parity-violating image is rejected.
    auto bad = identity_images(chart);
    bad[0] = GradedPoly::coordinate(chart, 1);
    CHECK_THROWS_AS(CoordinateChange(chart, chart, bad, identity_images(chart)), ParityError);
}

TEST_CASE("vector transformation") {
    auto chart = r12();
    CoordinateChange ident = identity_change(chart);
    CoordinateChange shear = soul_shear_r12(chart);
    Sampler s(5);

    VectorField dt = VectorField::basis(chart, 0);
    CHECK(transform(dt, ident) == dt);
    // Jacobian of the soul shear sends d_t to d_{t'}.
    CHECK(transform(dt, shear) == dt);
    // d_{theta1} picks up theta2 d_t.
    VectorField dth1 = VectorField::basis(chart, 1);
    VectorField expected = dth1 + GradedPoly::coordinate(chart, 2) * dt;
    CHECK(transform(dth1, shear) == expected);

    for (int trial = 0; trial < 12; ++trial) {
        VectorField x = s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        CoordinateChange c = s.change(chart);
        // Round trip through c then c^{-1}.
        CHECK(transform(transform(x, c), c.inverted()) == x);
        // vf_apply commutes with the transformation.
        GradedPoly f = s.poly(chart, std::nullopt, 2);
        CHECK(apply(transform(x, c), c.to_target(f)) == c.to_target(apply(x, f)));
    }
}

TEST_CASE("pairing invariance") {
    auto chart = r12();
    Sampler s(6);
    for (int trial = 0; trial < 12; ++trial) {
        VectorField x = s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        OneForm alpha = s.oneform(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        CoordinateChange c = s.change(chart);
        CHECK(pairing(transform(x, c), transform(alpha, c)) == c.to_target(pairing(x, alpha)));
    }
}

TEST_CASE("one-form transformation equals the valence-(1,0) tensor law") {
    auto chart = r12();
    Sampler s(7);
    for (int trial = 0; trial < 8; ++trial) {
        Parity p = s.uniform(2) ? Parity::odd() : Parity::even();
        OneForm alpha = s.oneform(chart, p, 2);
        CoordinateChange c = s.change(chart);
        MixedTensor as_tensor(chart, 1, 0, p, alpha.components());
        MixedTensor moved = transform(as_tensor, c);
        OneForm direct = transform(alpha, c);
        CHECK(moved.components() == direct.components());
    }
}

TEST_CASE("scalar and identity tensor transformation") {
    auto chart = r12();
    Sampler s(8);
    CoordinateChange c = s.change(chart);
    GradedPoly f = s.poly(chart, std::nullopt, 2);
    MixedTensor scalar(chart, 0, 0, f.parity().value_or(Parity::even()),
                       {f.is_homogeneous() ? f : f.parity_part(Parity::even())});
    MixedTensor moved = transform(scalar, c);
    CHECK(moved.scalar() == c.to_target(scalar.scalar()));

    MixedTensor t = s.tensor(chart, 1, 1, Parity::odd(), 2);
    CHECK(transform(t, identity_change(chart)) == t);
}

TEST_CASE("slotwise evaluation matches the transformation law") {
    // Applying the transformed tensor to transformed arguments must equal
    // transforming the scalar T(args); this pins the evaluation convention
    // against the chi sign of the component law.
    Sampler s(9);
    for (const auto& chart : {r11(), r12()}) {
        for (int trial = 0; trial < 10; ++trial) {
            CoordinateChange c = s.change(chart);
            struct Valence {
                std::size_t p, q;
            };
            for (Valence v : {Valence{1, 1}, Valence{2, 0}, Valence{0, 2}, Valence{1, 2}, Valence{2, 1}}) {
                Parity tp = s.uniform(2) ? Parity::odd() : Parity::even();
                MixedTensor t = s.tensor(chart, v.p, v.q, tp, 1);
                std::vector<VectorField> vecs;
                std::vector<OneForm> forms;
                std::vector<VectorField> vecs_t;
                std::vector<OneForm> forms_t;
                for (std::size_t i = 0; i < v.p; ++i) {
                    vecs.push_back(s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 1));
                    vecs_t.push_back(transform(vecs.back(), c));
                }
                for (std::size_t j = 0; j < v.q; ++j) {
                    forms.push_back(s.oneform(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 1));
                    forms_t.push_back(transform(forms.back(), c));
                }
                CHECK(evaluate(transform(t, c), vecs_t, forms_t) ==
                      c.to_target(evaluate(t, vecs, forms)));
            }
        }
    }
}

TEST_CASE("tensor transformation is functorial") {
    auto chart = r12();
    Sampler s(10);
    for (int trial = 0; trial < 6; ++trial) {
        CoordinateChange c1 = s.change(chart);
        CoordinateChange c2 = s.change(chart);
        CoordinateChange both = CoordinateChange::compose(c1, c2);
        MixedTensor t = s.tensor(chart, 1, 1, s.uniform(2) ? Parity::odd() : Parity::even(), 1);
        CHECK(transform(transform(t, c1), c2) == transform(t, both));
    }
}

TEST_CASE("evaluation reproduces the (1,1) contraction") {
    auto chart = r11();
    Sampler s(13);
    for (int trial = 0; trial < 10; ++trial) {
        MixedTensor t = s.tensor(chart, 1, 1, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        VectorField y = s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        OneForm alpha = s.oneform(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 2);
        // T(Y; alpha) = Y^a T_a^b alpha_b, no extra signs.
        GradedPoly expected(chart);
        for (std::size_t a = 0; a < chart->dim(); ++a)
            for (std::size_t b = 0; b < chart->dim(); ++b) {
                const std::size_t lo[1] = {a}, up[1] = {b};
                expected = expected +
                           y.component(a) * t.component({lo, 1}, {up, 1}) * alpha.component(b);
            }
        CHECK(evaluate(t, {y}, {alpha}) == expected);
    }
}

TEST_CASE("vector-slot multilinearity of evaluation") {
    auto chart = r12();
    Sampler s(14);
    for (int trial = 0; trial < 10; ++trial) {
        MixedTensor g = s.tensor(chart, 2, 0, s.uniform(2) ? Parity::odd() : Parity::even(), 1);
        VectorField y = s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 1);
        VectorField z = s.field(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 1);
        GradedPoly f = s.nonzero_poly(chart, s.uniform(2) ? Parity::odd() : Parity::even(), 1);
        const unsigned sf = f.parity().value_or(Parity::even()).value();
        const unsigned sy = y.parity().value_or(Parity::even()).value();
        // Slot 1: G(fY, Z) = f G(Y, Z).
        CHECK(evaluate(g, {f * y, z}, {}) == f * evaluate(g, {y, z}, {}));
        // Slot 2: the coefficient crosses the first argument.
        GradedPoly rhs = f * evaluate(g, {y, z}, {});
        if (parity_sign(sf * sy) < 0)
            rhs = -rhs;
        CHECK(evaluate(g, {y, f * z}, {}) == rhs);
    }
}
