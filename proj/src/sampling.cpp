#include "oddconn/sampling.hpp"

#include "oddconn/errors.hpp"
#include "oddconn/linalg.hpp"

#include <algorithm>

namespace oddconn {

std::uint64_t Sampler::uniform(std::uint64_t n) {
    return n == 0 ? 0 : rng_() % n;
}

int Sampler::int_range(int lo, int hi) {
    return lo + static_cast<int>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Sampler::coefficient() {
    int num = 0;
    while (num == 0)
        num = int_range(-3, 3);
    const int den = int_range(0, 1) ? 2 : 1;
    return Rational(num, den);
}

namespace {

void enumerate_exponents(std::size_t slots, unsigned budget, std::vector<std::uint32_t>& cur,
                         std::vector<std::vector<std::uint32_t>>& out) {
    if (cur.size() == slots) {
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
        cur.push_back(e);
        enumerate_exponents(slots, budget - e, cur, out);
        cur.pop_back();
    }
}

} // namespace

GradedPoly Sampler::poly(const ChartPtr& chart, std::optional<Parity> parity, unsigned max_even_degree,
                         unsigned density_percent) {
    std::vector<std::vector<std::uint32_t>> exponents;
    std::vector<std::uint32_t> cur;
    enumerate_exponents(chart->even_dim(), max_even_degree, cur, exponents);
    const std::uint64_t masks = std::uint64_t(1) << chart->odd_dim();

    const std::uint64_t candidates = exponents.size() * masks;
    // Keep the expected term count moderate on large charts.
    unsigned density = density_percent;
    if (candidates > 0)
        density = std::min<std::uint64_t>(density, std::max<std::uint64_t>(5, 900 / candidates));

    GradedPoly out(chart);
    for (const auto& exp : exponents)
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            Monomial m{exp, mask};
            if (parity && m.parity() != *parity)
                continue;
            if (uniform(100) >= density)
                continue;
            out = out + GradedPoly::monomial(chart, std::move(m), coefficient());
        }
    return out;
}

GradedPoly Sampler::nonzero_poly(const ChartPtr& chart, std::optional<Parity> parity,
                                 unsigned max_even_degree) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        GradedPoly f = poly(chart, parity, max_even_degree);
        if (!f.is_zero())
            return f;
    }
    // Deterministic fallback: a single legal monomial.
    if (!parity || !parity->is_odd())
        return GradedPoly::constant(chart, 1);
    if (chart->odd_dim() == 0)
        throw InputError("nonzero_poly: no odd monomials exist on a purely even chart");
    return GradedPoly::coordinate(chart, chart->even_dim());
}

VectorField Sampler::field(const ChartPtr& chart, Parity parity, unsigned max_even_degree) {
    std::vector<GradedPoly> comps;
    comps.reserve(chart->dim());
    for (std::size_t a = 0; a < chart->dim(); ++a)
        comps.push_back(poly(chart, parity + chart->parity(a), max_even_degree));
    return VectorField(chart, std::move(comps), parity);
}

VectorField Sampler::nonzero_field(const ChartPtr& chart, Parity parity, unsigned max_even_degree) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        VectorField x = field(chart, parity, max_even_degree);
        if (!x.is_zero())
            return x;
    }
    VectorField x = VectorField::basis(chart, 0);
    if (x.parity() != parity)
        x = nonzero_poly(chart, Parity::odd(), 0) * x;
    return x;
}

OneForm Sampler::oneform(const ChartPtr& chart, Parity parity, unsigned max_even_degree) {
    std::vector<GradedPoly> comps;
    comps.reserve(chart->dim());
    for (std::size_t a = 0; a < chart->dim(); ++a)
        comps.push_back(poly(chart, parity + chart->parity(a), max_even_degree));
    return OneForm(chart, std::move(comps), parity);
}

OddEndomorphism Sampler::endomorphism(const ChartPtr& chart, unsigned max_even_degree) {
    const std::size_t d = chart->dim();
    std::vector<std::vector<GradedPoly>> entries(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            entries[a][b] =
                poly(chart, chart->parity(a) + chart->parity(b) + Parity::odd(), max_even_degree);
    return OddEndomorphism(chart, std::move(entries));
}

namespace {

/// Random invertible rational matrix as (unit lower) (unit upper) (diagonal).
RationalMatrix random_invertible(Sampler& s, std::size_t n) {
    RationalMatrix m(n, std::vector<Rational>(n, 0));
    RationalMatrix lower(n, std::vector<Rational>(n, 0)), upper(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        lower[i][i] = 1;
        upper[i][i] = 1;
        for (std::size_t j = 0; j < i; ++j)
            lower[i][j] = s.int_range(-2, 2);
        for (std::size_t j = i + 1; j < n; ++j)
            upper[i][j] = s.int_range(-2, 2);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                acc += lower[i][k] * upper[k][j];
            m[i][j] = acc;
        }
    for (std::size_t i = 0; i < n; ++i) {
        const Rational scale = s.int_range(0, 1) ? Rational(1) : Rational(-1);
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] *= scale;
    }
    return m;
}

} // namespace

OddEndomorphism Sampler::involution(const ChartPtr& chart) {
    const std::size_t n = chart->even_dim();
    if (n != chart->odd_dim())
        throw InputError("involution: requires an n|n chart");
    const std::size_t d = chart->dim();
    // Conjugate the coordinate swap by a constant block-diagonal invertible
    // matrix; the result is again an odd involution.
    RationalMatrix a(d, std::vector<Rational>(d, 0));
    RationalMatrix even_block = random_invertible(*this, n);
    RationalMatrix odd_block = random_invertible(*this, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = even_block[i][j];
            a[n + i][n + j] = odd_block[i][j];
        }
    RationalMatrix a_inv = rational_inverse(a);
    // swap(c, d) = 1 iff d = c +- n; rho'_{a}^{e} = Ainv_a^c swap_c^d A_d^e.
    std::vector<std::vector<GradedPoly>> entries(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t e = 0; e < d; ++e) {
            Rational acc = 0;
            for (std::size_t c = 0; c < d; ++c) {
                const std::size_t swapped = c < n ? c + n : c - n;
                acc += a_inv[p][c] * a[swapped][e];
            }
            entries[p][e] = GradedPoly::constant(chart, acc);
        }
    return OddEndomorphism(chart, std::move(entries));
}

std::vector<GradedPoly> Sampler::christoffel(const ChartPtr& chart, Parity overall,
                                             unsigned max_even_degree) {
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma;
    gamma.reserve(d * d * d);
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c)
                gamma.push_back(poly(chart,
                                     overall + chart->parity(a) + chart->parity(b) + chart->parity(c),
                                     max_even_degree));
    return gamma;
}

OddQuasiConnection Sampler::quasi_connection(const ChartPtr& chart, unsigned max_even_degree) {
    return OddQuasiConnection(endomorphism(chart, max_even_degree),
                              christoffel(chart, Parity::odd(), max_even_degree));
}

OddQuasiConnection Sampler::odd_connection(const ChartPtr& chart, unsigned max_even_degree) {
    return OddQuasiConnection(involution(chart), christoffel(chart, Parity::odd(), max_even_degree));
}

AffineConnection Sampler::affine_connection(const ChartPtr& chart, unsigned max_even_degree) {
    return AffineConnection(chart, christoffel(chart, Parity::even(), max_even_degree));
}

MixedTensor Sampler::tensor(const ChartPtr& chart, std::size_t p, std::size_t q, Parity parity,
                            unsigned max_even_degree) {
    std::vector<std::size_t> idx(p + q, 0);
    std::vector<GradedPoly> comps;
    do {
        Parity want = parity;
        for (std::size_t s = 0; s < p + q; ++s)
            want = want + chart->parity(idx[s]);
        comps.push_back(poly(chart, want, max_even_degree));
    } while (next_index(idx, chart->dim()));
    return MixedTensor(chart, p, q, parity, std::move(comps));
}

namespace {

std::vector<GradedPoly> identity_images(const ChartPtr& chart) {
    std::vector<GradedPoly> images;
    images.reserve(chart->dim());
    for (std::size_t a = 0; a < chart->dim(); ++a)
        images.push_back(GradedPoly::coordinate(chart, a));
    return images;
}

} // namespace

CoordinateChange Sampler::change(const ChartPtr& chart) {
    const std::size_t n = chart->even_dim();
    const std::size_t m = chart->odd_dim();

    auto affine_even = [&]() {
        RationalMatrix a = random_invertible(*this, n);
        RationalMatrix a_inv = rational_inverse(a);
        std::vector<Rational> shift(n);
        for (auto& b : shift)
            b = int_range(0, 1) ? coefficient() : Rational(0);
        std::vector<GradedPoly> fwd = identity_images(chart);
        std::vector<GradedPoly> inv = identity_images(chart);
        for (std::size_t i = 0; i < n; ++i) {
            GradedPoly f = GradedPoly::constant(chart, shift[i]);
            GradedPoly g(chart);
            for (std::size_t j = 0; j < n; ++j) {
                f = f + a[i][j] * GradedPoly::coordinate(chart, j);
                g = g + a_inv[i][j] * (GradedPoly::coordinate(chart, j) -
                                       GradedPoly::constant(chart, shift[j]));
            }
            fwd[i] = std::move(f);
            inv[i] = std::move(g);
        }
        return CoordinateChange(chart, chart, std::move(fwd), std::move(inv));
    };

    auto linear_odd = [&]() {
        RationalMatrix b = random_invertible(*this, m);
        RationalMatrix b_inv = rational_inverse(b);
        std::vector<GradedPoly> fwd = identity_images(chart);
        std::vector<GradedPoly> inv = identity_images(chart);
        for (std::size_t i = 0; i < m; ++i) {
            GradedPoly f(chart), g(chart);
            for (std::size_t j = 0; j < m; ++j) {
                f = f + b[i][j] * GradedPoly::coordinate(chart, n + j);
                g = g + b_inv[i][j] * GradedPoly::coordinate(chart, n + j);
            }
            fwd[n + i] = std::move(f);
            inv[n + i] = std::move(g);
        }
        return CoordinateChange(chart, chart, std::move(fwd), std::move(inv));
    };

    auto even_coords_poly = [&](unsigned deg) {
        // Polynomial in the even coordinates only.
        GradedPoly f = poly(chart, Parity::even(), deg, 40);
        GradedPoly restricted(chart);
        for (const auto& [mon, coeff] : f.terms())
            if (mon.odd_mask == 0)
                restricted = restricted + GradedPoly::monomial(chart, mon, coeff);
        return restricted;
    };

    auto odd_shear = [&]() {
        const std::size_t i = uniform(m);
        std::size_t j = uniform(m - 1);
        if (j >= i)
            ++j;
        GradedPoly f = even_coords_poly(2);
        GradedPoly delta = f * GradedPoly::coordinate(chart, n + j);
        std::vector<GradedPoly> fwd = identity_images(chart);
        std::vector<GradedPoly> inv = identity_images(chart);
        fwd[n + i] = fwd[n + i] + delta;
        inv[n + i] = inv[n + i] - delta;
        return CoordinateChange(chart, chart, std::move(fwd), std::move(inv));
    };

    auto soul_shear = [&]() {
        const std::size_t i = uniform(n);
        const std::size_t j1 = uniform(m - 1); // j1 <= m-2 so a partner exists
        const std::size_t j2 = j1 + 1 + uniform(m - 1 - j1);
        GradedPoly f = even_coords_poly(2);
        if (f.is_zero())
            f = GradedPoly::constant(chart, 1);
        GradedPoly delta =
            f * GradedPoly::coordinate(chart, n + j1) * GradedPoly::coordinate(chart, n + j2);
        std::vector<GradedPoly> fwd = identity_images(chart);
        std::vector<GradedPoly> inv = identity_images(chart);
        fwd[i] = fwd[i] + delta;
        inv[i] = inv[i] - delta;
        return CoordinateChange(chart, chart, std::move(fwd), std::move(inv));
    };

    std::vector<int> kinds;
    if (n >= 1)
        kinds.push_back(0);
    if (m >= 1)
        kinds.push_back(1);
    if (m >= 2)
        kinds.push_back(2);
    if (n >= 1 && m >= 2)
        kinds.push_back(3);
    if (kinds.empty())
        throw InputError("change: chart has no coordinates");

    auto generate = [&](int kind) {
        switch (kind) {
        case 0:
            return affine_even();
        case 1:
            return linear_odd();
        case 2:
            return odd_shear();
        default:
            return soul_shear();
        }
    };

    CoordinateChange out = generate(kinds[uniform(kinds.size())]);
    const int extra = int_range(0, 2);
    for (int k = 0; k < extra; ++k)
        out = CoordinateChange::compose(out, generate(kinds[uniform(kinds.size())]));
    return out;
}

std::vector<CoordinateChange> Sampler::change_library(const ChartPtr& chart, std::size_t count) {
    std::vector<CoordinateChange> lib;
    lib.emplace_back(chart, chart, identity_images(chart), identity_images(chart));
    while (lib.size() < count)
        lib.push_back(change(chart));
    return lib;
}

} // namespace oddconn
