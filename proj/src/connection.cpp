#include "oddconn/connection.hpp"

#include "oddconn/errors.hpp"

#include <sstream>

namespace oddconn {

namespace {

std::string vf_str(const VectorField& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t a = 0; a < x.components().size(); ++a) {
        if (a)
            os << ", ";
        os << x.component(a).str();
    }
    os << ")";
    return os.str();
}

void check_christoffel(const Chart& chart, const std::vector<GradedPoly>& gamma, Parity overall,
                       const char* what) {
    const std::size_t d = chart.dim();
    if (gamma.size() != d * d * d)
        throw InputError(std::string(what) + ": expected " + std::to_string(d * d * d) +
                         " Christoffel entries");
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                const GradedPoly& entry = gamma[(b * d + a) * d + c];
                require_same_chart(*entry.chart(), chart, what);
                Parity want = overall + chart.parity(a) + chart.parity(b) + chart.parity(c);
                if (!entry.has_parity(want))
                    throw ParityError(std::string(what) + ": entry (" + chart.name(b) + "," +
                                      chart.name(a) + "," + chart.name(c) + ") must have parity " +
                                      to_string(want));
            }
}

/// Shared splitter: runs op over all homogeneous part pairs.
template <typename Op>
VectorField bilinear_parts(const VectorField& x, const VectorField& y, Op&& op) {
    VectorField out = VectorField::zero(x.chart());
    for (const auto& xp : x.homogeneous_parts())
        for (const auto& yp : y.homogeneous_parts())
            out += op(xp, yp);
    return out;
}

} // namespace

OddEndomorphism::OddEndomorphism(ChartPtr chart, std::vector<std::vector<GradedPoly>> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
    const std::size_t d = chart_->dim();
    if (entries_.size() != d)
        throw InputError("OddEndomorphism: expected a " + std::to_string(d) + "-row matrix");
    for (std::size_t a = 0; a < d; ++a) {
        if (entries_[a].size() != d)
            throw InputError("OddEndomorphism: matrix is not square");
        for (std::size_t b = 0; b < d; ++b) {
            require_same_chart(*entries_[a][b].chart(), *chart_, "OddEndomorphism");
            Parity want = chart_->parity(a) + chart_->parity(b) + Parity::odd();
            if (!entries_[a][b].has_parity(want))
                throw ParityError("OddEndomorphism: entry rho(" + chart_->name(a) + "," + chart_->name(b) +
                                  ") must have parity " + to_string(want));
        }
    }
}

OddEndomorphism OddEndomorphism::zero(ChartPtr chart) {
    std::vector<std::vector<GradedPoly>> entries(chart->dim(),
                                                 std::vector<GradedPoly>(chart->dim(), GradedPoly(chart)));
    return OddEndomorphism(std::move(chart), std::move(entries));
}

VectorField OddEndomorphism::apply(const VectorField& x) const {
    require_same_chart(*x.chart(), *chart_, "rho");
    if (!x.is_homogeneous()) {
        VectorField out = VectorField::zero(chart_);
        for (const auto& part : x.homogeneous_parts())
            out += apply(part);
        return out;
    }
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const std::size_t d = chart_->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(chart_));
    for (std::size_t b = 0; b < d; ++b) {
        GradedPoly acc(chart_);
        for (std::size_t a = 0; a < d; ++a) {
            if (x.component(a).is_zero() || entries_[a][b].is_zero())
                continue;
            GradedPoly term = x.component(a) * entries_[a][b];
            if (parity_sign(sx + chart_->parity(a).value()) > 0)
                    acc += term;
                else
                    acc -= term;
        }
        comps[b] = acc;
    }
    return VectorField(chart_, std::move(comps), x.parity().value_or(Parity::even()) + Parity::odd());
}

GradedPoly OddEndomorphism::apply(const VectorField& x, const GradedPoly& f) const {
    return oddconn::apply(apply(x), f);
}

bool OddEndomorphism::is_zero() const {
    for (const auto& row : entries_)
        for (const auto& e : row)
            if (!e.is_zero())
                return false;
    return true;
}

bool is_involution(const OddEndomorphism& rho) {
    for (std::size_t a = 0; a < rho.chart()->dim(); ++a) {
        VectorField e = VectorField::basis(rho.chart(), a);
        if (rho.apply(rho.apply(e)) != e)
            return false;
    }
    return true;
}

bool clifford_dirac(const OddEndomorphism& rho1, const OddEndomorphism& rho2) {
    require_same_chart(*rho1.chart(), *rho2.chart(), "clifford_dirac");
    for (std::size_t a = 0; a < rho1.chart()->dim(); ++a) {
        VectorField e = VectorField::basis(rho1.chart(), a);
        VectorField anti = rho1.apply(rho2.apply(e)) + rho2.apply(rho1.apply(e));
        if (anti != Rational(2) * e)
            return false;
    }
    return true;
}

AffineConnection::AffineConnection(ChartPtr chart, std::vector<GradedPoly> christoffel)
    : chart_(std::move(chart)), gamma_(std::move(christoffel)) {
    check_christoffel(*chart_, gamma_, Parity::even(), "AffineConnection");
}

AffineConnection AffineConnection::flat(ChartPtr chart) {
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    return AffineConnection(std::move(chart), std::move(gamma));
}

VectorField nabla(const AffineConnection& conn, const VectorField& x, const VectorField& y) {
    require_same_chart(*x.chart(), *conn.chart(), "nabla");
    require_same_chart(*y.chart(), *conn.chart(), "nabla");
    if (!y.is_homogeneous())
        return bilinear_parts(x, y, [&](const VectorField& xp, const VectorField& yp) {
            return nabla(conn, xp, yp);
        });
    const unsigned sy = y.parity().value_or(Parity::even()).value();
    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(chart));
    for (std::size_t c = 0; c < d; ++c) {
        GradedPoly acc(chart);
        for (std::size_t a = 0; a < d; ++a) {
            if (x.component(a).is_zero())
                continue;
            GradedPoly inner = partial(y.component(c), a);
            for (std::size_t b = 0; b < d; ++b) {
                if (y.component(b).is_zero() || conn.christoffel(b, a, c).is_zero())
                    continue;
                GradedPoly term = y.component(b) * conn.christoffel(b, a, c);
                const unsigned e = chart->parity(a).value() * (sy + chart->parity(b).value());
                if (parity_sign(e) > 0)
                    inner += term;
                else
                    inner -= term;
            }
            acc += x.component(a) * inner;
        }
        comps[c] = acc;
    }
    if (x.is_homogeneous())
        return VectorField(chart, std::move(comps),
                           x.parity().value_or(Parity::even()) + y.parity().value_or(Parity::even()));
    return VectorField(chart, std::move(comps));
}

OddQuasiConnection::OddQuasiConnection(OddEndomorphism rho, std::vector<GradedPoly> christoffel)
    : rho_(std::move(rho)), gamma_(std::move(christoffel)) {
    check_christoffel(*chart(), gamma_, Parity::odd(), "OddQuasiConnection");
}

OddQuasiConnection OddQuasiConnection::banal(ChartPtr chart, std::vector<GradedPoly> christoffel) {
    return OddQuasiConnection(OddEndomorphism::zero(std::move(chart)), std::move(christoffel));
}

VectorField nabla(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y) {
    require_same_chart(*x.chart(), *conn.chart(), "nabla");
    require_same_chart(*y.chart(), *conn.chart(), "nabla");
    if (!x.is_homogeneous() || !y.is_homogeneous())
        return bilinear_parts(x, y, [&](const VectorField& xp, const VectorField& yp) {
            return nabla(conn, xp, yp);
        });
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sy = y.parity().value_or(Parity::even()).value();
    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(chart));
    for (std::size_t c = 0; c < d; ++c) {
        GradedPoly acc(chart);
        std::vector<GradedPoly> dyc;
        dyc.reserve(d);
        for (std::size_t b = 0; b < d; ++b)
            dyc.push_back(partial(y.component(c), b));
        for (std::size_t a = 0; a < d; ++a) {
            if (x.component(a).is_zero())
                continue;
            const unsigned pa = chart->parity(a).value();
            GradedPoly inner(chart);
            for (std::size_t b = 0; b < d; ++b) {
                if (!conn.rho().entry(a, b).is_zero() && !dyc[b].is_zero())
                    inner += conn.rho().entry(a, b) * dyc[b];
                if (!y.component(b).is_zero() && !conn.christoffel(b, a, c).is_zero()) {
                    GradedPoly term = y.component(b) * conn.christoffel(b, a, c);
                    const unsigned e = (pa + 1) * (sy + chart->parity(b).value());
                    if (parity_sign(e) > 0)
                    inner += term;
                else
                    inner -= term;
                }
            }
            if (inner.is_zero())
                continue;
            GradedPoly term = x.component(a) * inner;
            if (parity_sign(sx + pa) > 0)
                    acc += term;
                else
                    acc -= term;
        }
        comps[c] = acc;
    }
    return VectorField(chart, std::move(comps),
                       x.parity().value_or(Parity::even()) + y.parity().value_or(Parity::even()) +
                           Parity::odd());
}

GradedPoly nabla(const OddQuasiConnection& conn, const VectorField& x, const GradedPoly& f) {
    return conn.rho().apply(x, f);
}

OneForm nabla(const OddQuasiConnection& conn, const VectorField& x, const OneForm& alpha) {
    require_same_chart(*x.chart(), *conn.chart(), "nabla");
    require_same_chart(*alpha.chart(), *conn.chart(), "nabla");
    if (!x.is_homogeneous() || !alpha.is_homogeneous()) {
        OneForm out = OneForm::zero(conn.chart());
        for (const auto& xp : x.homogeneous_parts())
            for (const auto& ap : alpha.homogeneous_parts())
                out += nabla(conn, xp, ap);
        return out;
    }
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(chart));
    for (std::size_t a = 0; a < d; ++a) {
        const unsigned pa = chart->parity(a).value();
        GradedPoly acc(chart);
        for (std::size_t b = 0; b < d; ++b) {
            if (x.component(b).is_zero())
                continue;
            const unsigned pb = chart->parity(b).value();
            GradedPoly inner(chart);
            for (std::size_t c = 0; c < d; ++c) {
                if (!conn.rho().entry(b, c).is_zero()) {
                    GradedPoly da = partial(alpha.component(a), c);
                    if (!da.is_zero())
                        inner += conn.rho().entry(b, c) * da;
                }
                if (!conn.christoffel(a, b, c).is_zero() && !alpha.component(c).is_zero())
                    inner -= conn.christoffel(a, b, c) * alpha.component(c);
            }
            if (inner.is_zero())
                continue;
            GradedPoly term = x.component(b) * inner;
            const unsigned e = sx * (pa + 1) + pa + pb;
            if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
        }
        comps[a] = acc;
    }
    return OneForm(chart, std::move(comps),
                   x.parity().value_or(Parity::even()) + alpha.parity().value_or(Parity::even()) +
                       Parity::odd());
}

MixedTensor nabla(const OddQuasiConnection& conn, const VectorField& x, const MixedTensor& t) {
    require_same_chart(*x.chart(), *conn.chart(), "nabla");
    require_same_chart(*t.chart(), *conn.chart(), "nabla");
    if (!x.is_homogeneous())
        throw InputError("nabla: tensor derivative requires a homogeneous direction field");
    const std::size_t p = t.vector_slots(), q = t.form_slots();
    const Parity result_parity = t.parity() + x.parity().value_or(Parity::even()) + Parity::odd();
    if (p == 0 && q == 0)
        return MixedTensor(conn.chart(), 0, 0, result_parity, {nabla(conn, x, t.scalar())});

    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    const unsigned sx1 = x.parity().value_or(Parity::even()).value() + 1;
    std::vector<VectorField> basis_fields;
    std::vector<OneForm> basis_forms;
    for (std::size_t a = 0; a < d; ++a) {
        basis_fields.push_back(VectorField::basis(chart, a));
        basis_forms.push_back(OneForm::basis(chart, a));
    }

    std::vector<GradedPoly> out;
    out.reserve(t.components().size());
    std::vector<std::size_t> idx(p + q, 0);
    std::size_t flat = 0;
    do {
        unsigned lower_sum = 0;
        for (std::size_t i = 0; i < p; ++i)
            lower_sum += chart->parity(idx[i]).value();
        // The stored component differs from the value on the basis tuple by
        // the evaluation sign on basis arguments.
        unsigned basis_phi = 0;
        {
            unsigned suffix = 0;
            for (std::size_t i = p; i-- > 0;) {
                basis_phi += chart->parity(idx[i]).value() * suffix;
                suffix += chart->parity(idx[i]).value();
            }
            suffix = 0;
            for (std::size_t j = q; j-- > 0;) {
                basis_phi += chart->parity(idx[p + j]).value() * suffix;
                suffix += chart->parity(idx[p + j]).value();
            }
        }

        // The stored component is (-1)^{basis_phi} times the value on the
        // basis tuple; the rho(X) term carries that sign twice, the Leibniz
        // terms once.
        GradedPoly scalar = conn.rho().apply(x, t.components()[flat]);
        if (parity_sign(sx1 * lower_sum) < 0)
            scalar = -scalar;

        unsigned tail = lower_sum;
        for (std::size_t i = 0; i < p; ++i) {
            // tail = a_i + ... + a_p before removing slot i.
            std::vector<VectorField> vecs;
            vecs.reserve(p);
            for (std::size_t k = 0; k < p; ++k)
                vecs.push_back(k == i ? nabla(conn, x, basis_fields[idx[k]]) : basis_fields[idx[k]]);
            std::vector<OneForm> forms;
            forms.reserve(q);
            for (std::size_t k = 0; k < q; ++k)
                forms.push_back(basis_forms[idx[p + k]]);
            GradedPoly term = evaluate(t, vecs, forms);
            scalar = parity_sign(sx1 * tail + basis_phi) > 0 ? scalar - term : scalar + term;
            tail -= chart->parity(idx[i]).value();
        }

        unsigned head = t.parity().value();
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<VectorField> vecs;
            vecs.reserve(p);
            for (std::size_t k = 0; k < p; ++k)
                vecs.push_back(basis_fields[idx[k]]);
            std::vector<OneForm> forms;
            forms.reserve(q);
            for (std::size_t k = 0; k < q; ++k)
                forms.push_back(k == j ? nabla(conn, x, basis_forms[idx[p + k]]) : basis_forms[idx[p + k]]);
            GradedPoly term = evaluate(t, vecs, forms);
            scalar = parity_sign(sx1 * head + basis_phi) > 0 ? scalar - term : scalar + term;
            head += chart->parity(idx[p + j]).value();
        }

        out.push_back(std::move(scalar));
        ++flat;
    } while (next_index(idx, d));
    return MixedTensor(chart, p, q, result_parity, std::move(out));
}

VectorField torsion(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y) {
    require_same_chart(*x.chart(), *conn.chart(), "torsion");
    require_same_chart(*y.chart(), *conn.chart(), "torsion");
    if (!x.is_homogeneous() || !y.is_homogeneous())
        return bilinear_parts(x, y, [&](const VectorField& xp, const VectorField& yp) {
            return torsion(conn, xp, yp);
        });
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sy = y.parity().value_or(Parity::even()).value();
    VectorField rx = conn.rho().apply(x);
    VectorField ry = conn.rho().apply(y);
    VectorField out = nabla(conn, x, y);
    VectorField nyx = nabla(conn, y, x);
    if (parity_sign(sx * sy) > 0)
                    out += nyx;
                else
                    out -= nyx;
    VectorField rb = conn.rho().apply(bracket(rx, ry));
    return parity_sign(sx) > 0 ? out + rb : out - rb;
}

VectorField curvature(const OddQuasiConnection& conn, const VectorField& x, const VectorField& y,
                      const VectorField& z) {
    require_same_chart(*x.chart(), *conn.chart(), "curvature");
    require_same_chart(*y.chart(), *conn.chart(), "curvature");
    require_same_chart(*z.chart(), *conn.chart(), "curvature");
    if (!x.is_homogeneous() || !y.is_homogeneous()) {
        VectorField out = VectorField::zero(conn.chart());
        for (const auto& xp : x.homogeneous_parts())
            for (const auto& yp : y.homogeneous_parts())
                out += curvature(conn, xp, yp, z);
        return out;
    }
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sy = y.parity().value_or(Parity::even()).value();
    VectorField out = nabla(conn, x, nabla(conn, y, z));
    VectorField second = nabla(conn, y, nabla(conn, x, z));
    if (parity_sign((sx + 1) * (sy + 1)) > 0)
        out -= second;
    else
        out += second;
    VectorField w = conn.rho().apply(bracket(conn.rho().apply(x), conn.rho().apply(y)));
    return out - nabla(conn, w, z);
}

TensorialityAnomalies tensoriality_anomalies(const OddQuasiConnection& conn, const VectorField& x,
                                             const VectorField& y, const VectorField& z,
                                             const GradedPoly& f) {
    if (!x.is_homogeneous() || !y.is_homogeneous() || !z.is_homogeneous() || !f.is_homogeneous())
        throw InputError("tensoriality_anomalies: arguments must be homogeneous");
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sf = f.parity().value_or(Parity::even()).value();

    VectorField t_fy = torsion(conn, x, f * y);
    VectorField t_xy = torsion(conn, x, y);
    VectorField scaled_t = f * t_xy;
    VectorField torsion_anomaly =
        parity_sign((sx + 1) * sf) > 0 ? t_fy - scaled_t : t_fy + scaled_t;

    VectorField r_fy = curvature(conn, x, f * y, z);
    VectorField r_xyz = curvature(conn, x, y, z);
    VectorField scaled_r = f * r_xyz;
    VectorField curvature_anomaly = parity_sign(sf * sx) > 0 ? r_fy - scaled_r : r_fy + scaled_r;

    GradedPoly rxf = conn.rho().apply(x, f);
    VectorField defect = y - conn.rho().apply(conn.rho().apply(y));
    VectorField torsion_predicted = rxf * defect;
    VectorField curvature_predicted = rxf * nabla(conn, defect, z);
    if (parity_sign(sf) < 0)
        curvature_predicted = -curvature_predicted;

    return TensorialityAnomalies{std::move(torsion_anomaly), std::move(curvature_anomaly),
                                 std::move(torsion_predicted), std::move(curvature_predicted)};
}

std::pair<VectorField, VectorField> bianchi_sides(const OddQuasiConnection& conn, const VectorField& x,
                                                  const VectorField& y, const VectorField& z) {
    if (!is_involution(conn.rho()))
        throw InputError("bianchi_sides: rho is not an involution");
    if (!x.is_homogeneous() || !y.is_homogeneous() || !z.is_homogeneous())
        throw InputError("bianchi_sides: arguments must be homogeneous");
    const VectorField* fields[3] = {&x, &y, &z};
    VectorField lhs = VectorField::zero(conn.chart());
    VectorField rhs = VectorField::zero(conn.chart());
    for (int k = 0; k < 3; ++k) {
        const VectorField& a = *fields[k];
        const VectorField& b = *fields[(k + 1) % 3];
        const VectorField& c = *fields[(k + 2) % 3];
        const unsigned sa = a.parity().value_or(Parity::even()).value();
        const unsigned sb = b.parity().value_or(Parity::even()).value();
        const unsigned sc = c.parity().value_or(Parity::even()).value();
        const int sign = parity_sign(sa * (sc + 1));

        VectorField curv = curvature(conn, a, b, c);
        lhs = sign > 0 ? lhs + curv : lhs - curv;

        VectorField nt = nabla(conn, a, torsion(conn, b, c));
        rhs = sign > 0 ? rhs + nt : rhs - nt;

        VectorField w = conn.rho().apply(bracket(conn.rho().apply(b), conn.rho().apply(c)));
        VectorField tw = torsion(conn, a, w);
        rhs = sign * parity_sign(sb) > 0 ? rhs - tw : rhs + tw;
    }
    return {std::move(lhs), std::move(rhs)};
}

GradedPoly divergence(const OddQuasiConnection& conn, const VectorField& x) {
    require_same_chart(*x.chart(), *conn.chart(), "divergence");
    if (!x.is_homogeneous()) {
        GradedPoly out(conn.chart());
        for (const auto& part : x.homogeneous_parts())
            out += divergence(conn, part);
        return out;
    }
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    GradedPoly out(chart);
    for (std::size_t a = 0; a < d; ++a) {
        const unsigned pa = chart->parity(a).value();
        GradedPoly inner(chart);
        for (std::size_t b = 0; b < d; ++b) {
            if (!conn.rho().entry(a, b).is_zero()) {
                GradedPoly dxa = partial(x.component(a), b);
                if (!dxa.is_zero())
                    inner += conn.rho().entry(a, b) * dxa;
            }
            if (!x.component(b).is_zero() && !conn.christoffel(b, a, a).is_zero()) {
                GradedPoly term = x.component(b) * conn.christoffel(b, a, a);
                const unsigned e = (pa + 1) * (sx + chart->parity(b).value());
                inner = parity_sign(e) > 0 ? inner + term : inner - term;
            }
        }
        if (parity_sign(pa * (sx + 1)) > 0)
            out += inner;
        else
            out -= inner;
    }
    return out;
}

OddQuasiConnection transform(const OddQuasiConnection& conn, const CoordinateChange& c) {
    require_same_chart(*conn.chart(), *c.source(), "transform");
    const ChartPtr& src = c.source();
    const ChartPtr& dst = c.target();
    const std::size_t d = src->dim();

    // rho_{a'}^{b'} = (-1)^{a'+a} (dx^a/dx^{a'}) rho_a^b (dx^{b'}/dx^b)
    std::vector<std::vector<GradedPoly>> rho_entries(d, std::vector<GradedPoly>(d, GradedPoly(dst)));
    for (std::size_t ap = 0; ap < d; ++ap)
        for (std::size_t bp = 0; bp < d; ++bp) {
            GradedPoly acc(src);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    if (conn.rho().entry(a, b).is_zero())
                        continue;
                    GradedPoly term =
                        c.inverse_jacobian_on_source(ap, a) * conn.rho().entry(a, b) * c.jacobian(b, bp);
                    const unsigned e = dst->parity(ap).value() + src->parity(a).value();
                    if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
                }
            rho_entries[ap][bp] = c.to_target(acc);
        }

    // Second derivatives of the inverse map, pushed back to the source chart:
    // sec(c', b', d) = d^2 x^d / dx^{c'} dx^{b'}.
    std::vector<GradedPoly> sec(d * d * d, GradedPoly(src));
    for (std::size_t cp = 0; cp < d; ++cp)
        for (std::size_t bp = 0; bp < d; ++bp)
            for (std::size_t dd = 0; dd < d; ++dd)
                sec[(cp * d + bp) * d + dd] =
                    c.to_source(partial(partial(c.inverse(dd), bp), cp));

    std::vector<GradedPoly> gamma_entries(d * d * d, GradedPoly(dst));
    for (std::size_t bp = 0; bp < d; ++bp)
        for (std::size_t ap = 0; ap < d; ++ap)
            for (std::size_t dp = 0; dp < d; ++dp) {
                GradedPoly acc(src);
                for (std::size_t a = 0; a < d; ++a) {
                    const unsigned pa = src->parity(a).value();
                    for (std::size_t b = 0; b < d; ++b)
                        for (std::size_t cc = 0; cc < d; ++cc) {
                            if (conn.christoffel(b, a, cc).is_zero())
                                continue;
                            GradedPoly term = c.inverse_jacobian_on_source(ap, a) *
                                              c.inverse_jacobian_on_source(bp, b) *
                                              conn.christoffel(b, a, cc) * c.jacobian(cc, dp);
                            const unsigned e =
                                (pa + 1) * (src->parity(b).value() + dst->parity(bp).value()) + pa;
                            if (parity_sign(e) > 0)
                    acc += term;
                else
                    acc -= term;
                        }
                    for (std::size_t cc = 0; cc < d; ++cc) {
                        if (conn.rho().entry(a, cc).is_zero())
                            continue;
                        for (std::size_t cp = 0; cp < d; ++cp)
                            for (std::size_t dd = 0; dd < d; ++dd) {
                                const GradedPoly& s2 = sec[(cp * d + bp) * d + dd];
                                if (s2.is_zero())
                                    continue;
                                GradedPoly term = c.inverse_jacobian_on_source(ap, a) *
                                                  conn.rho().entry(a, cc) * c.jacobian(cc, cp) * s2 *
                                                  c.jacobian(dd, dp);
                                if (parity_sign(pa) > 0)
                    acc += term;
                else
                    acc -= term;
                            }
                    }
                }
                GradedPoly value = c.to_target(acc);
                if (parity_sign(dst->parity(ap).value()) < 0)
                    value = -value;
                gamma_entries[(bp * d + ap) * d + dp] = std::move(value);
            }

    return OddQuasiConnection(OddEndomorphism(dst, std::move(rho_entries)), std::move(gamma_entries));
}

OddQuasiConnection induce_from_affine(const AffineConnection& affine, const OddEndomorphism& rho) {
    require_same_chart(*affine.chart(), *rho.chart(), "induce_from_affine");
    if (!is_involution(rho))
        throw InputError("induce_from_affine: rho is not an involution");
    const ChartPtr& chart = affine.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    for (std::size_t e = 0; e < d; ++e)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                GradedPoly acc(chart);
                for (std::size_t b = 0; b < d; ++b)
                    if (!rho.entry(a, b).is_zero() && !affine.christoffel(e, b, c).is_zero())
                        acc += rho.entry(a, b) * affine.christoffel(e, b, c);
                gamma[(e * d + a) * d + c] = std::move(acc);
            }
    return OddQuasiConnection(rho, std::move(gamma));
}

AffineConnection extract_affine(const OddQuasiConnection& conn) {
    if (!is_involution(conn.rho()))
        throw InputError("extract_affine: rho is not an involution");
    const ChartPtr& chart = conn.chart();
    const std::size_t d = chart->dim();
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    for (std::size_t e = 0; e < d; ++e)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                GradedPoly acc(chart);
                for (std::size_t b = 0; b < d; ++b) {
                    if (conn.rho().entry(a, b).is_zero() || conn.christoffel(e, b, c).is_zero())
                        continue;
                    GradedPoly term = conn.rho().entry(a, b) * conn.christoffel(e, b, c);
                    const unsigned s = chart->parity(a).value() + chart->parity(b).value() + 1;
                    if (parity_sign(s) > 0)
                    acc += term;
                else
                    acc -= term;
                }
                gamma[(e * d + a) * d + c] = std::move(acc);
            }
    return AffineConnection(chart, std::move(gamma));
}

BanalTensor::BanalTensor(ChartPtr chart, std::vector<GradedPoly> components)
    : conn_(OddQuasiConnection::banal(std::move(chart), std::move(components))) {}

BanalTensor banal_difference(const OddQuasiConnection& c1, const OddQuasiConnection& c2) {
    require_same_chart(*c1.chart(), *c2.chart(), "banal_difference");
    if (c1.rho() != c2.rho())
        throw InputError("banal_difference: the connections do not share the same rho");
    std::vector<GradedPoly> delta;
    delta.reserve(c1.christoffel_array().size());
    for (std::size_t i = 0; i < c1.christoffel_array().size(); ++i)
        delta.push_back(c1.christoffel_array()[i] - c2.christoffel_array()[i]);
    return BanalTensor(c1.chart(), std::move(delta));
}

OddQuasiConnection affine_combination(const OddQuasiConnection& c1, const OddQuasiConnection& c2,
                                      const Rational& t) {
    require_same_chart(*c1.chart(), *c2.chart(), "affine_combination");
    const ChartPtr& chart = c1.chart();
    const Rational s = 1 - t;
    const std::size_t d = chart->dim();
    std::vector<std::vector<GradedPoly>> rho(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            rho[a][b] = t * c1.rho().entry(a, b) + s * c2.rho().entry(a, b);
    std::vector<GradedPoly> gamma;
    gamma.reserve(c1.christoffel_array().size());
    for (std::size_t i = 0; i < c1.christoffel_array().size(); ++i)
        gamma.push_back(t * c1.christoffel_array()[i] + s * c2.christoffel_array()[i]);
    return OddQuasiConnection(OddEndomorphism(chart, std::move(rho)), std::move(gamma));
}

namespace {

std::string counterexample_payload(const char* label, const VectorField& x, const VectorField& y,
                                   const GradedPoly* f, const VectorField& residual) {
    std::ostringstream os;
    os << label << ": X = " << vf_str(x) << "; Y = " << vf_str(y);
    if (f)
        os << "; f = " << f->str();
    os << "; residual = " << vf_str(residual);
    return os.str();
}

} // namespace

std::vector<CheckResult> axioms_check(const OddQuasiConnection& conn, const SampleSet& samples) {
    CheckResult parity_check{"axioms.parity", true, ""};
    CheckResult linearity{"axioms.directional-linearity", true, ""};
    CheckResult leibniz{"axioms.leibniz", true, ""};
    for (const auto& x : samples.fields) {
        for (const auto& y : samples.fields) {
            if (!x.is_homogeneous() || !y.is_homogeneous())
                continue;
            const unsigned sx = x.parity().value_or(Parity::even()).value();
            const Parity want =
                x.parity().value_or(Parity::even()) + y.parity().value_or(Parity::even()) + Parity::odd();
            VectorField nxy = VectorField::zero(conn.chart());
            try {
                nxy = nabla(conn, x, y);
            } catch (const ParityError& err) {
                if (parity_check.passed)
                    parity_check = {parity_check.name, false,
                                    counterexample_payload("parity", x, y, nullptr, nxy) + " (" +
                                        err.what() + ")"};
                continue;
            }
            for (std::size_t a = 0; a < conn.chart()->dim() && parity_check.passed; ++a)
                if (!nxy.component(a).has_parity(want + conn.chart()->parity(a)))
                    parity_check = {parity_check.name, false,
                                    counterexample_payload("parity", x, y, nullptr, nxy)};
            for (const auto& f : samples.functions) {
                if (!f.is_homogeneous())
                    continue;
                const unsigned sf = f.parity().value_or(Parity::even()).value();
                if (linearity.passed) {
                    VectorField lhs = nabla(conn, f * x, y);
                    VectorField rhs = f * nxy;
                    if (parity_sign(sf) < 0)
                        rhs = -rhs;
                    if (lhs != rhs)
                        linearity = {linearity.name, false,
                                     counterexample_payload("nabla_{fX}Y", x, y, &f, lhs - rhs)};
                }
                if (leibniz.passed) {
                    VectorField lhs = nabla(conn, x, f * y);
                    VectorField rhs = conn.rho().apply(x, f) * y;
                    VectorField scaled = f * nxy;
                    if (parity_sign((sx + 1) * sf) > 0)
                    rhs += scaled;
                else
                    rhs -= scaled;
                    if (lhs != rhs)
                        leibniz = {leibniz.name, false,
                                   counterexample_payload("nabla_X fY", x, y, &f, lhs - rhs)};
                }
            }
        }
    }
    return {parity_check, linearity, leibniz};
}

std::vector<CheckResult> axioms_check(const AffineConnection& conn, const SampleSet& samples) {
    CheckResult parity_check{"affine-axioms.parity", true, ""};
    CheckResult linearity{"affine-axioms.directional-linearity", true, ""};
    CheckResult leibniz{"affine-axioms.leibniz", true, ""};
    for (const auto& x : samples.fields) {
        for (const auto& y : samples.fields) {
            if (!x.is_homogeneous() || !y.is_homogeneous())
                continue;
            const unsigned sx = x.parity().value_or(Parity::even()).value();
            const Parity want = x.parity().value_or(Parity::even()) + y.parity().value_or(Parity::even());
            VectorField nxy = nabla(conn, x, y);
            for (std::size_t a = 0; a < conn.chart()->dim() && parity_check.passed; ++a)
                if (!nxy.component(a).has_parity(want + conn.chart()->parity(a)))
                    parity_check = {parity_check.name, false,
                                    counterexample_payload("parity", x, y, nullptr, nxy)};
            for (const auto& f : samples.functions) {
                if (!f.is_homogeneous())
                    continue;
                const unsigned sf = f.parity().value_or(Parity::even()).value();
                if (linearity.passed) {
                    VectorField lhs = nabla(conn, f * x, y);
                    VectorField rhs = f * nxy;
                    if (lhs != rhs)
                        linearity = {linearity.name, false,
                                     counterexample_payload("nabla_{fX}Y", x, y, &f, lhs - rhs)};
                }
                if (leibniz.passed) {
                    VectorField lhs = nabla(conn, x, f * y);
                    VectorField rhs = apply(x, f) * y;
                    VectorField scaled = f * nxy;
                    if (parity_sign(sx * sf) > 0)
                    rhs += scaled;
                else
                    rhs -= scaled;
                    if (lhs != rhs)
                        leibniz = {leibniz.name, false,
                                   counterexample_payload("nabla_X fY", x, y, &f, lhs - rhs)};
                }
            }
        }
    }
    return {parity_check, linearity, leibniz};
}

std::vector<CheckResult> metric_compatibility_check(const OddQuasiConnection& conn, const Rank2Covariant& g,
                                                    const SampleSet& samples) {
    if (g.vector_slots() != 2 || g.form_slots() != 0)
        throw InputError("metric_compatibility_check: G must be a rank-2 covariant tensor");
    CheckResult result{"metric.compatibility", true, ""};
    for (const auto& x : samples.fields) {
        if (!x.is_homogeneous())
            continue;
        const unsigned sx = x.parity().value_or(Parity::even()).value();
        for (const auto& y : samples.fields) {
            if (!y.is_homogeneous())
                continue;
            const unsigned sy = y.parity().value_or(Parity::even()).value();
            for (const auto& z : samples.fields) {
                if (!z.is_homogeneous() || !result.passed)
                    continue;
                GradedPoly lhs = conn.rho().apply(x, evaluate(g, {y, z}, {}));
                GradedPoly rhs = evaluate(g, {nabla(conn, x, y), z}, {});
                GradedPoly second = evaluate(g, {y, nabla(conn, x, z)}, {});
                if (parity_sign((sx + 1) * sy) > 0)
                    rhs += second;
                else
                    rhs -= second;
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "X = " << vf_str(x) << "; Y = " << vf_str(y) << "; Z = " << vf_str(z)
                       << "; residual = " << (lhs - rhs).str();
                    result = {result.name, false, os.str()};
                }
            }
        }
    }
    return {result};
}

} // namespace oddconn
