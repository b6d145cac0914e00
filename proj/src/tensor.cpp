#include "oddconn/tensor.hpp"

#include "oddconn/errors.hpp"

#include <cmath>

namespace oddconn {

namespace {

std::size_t int_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i)
        r *= base;
    return r;
}

} // namespace

MixedTensor::MixedTensor(ChartPtr chart, std::size_t p, std::size_t q, Parity parity,
                         std::vector<GradedPoly> components)
    : chart_(std::move(chart)), p_(p), q_(q), parity_(parity), comps_(std::move(components)) {
    const std::size_t want = int_pow(chart_->dim(), p_ + q_);
    if (comps_.size() != want)
        throw InputError("MixedTensor: expected " + std::to_string(want) + " components");
    std::vector<std::size_t> idx(p_ + q_, 0);
    std::size_t flat = 0;
    do {
        const GradedPoly& comp = comps_[flat];
        require_same_chart(*comp.chart(), *chart_, "MixedTensor");
        Parity want_parity = parity_;
        for (std::size_t s = 0; s < p_ + q_; ++s)
            want_parity += chart_->parity(idx[s]);
        if (!comp.has_parity(want_parity))
            throw ParityError("MixedTensor: component parity violates the declared tensor parity");
        ++flat;
    } while (next_index(idx, chart_->dim()));
}

MixedTensor MixedTensor::zero(ChartPtr chart, std::size_t p, std::size_t q, Parity parity) {
    std::vector<GradedPoly> comps(int_pow(chart->dim(), p + q), GradedPoly(chart));
    return MixedTensor(std::move(chart), p, q, parity, std::move(comps));
}

std::size_t MixedTensor::flat_index(std::span<const std::size_t> lower,
                                    std::span<const std::size_t> upper) const {
    if (lower.size() != p_ || upper.size() != q_)
        throw InputError("MixedTensor: index tuple does not match the valence");
    std::size_t flat = 0;
    for (std::size_t a : lower)
        flat = flat * chart_->dim() + a;
    for (std::size_t b : upper)
        flat = flat * chart_->dim() + b;
    return flat;
}

const GradedPoly& MixedTensor::component(std::span<const std::size_t> lower,
                                         std::span<const std::size_t> upper) const {
    return comps_[flat_index(lower, upper)];
}

const GradedPoly& MixedTensor::scalar() const {
    if (p_ != 0 || q_ != 0)
        throw InputError("MixedTensor: scalar() requires valence (0,0)");
    return comps_[0];
}

MixedTensor operator+(const MixedTensor& s, const MixedTensor& t) {
    require_same_chart(*s.chart_, *t.chart_, "add");
    if (s.p_ != t.p_ || s.q_ != t.q_ || s.parity_ != t.parity_)
        throw InputError("MixedTensor: cannot add tensors of different valence or parity");
    std::vector<GradedPoly> comps;
    comps.reserve(s.comps_.size());
    for (std::size_t i = 0; i < s.comps_.size(); ++i)
        comps.push_back(s.comps_[i] + t.comps_[i]);
    return MixedTensor(s.chart_, s.p_, s.q_, s.parity_, std::move(comps));
}

MixedTensor operator-(const MixedTensor& s, const MixedTensor& t) {
    require_same_chart(*s.chart_, *t.chart_, "subtract");
    if (s.p_ != t.p_ || s.q_ != t.q_ || s.parity_ != t.parity_)
        throw InputError("MixedTensor: cannot subtract tensors of different valence or parity");
    std::vector<GradedPoly> comps;
    comps.reserve(s.comps_.size());
    for (std::size_t i = 0; i < s.comps_.size(); ++i)
        comps.push_back(s.comps_[i] - t.comps_[i]);
    return MixedTensor(s.chart_, s.p_, s.q_, s.parity_, std::move(comps));
}

bool operator==(const MixedTensor& s, const MixedTensor& t) {
    return *s.chart_ == *t.chart_ && s.p_ == t.p_ && s.q_ == t.q_ && s.parity_ == t.parity_ &&
           s.comps_ == t.comps_;
}

bool next_index(std::vector<std::size_t>& idx, std::size_t dim) {
    for (std::size_t s = idx.size(); s-- > 0;) {
        if (++idx[s] < dim)
            return true;
        idx[s] = 0;
    }
    return false;
}

GradedPoly evaluate(const MixedTensor& t, const std::vector<VectorField>& vectors,
                    const std::vector<OneForm>& forms) {
    const ChartPtr& chart = t.chart();
    if (vectors.size() != t.vector_slots() || forms.size() != t.form_slots())
        throw InputError("evaluate: argument count does not match the valence");
    for (const auto& y : vectors)
        require_same_chart(*y.chart(), *chart, "evaluate");
    for (const auto& a : forms)
        require_same_chart(*a.chart(), *chart, "evaluate");

    // Multilinear extension: split the first non-homogeneous argument.
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (!vectors[i].is_homogeneous()) {
            GradedPoly acc(chart);
            for (const auto& part : vectors[i].homogeneous_parts()) {
                auto v = vectors;
                v[i] = part;
                acc += evaluate(t, v, forms);
            }
            return acc;
        }
    }
    for (std::size_t j = 0; j < forms.size(); ++j) {
        if (!forms[j].is_homogeneous()) {
            GradedPoly acc(chart);
            for (const auto& part : forms[j].homogeneous_parts()) {
                auto f = forms;
                f[j] = part;
                acc += evaluate(t, vectors, f);
            }
            return acc;
        }
    }

    const std::size_t p = t.vector_slots(), q = t.form_slots(), dim = chart->dim();
    GradedPoly out(chart);
    std::vector<std::size_t> idx(p + q, 0);
    std::size_t flat = 0;
    do {
        const GradedPoly& comp = t.components()[flat];
        ++flat; // post-incremented copy of the running flat index
        if (comp.is_zero())
            continue;
        bool zero_factor = false;
        for (std::size_t i = 0; i < p && !zero_factor; ++i)
            zero_factor = vectors[i].component(idx[i]).is_zero();
        for (std::size_t j = 0; j < q && !zero_factor; ++j)
            zero_factor = forms[j].component(idx[p + j]).is_zero();
        if (zero_factor)
            continue;

        // Phi = sum_{i<i'} a_i Y_{i'} + sum_{j<j'} alpha^j b_{j'}: an earlier
        // slot parity crosses every later vector argument, an earlier form
        // argument crosses every later form slot. This is the unique extension
        // of the (1,1) contraction compatible with the chi transformation law.
        unsigned phi = 0;
        unsigned arg_suffix = 0;
        for (std::size_t i = p; i-- > 0;) {
            const unsigned ai = chart->parity(idx[i]).value();
            phi += ai * arg_suffix;
            arg_suffix += vectors[i].parity().value_or(Parity::even()).value();
        }
        unsigned slot_suffix = 0;
        for (std::size_t j = q; j-- > 0;) {
            const unsigned fj = forms[j].parity().value_or(Parity::even()).value();
            phi += fj * slot_suffix;
            slot_suffix += chart->parity(idx[p + j]).value();
        }

        GradedPoly term = GradedPoly::constant(chart, parity_sign(phi));
        for (std::size_t i = 0; i < p; ++i)
            term = term * vectors[i].component(idx[i]);
        term = term * comp;
        for (std::size_t j = 0; j < q; ++j)
            term = term * forms[j].component(idx[p + j]);
        out += term;
    } while (next_index(idx, dim));
    return out;
}

MixedTensor transform(const MixedTensor& t, const CoordinateChange& c) {
    require_same_chart(*t.chart(), *c.source(), "transform");
    const std::size_t p = t.vector_slots(), q = t.form_slots();
    const std::size_t dim = c.source()->dim();
    const Chart& src = *c.source();
    const Chart& dst = *c.target();

    std::vector<GradedPoly> out;
    out.reserve(t.components().size());
    std::vector<std::size_t> primed(p + q, 0);
    do {
        GradedPoly acc(c.source());
        std::vector<std::size_t> un(p + q, 0);
        std::size_t flat = 0;
        do {
            const GradedPoly& comp = t.components()[flat];
            ++flat;
            if (comp.is_zero())
                continue;

            unsigned chi = 0;
            unsigned tail = 0; // sum of later primed lower parities
            for (std::size_t i = p; i-- > 0;) {
                const unsigned api = dst.parity(primed[i]).value();
                if (i + 1 < p)
                    chi += (src.parity(un[i]).value() + api) * tail;
                tail += api;
            }
            unsigned head = 0; // sum of earlier primed upper parities
            for (std::size_t j = 0; j < q; ++j) {
                const unsigned bj = src.parity(un[p + j]).value();
                const unsigned bpj = dst.parity(primed[p + j]).value();
                if (j > 0)
                    chi += (bj + bpj) * head;
                head += bpj;
            }

            GradedPoly term = GradedPoly::constant(c.source(), parity_sign(chi));
            for (std::size_t i = 0; i < p; ++i)
                term = term * c.inverse_jacobian_on_source(primed[i], un[i]);
            term = term * comp;
            for (std::size_t j = 0; j < q; ++j)
                term = term * c.jacobian(un[p + j], primed[p + j]);
            acc += term;
        } while (next_index(un, dim));
        out.push_back(c.to_target(acc));
    } while (next_index(primed, dim));
    return MixedTensor(c.target(), p, q, t.parity(), std::move(out));
}

} // namespace oddconn
