#include "oddconn/graded_poly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace oddconn {

Monomial::Monomial(const std::vector<std::uint32_t>& even_exp, std::uint64_t mask) : odd_mask(mask) {
    if (even_exp.size() > max_even_dim)
        throw InputError("at most 16 even coordinates are supported");
    for (std::size_t i = 0; i < even_exp.size(); ++i)
        set_even_exp(i, even_exp[i]);
}

void Monomial::set_even_exp(std::size_t i, std::uint32_t e) {
    if (i >= max_even_dim)
        throw InputError("even coordinate index out of packing range");
    if (e > max_exponent)
        throw InputError("even exponent exceeds the supported bound of 255");
    const std::size_t word = i >> 3;
    const std::size_t shift = (i & 7) * 8;
    even_packed[word] = (even_packed[word] & ~(std::uint64_t(0xff) << shift)) |
                        (std::uint64_t(e) << shift);
}

std::vector<std::uint32_t> Monomial::even_exponents(std::size_t even_dim) const {
    std::vector<std::uint32_t> out(even_dim);
    for (std::size_t i = 0; i < even_dim; ++i)
        out[i] = even_exp(i);
    return out;
}

Parity Monomial::parity() const {
    return (std::popcount(odd_mask) & 1) ? Parity::odd() : Parity::even();
}

std::uint32_t Monomial::total_even_degree() const {
    std::uint32_t d = 0;
    for (std::uint64_t word : even_packed)
        while (word) {
            d += word & 0xff;
            word >>= 8;
        }
    return d;
}

namespace {

/// Koszul sign for multiplying two canonical odd words: (-1)^{#inversions}
/// where an inversion is a pair (i, j) with i set in `a`, j set in `b`, i > j.
int merge_sign(std::uint64_t a, std::uint64_t b) {
    unsigned inversions = 0;
    std::uint64_t rest = b;
    while (rest) {
        const int j = std::countr_zero(rest);
        rest &= rest - 1;
        const std::uint64_t above = (j >= 63) ? 0 : (a >> (j + 1));
        inversions += static_cast<unsigned>(std::popcount(above));
    }
    return parity_sign(inversions);
}

/// Adds nibble-packed exponent words, throwing on per-slot overflow.
std::array<std::uint64_t, 2> add_packed(const std::array<std::uint64_t, 2>& a,
                                        const std::array<std::uint64_t, 2>& b) {
    std::array<std::uint64_t, 2> out{};
    for (int w = 0; w < 2; ++w) {
        // Detect byte carries: with all bytes < 0x80 the plain sum is safe.
        const std::uint64_t high = 0x8080808080808080ull;
        if (((a[w] | b[w]) & high) == 0) {
            out[w] = a[w] + b[w];
            if (out[w] & high) {
                // A byte crossed 0x7f; verify slot-wise.
                for (std::size_t i = 0; i < 8; ++i)
                    if (((a[w] >> (i * 8)) & 0xff) + ((b[w] >> (i * 8)) & 0xff) >
                        Monomial::max_exponent)
                        throw InputError("even exponent exceeds the supported bound of 255");
            }
        } else {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < 8; ++i) {
                const std::uint64_t sum = ((a[w] >> (i * 8)) & 0xff) + ((b[w] >> (i * 8)) & 0xff);
                if (sum > Monomial::max_exponent)
                    throw InputError("even exponent exceeds the supported bound of 255");
                acc |= sum << (i * 8);
            }
            out[w] = acc;
        }
    }
    return out;
}

} // namespace

GradedPoly GradedPoly::constant(ChartPtr chart, Rational value) {
    GradedPoly f(std::move(chart));
    if (value != 0)
        f.terms_.emplace_back(Monomial{}, std::move(value));
    return f;
}

GradedPoly GradedPoly::coordinate(ChartPtr chart, std::size_t a) {
    if (a >= chart->dim())
        throw InputError("coordinate index out of range");
    Monomial m;
    if (chart->parity(a).is_odd())
        m.odd_mask = std::uint64_t(1) << chart->odd_position(a);
    else
        m.set_even_exp(a, 1);
    return monomial(std::move(chart), m, 1);
}

GradedPoly GradedPoly::monomial(ChartPtr chart, Monomial m, Rational coeff) {
    if (chart->odd_dim() < 64 && (m.odd_mask >> chart->odd_dim()) != 0)
        throw InputError("monomial uses odd generators outside the chart");
    for (std::size_t i = chart->even_dim(); i < Monomial::max_even_dim; ++i)
        if (m.even_exp(i) != 0)
            throw InputError("monomial uses even coordinates outside the chart");
    GradedPoly f(std::move(chart));
    if (coeff != 0)
        f.terms_.emplace_back(m, std::move(coeff));
    return f;
}

bool GradedPoly::has_parity(Parity p) const {
    for (const auto& [m, c] : terms_)
        if (m.parity() != p)
            return false;
    return true;
}

std::optional<Parity> GradedPoly::parity() const {
    if (terms_.empty())
        return std::nullopt;
    Parity p = terms_.front().first.parity();
    return has_parity(p) ? std::optional<Parity>(p) : std::nullopt;
}

bool GradedPoly::is_homogeneous() const { return terms_.empty() || parity().has_value(); }

GradedPoly GradedPoly::parity_part(Parity p) const {
    GradedPoly out(chart_);
    for (const auto& term : terms_)
        if (term.first.parity() == p)
            out.terms_.push_back(term);
    return out;
}

std::uint32_t GradedPoly::max_even_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.total_even_degree());
    return d;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly out(chart_);
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_)
        out.terms_.emplace_back(m, -c);
    return out;
}

void GradedPoly::merge_signed(const GradedPoly& g, bool negate) {
    require_same_chart(*chart_, *g.chart_, negate ? "subtract" : "add");
    if (g.terms_.empty())
        return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + g.terms_.size());
    auto it = terms_.begin();
    auto jt = g.terms_.begin();
    while (it != terms_.end() && jt != g.terms_.end()) {
        if (it->first < jt->first) {
            merged.push_back(std::move(*it));
            ++it;
        } else if (jt->first < it->first) {
            merged.emplace_back(jt->first, negate ? Rational(-jt->second) : jt->second);
            ++jt;
        } else {
            Rational sum = negate ? Rational(it->second - jt->second) : Rational(it->second + jt->second);
            if (sum != 0)
                merged.emplace_back(it->first, std::move(sum));
            ++it;
            ++jt;
        }
    }
    for (; it != terms_.end(); ++it)
        merged.push_back(std::move(*it));
    for (; jt != g.terms_.end(); ++jt)
        merged.emplace_back(jt->first, negate ? Rational(-jt->second) : jt->second);
    terms_ = std::move(merged);
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& g) {
    merge_signed(g, false);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& g) {
    merge_signed(g, true);
    return *this;
}

GradedPoly operator+(const GradedPoly& f, const GradedPoly& g) {
    GradedPoly out = f;
    out += g;
    return out;
}

GradedPoly operator-(const GradedPoly& f, const GradedPoly& g) {
    GradedPoly out = f;
    out -= g;
    return out;
}

GradedPoly operator*(const GradedPoly& f, const GradedPoly& g) {
    require_same_chart(*f.chart_, *g.chart_, "multiply");
    GradedPoly out(f.chart_);
    if (f.terms_.empty() || g.terms_.empty())
        return out;
    std::vector<GradedPoly::Term> products;
    products.reserve(f.terms_.size() * g.terms_.size());
    for (const auto& [ma, ca] : f.terms_) {
        for (const auto& [mb, cb] : g.terms_) {
            if (ma.odd_mask & mb.odd_mask)
                continue; // nilpotency: repeated odd generator
            Monomial m;
            m.even_packed = add_packed(ma.even_packed, mb.even_packed);
            m.odd_mask = ma.odd_mask | mb.odd_mask;
            Rational prod = ca * cb;
            if (merge_sign(ma.odd_mask, mb.odd_mask) < 0)
                prod = -prod;
            products.emplace_back(m, std::move(prod));
        }
    }
    std::sort(products.begin(), products.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& term : products) {
        if (!out.terms_.empty() && out.terms_.back().first == term.first) {
            out.terms_.back().second += term.second;
            if (out.terms_.back().second == 0)
                out.terms_.pop_back();
        } else if (term.second != 0) {
            out.terms_.push_back(std::move(term));
        }
    }
    return out;
}

GradedPoly operator*(const Rational& c, const GradedPoly& f) {
    GradedPoly out(f.chart_);
    if (c == 0)
        return out;
    out.terms_.reserve(f.terms_.size());
    for (const auto& [m, cf] : f.terms_)
        out.terms_.emplace_back(m, c * cf);
    return out;
}

GradedPoly GradedPoly::pow(std::uint32_t k) const {
    GradedPoly out = constant(chart_, 1);
    for (std::uint32_t i = 0; i < k; ++i)
        out = out * *this;
    return out;
}

GradedPoly partial(const GradedPoly& f, std::size_t a) {
    const Chart& chart = *f.chart();
    if (a >= chart.dim())
        throw InputError("partial: unknown coordinate index");
    // The derivative maps surviving monomials injectively, so collecting and
    // sorting is enough to normalize.
    std::vector<GradedPoly::Term> derived;
    if (chart.parity(a).is_odd()) {
        const std::uint64_t bit = std::uint64_t(1) << chart.odd_position(a);
        for (const auto& [m, c] : f.terms()) {
            if (!(m.odd_mask & bit))
                continue;
            // Left derivative: the sign counts generators standing left of xi_a.
            const unsigned before = static_cast<unsigned>(std::popcount(m.odd_mask & (bit - 1)));
            Monomial dm = m;
            dm.odd_mask &= ~bit;
            derived.emplace_back(dm, parity_sign(before) > 0 ? c : Rational(-c));
        }
    } else {
        for (const auto& [m, c] : f.terms()) {
            const std::uint32_t e = m.even_exp(a);
            if (e == 0)
                continue;
            Monomial dm = m;
            dm.set_even_exp(a, e - 1);
            derived.emplace_back(dm, Rational(e) * c);
        }
    }
    std::sort(derived.begin(), derived.end(),
              [](const auto& s, const auto& t) { return s.first < t.first; });
    GradedPoly out(f.chart());
    out.terms_ = std::move(derived);
    return out;
}

GradedPoly substitute(const GradedPoly& f, const SubstitutionMap& images, const ChartPtr& target) {
    const Chart& chart = *f.chart();
    for (const auto& [a, image] : images) {
        if (a >= chart.dim())
            throw InputError("substitute: unknown coordinate index");
        require_same_chart(*image.chart(), *target, "substitute");
        if (!image.has_parity(chart.parity(a)))
            throw ParityError("substitute: image of '" + chart.name(a) + "' must have parity " +
                              to_string(chart.parity(a)));
    }
    auto image_of = [&](std::size_t a) -> const GradedPoly& {
        auto it = images.find(a);
        if (it == images.end())
            throw InputError("substitute: no image for coordinate '" + chart.name(a) + "'");
        return it->second;
    };
    GradedPoly out(target);
    for (const auto& [m, c] : f.terms()) {
        GradedPoly term = GradedPoly::constant(target, c);
        for (std::size_t i = 0; i < chart.even_dim(); ++i)
            if (m.even_exp(i) > 0)
                term = term * image_of(i).pow(m.even_exp(i));
        // Odd factors in ascending generator order; the graded product supplies
        // all Koszul signs.
        std::uint64_t rest = m.odd_mask;
        while (rest) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            term = term * image_of(chart.even_dim() + static_cast<std::size_t>(j));
        }
        out += term;
    }
    return out;
}

GradedPoly eval_even(const GradedPoly& f, const std::map<std::size_t, Rational>& point) {
    const Chart& chart = *f.chart();
    for (std::size_t i = 0; i < chart.even_dim(); ++i)
        if (!point.count(i))
            throw InputError("eval_even: missing assignment for '" + chart.name(i) + "'");
    GradedPoly out(f.chart());
    for (const auto& [m, c] : f.terms()) {
        Rational value = c;
        for (std::size_t i = 0; i < chart.even_dim(); ++i)
            for (std::uint32_t k = 0; k < m.even_exp(i); ++k)
                value *= point.at(i);
        Monomial em;
        em.odd_mask = m.odd_mask;
        out += GradedPoly::monomial(f.chart(), em, value);
    }
    return out;
}

std::string GradedPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative)
                os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::vector<std::string> factors;
        const bool has_factors = m.odd_mask != 0 || m.total_even_degree() != 0;
        if (!has_factors || mag != 1)
            factors.push_back(to_string(mag));
        for (std::size_t i = 0; i < chart_->even_dim(); ++i) {
            const std::uint32_t e = m.even_exp(i);
            if (e == 0)
                continue;
            if (e == 1)
                factors.push_back(chart_->name(i));
            else
                factors.push_back(chart_->name(i) + "^" + std::to_string(e));
        }
        std::uint64_t rest = m.odd_mask;
        while (rest) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            factors.push_back(chart_->name(chart_->even_dim() + static_cast<std::size_t>(j)));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i)
                os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

} // namespace oddconn
