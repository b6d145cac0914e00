#include "oddconn/fields.hpp"

#include "oddconn/errors.hpp"

namespace oddconn {

namespace {

/// Infers the common declared parity of a component array, where component a
/// must have parity p + parity(a). Returns nullopt for inhomogeneous data.
std::optional<Parity> infer_slot_parity(const Chart& chart, const std::vector<GradedPoly>& comps) {
    std::optional<Parity> declared;
    for (std::size_t a = 0; a < comps.size(); ++a) {
        if (comps[a].is_zero())
            continue;
        auto cp = comps[a].parity();
        if (!cp)
            return std::nullopt;
        Parity p = *cp + chart.parity(a);
        if (declared && *declared != p)
            return std::nullopt;
        declared = p;
    }
    return declared ? declared : std::optional<Parity>(Parity::even());
}

void check_components(const Chart& chart, const std::vector<GradedPoly>& comps, const char* what) {
    if (comps.size() != chart.dim())
        throw InputError(std::string(what) + ": expected " + std::to_string(chart.dim()) + " components");
    for (const auto& c : comps)
        require_same_chart(*c.chart(), chart, what);
}

} // namespace

VectorField::VectorField(ChartPtr chart, std::vector<GradedPoly> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
    check_components(*chart_, comps_, "VectorField");
    parity_ = infer_slot_parity(*chart_, comps_);
    if (parity_ && is_zero())
        parity_ = Parity::even();
}

VectorField::VectorField(ChartPtr chart, std::vector<GradedPoly> components, Parity declared)
    : chart_(std::move(chart)), comps_(std::move(components)), parity_(declared) {
    check_components(*chart_, comps_, "VectorField");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        if (!comps_[a].has_parity(declared + chart_->parity(a)))
            throw ParityError("VectorField: component of '" + chart_->name(a) +
                              "' violates the declared parity");
}

VectorField VectorField::zero(ChartPtr chart) {
    std::vector<GradedPoly> comps(chart->dim(), GradedPoly(chart));
    return VectorField(std::move(chart), std::move(comps), Parity::even());
}

VectorField VectorField::basis(ChartPtr chart, std::size_t a) {
    if (a >= chart->dim())
        throw InputError("basis: coordinate index out of range");
    std::vector<GradedPoly> comps(chart->dim(), GradedPoly(chart));
    comps[a] = GradedPoly::constant(chart, 1);
    Parity p = chart->parity(a);
    return VectorField(std::move(chart), std::move(comps), p);
}

bool VectorField::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero())
            return false;
    return true;
}

VectorField VectorField::parity_part(Parity p) const {
    std::vector<GradedPoly> comps;
    comps.reserve(comps_.size());
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps.push_back(comps_[a].parity_part(p + chart_->parity(a)));
    return VectorField(chart_, std::move(comps), p);
}

std::vector<VectorField> VectorField::homogeneous_parts() const {
    std::vector<VectorField> parts;
    for (Parity p : {Parity::even(), Parity::odd()}) {
        VectorField part = parity_part(p);
        if (!part.is_zero())
            parts.push_back(std::move(part));
    }
    return parts;
}

VectorField VectorField::operator-() const {
    std::vector<GradedPoly> comps;
    comps.reserve(comps_.size());
    for (const auto& c : comps_)
        comps.push_back(-c);
    VectorField out(chart_, std::move(comps));
    return out;
}

VectorField& VectorField::operator+=(const VectorField& y) {
    require_same_chart(*chart_, *y.chart_, "add");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps_[a] += y.comps_[a];
    parity_ = infer_slot_parity(*chart_, comps_);
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& y) {
    require_same_chart(*chart_, *y.chart_, "subtract");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps_[a] -= y.comps_[a];
    parity_ = infer_slot_parity(*chart_, comps_);
    return *this;
}

VectorField operator+(const VectorField& x, const VectorField& y) {
    VectorField out = x;
    out += y;
    return out;
}

VectorField operator-(const VectorField& x, const VectorField& y) { return x + (-y); }

VectorField operator*(const GradedPoly& f, const VectorField& x) {
    require_same_chart(*f.chart(), *x.chart_, "multiply");
    std::vector<GradedPoly> comps;
    comps.reserve(x.comps_.size());
    for (const auto& c : x.comps_)
        comps.push_back(f * c);
    return VectorField(x.chart_, std::move(comps));
}

VectorField operator*(const Rational& c, const VectorField& x) {
    std::vector<GradedPoly> comps;
    comps.reserve(x.comps_.size());
    for (const auto& xc : x.comps_)
        comps.push_back(c * xc);
    return VectorField(x.chart_, std::move(comps));
}

bool operator==(const VectorField& x, const VectorField& y) {
    return *x.chart_ == *y.chart_ && x.comps_ == y.comps_;
}

OneForm::OneForm(ChartPtr chart, std::vector<GradedPoly> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
    check_components(*chart_, comps_, "OneForm");
    parity_ = infer_slot_parity(*chart_, comps_);
    if (parity_ && is_zero())
        parity_ = Parity::even();
}

OneForm::OneForm(ChartPtr chart, std::vector<GradedPoly> components, Parity declared)
    : chart_(std::move(chart)), comps_(std::move(components)), parity_(declared) {
    check_components(*chart_, comps_, "OneForm");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        if (!comps_[a].has_parity(declared + chart_->parity(a)))
            throw ParityError("OneForm: component of '" + chart_->name(a) +
                              "' violates the declared parity");
}

OneForm OneForm::zero(ChartPtr chart) {
    std::vector<GradedPoly> comps(chart->dim(), GradedPoly(chart));
    return OneForm(std::move(chart), std::move(comps), Parity::even());
}

OneForm OneForm::basis(ChartPtr chart, std::size_t b) {
    if (b >= chart->dim())
        throw InputError("basis: coordinate index out of range");
    std::vector<GradedPoly> comps(chart->dim(), GradedPoly(chart));
    comps[b] = GradedPoly::constant(chart, 1);
    Parity p = chart->parity(b);
    return OneForm(std::move(chart), std::move(comps), p);
}

bool OneForm::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero())
            return false;
    return true;
}

OneForm OneForm::parity_part(Parity p) const {
    std::vector<GradedPoly> comps;
    comps.reserve(comps_.size());
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps.push_back(comps_[a].parity_part(p + chart_->parity(a)));
    return OneForm(chart_, std::move(comps), p);
}

std::vector<OneForm> OneForm::homogeneous_parts() const {
    std::vector<OneForm> parts;
    for (Parity p : {Parity::even(), Parity::odd()}) {
        OneForm part = parity_part(p);
        if (!part.is_zero())
            parts.push_back(std::move(part));
    }
    return parts;
}

OneForm OneForm::operator-() const {
    std::vector<GradedPoly> comps;
    comps.reserve(comps_.size());
    for (const auto& c : comps_)
        comps.push_back(-c);
    return OneForm(chart_, std::move(comps));
}

OneForm& OneForm::operator+=(const OneForm& b) {
    require_same_chart(*chart_, *b.chart_, "add");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps_[a] += b.comps_[a];
    parity_ = infer_slot_parity(*chart_, comps_);
    return *this;
}

OneForm& OneForm::operator-=(const OneForm& b) {
    require_same_chart(*chart_, *b.chart_, "subtract");
    for (std::size_t a = 0; a < comps_.size(); ++a)
        comps_[a] -= b.comps_[a];
    parity_ = infer_slot_parity(*chart_, comps_);
    return *this;
}

OneForm operator+(const OneForm& a, const OneForm& b) {
    OneForm out = a;
    out += b;
    return out;
}

OneForm operator-(const OneForm& a, const OneForm& b) { return a + (-b); }

bool operator==(const OneForm& a, const OneForm& b) { return *a.chart_ == *b.chart_ && a.comps_ == b.comps_; }

GradedPoly apply(const VectorField& x, const GradedPoly& f) {
    require_same_chart(*x.chart(), *f.chart(), "apply");
    GradedPoly out(f.chart());
    for (std::size_t a = 0; a < x.chart()->dim(); ++a)
        out += x.component(a) * partial(f, a);
    return out;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
    require_same_chart(*x.chart(), *y.chart(), "bracket");
    if (!x.is_homogeneous() || !y.is_homogeneous()) {
        VectorField out = VectorField::zero(x.chart());
        for (const auto& xp : x.homogeneous_parts())
            for (const auto& yp : y.homogeneous_parts())
                out += bracket(xp, yp);
        return out;
    }
    const unsigned sx = x.parity().value_or(Parity::even()).value();
    const unsigned sy = y.parity().value_or(Parity::even()).value();
    std::vector<GradedPoly> comps;
    comps.reserve(x.chart()->dim());
    for (std::size_t c = 0; c < x.chart()->dim(); ++c) {
        GradedPoly term = apply(x, y.component(c));
        GradedPoly other = apply(y, x.component(c));
        comps.push_back(parity_sign(sx * sy) > 0 ? term - other : term + other);
    }
    return VectorField(x.chart(), std::move(comps));
}

GradedPoly pairing(const VectorField& x, const OneForm& alpha) {
    require_same_chart(*x.chart(), *alpha.chart(), "pairing");
    GradedPoly out(x.chart());
    for (std::size_t a = 0; a < x.chart()->dim(); ++a)
        out += x.component(a) * alpha.component(a);
    return out;
}

} // namespace oddconn
