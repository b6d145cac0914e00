#include "oddconn/coordinate_change.hpp"

#include "oddconn/errors.hpp"

namespace oddconn {

CoordinateChange::CoordinateChange(ChartPtr source, ChartPtr target, std::vector<GradedPoly> forward,
                                   std::vector<GradedPoly> inverse)
    : source_(std::move(source)), target_(std::move(target)), forward_(std::move(forward)),
      inverse_(std::move(inverse)) {
    if (source_->dim() != target_->dim() || source_->even_dim() != target_->even_dim())
        throw InputError("CoordinateChange: source and target dimensions differ");
    if (forward_.size() != target_->dim() || inverse_.size() != source_->dim())
        throw InputError("CoordinateChange: wrong number of coordinate images");
    for (std::size_t ap = 0; ap < forward_.size(); ++ap) {
        require_same_chart(*forward_[ap].chart(), *source_, "CoordinateChange forward");
        if (!forward_[ap].has_parity(target_->parity(ap)))
            throw ParityError("CoordinateChange: forward image of '" + target_->name(ap) +
                              "' is not parity-preserving");
        fwd_map_.emplace(ap, forward_[ap]);
    }
    for (std::size_t a = 0; a < inverse_.size(); ++a) {
        require_same_chart(*inverse_[a].chart(), *target_, "CoordinateChange inverse");
        if (!inverse_[a].has_parity(source_->parity(a)))
            throw ParityError("CoordinateChange: inverse image of '" + source_->name(a) +
                              "' is not parity-preserving");
        inv_map_.emplace(a, inverse_[a]);
    }
    // Exact round trips both ways.
    for (std::size_t a = 0; a < source_->dim(); ++a)
        if (substitute(inverse_[a], fwd_map_, source_) != GradedPoly::coordinate(source_, a))
            throw InputError("CoordinateChange: inverse(forward) is not the identity on '" +
                             source_->name(a) + "'");
    for (std::size_t ap = 0; ap < target_->dim(); ++ap)
        if (substitute(forward_[ap], inv_map_, target_) != GradedPoly::coordinate(target_, ap))
            throw InputError("CoordinateChange: forward(inverse) is not the identity on '" +
                             target_->name(ap) + "'");

    const std::size_t d = source_->dim();
    jac_.assign(d, std::vector<GradedPoly>(d, GradedPoly(source_)));
    inv_jac_dst_.assign(d, std::vector<GradedPoly>(d, GradedPoly(target_)));
    inv_jac_src_.assign(d, std::vector<GradedPoly>(d, GradedPoly(source_)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t ap = 0; ap < d; ++ap)
            jac_[a][ap] = partial(forward_[ap], a);
    for (std::size_t ap = 0; ap < d; ++ap)
        for (std::size_t a = 0; a < d; ++a) {
            inv_jac_dst_[ap][a] = partial(inverse_[a], ap);
            inv_jac_src_[ap][a] = to_source(inv_jac_dst_[ap][a]);
        }
}

GradedPoly CoordinateChange::to_target(const GradedPoly& f) const {
    require_same_chart(*f.chart(), *source_, "to_target");
    return substitute(f, inv_map_, target_);
}

GradedPoly CoordinateChange::to_source(const GradedPoly& g) const {
    require_same_chart(*g.chart(), *target_, "to_source");
    return substitute(g, fwd_map_, source_);
}

CoordinateChange CoordinateChange::inverted() const {
    return CoordinateChange(target_, source_, inverse_, forward_);
}

CoordinateChange CoordinateChange::compose(const CoordinateChange& first, const CoordinateChange& second) {
    require_same_chart(*first.target_, *second.source_, "compose");
    std::vector<GradedPoly> forward;
    forward.reserve(second.forward_.size());
    for (const auto& f : second.forward_)
        forward.push_back(first.to_source(f));
    std::vector<GradedPoly> inverse;
    inverse.reserve(first.inverse_.size());
    for (const auto& g : first.inverse_)
        inverse.push_back(second.to_target(g));
    return CoordinateChange(first.source_, second.target_, std::move(forward), std::move(inverse));
}

VectorField transform(const VectorField& x, const CoordinateChange& c) {
    require_same_chart(*x.chart(), *c.source(), "transform");
    const std::size_t d = c.source()->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(c.target()));
    for (std::size_t ap = 0; ap < d; ++ap) {
        GradedPoly acc(c.source());
        for (std::size_t a = 0; a < d; ++a)
            acc += x.component(a) * c.jacobian(a, ap);
        comps[ap] = c.to_target(acc);
    }
    if (x.parity())
        return VectorField(c.target(), std::move(comps), *x.parity());
    return VectorField(c.target(), std::move(comps));
}

OneForm transform(const OneForm& alpha, const CoordinateChange& c) {
    require_same_chart(*alpha.chart(), *c.source(), "transform");
    const std::size_t d = c.source()->dim();
    std::vector<GradedPoly> comps(d, GradedPoly(c.target()));
    for (std::size_t ap = 0; ap < d; ++ap) {
        GradedPoly acc(c.source());
        for (std::size_t a = 0; a < d; ++a)
            acc += c.inverse_jacobian_on_source(ap, a) * alpha.component(a);
        comps[ap] = c.to_target(acc);
    }
    if (alpha.parity())
        return OneForm(c.target(), std::move(comps), *alpha.parity());
    return OneForm(c.target(), std::move(comps));
}

} // namespace oddconn
