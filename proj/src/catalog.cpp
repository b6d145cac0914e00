#include "oddconn/catalog.hpp"

#include "oddconn/errors.hpp"

namespace oddconn {

namespace {

/// Coordinate-swap involution on an n|n chart: rho_{x^i}^{xi^i} = 1,
/// rho_{xi^i}^{x^i} = 1.
OddEndomorphism coordinate_swap(const ChartPtr& chart) {
    const std::size_t d = chart->dim();
    const std::size_t n = chart->even_dim();
    std::vector<std::vector<GradedPoly>> entries(d, std::vector<GradedPoly>(d, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        entries[i][n + i] = GradedPoly::constant(chart, 1);
        entries[n + i][i] = GradedPoly::constant(chart, 1);
    }
    return OddEndomorphism(chart, std::move(entries));
}

CatalogEntry canonical_named(const std::string& name, ChartPtr chart) {
    const std::size_t d = chart->dim();
    OddEndomorphism rho = coordinate_swap(chart);
    std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart));
    CatalogEntry entry{name,
                       chart,
                       OddQuasiConnection(rho, std::move(gamma)),
                       Parallelisation::coordinate(chart),
                       {},
                       std::nullopt,
                       std::nullopt,
                       {}};
    entry.metric = induced_odd_metric(*entry.frame);
    entry.frame_names.reserve(d);
    for (std::size_t a = 0; a < d; ++a)
        entry.frame_names.push_back("E_" + chart->name(a));
    return entry;
}

std::vector<std::string> number_range_names(const std::string& stem, std::size_t from, std::size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        names.push_back(stem + std::to_string(from + i));
    return names;
}

} // namespace

CatalogEntry canonical_rnn(std::size_t n) {
    if (n == 0)
        throw InputError("canonical-rnn: n must be at least 1");
    ChartPtr chart = make_chart(number_range_names("x", 1, n), number_range_names("theta", 1, n));
    return canonical_named("canonical-rnn:" + std::to_string(n), chart);
}

CatalogEntry susy_r11() {
    ChartPtr chart = make_chart({"t"}, {"theta"});
    const GradedPoly one = GradedPoly::constant(chart, 1);
    const GradedPoly theta = GradedPoly::coordinate(chart, 1);
    VectorField p(chart, {one, GradedPoly(chart)}, Parity::even());
    VectorField d_field(chart, {-theta, one}, Parity::odd());
    Parallelisation par(chart, {p, d_field});
    OddEndomorphism rho = frame_swap_involution(par);
    CatalogEntry entry{"susy-r11",  chart,        weitzenbock(par, rho), par, {"P", "D"},
                       std::nullopt, std::nullopt, {}};
    entry.metric = induced_odd_metric(par);
    entry.named_fields.emplace("P", p);
    entry.named_fields.emplace("D", d_field);
    return entry;
}

CatalogEntry smink44() {
    ChartPtr chart = make_chart(number_range_names("x", 0, 4), number_range_names("th", 1, 4));
    const GammaData gammas = build_gamma();
    std::vector<VectorField> frame;
    std::vector<std::string> names;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        frame.push_back(VectorField::basis(chart, mu));
        names.push_back("P" + std::to_string(mu));
    }
    for (std::size_t alpha = 0; alpha < 4; ++alpha) {
        std::vector<GradedPoly> comps(8, GradedPoly(chart));
        for (std::size_t mu = 0; mu < 4; ++mu) {
            GradedPoly acc(chart);
            for (std::size_t beta = 0; beta < 4; ++beta) {
                const Rational coeff = gammas.c_gamma(mu, beta, alpha);
                if (coeff == 0)
                    continue;
                acc += Rational(-coeff / 4) * GradedPoly::coordinate(chart, 4 + beta);
            }
            comps[mu] = std::move(acc);
        }
        comps[4 + alpha] = GradedPoly::constant(chart, 1);
        frame.emplace_back(chart, std::move(comps), Parity::odd());
        names.push_back("D" + std::to_string(alpha + 1));
    }
    Parallelisation par(chart, frame);
    OddEndomorphism rho = frame_swap_involution(par);
    CatalogEntry entry{"smink44", chart, weitzenbock(par, rho), par, names, std::nullopt, gammas, {}};
    entry.metric = induced_odd_metric(par);
    for (std::size_t i = 0; i < frame.size(); ++i)
        entry.named_fields.emplace(names[i], frame[i]);
    return entry;
}

namespace {

/// Polynomial frame on R^{2|2} with a unit-triangular vierbein; gives a
/// Weitzenboeck connection with genuinely nonzero Christoffel symbols.
Parallelisation shear_r22_frame(const ChartPtr& chart) {
    const GradedPoly one = GradedPoly::constant(chart, 1);
    const GradedPoly x1 = GradedPoly::coordinate(chart, 0);
    const GradedPoly x2 = GradedPoly::coordinate(chart, 1);
    const GradedPoly xi1 = GradedPoly::coordinate(chart, 2);
    const GradedPoly xi2 = GradedPoly::coordinate(chart, 3);
    const GradedPoly zero(chart);
    VectorField z1(chart, {one, zero, zero, zero}, Parity::even());
    VectorField z2(chart, {x1, one, zero, zero}, Parity::even());
    VectorField w1(chart, {xi2, zero, one, zero}, Parity::odd());
    VectorField w2(chart, {zero, xi1, x2 * x2, one}, Parity::odd());
    return Parallelisation(chart, {z1, z2, w1, w2});
}

} // namespace

CatalogEntry weitzenbock_entry(const std::string& frame_id) {
    const std::string name = "weitzenbock:" + frame_id;
    if (frame_id.rfind("coordinate:", 0) == 0) {
        const std::string arg = frame_id.substr(11);
        std::size_t n = 0;
        try {
            n = std::stoul(arg);
        } catch (...) {
            throw InputError("weitzenbock: bad frame size '" + arg + "'");
        }
        CatalogEntry entry = canonical_rnn(n);
        entry.name = name;
        return entry;
    }
    if (frame_id == "susy-r11") {
        CatalogEntry entry = susy_r11();
        entry.name = name;
        return entry;
    }
    if (frame_id == "shear-r22") {
        ChartPtr chart = make_chart({"x1", "x2"}, {"xi1", "xi2"});
        Parallelisation par = shear_r22_frame(chart);
        OddEndomorphism rho = frame_swap_involution(par);
        CatalogEntry entry{name,          chart,        weitzenbock(par, rho),
                           par,           {"Z1", "Z2", "W1", "W2"},
                           std::nullopt,  std::nullopt, {}};
        entry.metric = induced_odd_metric(par);
        for (std::size_t i = 0; i < entry.frame->frame().size(); ++i)
            entry.named_fields.emplace(entry.frame_names[i], entry.frame->frame()[i]);
        return entry;
    }
    throw InputError("weitzenbock: unknown frame id '" + frame_id + "'");
}

std::vector<std::string> catalog_names() {
    return {"canonical-r11",         "canonical-rnn:2",      "canonical-rnn:3", "susy-r11", "smink44",
            "weitzenbock:susy-r11", "weitzenbock:shear-r22", "weitzenbock:coordinate:2"};
}

CatalogEntry catalog_get(const std::string& name) {
    if (name == "canonical-r11")
        return canonical_named("canonical-r11", make_chart({"t"}, {"theta"}));
    if (name.rfind("canonical-rnn:", 0) == 0) {
        std::size_t n = 0;
        try {
            n = std::stoul(name.substr(14));
        } catch (...) {
            throw InputError("catalog: bad dimension in '" + name + "'");
        }
        return canonical_rnn(n);
    }
    if (name == "susy-r11")
        return susy_r11();
    if (name == "smink44")
        return smink44();
    if (name.rfind("weitzenbock:", 0) == 0)
        return weitzenbock_entry(name.substr(12));
    throw InputError("catalog: unknown entry '" + name + "'");
}

bool is_catalog_name(const std::string& name) {
    try {
        catalog_get(name);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

} // namespace oddconn
