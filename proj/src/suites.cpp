#include "oddconn/suites.hpp"

#include "oddconn/errors.hpp"
#include "oddconn/sampling.hpp"

#include <chrono>
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

/// Accumulates the first failure per check name, annotated with the trial.
class CheckTable {
  public:
    void declare(const std::string& name) {
        if (index_.count(name))
            return;
        index_.emplace(name, results_.size());
        results_.push_back(CheckResult{name, true, ""});
    }
    void fail(const std::string& name, int trial, const std::string& payload) {
        declare(name);
        CheckResult& r = results_[index_.at(name)];
        if (!r.passed)
            return;
        r.passed = false;
        r.counterexample = "trial " + std::to_string(trial) + ": " + payload;
    }
    std::vector<CheckResult> results() const { return results_; }

  private:
    std::vector<CheckResult> results_;
    std::map<std::string, std::size_t> index_;
};

Parity pick_parity(Sampler& s) { return s.uniform(2) ? Parity::odd() : Parity::even(); }

VectorField sample_field(Sampler& s, const ChartPtr& chart) {
    return s.nonzero_field(chart, pick_parity(s), 2);
}

GradedPoly sample_function(Sampler& s, const ChartPtr& chart) {
    Parity p = chart->odd_dim() > 0 ? pick_parity(s) : Parity::even();
    return s.nonzero_poly(chart, p, 2);
}

std::vector<CheckResult> suite_axioms(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    Sampler s(seed);
    CheckTable table;
    for (const char* n : {"axioms.parity", "axioms.directional-linearity", "axioms.leibniz"})
        table.declare(n);
    for (int trial = 0; trial < trials; ++trial) {
        SampleSet samples;
        samples.fields = {s.field(model.chart, Parity::even(), 2), s.field(model.chart, Parity::odd(), 2)};
        samples.functions = {sample_function(s, model.chart)};
        for (const CheckResult& r : axioms_check(conn, samples))
            if (!r.passed)
                table.fail(r.name, trial, r.counterexample);
    }
    return table.results();
}

std::vector<CheckResult> suite_involution(const Model& model, std::uint64_t, int) {
    const OddQuasiConnection& conn = model.require_connection();
    CheckTable table;
    table.declare("involution.rho-squared-identity");
    for (std::size_t a = 0; a < model.chart->dim(); ++a) {
        VectorField e = VectorField::basis(model.chart, a);
        VectorField twice = conn.rho().apply(conn.rho().apply(e));
        if (twice != e) {
            table.fail("involution.rho-squared-identity", 0,
                       "rho(rho(d_" + model.chart->name(a) + ")) = " + vf_str(twice));
            break;
        }
    }
    return table.results();
}

std::vector<CheckResult> suite_tensoriality(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    Sampler s(seed);
    CheckTable table;
    table.declare("tensoriality.anomalies-match-closed-form");
    table.declare("tensoriality.torsion-tensorial");
    table.declare("tensoriality.curvature-tensorial");
    for (int trial = 0; trial < trials; ++trial) {
        VectorField x = sample_field(s, model.chart);
        VectorField y = sample_field(s, model.chart);
        VectorField z = sample_field(s, model.chart);
        GradedPoly f = sample_function(s, model.chart);
        TensorialityAnomalies a = tensoriality_anomalies(conn, x, y, z, f);
        if (a.torsion_anomaly != a.torsion_anomaly_predicted ||
            a.curvature_anomaly != a.curvature_anomaly_predicted)
            table.fail("tensoriality.anomalies-match-closed-form", trial,
                       "X = " + vf_str(x) + "; Y = " + vf_str(y) + "; f = " + f.str());
        if (!a.torsion_anomaly.is_zero())
            table.fail("tensoriality.torsion-tensorial", trial,
                       "X = " + vf_str(x) + "; Y = " + vf_str(y) + "; f = " + f.str() +
                           "; anomaly = " + vf_str(a.torsion_anomaly));
        if (!a.curvature_anomaly.is_zero())
            table.fail("tensoriality.curvature-tensorial", trial,
                       "X = " + vf_str(x) + "; Y = " + vf_str(y) + "; Z = " + vf_str(z) +
                           "; f = " + f.str() + "; anomaly = " + vf_str(a.curvature_anomaly));
    }
    return table.results();
}

std::vector<CheckResult> suite_bianchi(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    CheckTable table;
    if (!is_involution(conn.rho())) {
        table.declare("bianchi.skipped-non-involutive-rho");
        return table.results();
    }
    Sampler s(seed);
    table.declare("bianchi.identity");
    for (int trial = 0; trial < trials; ++trial) {
        VectorField x = sample_field(s, model.chart);
        VectorField y = sample_field(s, model.chart);
        VectorField z = sample_field(s, model.chart);
        auto [lhs, rhs] = bianchi_sides(conn, x, y, z);
        if (lhs != rhs)
            table.fail("bianchi.identity", trial,
                       "X = " + vf_str(x) + "; Y = " + vf_str(y) + "; Z = " + vf_str(z) +
                           "; lhs-rhs = " + vf_str(lhs - rhs));
    }
    return table.results();
}

std::vector<CheckResult> suite_covariance(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    Sampler s(seed);
    CheckTable table;
    table.declare("covariance.connection-oracle");
    table.declare("covariance.rho-tensorial");
    table.declare("covariance.torsion");
    table.declare("covariance.curvature");
    std::vector<CoordinateChange> library;
    if (!model.changes.empty())
        for (const auto& [cname, change] : model.changes)
            library.push_back(change);
    else
        library = s.change_library(model.chart, 4);
    std::vector<std::optional<OddQuasiConnection>> transformed(library.size());
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t k = trial % library.size();
        const CoordinateChange& c = library[k];
        if (!transformed[k])
            transformed[k] = transform(conn, c);
        const OddQuasiConnection& primed = *transformed[k];
        VectorField x = sample_field(s, model.chart);
        VectorField y = sample_field(s, model.chart);
        VectorField z = sample_field(s, model.chart);
        VectorField xp = transform(x, c);
        VectorField yp = transform(y, c);
        VectorField zp = transform(z, c);
        if (nabla(primed, xp, yp) != transform(nabla(conn, x, y), c))
            table.fail("covariance.connection-oracle", trial,
                       "change " + std::to_string(k) + "; X = " + vf_str(x) + "; Y = " + vf_str(y));
        if (primed.rho().apply(xp) != transform(conn.rho().apply(x), c))
            table.fail("covariance.rho-tensorial", trial,
                       "change " + std::to_string(k) + "; X = " + vf_str(x));
        if (torsion(primed, xp, yp) != transform(torsion(conn, x, y), c))
            table.fail("covariance.torsion", trial,
                       "change " + std::to_string(k) + "; X = " + vf_str(x) + "; Y = " + vf_str(y));
        if (curvature(primed, xp, yp, zp) != transform(curvature(conn, x, y, z), c))
            table.fail("covariance.curvature", trial,
                       "change " + std::to_string(k) + "; X = " + vf_str(x) + "; Y = " + vf_str(y) +
                           "; Z = " + vf_str(z));
    }
    return table.results();
}

std::vector<CheckResult> suite_divergence(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    Sampler s(seed);
    CheckTable table;
    table.declare("divergence.leibniz");
    table.declare("divergence.coordinate-invariance");
    std::vector<CoordinateChange> library = s.change_library(model.chart, 3);
    std::vector<std::optional<OddQuasiConnection>> transformed(library.size());
    for (int trial = 0; trial < trials; ++trial) {
        VectorField x = sample_field(s, model.chart);
        GradedPoly f = sample_function(s, model.chart);
        const unsigned sx = x.parity().value_or(Parity::even()).value();
        const unsigned sf = f.parity().value_or(Parity::even()).value();

        GradedPoly lhs = divergence(conn, f * x);
        GradedPoly rhs = f * divergence(conn, x);
        if (parity_sign(sf) < 0)
            rhs = -rhs;
        GradedPoly rho_term = conn.rho().apply(x, f);
        if (parity_sign(sx * sf) > 0)
                    rhs += rho_term;
                else
                    rhs -= rho_term;
        if (lhs != rhs)
            table.fail("divergence.leibniz", trial,
                       "X = " + vf_str(x) + "; f = " + f.str() + "; residual = " + (lhs - rhs).str());

        const std::size_t k = trial % library.size();
        if (!transformed[k])
            transformed[k] = transform(conn, library[k]);
        GradedPoly primed = divergence(*transformed[k], transform(x, library[k]));
        GradedPoly pushed = library[k].to_target(divergence(conn, x));
        if (primed != pushed)
            table.fail("divergence.coordinate-invariance", trial,
                       "change " + std::to_string(k) + "; X = " + vf_str(x) +
                           "; residual = " + (primed - pushed).str());
    }
    return table.results();
}

std::vector<CheckResult> suite_metric(const Model& model, std::uint64_t seed, int trials) {
    const OddQuasiConnection& conn = model.require_connection();
    CheckTable table;
    if (!model.metric) {
        table.declare("metric.no-metric-declared");
        return table.results();
    }
    Sampler s(seed);
    table.declare("metric.compatibility");
    for (int trial = 0; trial < trials; ++trial) {
        SampleSet samples;
        samples.fields = {sample_field(s, model.chart), sample_field(s, model.chart),
                          sample_field(s, model.chart)};
        for (const CheckResult& r : metric_compatibility_check(conn, *model.metric, samples))
            if (!r.passed)
                table.fail("metric.compatibility", trial, r.counterexample);
    }
    return table.results();
}

} // namespace

std::vector<std::string> suite_names() {
    return {"axioms", "involution", "tensoriality", "bianchi", "covariance", "divergence", "metric",
            "all"};
}

Report run_suite(const Model& model, const std::string& suite, std::uint64_t seed, int trials) {
    using Runner = std::vector<CheckResult> (*)(const Model&, std::uint64_t, int);
    static const std::vector<std::pair<std::string, Runner>> runners = {
        {"axioms", suite_axioms},          {"involution", suite_involution},
        {"tensoriality", suite_tensoriality}, {"bianchi", suite_bianchi},
        {"covariance", suite_covariance},  {"divergence", suite_divergence},
        {"metric", suite_metric},
    };
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.model = model.name;
    report.suite = suite;
    report.seed = seed;
    report.trials = trials;
    bool found = false;
    for (const auto& [rname, runner] : runners) {
        if (suite == "all" || suite == rname) {
            found = true;
            auto results = runner(model, seed, trials);
            report.checks.insert(report.checks.end(), results.begin(), results.end());
            if (suite == rname)
                break;
        }
    }
    if (!found)
        throw InputError("unknown suite '" + suite + "'");
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace oddconn
