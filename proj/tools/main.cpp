#include "oddconn/errors.hpp"
#include "oddconn/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace oddconn;

std::string field_name(const Model& model, std::size_t i) {
    if (model.frame && i < model.frame_names.size())
        return model.frame_names[i];
    return "d_" + model.chart->name(i);
}

const std::vector<VectorField>& basis_or_frame(const Model& model, std::vector<VectorField>& storage) {
    if (model.frame)
        return model.frame->frame();
    storage.clear();
    for (std::size_t a = 0; a < model.chart->dim(); ++a)
        storage.push_back(VectorField::basis(model.chart, a));
    return storage;
}

/// Renders a vector field as a combination of the basis used for tables.
std::string combination_str(const Model& model, const VectorField& v) {
    std::vector<GradedPoly> coeffs;
    if (model.frame)
        coeffs = model.frame->frame_components(v);
    else
        coeffs = v.components();
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + coeffs[i].str() + ")*" + field_name(model, i);
    }
    return out.empty() ? "0" : out;
}

int cmd_components(const Model& model, const std::string& object) {
    const OddQuasiConnection& conn = model.require_connection();
    const std::size_t d = model.chart->dim();
    std::vector<VectorField> storage;
    const std::vector<VectorField>& basis = basis_or_frame(model, storage);

    if (object == "christoffel") {
        std::size_t nonzero = 0;
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t c = 0; c < d; ++c)
                    if (!conn.christoffel(b, a, c).is_zero()) {
                        ++nonzero;
                        std::cout << "gamma " << model.chart->name(b) << " " << model.chart->name(a)
                                  << " " << model.chart->name(c) << " = "
                                  << conn.christoffel(b, a, c).str() << "\n";
                    }
        std::cout << "nonzero components: " << nonzero << " of " << d * d * d << "\n";
        return 0;
    }
    if (object == "nabla") {
        std::size_t nonzero = 0;
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b) {
                VectorField v = nabla(conn, basis[a], basis[b]);
                if (v.is_zero())
                    continue;
                ++nonzero;
                std::cout << "nabla(" << field_name(model, a) << ", " << field_name(model, b)
                          << ") = " << combination_str(model, v) << "\n";
            }
        std::cout << "nonzero components: " << nonzero << " of " << basis.size() * basis.size() << "\n";
        return 0;
    }
    if (object == "torsion") {
        std::size_t nonzero = 0;
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b) {
                VectorField v = torsion(conn, basis[a], basis[b]);
                if (v.is_zero())
                    continue;
                ++nonzero;
                std::cout << "T(" << field_name(model, a) << ", " << field_name(model, b)
                          << ") = " << combination_str(model, v) << "\n";
            }
        std::cout << "nonzero components: " << nonzero << " of " << basis.size() * basis.size() << "\n";
        return 0;
    }
    if (object == "curvature") {
        std::size_t nonzero = 0;
        const std::size_t total = basis.size() * basis.size() * basis.size();
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b)
                for (std::size_t c = 0; c < basis.size(); ++c) {
                    VectorField v = curvature(conn, basis[a], basis[b], basis[c]);
                    if (v.is_zero())
                        continue;
                    ++nonzero;
                    std::cout << "R(" << field_name(model, a) << ", " << field_name(model, b) << ")"
                              << field_name(model, c) << " = " << combination_str(model, v) << "\n";
                }
        std::cout << "nonzero components: " << nonzero << " of " << total << "\n";
        return 0;
    }
    if (object == "divergence") {
        for (std::size_t a = 0; a < basis.size(); ++a)
            std::cout << "Div " << field_name(model, a) << " = " << divergence(conn, basis[a]).str()
                      << "\n";
        for (const auto& [fname, field] : model.fields) {
            bool in_frame = false;
            for (const auto& n : model.frame_names)
                in_frame = in_frame || n == fname;
            if (!in_frame)
                std::cout << "Div " << fname << " = " << divergence(conn, field).str() << "\n";
        }
        return 0;
    }
    throw InputError("unknown object '" + object + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic kernel for odd connections on coordinate superdomains"};
    app.require_subcommand(1);

    std::string model_arg, suite = "all", format = "text", object;
    std::uint64_t seed = 1;
    int trials = 32;

    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite against a model");
    verify->add_option("model", model_arg, "Catalog entry or model file")->required();
    verify->add_option("--suite", suite, "axioms|involution|tensoriality|bianchi|covariance|divergence|metric|all");
    verify->add_option("--seed", seed, "Random seed (printed in the report)");
    verify->add_option("--trials", trials, "Sampled trials per check")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "text|machine-readable")
        ->check(CLI::IsMember({"text", "machine-readable"}));

    CLI::App* components = app.add_subcommand("components", "Print component tables");
    components->add_option("model", model_arg, "Catalog entry or model file")->required();
    components->add_option("--object", object, "nabla|torsion|curvature|divergence|christoffel")
        ->required();

    CLI::App* catalog = app.add_subcommand("catalog", "Built-in example models");
    CLI::App* catalog_list = catalog->add_subcommand("list", "List catalog entries");
    std::string show_name;
    CLI::App* catalog_show = catalog->add_subcommand("show", "Print a catalog entry as a model file");
    catalog_show->add_option("name", show_name, "Catalog entry")->required();
    catalog->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            Model model = load_model_or_catalog(model_arg);
            Report report = run_suite(model, suite, seed, trials);
            std::cout << (format == "text" ? render_text(report) : render_machine(report));
            return report.all_passed() ? 0 : 1;
        }
        if (components->parsed()) {
            Model model = load_model_or_catalog(model_arg);
            return cmd_components(model, object);
        }
        if (catalog_list->parsed()) {
            for (const auto& name : catalog_names())
                std::cout << name << "\n";
            return 0;
        }
        if (catalog_show->parsed()) {
            std::cout << serialize_model(from_catalog(catalog_get(show_name)));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << model_arg << ":" << e.line << ":" << e.column << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
