#pragma once

#include "oddconn/catalog.hpp"
#include "oddconn/coordinate_change.hpp"

#include <map>
#include <optional>
#include <string>

namespace oddconn {

/// A declarative model: a chart plus connection data and optional named
/// fields, a metric, and coordinate changes. Catalog entries load into the
/// same shape, with the frame and gamma data carried alongside.
struct Model {
    std::string name;
    ChartPtr chart;
    std::optional<OddQuasiConnection> connection;
    std::map<std::string, VectorField> fields;
    std::map<std::string, std::optional<Parity>> field_parities;
    std::optional<Rank2Covariant> metric;
    std::map<std::string, CoordinateChange> changes;

    // Catalog extras (not part of the file format).
    std::optional<Parallelisation> frame;
    std::vector<std::string> frame_names;
    std::optional<GammaData> gammas;

    const OddQuasiConnection& require_connection() const;
};

/// True when the text-representable parts (chart, rho, gamma, fields, metric,
/// changes) coincide.
bool same_model_data(const Model& a, const Model& b);

/// Line-oriented model grammar:
///   chart even <names...>
///   chart odd <names...>
///   rho <a> <b> = <expr>          rho_a^b
///   gamma <b> <a> <c> = <expr>    Gamma_{ba}^c (direction index a)
///   field <name> [even|odd] <coord> = <expr>
///   metric <a> <b> = <expr>       G_{ab}, i.e. G(d_b, d_a)
///   change <name> <coord> = <expr>   with a paired `inverse <name> <coord> = <expr>`
/// Omitted rho/gamma/metric entries default to 0, omitted change coordinates
/// to the identity; duplicates and unknown keys are rejected with positioned
/// diagnostics; '#' starts a comment.
Model parse_model(const std::string& text, const std::string& name = "<model>");

/// Canonical serialization; parse_model(serialize_model(m)) reproduces the
/// text-representable parts of m.
std::string serialize_model(const Model& model);

Model from_catalog(const CatalogEntry& entry);

/// Resolves a catalog name, or else reads the argument as a model file path.
Model load_model_or_catalog(const std::string& arg);

} // namespace oddconn
