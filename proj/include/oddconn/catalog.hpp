#pragma once

#include "oddconn/gamma.hpp"
#include "oddconn/parallelisation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oddconn {

/// A named, validated model: chart, connection data, and whatever extras the
/// construction provides (frame, induced metric, gamma data, named fields).
struct CatalogEntry {
    std::string name;
    ChartPtr chart;
    OddQuasiConnection connection;
    std::optional<Parallelisation> frame;
    std::vector<std::string> frame_names; // parallel to frame->frame()
    std::optional<Rank2Covariant> metric;
    std::optional<GammaData> gammas;
    std::map<std::string, VectorField> named_fields;
};

/// Canonical odd connection on R^{n|n}: rho swaps d_{x^a} <-> d_{xi^a},
/// Gamma = 0. Coordinates x1..xn | theta1..thetan.
CatalogEntry canonical_rnn(std::size_t n);

/// The SUSY structure on R^{1|1}: chart (t | theta), frame {P = d_t,
/// D = d_theta - theta d_t}, rho(P) = D, rho(D) = P, and the odd connection
/// annihilating the frame.
CatalogEntry susy_r11();

/// d=4, N=1 super-Minkowski superspace: chart (x0..x3 | th1..th4), frame
/// {P_mu, D^alpha} with D^alpha = d/dth_alpha - 1/4 th_beta (C gamma^mu)^{beta
/// alpha} d_mu, the SUSY odd connection, and the validated gamma data.
CatalogEntry smink44();

/// Weitzenboeck connection over a named built-in frame; `frame_id` is one of
/// "coordinate:<n>", "susy-r11", "shear-r22".
CatalogEntry weitzenbock_entry(const std::string& frame_id);

/// All addressable catalog names (parameterised families are listed with
/// their template argument spelled out for the shipped instances).
std::vector<std::string> catalog_names();

/// Resolves "canonical-r11", "canonical-rnn:<n>", "susy-r11", "smink44",
/// "weitzenbock:<frame-id>". Throws InputError for unknown names.
CatalogEntry catalog_get(const std::string& name);
bool is_catalog_name(const std::string& name);

} // namespace oddconn
