#pragma once

#include "oddconn/model.hpp"
#include "oddconn/report.hpp"

namespace oddconn {

/// Suite names accepted by cmd_verify: axioms, involution, tensoriality,
/// bianchi, covariance, divergence, metric, all.
std::vector<std::string> suite_names();

/// Runs the named suite with reproducible seeded sampling. Checks execute in
/// a fixed order; the returned report is deterministic for fixed inputs.
Report run_suite(const Model& model, const std::string& suite, std::uint64_t seed, int trials);

} // namespace oddconn
