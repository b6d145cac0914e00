#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oddconn {

/// Outcome of one named check. A failing check carries a self-contained
/// counterexample payload (inputs and residual in expression syntax).
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string counterexample;
};

/// Result of running a verification suite. Given the same model, seed and
/// trial count the machine rendering is byte-identical across runs; wall-clock
/// timing therefore only appears in the text rendering.
struct Report {
    std::string model;
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CheckResult> checks;
    double elapsed_seconds = 0.0;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

std::string render_text(const Report& report);
std::string render_machine(const Report& report);

} // namespace oddconn
