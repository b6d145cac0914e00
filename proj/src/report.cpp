#include "oddconn/report.hpp"

#include <iomanip>
#include <sstream>

namespace oddconn {

std::string render_text(const Report& report) {
    std::ostringstream os;
    os << "model:  " << report.model << "\n";
    os << "suite:  " << report.suite << "\n";
    os << "seed:   " << report.seed << "\n";
    os << "trials: " << report.trials << "\n";
    for (const auto& c : report.checks) {
        os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << "\n";
        if (!c.passed)
            os << "         " << c.counterexample << "\n";
    }
    os << "result: " << (report.all_passed() ? "pass" : "fail") << " (" << report.checks.size()
       << " checks, " << std::fixed << std::setprecision(2) << report.elapsed_seconds << "s)\n";
    return os.str();
}

std::string render_machine(const Report& report) {
    std::ostringstream os;
    os << "report-version 1\n";
    os << "model " << report.model << "\n";
    os << "suite " << report.suite << "\n";
    os << "seed " << report.seed << "\n";
    os << "trials " << report.trials << "\n";
    for (const auto& c : report.checks) {
        os << "check " << c.name << " " << (c.passed ? "pass" : "fail") << "\n";
        if (!c.passed)
            os << "counterexample " << c.name << " " << c.counterexample << "\n";
    }
    os << "result " << (report.all_passed() ? "pass" : "fail") << "\n";
    return os.str();
}

} // namespace oddconn
