#ifndef MOTHERSOLVE_REPORT_HPP
#define MOTHERSOLVE_REPORT_HPP

#include <string>
#include <vector>

namespace msv {

// One verification check: an identity or rate statement with its measured
// value, the comparison target, and the tolerance it was held to.
struct CheckRecord {
    std::string id;       // stable identifier, e.g. "duality-pairings"
    std::string detail;   // what was measured, human readable
    double measured = 0;  // worst measured discrepancy / statistic
    double expected = 0;  // target value (usually 0 for residuals)
    double tol = 0;       // pass threshold (0 for pure monotonicity checks)
    bool pass = false;
};

struct Report {
    std::vector<CheckRecord> checks;
    std::string config_echo;  // the configuration the run used (JSON text)

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string to_json() const;
    std::string to_text() const;
};

}  // namespace msv

#endif
