#include "mothersolve/report.hpp"

#include <json.hpp>

#include <sstream>

namespace msv {

std::string Report::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["all_pass"] = all_pass();
    if (!config_echo.empty()) j["config"] = nlohmann::json::parse(config_echo);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json r;
        r["id"] = c.id;
        r["detail"] = c.detail;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", c.measured);
        r["measured"] = std::string(buf);
        std::snprintf(buf, sizeof(buf), "%.17g", c.expected);
        r["expected"] = std::string(buf);
        std::snprintf(buf, sizeof(buf), "%.17g", c.tol);
        r["tolerance"] = std::string(buf);
        r["pass"] = c.pass;
        arr.push_back(r);
    }
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.detail;
        os << "  (measured " << c.measured;
        if (c.tol > 0) os << ", tol " << c.tol;
        os << ")\n";
    }
    os << (all_pass() ? "ALL CHECKS PASSED\n" : "SOME CHECKS FAILED\n");
    return os.str();
}

}  // namespace msv
