// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.
#include <cstdio>

#include "mothersolve/pipeline.hpp"

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    msv::RunConfig cfg;  // baseline: Q0 = Q1 = 1, w in {0.5, 1, 2}, N in {10, 20, 40}
    msv::Report rep;
    try {
        rep = msv::run_verification(cfg);
    } catch (const std::exception& e) {
        std::printf("ACCEPTANCE aborted: %s\n", e.what());
        return 2;
    }
    for (const auto& c : rep.checks) {
        std::printf("ACCEPTANCE %-24s %s  measured=%.6g", c.id.c_str(),
                    c.pass ? "PASS" : "FAIL", c.measured);
        if (c.tol > 0) std::printf(" tol=%.3g", c.tol);
        std::printf("  (%s)\n", c.detail.c_str());
    }
    std::printf(rep.all_pass() ? "ACCEPTANCE SUITE: ALL PASS\n" : "ACCEPTANCE SUITE: FAILURES\n");
    return rep.all_pass() ? 0 : 1;
}
