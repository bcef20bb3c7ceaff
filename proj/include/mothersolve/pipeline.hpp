#ifndef MOTHERSOLVE_PIPELINE_HPP
#define MOTHERSOLVE_PIPELINE_HPP

#include <string>
#include <vector>

#include "mothersolve/asymptotics.hpp"
#include "mothersolve/report.hpp"

namespace msv {

// Run configuration.  Q0/Q1/w are carried as decimal strings to round-trip
// through config files without precision loss; the doubles are parsed views.
struct RunConfig {
    std::string Q0_str = "1", Q1_str = "1", w_str = "1";
    double Q0 = 1.0, Q1 = 1.0, w = 1.0;
    std::vector<int> N_list = {10, 20, 40};
    int r0 = 0;
    int precision_digits = 0;  // 0: per-degree policy
    double crit_tol = 1e-12;
    std::string out_dir = "out";
    unsigned seed = 1;
    std::vector<std::string> figures_w = {"0.5", "1", "2"};
    int boundary_samples = 512;
    int curve_samples = 600;  // rows per emitted trajectory CSV

    static RunConfig from_json(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
    std::string to_json() const;
    void validate() const;  // throws std::domain_error (usage errors)
};

// Geometry for one (Q0, Q1, w): the full potential bundle.
PotentialData solve_geometry(double Q0, double Q1, double w);

// Polynomial bundle for one N at the configured r0.
struct PolyBundle {
    MomentTable table;
    PolySolution sol;       // degree n = N + r0, norms and zeros filled
};
PolyBundle solve_poly(const RunConfig& cfg, int N, int digits_override = 0);

// Output emission.  All writes are deterministic for a fixed config.
void write_solve_bundle(const RunConfig& cfg, const PotentialData& pd, const std::string& dir);
void write_poly_bundle(const RunConfig& cfg, const PolyBundle& pb, const std::string& dir);
void write_figures(const RunConfig& cfg, const std::string& dir);

// The acceptance suite: every criterion evaluated at its pinned tolerance.
// `quick` restricts the rate criteria to N in {10, 20} (used by unit tests;
// the shipped acceptance run uses quick = false).  A non-empty out_dir also
// receives the strong-asymptotics error table as field_errors.csv
// (columns re,im,N,abs_ratio_err).
Report run_verification(const RunConfig& cfg, bool quick = false,
                        const std::string& out_dir = "");

// Thread cap from MOTHERSOLVE_THREADS (>=1); hardware concurrency otherwise.
int thread_cap();

}  // namespace msv

#endif
