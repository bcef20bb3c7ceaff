#ifndef MOTHERSOLVE_TRAJECTORY_HPP
#define MOTHERSOLVE_TRAJECTORY_HPP

#include <vector>

#include "mothersolve/curve.hpp"

namespace msv {

enum class TrajKind { CriticalLeft, CriticalMiddle, CriticalRight, SteepestAscent, Loop };
enum class TrajEnd { AtZ1, AtZ2, AtC0, Open };

// An integrated trajectory of the quadratic differential R(z) dz^2 < 0
// (critical arcs, loops) or a steepest ascent path of Re phi.
struct Trajectory {
    TrajKind kind;
    TrajEnd start = TrajEnd::Open, term = TrajEnd::Open;
    std::vector<Complex> pts;  // ordered samples
    std::vector<double> s;     // arclength parameters

    double length() const { return s.empty() ? 0.0 : s.back(); }
    // Real-axis crossings (linear interpolation between samples).
    std::vector<double> real_crossings() const;
};

struct TraceOptions {
    double rk_tol = 1e-11;       // per-step absolute error target
    double max_step = 1e-3;      // cap on |dz| per step for dense sampling
    double launch_eps_rel = 1e-7;  // offset from the simple zero, rel. |z1-z2|
    double end_radius = 1e-7;    // endpoint capture radius
    double escape_radius_mul = 40.0;  // escape radius in units of the geometry scale
    double max_arclen_mul = 60.0;
    int max_steps = 400000;
};

// Traces the three critical trajectories from z1.  All must terminate at z2
// in the pre-critical phase; classified Left/Middle/Right by where they cross
// the real axis relative to -1/w and 0.  Throws topology_error otherwise.
std::vector<Trajectory> trace_critical_trajectories(const SpectralCurve& c,
                                                    const TraceOptions& opt = {});

// Steepest ascent paths of U0 from z1 (and its conjugate image from z2),
// terminating at c0.
std::pair<Trajectory, Trajectory> steepest_ascent_paths(const SpectralCurve& c,
                                                        const TraceOptions& opt = {});

// The two critical loops through the double zero c0: one enclosing w only,
// one enclosing all three poles.  raw_out, when given, receives all four
// directional traces (diagnostics).
std::pair<Trajectory, Trajectory> loops_from_c0(const SpectralCurve& c,
                                                const TraceOptions& opt = {},
                                                std::vector<Trajectory>* raw_out = nullptr);

// Signed winding number of a trajectory closed by a straight return segment.
double trajectory_winding(const Trajectory& t, Complex z);

}  // namespace msv

#endif
