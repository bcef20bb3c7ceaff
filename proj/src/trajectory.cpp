#include "mothersolve/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace msv {

std::vector<double> Trajectory::real_crossings() const {
    std::vector<double> xs;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double y0 = pts[i].imag(), y1 = pts[i + 1].imag();
        if ((y0 > 0) != (y1 > 0)) {
            const double t = y0 / (y0 - y1);
            xs.push_back(pts[i].real() + t * (pts[i + 1].real() - pts[i].real()));
        }
    }
    return xs;
}

namespace {

// sqrt(R) tracked by continuity: pick the root closest to ref.
Complex tracked_sqrtR(const SpectralCurve& c, Complex z, Complex ref) {
    Complex v = std::sqrt(c.R(z));
    if (std::norm(v - ref) > std::norm(v + ref)) v = -v;
    return v;
}

// Direction fields of unit speed.  mode 0: critical trajectory
// (sqrt(R) dz purely imaginary); mode 1: steepest ascent (sqrt(R) dz real
// positive).  sigma flips the orientation.
struct Field {
    const SpectralCurve* c;
    int mode;
    double sigma;
    mutable Complex ref;  // branch-tracking reference for sqrt(R)

    Complex operator()(Complex z) const {
        const Complex v = tracked_sqrtR(*c, z, ref);
        ref = v;
        const Complex dir = (mode == 0) ? Complex(0, 1) * std::conj(v) / std::abs(v)
                                        : std::conj(v) / std::abs(v);
        return sigma * dir;
    }
};

struct StepResult {
    Complex z;
    double err;
};

// One Runge-Kutta-Fehlberg 4(5) step of width h along a unit-speed field.
StepResult rk45_step(const Field& f, Complex z, double h) {
    const Complex k1 = f(z);
    const Complex k2 = f(z + h * (k1 / 4.0));
    const Complex k3 = f(z + h * (3.0 / 32 * k1 + 9.0 / 32 * k2));
    const Complex k4 = f(z + h * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 + 7296.0 / 2197 * k3));
    const Complex k5 = f(z + h * (439.0 / 216 * k1 - 8.0 * k2 + 3680.0 / 513 * k3 - 845.0 / 4104 * k4));
    const Complex k6 = f(z + h * (-8.0 / 27 * k1 + 2.0 * k2 - 3544.0 / 2565 * k3 +
                                  1859.0 / 4104 * k4 - 11.0 / 40 * k5));
    const Complex z4 = z + h * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 + 2197.0 / 4104 * k4 - k5 / 5.0);
    const Complex z5 = z + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 + 28561.0 / 56430 * k4 -
                                9.0 / 50 * k5 + 2.0 / 55 * k6);
    return {z5, std::abs(z5 - z4)};
}

struct TraceTarget {
    std::vector<std::pair<Complex, TrajEnd>> ends;  // capture points
    double min_travel = 0.0;  // arclength before captures are armed
};

// Integrates the field from z_start until a capture point, escape, or budget
// exhaustion.  Applies a drift correction that projects the point back onto
// the invariant level set (Re phi = const for critical arcs, Im phi = const
// for ascent paths) using the accumulated local increment of phi.
Trajectory integrate(const SpectralCurve& c, Complex z_start, Complex v_start_ref, int mode,
                     double sigma, const TraceTarget& tgt, const TraceOptions& opt,
                     TrajKind kind) {
    Trajectory out;
    out.kind = kind;
    const double scale =
        std::max({std::abs(c.z1), c.c0, c.params.w, 1.0 / c.params.w, 1.0});
    const double escape = opt.escape_radius_mul * scale;
    const double max_len = opt.max_arclen_mul * scale;

    Field f{&c, mode, sigma, v_start_ref};
    Complex z = z_start;
    double s = 0.0;
    double h = opt.max_step;
    Complex drift = 0.0;  // accumulated phi increment (should stay on i R / R)
    out.pts.push_back(z);
    out.s.push_back(0.0);

    for (int step = 0; step < opt.max_steps; ++step) {
        const Complex ref_before = f.ref;
        StepResult r = rk45_step(f, z, h);
        if (r.err > opt.rk_tol && h > 1e-12) {
            f.ref = ref_before;
            h = std::max(1e-12, 0.5 * h);
            continue;
        }
        // phi increment over the step (Simpson on tracked sqrt(R)); the
        // level-set projection below consumes it, so its quadrature error
        // must stay well below the drift budget.
        const Complex va = tracked_sqrtR(c, z, ref_before);
        const Complex vm = tracked_sqrtR(c, 0.5 * (z + r.z), va);
        const Complex vb = tracked_sqrtR(c, r.z, vm);
        const Complex dphi = (va + 4.0 * vm + vb) / 6.0 * (r.z - z) * c.s();
        drift += dphi;

        z = r.z;
        s += std::abs(r.z - out.pts.back());

        // Level-set projection: critical arcs keep Re phi, ascent keeps Im phi.
        const double bad = (mode == 0) ? drift.real() : drift.imag();
        if (std::abs(bad) > 1e-13) {
            const Complex v0 = tracked_sqrtR(c, z, f.ref) * c.s();
            if (std::abs(v0) > 1e-10) {
                const Complex corr = (mode == 0) ? Complex(-bad, 0.0) / v0 : Complex(0.0, -bad) / v0;
                z += corr;
                drift -= (mode == 0) ? Complex(bad, 0.0) : Complex(0.0, bad);
            }
        }

        out.pts.push_back(z);
        out.s.push_back(s);

        if (r.err < 0.1 * opt.rk_tol) h = std::min(opt.max_step, 1.3 * h);

        if (s > tgt.min_travel) {
            for (const auto& [zc, which] : tgt.ends) {
                if (std::abs(z - zc) < std::max(opt.end_radius, 4.0 * h) &&
                    std::abs(z - zc) < 1e-2 * scale) {
                    // Close in: shrink steps near the capture point.
                    while (std::abs(z - zc) > opt.end_radius && h > 1e-12) {
                        h = std::min(h, 0.25 * std::abs(z - zc));
                        const Complex rb = f.ref;
                        StepResult rr = rk45_step(f, z, h);
                        if (std::abs(rr.z - zc) > std::abs(z - zc)) {
                            f.ref = rb;
                            break;  // walked past the tip; snap
                        }
                        z = rr.z;
                        s += std::abs(rr.z - out.pts.back());
                        out.pts.push_back(z);
                        out.s.push_back(s);
                    }
                    out.pts.push_back(zc);
                    out.s.push_back(s + std::abs(zc - z));
                    out.term = which;
                    return out;
                }
            }
        }
        if (std::abs(z) > escape || s > max_len) {
            out.term = TrajEnd::Open;
            return out;
        }
    }
    out.term = TrajEnd::Open;
    return out;
}

// Launch directions at a simple zero z*: arg d = (pi - arg R'(z*) + 2 pi k)/3
// for critical arcs; ascent directions interleave at (- arg R' + 2 pi k)/3...
// derived from requiring sqrt(R'(z*) d) d dtau to be purely imaginary (real
// positive, respectively).
std::array<Complex, 3> simple_zero_directions(const SpectralCurve& c, Complex zstar, int mode) {
    // R'(z*) via finite ratio: R(z) ~ A (z - z*) with A = lim R/(z-z*).
    const Complex zeps = zstar + 1e-6;
    const Complex A = c.R(zeps) / (zeps - zstar);
    const double phi = std::arg(A);
    std::array<Complex, 3> dirs;
    for (int k = 0; k < 3; ++k) {
        const double th = (mode == 0) ? (M_PI - phi + 2.0 * M_PI * k) / 3.0
                                      : (-phi + 2.0 * M_PI * k) / 3.0;
        dirs[k] = std::polar(1.0, th);
    }
    return dirs;
}

}  // namespace

std::vector<Trajectory> trace_critical_trajectories(const SpectralCurve& c,
                                                    const TraceOptions& opt) {
    const double eps = opt.launch_eps_rel * std::abs(c.z1 - c.z2);
    const auto dirs = simple_zero_directions(c, c.z1, 0);
    std::vector<Trajectory> out;
    for (const Complex& d : dirs) {
        const Complex z0 = c.z1 + eps * d;
        // Reference branch at launch: sqrt(R)(z0) with sign making the field
        // point away from z1.
        Complex v = std::sqrt(c.R(z0));
        Complex dir = Complex(0, 1) * std::conj(v) / std::abs(v);
        double sigma = 1.0;
        if (std::real(dir * std::conj(d)) < 0.0) sigma = -1.0;
        TraceTarget tgt;
        tgt.ends = {{c.z2, TrajEnd::AtZ2}, {Complex(c.c0, 0.0), TrajEnd::AtC0}};
        tgt.min_travel = 10.0 * eps;
        Trajectory t = integrate(c, z0, v, 0, sigma, tgt, opt, TrajKind::CriticalMiddle);
        t.start = TrajEnd::AtZ1;
        t.pts.insert(t.pts.begin(), c.z1);
        t.s.insert(t.s.begin(), 0.0);
        for (size_t i = 1; i < t.s.size(); ++i) t.s[i] += eps;
        if (t.term != TrajEnd::AtZ2) {
            std::ostringstream os;
            os << "critical trajectory from z1 did not terminate at z2 (end="
               << int(t.term) << "); phase violation?";
            throw topology_error(os.str());
        }
        out.push_back(std::move(t));
    }
    // Classify by real-axis crossing.
    const double wl = -1.0 / c.params.w;
    for (Trajectory& t : out) {
        const auto xs = t.real_crossings();
        if (xs.size() != 1)
            throw topology_error("critical trajectory crosses the real axis more than once");
        const double x = xs[0];
        if (x < wl)
            t.kind = TrajKind::CriticalLeft;
        else if (x < 0.0)
            t.kind = TrajKind::CriticalMiddle;
        else
            t.kind = TrajKind::CriticalRight;
    }
    // All three classes must appear.
    auto has = [&](TrajKind k) {
        return std::any_of(out.begin(), out.end(), [&](const Trajectory& t) { return t.kind == k; });
    };
    if (!has(TrajKind::CriticalLeft) || !has(TrajKind::CriticalMiddle) || !has(TrajKind::CriticalRight))
        throw topology_error("critical trajectories do not realize the Left/Middle/Right pattern");
    return out;
}

std::pair<Trajectory, Trajectory> steepest_ascent_paths(const SpectralCurve& c,
                                                        const TraceOptions& opt) {
    const double eps = opt.launch_eps_rel * std::abs(c.z1 - c.z2);
    const auto dirs = simple_zero_directions(c, c.z1, 1);
    Trajectory found;
    bool ok = false;
    for (const Complex& d : dirs) {
        const Complex z0 = c.z1 + eps * d;
        Complex v = std::sqrt(c.R(z0));
        // ascent: sqrt(R) dz real positive; fix the branch sign so that the
        // launch direction d has v*d with positive real part.
        if (std::real(v * d) < 0.0) v = -v;
        TraceTarget tgt;
        tgt.ends = {{Complex(c.c0, 0.0), TrajEnd::AtC0}};
        tgt.min_travel = 10.0 * eps;
        Trajectory t = integrate(c, z0, v, 1, 1.0, tgt, opt, TrajKind::SteepestAscent);
        t.start = TrajEnd::AtZ1;
        t.pts.insert(t.pts.begin(), c.z1);
        t.s.insert(t.s.begin(), 0.0);
        for (size_t i = 1; i < t.s.size(); ++i) t.s[i] += eps;
        if (t.term == TrajEnd::AtC0) {
            found = std::move(t);
            ok = true;
            break;
        }
    }
    if (!ok) throw topology_error("no steepest ascent path from z1 terminates at c0");
    // Gamma2 is the conjugate path from z2 to c0.
    Trajectory g2 = found;
    g2.start = TrajEnd::AtZ2;
    g2.term = TrajEnd::AtC0;
    for (Complex& z : g2.pts) z = std::conj(z);
    return {std::move(found), std::move(g2)};
}

std::pair<Trajectory, Trajectory> loops_from_c0(const SpectralCurve& c, const TraceOptions& opt,
                                                std::vector<Trajectory>* raw_out) {
    // Four equiangular directions at the double zero: sqrt(R) ~ A (z - c0)
    // with A^2 = lim R/(z-c0)^2; trajectory rays satisfy arg(A d^2) = +-pi/2.
    const Complex zeps = Complex(c.c0, 0.0) + Complex(1e-6, 1e-6);
    const Complex A2 = c.R(zeps) / ((zeps - c.c0) * (zeps - c.c0));
    const double phiA = 0.5 * std::arg(A2);
    std::vector<Trajectory> loops;
    const double eps = 1e-6 * std::max(1.0, c.c0);
    for (int k = 0; k < 4; ++k) {
        const double th = (M_PI / 2.0 - phiA + M_PI * k) / 1.0;  // arg d = (pi/2 - arg A)/1 + k pi/...
        // Solve arg(A) + 2 arg(d) = pi/2 + k pi  =>  arg d = (pi/2 + k pi - arg A)/2
        const double argd = (M_PI / 2.0 + k * M_PI - 2.0 * phiA) / 2.0;
        (void)th;
        const Complex d = std::polar(1.0, argd);
        const Complex z0 = Complex(c.c0, 0.0) + eps * d;
        Complex v = std::sqrt(c.R(z0));
        Complex dir = Complex(0, 1) * std::conj(v) / std::abs(v);
        double sigma = 1.0;
        if (std::real(dir * std::conj(d)) < 0.0) sigma = -1.0;
        TraceTarget tgt;
        tgt.ends = {{Complex(c.c0, 0.0), TrajEnd::AtC0}};
        // the loop must leave the capture zone before re-approach counts
        tgt.min_travel = std::max(0.1, 20.0 * opt.max_step);
        Trajectory t = integrate(c, z0, v, 0, sigma, tgt, opt, TrajKind::Loop);
        t.start = TrajEnd::AtC0;
        if (t.term != TrajEnd::AtC0) throw topology_error("loop from c0 did not close");
        t.pts.insert(t.pts.begin(), Complex(c.c0, 0.0));
        t.s.insert(t.s.begin(), 0.0);
        for (size_t i = 1; i < t.s.size(); ++i) t.s[i] += eps;
        loops.push_back(std::move(t));
    }
    if (raw_out) *raw_out = loops;
    // Deduplicate by winding signature: inner loop encircles w only, outer
    // loop encircles -1/w, 0, w.
    Trajectory inner, outer;
    bool have_inner = false, have_outer = false;
    for (Trajectory& t : loops) {
        const double ww = std::abs(trajectory_winding(t, Complex(c.params.w, 0.0)));
        const double w0 = std::abs(trajectory_winding(t, Complex(0.0, 0.0)));
        const double wm = std::abs(trajectory_winding(t, Complex(-1.0 / c.params.w, 0.0)));
        if (ww > 0.5 && w0 < 0.5 && wm < 0.5 && !have_inner) {
            inner = std::move(t);
            have_inner = true;
        } else if (ww > 0.5 && w0 > 0.5 && wm > 0.5 && !have_outer) {
            outer = std::move(t);
            have_outer = true;
        }
    }
    if (!have_inner || !have_outer)
        throw topology_error("loops from c0 do not realize the inner/outer winding pattern");
    return {std::move(inner), std::move(outer)};
}

double trajectory_winding(const Trajectory& t, Complex z) {
    std::vector<Complex> closed = t.pts;
    return winding_number(closed, z);
}

}  // namespace msv
