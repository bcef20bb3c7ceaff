#include "mothersolve/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace msv {

namespace {

double geometry_scale(const SpectralCurve& c) {
    return std::max({std::abs(c.z1), c.c0, c.params.w, 1.0 / c.params.w, 1.0});
}

// S1 evaluated stably: near the sheet-two poles 0 and -1/w the half-sum
// P1/2 - sqrt(R)/2 cancels catastrophically, so switch to the direct
// conformal-map form there.
Complex eval_S1_stable(const SpectralCurve& c, Complex z) {
    const double near = 0.08 * std::min({c.params.w, 1.0 / c.params.w, 1.0});
    if (std::abs(z) < near || std::abs(z + 1.0 / c.params.w) < near)
        return eval_S_direct(c, z, Sheet::one);
    return eval_S(c, z, Sheet::one);
}

struct Leg {
    Complex a, b;
};

// Splits [a,b] around poles with semicircular detours and integrates f.
Complex integrate_leg(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                      const std::vector<Complex>& poles, double r_dodge, double tol) {
    struct Window {
        double t1, t2;
        Complex pole;
    };
    std::vector<Window> wins;
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return 0.0;
    for (const Complex& p : poles) {
        // |a + t ab - p|^2 = r^2
        const Complex ap = a - p;
        const double A = len2, B = 2.0 * (ap.real() * ab.real() + ap.imag() * ab.imag());
        const double C = std::norm(ap) - r_dodge * r_dodge;
        const double disc = B * B - 4.0 * A * C;
        if (disc <= 0.0) continue;
        double t1 = (-B - std::sqrt(disc)) / (2.0 * A);
        double t2 = (-B + std::sqrt(disc)) / (2.0 * A);
        t1 = std::max(t1, 0.0);
        t2 = std::min(t2, 1.0);
        if (t1 < t2) wins.push_back({t1, t2, p});
    }
    std::sort(wins.begin(), wins.end(), [](const Window& u, const Window& v) { return u.t1 < v.t1; });

    auto seg_quad = [&](double t1, double t2) -> Complex {
        if (t2 <= t1) return 0.0;
        return integrate_gk([&](double t) { return f(a + t * ab) * ab; }, t1, t2, tol);
    };
    auto arc_quad = [&](const Window& w) -> Complex {
        const Complex zin = a + w.t1 * ab, zout = a + w.t2 * ab;
        const double r1 = std::abs(zin - w.pole), r2 = std::abs(zout - w.pole);
        const double a1 = std::arg(zin - w.pole);
        double a2 = std::arg(zout - w.pole);
        double d = a2 - a1;
        while (d <= -M_PI) d += 2.0 * M_PI;
        while (d > M_PI) d -= 2.0 * M_PI;
        if (std::abs(std::abs(d) - M_PI) < 1e-9) d = M_PI;  // pole on the leg: go left
        return integrate_gk(
            [&](double t) {
                const double th = a1 + t * d;
                const double r = r1 + t * (r2 - r1);
                const Complex e = std::polar(1.0, th);
                const Complex z = w.pole + r * e;
                const Complex dz = ((r2 - r1) + Complex(0, 1) * r * d) * e;
                return f(z) * dz;
            },
            0.0, 1.0, tol);
    };

    Complex acc = 0.0;
    double cur = 0.0;
    for (const Window& w : wins) {
        acc += seg_quad(cur, w.t1);
        acc += arc_quad(w);
        cur = w.t2;
    }
    acc += seg_quad(cur, 1.0);
    return acc;
}

// Escape direction at z1: bisector of the wider angular gap between the two
// cut arcs leaving z1 (Gamma0 and Gamma1).
Complex escape_direction(const PotentialData& pd) {
    const auto& g0 = pd.body.gamma0.pts;  // ordered z1 -> z2
    const auto& g1 = pd.body.gamma1.pts;  // ordered z1 -> c0
    Complex d0 = g0[1] - g0[0];  // away from z1 along Gamma0
    Complex d1 = g1[1] - g1[0];  // away from z1 along Gamma1
    d0 /= std::abs(d0);
    d1 /= std::abs(d1);
    const double alpha = std::arg(d0);
    double gap = std::arg(d1) - alpha;
    while (gap < 0) gap += 2.0 * M_PI;
    double bis = alpha + 0.5 * gap;
    if (gap < M_PI) bis += M_PI;  // take the wider sector
    return std::polar(1.0, bis);
}

}  // namespace

std::vector<Complex> plan_path(const PotentialData& pd, Complex from, Complex to,
                               bool around_left) {
    const SpectralCurve& c = pd.curve;
    const double scale = geometry_scale(c);
    const double Y = 2.2 * scale;
    const double X = 3.0 * scale;
    auto ok = [&](const std::vector<Complex>& wp) {
        for (size_t i = 0; i + 1 < wp.size(); ++i)
            if (c.cut.segment_crosses(wp[i], wp[i + 1])) return false;
        return true;
    };
    // Right-hand detour abscissa: clear of the cut's bounding box.
    double bx1 = -1e300;
    for (const Complex& q : c.cut.points()) bx1 = std::max(bx1, q.real());
    const double XR = std::max(bx1 + 0.6 * scale, c.c0 + 0.3 * scale);
    std::vector<std::vector<Complex>> cands;
    if (!around_left) {
        cands.push_back({from, to});
        cands.push_back({from, Complex(from.real(), Y), Complex(to.real(), Y), to});
        cands.push_back({from, Complex(from.real(), -Y), Complex(to.real(), -Y), to});
        // move right of the cut first, then over or under
        cands.push_back({from, Complex(XR, from.imag()), Complex(XR, Y), Complex(to.real(), Y), to});
        cands.push_back(
            {from, Complex(XR, from.imag()), Complex(XR, -Y), Complex(to.real(), -Y), to});
    }
    cands.push_back({from, Complex(from.real(), Y), Complex(-X, Y), Complex(-X, -Y),
                     Complex(to.real(), -Y), to});
    cands.push_back({from, Complex(from.real(), -Y), Complex(-X, -Y), Complex(-X, Y),
                     Complex(to.real(), Y), to});
    cands.push_back({from, Complex(XR, from.imag()), Complex(XR, Y), Complex(-X, Y),
                     Complex(-X, -Y), Complex(to.real(), -Y), to});
    cands.push_back({from, Complex(XR, from.imag()), Complex(XR, -Y), Complex(-X, -Y),
                     Complex(-X, Y), Complex(to.real(), Y), to});
    for (auto& wp : cands)
        if (ok(wp)) return wp;
    throw branch_error("plan_path: no cut-avoiding route found");
}

Complex integrate_path(const PotentialData& pd, const std::function<Complex(Complex)>& f,
                       const std::vector<Complex>& waypoints, double tol, bool sqrt_sub_at_start) {
    const SpectralCurve& c = pd.curve;
    const std::vector<Complex> poles = {Complex(0.0, 0.0), Complex(c.params.w, 0.0),
                                        Complex(-1.0 / c.params.w, 0.0)};
    const double r_dodge = 0.04 * std::min({c.params.w, 1.0 / c.params.w, 1.0});
    Complex acc = 0.0;
    for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
        if (i == 0 && sqrt_sub_at_start) {
            // z = a + t^2 (b - a) regularizes an inverse-square-root factor
            // at the start point (simple zero of R).
            const Complex a = waypoints[0], ab = waypoints[1] - waypoints[0];
            acc += integrate_gk([&](double t) { return f(a + t * t * ab) * 2.0 * t * ab; }, 0.0,
                                1.0, tol);
            continue;
        }
        acc += integrate_leg(f, waypoints[i], waypoints[i + 1], poles, r_dodge, tol);
    }
    return acc;
}

Complex eval_phi(const PotentialData& pd, Complex z) {
    const SpectralCurve& c = pd.curve;
    if (std::abs(z - c.z1) < 1e-14) return 0.0;
    const double scale = geometry_scale(c);
    const Complex esc = c.z1 + 0.08 * scale * escape_direction(pd);
    auto f = [&](Complex s) { return sqrt_R0(c, s); };
    Complex val = integrate_path(pd, f, {c.z1, esc}, 1e-12, /*sqrt_sub_at_start=*/true);
    if (std::abs(z - esc) > 1e-14) val += integrate_path(pd, f, plan_path(pd, esc, z));
    return val;
}

double eval_U0(const PotentialData& pd, Complex z) { return eval_phi(pd, z).real(); }

double eval_scriptU(const PotentialData& pd, Complex z) {
    const SpectralCurve& c = pd.curve;
    auto f = [&](Complex s) { return eval_S1_stable(c, s); };
    const Complex I = integrate_path(pd, f, plan_path(pd, pd.z0, z));
    return std::log1p(std::norm(z)) - std::log1p(std::norm(pd.z0)) - 2.0 * I.real();
}

double eval_scriptU2D(const PotentialData& pd, Complex z) {
    return pd.curve.s() * eval_scriptU(pd, z);
}

Complex eval_g(const PotentialData& pd, Complex z) {
    const auto& q = pd.body.quad;
    if (pd.curve.cut.possibly_within(z, 0.05))
        throw branch_error("eval_g: z too close to Gamma0 for the node sum");
    Complex acc = 0.0;
    double theta = std::arg(z - pd.body.arc0.at(0.0));  // anchor at the z1 end
    Complex prev = z - pd.body.arc0.at(0.0);
    for (size_t j = 0; j < q.z.size(); ++j) {
        const Complex d = z - q.z[j];
        theta += std::arg(d / prev);  // |increment| < pi for dense nodes
        prev = d;
        acc += q.weight[j] * q.rho[j] * Complex(std::log(std::abs(d)), theta);
    }
    return acc;
}

Complex cauchy_mu0(const PotentialData& pd, Complex z) {
    if (pd.curve.cut.possibly_within(z, 1e-6))
        throw branch_error("cauchy_mu0: z within 1e-6 of Gamma0");
    const auto& q = pd.body.quad;
    Complex acc = 0.0;
    for (size_t j = 0; j < q.z.size(); ++j) acc += q.weight[j] * q.rho[j] / (z - q.z[j]);
    return acc;
}

std::vector<Complex> mu0_moments(const PotentialData& pd, int kmax) {
    const auto& q = pd.body.quad;
    std::vector<Complex> m(kmax + 1, Complex(0.0));
    for (size_t j = 0; j < q.z.size(); ++j) {
        Complex p = q.weight[j] * q.rho[j];
        for (int k = 0; k <= kmax; ++k) {
            m[k] += p;
            p *= q.z[j];
        }
    }
    return m;
}

double U_mu0(const PotentialData& pd, Complex z) {
    const SpectralCurve& c = pd.curve;
    const MotherBody& mb = pd.body;
    if (!c.cut.possibly_within(z, 0.25)) {
        const auto& q = mb.quad;
        double acc = 0.0;
        for (size_t j = 0; j < q.z.size(); ++j)
            acc += q.weight[j] * q.rho[j] * std::log(std::abs(z - q.z[j]));
        return -acc;
    }
    // Near-field: windowed quadrature with the singular point at a window
    // boundary so bisection resolves the log kernel.
    const double L = mb.arc0.length;
    // nearest arclength by coarse scan + golden refinement
    double sbest = 0.0, dbest = 1e300;
    const int coarse = 600;
    for (int i = 0; i <= coarse; ++i) {
        const double s = L * i / coarse;
        const double d = std::abs(z - mb.arc0.at(s));
        if (d < dbest) {
            dbest = d;
            sbest = s;
        }
    }
    {
        double lo = std::max(0.0, sbest - L / coarse), hi = std::min(L, sbest + L / coarse);
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (std::abs(z - mb.arc0.at(m1)) < std::abs(z - mb.arc0.at(m2)))
                hi = m2;
            else
                lo = m1;
        }
        sbest = 0.5 * (lo + hi);
    }
    auto kern = [&](double s) {
        const double speed = std::hypot(mb.arc0.x.deriv(s), mb.arc0.y.deriv(s));
        return std::log(std::abs(z - mb.arc0.at(s))) * abs_sqrt_R0_on_curve(c, mb.arc0.at(s)) *
               speed / (2.0 * M_PI);
    };
    const double tol = 1e-11;
    double acc = 0.0;
    if (sbest > 1e-12) acc += integrate_gk_real(kern, 0.0, sbest, tol);
    if (sbest < L - 1e-12) acc += integrate_gk_real(kern, sbest, L, tol);
    return -acc;
}

Complex cauchy_nu0_boundary_generic(const Eigen::ArrayXcd& u, const Eigen::ArrayXcd& u_conj,
                                    const Eigen::ArrayXcd& du_dtheta, double s_total, Complex z) {
    const auto integrand =
        (u_conj / ((1.0 + u * u_conj) * (z - u)) * du_dtheta).eval();
    const Complex sum = integrand.sum() * (2.0 * M_PI / double(u.size()));
    return s_total / M_PI * sum / Complex(0.0, 2.0);
}

Complex cauchy_nu0_boundary(const SpectralCurve& c, Complex z, int nodes) {
    const BoundarySamples b = droplet_boundary(c.map, nodes);
    std::vector<Complex> poly(b.z.data(), b.z.data() + b.z.size());
    if (std::abs(winding_number(poly, z)) > 0.5)
        throw std::domain_error("cauchy_nu0_boundary: z not exterior to the droplet");
    Complex val = cauchy_nu0_boundary_generic(b.z, b.z_conj, b.dz, c.s(), z);
    // f(e^{i theta}) traverses the droplet boundary clockwise (the map sends
    // the disc interior to the droplet exterior); reorient by probing the
    // winding about an interior point, the midpoint of the two real boundary
    // points f(1) and f(-1).
    const Complex xin = 0.5 * (eval_f(c.map, Complex(1.0, 0.0)) + eval_f(c.map, Complex(-1.0, 0.0)));
    if (winding_number(poly, xin) < 0.0) val = -val;
    return val;
}

PotentialData make_potential_data(SpectralCurve curve, MotherBody body,
                                  const PotentialOptions& opt) {
    PotentialData pd;
    pd.curve = std::move(curve);
    pd.body = std::move(body);
    pd.z0 = eval_f(pd.curve.map, Complex(1.0, 0.0));

    // ell0 from the defining identity at the real crossing, validated along
    // the arc.
    const double xh = pd.body.x_hat;
    const Complex zxh(xh, 0.0);
    pd.ell0 = -2.0 * U_mu0(pd, zxh) - re_script_V(pd.curve.params, zxh);
    double spread = 0.0;
    const double L = pd.body.arc0.length;
    for (int j = 1; j <= 10; ++j) {
        const double s = L * j / 11.0;
        const Complex zs = pd.body.arc0.at(s);
        const double v = 2.0 * U_mu0(pd, zs) + re_script_V(pd.curve.params, zs) + pd.ell0;
        spread = std::max(spread, std::abs(v));
    }
    pd.ell0_spread = spread;
    if (opt.validate && spread > opt.ell0_spread_tol) {
        std::ostringstream os;
        os << "make_potential_data: ell0 identity spread " << spread << " exceeds tolerance "
           << opt.ell0_spread_tol;
        throw quadrature_error(os.str());
    }

    // ell2D by sampling s*scriptU(z) - 2 Q0 log|z| at three radii on the far
    // negative axis and extrapolating the O(1/|z|) tail.
    {
        const double s = pd.curve.s();
        const double Q0 = pd.curve.params.Q0;
        auto S1f = [&](Complex zz) { return eval_S1_stable(pd.curve, zz); };
        const double radii[3] = {1e3, 1e4, 1e5};
        double vals[3];
        Complex anchor = pd.z0;
        Complex Iacc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Complex target(-radii[k], 0.0);
            Iacc += integrate_path(pd, S1f,
                                   k == 0 ? plan_path(pd, anchor, target)
                                          : std::vector<Complex>{anchor, target},
                                   opt.quad_tol);
            anchor = target;
            const double scriptU = std::log1p(std::norm(target)) - std::log1p(std::norm(pd.z0)) -
                                   2.0 * Iacc.real();
            vals[k] = s * scriptU - 2.0 * Q0 * std::log(std::abs(target));
        }
        // linear in 1/|z|: ell = (v3 L3 - v2 L2)/(L3 - L2); consistency with
        // the (L1, L2) pair.
        const double e23 = (vals[2] * radii[2] - vals[1] * radii[1]) / (radii[2] - radii[1]);
        const double e12 = (vals[1] * radii[1] - vals[0] * radii[0]) / (radii[1] - radii[0]);
        if (opt.validate && std::abs(e23 - e12) > 1e-6)
            throw quadrature_error("make_potential_data: ell2D tail extrapolation inconsistent");
        pd.ell2D = e23;
    }
    return pd;
}

}  // namespace msv
