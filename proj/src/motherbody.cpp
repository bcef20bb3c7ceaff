#include "mothersolve/motherbody.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mothersolve/quad.hpp"

namespace msv {

Spline::Spline(std::vector<double> s, std::vector<double> v) : s_(std::move(s)), v_(std::move(v)) {
    const size_t n = s_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    // Tridiagonal solve for natural-spline second derivatives.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h0 = s_[i] - s_[i - 1], h1 = s_[i + 1] - s_[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        d[i] = (v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0;
    }
    for (size_t i = 2; i + 1 < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
        m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
        if (i == 1) break;
    }
}

double Spline::operator()(double s) const {
    if (s_.size() < 2) return v_.empty() ? 0.0 : v_[0];
    const size_t n = s_.size();
    size_t i = std::upper_bound(s_.begin(), s_.end(), s) - s_.begin();
    i = std::clamp<size_t>(i, 1, n - 1);
    const double h = s_[i] - s_[i - 1];
    const double t0 = (s_[i] - s) / h, t1 = (s - s_[i - 1]) / h;
    return t0 * v_[i - 1] + t1 * v_[i] +
           ((t0 * t0 * t0 - t0) * m_[i - 1] + (t1 * t1 * t1 - t1) * m_[i]) * h * h / 6.0;
}

double Spline::deriv(double s) const {
    if (s_.size() < 2) return 0.0;
    const size_t n = s_.size();
    size_t i = std::upper_bound(s_.begin(), s_.end(), s) - s_.begin();
    i = std::clamp<size_t>(i, 1, n - 1);
    const double h = s_[i] - s_[i - 1];
    const double t0 = (s_[i] - s) / h, t1 = (s - s_[i - 1]) / h;
    return (v_[i] - v_[i - 1]) / h +
           ((1.0 - 3.0 * t0 * t0) * m_[i - 1] + (3.0 * t1 * t1 - 1.0) * m_[i]) * h / 6.0;
}

Complex ArcCurve::tangent(double s) const {
    Complex t(x.deriv(s), y.deriv(s));
    const double a = std::abs(t);
    return a > 0 ? t / a : Complex(1.0, 0.0);
}

ArcCurve make_arc(const std::vector<Complex>& pts, const std::vector<double>& s) {
    std::vector<double> xs(pts.size()), ys(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        xs[i] = pts[i].real();
        ys[i] = pts[i].imag();
    }
    ArcCurve arc;
    arc.x = Spline(s, xs);
    arc.y = Spline(s, ys);
    arc.length = s.back();
    return arc;
}

double abs_sqrt_R0_on_curve(const SpectralCurve& c, Complex z) {
    const double num = std::sqrt(std::abs(z - c.z1) * std::abs(z - c.z2)) * std::abs(z - c.c0);
    const double den = std::abs(z) * std::abs(z - c.params.w) * std::abs(z + 1.0 / c.params.w);
    return c.params.Q0 * num / den;
}

std::vector<Complex> MotherBody::contour() const {
    std::vector<Complex> pts = gamma0.pts;                            // z1 -> z2
    pts.insert(pts.end(), gamma2.pts.begin() + 1, gamma2.pts.end());  // z2 -> c0
    for (size_t i = gamma1.pts.size() - 1; i-- > 0;) pts.push_back(gamma1.pts[i]);  // c0 -> z1
    return pts;
}

double mu0_density(const SpectralCurve& c, const MotherBody& mb, double s) {
    return abs_sqrt_R0_on_curve(c, mb.arc0.at(s)) / (2.0 * M_PI);
}


MotherBody build_mother_body(SpectralCurve& curve, const MotherBodyOptions& opt) {
    auto crit = trace_critical_trajectories(curve, opt.trace);
    auto [g1, g2] = steepest_ascent_paths(curve, opt.trace);

    MotherBody mb;
    for (Trajectory& t : crit)
        if (t.kind == TrajKind::CriticalMiddle) mb.gamma0 = std::move(t);

    // Gamma0 keeps its traced orientation z1 -> z2: the left edge of the
    // positively oriented contour around [0, w] runs downward.
    mb.gamma1 = std::move(g1);  // z1 -> c0
    mb.gamma2 = std::move(g2);  // z2 -> c0

    // Strictly increasing arclength for the spline (drop exact duplicates).
    std::vector<Complex> pts;
    std::vector<double> ss;
    for (size_t i = 0; i < mb.gamma0.pts.size(); ++i) {
        if (!ss.empty() && mb.gamma0.s[i] <= ss.back()) continue;
        pts.push_back(mb.gamma0.pts[i]);
        ss.push_back(mb.gamma0.s[i]);
    }
    mb.arc0 = make_arc(pts, ss);
    const double L = mb.arc0.length;

    // Real crossing in (-1/w, 0): bisect on Im along the arc.
    {
        double slo = 0.0, shi = L;
        bool found = false;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            if ((pts[i].imag() > 0) != (pts[i + 1].imag() > 0)) {
                slo = ss[i];
                shi = ss[i + 1];
                found = true;
                break;
            }
        }
        if (!found) throw topology_error("Gamma0 does not cross the real axis");
        for (int it = 0; it < 200; ++it) {
            const double sm = 0.5 * (slo + shi);
            if ((mb.arc0.at(slo).imag() > 0) != (mb.arc0.at(sm).imag() > 0))
                shi = sm;
            else
                slo = sm;
        }
        mb.x_hat = mb.arc0.at(0.5 * (slo + shi)).real();
        if (!(mb.x_hat > -1.0 / curve.params.w && mb.x_hat < 0.0))
            throw topology_error("Gamma0 crossing lies outside (-1/w, 0)");
    }

    // mu0 quadrature: s = L (1 - cos th)/2, th in (0, pi).
    {
        std::vector<double> gx, gw;
        gauss_legendre(opt.quad_nodes, gx, gw);
        mb.quad.s.resize(opt.quad_nodes);
        mb.quad.z.resize(opt.quad_nodes);
        mb.quad.weight.resize(opt.quad_nodes);
        mb.quad.rho.resize(opt.quad_nodes);
        double mass = 0.0;
        for (int i = 0; i < opt.quad_nodes; ++i) {
            const double th = 0.5 * M_PI * (gx[i] + 1.0);  // map [-1,1] -> [0,pi]
            const double wth = 0.5 * M_PI * gw[i];
            const double s = 0.5 * L * (1.0 - std::cos(th));
            const double dsdth = 0.5 * L * std::sin(th);
            const Complex z = mb.arc0.at(s);
            const double rho = abs_sqrt_R0_on_curve(curve, z) / (2.0 * M_PI);
            // s is chord-accumulated; the spline speed corrects it to true
            // arclength measure.
            const double speed = std::hypot(mb.arc0.x.deriv(s), mb.arc0.y.deriv(s));
            mb.quad.s[i] = s;
            mb.quad.z[i] = z;
            mb.quad.weight[i] = wth * dsdth * speed;
            mb.quad.rho[i] = rho;
            mass += wth * dsdth * speed * rho;
        }
        mb.mass = mass;
    }

    // Downsampled cut polyline for branch bookkeeping (z1 -> z2).
    {
        std::vector<Complex> cp;
        cp.reserve(opt.cut_points + 1);
        for (int i = 0; i <= opt.cut_points; ++i)
            cp.push_back(mb.arc0.at(L * double(i) / opt.cut_points));
        cp.front() = curve.z1;
        cp.back() = curve.z2;
        mb.cut = CutCurve(cp);
    }
    rebind_cut(curve, mb.cut);

    // Winding checks for the closed contour.
    const auto gamma = mb.contour();
    const double w_w = winding_number(gamma, Complex(curve.params.w, 0.0));
    const double w_0 = winding_number(gamma, Complex(0.0, 0.0));
    const double w_m = winding_number(gamma, Complex(-1.0 / curve.params.w, 0.0));
    if (!(std::abs(w_w - 1.0) < 0.1 && std::abs(w_0 - 1.0) < 0.1 && std::abs(w_m) < 0.1))
        throw topology_error("contour winding numbers are not (1, 1, 0) about (w, 0, -1/w)");

    return mb;
}

}  // namespace msv
