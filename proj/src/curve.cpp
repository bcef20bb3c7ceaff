#include "mothersolve/curve.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace msv {

Complex eval_f(const ConformalMap& m, Complex u) {
    if (u == Complex(0.0) || u == Complex(1.0 / m.a))
        throw pole_error("f: u at a pole");
    return m.rho * (1.0 - m.b * u) / (u * (1.0 - m.a * u));
}

Complex eval_f_prime(const ConformalMap& m, Complex u) {
    if (u == Complex(0.0) || u == Complex(1.0 / m.a))
        throw pole_error("f': u at a pole");
    const Complex den = u * (1.0 - m.a * u);
    const Complex dden = 1.0 - 2.0 * m.a * u;
    return m.rho * (-m.b * den - (1.0 - m.b * u) * dden) / (den * den);
}

Complex eval_deck(const ConformalMap& m, Complex u) {
    if (u == Complex(1.0 / m.b)) throw pole_error("deck: u at the pole 1/b");
    return ((m.a - m.b) / (m.a * m.b)) * u / (u - 1.0 / m.b) + 1.0 / m.a;
}

Complex SpectralCurve::P1(Complex z) const {
    const double ss = s();
    return (1.0 + params.Q0) / ss / (z + 1.0 / params.w) + params.Q1 / ss / (z - params.w) +
           (1.0 + params.Q1) / ss / z;
}

Complex SpectralCurve::P2(Complex z) const {
    const double ss = s();
    return (1.0 + params.Q1) / ss * (z - fb) / ((z - params.w) * (z + 1.0 / params.w) * z);
}

Complex SpectralCurve::R(Complex z) const {
    const double lead = params.Q0 / s();
    const Complex num = (z - z1) * (z - z2) * (z - c0) * (z - c0);
    const Complex den = z * (z - params.w) * (z + 1.0 / params.w);
    return lead * lead * num / (den * den);
}

Complex SpectralCurve::R0(Complex z) const { return s() * s() * R(z); }

namespace {

// P4(z; t) = Q3(z)^2 - 4 kap (z - t) C(z), the numerator of the discriminant
// over the squared pole factor; coefficients are linear in t.
std::array<double, 5> p4_coeffs(const ModelParams& p, double t) {
    const double s = 1.0 + p.Q0 + p.Q1;
    const double A = (1.0 + p.Q0) / s, B = p.Q1 / s, C3 = (1.0 + p.Q1) / s;
    const double kap = (1.0 + p.Q1) / s;
    const double q2 = A + B + C3;
    const double q1 = -A * p.w + B / p.w + C3 * (1.0 / p.w - p.w);
    const double q0 = -C3;
    std::array<double, 5> P{q0 * q0, 2 * q1 * q0, q1 * q1 + 2 * q2 * q0, 2 * q2 * q1, q2 * q2};
    // C(z) = z (z - w)(z + 1/w) = z^3 + (1/w - w) z^2 - z
    const double C[4] = {0.0, -1.0, 1.0 / p.w - p.w, 1.0};
    for (int k = 0; k < 4; ++k) {
        P[k + 1] -= 4.0 * kap * C[k];
        P[k] += 4.0 * kap * t * C[k];
    }
    return P;
}

std::array<Complex, 4> quartic_roots(const std::array<double, 5>& q) {
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) M(0, i) = -q[3 - i] / q[4];
    for (int i = 1; i < 4; ++i) M(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    std::array<Complex, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = es.eigenvalues()[i];
    return r;
}

// Signed squared half-separation of the root pair destined to collide at c0:
// positive when the pair is real, negative when complex.  The other pair must
// be the strictly complex branch-point pair.  Among admissible pairings the
// one with the largest real mean wins (c0 = rho/a always exceeds Re z1).
// Returns the pair mean through c0_out; std::nullopt when no pairing fits.
std::optional<double> collision_eta(const ModelParams& p, double t, double* c0_out) {
    const auto r = quartic_roots(p4_coeffs(p, t));
    static const int part[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    double best_mean = -1e300;
    std::optional<double> eta;
    auto consider = [&](Complex za, Complex zb, Complex zc, Complex zd) {
        const Complex mean = 0.5 * (za + zb);
        if (std::abs(mean.imag()) > 1e-8 * (1.0 + std::abs(mean))) return;
        if (!(mean.real() > p.w)) return;
        const bool other_conj = std::abs(zc - std::conj(zd)) < 1e-6 * (1.0 + std::abs(zc));
        const bool other_complex = std::abs(zc.imag()) > 1e-4 * (1.0 + std::abs(zc));
        if (!other_conj || !other_complex) return;
        if (mean.real() > best_mean) {
            best_mean = mean.real();
            const Complex d2 = 0.25 * (za - zb) * (za - zb);
            eta = d2.real();
            if (c0_out) *c0_out = mean.real();
        }
    };
    for (const auto& pp : part) {
        consider(r[pp[0]], r[pp[1]], r[pp[2]], r[pp[3]]);
        consider(r[pp[2]], r[pp[3]], r[pp[0]], r[pp[1]]);
    }
    return eta;
}

}  // namespace

SpectralCurve solve_curve(const ModelParams& p, const CurveOptions& opt) {
    p.validate();
    const Phase ph = classify_phase(p);
    if (ph.tag != PhaseTag::PreCritical) {
        std::ostringstream os;
        os << "solve_curve: " << to_string(ph.tag) << " phase (w=" << p.w
           << ", w_cri=" << ph.w_cri << "); the pre-critical solver does not apply";
        throw solver_error(os.str());
    }

    // Locate the double root by scanning f(b) candidates over (-1/w, w) for a
    // sign change of the pair-separation function, then polish with a 2-D
    // Newton iteration on (P4(c0;t), P4'(c0;t)) = (0,0).
    const double tlo = -1.0 / p.w + 1e-9, thi = p.w - 1e-9;
    std::vector<std::pair<double, double>> brackets;
    double prev = 0.0, tprev = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= opt.scan_points; ++i) {
        const double t = tlo + (thi - tlo) * i / opt.scan_points;
        double c0tmp;
        const auto e = collision_eta(p, t, &c0tmp);
        if (e) {
            if (have_prev && *e * prev < 0.0) brackets.emplace_back(tprev, t);
            prev = *e;
            tprev = t;
            have_prev = true;
        }
    }
    if (brackets.empty())
        throw solver_error("solve_curve: no double-root bracket found; possibly post-critical");

    // Bisect each bracket, polish by a 2-D Newton on (P4(c0;t), P4'(c0;t)),
    // and keep the distinct polished solutions that validate.
    const double s = 1.0 + p.Q0 + p.Q1;
    const double kap = (1.0 + p.Q1) / s;
    std::vector<std::pair<double, double>> solutions;  // (t, c0)
    for (auto [lo, hi] : brackets) {
        double c0 = 0.0;
        double elo_v = 0.0;
        {
            const auto elo = collision_eta(p, lo, &c0);
            if (!elo) continue;
            elo_v = *elo;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto em = collision_eta(p, mid, &c0);
            if (!em) break;
            if (*em * elo_v <= 0.0)
                hi = mid;
            else {
                lo = mid;
                elo_v = *em;
            }
        }
        double t = 0.5 * (lo + hi);
        collision_eta(p, t, &c0);
        bool converged = false;
        for (int it = 0; it < opt.newton_max_iter; ++it) {
            const auto q = p4_coeffs(p, t);
            auto ev = [&](double z) { return (((q[4] * z + q[3]) * z + q[2]) * z + q[1]) * z + q[0]; };
            auto ev1 = [&](double z) { return ((4 * q[4] * z + 3 * q[3]) * z + 2 * q[2]) * z + q[1]; };
            auto ev2 = [&](double z) { return (12 * q[4] * z + 6 * q[3]) * z + 2 * q[2]; };
            const double C0 = c0 * (c0 - p.w) * (c0 + 1.0 / p.w);
            const double C1 = (c0 - p.w) * (c0 + 1.0 / p.w) + c0 * (c0 + 1.0 / p.w) + c0 * (c0 - p.w);
            const double F1 = ev(c0), F2 = ev1(c0);
            const double J11 = ev1(c0), J12 = 4.0 * kap * C0;
            const double J21 = ev2(c0), J22 = 4.0 * kap * C1;
            const double det = J11 * J22 - J12 * J21;
            if (det == 0.0) break;
            const double dc0 = -(F1 * J22 - F2 * J12) / det;
            const double dt = -(J11 * F2 - J21 * F1) / det;
            c0 += dc0;
            t += dt;
            if (std::abs(dc0) + std::abs(dt) < opt.newton_tol) {
                converged = true;
                break;
            }
        }
        if (!converged || !(c0 > p.w) || !(t > tlo) || !(t < thi)) continue;
        bool dup = false;
        for (const auto& [ts, cs] : solutions)
            if (std::abs(ts - t) < 1e-8 && std::abs(cs - c0) < 1e-8) dup = true;
        if (!dup) solutions.emplace_back(t, c0);
    }
    if (solutions.empty())
        throw solver_error("solve_curve: double-root polish failed; possibly post-critical");
    if (solutions.size() > 1)
        throw solver_error("solve_curve: multiple distinct double roots found in the scan window");
    const double t = solutions.front().first;
    const double c0 = solutions.front().second;

    SpectralCurve c;
    c.params = p;
    c.c0 = c0;
    c.fb = t;
    c.quartic = p4_coeffs(p, t);

    // Deflate (z - c0)^2: remaining pair z^2 + pz + q with p from the cubic
    // coefficient, q from the constant term.
    const double lead = c.quartic[4];
    const double pc = c.quartic[3] / lead + 2.0 * c0;
    const double qc = c.quartic[0] / lead / (c0 * c0);
    const double im2 = qc - 0.25 * pc * pc;
    if (!(im2 > 0.0))
        throw solver_error("solve_curve: branch points came out real; leaving the pre-critical phase");
    c.z1 = Complex(-0.5 * pc, std::sqrt(im2));
    c.z2 = std::conj(c.z1);

    // Closed-form parameter recovery: b rho = |z1|, rho(2a - b) = Re z1,
    // rho^2 = (1+Q1)(Re z1 + |z1|)/(2 Q0 |z1|).
    const double az1 = std::abs(c.z1);
    const double rho2 = (1.0 + p.Q1) * (c.z1.real() + az1) / (2.0 * p.Q0 * az1);
    if (!(rho2 > 0.0)) throw solver_error("solve_curve: recovered rho^2 <= 0");
    ConformalMap m;
    m.rho = std::sqrt(rho2);
    m.b = az1 / m.rho;
    m.a = (c.z1.real() + az1) / (2.0 * m.rho);
    if (!(m.a > 0.0 && m.a < 1.0 && m.a < m.b)) {
        std::ostringstream os;
        os << "solve_curve: recovered parameters violate 0<a<1<=..., a=" << m.a << " b=" << m.b;
        throw solver_error(os.str());
    }
    m.zero_inside = m.b < 1.0;
    // critical points solve a b u^2 - 2 a u + 1 = 0
    m.u1 = Complex(1.0 / m.b, -std::sqrt(m.b / m.a - 1.0) / m.b);
    m.u2 = std::conj(m.u1);
    // v0 from rho^2 (1-bu)(u-b) + (1-au)(u-a) = 0.
    {
        const double A = -(m.a + rho2 * m.b);
        const double B = 1.0 + m.a * m.a + rho2 * (1.0 + m.b * m.b);
        const double disc = B * B - 4.0 * A * A;
        if (!(disc > 0.0)) throw solver_error("solve_curve: v0 equation has no real root");
        const double r1 = (-B + std::sqrt(disc)) / (2.0 * A);
        const double r2 = (-B - std::sqrt(disc)) / (2.0 * A);
        m.v0 = (r1 > 0.0 && r1 < 1.0) ? r1 : r2;
        if (!(m.v0 > 0.0 && m.v0 < 1.0)) throw solver_error("solve_curve: v0 not in (0,1)");
    }
    c.map = m;

    // Consistency: f(v0) = w and f(b) = t to solver tolerance.
    const double fv0 = eval_f(m, Complex(m.v0, 0.0)).real();
    const double fb_chk = eval_f(m, Complex(m.b, 0.0)).real();
    if (std::abs(fv0 - p.w) > 1e-8 * (1.0 + p.w) || std::abs(fb_chk - t) > 1e-8 * (1.0 + std::abs(t)))
        throw solver_error("solve_curve: recovered map fails f(v0)=w / f(b)=t consistency");

    // Provisional cut: polyline z1 -> -1/(2w) -> z2, crossing (-1/w, 0).
    c.cut = CutCurve({c.z1, Complex(-0.5 / p.w, 0.0), c.z2});
    return c;
}

void rebind_cut(SpectralCurve& c, CutCurve cut) { c.cut = std::move(cut); }

Complex eval_F(const SpectralCurve& c, Complex z, int sheet) {
    if (std::abs(z) < 1e-13) {
        if (sheet == Sheet::two) throw pole_error("F2: pole at z = 0");
        return Complex(1.0 / c.map.b, 0.0);  // F1(0) = 1/b since f(1/b) = 0
    }
    if (c.cut.possibly_within(z, 1e-12)) throw branch_error("F: z on the branch cut");
    const Complex h = c.cut.sqrt_z1z2(z);
    const double brho = c.map.b * c.map.rho;
    // F1 F2 = rho/(a z); evaluate the larger numerator directly and recover
    // the other sheet from the product to dodge the cancellation near z = 0
    // (and near the image of the cut on the flipped-parity side).
    const Complex Dp = brho + z + h;
    const Complex Dm = brho + z - h;
    Complex F1v, F2v;
    if (std::abs(Dp) >= std::abs(Dm)) {
        F2v = Dp / (2.0 * c.map.a * z);
        F1v = 2.0 * c.map.rho / Dp;
    } else {
        F1v = Dm / (2.0 * c.map.a * z);
        F2v = 2.0 * c.map.rho / Dm;
    }
    return sheet == Sheet::one ? F1v : F2v;
}

Complex sqrt_R0(const SpectralCurve& c, Complex z) {
    if (z == Complex(0.0) || z == Complex(c.params.w) || z == Complex(-1.0 / c.params.w))
        throw pole_error("sqrt_R0: z at a pole");
    if (c.cut.possibly_within(z, 1e-12)) throw branch_error("sqrt_R0: z on the branch cut");
    const Complex h = c.cut.sqrt_z1z2(z);
    return c.params.Q0 * (z - c.c0) * h / (z * (z - c.params.w) * (z + 1.0 / c.params.w));
}

Complex eval_S(const SpectralCurve& c, Complex z, int sheet) {
    const Complex sr = sqrt_R0(c, z) / c.s();
    return sheet == Sheet::one ? 0.5 * (c.P1(z) - sr) : 0.5 * (c.P1(z) + sr);
}

Complex eval_S_direct(const SpectralCurve& c, Complex z, int sheet) {
    const Complex Fv = eval_F(c, z, sheet);
    const Complex fi = eval_f(c.map, 1.0 / Fv);
    return fi / (1.0 + z * fi);
}

BoundarySamples droplet_boundary(const ConformalMap& m, int m_samples) {
    if (m_samples < 16) throw std::domain_error("droplet_boundary: need at least 16 samples");
    BoundarySamples b;
    b.theta.resize(m_samples);
    b.z.resize(m_samples);
    b.z_conj.resize(m_samples);
    b.dz.resize(m_samples);
    for (int j = 0; j < m_samples; ++j) {
        const double th = 2.0 * M_PI * j / m_samples;
        const Complex u = std::polar(1.0, th);
        b.theta[j] = th;
        b.z[j] = eval_f(m, u);
        b.z_conj[j] = eval_f(m, std::conj(u));
        b.dz[j] = eval_f_prime(m, u) * Complex(0.0, 1.0) * u;
    }
    return b;
}

}  // namespace msv
