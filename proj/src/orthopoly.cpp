#include "mothersolve/orthopoly.hpp"

#include "mothersolve/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace msv {

namespace mp {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

// Minimal complex arithmetic over the variable-precision real type.  Only the
// operations the moment/Hankel/root pipeline needs.
struct Cx {
    Real re, im;
    Cx() : re(0), im(0) {}
    Cx(double r) : re(r), im(0) {}
    Cx(const Real& r) : re(r), im(0) {}
    Cx(const Real& r, const Real& i) : re(r), im(i) {}
    Cx operator-() const { return {-re, -im}; }
    Cx conj() const { return {re, -im}; }
};

inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
inline Cx operator/(const Cx& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Cx operator/(const Cx& a, const Cx& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Cx& a) { return sqrt(abs2(a)); }
inline Cx log(const Cx& a) { return {log(abs2(a)) / 2, atan2(a.im, a.re)}; }
inline Cx exp(const Cx& a) {
    const Real m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

inline void set_precision(int digits) { Real::default_precision(digits); }

inline MpComplexStr to_str(const Cx& v, int digits) {
    MpComplexStr s;
    s.re = v.re.str(digits, std::ios_base::scientific);
    s.im = v.im.str(digits, std::ios_base::scientific);
    s.re_d = double(v.re);
    s.im_d = double(v.im);
    return s;
}

inline Cx from_str(const MpComplexStr& s) { return {Real(s.re), Real(s.im)}; }

}  // namespace mp

int precision_policy(int n) { return 40 + 3 * n; }

namespace {

struct MomentWorkspace {
    std::vector<mp::Cx> m;  // master moments
    int j_min, j_max;
};

// One trapezoid pass at the given node count.
MomentWorkspace moment_pass(const ModelParams& p, int j_min, int j_max, double center,
                            double radius, int nodes) {
    using mp::Cx;
    using mp::Real;
    MomentWorkspace ws;
    ws.j_min = j_min;
    ws.j_max = j_max;
    ws.m.assign(j_max - j_min + 1, Cx());
    const Real pi = boost::math::constants::pi<Real>();
    const Real a1 = Real(p.N) * Real(p.Q1);            // exponent of (z-w)/z
    const Real b1 = Real(p.N) + Real(p.N) * Real(p.Q0);  // exponent of (1+wz)
    const Real cw(center), rw(radius), wq(p.w);
    for (int k = 0; k < nodes; ++k) {
        const Real th = 2 * pi * k / nodes;
        const Cx e(cos(th), sin(th));
        const Cx z = Cx(cw) + rw * e;
        const Cx dz = Cx(Real(0), rw) * e;  // d z / d theta
        const Cx ratio = (z - Cx(wq)) / z;
        const Cx logw = a1 * mp::log(ratio) - b1 * mp::log(Cx(Real(1)) + wq * z);
        const Cx wdz = mp::exp(logw + Real(j_min) * mp::log(z)) * dz;
        Cx pcur = wdz;
        for (int j = j_min; j <= j_max; ++j) {
            ws.m[j - j_min] = ws.m[j - j_min] + pcur;
            if (j < j_max) pcur = pcur * z;
        }
    }
    const Real scale = 2 * pi / nodes;
    for (auto& v : ws.m) v = scale * v;
    return ws;
}

// Complex LU with partial pivoting; solves A x = b in place.
void lu_solve(std::vector<std::vector<mp::Cx>>& A, std::vector<mp::Cx>& b) {
    using mp::Cx;
    const int n = int(A.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        mp::Real best = mp::abs2(A[col][col]);
        for (int r = col + 1; r < n; ++r) {
            const mp::Real v = mp::abs2(A[r][col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0)
            throw precision_error("Hankel system numerically singular; increase precision");
        if (piv != col) {
            std::swap(A[piv], A[col]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const Cx f = A[r][col] / A[col][col];
            for (int cc = col; cc < n; ++cc) A[r][cc] = A[r][cc] - f * A[col][cc];
            b[r] = b[r] - f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        Cx acc = b[r];
        for (int cc = r + 1; cc < n; ++cc) acc = acc - A[r][cc] * b[cc];
        b[r] = acc / A[r][r];
    }
}

mp::Cx horner(const std::vector<mp::Cx>& coeffs, const mp::Cx& z) {
    mp::Cx acc = coeffs.back();
    for (int j = int(coeffs.size()) - 2; j >= 0; --j) acc = acc * z + coeffs[j];
    return acc;
}

mp::Cx horner_deriv(const std::vector<mp::Cx>& coeffs, const mp::Cx& z) {
    const int n = int(coeffs.size()) - 1;
    mp::Cx acc = mp::Real(n) * coeffs[n];
    for (int j = n - 1; j >= 1; --j) acc = acc * z + mp::Real(j) * coeffs[j];
    return acc;
}

}  // namespace

MomentTable compute_moment_table(const ModelParams& p, int n_max, const MomentOptions& opt) {
    p.validate();
    const int digits = opt.digits > 0 ? opt.digits : precision_policy(n_max);
    mp::set_precision(digits);
    MomentTable t;
    t.params = p;
    t.digits = digits;
    t.j_min = -(n_max + 2);
    t.j_max = n_max + 2;
    t.center = 0.5 * p.w;
    // encloses [0,w], keeps -1/w outside with clearance 1/(2w)
    t.radius = (0.5 * p.w + 0.5 / p.w) * opt.radius_factor;
    if (!(t.radius > 0.5 * p.w && t.radius < t.center + 1.0 / p.w))
        throw std::domain_error("compute_moment_table: radius factor leaves the admissible band");

    const mp::Real tol = pow(mp::Real(10), -(digits - 10));
    MomentWorkspace prev = moment_pass(p, t.j_min, t.j_max, t.center, t.radius, opt.start_nodes);
    for (int nodes = 2 * opt.start_nodes;; nodes *= 2) {
        if (nodes > opt.max_nodes)
            throw quadrature_error("compute_moment_table: node budget exhausted");
        MomentWorkspace cur = moment_pass(p, t.j_min, t.j_max, t.center, t.radius, nodes);
        // exact zeros occur for integer exponents, so measure the change
        // against the largest moment magnitude
        mp::Real scale = 0;
        for (const auto& v : cur.m)
            if (mp::abs(v) > scale) scale = mp::abs(v);
        mp::Real worst = 0;
        for (size_t i = 0; i < cur.m.size(); ++i) {
            const mp::Real rel = mp::abs(cur.m[i] - prev.m[i]) / scale;
            if (rel > worst) worst = rel;
        }
        if (worst < tol) {
            t.nodes_used = nodes;
            t.m.reserve(cur.m.size());
            for (const auto& v : cur.m) t.m.push_back(mp::to_str(v, digits));
            return t;
        }
        prev = std::move(cur);
    }
}

PolySolution build_monic_op(const ModelParams& p, const MomentTable& table, int n) {
    mp::set_precision(table.digits);
    using mp::Cx;
    if (table.j_min > -n || table.j_max < n)
        throw std::domain_error("build_monic_op: moment table does not cover this degree");

    auto m_at = [&](int j) { return mp::from_str(table.at(j)); };

    // <P, z^k>_co = sum_j c_j m_{j+k-n} = 0 for k = 0..n-1, c_n = 1.
    std::vector<std::vector<Cx>> A(n, std::vector<Cx>(n));
    std::vector<Cx> b(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) A[k][j] = m_at(j + k - n);
        b[k] = -m_at(k);
    }
    auto Acopy = A;
    auto bcopy = b;
    lu_solve(A, b);

    PolySolution sol;
    sol.params = p;
    sol.params.n = n;
    sol.digits = table.digits;
    std::vector<Cx> coeffs(n + 1);
    for (int j = 0; j < n; ++j) coeffs[j] = b[j];
    coeffs[n] = Cx(mp::Real(1));

    // orthogonality residuals, relative to the pairing scale
    mp::Real worst = 0;
    for (int k = 0; k < n; ++k) {
        Cx acc = m_at(k);  // c_n term
        mp::Real scale = mp::abs(m_at(k));
        for (int j = 0; j < n; ++j) {
            acc = acc + coeffs[j] * Acopy[k][j];
            const mp::Real term = mp::abs(coeffs[j]) * mp::abs(Acopy[k][j]);
            if (term > scale) scale = term;
        }
        const mp::Real rel = mp::abs(acc) / scale;
        if (rel > worst) worst = rel;
    }
    (void)bcopy;
    sol.orth_residual = double(worst);
    const double res_tol = std::pow(10.0, -table.digits / 3.0);
    if (sol.orth_residual > res_tol)
        throw precision_error("build_monic_op: orthogonality residual exceeds the precision budget");

    // h_tilde = <P, z^n> = sum_j c_j m_j
    Cx ht;
    for (int j = 0; j <= n; ++j) ht = ht + coeffs[j] * m_at(j);
    sol.h_tilde = mp::to_str(ht, table.digits);
    sol.coeffs.reserve(n + 1);
    for (const auto& cj : coeffs) sol.coeffs.push_back(mp::to_str(cj, table.digits));
    return sol;
}

void norm_chain(const ModelParams& p, const MomentTable& table, PolySolution& sol) {
    mp::set_precision(table.digits);
    using mp::Cx;
    using mp::Real;
    const int n = int(sol.coeffs.size()) - 1;
    PolySolution next = build_monic_op(p, table, n + 1);
    const Cx p0 = mp::from_str(next.coeffs[0]);  // P_{n+1,N}(0)
    if (mp::abs(p0) == 0) throw precision_error("norm_chain: P_{n+1,N}(0) vanished");

    const Real expo = Real(p.N) + Real(p.N) * Real(p.Q0);
    const Real wpow = exp(expo * log(Real(p.w)));
    const Cx ht = mp::from_str(sol.h_tilde);
    sol.h_hat = mp::to_str(wpow * ht, table.digits);

    // h = -G_{n,N} h_tilde / (2 i P_{n+1,N}(0))
    const Real lg = boost::math::lgamma(Real(p.N) + Real(p.N) * Real(p.Q0) - n) +
                    boost::math::lgamma(Real(1) + n + Real(p.N) * Real(p.Q1)) -
                    boost::math::lgamma(Real(p.N) * (Real(1) + Real(p.Q0) + Real(p.Q1)) + 1);
    const Real G = exp(lg);
    const Cx h = (-G) * (ht / (Cx(Real(0), Real(2)) * p0));
    sol.h_planar = mp::to_str(h, table.digits);
    sol.imag_residual = double(mp::abs(Cx(Real(0), h.im)) / (mp::abs(h) + Real(1e-300)));
    const double imag_tol = std::pow(10.0, -table.digits / 4.0);
    if (sol.imag_residual > imag_tol || !(double(h.re) > 0.0))
        throw precision_error("norm_chain: h is not real positive at working precision");
}

namespace {

// One Laguerre solve on the (deflated) polynomial from the given seed.
mp::Cx laguerre_root(const std::vector<mp::Cx>& a, mp::Cx z, int digits) {
    using mp::Cx;
    using mp::Real;
    const int m = int(a.size()) - 1;
    const Real tol = pow(Real(10), -(digits - 6));
    // standard fractional step cycle to break limit cycles
    static const double frac[9] = {0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
    for (int it = 1; it <= 300; ++it) {
        Cx b = a[m], d, f;
        Real err = mp::abs(b);
        const Real abz = mp::abs(z);
        for (int j = m - 1; j >= 0; --j) {
            f = z * f + d;
            d = z * d + b;
            b = z * b + a[j];
            err = mp::abs(b) + abz * err;
        }
        err = err * pow(Real(10), -Real(digits));  // roundoff scale of P(z)
        if (mp::abs(b) <= err) return z;
        const Cx G = d / b;
        const Cx G2 = G * G;
        const Cx H = G2 - (f / b + f / b);
        const Cx rad_sq = Real(m - 1) * (Real(m) * H - G2);
        Cx sq = mp::exp(Real(0.5) * mp::log(rad_sq));
        Cx gp = G + sq, gm = G - sq;
        if (mp::abs2(gp) < mp::abs2(gm)) gp = gm;
        Cx dz;
        if (mp::abs(gp) > 0)
            dz = Real(m) / gp;
        else
            dz = mp::exp(mp::Cx(log(Real(1) + abz), Real(it)));
        if (it % 10 == 0) dz = mp::Real(frac[(it / 10) % 9]) * dz;
        const Cx z1 = z - dz;
        if (mp::abs(dz) <= tol * (Real(1) + mp::abs(z1))) return z1;
        z = z1;
    }
    throw precision_error("poly_zeros: Laguerre iteration did not converge");
}

}  // namespace

void poly_zeros(PolySolution& sol) {
    mp::set_precision(sol.digits);
    using mp::Cx;
    const int n = int(sol.coeffs.size()) - 1;
    if (n == 0) return;

    // double-precision companion seeds (speed only; deflation guarantees a
    // full set of distinct-by-construction roots)
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) comp(0, j) = -sol.coeffs[n - 1 - j].re_d;
    for (int j = 1; j < n; ++j) comp(j, j - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    std::vector<Complex> seeds(n);
    for (int i = 0; i < n; ++i) seeds[i] = es.eigenvalues()[i];
    std::sort(seeds.begin(), seeds.end(),
              [](Complex a, Complex b) { return std::norm(a) < std::norm(b); });

    std::vector<Cx> coeffs(n + 1);
    for (int j = 0; j <= n; ++j) coeffs[j] = mp::from_str(sol.coeffs[j]);

    mp::Real coeff_scale = 0;
    for (const auto& cj : coeffs)
        if (mp::abs(cj) > coeff_scale) coeff_scale = mp::abs(cj);

    // Laguerre with deflation (ascending modulus for stability), then a
    // Newton polish of every root on the undeflated polynomial.
    std::vector<Cx> defl = coeffs;
    std::vector<Cx> roots;
    for (int k = 0; k < n; ++k) {
        Cx z = laguerre_root(defl, Cx(mp::Real(seeds[k].real()), mp::Real(seeds[k].imag())),
                             sol.digits);
        roots.push_back(z);
        // synthetic division by (x - z)
        const int m = int(defl.size()) - 1;
        std::vector<Cx> next(m);
        Cx carry = defl[m];
        for (int j = m - 1; j >= 0; --j) {
            next[j] = carry;
            carry = defl[j] + z * carry;
        }
        defl = std::move(next);
    }

    sol.zeros.clear();
    double worst = 0.0;
    for (Cx z : roots) {
        for (int it = 0; it < 60; ++it) {
            const Cx f = horner(coeffs, z);
            const Cx df = horner_deriv(coeffs, z);
            if (mp::abs(df) == 0) break;
            const Cx dz = f / df;
            z = z - dz;
            if (mp::abs(dz) < pow(mp::Real(10), -(sol.digits - 4)) * (mp::Real(1) + mp::abs(z)))
                break;
        }
        const mp::Real resid = mp::abs(horner(coeffs, z)) / coeff_scale;
        worst = std::max(worst, double(resid));
        sol.zeros.push_back(mp::to_str(z, sol.digits));
    }
    sol.zero_residual = worst;
    if (worst > std::pow(10.0, -sol.digits / 3.0))
        throw precision_error("poly_zeros: root polish failed to meet the residual target");
}

Complex eval_poly(const PolySolution& sol, Complex z) {
    mp::set_precision(sol.digits);
    std::vector<mp::Cx> coeffs(sol.coeffs.size());
    for (size_t j = 0; j < sol.coeffs.size(); ++j) coeffs[j] = mp::from_str(sol.coeffs[j]);
    const mp::Cx v = horner(coeffs, mp::Cx(mp::Real(z.real()), mp::Real(z.imag())));
    return Complex(double(v.re), double(v.im));
}

Complex eval_poly_log(const PolySolution& sol, Complex z) {
    mp::set_precision(sol.digits);
    std::vector<mp::Cx> coeffs(sol.coeffs.size());
    for (size_t j = 0; j < sol.coeffs.size(); ++j) coeffs[j] = mp::from_str(sol.coeffs[j]);
    const mp::Cx v = horner(coeffs, mp::Cx(mp::Real(z.real()), mp::Real(z.imag())));
    const mp::Cx lv = mp::log(v);
    return Complex(double(lv.re), double(lv.im));
}

namespace {

// Polar nodes: trapezoid in theta (spectral for the trig-polynomial angular
// dependence), Gauss-Legendre in t with r^2 = t/(1-t) (area element
// r dr = dt / (2 (1-t)^2)).
struct PolarGrid {
    std::vector<double> theta;
    std::vector<double> t, wt;
};

PolarGrid make_polar_grid(int n_theta, int n_radial) {
    PolarGrid g;
    g.theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) g.theta[i] = 2.0 * M_PI * i / n_theta;
    std::vector<double> gx, gw;
    gauss_legendre(n_radial, gx, gw);
    g.t.resize(n_radial);
    g.wt.resize(n_radial);
    for (int i = 0; i < n_radial; ++i) {
        g.t[i] = 0.5 * (gx[i] + 1.0);
        g.wt[i] = 0.5 * gw[i];
    }
    return g;
}

}  // namespace

Complex planar_moment(const ModelParams& p, int j, int k, int n_theta, int n_radial) {
    if (j + k >= 2 * (p.N + p.N * p.Q0))
        throw std::domain_error("planar_moment: decay condition violated; integral diverges");
    const PolarGrid g = make_polar_grid(n_theta, n_radial);
    const double beta1 = p.N * (1.0 + p.Q0 + p.Q1) + 1.0;
    Complex acc = 0.0;
    for (int ir = 0; ir < int(g.t.size()); ++ir) {
        const double t = g.t[ir];
        const double r = std::sqrt(t / (1.0 - t));
        const double area_w = g.wt[ir] / (2.0 * (1.0 - t) * (1.0 - t));
        Complex ring = 0.0;
        for (double th : g.theta) {
            const Complex z = std::polar(r, th);
            const double aw = std::norm(z - p.w);  // |z-w|^2
            const double wgt = std::pow(aw, p.N * p.Q1) * std::pow(1.0 + r * r, -beta1);
            ring += std::pow(z, double(j)) * std::pow(std::conj(z) - p.w, double(k)) * wgt;
        }
        acc += ring * (2.0 * M_PI / n_theta) * area_w;
    }
    return acc;
}

double planar_integral(const std::function<double(Complex)>& f, int n_theta, int n_radial) {
    const PolarGrid g = make_polar_grid(n_theta, n_radial);
    double acc = 0.0;
    for (int ir = 0; ir < int(g.t.size()); ++ir) {
        const double t = g.t[ir];
        const double r = std::sqrt(t / (1.0 - t));
        const double area_w = g.wt[ir] / (2.0 * (1.0 - t) * (1.0 - t));
        double ring = 0.0;
        for (double th : g.theta) ring += f(std::polar(r, th));
        acc += ring * (2.0 * M_PI / n_theta) * area_w;
    }
    return acc;
}

Complex duality_contour_side(const ModelParams& p, int j, int k, int nodes) {
    // (G_{k,N}/2i) oint ((z-w)/z)^{N Q1} z^{j-k-1} (1+wz)^{-(N+N Q0-k)} dz
    const double G = gamma_ratio_G(p, k);
    const double center = 0.5 * p.w, radius = 0.5 * p.w + 0.5 / p.w;
    const double a1 = p.N * p.Q1, b1 = p.N + p.N * p.Q0 - k;
    const Complex integral = contour_trapezoid(
        [&](Complex z) {
            return std::exp(a1 * std::log((z - p.w) / z) + double(j - k - 1) * std::log(z) -
                            b1 * std::log(1.0 + p.w * z));
        },
        Complex(center, 0.0), radius, nodes);
    return G / Complex(0.0, 2.0) * integral;
}

KernelData build_kernel(const ModelParams& p, int digits_override) {
    KernelData kd;
    kd.params = p;
    MomentOptions mo;
    mo.digits = digits_override > 0 ? digits_override : precision_policy(p.N + 1);
    const MomentTable table = compute_moment_table(p, p.N + 1, mo);
    for (int l = 0; l < p.N; ++l) {
        PolySolution sol = build_monic_op(p, table, l);
        norm_chain(p, table, sol);
        kd.polys.push_back(std::move(sol));
    }
    return kd;
}

Complex kernel_KN(const KernelData& kd, Complex x, Complex y) {
    const ModelParams& p = kd.params;
    const auto vx = eval_V_planar(p, x);
    const auto vy = eval_V_planar(p, y);
    if (vx.is_infinite || vy.is_infinite) return Complex(0.0, 0.0);
    const double pref = std::exp(-0.5 * p.N * (vx.value + vy.value));
    Complex acc = 0.0;
    for (const PolySolution& sol : kd.polys) {
        const double h = sol.h_planar.re_d;
        acc += eval_poly(sol, x) * std::conj(eval_poly(sol, y)) / h;
    }
    return pref * acc;
}

double log_partition(const KernelData& kd) {
    double acc = std::lgamma(double(kd.params.N) + 1.0);
    for (const PolySolution& sol : kd.polys) {
        // log h from the decimal string to keep huge/small norms exact
        mp::set_precision(sol.digits);
        acc += double(log(mp::Real(sol.h_planar.re)));
    }
    return acc;
}

}  // namespace msv
