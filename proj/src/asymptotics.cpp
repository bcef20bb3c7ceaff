#include "mothersolve/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace msv {



Complex eval_F_prime(const SpectralCurve& c, Complex z, int sheet) {
    // F = (b rho + z -+ h)/(2 a z), h' = (2z - z1 - z2)/(2h)
    const Complex h = c.cut.sqrt_z1z2(z);
    const Complex hp = (2.0 * z - c.z1 - c.z2) / (2.0 * h);
    const Complex F = eval_F(c, z, sheet);
    const double sgn = (sheet == Sheet::one) ? -1.0 : 1.0;
    return (1.0 + sgn * hp) / (2.0 * c.map.a * z) - F / z;
}

ParametrixData::ParametrixData(const PotentialData& p) : pd(&p) {
    const auto& m = p.curve.map;
    D_infty = 1.0 / std::sqrt(m.rho * m.a);
    a1 = Complex(0.0, std::sqrt(m.rho));
    // Normalized so the model solution tends to the identity at infinity;
    // the inverse-square-root expansion of f' at the pole 1/a fixes the
    // magnitude sqrt((b-a) rho / a).
    a2 = Complex(0.0, -std::sqrt((m.b - m.a) * m.rho / m.a));
    // u-plane branch data: f'(u) = -rho ab (u-u1)(u-u2)/(u(1-au))^2, so
    // sqrt(F1') is rational in F1 up to sqrt((F1-u1)(F1-u2)) with its cut on
    // the image arc F1(Gamma0+), which bounds the u-values F1 can attain.
    // The overall sign comes from sqrt(rho F1') ~ -i rho/z at infinity.
    {
        const auto& arc = p.body.arc0;
        const double L = arc.length;
        const double eps = 1e-5 * std::max(1.0, std::abs(p.curve.z1));
        std::vector<Complex> upts;
        upts.push_back(m.u1);
        const int M = 400;
        for (int i = 1; i < M; ++i) {
            const double s = L * i / M;
            const Complex n = Complex(0, 1) * arc.tangent(s);
            upts.push_back(eval_F(p.curve, arc.at(s) + eps * n, Sheet::one));
        }
        upts.push_back(m.u2);
        u_cut = CutCurve(upts);
    }
    sigma_F1p = 1.0;
    const Complex zbig(3.7e7, 1.1e7);
    const Complex probe = sqrt_rho_F1p(*this, zbig);
    const Complex want = Complex(0.0, -1.0) * m.rho / zbig;
    if (std::norm(probe - want) > std::norm(probe + want)) sigma_F1p = -1.0;
}

Complex eval_D(const ParametrixData& px, Complex z) {
    const auto& c = px.pd->curve;
    return std::sqrt(c.map.rho / c.map.a) / eval_F(c, z, Sheet::one);
}



Complex sqrt_rho_F1p(const ParametrixData& px, Complex z) {
    // rho F1' = -(u(1-au))^2 / (ab (u-u1)(u-u2)) at u = F1(z)
    const SpectralCurve& c = px.pd->curve;
    const auto& m = c.map;
    const Complex u = eval_F(c, z, Sheet::one);
    const Complex hu = px.u_cut.sqrt_z1z2(u);  // sqrt((u-u1)(u-u2)), cut on [u1,u2]
    return px.sigma_F1p * Complex(0.0, -1.0) * u * (1.0 - m.a * u) /
           (std::sqrt(m.a * m.b) * hu);
}

Complex sqrt_F2p(const ParametrixData& px, Complex z) {
    // F2 = deck(F1) and deck' is the perfect square (b-a)/(a b^2 (u-1/b)^2),
    // so sqrt(F2') = sqrt((b-a)/a)/b * sqrt(F1')/(F1 - 1/b) with the sign
    // fixed by sqrt(F2') ~ +i sqrt(rho(b-a)/a)/z at infinity.
    const SpectralCurve& c = px.pd->curve;
    const auto& m = c.map;
    const Complex F1 = eval_F(c, z, Sheet::one);
    const Complex sq1 = sqrt_rho_F1p(px, z) / std::sqrt(m.rho);
    return std::sqrt((m.b - m.a) / m.a) / m.b * sq1 / (F1 - 1.0 / m.b);
}

Complex predict_P_log(const ParametrixData& px, Complex z, int n, int N) {
    const SpectralCurve& c = px.pd->curve;
    const int r0 = n - N;
    if (c.cut.possibly_within(z, 0.05))
        throw branch_error("predict_P: z too close to Gamma0");
    const Complex F1 = eval_F(c, z, Sheet::one);
    const Complex pref = Complex(0, 1) * std::pow(c.map.rho / F1, double(r0)) *
                         sqrt_rho_F1p(px, z) / F1;
    return std::log(pref) + double(N) * eval_g(*px.pd, z);
}

Complex predict_P_log_exterior_form(const ParametrixData& px, Complex z, int n, int N) {
    const SpectralCurve& c = px.pd->curve;
    const int r0 = n - N;
    const Complex F1 = eval_F(c, z, Sheet::one);
    const Complex F0 = 1.0 / F1;
    // sqrt(rho F0') = + i sqrt(rho F1')/F1 with the infinity-normalized branch
    const Complex sq = Complex(0, 1) * sqrt_rho_F1p(px, z) / F1;
    return std::log(std::pow(c.map.rho * F0, double(r0)) * sq) + double(N) * eval_g(*px.pd, z);
}

double predict_log_h(const ParametrixData& px, int n, int N) {
    const auto& pd = *px.pd;
    const double rho = pd.curve.map.rho;
    const int r0 = n - N;
    return std::log(M_PI) + 0.5 * std::log(2.0 * M_PI / (N * pd.curve.s())) +
           (2.0 * r0 + 1.0) * std::log(rho) + N * pd.ell2D;
}

Complex predict_log_hhat(const ParametrixData& px, int n, int N) {
    const auto& pd = *px.pd;
    const auto& m = pd.curve.map;
    const int r0 = n - N;
    // magnitude 2 pi e^{N ell0} (rho a)^{r0} rho sqrt(a (b-a)); the phase is
    // -pi/2 for the orientation realized here (see parametrix_M)
    const double logmag = std::log(2.0 * M_PI) + N * pd.ell0 + r0 * std::log(m.rho * m.a) +
                          std::log(m.rho) + 0.5 * std::log(m.a * (m.b - m.a));
    return Complex(logmag, -0.5 * M_PI);
}

double stirling_log_G(const ModelParams& p) {
    const double s = 1.0 + p.Q0 + p.Q1;
    const int r0 = p.r0();
    const double N = p.N;
    return 0.5 * std::log(2.0 * M_PI / N) + (N * p.Q0 - r0 - 0.5) * std::log(p.Q0) +
           (N * (1.0 + p.Q1) + r0 + 0.5) * std::log(1.0 + p.Q1) -
           (N * s + 0.5) * std::log(s);
}

Eigen::Matrix2cd parametrix_M(const ParametrixData& px, Complex z, int r0) {
    const SpectralCurve& c = px.pd->curve;
    const Complex F1 = eval_F(c, z, Sheet::one);
    const Complex F2 = eval_F(c, z, Sheet::two);
    const Complex sqF1 = sqrt_rho_F1p(px, z) / std::sqrt(c.map.rho);
    const Complex sqF2 = sqrt_F2p(px, z);
    // Off-diagonal signs carry the sigma3 conjugation that matches the
    // orientation of Gamma0 as traversed here (z1 -> z2, plus side on the
    // left); the diagonal, and with it the strong-asymptotics prefactor, is
    // unaffected.
    Eigen::Matrix2cd Nmat;
    Nmat(0, 0) = px.a1 * sqF1 / F1;
    Nmat(0, 1) = -px.a1 * sqF2 / F2;
    Nmat(1, 0) = -px.a2 * sqF1 / (F1 - 1.0 / c.map.a);
    Nmat(1, 1) = px.a2 * sqF2 / (F2 - 1.0 / c.map.a);
    // M = D_infty^{-r0 sigma3} N D^{r0 sigma3}
    const Complex D = eval_D(px, z);
    const Complex di = std::pow(Complex(px.D_infty, 0.0), double(r0));
    const Complex dz = std::pow(D, double(r0));
    Eigen::Matrix2cd M;
    M(0, 0) = Nmat(0, 0) * dz / di;
    M(0, 1) = Nmat(0, 1) / (dz * di);
    M(1, 0) = Nmat(1, 0) * dz * di;
    M(1, 1) = Nmat(1, 1) * di / dz;
    return M;
}

std::vector<Complex> default_field_grid(const PotentialData& pd, int per_circle, int n_real,
                                        unsigned seed) {
    std::vector<Complex> grid;
    std::mt19937 rng(seed ? seed : 12345u);
    std::uniform_real_distribution<double> jitter(-0.02, 0.02);
    for (double r : {0.5, 0.8}) {
        for (int k = 0; k < per_circle; ++k) {
            const double th = 2.0 * M_PI * (k + 0.3) / per_circle + jitter(rng);
            const Complex u = std::polar(r, th);
            grid.push_back(eval_f(pd.curve.map, u));
        }
    }
    for (int k = 0; k < n_real; ++k)
        grid.push_back(Complex(pd.curve.c0 + 0.35 * (k + 1), 0.0));
    // interior points between Gamma0 and the droplet boundary: step inward
    // from the real crossing toward 0 and outward past z1
    const double xh = pd.body.x_hat;
    grid.push_back(Complex(0.5 * xh, 0.0));
    grid.push_back(Complex(0.25 * xh, 0.0));
    grid.push_back(pd.curve.z1 * 1.12);
    grid.push_back(std::conj(pd.curve.z1) * 1.12);
    // drop anything too close to the cut
    std::vector<Complex> out;
    for (const Complex& z : grid)
        if (!pd.curve.cut.possibly_within(z, 0.12)) out.push_back(z);
    return out;
}

std::vector<FieldError> compare_field(const ParametrixData& px, const PolySolution& sol,
                                      const std::vector<Complex>& grid) {
    std::vector<FieldError> out;
    const int n = sol.params.n, N = sol.params.N;
    for (const Complex& z : grid) {
        const Complex lognum = eval_poly_log(sol, z);
        const Complex logpred = predict_P_log(px, z, n, N);
        const Complex ratio = std::exp(lognum - logpred);
        out.push_back({z, std::abs(ratio - 1.0)});
    }
    return out;
}

ZeroCompare zero_measure_compare(const PotentialData& pd, const PolySolution& sol) {
    ZeroCompare zc;
    const auto& arc = pd.body.arc0;
    const double L = arc.length;
    const int n = int(sol.zeros.size());

    // distances to Gamma0 (segment distances on a dense polyline, so the
    // sampling error stays far below the zero distances) and arclength
    // projections
    std::vector<double> proj;
    double sum_d = 0.0;
    const int M = 4000;
    std::vector<Complex> dense(M + 1);
    std::vector<double> dense_s(M + 1);
    for (int i = 0; i <= M; ++i) {
        dense_s[i] = L * i / M;
        dense[i] = arc.at(dense_s[i]);
    }
    for (const auto& zs : sol.zeros) {
        const Complex z(zs.re_d, zs.im_d);
        double best = 1e300, sbest = 0.0;
        for (int i = 0; i < M; ++i) {
            const double d = point_segment_distance(z, dense[i], dense[i + 1]);
            if (d < best) {
                best = d;
                // project onto the segment for the arclength coordinate
                const Complex ab = dense[i + 1] - dense[i];
                double t = std::norm(ab) > 0
                               ? std::clamp(((z - dense[i]) * std::conj(ab)).real() / std::norm(ab),
                                            0.0, 1.0)
                               : 0.0;
                sbest = dense_s[i] + t * (dense_s[i + 1] - dense_s[i]);
            }
        }
        proj.push_back(sbest);
        sum_d += best;
        zc.max_dist = std::max(zc.max_dist, best);
    }
    zc.mean_dist = sum_d / n;

    // zero-counting Cauchy transform vs C^{mu0} at exterior probes
    double worst = 0.0;
    for (const Complex& z : {Complex(pd.curve.c0 + 1.0, 0.0), Complex(-2.5, 2.0),
                             Complex(3.0, -2.0), Complex(-3.0, -1.0), Complex(0.5, 3.0)}) {
        Complex acc = 0.0;
        for (const auto& zs : sol.zeros) acc += 1.0 / (z - Complex(zs.re_d, zs.im_d));
        acc /= double(n);
        const Complex cm = cauchy_mu0(pd, z);
        worst = std::max(worst, std::abs(acc - cm) / (1.0 + std::abs(cm)));
    }
    zc.cauchy_err = worst;

    // Kolmogorov-Smirnov distance between the projected empirical CDF and
    // the mu0 arclength CDF
    std::sort(proj.begin(), proj.end());
    auto mu0_cdf = [&](double s) {
        if (s <= 0) return 0.0;
        return integrate_gk_real(
            [&](double t) {
                const double speed = std::hypot(arc.x.deriv(t), arc.y.deriv(t));
                return abs_sqrt_R0_on_curve(pd.curve, arc.at(t)) * speed / (2.0 * M_PI);
            },
            0.0, std::min(s, L), 1e-9);
    };
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double F = mu0_cdf(proj[i]);
        sup = std::max(sup, std::abs(F - double(i) / n));
        sup = std::max(sup, std::abs(F - double(i + 1) / n));
    }
    zc.cdf_sup = sup;
    return zc;
}

}  // namespace msv
