#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mothersolve/asymptotics.hpp"

using namespace msv;

namespace {
struct Setup {
    PotentialData pd;
    ParametrixData px;
    explicit Setup(double w) : pd(build(w)), px(pd) {}
    static PotentialData build(double w) {
        ModelParams p;
        p.Q0 = 1.0;
        p.Q1 = 1.0;
        p.w = w;
        p.N = 8;
        p.n = 8;
        auto c = solve_curve(p);
        auto mb = build_mother_body(c);
        return make_potential_data(std::move(c), std::move(mb));
    }
};

Setup& shared() {
    static Setup s(1.0);
    return s;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}
}  // namespace

TEST_CASE("Szego factor: multiplicative jump and infinity normalization") {
    auto& S = shared();
    const auto& pd = S.pd;
    const double L = pd.body.arc0.length;
    for (double f : {0.3, 0.5, 0.75}) {
        const Complex zm = pd.body.arc0.at(f * L);
        const Complex n = Complex(0, 1) * pd.body.arc0.tangent(f * L);
        // Richardson two-sided limits of D across the cut
        auto Dlim = [&](double side) {
            const Complex d1 = eval_D(S.px, zm + side * 2e-4 * n);
            const Complex d2 = eval_D(S.px, zm + side * 1e-4 * n);
            return 2.0 * d2 - d1;
        };
        const Complex prod = Dlim(1.0) * Dlim(-1.0);
        CHECK(std::abs(prod - zm) < 1e-6 * (1.0 + std::abs(zm)));
    }
    const Complex zbig(2e6, 1e6);
    CHECK(std::abs(eval_D(S.px, zbig) / zbig - S.px.D_infty) < 1e-5);
}

TEST_CASE("closed-form F' matches finite differences on both sheets") {
    auto& S = shared();
    const auto& c = S.pd.curve;
    for (Complex z : {Complex(2.2, 1.0), Complex(-1.5, -2.0), Complex(0.4, 2.5)}) {
        for (int sheet : {Sheet::one, Sheet::two}) {
            const double h = 1e-6;
            const Complex fd = (eval_F(c, z + h, sheet) - eval_F(c, z - h, sheet)) / (2.0 * h);
            const Complex ex = eval_F_prime(c, z, sheet);
            CHECK(std::abs(fd - ex) < 1e-7 * (1.0 + std::abs(ex)));
        }
    }
}

TEST_CASE("sqrt(rho F1'): square consistency, smoothness, normalization") {
    auto& S = shared();
    const auto& c = S.pd.curve;
    // square gives rho F1' everywhere, including inside the droplet
    for (Complex z : {Complex(3.0, 1.0), Complex(-2.0, 1.5), Complex(0.5 * S.pd.body.x_hat, 0.0),
                      c.z1 * 1.12, Complex(0.3, -2.0)}) {
        if (c.cut.possibly_within(z, 0.1)) continue;
        const Complex sq = sqrt_rho_F1p(S.px, z);
        const Complex expect = c.map.rho * eval_F_prime(c, z, Sheet::one);
        CHECK(std::abs(sq * sq - expect) < 1e-9 * (1.0 + std::abs(expect)));
    }
    // i sqrt(rho F1')/F1 -> 1 at infinity
    const Complex zbig(1e6, 4e5);
    const Complex pref = Complex(0, 1) * sqrt_rho_F1p(S.px, zbig) / eval_F(c, zbig, Sheet::one);
    CHECK(std::abs(pref - 1.0) < 1e-5);
    // no spurious sign jumps along a circle around everything
    Complex prev = 0.0;
    for (int k = 0; k <= 64; ++k) {
        const Complex z = std::polar(6.0, 2.0 * M_PI * k / 64.0);
        const Complex v = sqrt_rho_F1p(S.px, z);
        if (k > 0) CHECK(std::abs(v - prev) < 0.5 * std::abs(prev));
        prev = v;
    }
}

TEST_CASE("global parametrix: identity at infinity, jump on Gamma0, M11 identity") {
    auto& S = shared();
    const auto& pd = S.pd;
    {
        Eigen::Matrix2cd M = parametrix_M(S.px, Complex(4e5, 1e5), 0);
        CHECK((M - Eigen::Matrix2cd::Identity()).norm() < 1e-4);
    }
    // M_+ = M_- J_M at Gamma0 midpoints (two-sided Richardson limits);
    // the plus side sits to the left of the z1 -> z2 traversal.
    const double L = pd.body.arc0.length;
    for (int r0 : {0, 1}) {
        for (double f : {0.4, 0.6}) {
            const Complex zm = pd.body.arc0.at(f * L);
            const Complex n = Complex(0, 1) * pd.body.arc0.tangent(f * L);
            auto Mlim = [&](double side) {
                Eigen::Matrix2cd M1 = parametrix_M(S.px, zm + side * 2e-4 * n, r0);
                Eigen::Matrix2cd M2 = parametrix_M(S.px, zm + side * 1e-4 * n, r0);
                return (2.0 * M2 - M1).eval();
            };
            Eigen::Matrix2cd J = Eigen::Matrix2cd::Zero();
            J(0, 1) = std::pow(zm, -double(r0));
            J(1, 0) = -std::pow(zm, double(r0));
            const Eigen::Matrix2cd Mp = Mlim(+1.0);  // i*tangent: left of travel
            const Eigen::Matrix2cd Mm = Mlim(-1.0);
            CHECK((Mp - Mm * J).norm() < 1e-6 * Mp.norm());
        }
    }
    // the (1,1) entry reproduces the strong-asymptotics prefactor
    for (int r0 : {0, 1}) {
        const Complex z(3.1, 0.9);
        const Complex m11 = parametrix_M(S.px, z, r0)(0, 0);
        const Complex F1 = eval_F(pd.curve, z, Sheet::one);
        const Complex pref =
            Complex(0, 1) * std::pow(pd.curve.map.rho / F1, double(r0)) * sqrt_rho_F1p(S.px, z) / F1;
        CHECK(std::abs(m11 - pref) < 1e-12 * std::abs(pref));
    }
}

TEST_CASE("F1 continues to F2 across the cut (crisscross)") {
    auto& S = shared();
    const auto& pd = S.pd;
    const double L = pd.body.arc0.length;
    for (double f : {0.35, 0.65}) {
        const Complex zm = pd.body.arc0.at(f * L);
        const Complex n = Complex(0, 1) * pd.body.arc0.tangent(f * L);
        auto lim = [&](int sheet, double side) {
            const Complex v1 = eval_F(pd.curve, zm + side * 2e-4 * n, sheet);
            const Complex v2 = eval_F(pd.curve, zm + side * 1e-4 * n, sheet);
            return 2.0 * v2 - v1;
        };
        CHECK(std::abs(lim(Sheet::one, 1.0) - lim(Sheet::two, -1.0)) < 1e-6);
        CHECK(std::abs(lim(Sheet::two, 1.0) - lim(Sheet::one, -1.0)) < 1e-6);
    }
}

TEST_CASE("strong asymptotics: prefactor at infinity and the exterior form") {
    auto& S = shared();
    // prefactor -> 1: predict at a huge z with N = 0 contribution removed
    const Complex zbig(1e6, 0.0);
    const Complex lp = predict_P_log(S.px, zbig, 5, 5) - 5.0 * eval_g(S.pd, zbig);
    CHECK(std::abs(std::exp(lp) - 1.0) < 1e-4);
    // equivalent exterior form agrees pointwise
    for (Complex z : {Complex(3.0, 1.2), Complex(-2.5, 2.0), Complex(1.0, -3.0)}) {
        const Complex l1 = predict_P_log(S.px, z, 9, 8);
        const Complex l2 = predict_P_log_exterior_form(S.px, z, 9, 8);
        CHECK(std::abs(std::exp(l1 - l2) - 1.0) < 1e-10);
    }
}

TEST_CASE("ratio errors halve from N to 2N (field, h, hhat)") {
    auto& S = shared();
    std::vector<double> med_err;
    std::vector<double> h_err, hh_err;
    for (int N : {8, 16}) {
        ModelParams q;
        q.Q0 = q.Q1 = 1.0;
        q.w = 1.0;
        q.N = N;
        q.n = N;
        auto t = compute_moment_table(q, N + 1);
        auto sol = build_monic_op(q, t, N);
        norm_chain(q, t, sol);
        auto grid = default_field_grid(S.pd);
        auto errs = compare_field(S.px, sol, grid);
        std::vector<double> es;
        for (auto& e : errs) es.push_back(e.err);
        med_err.push_back(median(es));
        // norms
        const double log_h_num = std::log(sol.h_planar.re_d);
        h_err.push_back(std::abs(std::exp(log_h_num - predict_log_h(S.px, N, N)) - 1.0));
        const Complex hh_num(sol.h_hat.re_d, sol.h_hat.im_d);
        const Complex lhh = predict_log_hhat(S.px, N, N);
        hh_err.push_back(std::abs(std::exp(std::log(hh_num) - lhh) - 1.0));
    }
    CHECK(med_err[0] / med_err[1] > 1.4);
    CHECK(med_err[0] / med_err[1] < 2.6);
    CHECK(h_err[0] / h_err[1] > 1.4);
    CHECK(h_err[0] / h_err[1] < 2.6);
    CHECK(hh_err[0] / hh_err[1] > 1.4);
    CHECK(hh_err[0] / hh_err[1] < 2.6);
}

TEST_CASE("field errors stay roughly uniform over the grid") {
    auto& S = shared();
    ModelParams q;
    q.Q0 = q.Q1 = 1.0;
    q.w = 1.0;
    q.N = 12;
    q.n = 12;
    auto t = compute_moment_table(q, 13);
    auto sol = build_monic_op(q, t, 12);
    auto errs = compare_field(S.px, sol, default_field_grid(S.pd));
    std::vector<double> es;
    for (auto& e : errs) es.push_back(e.err);
    const double mx = *std::max_element(es.begin(), es.end());
    CHECK(mx / median(es) < 20.0);
}

TEST_CASE("predict_h scaling: one unit of r0 multiplies by rho^2; positivity") {
    auto& S = shared();
    const double rho = S.pd.curve.map.rho;
    const int N = 12;
    const double ratio = std::exp(predict_log_h(S.px, N + 1, N) - predict_log_h(S.px, N, N));
    CHECK(ratio == doctest::Approx(rho * rho).epsilon(1e-12));
    CHECK(std::isfinite(predict_log_h(S.px, N, N)));  // log of a positive value
}

TEST_CASE("Stirling form of G and the norm-chain consistency identity") {
    auto& S = shared();
    const auto& m = S.pd.curve.map;
    // Stirling vs log-Gamma: relative error O(1/N)
    std::vector<double> errs;
    for (int N : {10, 20, 40}) {
        ModelParams q;
        q.Q0 = q.Q1 = 1.0;
        q.w = 1.0;
        q.N = N;
        q.n = N;
        errs.push_back(std::abs(std::exp(stirling_log_G(q) - log_gamma_ratio_G(q, q.n)) - 1.0));
    }
    CHECK(errs[0] / errs[1] > 1.4);
    CHECK(errs[0] / errs[1] < 2.6);
    CHECK(errs[1] / errs[2] > 1.4);
    CHECK(errs[1] / errs[2] < 2.6);
    // predict_h reconstructed from predict_hhat through the chain with the
    // Stirling G and the parametrix value of P_{n+1,N}(0); closes to
    // rounding when the six-term constant relation is used symbolically.
    for (int r0 : {0, 1}) {
        const int N = 16, n = N + r0;
        ModelParams q;
        q.Q0 = q.Q1 = 1.0;
        q.w = 1.0;
        q.N = N;
        q.n = n;
        const double s = S.pd.curve.s();
        const double re_g0 = -U_mu0(S.pd, Complex(0.0, 0.0));
        // ell0 eliminated through the six-term relation
        const double ell0_sym = S.pd.ell2D + (1.0 + q.Q0) * std::log(q.w) + re_g0 -
                                (1.0 + q.Q1) * std::log(1.0 + q.Q1) - q.Q0 * std::log(q.Q0) +
                                s * std::log(s);
        const double log_hhat_mag = std::log(2.0 * M_PI) + N * ell0_sym +
                                    r0 * std::log(m.rho * m.a) + std::log(m.rho) +
                                    0.5 * std::log(m.a * (m.b - m.a));
        const double log_P0 = r0 * std::log(m.rho * m.b) + std::log(m.rho) +
                              0.5 * std::log(m.b * (m.b - m.a)) + N * re_g0;
        // h = G |hhat| w^{-(N+NQ0)} / (2 P0) with the signs of this
        // orientation (hhat = -i |hhat|, P0 > 0)
        const double log_h_rec = stirling_log_G(q) + log_hhat_mag -
                                 (q.N + q.N * q.Q0) * std::log(q.w) - std::log(2.0) - log_P0;
        CHECK(std::abs(std::exp(log_h_rec - predict_log_h(S.px, n, N)) - 1.0) < 1e-8);
    }
}

TEST_CASE("zero distribution shrinks toward Gamma0") {
    auto& S = shared();
    std::vector<double> maxd, cdfs;
    for (int N : {8, 16}) {
        ModelParams q;
        q.Q0 = q.Q1 = 1.0;
        q.w = 1.0;
        q.N = N;
        q.n = N;
        auto t = compute_moment_table(q, N + 1);
        auto sol = build_monic_op(q, t, N);
        poly_zeros(sol);
        REQUIRE(int(sol.zeros.size()) == N);
        auto zc = zero_measure_compare(S.pd, sol);
        maxd.push_back(zc.max_dist);
        cdfs.push_back(zc.cdf_sup);
    }
    CHECK(maxd[1] < maxd[0]);
    CHECK(cdfs[1] < cdfs[0]);
}

TEST_CASE("compare_field on an empty grid returns an empty table") {
    auto& S = shared();
    ModelParams q;
    q.Q0 = q.Q1 = 1.0;
    q.w = 1.0;
    q.N = 4;
    q.n = 4;
    auto t = compute_moment_table(q, 5);
    auto sol = build_monic_op(q, t, 4);
    CHECK(compare_field(S.px, sol, {}).empty());
}
