#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mothersolve/motherbody.hpp"

using namespace msv;

namespace {
ModelParams baseline(double w = 1.0) {
    ModelParams p;
    p.Q0 = 1.0;
    p.Q1 = 1.0;
    p.w = w;
    p.N = 8;
    p.n = 8;
    return p;
}

double hausdorff(const std::vector<Complex>& A, const std::vector<Complex>& B) {
    auto one_sided = [](const std::vector<Complex>& X, const std::vector<Complex>& Y) {
        double worst = 0.0;
        for (size_t i = 0; i < X.size(); i += 7) {
            double best = 1e300;
            for (size_t j = 0; j + 1 < Y.size(); ++j)
                best = std::min(best, point_segment_distance(X[i], Y[j], Y[j + 1]));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(A, B), one_sided(B, A));
}
}  // namespace

TEST_CASE("three critical trajectories from z1 terminate at z2 and classify") {
    for (double w : {0.5, 1.0, 2.0}) {
        auto c = solve_curve(baseline(w));
        auto ts = trace_critical_trajectories(c);
        REQUIRE(ts.size() == 3);
        int left = 0, mid = 0, right = 0;
        for (const auto& t : ts) {
            CHECK(t.term == TrajEnd::AtZ2);
            CHECK(std::abs(t.pts.back() - c.z2) < 1e-6);
            const auto xs = t.real_crossings();
            REQUIRE(xs.size() == 1);
            if (t.kind == TrajKind::CriticalLeft) {
                ++left;
                CHECK(xs[0] < -1.0 / w);
            } else if (t.kind == TrajKind::CriticalMiddle) {
                ++mid;
                CHECK(xs[0] > -1.0 / w);
                CHECK(xs[0] < 0.0);
            } else {
                ++right;
                CHECK(xs[0] > 0.0);
            }
            // conjugate of the trajectory coincides with itself as a set
            std::vector<Complex> conj_pts;
            for (const Complex& z : t.pts) conj_pts.push_back(std::conj(z));
            CHECK(hausdorff(t.pts, conj_pts) < 1e-6);
        }
        CHECK(left == 1);
        CHECK(mid == 1);
        CHECK(right == 1);
    }
}

TEST_CASE("steepest ascent paths reach c0") {
    auto c = solve_curve(baseline(1.0));
    auto [g1, g2] = steepest_ascent_paths(c);
    CHECK(g1.term == TrajEnd::AtC0);
    CHECK(std::abs(g1.pts.back() - Complex(c.c0, 0.0)) < 1e-6);
    // conjugate arc
    CHECK(std::abs(g2.pts.back() - Complex(c.c0, 0.0)) < 1e-6);
    CHECK(std::abs(g2.pts.front() - c.z2) < 1e-12);
}

TEST_CASE("loops from c0 wind as required") {
    auto c = solve_curve(baseline(1.0));
    auto [inner, outer] = loops_from_c0(c);
    const double w = c.params.w;
    CHECK(std::abs(std::abs(trajectory_winding(inner, Complex(w, 0))) - 1.0) < 0.1);
    CHECK(std::abs(trajectory_winding(inner, Complex(0, 0))) < 0.1);
    CHECK(std::abs(std::abs(trajectory_winding(outer, Complex(w, 0))) - 1.0) < 0.1);
    CHECK(std::abs(std::abs(trajectory_winding(outer, Complex(0, 0))) - 1.0) < 0.1);
    CHECK(std::abs(std::abs(trajectory_winding(outer, Complex(-1.0 / w, 0))) - 1.0) < 0.1);
    // conjugation symmetry of both loops
    for (const Trajectory* t : {&inner, &outer}) {
        std::vector<Complex> conj_pts;
        for (const Complex& z : t->pts) conj_pts.push_back(std::conj(z));
        CHECK(hausdorff(t->pts, conj_pts) < 2e-5);
    }
}

TEST_CASE("mother body: mass, density, crossing, windings") {
    for (double w : {0.5, 1.0, 2.0}) {
        auto c = solve_curve(baseline(w));
        auto mb = build_mother_body(c);
        // total mass 1
        CHECK(std::abs(mb.mass - 1.0) < 1e-8);
        // density nonnegative with square-root vanishing at the endpoints
        double rho_max = 0.0;
        for (double r : mb.quad.rho) {
            CHECK(r >= 0.0);
            rho_max = std::max(rho_max, r);
        }
        CHECK(mu0_density(c, mb, 1e-9 * mb.arc0.length) < 1e-4 * rho_max);
        CHECK(mu0_density(c, mb, (1.0 - 1e-9) * mb.arc0.length) < 1e-4 * rho_max);
        // real crossing in (-1/w, 0)
        CHECK(mb.x_hat > -1.0 / w);
        CHECK(mb.x_hat < 0.0);
        // contour winds once about w and 0, zero times about -1/w
        const auto gamma = mb.contour();
        CHECK(std::abs(winding_number(gamma, Complex(w, 0)) - 1.0) < 0.05);
        CHECK(std::abs(winding_number(gamma, Complex(0, 0)) - 1.0) < 0.05);
        CHECK(std::abs(winding_number(gamma, Complex(-1.0 / w, 0))) < 0.05);
        // the rebind to Gamma0 happened
        CHECK(std::abs(c.cut.points().front() - c.z1) < 1e-12);
        CHECK(std::abs(c.cut.points().back() - c.z2) < 1e-12);
    }
}

TEST_CASE("cut rebinding preserves F1 off the lens region") {
    auto c = solve_curve(baseline(1.0));
    const Complex far(4.0, 3.0);
    const Complex before = eval_F(c, far, Sheet::one);
    auto mb = build_mother_body(c);
    const Complex after = eval_F(c, far, Sheet::one);
    CHECK(std::abs(before - after) < 1e-9 * std::abs(after));
}
