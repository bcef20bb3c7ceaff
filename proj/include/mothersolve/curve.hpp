#ifndef MOTHERSOLVE_CURVE_HPP
#define MOTHERSOLVE_CURVE_HPP

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mothersolve/cutline.hpp"
#include "mothersolve/model.hpp"

namespace msv {

// Conformal map f(u) = rho (1 - b u) / (u (1 - a u)) from the unit disc to
// the droplet exterior, with its derived data.
struct ConformalMap {
    double rho = 0, a = 0, b = 0;
    double v0 = 0;         // f(v0) = w, f(1/v0) = -1/w, 0 < v0 < 1
    Complex u1, u2;        // critical points, conjugate pair
    bool zero_inside = false;  // b < 1 iff 0 is interior to the droplet
};

Complex eval_f(const ConformalMap& m, Complex u);
Complex eval_f_prime(const ConformalMap& m, Complex u);
Complex eval_deck(const ConformalMap& m, Complex u);

struct Sheet {
    static constexpr int one = 1;
    static constexpr int two = 2;
};

// Solved spectral curve S^2 + P1(z) S + P2(z) = 0 for the pre-critical phase.
struct SpectralCurve {
    ModelParams params;
    ConformalMap map;
    Complex z1, z2;  // branch points (conjugate pair, Im z1 > 0)
    double c0 = 0;   // real double zero of the discriminant, c0 > w
    double fb = 0;   // f(b), the sheet-one zero of the Schwarz function
    // Quartic numerator of R over the squared pole factor, coefficient of z^k
    // in quartic[k]; leading coefficient (Q0/(1+Q0+Q1))^2.
    std::array<double, 5> quartic{};

    // Branch cut for F1/F2/sqrt(R); provisional polyline until the mother
    // body replaces it.
    CutCurve cut;

    double s() const { return 1.0 + params.Q0 + params.Q1; }

    Complex P1(Complex z) const;
    Complex P2(Complex z) const;
    Complex R(Complex z) const;   // P1^2 - 4 P2, via the factored quartic
    Complex R0(Complex z) const;  // (1+Q0+Q1)^2 R
};

struct CurveOptions {
    int scan_points = 4000;
    double newton_tol = 1e-13;
    int newton_max_iter = 60;
};

// Solves for the conformal-map parameters from (Q0, Q1, w).  Requires the
// pre-critical phase; throws solver_error otherwise or when no admissible
// double root exists in the scan window.
SpectralCurve solve_curve(const ModelParams& p, const CurveOptions& opt = {});

// Replace the branch cut (used once the mother body is traced).
void rebind_cut(SpectralCurve& c, CutCurve cut);

// Inverses of f fixed by F1 ~ rho/z, F2 ~ 1/a at infinity; cut on c.cut.
Complex eval_F(const SpectralCurve& c, Complex z, int sheet);

// Spherical Schwarz function branches S_1 = P1/2 - sqrt(R)/2,
// S_2 = P1/2 + sqrt(R)/2, with sqrt(R) ~ Q0/((1+Q0+Q1) z) at infinity.
Complex eval_S(const SpectralCurve& c, Complex z, int sheet);

// Direct definition S_sheet = f(1/F_sheet(z)) / (1 + z f(1/F_sheet(z))),
// used as a cross-check of eval_S.
Complex eval_S_direct(const SpectralCurve& c, Complex z, int sheet);

// sqrt(R0) with cut on c.cut and sqrt(R0)(z) = Q0/z + O(z^-2) at infinity.
Complex sqrt_R0(const SpectralCurve& c, Complex z);

// Sampled droplet boundary u_j = f(e^{i theta_j}) plus the conjugate values
// f(e^{-i theta_j}) used in boundary integrals.
struct BoundarySamples {
    Eigen::ArrayXd theta;
    Eigen::ArrayXcd z;       // f(e^{i theta})
    Eigen::ArrayXcd z_conj;  // f(e^{-i theta})
    Eigen::ArrayXcd dz;      // d/dtheta f(e^{i theta})
};
BoundarySamples droplet_boundary(const ConformalMap& m, int m_samples);

}  // namespace msv

#endif
