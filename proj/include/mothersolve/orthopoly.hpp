#ifndef MOTHERSOLVE_ORTHOPOLY_HPP
#define MOTHERSOLVE_ORTHOPOLY_HPP

#include <functional>
#include <string>
#include <vector>

#include "mothersolve/model.hpp"

namespace msv {

// Extended-precision value carried as decimal strings (precision-preserving
// serialization) plus a double approximation for diagnostics.
struct MpComplexStr {
    std::string re, im;
    double re_d = 0.0, im_d = 0.0;
};

// Working-precision policy: p = 40 + 3 n decimal digits.
int precision_policy(int n);

// Master table of shifted contour moments
//   m_j = oint z^{j - N Q1} (z-w)^{N Q1} (1+wz)^{-(N+N Q0)} dz
// on the circle |z - w/2| = w/2 + 1/(2w); the degree-l pairing moments are
// nu_i^{(l)} = m_{i-l}.  Purely imaginary for real parameters.
struct MomentTable {
    ModelParams params;
    int digits = 0;
    int j_min = 0, j_max = 0;
    int nodes_used = 0;
    double center = 0.0, radius = 0.0;
    std::vector<MpComplexStr> m;  // index j - j_min

    const MpComplexStr& at(int j) const { return m.at(j - j_min); }
};

struct MomentOptions {
    int digits = 0;            // 0: use the precision policy for n_max
    double radius_factor = 1.0;  // deformation tests scale the radius
    int start_nodes = 256;
    int max_nodes = 1 << 18;
};

// Computes the master moment table covering degrees l = 0..n_max (pairings
// need j in [-(n_max+1), n_max+2]).  Throws quadrature_error on
// non-convergence at the node cap.
MomentTable compute_moment_table(const ModelParams& p, int n_max, const MomentOptions& opt = {});

// Monic orthogonal polynomial of degree n w.r.t. the contour pairing,
// built from the Hankel system of the moment table.
struct PolySolution {
    ModelParams params;  // with n set to this polynomial's degree
    int digits = 0;
    std::vector<MpComplexStr> coeffs;  // c_0 .. c_n, c_n = 1 exactly
    MpComplexStr h_tilde;              // <P, z^n>_co
    MpComplexStr h_hat;                // h_tilde * w^(N + N Q0)
    MpComplexStr h_planar;             // from the norm chain; real positive
    std::vector<MpComplexStr> zeros;
    double orth_residual = 0.0;   // max_j |<P, z^j>| relative, j = 0..n-1
    double imag_residual = 0.0;   // |Im h| / |h|
    double zero_residual = 0.0;   // max |P(zero)| / coefficient scale
};

// Builds P_{n,N}: Hankel solve, orthogonality verification, h_tilde.
// Throws precision_error when the Hankel system is numerically singular at
// the working precision (increase digits).
PolySolution build_monic_op(const ModelParams& p, const MomentTable& table, int n);

// Norm chain: h_hat = h_tilde w^(N+N Q0); h = -G_{n,N} h_tilde / (2i P_{n+1,N}(0)).
// Requires the table to cover degree n+1.  Fills h_hat/h_planar of sol.
void norm_chain(const ModelParams& p, const MomentTable& table, PolySolution& sol);

// Zeros via double companion-matrix seeds polished by extended-precision
// Newton; fills sol.zeros and zero_residual.
void poly_zeros(PolySolution& sol);

// Evaluate the (extended-precision) polynomial at a double point.
Complex eval_poly(const PolySolution& sol, Complex z);
// log P(z) (principal log of the value), safe for huge magnitudes.
Complex eval_poly_log(const PolySolution& sol, Complex z);

// Planar pairing <z^j, (z-w)^k>_pl by 2-D quadrature (polar trapezoid x
// compactified Gauss-Legendre radial); double precision, target rel 1e-8.
Complex planar_moment(const ModelParams& p, int j, int k, int n_theta = 512, int n_radial = 240);

// RHS of the planar/contour duality at the same (j,k):
// (G_{k,N}/2i) oint z^j (z-w)^{N Q1} (1+wz)^{-(N+N Q0-k)} z^{-(k+1+N Q1)} dz.
Complex duality_contour_side(const ModelParams& p, int j, int k, int nodes = 4096);

// Generic 2-D integral of f against dA over the plane in the same polar
// scheme (for kernel normalization tests and the N=1 partition check).
double planar_integral(const std::function<double(Complex)>& f, int n_theta = 512,
                       int n_radial = 240);

// Correlation kernel K_N(x, y) from the first N polynomials and their norms
// (tiny N only).
struct KernelData {
    ModelParams params;
    std::vector<PolySolution> polys;  // degrees 0..N-1, norms filled
};
KernelData build_kernel(const ModelParams& p, int digits_override = 0);
Complex kernel_KN(const KernelData& kd, Complex x, Complex y);

// log Q_N = log N! + sum_l log h_{l,N}.
double log_partition(const KernelData& kd);

}  // namespace msv

#endif
