#ifndef MOTHERSOLVE_ASYMPTOTICS_HPP
#define MOTHERSOLVE_ASYMPTOTICS_HPP

#include "mothersolve/orthopoly.hpp"
#include "mothersolve/potential.hpp"

namespace msv {

// Data for the global parametrix: Szego-type factor and its constants.
struct ParametrixData {
    const PotentialData* pd = nullptr;
    double D_infty = 0.0;  // 1/sqrt(rho a)
    Complex a1, a2;        // row normalizations of the model solution
    CutCurve u_cut;        // segment [u1, u2]: branch cut of sqrt(f') data
    double sigma_F1p = 1.0;  // global sign fixed by the infinity normalization

    explicit ParametrixData(const PotentialData& p);
};

// Szego-type factor D(z) = sqrt(rho/a) / F1(z); D_+ D_- = z on Gamma0,
// D(z)/z -> D_infty at infinity.
Complex eval_D(const ParametrixData& px, Complex z);

// sqrt(rho F1'(z)) with the branch fixed by i sqrt(rho F1')/F1 -> 1 at
// infinity, continued from a far real anchor along cut-avoiding paths.
Complex sqrt_rho_F1p(const ParametrixData& px, Complex z);
// sqrt(F2') with the branch fixed by N22 -> 1 at infinity.
Complex sqrt_F2p(const ParametrixData& px, Complex z);

// closed-form derivative of the inverse maps off the cut
Complex eval_F_prime(const SpectralCurve& c, Complex z, int sheet);

// Leading strong-asymptotics prediction
//   P_{n,N}(z) ~ i (rho/F1)^{r0} sqrt(rho F1')/F1 e^{N g(z)}.
// Returned as a logarithm (the magnitude is e^{Theta(N)}).
Complex predict_P_log(const ParametrixData& px, Complex z, int n, int N);

// Equivalent exterior form (rho F0)^{r0} e^{N g} sqrt(rho F0'), F0 = 1/F1.
Complex predict_P_log_exterior_form(const ParametrixData& px, Complex z, int n, int N);

// h_{n,N} ~ pi sqrt(2 pi/(N(1+Q0+Q1))) rho^{2 r0 + 1} e^{N ell2D}; log value.
double predict_log_h(const ParametrixData& px, int n, int N);

// hhat_{n,N} ~ 2 pi i e^{N ell0} (rho a)^{r0} rho sqrt(a(b-a)); log |.| and
// the full complex value via logs.
Complex predict_log_hhat(const ParametrixData& px, int n, int N);

// Stirling form of G_{n,N} for n = N + r0 (log value).
double stirling_log_G(const ModelParams& p);

// 2x2 global parametrix M(z) entries (integer r0).
Eigen::Matrix2cd parametrix_M(const ParametrixData& px, Complex z, int r0);

// Field comparison: per-point |P_num/P_pred - 1|.
struct FieldError {
    Complex z;
    double err;
};
std::vector<FieldError> compare_field(const ParametrixData& px, const PolySolution& sol,
                                      const std::vector<Complex>& grid);

// Default comparison grid: two image circles |F1| = 0.5, 0.8, real-axis
// points beyond c0, and interior points between Gamma0 and the boundary.
std::vector<Complex> default_field_grid(const PotentialData& pd, int per_circle = 12,
                                        int n_real = 8, unsigned seed = 0);

// Zero-distribution summary against mu0.
struct ZeroCompare {
    double max_dist = 0.0;   // max distance of zeros to Gamma0
    double mean_dist = 0.0;
    double cauchy_err = 0.0;  // max rel error of the zero-counting transform
    double cdf_sup = 0.0;     // sup |F_emp - F_mu0| along arclength
};
ZeroCompare zero_measure_compare(const PotentialData& pd, const PolySolution& sol);

}  // namespace msv

#endif
