#ifndef MOTHERSOLVE_MODEL_HPP
#define MOTHERSOLVE_MODEL_HPP

#include <complex>
#include <string>

#include "mothersolve/errors.hpp"

namespace msv {

using Complex = std::complex<double>;

// Parameters of the two-insertion ensemble in projected planar coordinates.
// The inverse temperature is fixed at beta = 2 and not represented.
struct ModelParams {
    double Q0 = 1.0;  // charge projected to -1/w
    double Q1 = 1.0;  // charge at w
    double w = 1.0;   // insertion position, w > 0
    int N = 1;        // particle number
    int n = 1;        // polynomial degree, n - N = r0 fixed

    int r0() const { return n - N; }
    double beta_exp() const { return N * (1.0 + Q0 + Q1); }  // N(1+Q0+Q1)

    // Throws std::domain_error when the invariants fail, including the
    // convergence condition n <= N + N*Q0.
    void validate() const;
};

enum class PhaseTag { PreCritical, PostCritical, Critical };

struct Phase {
    PhaseTag tag;
    double w_cri;
};

inline const char* to_string(PhaseTag t) {
    switch (t) {
        case PhaseTag::PreCritical: return "pre-critical";
        case PhaseTag::PostCritical: return "post-critical";
        default: return "critical";
    }
}

// w_cri(Q0,Q1) = (2 Q0 Q1 + Q0 + Q1 + 2 sqrt(Q0 Q1 (1+Q0)(1+Q1)))^(-1/2).
// Symmetric in (Q0, Q1), strictly decreasing in each argument.
double critical_w(double Q0, double Q1);

// Classifies by the sign of w - w_cri; |w - w_cri| < tol*w_cri counts as Critical.
Phase classify_phase(const ModelParams& p, double tol = 1e-12);

// A potential value that may be the logarithmic-singularity sentinel.
struct PotentialValue {
    double value = 0.0;
    bool is_infinite = false;
};

// Planar external potential
//   V(z) = (1 + 1/N + Q0 + Q1) log(1+|z|^2) - 2 Q1 log|z-w|.
// At z = w returns the explicit infinite sentinel.
PotentialValue eval_V_planar(const ModelParams& p, Complex z);

// Complex field
//   scriptV(z) = (1+Q1) log z + (1+Q0) log(z + 1/w) - Q1 log(z - w),
// branch cut on (-inf, w].  Throws branch_error on the cut.
Complex eval_script_V(const ModelParams& p, Complex z);

// d/dz scriptV: the three-pole rational function. Poles throw pole_error.
Complex eval_script_V_prime(const ModelParams& p, Complex z);

// Re scriptV, defined off the three poles only (no branch sensitivity).
double re_script_V(const ModelParams& p, Complex z);

// Contour weight
//   w_{n,N}(z) = ((z-w)/z)^(N Q1) * z^(-n) * (z + 1/w)^(-(N + N Q0))
// with principal powers; branch cuts exactly [0,w] u (-inf,-1/w].
// Equals z^(-r0) e^(-N scriptV(z)) where both sides are defined.
Complex eval_weight(const ModelParams& p, Complex z);

// Same weight written against (1+wz)^(N+N Q0); this is the normalization the
// contour pairing <.,.>_co uses.  eval_weight(z) = w^(N+N*Q0) * this(z).
Complex eval_weight_co(const ModelParams& p, Complex z);

// G_{k,N} = Gamma(N + N Q0 - k) Gamma(1 + k + N Q1) / Gamma(N(1+Q0+Q1) + 1),
// evaluated through log-Gamma.  Arguments must keep every Gamma argument > 0.
double gamma_ratio_G(const ModelParams& p, double k);

// log G_{k,N}; useful where G underflows at large N.
double log_gamma_ratio_G(const ModelParams& p, double k);

}  // namespace msv

#endif
