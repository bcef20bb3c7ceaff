#ifndef MOTHERSOLVE_POTENTIAL_HPP
#define MOTHERSOLVE_POTENTIAL_HPP

#include "mothersolve/motherbody.hpp"
#include "mothersolve/quad.hpp"

namespace msv {

// Geometry plus the potential-theoretic scalars derived from it.  Owns the
// solved curve (with its branch cut rebound to Gamma0) and the mother body.
struct PotentialData {
    SpectralCurve curve;
    MotherBody body;
    Complex z0;          // f(1), boundary anchor
    double ell0 = 0.0;   // Robin constant of the mother-body problem
    double ell2D = 0.0;  // Robin constant of the 2-D droplet problem
    double ell0_spread = 0.0;  // max deviation of the defining identity over Gamma0
};

struct PotentialOptions {
    double quad_tol = 1e-11;
    double near_field_threshold = 0.25;  // switch to windowed quadrature below this distance
    int boundary_nodes = 2048;
    double ell0_spread_tol = 1e-7;
    bool validate = true;
};

// Computes ell0 (with its spread check) and ell2D.  The curve's cut must be
// Gamma0 already (build_mother_body does the rebind).
PotentialData make_potential_data(SpectralCurve curve, MotherBody body,
                                  const PotentialOptions& opt = {});

// g(z) = int log(z-s) dmu0(s), log tracked continuously along the arc.  The
// real part is canonical; the imaginary part is canonical modulo 2*pi on
// region components, which every consumer here (e^{N g}, Re g, g') absorbs.
Complex eval_g(const PotentialData& pd, Complex z);

// C^{mu0}(z) = int dmu0(s)/(z-s).  Throws for z within 1e-6 of Gamma0.
Complex cauchy_mu0(const PotentialData& pd, Complex z);

// Logarithmic potential U^{mu0}(z) = -int log|z-s| dmu0(s); valid on and off
// Gamma0 (windowed singularity-splitting quadrature near the curve).
double U_mu0(const PotentialData& pd, Complex z);

// phi(z) = int_{z1}^{z} sqrt(R0(s)) ds along a cut-avoiding path.  Re phi is
// path-independent (real residues); Im phi is reported for bookkeeping only.
Complex eval_phi(const PotentialData& pd, Complex z);

// U0(z) = Re phi(z).
double eval_U0(const PotentialData& pd, Complex z);

// scriptU(z) = log(1+|z|^2) - log(1+|z0|^2) - 2 Re int_{z0}^{z} S1(s) ds.
double eval_scriptU(const PotentialData& pd, Complex z);

// scriptU_2D = (1+Q0+Q1) scriptU on the droplet exterior.
double eval_scriptU2D(const PotentialData& pd, Complex z);

// Cauchy transform of the 2-D droplet measure nu0 at an exterior point, via
// the boundary integral of u_bar/((1+|u|^2)(z-u)).
Complex cauchy_nu0_boundary(const SpectralCurve& c, Complex z, int nodes = 2048);

// Same boundary-integral evaluation for an arbitrary positively-oriented
// boundary sampling (used by the disk-domain oracle in tests).
Complex cauchy_nu0_boundary_generic(const Eigen::ArrayXcd& u, const Eigen::ArrayXcd& u_conj,
                                    const Eigen::ArrayXcd& du_dtheta, double s_total, Complex z);

// Power moments int s^k dmu0(s), k = 0..kmax.
std::vector<Complex> mu0_moments(const PotentialData& pd, int kmax);

// Plans a polyline from `from` to `to` that avoids the Gamma0 cut; used by
// the path integrals.  Exposed for tests of two-route path independence.
std::vector<Complex> plan_path(const PotentialData& pd, Complex from, Complex to,
                               bool around_left = false);

// Integrates f along the waypoint polyline, dodging the poles {0, w, -1/w}
// with semicircular detours.
Complex integrate_path(const PotentialData& pd, const std::function<Complex(Complex)>& f,
                       const std::vector<Complex>& waypoints, double tol = 1e-11,
                       bool sqrt_sub_at_start = false);

}  // namespace msv

#endif
