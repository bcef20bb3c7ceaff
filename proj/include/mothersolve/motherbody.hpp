#ifndef MOTHERSOLVE_MOTHERBODY_HPP
#define MOTHERSOLVE_MOTHERBODY_HPP

#include <vector>

#include "mothersolve/trajectory.hpp"

namespace msv {

// Natural cubic spline through (s_i, v_i); used to parametrize arcs by
// arclength.
class Spline {
  public:
    Spline() = default;
    Spline(std::vector<double> s, std::vector<double> v);
    double operator()(double s) const;
    double deriv(double s) const;
    double smax() const { return s_.empty() ? 0.0 : s_.back(); }

  private:
    std::vector<double> s_, v_, m_;  // knots, values, second derivatives
};

// Arclength-parametrized complex curve.
struct ArcCurve {
    Spline x, y;
    double length = 0.0;
    Complex at(double s) const { return {x(s), y(s)}; }
    Complex tangent(double s) const;  // unit tangent
};

ArcCurve make_arc(const std::vector<Complex>& pts, const std::vector<double>& s);

// Quadrature node set for integrals against mu0 on Gamma0: the arclength
// substitution s = L(1-cos th)/2 removes the square-root endpoint vanishing
// of the density, so Gauss-Legendre in th converges spectrally.
struct Mu0Quadrature {
    std::vector<double> s;       // arclength nodes
    std::vector<Complex> z;      // curve points
    std::vector<double> weight;  // GL weight x ds/dth
    std::vector<double> rho;     // density per unit arclength
};

struct MotherBody {
    Trajectory gamma0;             // the cut, oriented z2 -> z1
    Trajectory gamma1;             // ascent arc z1 -> c0
    Trajectory gamma2;             // conjugate arc, stored c0 -> z2
    ArcCurve arc0;                 // Gamma0 by arclength
    Mu0Quadrature quad;
    double x_hat = 0.0;            // real crossing of Gamma0 in (-1/w, 0)
    double mass = 0.0;             // integral of the density (should be 1)
    CutCurve cut;                  // Gamma0 as a branch cut (downsampled)

    // Closed contour Gamma = Gamma0 u Gamma1 u Gamma2, positively oriented.
    std::vector<Complex> contour() const;
};

// mu0 density per unit arclength at arclength s along Gamma0.
double mu0_density(const SpectralCurve& c, const MotherBody& mb, double s);

struct MotherBodyOptions {
    TraceOptions trace;
    int quad_nodes = 384;
    int cut_points = 8192;
};

// Traces the trajectories, selects Gamma0 as the middle critical trajectory,
// assembles the contour, realizes the measure, and rebinds the curve's branch
// cut to Gamma0.  Throws topology_error when winding checks fail.
MotherBody build_mother_body(SpectralCurve& curve, const MotherBodyOptions& opt = {});

// |sqrt(R0)| at a point assumed on Gamma0 (branch-free absolute value).
double abs_sqrt_R0_on_curve(const SpectralCurve& c, Complex z);

}  // namespace msv

#endif
