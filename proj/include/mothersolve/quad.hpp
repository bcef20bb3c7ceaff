#ifndef MOTHERSOLVE_QUAD_HPP
#define MOTHERSOLVE_QUAD_HPP

#include <complex>
#include <functional>
#include <vector>

#include "mothersolve/errors.hpp"

namespace msv {

using Complex = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on Legendre P_n).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Adaptive Gauss-Kronrod G7/K15 on [a,b].  Bisection honors integrable
// endpoint singularities (log, inverse square root) since Kronrod nodes stay
// interior.  Throws quadrature_error if the tolerance cannot be met.
Complex integrate_gk(const std::function<Complex(double)>& f, double a, double b,
                     double abs_tol = 1e-11, int max_depth = 60);

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-11, int max_depth = 60);

// Trapezoid rule for a contour integral of f over the circle
// |z - center| = radius, positively oriented; exponentially convergent for
// integrands analytic near the circle.
Complex contour_trapezoid(const std::function<Complex(Complex)>& f, Complex center, double radius,
                          int nodes);

// Doubling driver: doubles nodes until successive values agree to rel_tol.
Complex contour_trapezoid_auto(const std::function<Complex(Complex)>& f, Complex center,
                               double radius, double rel_tol, int start_nodes = 64,
                               int max_nodes = 1 << 20);

}  // namespace msv

#endif
