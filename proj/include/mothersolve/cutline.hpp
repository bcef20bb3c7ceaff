#ifndef MOTHERSOLVE_CUTLINE_HPP
#define MOTHERSOLVE_CUTLINE_HPP

#include <complex>
#include <vector>

#include "mothersolve/errors.hpp"

namespace msv {

using Complex = std::complex<double>;

// A branch cut realized as a polyline from z1 to z2.  The square root
// sqrt((z-z1)(z-z2)) with its cut placed exactly on this polyline is obtained
// from the straight-chord branch by a sign flip on the region enclosed
// between the polyline and the chord (even-odd parity of the closed cycle
// polyline + reversed chord).
class CutCurve {
  public:
    CutCurve() = default;
    explicit CutCurve(std::vector<Complex> pts);

    const std::vector<Complex>& points() const { return pts_; }
    Complex z1() const { return pts_.front(); }
    Complex z2() const { return pts_.back(); }

    // Even-odd parity of the cycle (polyline, then chord z2->z1) around z.
    bool lens_flip(Complex z) const;

    // sqrt((z-z1)(z-z2)), cut on the polyline, ~ +z as z -> infinity.
    Complex sqrt_z1z2(Complex z) const;

    // Straight-chord branch only (cut on segment [z1,z2]).
    Complex sqrt_chord(Complex z) const;

    // Distance from z to the polyline.
    double distance(Complex z) const;

    // Cheap test: could z be within d of the polyline?  Bounding-box reject;
    // falls back to the exact distance only inside the box.
    bool possibly_within(Complex z, double d) const;

    // Does the open segment (a,b) cross the polyline?
    bool segment_crosses(Complex a, Complex b) const;

  private:
    std::vector<Complex> pts_;
    double bx0_ = 0, bx1_ = 0, by0_ = 0, by1_ = 0;  // bbox of cycle
};

// Signed winding number of a closed polyline about z (angle summation).
double winding_number(const std::vector<Complex>& closed_polyline, Complex z);

// Do closed segments [a1,b1] and [a2,b2] intersect?
bool segments_intersect(Complex a1, Complex b1, Complex a2, Complex b2);

// Distance from point z to segment [a,b].
double point_segment_distance(Complex z, Complex a, Complex b);

}  // namespace msv

#endif
