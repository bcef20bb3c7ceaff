#include "mothersolve/cutline.hpp"

#include <algorithm>
#include <cmath>

namespace msv {

CutCurve::CutCurve(std::vector<Complex> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::domain_error("CutCurve: need at least two points");
    bx0_ = by0_ = 1e300;
    bx1_ = by1_ = -1e300;
    for (const Complex& p : pts_) {
        bx0_ = std::min(bx0_, p.real());
        bx1_ = std::max(bx1_, p.real());
        by0_ = std::min(by0_, p.imag());
        by1_ = std::max(by1_, p.imag());
    }
}

bool CutCurve::lens_flip(Complex z) const {
    const double x = z.real(), y = z.imag();
    if (x < bx0_ || x > bx1_ || y < by0_ || y > by1_) return false;
    // Even-odd ray casting against the closed cycle: polyline edges plus the
    // chord z2 -> z1.
    bool inside = false;
    const size_t m = pts_.size();
    auto edge = [&](Complex a, Complex b) {
        if ((a.imag() > y) != (b.imag() > y)) {
            const double t = (y - a.imag()) / (b.imag() - a.imag());
            const double xc = a.real() + t * (b.real() - a.real());
            if (x < xc) inside = !inside;
        }
    };
    for (size_t i = 0; i + 1 < m; ++i) edge(pts_[i], pts_[i + 1]);
    edge(pts_.back(), pts_.front());
    return inside;
}

Complex CutCurve::sqrt_chord(Complex z) const {
    const Complex mid = 0.5 * (pts_.front() + pts_.back());
    const Complex half = 0.5 * (pts_.back() - pts_.front());
    const Complex zeta = (z - mid) / half;
    // Principal-square-root product: cut exactly on zeta in [-1, 1].
    return half * std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
}

Complex CutCurve::sqrt_z1z2(Complex z) const {
    const Complex h = sqrt_chord(z);
    return lens_flip(z) ? -h : h;
}

double CutCurve::distance(Complex z) const {
    double d = 1e300;
    for (size_t i = 0; i + 1 < pts_.size(); ++i)
        d = std::min(d, point_segment_distance(z, pts_[i], pts_[i + 1]));
    return d;
}

bool CutCurve::possibly_within(Complex z, double d) const {
    const double x = z.real(), y = z.imag();
    if (x < bx0_ - d || x > bx1_ + d || y < by0_ - d || y > by1_ + d) return false;
    return distance(z) <= d;
}

bool CutCurve::segment_crosses(Complex a, Complex b) const {
    const double x0 = std::min(a.real(), b.real()), x1 = std::max(a.real(), b.real());
    const double y0 = std::min(a.imag(), b.imag()), y1 = std::max(a.imag(), b.imag());
    if (x1 < bx0_ || x0 > bx1_ || y1 < by0_ || y0 > by1_) return false;
    for (size_t i = 0; i + 1 < pts_.size(); ++i)
        if (segments_intersect(a, b, pts_[i], pts_[i + 1])) return true;
    return false;
}

double winding_number(const std::vector<Complex>& poly, Complex z) {
    double total = 0.0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Complex a = poly[i] - z;
        const Complex b = poly[(i + 1) % m] - z;
        total += std::arg(b / a);
    }
    return total / (2.0 * M_PI);
}

namespace {
double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}
}  // namespace

bool segments_intersect(Complex a1, Complex b1, Complex a2, Complex b2) {
    const double d1 = cross(a2, b2, a1);
    const double d2 = cross(a2, b2, b1);
    const double d3 = cross(a1, b1, a2);
    const double d4 = cross(a1, b1, b2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_seg = [](Complex p, Complex q, Complex r) {
        return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
               std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
    };
    if (d1 == 0 && on_seg(a2, a1, b2)) return true;
    if (d2 == 0 && on_seg(a2, b1, b2)) return true;
    if (d3 == 0 && on_seg(a1, a2, b1)) return true;
    if (d4 == 0 && on_seg(a1, b2, b1)) return true;
    return false;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

}  // namespace msv
