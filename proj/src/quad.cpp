#include "mothersolve/quad.hpp"

#include <algorithm>
#include <cmath>

namespace msv {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) {
                x[i] = t;
                w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
                break;
            }
        }
    }
}

namespace {

// G7/K15 nodes on [0,1] of the positive half; symmetric extension applied in
// the evaluator.
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.000000000000000};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct GKResult {
    Complex value;
    double err;
};

GKResult gk15(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex resk = kWgk[7] * f(c);
    Complex resg = kWg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const Complex f1 = f(c - h * kXgk[j]);
        const Complex f2 = f(c + h * kXgk[j]);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::abs(resk - resg) * std::abs(h)};
}

}  // namespace

Complex integrate_gk(const std::function<Complex(double)>& f, double a, double b, double abs_tol,
                     int max_depth) {
    // Globally adaptive: keep a worst-first queue of subintervals and split
    // the largest error estimate until the total meets the tolerance.  This
    // resolves integrable endpoint singularities in O(depth) splits instead
    // of recursing the whole tree.
    struct Cell {
        double a, b, err;
        Complex val;
        bool operator<(const Cell& o) const { return err < o.err; }
    };
    const int max_cells = 200 * max_depth + 2000;
    std::vector<Cell> heap;
    auto push = [&](double lo, double hi) {
        const GKResult r = gk15(f, lo, hi);
        heap.push_back({lo, hi, r.err, r.value});
        std::push_heap(heap.begin(), heap.end());
    };
    push(a, b);
    double total_err = heap.front().err;
    while (total_err > abs_tol && int(heap.size()) < max_cells) {
        std::pop_heap(heap.begin(), heap.end());
        const Cell worst = heap.back();
        heap.pop_back();
        if (worst.b - worst.a < 1e-300) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        const double m = 0.5 * (worst.a + worst.b);
        push(worst.a, m);
        push(m, worst.b);
        total_err = 0.0;
        for (const Cell& c : heap) total_err += c.err;
    }
    if (total_err > 50.0 * abs_tol)
        throw quadrature_error("integrate_gk: tolerance not met within the cell budget");
    Complex acc = 0.0;
    for (const Cell& c : heap) acc += c.val;
    return acc;
}

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, int max_depth) {
    return integrate_gk([&](double t) { return Complex(f(t), 0.0); }, a, b, abs_tol, max_depth)
        .real();
}

Complex contour_trapezoid(const std::function<Complex(Complex)>& f, Complex center, double radius,
                          int nodes) {
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * M_PI * j / nodes;
        const Complex z = center + std::polar(radius, th);
        const Complex dz = Complex(0, 1) * std::polar(radius, th);
        acc += f(z) * dz;
    }
    return acc * (2.0 * M_PI / nodes);
}

Complex contour_trapezoid_auto(const std::function<Complex(Complex)>& f, Complex center,
                               double radius, double rel_tol, int start_nodes, int max_nodes) {
    Complex prev = contour_trapezoid(f, center, radius, start_nodes);
    for (int m = 2 * start_nodes; m <= max_nodes; m *= 2) {
        const Complex cur = contour_trapezoid(f, center, radius, m);
        if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300)) return cur;
        prev = cur;
    }
    throw quadrature_error("contour_trapezoid_auto: node budget exhausted");
}

}  // namespace msv
