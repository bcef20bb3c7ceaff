#include "mothersolve/model.hpp"

#include <cmath>
#include <sstream>

namespace msv {

void ModelParams::validate() const {
    if (!(Q0 > 0.0) || !(Q1 > 0.0)) throw std::domain_error("ModelParams: Q0, Q1 must be positive");
    if (!(w > 0.0)) throw std::domain_error("ModelParams: w must be positive");
    if (N < 1) throw std::domain_error("ModelParams: N must be >= 1");
    if (!(n <= N + N * Q0)) {
        std::ostringstream os;
        os << "ModelParams: convergence condition n <= N + N*Q0 violated (n=" << n
           << ", N+N*Q0=" << N + N * Q0 << ")";
        throw std::domain_error(os.str());
    }
}

double critical_w(double Q0, double Q1) {
    if (!(Q0 > 0.0) || !(Q1 > 0.0)) throw std::domain_error("critical_w: charges must be positive");
    const double inner = 2.0 * Q0 * Q1 + Q0 + Q1 + 2.0 * std::sqrt(Q0 * Q1 * (1.0 + Q0) * (1.0 + Q1));
    return 1.0 / std::sqrt(inner);
}

Phase classify_phase(const ModelParams& p, double tol) {
    p.validate();
    const double wc = critical_w(p.Q0, p.Q1);
    Phase ph{PhaseTag::Critical, wc};
    if (std::abs(p.w - wc) < tol * wc)
        ph.tag = PhaseTag::Critical;
    else if (p.w > wc)
        ph.tag = PhaseTag::PreCritical;
    else
        ph.tag = PhaseTag::PostCritical;
    return ph;
}

PotentialValue eval_V_planar(const ModelParams& p, Complex z) {
    const double d = std::abs(z - Complex(p.w, 0.0));
    if (d == 0.0) return PotentialValue{0.0, true};
    const double c = 1.0 + 1.0 / p.N + p.Q0 + p.Q1;
    return PotentialValue{c * std::log1p(std::norm(z)) - 2.0 * p.Q1 * std::log(d), false};
}

namespace {
bool on_ray_to_minus_inf(Complex z, double right_end) {
    return z.imag() == 0.0 && z.real() <= right_end;
}
}  // namespace

Complex eval_script_V(const ModelParams& p, Complex z) {
    // Each principal log cuts a sub-ray of (-inf, w]; the union is the stated cut.
    if (on_ray_to_minus_inf(z, p.w))
        throw branch_error("scriptV: z on the branch cut (-inf, w]");
    return (1.0 + p.Q1) * std::log(z) + (1.0 + p.Q0) * std::log(z + 1.0 / p.w) -
           p.Q1 * std::log(z - p.w);
}

Complex eval_script_V_prime(const ModelParams& p, Complex z) {
    if (z == Complex(0.0) || z == Complex(-1.0 / p.w) || z == Complex(p.w))
        throw pole_error("scriptV': z at a pole");
    return (1.0 + p.Q1) / z + (1.0 + p.Q0) / (z + 1.0 / p.w) - p.Q1 / (z - p.w);
}

double re_script_V(const ModelParams& p, Complex z) {
    const double a0 = std::abs(z), a1 = std::abs(z + 1.0 / p.w), a2 = std::abs(z - p.w);
    if (a0 == 0.0 || a1 == 0.0 || a2 == 0.0) throw pole_error("Re scriptV: z at a pole");
    return (1.0 + p.Q1) * std::log(a0) + (1.0 + p.Q0) * std::log(a1) - p.Q1 * std::log(a2);
}

namespace {
Complex weight_impl(const ModelParams& p, Complex z, bool co_normalized) {
    if (z.imag() == 0.0 && ((z.real() >= 0.0 && z.real() <= p.w) || z.real() <= -1.0 / p.w))
        throw branch_error("weight: z on the branch cut [0,w] u (-inf,-1/w]");
    const double a = p.N * p.Q1;          // exponent of (z-w)/z
    const double b = p.N + p.N * p.Q0;    // exponent of the pole factor
    const Complex ratio = (z - p.w) / z;  // cut exactly [0, w]
    Complex log_w = a * std::log(ratio) - double(p.n) * std::log(z);
    if (co_normalized)
        log_w -= b * std::log(1.0 + p.w * z);  // cut exactly (-inf, -1/w]
    else
        log_w -= b * std::log(z + 1.0 / p.w);
    return std::exp(log_w);
}
}  // namespace

Complex eval_weight(const ModelParams& p, Complex z) { return weight_impl(p, z, false); }

Complex eval_weight_co(const ModelParams& p, Complex z) { return weight_impl(p, z, true); }

double log_gamma_ratio_G(const ModelParams& p, double k) {
    const double a1 = p.N + p.N * p.Q0 - k;
    const double a2 = 1.0 + k + p.N * p.Q1;
    const double a3 = p.N * (1.0 + p.Q0 + p.Q1) + 1.0;
    if (!(a1 > 0.0) || !(a2 > 0.0))
        throw std::domain_error("gamma_ratio_G: Gamma argument <= 0");
    return std::lgamma(a1) + std::lgamma(a2) - std::lgamma(a3);
}

double gamma_ratio_G(const ModelParams& p, double k) { return std::exp(log_gamma_ratio_G(p, k)); }

}  // namespace msv
