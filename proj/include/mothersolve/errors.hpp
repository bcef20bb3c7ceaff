#ifndef MOTHERSOLVE_ERRORS_HPP
#define MOTHERSOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msv {

// Evaluation at a pole of a meromorphic function.
struct pole_error : std::domain_error {
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// Evaluation on (or too close to) a branch cut.
struct branch_error : std::domain_error {
    explicit branch_error(const std::string& what) : std::domain_error(what) {}
};

// A traced trajectory did not close up the way the pre-critical phase demands.
struct topology_error : std::runtime_error {
    explicit topology_error(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature failed to converge within its node budget.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// Nonlinear solve failed; usually means the parameters left the pre-critical phase.
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// A linear system became numerically singular at the working precision.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msv

#endif
