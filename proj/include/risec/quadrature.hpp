#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace risec {

/// Raised when an iterative numeric routine fails to converge; carries the
/// best iterate so callers can report diagnostics.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double best, std::size_t iterations)
        : std::runtime_error(what), best_estimate(best), iterations(iterations) {}
    double best_estimate;
    std::size_t iterations;
};

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<double>& gauss_legendre_nodes(std::size_t order);
const std::vector<double>& gauss_legendre_weights(std::size_t order);

/// Fixed-order Gauss-Legendre estimate of the integral of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      std::size_t order);

/// Adaptive bisection with a 16-vs-32 point Gauss-Legendre error estimate.
/// rel_tol applies to the running global estimate; throws NumericError when
/// the recursion depth limit is hit before the local error shrinks.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 32);

/// Integral of f over [0, inf) through the double-exponential substitution
/// x = exp((pi/2) sinh t), accurate for exponentially decaying integrands
/// and for algebraic tails x^-(1+c) down to c around 0.07; throws
/// NumericError when trapezoid refinement stalls.
double integrate_half_line(const std::function<double(double)>& f,
                           double rel_tol = 1e-10);

} // namespace risec
