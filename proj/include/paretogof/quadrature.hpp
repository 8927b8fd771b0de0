#pragma once

#include <functional>
#include <span>

namespace paretogof {

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Interior breakpoints
// split the initial partition so kinks and jumps sit on panel edges.
// Throws NumericalError if the tolerance is not met within max_intervals.
QuadResult integrate(const Integrand& f, double a, double b,
                     std::span<const double> breakpoints = {},
                     const QuadOptions& opts = {});

// Integral of f over [a, inf), a > 0, through s = a / (1 - v), v in [0, 1).
// Integrands decaying like s^-2 become bounded on the compact v-domain.
QuadResult integrate_to_infinity(const Integrand& f, double a,
                                 std::span<const double> breakpoints = {},
                                 const QuadOptions& opts = {});

// Shorthand for the value of integrate_to_infinity over [1, inf).
double integrate_support(const Integrand& f,
                         std::span<const double> breakpoints = {},
                         const QuadOptions& opts = {});

}  // namespace paretogof
