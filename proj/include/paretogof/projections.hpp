#pragma once

#include <string_view>

namespace paretogof {

// Projections of the two kernel families onto one argument under the
// unit Pareto null, and their variances.

enum class VarianceMethod { ClosedForm, Quadrature };

struct VarianceResult {
  double value = 0.0;
  VarianceMethod method = VarianceMethod::Quadrature;
};

// Projection of the integral-statistic kernel,
//   psi_k(s) = (k F^(k-1) - 1) / (2(k+1)) - (k-1)/(k+1) F
//            + k(k-1)/(k+1) ln(s)/s
//            - k / (s(k+1)) sum_{j=2}^{k-1} (-1)^j C(k-1,j) (1 - s^-(j-1))/(j-1)
// with F(s) = 1 - 1/s.
double psi(int k, double s);

// Reduced forms for k = 3 and k = 4.
double psi3_closed(double s);
double psi4_closed(double s);

// Delta_k^2 = \int psi_k^2(s) s^-2 ds. Exact rationals for k = 3, 4
// (11/1920, 271/52500), quadrature otherwise.
VarianceResult delta_sq_integral(int k);
VarianceResult delta_sq_integral_quadrature(int k);

// Projection of the supremum-statistic kernel family at level t:
//   xi_k(s; t) = ((1 - 1/s)^(k-1) - 1/k) / t
//              - 1{s >= t} ((1 - t/s)^(k-1) - 1/k).
double xi(int k, double s, double t);

// delta_k^2(t) = \int xi_k^2(s; t) s^-2 ds; closed forms for k = 3, 4.
VarianceResult delta_sq_sup_t(int k, double t);
VarianceResult delta_sq_sup_t_quadrature(int k, double t);
double delta_sq_sup_t_closed(int k, double t);

struct SupVariance {
  double t_star = 1.0;
  double value = 0.0;
};

// sup_{t >= 1} delta_k^2(t) and its location. Searched on [1, 10^3];
// delta_k^2(t) = O(1/t) beyond.
SupVariance delta_sq_sup(int k);

inline constexpr double kMaxSupLevel = 1e3;

}  // namespace paretogof
