#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/ustat.hpp"

namespace paretogof {

// Local Bahadur efficiency of one statistic against one alternative
// direction. All coefficients are theta -> 0 limits:
//   b(theta) ~ slope_coef * theta
//   c(theta) ~ exact_slope_coef * theta^2
//   K(theta) ~ kl_coef * theta^2
struct EfficiencyReport {
  StatisticKind kind = StatisticKind::Integral;
  int k = 3;
  std::string family;
  double slope_coef = 0.0;
  std::optional<double> slope_t;  // maximizing level, Supremum only
  double variance = 0.0;          // Delta_k^2, or sup_t delta_k^2(t)
  double exact_slope_coef = 0.0;
  double kl_coef = 0.0;
  double efficiency = 0.0;
};

// Quadratic coefficient of the null large-deviation rate f(a) ~ coef * a^2:
// 1 / (2 (k+1)^2 Delta_k^2) for the integral statistic and
// 1 / (2 k^2 sup_t delta_k^2(t)) for the supremum statistic.
double ld_rate_coef(StatisticKind kind, int k);

// (k+1) \int psi_k(s) h(s) ds.
double slope_coef_integral(int k, const ScoreFunction& h);
double slope_coef_integral(int k, Family family);

struct SupSlope {
  double t_max = 1.0;
  double coef = 0.0;
};

// sup_{t >= 1} |k \int xi_k(s; t) h(s) ds|. The sup over t and the
// theta -> 0 limit are taken in that order.
SupSlope slope_coef_sup(int k, const ScoreFunction& h);
SupSlope slope_coef_sup(int k, Family family);

// kappa with K(theta) ~ kappa theta^2:
//   kappa = (\int h^2(x) x^2 dx - (\int h(x) ln x dx)^2) / 2.
double kl_coef(const ScoreFunction& h);
double kl_coef(Family family);

EfficiencyReport local_efficiency(StatisticKind kind, int k,
                                  const ScoreFunction& h);
EfficiencyReport local_efficiency(StatisticKind kind, int k, Family family);

struct BestOverK {
  StatisticKind kind = StatisticKind::Integral;
  std::string family;
  int k = 0;
  double efficiency = 0.0;
};

BestOverK best_over_k(const std::vector<EfficiencyReport>& reports,
                      StatisticKind kind, const std::string& family);

// Alternatives with score h(x) = (C p(x) + C' (ln x - 1)) / x^2, where p is
// psi_k (integral statistic) or xi_k(.; t0) (supremum statistic). These are
// the locally optimal directions for the matching statistic.
struct LaoSpec {
  StatisticKind kind = StatisticKind::Integral;
  int k = 3;
  double c = 1.0;
  double c_prime = 0.0;
  // Supremum only; defaults to argmax_t delta_k^2(t).
  std::optional<double> t0;
};

class LaoFamily {
 public:
  explicit LaoFamily(LaoSpec spec);

  const LaoSpec& spec() const { return spec_; }
  double t0() const { return t0_; }
  // C p(x) + C' (ln x - 1).
  double perturbation(double x) const;
  // Largest theta keeping the density nonnegative (may be +inf).
  double max_theta() const { return max_theta_; }
  // x^-2 (1 + theta * perturbation(x)); throws DomainError when theta is
  // negative or exceeds max_theta().
  double density(double theta, double x) const;
  ScoreFunction score() const;

 private:
  LaoSpec spec_;
  double t0_ = 1.0;
  double max_theta_ = 0.0;
};

double lao_density(const LaoSpec& spec, double theta, double x);

// Local efficiency of the matching statistic against the LAO direction;
// 1 up to numerical error when t0 is the variance maximizer.
double lao_efficiency_check(const LaoSpec& spec);

}  // namespace paretogof
