#include "paretogof/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paretogof/error.hpp"
#include "paretogof/optimize.hpp"
#include "paretogof/projections.hpp"
#include "paretogof/quadrature.hpp"

namespace paretogof {
namespace {

double variance_for(StatisticKind kind, int k) {
  return kind == StatisticKind::Integral ? delta_sq_integral(k).value
                                         : delta_sq_sup(k).value;
}

// (k+1)^2 for the integral kernel of degree k+1, k^2 for the family of
// degree-k kernels.
double degree_sq(StatisticKind kind, int k) {
  const double d = kind == StatisticKind::Integral ? k + 1.0 : k;
  return d * d;
}

}  // namespace

double ld_rate_coef(StatisticKind kind, int k) {
  const double var = variance_for(kind, k);
  if (!(var > 0.0)) throw NumericalError("ld_rate_coef: degenerate variance");
  return 1.0 / (2.0 * degree_sq(kind, k) * var);
}

double slope_coef_integral(int k, const ScoreFunction& h) {
  return (k + 1.0) *
         integrate_support([&](double s) { return psi(k, s) * h(s); },
                           h.breakpoints());
}

double slope_coef_integral(int k, Family family) {
  return slope_coef_integral(k, ScoreFunction::of(family));
}

SupSlope slope_coef_sup(int k, const ScoreFunction& h) {
  const auto slope_at = [&](double t) {
    std::vector<double> kinks = h.breakpoints();
    kinks.push_back(t);
    return std::abs(k * integrate_support(
                            [&](double s) { return xi(k, s, t) * h(s); },
                            kinks));
  };
  const Maximum m = maximize_log_grid(slope_at, 1.0, kMaxSupLevel, 240, 1e-11);
  return {m.x, m.value};
}

SupSlope slope_coef_sup(int k, Family family) {
  return slope_coef_sup(k, ScoreFunction::of(family));
}

double kl_coef(const ScoreFunction& h) {
  const double fisher = integrate_support(
      [&](double x) {
        const double v = h(x);
        return v * v * x * x;
      },
      h.breakpoints());
  const double m = h.log_moment();
  return 0.5 * (fisher - m * m);
}

double kl_coef(Family family) { return kl_coef(ScoreFunction::of(family)); }

EfficiencyReport local_efficiency(StatisticKind kind, int k,
                                  const ScoreFunction& h) {
  EfficiencyReport r;
  r.kind = kind;
  r.k = k;
  r.family = h.name();
  if (kind == StatisticKind::Integral) {
    r.slope_coef = slope_coef_integral(k, h);
  } else {
    const SupSlope s = slope_coef_sup(k, h);
    r.slope_coef = s.coef;
    r.slope_t = s.t_max;
  }
  r.variance = variance_for(kind, k);
  r.exact_slope_coef = r.slope_coef * r.slope_coef / (degree_sq(kind, k) * r.variance);
  r.kl_coef = kl_coef(h);
  if (!(r.kl_coef > 0.0)) {
    throw DomainError("local_efficiency: alternative '" + h.name() +
                      "' has no local Kullback-Leibler information");
  }
  r.efficiency = r.exact_slope_coef / (2.0 * r.kl_coef);
  return r;
}

EfficiencyReport local_efficiency(StatisticKind kind, int k, Family family) {
  return local_efficiency(kind, k, ScoreFunction::of(family));
}

BestOverK best_over_k(const std::vector<EfficiencyReport>& reports,
                      StatisticKind kind, const std::string& family) {
  BestOverK best{kind, family, 0, -1.0};
  for (const auto& r : reports) {
    if (r.kind == kind && r.family == family && r.efficiency > best.efficiency) {
      best.k = r.k;
      best.efficiency = r.efficiency;
    }
  }
  if (best.k == 0) throw DomainError("best_over_k: no matching reports");
  return best;
}

LaoFamily::LaoFamily(LaoSpec spec) : spec_(spec) {
  if (!(spec_.c > 0.0) || !std::isfinite(spec_.c) ||
      !std::isfinite(spec_.c_prime)) {
    throw DomainError("LAO spec requires C > 0 and finite C'");
  }
  if (spec_.kind == StatisticKind::Supremum) {
    t0_ = spec_.t0 ? *spec_.t0 : delta_sq_sup(spec_.k).t_star;
    if (!(t0_ >= 1.0)) throw DomainError("LAO spec requires t0 >= 1");
  } else if (spec_.t0) {
    throw DomainError("LAO spec: t0 applies to the supremum statistic only");
  }
  psi(spec_.k, 1.0);  // validates k

  // ln x - 1 is unbounded above, so C' < 0 rules out every theta > 0.
  if (spec_.c_prime < 0.0) {
    max_theta_ = 0.0;
    return;
  }
  double lowest = 0.0;
  constexpr int kGrid = 4000;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = std::exp(std::log(1e9) * i / kGrid);
    lowest = std::min(lowest, perturbation(x));
  }
  if (spec_.kind == StatisticKind::Supremum) {
    lowest = std::min(lowest, perturbation(t0_));
  }
  max_theta_ = lowest < 0.0 ? -1.0 / lowest
                            : std::numeric_limits<double>::infinity();
}

double LaoFamily::perturbation(double x) const {
  const double p = spec_.kind == StatisticKind::Integral ? psi(spec_.k, x)
                                                          : xi(spec_.k, x, t0_);
  return spec_.c * p + spec_.c_prime * (std::log(x) - 1.0);
}

double LaoFamily::density(double theta, double x) const {
  if (!(theta >= 0.0) || theta > max_theta_) {
    std::ostringstream msg;
    msg << "LAO density is negative somewhere for theta = " << theta
        << " (admissible range [0, " << max_theta_ << "])";
    throw DomainError(msg.str());
  }
  if (!(x >= 1.0)) throw DomainError("lao_density: x must be >= 1");
  return (1.0 + theta * perturbation(x)) / (x * x);
}

ScoreFunction LaoFamily::score() const {
  std::ostringstream name;
  name << "lao-" << kind_name(spec_.kind) << "-k" << spec_.k;
  std::vector<double> kinks;
  if (spec_.kind == StatisticKind::Supremum) kinks.push_back(t0_);
  const LaoFamily self = *this;
  return ScoreFunction(
      name.str(),
      [self](double x) { return self.perturbation(x) / (x * x); }, kinks);
}

double lao_density(const LaoSpec& spec, double theta, double x) {
  return LaoFamily(spec).density(theta, x);
}

double lao_efficiency_check(const LaoSpec& spec) {
  const LaoFamily family(spec);
  return local_efficiency(spec.kind, spec.k, family.score()).efficiency;
}

}  // namespace paretogof
