#include "paretogof/projections.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "paretogof/combinatorics.hpp"
#include "paretogof/error.hpp"
#include "paretogof/optimize.hpp"
#include "paretogof/quadrature.hpp"

namespace paretogof {
namespace {

void require_k(int k, const char* where) {
  if (k < 2 || k > 60) {
    std::ostringstream msg;
    msg << where << ": order k = " << k << " outside [2, 60]";
    throw DomainError(msg.str());
  }
}

void require_level(double v, const char* name, const char* where) {
  if (!(v >= 1.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << where << ": " << name << " = " << v << " must be >= 1";
    throw DomainError(msg.str());
  }
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

double psi(int k, double s) {
  require_k(k, "psi");
  require_level(s, "s", "psi");
  const double kd = k;
  const double log_s = std::log(s);
  const double f = 1.0 - 1.0 / s;

  CompensatedSum alternating;
  for (int j = 2; j <= k - 1; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    // 1 - s^-(j-1) without cancellation near s = 1.
    const double tail = -std::expm1(-(j - 1) * log_s);
    alternating.add(sign * to_double(binomial(k - 1, j)) * tail / (j - 1));
  }

  CompensatedSum total;
  total.add((kd * std::pow(f, k - 1) - 1.0) / (2.0 * (kd + 1.0)));
  total.add(-(kd - 1.0) / (kd + 1.0) * f);
  total.add(kd * (kd - 1.0) / (kd + 1.0) * log_s / s);
  total.add(-kd / (s * (kd + 1.0)) * alternating.value());
  return total.value();
}

double psi3_closed(double s) {
  require_level(s, "s", "psi3_closed");
  return 9.0 / (8.0 * s * s) + 3.0 * std::log(s) / (2.0 * s) - 1.0 / s - 0.25;
}

double psi4_closed(double s) {
  require_level(s, "s", "psi4_closed");
  return 12.0 * std::log(s) / (5.0 * s) - 4.0 / (5.0 * s * s * s) +
         18.0 / (5.0 * s * s) - 13.0 / (5.0 * s) - 0.3;
}

VarianceResult delta_sq_integral_quadrature(int k) {
  require_k(k, "delta_sq_integral");
  const double v = integrate_support([k](double s) {
    const double p = psi(k, s);
    return p * p / (s * s);
  });
  return {v, VarianceMethod::Quadrature};
}

VarianceResult delta_sq_integral(int k) {
  if (k == 3) return {11.0 / 1920.0, VarianceMethod::ClosedForm};
  if (k == 4) return {271.0 / 52500.0, VarianceMethod::ClosedForm};
  return delta_sq_integral_quadrature(k);
}

double xi(int k, double s, double t) {
  require_k(k, "xi");
  require_level(s, "s", "xi");
  require_level(t, "t", "xi");
  const double inv_k = 1.0 / k;
  double v = (std::pow(1.0 - 1.0 / s, k - 1) - inv_k) / t;
  if (s >= t) v -= std::pow(1.0 - t / s, k - 1) - inv_k;
  return v;
}

double delta_sq_sup_t_closed(int k, double t) {
  require_level(t, "t", "delta_sq_sup_t");
  if (k == 3) {
    return (((4.0 * t + 4.0) * t - 15.0) * t + 7.0) / (45.0 * t * t * t * t);
  }
  if (k == 4) {
    return ((((45.0 * t + 45.0) * t - 252.0) * t + 224.0) * t - 62.0) /
           (560.0 * t * t * t * t * t);
  }
  throw DomainError("delta_sq_sup_t: closed form only for k = 3, 4");
}

VarianceResult delta_sq_sup_t_quadrature(int k, double t) {
  require_k(k, "delta_sq_sup_t");
  require_level(t, "t", "delta_sq_sup_t");
  const std::array<double, 1> kink{t};
  // Under s = 1/(1-v) the integrand is piecewise polynomial in v, which
  // the 15-point rule integrates exactly for moderate k.
  const double v = integrate_support(
      [k, t](double s) {
        const double p = xi(k, s, t);
        return p * p / (s * s);
      },
      kink);
  return {v, VarianceMethod::Quadrature};
}

VarianceResult delta_sq_sup_t(int k, double t) {
  if (k == 3 || k == 4) {
    return {delta_sq_sup_t_closed(k, t), VarianceMethod::ClosedForm};
  }
  return delta_sq_sup_t_quadrature(k, t);
}

SupVariance delta_sq_sup(int k) {
  require_k(k, "delta_sq_sup");
  static std::mutex mutex;
  static std::map<int, SupVariance> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  const auto objective = [k](double t) { return delta_sq_sup_t(k, t).value; };
  const Maximum m = maximize_log_grid(objective, 1.0, kMaxSupLevel, 400, 1e-12);
  if (m.x >= kMaxSupLevel * 0.999 || !(m.value > 0.0)) {
    throw NumericalError("delta_sq_sup: no interior maximum of delta^2(t)");
  }
  const SupVariance result{m.x, m.value};
  std::lock_guard lock(mutex);
  cache.emplace(k, result);
  return result;
}

}  // namespace paretogof
