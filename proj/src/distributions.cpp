#include "paretogof/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "paretogof/error.hpp"
#include "paretogof/quadrature.hpp"
#include "paretogof/rng.hpp"
#include "paretogof/sample.hpp"

namespace paretogof {
namespace {

using std::numbers::pi;

void require_support(double x, const char* where) {
  if (!(x >= 1.0)) {
    std::ostringstream msg;
    msg << where << ": x = " << x << " is outside the support [1, inf)";
    throw DomainError(msg.str());
  }
}

void require_unit(double u, const char* where) {
  if (!(u >= 0.0 && u < 1.0)) {
    std::ostringstream msg;
    msg << where << ": probability " << u << " outside [0, 1)";
    throw DomainError(msg.str());
  }
}

// Unit-shape Pareto CDF, written to keep precision for x near 1.
double unit_cdf(double x) { return 1.0 - 1.0 / x; }

// The LP1/LP2 laws in probability coordinates y = F(x).
double skew_in_y(Family family, double theta, double y) {
  if (family == Family::LP1) return y * std::exp(-theta * (1.0 - y));
  return y - theta * std::sin(pi * y);
}

double skew_slope_in_y(Family family, double theta, double y) {
  if (family == Family::LP1) {
    return std::exp(-theta * (1.0 - y)) * (1.0 + theta * y);
  }
  return 1.0 - theta * pi * std::cos(pi * y);
}

// Solves skew_in_y(y) = u on [0, 1]: Newton steps, falling back to
// bisection whenever a step leaves the bracket.
double invert_skew(Family family, double theta, double u) {
  double lo = 0.0;
  double hi = 1.0;
  double y = u;
  for (int iter = 0; iter < 200; ++iter) {
    const double g = skew_in_y(family, theta, y) - u;
    if (std::abs(g) <= 1e-12 * 0.5) return y;
    if (g < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) return y;
    const double slope = skew_slope_in_y(family, theta, y);
    double next = slope > 0.0 ? y - g / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    y = next;
  }
  throw NumericalError("alt_quantile: root finder did not converge");
}

}  // namespace

ParetoParams::ParetoParams(double shape) : lambda(shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("Pareto shape lambda must be positive and finite");
  }
}

double pareto_cdf(double x, const ParetoParams& p) {
  require_support(x, "pareto_cdf");
  if (p.lambda == 1.0) return unit_cdf(x);
  return -std::expm1(-p.lambda * std::log(x));
}

double pareto_density(double x, const ParetoParams& p) {
  require_support(x, "pareto_density");
  return p.lambda * std::pow(x, -p.lambda - 1.0);
}

double pareto_quantile(double u, const ParetoParams& p) {
  require_unit(u, "pareto_quantile");
  return std::pow(1.0 - u, -1.0 / p.lambda);
}

Sample pareto_sample(std::size_t n, const ParetoParams& p,
                     std::uint64_t seed) {
  if (n == 0) throw DomainError("pareto_sample: n must be positive");
  Xoshiro256 rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = pareto_quantile(rng.uniform(), p);
  return Sample(std::move(xs));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Pareto:
      return "pareto";
    case Family::LP1:
      return "lp1";
    case Family::LP2:
      return "lp2";
    case Family::LogWeibull:
      return "log-weibull";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "pareto") return Family::Pareto;
  if (lower == "lp1") return Family::LP1;
  if (lower == "lp2") return Family::LP2;
  if (lower == "log-weibull" || lower == "logweibull" || lower == "lw") {
    return Family::LogWeibull;
  }
  throw DomainError("unknown family '" + std::string(name) +
                    "' (expected pareto, lp1, lp2 or log-weibull)");
}

AlternativeSpec AlternativeSpec::pareto(double lambda) {
  ParetoParams check(lambda);
  return {Family::Pareto, 0.0, check.lambda};
}

AlternativeSpec AlternativeSpec::lp1(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("LP1 requires theta >= 0");
  }
  return {Family::LP1, theta, 1.0};
}

AlternativeSpec AlternativeSpec::lp2(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0 / pi)) {
    throw DomainError("LP2 requires theta in [0, 1/pi]");
  }
  return {Family::LP2, theta, 1.0};
}

AlternativeSpec AlternativeSpec::log_weibull(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw DomainError("log-Weibull requires theta in [0, 1)");
  }
  return {Family::LogWeibull, theta, 1.0};
}

AlternativeSpec AlternativeSpec::make(Family family, double theta,
                                      double lambda) {
  switch (family) {
    case Family::Pareto:
      return pareto(lambda);
    case Family::LP1:
      return lp1(theta);
    case Family::LP2:
      return lp2(theta);
    case Family::LogWeibull:
      return log_weibull(theta);
  }
  throw DomainError("unknown family");
}

bool AlternativeSpec::is_null() const {
  return family_ == Family::Pareto || theta_ == 0.0;
}

double alt_cdf(const AlternativeSpec& spec, double x) {
  require_support(x, "alt_cdf");
  switch (spec.family()) {
    case Family::Pareto:
      return pareto_cdf(x, ParetoParams(spec.lambda()));
    case Family::LP1:
    case Family::LP2:
      return skew_in_y(spec.family(), spec.theta(), unit_cdf(x));
    case Family::LogWeibull:
      return -std::expm1(-std::pow(std::log(x), spec.theta() + 1.0));
  }
  return 0.0;
}

double alt_density(const AlternativeSpec& spec, double x) {
  require_support(x, "alt_density");
  const double theta = spec.theta();
  switch (spec.family()) {
    case Family::Pareto:
      return pareto_density(x, ParetoParams(spec.lambda()));
    case Family::LP1: {
      const double y = unit_cdf(x);
      return std::exp(-theta * (1.0 - y)) * (1.0 + theta * y) / (x * x);
    }
    case Family::LP2:
      return (1.0 + theta * pi * std::cos(pi / x)) / (x * x);
    case Family::LogWeibull: {
      const double l = std::log(x);
      return (theta + 1.0) * std::pow(l, theta) *
             std::exp(-std::pow(l, theta + 1.0)) / x;
    }
  }
  return 0.0;
}

double alt_quantile(const AlternativeSpec& spec, double u) {
  require_unit(u, "alt_quantile");
  const ParetoParams unit(1.0);
  switch (spec.family()) {
    case Family::Pareto:
      return pareto_quantile(u, ParetoParams(spec.lambda()));
    case Family::LP1:
    case Family::LP2:
      if (spec.theta() == 0.0) return pareto_quantile(u, unit);
      return pareto_quantile(invert_skew(spec.family(), spec.theta(), u),
                             unit);
    case Family::LogWeibull:
      return std::exp(std::pow(-std::log1p(-u), 1.0 / (spec.theta() + 1.0)));
  }
  return 1.0;
}

Sample alt_sample(const AlternativeSpec& spec, std::size_t n,
                  std::uint64_t seed) {
  if (n == 0) throw DomainError("alt_sample: n must be positive");
  Xoshiro256 rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = alt_quantile(spec, rng.uniform());
  return Sample(std::move(xs));
}

double score_H(Family family, double x) {
  require_support(x, "score_H");
  switch (family) {
    case Family::Pareto:
      return 0.0;
    case Family::LP1:
      return -(x - 1.0) / (x * x);
    case Family::LP2:
      // -sin(pi F(x)) with sin(pi (1 - 1/x)) = sin(pi / x).
      return -std::sin(pi / x);
    case Family::LogWeibull: {
      if (x == 1.0) return 0.0;
      const double l = std::log(x);
      return l * std::log(l) / x;
    }
  }
  return 0.0;
}

double score_h(Family family, double x) {
  require_support(x, "score_h");
  switch (family) {
    case Family::Pareto:
      return 0.0;
    case Family::LP1:
      return (x - 2.0) / (x * x * x);
    case Family::LP2:
      // -pi cos(pi F(x)) F'(x) with cos(pi (1 - 1/x)) = -cos(pi / x).
      return pi * std::cos(pi / x) / (x * x);
    case Family::LogWeibull: {
      if (x == 1.0) return 0.0;
      const double l = std::log(x);
      return ((1.0 - l) * std::log(l) + 1.0) / (x * x);
    }
  }
  return 0.0;
}

struct ScoreFunction::Cache {
  std::once_flag once;
  double log_moment = 0.0;
};

ScoreFunction::ScoreFunction(std::string name, std::function<double(double)> h,
                             std::vector<double> breakpoints)
    : name_(std::move(name)),
      h_(std::move(h)),
      breakpoints_(std::move(breakpoints)),
      cache_(std::make_shared<Cache>()) {}

ScoreFunction ScoreFunction::of(Family family) {
  return ScoreFunction(std::string(family_name(family)),
                       [family](double x) { return score_h(family, x); });
}

double ScoreFunction::log_moment() const {
  std::call_once(cache_->once, [this] {
    cache_->log_moment = integrate_support(
        [this](double u) { return h_(u) * std::log(u); }, breakpoints_);
  });
  return cache_->log_moment;
}

ScoreFunction h0_transform(const ScoreFunction& h) {
  const double m = h.log_moment();
  auto base = h;
  return ScoreFunction(
      h.name() + "/h0",
      [base, m](double x) {
        return base(x) - (std::log(x) - 1.0) / (x * x) * m;
      },
      h.breakpoints());
}

}  // namespace paretogof
