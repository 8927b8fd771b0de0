#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace paretogof {

class Sample;

// Pareto law F(x) = 1 - x^(-lambda) on [1, inf).
struct ParetoParams {
  double lambda = 1.0;

  explicit ParetoParams(double shape = 1.0);
};

double pareto_cdf(double x, const ParetoParams& p);
double pareto_density(double x, const ParetoParams& p);
// Inverse CDF; u in [0, 1).
double pareto_quantile(double u, const ParetoParams& p);
Sample pareto_sample(std::size_t n, const ParetoParams& p, std::uint64_t seed);

enum class Family { Pareto, LP1, LP2, LogWeibull };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

// Alternative law G(x, theta). The Ley-Paindaveine skews and the
// log-Weibull law all perturb the unit-shape Pareto CDF; the Pareto member
// stays in the null family and only carries its shape.
class AlternativeSpec {
 public:
  static AlternativeSpec pareto(double lambda = 1.0);
  static AlternativeSpec lp1(double theta);
  static AlternativeSpec lp2(double theta);
  static AlternativeSpec log_weibull(double theta);
  // Validating factory; lambda is only used by Family::Pareto.
  static AlternativeSpec make(Family family, double theta, double lambda = 1.0);

  Family family() const { return family_; }
  double theta() const { return theta_; }
  double lambda() const { return lambda_; }
  bool is_null() const;

 private:
  AlternativeSpec(Family f, double theta, double lambda)
      : family_(f), theta_(theta), lambda_(lambda) {}

  Family family_;
  double theta_;
  double lambda_;
};

double alt_cdf(const AlternativeSpec& spec, double x);
double alt_density(const AlternativeSpec& spec, double x);
// Inverse CDF. LP1/LP2 are inverted numerically to 1e-12 in CDF space.
double alt_quantile(const AlternativeSpec& spec, double u);
Sample alt_sample(const AlternativeSpec& spec, std::size_t n,
                  std::uint64_t seed);

// First-order CDF perturbation H(x) = dG/dtheta at theta = 0.
double score_H(Family family, double x);
// Density score h(x) = dg/dtheta at theta = 0 (h = H').
// LogWeibull diverges logarithmically at x = 1; the value there is 0 by
// convention (a single point, irrelevant to every integral).
double score_h(Family family, double x);

// A density score x -> h(x) on [1, inf) with the kink locations an
// integrator should split at.
class ScoreFunction {
 public:
  ScoreFunction(std::string name, std::function<double(double)> h,
                std::vector<double> breakpoints = {});

  static ScoreFunction of(Family family);

  double operator()(double x) const { return h_(x); }
  const std::string& name() const { return name_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  // \int_1^inf h(u) ln(u) du, computed once and cached.
  double log_moment() const;

 private:
  std::string name_;
  std::function<double(double)> h_;
  std::vector<double> breakpoints_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// h0(x) = h(x) - (ln x - 1) / x^2 * \int h(u) ln u du. Removes the
// component of h along the Pareto shape direction.
ScoreFunction h0_transform(const ScoreFunction& h);

}  // namespace paretogof
