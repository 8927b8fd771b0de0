#include "paretogof/optimize.hpp"

#include <cmath>
#include <vector>

#include "paretogof/error.hpp"

namespace paretogof {

Maximum golden_section_max(const std::function<double(double)>& f, double lo,
                           double hi, double x_tol) {
  if (!(lo <= hi)) throw DomainError("golden_section_max: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol * (1.0 + std::abs(a) + std::abs(b)) * 0.5) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (!(c < d)) break;
  }
  Maximum best = fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
  // The endpoints are never probed by the interior iteration.
  if (const double flo = f(lo); flo > best.value) best = {lo, flo};
  if (const double fhi = f(hi); fhi > best.value) best = {hi, fhi};
  return best;
}

Maximum maximize_log_grid(const std::function<double(double)>& f, double lo,
                          double hi, int grid_points, double x_tol) {
  if (!(lo > 0.0 && lo < hi) || grid_points < 3) {
    throw DomainError("maximize_log_grid: need 0 < lo < hi and >= 3 points");
  }
  std::vector<double> xs(grid_points);
  const double step = std::log(hi / lo) / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) xs[i] = lo * std::exp(step * i);
  xs.front() = lo;
  xs.back() = hi;

  int best = 0;
  double best_value = f(xs[0]);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(xs[i]);
    if (!std::isfinite(v)) throw NumericalError("maximize_log_grid: non-finite objective");
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = xs[best > 0 ? best - 1 : 0];
  const double b = xs[best + 1 < grid_points ? best + 1 : grid_points - 1];
  Maximum refined = golden_section_max(f, a, b, x_tol);
  if (refined.value < best_value) return {xs[best], best_value};
  return refined;
}

}  // namespace paretogof
