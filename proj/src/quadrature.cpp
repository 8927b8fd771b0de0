#include "paretogof/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "paretogof/error.hpp"

namespace paretogof {
namespace {

// Kronrod abscissae; odd indices (1, 3, 5) are the Gauss-7 nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  double abs_k = std::abs(kronrod);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double sum = fv1[j] + fv2[j];
    kronrod += kWgk[j] * sum;
    abs_k += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double result = kronrod * half;
  abs_k *= std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  // QUADPACK error scaling.
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (abs_k > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * abs_k, err);
  }
  if (!std::isfinite(result) || !std::isfinite(err)) {
    std::ostringstream msg;
    msg << "non-finite integrand on [" << a << ", " << b << "]";
    throw NumericalError(msg.str());
  }
  return {a, b, result, err};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b,
                     std::span<const double> breakpoints,
                     const QuadOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {};
    throw DomainError("integrate: require a <= b");
  }
  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }

  // Panels too narrow to split further stay in `frozen`.
  double frozen_err = 0.0;
  int count = static_cast<int>(panels.size());
  auto tolerance = [&] {
    return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };
  while (total_err > tolerance() && !panels.empty()) {
    if (count >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << a << ", " << b
          << "]: error estimate " << total_err << " after " << count
          << " panels";
      throw NumericalError(msg.str());
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen_err += worst.error;
      if (frozen_err > tolerance()) {
        throw NumericalError("quadrature hit the floating-point resolution");
      }
      continue;
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // Re-sum to shed the drift from incremental updates.
  double sum = 0.0;
  double err = frozen_err;
  std::vector<double> values;
  values.reserve(panels.size());
  while (!panels.empty()) {
    values.push_back(panels.top().value);
    err += panels.top().error;
    panels.pop();
  }
  std::sort(values.begin(), values.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (double v : values) sum += v;
  return {sum, err, count};
}

QuadResult integrate_to_infinity(const Integrand& f, double a,
                                 std::span<const double> breakpoints,
                                 const QuadOptions& opts) {
  if (!(a > 0.0)) throw DomainError("integrate_to_infinity: require a > 0");
  auto mapped = [&f, a](double v) {
    const double w = 1.0 - v;
    const double s = a / w;
    if (!std::isfinite(s)) return 0.0;
    return f(s) * a / (w * w);
  };
  std::vector<double> vbreaks;
  vbreaks.reserve(breakpoints.size());
  for (double p : breakpoints) {
    if (p > a && std::isfinite(p)) vbreaks.push_back(1.0 - a / p);
  }
  return integrate(mapped, 0.0, 1.0, vbreaks, opts);
}

double integrate_support(const Integrand& f,
                         std::span<const double> breakpoints,
                         const QuadOptions& opts) {
  return integrate_to_infinity(f, 1.0, breakpoints, opts).value;
}

}  // namespace paretogof
