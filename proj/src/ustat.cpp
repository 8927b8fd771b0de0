#include "paretogof/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paretogof/error.hpp"

namespace paretogof {
namespace {

void require_order(const Sample& s, int k, std::size_t min_n,
                   const char* where) {
  if (k < 2) throw DomainError(std::string(where) + ": order k must be >= 2");
  if (s.size() < min_n) {
    std::ostringstream msg;
    msg << where << ": need at least " << min_n << " observations for k = " << k
        << ", got " << s.size();
    throw DomainError(msg.str());
  }
}

bool atom_less(const RatioAtom& x, const RatioAtom& y) { return x.t < y.t; }

}  // namespace

std::string_view kind_name(StatisticKind kind) {
  return kind == StatisticKind::Integral ? "integral" : "sup";
}

StatisticKind parse_kind(std::string_view name) {
  if (name == "integral" || name == "I") return StatisticKind::Integral;
  if (name == "sup" || name == "supremum" || name == "D") {
    return StatisticKind::Supremum;
  }
  throw DomainError("unknown statistic '" + std::string(name) +
                    "' (expected integral or sup)");
}

double RatioAtom::weight(Count total) const {
  return to_double(count) / to_double(total);
}

std::vector<RatioAtom> ratio_atoms(const Sample& s, int k) {
  require_order(s, k, static_cast<std::size_t>(k), "ratio_atoms");
  const auto x = s.values();
  const std::size_t n = x.size();
  std::vector<RatioAtom> atoms;
  const std::size_t first = static_cast<std::size_t>(k - 2);
  atoms.reserve((n - first) * (n - first - 1) / 2);
  // 0-based a has exactly a positions below it.
  for (std::size_t a = first; a + 1 < n; ++a) {
    const Count c = binomial(static_cast<std::int64_t>(a), k - 2);
    for (std::size_t b = a + 1; b < n; ++b) atoms.push_back({x[b] / x[a], c});
  }
  return atoms;
}

UEmpiricalCdf::UEmpiricalCdf(const Sample& s, int k)
    : k_(k), total_(binomial(static_cast<std::int64_t>(s.size()), k)) {
  auto atoms = ratio_atoms(s, k);
  std::sort(atoms.begin(), atoms.end(), atom_less);
  ts_.reserve(atoms.size());
  cumulative_.reserve(atoms.size() + 1);
  cumulative_.push_back(0);
  for (const auto& atom : atoms) {
    ts_.push_back(atom.t);
    cumulative_.push_back(cumulative_.back() + atom.count);
  }
}

Count UEmpiricalCdf::count_below(double t) const {
  const auto it = std::lower_bound(ts_.begin(), ts_.end(), t);
  return cumulative_[static_cast<std::size_t>(it - ts_.begin())];
}

Count UEmpiricalCdf::count_at_or_below(double t) const {
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  return cumulative_[static_cast<std::size_t>(it - ts_.begin())];
}

double UEmpiricalCdf::operator()(double t) const {
  return to_double(count_below(t)) / to_double(total_);
}

double u_empirical_cdf(const Sample& s, int k, double t) {
  if (!(t > 1.0)) {
    require_order(s, k, static_cast<std::size_t>(k), "u_empirical_cdf");
    return 0.0;
  }
  return UEmpiricalCdf(s, k)(t);
}

double empirical_cdf(const Sample& s, double t) {
  if (s.size() == 0) throw DomainError("empirical_cdf: empty sample");
  const auto x = s.values();
  const auto below = std::lower_bound(x.begin(), x.end(), t) - x.begin();
  return static_cast<double>(below) / static_cast<double>(x.size());
}

StatisticResult integral_statistic(const Sample& s, int k) {
  require_order(s, k, static_cast<std::size_t>(k) + 1, "integral_statistic");
  const auto x = s.values();
  const std::size_t n = x.size();

  // sum_i #{atoms < X_i}, weighted: every atom t contributes its count
  // times #{i : X_i > t}. For fixed a the ratios grow with b, so one
  // forward pointer per a finds #{X <= t}.
  Count sum_h = 0;
  for (std::size_t a = static_cast<std::size_t>(k - 2); a + 1 < n; ++a) {
    std::uint64_t above = 0;
    std::size_t at_or_below = 0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double t = x[b] / x[a];
      while (at_or_below < n && x[at_or_below] <= t) ++at_or_below;
      above += n - at_or_below;
    }
    sum_h += binomial(static_cast<std::int64_t>(a), k - 2) * above;
  }

  // sum_i #{j : X_j < X_i}; equals n(n-1)/2 without ties.
  Count sum_f = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_f += static_cast<Count>(std::lower_bound(x.begin(), x.end(), x[i]) -
                                x.begin());
  }

  const Count total = binomial(static_cast<std::int64_t>(n), k);
  const double value =
      to_double(sum_h) / to_double(total * n) -
      to_double(sum_f) / to_double(static_cast<Count>(n) * n);
  return {StatisticKind::Integral, k, n, value, std::nullopt};
}

SupDistance sup_step_difference(std::vector<RatioAtom> atoms, Count total,
                                std::span<const double> sorted_sample) {
  if (total == 0 || sorted_sample.empty()) {
    throw DomainError("sup_step_difference: empty input");
  }
  std::sort(atoms.begin(), atoms.end(), atom_less);
  const double n = static_cast<double>(sorted_sample.size());
  const double mass = to_double(total);

  SupDistance best{0.0, 1.0};
  Count ch = 0;
  std::size_t cf = 0;
  std::size_t ia = 0;
  std::size_t is = 0;
  auto update = [&](double location) {
    const double d = std::abs(to_double(ch) / mass - static_cast<double>(cf) / n);
    if (d > best.value) best = {d, location};
  };
  while (ia < atoms.size() || is < sorted_sample.size()) {
    double v = std::numeric_limits<double>::infinity();
    if (ia < atoms.size()) v = atoms[ia].t;
    if (is < sorted_sample.size()) v = std::min(v, sorted_sample[is]);
    update(v);  // value at v: strict indicators exclude v itself
    while (ia < atoms.size() && atoms[ia].t == v) ch += atoms[ia++].count;
    while (is < sorted_sample.size() && sorted_sample[is] == v) {
      ++cf;
      ++is;
    }
    update(v);  // right limit at v
  }
  return best;
}

StatisticResult sup_statistic(const Sample& s, int k) {
  require_order(s, k, static_cast<std::size_t>(k), "sup_statistic");
  const Count total = binomial(static_cast<std::int64_t>(s.size()), k);
  const auto d = sup_step_difference(ratio_atoms(s, k), total, s.values());
  return {StatisticKind::Supremum, k, s.size(), d.value, d.location};
}

StatisticResult compute_statistic(StatisticKind kind, const Sample& s, int k) {
  return kind == StatisticKind::Integral ? integral_statistic(s, k)
                                         : sup_statistic(s, k);
}

Count brute_force_count_below(const Sample& s, int k, double t) {
  require_order(s, k, static_cast<std::size_t>(k), "brute_force_H");
  const auto x = s.values();
  const int n = static_cast<int>(x.size());
  if (binomial(n, k) > kBruteForceLimit) {
    throw DomainError("brute_force_H: C(n, k) exceeds the 10^6 guard");
  }
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Count hits = 0;
  while (true) {
    double top = 0.0;
    double second = 0.0;
    for (int i : idx) {
      if (x[i] > top) {
        second = top;
        top = x[i];
      } else if (x[i] > second) {
        second = x[i];
      }
    }
    if (top / second < t) ++hits;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return hits;
}

double brute_force_H(const Sample& s, int k, double t) {
  const Count hits = brute_force_count_below(s, k, t);
  return to_double(hits) /
         to_double(binomial(static_cast<std::int64_t>(s.size()), k));
}

}  // namespace paretogof
