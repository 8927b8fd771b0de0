#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paretogof/combinatorics.hpp"
#include "paretogof/sample.hpp"

namespace paretogof {

enum class StatisticKind { Integral, Supremum };

std::string_view kind_name(StatisticKind kind);
StatisticKind parse_kind(std::string_view name);

// Ratio x_(b) / x_(a) of two sorted positions a < b, together with the number
// of k-subsets whose largest element sits at b and second largest at a:
// C(a - 1, k - 2) with 1-based positions.
struct RatioAtom {
  double t = 1.0;
  Count count = 0;

  // count / C(n, k), the atom's mass in H_n.
  double weight(Count total) const;
};

// Atoms in pair order (a ascending, then b ascending); pairs with no
// admissible subset are skipped. Requires n >= k >= 2.
std::vector<RatioAtom> ratio_atoms(const Sample& s, int k);

// U-empirical distribution function
//   H_n(t) = C(n,k)^-1 #{k-subsets with max / second max < t},
// aggregated from the O(n^2) ratio atoms. Memory grows as n^2 / 2 atoms,
// practical up to n of a few thousand.
class UEmpiricalCdf {
 public:
  UEmpiricalCdf(const Sample& s, int k);

  // Strict inequality: atoms equal to t are not counted.
  double operator()(double t) const;
  Count count_below(double t) const;
  // Count of atoms <= t, i.e. the right limit of count_below at t.
  Count count_at_or_below(double t) const;

  Count total() const { return total_; }
  int k() const { return k_; }
  const std::vector<double>& atoms() const { return ts_; }

 private:
  int k_;
  Count total_;
  std::vector<double> ts_;
  std::vector<Count> cumulative_;  // cumulative_[i] = counts of ts_[0..i)
};

double u_empirical_cdf(const Sample& s, int k, double t);

// F_n(t) = n^-1 #{X_j < t}.
double empirical_cdf(const Sample& s, double t);

struct StatisticResult {
  StatisticKind kind = StatisticKind::Integral;
  int k = 3;
  std::size_t n = 0;
  double value = 0.0;
  std::optional<double> argmax_t;
};

// I_n = n^-1 sum_i [H_n(X_i) - F_n(X_i)]. Requires n >= k + 1.
// Runs in O(n^2) time and O(n) memory.
StatisticResult integral_statistic(const Sample& s, int k);

// D_n = sup_t |H_n(t) - F_n(t)|, exact over both one-sided limits at every
// jump. Requires n >= k. O(n^2 log n).
StatisticResult sup_statistic(const Sample& s, int k);

// sup_t |H(t) - F_n(t)| for an arbitrary atom list with the given total
// mass; atoms need not be sorted. Returns {value, location}.
struct SupDistance {
  double value = 0.0;
  double location = 1.0;
};
SupDistance sup_step_difference(std::vector<RatioAtom> atoms, Count total,
                                std::span<const double> sorted_sample);

StatisticResult compute_statistic(StatisticKind kind, const Sample& s, int k);

// Literal C(n,k) subset enumeration, guarded at 10^6 subsets.
Count brute_force_count_below(const Sample& s, int k, double t);
double brute_force_H(const Sample& s, int k, double t);

inline constexpr Count kBruteForceLimit = 1'000'000;

}  // namespace paretogof
