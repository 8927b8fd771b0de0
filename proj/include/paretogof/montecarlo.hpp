#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paretogof/distributions.hpp"
#include "paretogof/ustat.hpp"

namespace paretogof {

inline constexpr std::size_t kDefaultReps = 10'000;
inline constexpr std::uint64_t kDefaultSeed = 20140917;

struct SimulationPlan {
  StatisticKind kind = StatisticKind::Supremum;
  int k = 3;
  std::size_t n = 20;
  std::size_t reps = kDefaultReps;
  std::uint64_t seed = kDefaultSeed;
  AlternativeSpec alternative = AlternativeSpec::pareto(1.0);
  std::vector<double> levels{0.1, 0.05, 0.01};

  // Checks n against k, levels in (0, 1) and strictly decreasing, and
  // reps >= min_reps. Throws DomainError.
  void validate(std::size_t min_reps = 100) const;
};

// Sample for replicate r; a pure function of (plan.seed, r).
Sample replicate_sample(const SimulationPlan& plan, std::size_t r);
double replicate_statistic(const SimulationPlan& plan, std::size_t r);

// Statistic values for replicates 0..reps-1 in replicate order, computed on
// `workers` threads (0 = hardware concurrency). Bit-identical for any
// worker count.
std::vector<double> simulate_statistic(const SimulationPlan& plan,
                                       unsigned workers = 0);

// Empirical null law of one statistic at one sample size.
struct NullDistribution {
  StatisticKind kind = StatisticKind::Supremum;
  int k = 3;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> sorted_values;

  // Order statistic of rank ceil(reps * (1 - level)).
  double critical_value(double level) const;
  // Half the spread between the order statistics of rank
  // j -/+ sqrt(reps * level * (1 - level)) around the critical rank j.
  double critical_value_se(double level) const;
  // (r + 1) / (reps + 1), r = #{simulated values >= observed}.
  double p_value(double observed) const;
};

inline constexpr const char* kQuantileEstimator =
    "order statistic of rank ceil(reps*(1-level)); p = (r+1)/(reps+1)";

// Requires a null plan (Pareto or theta = 0). reps >= 1.
NullDistribution simulate_null_distribution(const SimulationPlan& plan,
                                            unsigned workers = 0);

// Persists null distributions as one JSON document per plan hash.
class TableStore {
 public:
  explicit TableStore(std::filesystem::path dir);

  // $CACHE_DIR when set, else ./.paretogof-cache.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const SimulationPlan& plan) const;
  std::optional<NullDistribution> load(const SimulationPlan& plan) const;
  void save(const NullDistribution& dist) const;

 private:
  std::filesystem::path dir_;
};

// Stable 64-bit key of the fields that determine a null distribution.
std::uint64_t plan_hash(const SimulationPlan& plan);

// Cached when `store` is given, otherwise simulated.
NullDistribution null_distribution(const SimulationPlan& plan,
                                   const TableStore* store,
                                   unsigned workers = 0);

struct CriticalValueRow {
  std::size_t n = 0;
  std::vector<double> quantiles;
  std::vector<double> standard_errors;
};

struct CriticalValueTable {
  StatisticKind kind = StatisticKind::Supremum;
  int k = 3;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> levels;
  std::vector<CriticalValueRow> rows;
  // Soft diagnostics (e.g. a quantile increasing with n); never fatal.
  std::vector<std::string> notes;
};

// One row per sample size in `ns`; plan.n is ignored.
CriticalValueTable critical_values(const SimulationPlan& plan,
                                   std::span<const std::size_t> ns,
                                   const TableStore* store = nullptr,
                                   unsigned workers = 0);
CriticalValueTable critical_values(const SimulationPlan& plan,
                                   const TableStore* store = nullptr,
                                   unsigned workers = 0);

// Throws DomainError when kind, k or n differ.
double p_value(const StatisticResult& result, const NullDistribution& table);

struct NormalityDiagnostic {
  double mean = 0.0;
  double variance = 0.0;
  double reference_variance = 0.0;  // (k+1)^2 Delta_k^2
  double ks_to_normal = 0.0;
  std::size_t reps = 0;
};

// sqrt(n) I_n^(k) under the null against N(0, (k+1)^2 Delta_k^2).
NormalityDiagnostic normality_diagnostic(int k, std::size_t n,
                                         std::size_t reps, std::uint64_t seed,
                                         unsigned workers = 0);

struct PowerEstimate {
  double rejection_rate = 0.0;
  double standard_error = 0.0;
  double critical_value = 0.0;
};

// Fraction of replicates from plan.alternative whose statistic exceeds the
// table's critical value at `alpha`.
PowerEstimate power_study(const SimulationPlan& plan, double alpha,
                          const NullDistribution& table, unsigned workers = 0);

double normal_cdf(double x, double variance);

// Kolmogorov distance between the empirical law of `sorted` and a CDF.
template <class Cdf>
double ks_distance(std::span<const double> sorted, Cdf cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace paretogof
