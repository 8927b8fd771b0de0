#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <vector>

#include "paretogof/error.hpp"
#include "paretogof/montecarlo.hpp"
#include "paretogof/rng.hpp"

using namespace paretogof;
using doctest::Approx;

namespace {

std::filesystem::path scratch_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "paretogof-tests" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

SimulationPlan plan_of(StatisticKind kind, int k, std::size_t n, std::size_t reps,
                       std::uint64_t seed) {
  SimulationPlan p;
  p.kind = kind;
  p.k = k;
  p.n = n;
  p.reps = reps;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("rng streams") {
  Xoshiro256 a(1), b(1), c(2);
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CHECK(child_seed(5, 0) != child_seed(5, 1));
  CHECK(child_seed(5, 0) != child_seed(6, 0));
  Xoshiro256 u(42);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("plan validation") {
  auto p = plan_of(StatisticKind::Integral, 3, 3, 1000, 1);
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.n = 4;
  CHECK_NOTHROW(p.validate());
  p.reps = 50;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_NOTHROW(p.validate(1));
  p.reps = 1000;
  p.levels = {0.05, 0.1};
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.levels = {1.0};
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("single replicate equals a direct computation") {
  const auto plan = plan_of(StatisticKind::Supremum, 3, 20, 1, 777);
  const auto dist = simulate_null_distribution(plan, 1);
  REQUIRE(dist.sorted_values.size() == 1);
  const Sample s = pareto_sample(20, ParetoParams(1.0), child_seed(777, 0));
  CHECK(dist.sorted_values[0] == sup_statistic(s, 3).value);
  CHECK(replicate_statistic(plan, 0) == dist.sorted_values[0]);
}

TEST_CASE("results do not depend on the worker count") {
  const auto plan = plan_of(StatisticKind::Integral, 3, 25, 300, 99);
  const auto one = simulate_statistic(plan, 1);
  const auto three = simulate_statistic(plan, 3);
  const auto eight = simulate_statistic(plan, 8);
  CHECK(one == three);
  CHECK(one == eight);
  const auto t1 = critical_values(plan, nullptr, 1);
  const auto t4 = critical_values(plan, nullptr, 4);
  CHECK(t1.rows[0].quantiles == t4.rows[0].quantiles);
}

TEST_CASE("quantiles and p-values") {
  NullDistribution d;
  d.kind = StatisticKind::Supremum;
  d.k = 3;
  d.n = 10;
  d.reps = 100;
  for (int i = 1; i <= 100; ++i) d.sorted_values.push_back(i / 100.0);
  CHECK(d.critical_value(0.05) == 0.95);
  CHECK(d.critical_value(0.5) == 0.5);
  CHECK(d.critical_value_se(0.05) > 0.0);
  CHECK(d.p_value(-1.0) == 1.0);
  CHECK(d.p_value(2.0) == Approx(1.0 / 101.0));
  CHECK(d.p_value(0.95) == Approx(7.0 / 101.0));

  StatisticResult r{StatisticKind::Supremum, 3, 10, 0.95, 2.0};
  CHECK(p_value(r, d) == d.p_value(0.95));
  r.n = 11;
  CHECK_THROWS_AS(p_value(r, d), DomainError);
  r.n = 10;
  r.kind = StatisticKind::Integral;
  CHECK_THROWS_AS(p_value(r, d), DomainError);
}

TEST_CASE("p-value at the simulated quantile") {
  const auto plan = plan_of(StatisticKind::Supremum, 3, 20, 2000, 5);
  const auto d = simulate_null_distribution(plan, 0);
  const double q = d.critical_value(0.05);
  const double p = d.p_value(q);
  CHECK(p >= 0.05);
  // Ties in the discrete null law can push the p-value up.
  CHECK(p < 0.08);
}

TEST_CASE("critical value tables") {
  auto plan = plan_of(StatisticKind::Supremum, 3, 0, 500, 11);
  const std::vector<std::size_t> ns{10, 20, 40};
  const auto t = critical_values(plan, ns, nullptr, 0);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) {
    REQUIRE(row.quantiles.size() == 3);
    CHECK(row.quantiles[0] <= row.quantiles[1]);
    CHECK(row.quantiles[1] <= row.quantiles[2]);
    for (double se : row.standard_errors) CHECK(se >= 0.0);
  }
  plan.levels = {0.2};
  const auto single = critical_values(plan, ns, nullptr, 0);
  CHECK(single.rows[0].quantiles.size() == 1);
  // Median sanity value at n = 10.
  plan.levels = {0.5};
  plan.reps = 10000;
  plan.n = 10;
  const auto med = critical_values(plan, nullptr, 0);
  CHECK(med.rows[0].quantiles[0] > 0.1);
  CHECK(med.rows[0].quantiles[0] < 0.5);
}

TEST_CASE("table store") {
  const auto dir = scratch_dir("store");
  const TableStore store(dir);
  auto plan = plan_of(StatisticKind::Integral, 4, 15, 200, 3);
  CHECK_FALSE(store.load(plan).has_value());
  const auto fresh = null_distribution(plan, &store, 0);
  REQUIRE(std::filesystem::exists(store.path_for(plan)));
  const auto cached = store.load(plan);
  REQUIRE(cached.has_value());
  CHECK(cached->sorted_values == fresh.sorted_values);
  CHECK(null_distribution(plan, &store, 0).sorted_values == fresh.sorted_values);

  auto other = plan;
  other.seed = 4;
  CHECK(store.path_for(other) != store.path_for(plan));
  CHECK(plan_hash(other) != plan_hash(plan));
  auto levels_only = plan;
  levels_only.levels = {0.2};
  CHECK(plan_hash(levels_only) == plan_hash(plan));

  {
    std::ofstream(store.path_for(plan)) << "{ not json";
  }
  CHECK_THROWS_AS(store.load(plan), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("default cache directory honours CACHE_DIR") {
  const char* old = std::getenv("CACHE_DIR");
  const std::string saved = old ? old : "";
  setenv("CACHE_DIR", "/tmp/somewhere", 1);
  CHECK(TableStore::default_dir() == "/tmp/somewhere");
  unsetenv("CACHE_DIR");
  CHECK(TableStore::default_dir() == ".paretogof-cache");
  if (old) setenv("CACHE_DIR", saved.c_str(), 1);
}

TEST_CASE("null calibration of the power study") {
  const auto null_plan = plan_of(StatisticKind::Integral, 3, 30, 2000, 100);
  const auto table = simulate_null_distribution(null_plan, 0);
  // Same replicate set: rejection at the table's own critical value.
  const auto same = power_study(null_plan, 0.05, table, 0);
  CHECK(same.rejection_rate <= 0.05);
  CHECK(same.rejection_rate > 0.05 - 1.0 / 2000.0 * 20);
  auto fresh = null_plan;
  fresh.seed = 101;
  fresh.alternative = AlternativeSpec::lp1(0.0);
  const auto est = power_study(fresh, 0.05, table, 0);
  CHECK(std::abs(est.rejection_rate - 0.05) < 2.0 * est.standard_error + 0.01);
  auto mismatch = fresh;
  mismatch.n = 31;
  CHECK_THROWS_AS(power_study(mismatch, 0.05, table, 0), DomainError);
}

TEST_CASE("power against LP1") {
  std::vector<double> integral_power, sup_power;
  for (auto kind : {StatisticKind::Integral, StatisticKind::Supremum}) {
    const auto table = simulate_null_distribution(plan_of(kind, 3, 100, 1000, 1), 0);
    for (double theta : {0.0, 0.25, 0.5}) {
      auto plan = plan_of(kind, 3, 100, 1000, 2);
      plan.alternative = AlternativeSpec::lp1(theta);
      const auto est = power_study(plan, 0.05, table, 0);
      (kind == StatisticKind::Integral ? integral_power : sup_power).push_back(est.rejection_rate);
      MESSAGE(kind_name(kind), " theta=", theta, " power=", est.rejection_rate);
    }
  }
  CHECK(integral_power[2] > sup_power[2]);
  for (const auto* p : {&integral_power, &sup_power}) {
    CHECK((*p)[1] >= (*p)[0] - 0.02);
    CHECK((*p)[2] >= (*p)[1] - 0.02);
  }
}

TEST_CASE("centering and variance of I_n") {
  // E I_n = (k + 3) / (2 (k + 1) n) exactly: subsets that contain X_i
  // favour ratios below it. The kernel itself is centered.
  const auto d = normality_diagnostic(3, 200, 1000, 8, 0);
  const double se = std::sqrt(d.variance / 1000.0);
  const double offset = std::sqrt(200.0) * 6.0 / (8.0 * 200.0);
  CHECK(std::abs(d.mean - offset) < 3.0 * se);
  CHECK(d.reference_variance == Approx(11.0 / 120.0).epsilon(1e-14));
  CHECK(std::abs(d.variance / d.reference_variance - 1.0) < 0.15);
}

TEST_CASE("normal cdf and KS distance") {
  CHECK(normal_cdf(0.0, 2.0) == Approx(0.5));
  CHECK(normal_cdf(1.0, 1.0) == Approx(0.841344746).epsilon(1e-9));
  const std::vector<double> pts{0.25, 0.5, 0.75};
  CHECK(ks_distance(std::span<const double>(pts), [](double x) { return x; }) ==
        Approx(0.25));
}
