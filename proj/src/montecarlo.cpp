#include "paretogof/montecarlo.hpp"

#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "paretogof/error.hpp"
#include "paretogof/parallel.hpp"
#include "paretogof/projections.hpp"
#include "paretogof/rng.hpp"

namespace paretogof {
namespace {

constexpr const char* kStoreFormat = "paretogof-null-distribution/1";

std::size_t critical_rank(std::size_t reps, double level) {
  const double target = static_cast<double>(reps) * (1.0 - level);
  auto j = static_cast<std::size_t>(std::ceil(target - 1e-9));
  return std::clamp<std::size_t>(j, 1, reps);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void SimulationPlan::validate(std::size_t min_reps) const {
  if (k < 2) throw DomainError("plan: k must be >= 2");
  const std::size_t min_n =
      kind == StatisticKind::Integral ? static_cast<std::size_t>(k) + 1
                                      : static_cast<std::size_t>(k);
  if (n < min_n) {
    std::ostringstream msg;
    msg << "plan: n = " << n << " is too small for the " << kind_name(kind)
        << " statistic of order " << k << " (need n >= " << min_n << ")";
    throw DomainError(msg.str());
  }
  if (reps < min_reps) {
    std::ostringstream msg;
    msg << "plan: reps = " << reps << " below the minimum " << min_reps;
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0)) {
      throw DomainError("plan: significance levels must lie in (0, 1)");
    }
    if (i > 0 && !(levels[i] < levels[i - 1])) {
      throw DomainError("plan: significance levels must be strictly decreasing");
    }
  }
}

Sample replicate_sample(const SimulationPlan& plan, std::size_t r) {
  return alt_sample(plan.alternative, plan.n, child_seed(plan.seed, r));
}

double replicate_statistic(const SimulationPlan& plan, std::size_t r) {
  return compute_statistic(plan.kind, replicate_sample(plan, r), plan.k).value;
}

std::vector<double> simulate_statistic(const SimulationPlan& plan,
                                       unsigned workers) {
  plan.validate(1);
  std::vector<double> values(plan.reps);
  parallel_for(
      plan.reps, workers,
      [&](std::size_t r) { values[r] = replicate_statistic(plan, r); }, 16);
  return values;
}

double NullDistribution::critical_value(double level) const {
  if (sorted_values.empty()) throw DomainError("empty null distribution");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
  return sorted_values[critical_rank(sorted_values.size(), level) - 1];
}

double NullDistribution::critical_value_se(double level) const {
  if (sorted_values.empty()) throw DomainError("empty null distribution");
  const std::size_t reps = sorted_values.size();
  const std::size_t j = critical_rank(reps, level);
  const auto spread = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(reps) * level * (1.0 - level))));
  const std::size_t lo = j > spread ? j - spread : 1;
  const std::size_t hi = std::min(j + spread, reps);
  return 0.5 * (sorted_values[hi - 1] - sorted_values[lo - 1]);
}

double NullDistribution::p_value(double observed) const {
  const auto below = std::lower_bound(sorted_values.begin(),
                                      sorted_values.end(), observed) -
                     sorted_values.begin();
  const auto at_or_above = sorted_values.size() - static_cast<std::size_t>(below);
  return (static_cast<double>(at_or_above) + 1.0) /
         (static_cast<double>(sorted_values.size()) + 1.0);
}

NullDistribution simulate_null_distribution(const SimulationPlan& plan,
                                            unsigned workers) {
  if (!plan.alternative.is_null()) {
    throw DomainError("simulate_null_distribution: plan samples an alternative");
  }
  NullDistribution d{plan.kind, plan.k, plan.n, plan.reps, plan.seed, {}};
  d.sorted_values = simulate_statistic(plan, workers);
  std::sort(d.sorted_values.begin(), d.sorted_values.end());
  return d;
}

std::uint64_t plan_hash(const SimulationPlan& plan) {
  std::ostringstream key;
  key << kStoreFormat << '|' << kind_name(plan.kind) << '|' << plan.k << '|'
      << plan.n << '|' << plan.reps << '|' << plan.seed;
  return fnv1a(key.str());
}

TableStore::TableStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TableStore::default_dir() {
  if (const char* env = std::getenv("CACHE_DIR"); env && *env) return env;
  return ".paretogof-cache";
}

std::filesystem::path TableStore::path_for(const SimulationPlan& plan) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << plan_hash(plan)
       << ".json";
  return dir_ / name.str();
}

std::optional<NullDistribution> TableStore::load(
    const SimulationPlan& plan) const {
  const auto path = path_for(plan);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("corrupt table " + path.string() + ": " + e.what());
  }
  // A hash collision or stale document is treated as a miss.
  try {
    if (doc.at("format") != kStoreFormat ||
        doc.at("kind") != kind_name(plan.kind) || doc.at("k") != plan.k ||
        doc.at("n") != plan.n || doc.at("reps") != plan.reps ||
        doc.at("seed") != plan.seed) {
      return std::nullopt;
    }
    NullDistribution d{plan.kind, plan.k, plan.n, plan.reps, plan.seed, {}};
    d.sorted_values = doc.at("values").get<std::vector<double>>();
    if (d.sorted_values.size() != plan.reps ||
        !std::is_sorted(d.sorted_values.begin(), d.sorted_values.end())) {
      throw IoError("corrupt table " + path.string());
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("corrupt table " + path.string() + ": " + e.what());
  }
}

void TableStore::save(const NullDistribution& d) const {
  SimulationPlan plan;
  plan.kind = d.kind;
  plan.k = d.k;
  plan.n = d.n;
  plan.reps = d.reps;
  plan.seed = d.seed;
  nlohmann::ordered_json doc;
  doc["format"] = kStoreFormat;
  doc["kind"] = kind_name(d.kind);
  doc["k"] = d.k;
  doc["n"] = d.n;
  doc["reps"] = d.reps;
  doc["seed"] = d.seed;
  doc["quantile_estimator"] = kQuantileEstimator;
  doc["values"] = d.sorted_values;

  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string());
  const auto path = path_for(plan);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << doc.dump() << '\n';
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move table into place at " + path.string());
}

NullDistribution null_distribution(const SimulationPlan& plan,
                                   const TableStore* store, unsigned workers) {
  if (store) {
    if (auto cached = store->load(plan)) return *cached;
  }
  NullDistribution d = simulate_null_distribution(plan, workers);
  if (store) store->save(d);
  return d;
}

CriticalValueTable critical_values(const SimulationPlan& plan,
                                   std::span<const std::size_t> ns,
                                   const TableStore* store, unsigned workers) {
  if (ns.empty()) throw DomainError("critical_values: no sample sizes");
  if (plan.levels.empty()) throw DomainError("critical_values: no levels");
  CriticalValueTable table{plan.kind, plan.k, plan.reps, plan.seed,
                           plan.levels, {}, {}};
  for (std::size_t n : ns) {
    SimulationPlan row_plan = plan;
    row_plan.n = n;
    row_plan.validate();
    const NullDistribution d = null_distribution(row_plan, store, workers);
    CriticalValueRow row{n, {}, {}};
    for (double level : plan.levels) {
      row.quantiles.push_back(d.critical_value(level));
      row.standard_errors.push_back(d.critical_value_se(level));
    }
    table.rows.push_back(std::move(row));
  }

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& prev = table.rows[i - 1];
    const auto& cur = table.rows[i];
    if (cur.n <= prev.n) continue;
    for (std::size_t j = 0; j < table.levels.size(); ++j) {
      if (cur.quantiles[j] > prev.quantiles[j]) {
        std::ostringstream note;
        note << "critical value at level " << table.levels[j]
             << " increases from n = " << prev.n << " to n = " << cur.n;
        table.notes.push_back(note.str());
      }
    }
  }
  return table;
}

CriticalValueTable critical_values(const SimulationPlan& plan,
                                   const TableStore* store, unsigned workers) {
  const std::size_t ns[] = {plan.n};
  return critical_values(plan, ns, store, workers);
}

double p_value(const StatisticResult& result, const NullDistribution& table) {
  if (result.kind != table.kind || result.k != table.k || result.n != table.n) {
    std::ostringstream msg;
    msg << "p_value: table is for (" << kind_name(table.kind) << ", k = "
        << table.k << ", n = " << table.n << ") but the statistic is ("
        << kind_name(result.kind) << ", k = " << result.k
        << ", n = " << result.n << ")";
    throw DomainError(msg.str());
  }
  return table.p_value(result.value);
}

double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

NormalityDiagnostic normality_diagnostic(int k, std::size_t n,
                                         std::size_t reps, std::uint64_t seed,
                                         unsigned workers) {
  SimulationPlan plan;
  plan.kind = StatisticKind::Integral;
  plan.k = k;
  plan.n = n;
  plan.reps = reps;
  plan.seed = seed;
  plan.validate(2);
  std::vector<double> values = simulate_statistic(plan, workers);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double& v : values) v *= root_n;

  NormalityDiagnostic diag;
  diag.reps = reps;
  double sum = 0.0;
  for (double v : values) sum += v;
  diag.mean = sum / static_cast<double>(reps);
  double ss = 0.0;
  for (double v : values) ss += (v - diag.mean) * (v - diag.mean);
  diag.variance = ss / static_cast<double>(reps - 1);
  diag.reference_variance =
      (k + 1.0) * (k + 1.0) * delta_sq_integral(k).value;
  std::sort(values.begin(), values.end());
  const double ref = diag.reference_variance;
  diag.ks_to_normal =
      ks_distance(values, [ref](double x) { return normal_cdf(x, ref); });
  return diag;
}

PowerEstimate power_study(const SimulationPlan& plan, double alpha,
                          const NullDistribution& table, unsigned workers) {
  if (plan.kind != table.kind || plan.k != table.k || plan.n != table.n) {
    throw DomainError("power_study: critical table does not match the plan");
  }
  plan.validate(1);
  const double crit = table.critical_value(alpha);
  const auto values = simulate_statistic(plan, workers);
  std::size_t rejections = 0;
  for (double v : values) rejections += v > crit ? 1 : 0;
  const double reps = static_cast<double>(values.size());
  const double rate = static_cast<double>(rejections) / reps;
  return {rate, std::sqrt(rate * (1.0 - rate) / reps), crit};
}

}  // namespace paretogof
