#include "paretogof/report.hpp"

#include <iomanip>
#include <sstream>

namespace paretogof {
namespace {

std::string format_level(double level) {
  std::ostringstream s;
  s << level;
  return s.str();
}

std::string format_full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

std::string statistic_label(StatisticKind kind, const std::string& k) {
  return std::string(kind == StatisticKind::Integral ? "I" : "D") + "_n^(" + k + ")";
}

std::string statistic_label(StatisticKind kind, int k) {
  return statistic_label(kind, std::to_string(k));
}

nlohmann::ordered_json to_json(const EfficiencyReport& r) {
  nlohmann::ordered_json j;
  j["statistic"] = kind_name(r.kind);
  j["k"] = r.k;
  j["family"] = r.family;
  j["slope_coef"] = r.slope_coef;
  j["slope_t"] = r.slope_t ? nlohmann::ordered_json(*r.slope_t) : nullptr;
  j["variance"] = r.variance;
  j["exact_slope_coef"] = r.exact_slope_coef;
  j["kl_coef"] = r.kl_coef;
  j["efficiency"] = r.efficiency;
  return j;
}

nlohmann::ordered_json to_json(const BestOverK& b) {
  nlohmann::ordered_json j;
  j["statistic"] = kind_name(b.kind);
  j["family"] = b.family;
  j["k"] = b.k;
  j["efficiency"] = b.efficiency;
  return j;
}

nlohmann::ordered_json to_json(const CriticalValueTable& t) {
  nlohmann::ordered_json j;
  j["statistic"] = kind_name(t.kind);
  j["k"] = t.k;
  j["reps"] = t.reps;
  j["seed"] = t.seed;
  j["quantile_estimator"] = kQuantileEstimator;
  j["levels"] = t.levels;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["critical_values"] = row.quantiles;
    r["standard_errors"] = row.standard_errors;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["notes"] = t.notes;
  return j;
}

nlohmann::ordered_json to_json(const StatisticResult& r) {
  nlohmann::ordered_json j;
  j["statistic"] = kind_name(r.kind);
  j["k"] = r.k;
  j["n"] = r.n;
  j["value"] = r.value;
  j["argmax_t"] = r.argmax_t ? nlohmann::ordered_json(*r.argmax_t) : nullptr;
  return j;
}

std::string efficiency_csv(const std::vector<EfficiencyReport>& reports) {
  std::ostringstream out;
  out << "statistic,k,family,slope_coef,slope_t,variance,exact_slope_coef,"
         "kl_coef,efficiency\n";
  for (const auto& r : reports) {
    out << kind_name(r.kind) << ',' << r.k << ',' << r.family << ','
        << format_full(r.slope_coef) << ','
        << (r.slope_t ? format_full(*r.slope_t) : "") << ','
        << format_full(r.variance) << ',' << format_full(r.exact_slope_coef)
        << ',' << format_full(r.kl_coef) << ',' << format_full(r.efficiency)
        << '\n';
  }
  return out.str();
}

std::string critical_values_csv(const std::vector<CriticalValueTable>& tables) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (i == 0 || t.levels != tables[i - 1].levels) {
      out << "statistic,k,n";
      for (double level : t.levels) out << ',' << format_level(level);
      out << '\n';
    }
    for (const auto& row : t.rows) {
      out << kind_name(t.kind) << ',' << t.k << ',' << row.n;
      for (double q : row.quantiles) out << ',' << format_full(q);
      out << '\n';
    }
  }
  return out.str();
}

std::string critical_values_text(const CriticalValueTable& t) {
  std::ostringstream out;
  out << "Critical values for the statistic " << statistic_label(t.kind, t.k)
      << " (reps = " << t.reps << ", seed = " << t.seed << ")\n";
  out << std::setw(6) << "n" << " |";
  for (double level : t.levels) out << std::setw(8) << format_level(level);
  out << '\n' << std::string(8 + 8 * t.levels.size(), '-') << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& row : t.rows) {
    out << std::setw(6) << row.n << " |";
    for (double q : row.quantiles) out << std::setw(8) << q;
    out << '\n';
  }
  for (const auto& note : t.notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace paretogof
