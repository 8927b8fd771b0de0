#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "paretogof/asymptotics.hpp"
#include "paretogof/montecarlo.hpp"

namespace paretogof {

nlohmann::ordered_json to_json(const EfficiencyReport& r);
nlohmann::ordered_json to_json(const BestOverK& b);
nlohmann::ordered_json to_json(const CriticalValueTable& t);
nlohmann::ordered_json to_json(const StatisticResult& r);

// Header plus one row per report, keyed by (statistic, k, family).
std::string efficiency_csv(const std::vector<EfficiencyReport>& reports);
// Rows n, one column per level; statistic and k lead each row.
std::string critical_values_csv(const std::vector<CriticalValueTable>& tables);
std::string critical_values_text(const CriticalValueTable& t);

// "I_n^(3)" / "D_n^(4)".
std::string statistic_label(StatisticKind kind, int k);
std::string statistic_label(StatisticKind kind, const std::string& k);

}  // namespace paretogof
