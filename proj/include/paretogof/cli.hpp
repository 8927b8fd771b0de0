#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paretogof/montecarlo.hpp"

namespace paretogof::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 2,
  kIoError = 3,
  kNumericalError = 4,
};

enum class OutputFormat { Text, Json, Csv };

// reps * n(n-1)/2 ratio atoms is the cost of an on-demand null table.
inline constexpr double kSimulationBudget = 5e9;

struct CliConfig {
  std::string subcommand;
  std::optional<std::string> input;  // stdin when empty or "-"
  int k = 3;
  int k_max = 3;  // efficiency accepts a range "a..b"
  std::string statistic = "both";
  std::uint64_t seed = kDefaultSeed;
  std::size_t reps = kDefaultReps;
  std::vector<double> levels{0.1, 0.05, 0.01};
  std::vector<std::size_t> sample_sizes{10, 20, 30, 40, 50, 100};
  OutputFormat format = OutputFormat::Text;
  std::filesystem::path cache_dir = TableStore::default_dir();
  bool use_cache = true;
  std::optional<std::string> family;
  double theta = 0.05;
  double lao_c = 1.0;
  double lao_c_prime = 0.0;
  std::optional<double> t0;
  int grid_points = 41;
  double grid_max = 100.0;
  unsigned workers = 0;
};

int cmd_test(const CliConfig& config, std::istream& in, std::ostream& out,
             std::ostream& err);
int cmd_critical_values(const CliConfig& config, std::ostream& out,
                        std::ostream& err);
int cmd_efficiency(const CliConfig& config, std::ostream& out,
                   std::ostream& err);
int cmd_lao(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, dispatches, and maps exceptions onto exit codes.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace paretogof::cli
