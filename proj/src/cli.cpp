#include "paretogof/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paretogof/asymptotics.hpp"
#include "paretogof/error.hpp"
#include "paretogof/parallel.hpp"
#include "paretogof/projections.hpp"
#include "paretogof/report.hpp"
#include "paretogof/sample.hpp"

namespace paretogof::cli {
namespace {

using json = nlohmann::ordered_json;

std::vector<StatisticKind> selected_kinds(const std::string& statistic) {
  if (statistic == "both") {
    return {StatisticKind::Integral, StatisticKind::Supremum};
  }
  return {parse_kind(statistic)};
}

std::vector<Family> selected_families(const std::optional<std::string>& f) {
  if (f) {
    const Family family = parse_family(*f);
    if (family == Family::Pareto) {
      throw DomainError("efficiency is undefined for the Pareto family itself");
    }
    return {family};
  }
  return {Family::LP1, Family::LP2, Family::LogWeibull};
}

void require_single_k(const CliConfig& c) {
  if (c.k_max != c.k) {
    throw DomainError("a range of k is only accepted by 'efficiency'");
  }
  if (c.k < 2) throw DomainError("k must be >= 2");
}

Sample load_sample(const CliConfig& c, std::istream& in) {
  if (!c.input || c.input->empty() || *c.input == "-") return read_sample(in);
  std::ifstream file(*c.input);
  // An unreadable --input is a usage problem, reported like any other.
  if (!file) throw DomainError("cannot read input file '" + *c.input + "'");
  return read_sample(file);
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Accepts "3" or "2..6".
std::pair<int, int> parse_k_range(const std::string& text) {
  auto parse_int = [&](std::string_view part) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw DomainError("cannot parse k from '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int k = parse_int(text);
    return {k, k};
  }
  const int lo = parse_int(std::string_view(text).substr(0, dots));
  const int hi = parse_int(std::string_view(text).substr(dots + 2));
  if (hi < lo) throw DomainError("empty k range '" + text + "'");
  return {lo, hi};
}

}  // namespace

int cmd_test(const CliConfig& c, std::istream& in, std::ostream& out,
             std::ostream& err) {
  require_single_k(c);
  const Sample sample = load_sample(c, in);
  const std::size_t n = sample.size();
  if (n < static_cast<std::size_t>(c.k)) {
    std::ostringstream msg;
    msg << "need at least " << c.k << " valid observations for k = " << c.k
        << ", got " << n;
    throw DomainError(msg.str());
  }
  if (sample.has_ties()) {
    err << "warning: the sample contains tied observations\n";
  }

  const TableStore store(c.cache_dir);
  const auto kinds = selected_kinds(c.statistic);
  struct Row {
    StatisticResult result;
    double p = 0.0;
  };
  std::vector<Row> rows;
  for (const StatisticKind kind : kinds) {
    if (kind == StatisticKind::Integral && n < static_cast<std::size_t>(c.k) + 1) {
      if (kinds.size() == 1) {
        throw DomainError("the integral statistic needs n >= k + 1 observations");
      }
      err << "note: integral statistic skipped (needs n >= k + 1)\n";
      continue;
    }
    SimulationPlan plan;
    plan.kind = kind;
    plan.k = c.k;
    plan.n = n;
    plan.reps = c.reps;
    plan.seed = c.seed;
    plan.levels = c.levels;
    plan.validate();
    const double work = static_cast<double>(c.reps) * 0.5 *
                        static_cast<double>(n) * static_cast<double>(n - 1);
    if (work > kSimulationBudget) {
      std::ostringstream msg;
      msg << "a null table for n = " << n << " with " << c.reps
          << " replicates exceeds the simulation budget; lower --reps";
      throw DomainError(msg.str());
    }
    const StatisticResult result = compute_statistic(kind, sample, c.k);
    const TableStore* cache = c.use_cache ? &store : nullptr;
    if (!cache || !store.load(plan)) {
      err << "note: simulating the null distribution of "
          << statistic_label(kind, c.k) << " for n = " << n << " (" << c.reps
          << " replicates)\n";
    }
    const NullDistribution table = null_distribution(plan, cache, c.workers);
    rows.push_back({result, p_value(result, table)});
  }

  switch (c.format) {
    case OutputFormat::Json: {
      json doc;
      doc["n"] = n;
      doc["k"] = c.k;
      doc["ties"] = sample.has_ties();
      doc["reps"] = c.reps;
      doc["seed"] = c.seed;
      auto results = json::array();
      for (const auto& row : rows) {
        json r = to_json(row.result);
        r["p_value"] = row.p;
        results.push_back(std::move(r));
      }
      doc["results"] = std::move(results);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      out << "statistic,k,n,value,argmax_t,p_value\n";
      out << std::setprecision(17);
      for (const auto& row : rows) {
        out << kind_name(row.result.kind) << ',' << row.result.k << ','
            << row.result.n << ',' << row.result.value << ',';
        if (row.result.argmax_t) out << *row.result.argmax_t;
        out << ',' << row.p << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      out << "n = " << n << ", k = " << c.k << '\n';
      for (const auto& row : rows) {
        out << statistic_label(row.result.kind, c.k) << " = "
            << fixed(row.result.value, 6);
        if (row.result.argmax_t) {
          out << "  (attained at t = " << fixed(*row.result.argmax_t, 4) << ")";
        }
        out << "  p-value = " << fixed(row.p, 4) << '\n';
      }
      out << "p-values from " << c.reps << " null replicates, seed " << c.seed
          << '\n';
      break;
    }
  }
  return kSuccess;
}

int cmd_critical_values(const CliConfig& c, std::ostream& out,
                        std::ostream& err) {
  require_single_k(c);
  const TableStore store(c.cache_dir);
  std::vector<CriticalValueTable> tables;
  for (const StatisticKind kind : selected_kinds(c.statistic)) {
    SimulationPlan plan;
    plan.kind = kind;
    plan.k = c.k;
    plan.reps = c.reps;
    plan.seed = c.seed;
    plan.levels = c.levels;
    for (std::size_t n : c.sample_sizes) {
      plan.n = n;
      plan.validate();
      if (!c.use_cache || !store.load(plan)) {
        err << "note: simulating " << statistic_label(kind, c.k) << " for n = "
            << n << '\n';
      }
    }
    tables.push_back(critical_values(plan, c.sample_sizes,
                                     c.use_cache ? &store : nullptr, c.workers));
  }

  switch (c.format) {
    case OutputFormat::Json: {
      json doc;
      auto arr = json::array();
      for (const auto& t : tables) arr.push_back(to_json(t));
      doc["tables"] = std::move(arr);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << critical_values_csv(tables);
      break;
    case OutputFormat::Text:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i > 0) out << '\n';
        out << critical_values_text(tables[i]);
      }
      break;
  }
  return kSuccess;
}

int cmd_efficiency(const CliConfig& c, std::ostream& out, std::ostream&) {
  if (c.k < 2 || c.k_max > 8) {
    throw DomainError("efficiency reports cover k in [2, 8]");
  }
  const auto kinds = selected_kinds(c.statistic);
  const auto families = selected_families(c.family);

  struct Task {
    StatisticKind kind;
    int k;
    Family family;
  };
  std::vector<Task> tasks;
  for (const auto kind : kinds) {
    for (const auto family : families) {
      for (int k = c.k; k <= c.k_max; ++k) tasks.push_back({kind, k, family});
    }
  }
  std::vector<EfficiencyReport> reports(tasks.size());
  parallel_for(tasks.size(), c.workers, [&](std::size_t i) {
    reports[i] = local_efficiency(tasks[i].kind, tasks[i].k, tasks[i].family);
  });

  std::vector<BestOverK> best;
  if (c.k_max > c.k) {
    for (const auto kind : kinds) {
      for (const auto family : families) {
        best.push_back(
            best_over_k(reports, kind, std::string(family_name(family))));
      }
    }
  }

  switch (c.format) {
    case OutputFormat::Json: {
      json doc;
      auto arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      doc["reports"] = std::move(arr);
      auto summary = json::array();
      for (const auto& b : best) summary.push_back(to_json(b));
      doc["best_over_k"] = std::move(summary);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << efficiency_csv(reports);
      break;
    case OutputFormat::Text: {
      for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
        const auto kind = kinds[ki];
        if (ki > 0) out << '\n';
        out << "Local Bahadur efficiency of " << statistic_label(kind, "k")
            << '\n';
        out << std::left << std::setw(14) << "alternative" << std::right;
        for (int k = c.k; k <= c.k_max; ++k) {
          out << std::setw(8) << ("k=" + std::to_string(k));
        }
        if (!best.empty()) out << "   max over k";
        out << '\n';
        for (const auto family : families) {
          const std::string name(family_name(family));
          out << std::left << std::setw(14) << name << std::right;
          for (const auto& r : reports) {
            if (r.kind == kind && r.family == name) {
              out << std::setw(8) << fixed(r.efficiency, 3);
            }
          }
          for (const auto& b : best) {
            if (b.kind == kind && b.family == name) {
              out << "   " << fixed(b.efficiency, 3) << " (k=" << b.k << ")";
            }
          }
          out << '\n';
        }
      }
      out << "\nstatistic  k  family        slope     t_max    variance  "
             "exact_slope    kl_coef  efficiency\n";
      for (const auto& r : reports) {
        out << std::left << std::setw(9) << kind_name(r.kind) << std::right
            << std::setw(3) << r.k << "  " << std::left << std::setw(12)
            << r.family << std::right << std::setw(8) << fixed(r.slope_coef, 5)
            << std::setw(10) << (r.slope_t ? fixed(*r.slope_t, 4) : "-")
            << std::setw(12) << fixed(r.variance, 7) << std::setw(13)
            << fixed(r.exact_slope_coef, 5) << std::setw(11)
            << fixed(r.kl_coef, 5) << std::setw(12) << fixed(r.efficiency, 4)
            << '\n';
      }
      break;
    }
  }
  return kSuccess;
}

int cmd_lao(const CliConfig& c, std::ostream& out, std::ostream&) {
  require_single_k(c);
  if (c.grid_points < 2 || !(c.grid_max > 1.0)) {
    throw DomainError("LAO grid needs at least 2 points and grid-max > 1");
  }
  struct Entry {
    LaoFamily family;
    double efficiency;
    std::vector<std::pair<double, double>> grid;
  };
  std::vector<Entry> entries;
  for (const auto kind : selected_kinds(c.statistic)) {
    LaoSpec spec{kind, c.k, c.lao_c, c.lao_c_prime, std::nullopt};
    if (kind == StatisticKind::Supremum) spec.t0 = c.t0;
    LaoFamily family(spec);
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i < c.grid_points; ++i) {
      const double x =
          i + 1 == c.grid_points
              ? c.grid_max
              : std::exp(std::log(c.grid_max) * i / (c.grid_points - 1));
      grid.emplace_back(x, family.density(c.theta, x));
    }
    const double eff =
        local_efficiency(kind, c.k, family.score()).efficiency;
    entries.push_back({std::move(family), eff, std::move(grid)});
  }

  switch (c.format) {
    case OutputFormat::Json: {
      json doc;
      auto arr = json::array();
      for (const auto& e : entries) {
        const auto& spec = e.family.spec();
        json j;
        j["statistic"] = kind_name(spec.kind);
        j["k"] = spec.k;
        j["c"] = spec.c;
        j["c_prime"] = spec.c_prime;
        j["t0"] = spec.kind == StatisticKind::Supremum ? json(e.family.t0())
                                                       : json(nullptr);
        j["theta"] = c.theta;
        j["max_theta"] = std::isfinite(e.family.max_theta())
                             ? json(e.family.max_theta())
                             : json(nullptr);
        j["efficiency_check"] = e.efficiency;
        auto grid = json::array();
        for (const auto& [x, g] : e.grid) grid.push_back({{"x", x}, {"density", g}});
        j["grid"] = std::move(grid);
        arr.push_back(std::move(j));
      }
      doc["alternatives"] = std::move(arr);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "statistic,k,x,density\n" << std::setprecision(17);
      for (const auto& e : entries) {
        for (const auto& [x, g] : e.grid) {
          out << kind_name(e.family.spec().kind) << ',' << e.family.spec().k
              << ',' << x << ',' << g << '\n';
        }
      }
      break;
    case OutputFormat::Text:
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const auto& spec = e.family.spec();
        if (i > 0) out << '\n';
        out << "LAO alternative for " << statistic_label(spec.kind, spec.k)
            << ": C = " << spec.c << ", C' = " << spec.c_prime;
        if (spec.kind == StatisticKind::Supremum) {
          out << ", t0 = " << fixed(e.family.t0(), 4);
        }
        out << "\ntheta = " << c.theta << " (admissible up to ";
        if (std::isfinite(e.family.max_theta())) {
          out << fixed(e.family.max_theta(), 4);
        } else {
          out << "inf";
        }
        out << ")\nefficiency check = " << fixed(e.efficiency, 8) << '\n';
        out << std::setw(12) << "x" << std::setw(16) << "g(x, theta)" << '\n';
        for (const auto& [x, g] : e.grid) {
          out << std::setw(12) << fixed(x, 4) << std::setw(16) << fixed(g, 10)
              << '\n';
        }
      }
      break;
  }
  return kSuccess;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CliConfig c;
  CLI::App app{"Goodness-of-fit tests for the Pareto law from the "
               "largest-to-second-largest ratio characterization",
               "paretogof"};
  app.require_subcommand(1);

  std::string k_text = "3";
  std::string format = "text";
  std::string cache_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "Order k (efficiency also takes a..b)");
    sub->add_option("--statistic", c.statistic, "integral | sup | both")
        ->check(CLI::IsMember({"integral", "sup", "both"}));
    sub->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  };
  auto add_simulation = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--reps", c.reps, "Null replicates per table");
    sub->add_option("--levels", c.levels, "Significance levels")->delimiter(',');
    sub->add_option("--cache-dir", cache_dir,
                    "Table cache (default $CACHE_DIR or ./.paretogof-cache)");
    sub->add_flag("!--no-cache", c.use_cache, "Do not read or write the cache");
  };

  auto* test = app.add_subcommand("test", "Compute I_n and D_n with p-values");
  add_common(test);
  add_simulation(test);
  test->add_option("--input", c.input, "Observations, one per line (default stdin)");

  auto* crit = app.add_subcommand("critical-values", "Simulate critical-value tables");
  add_common(crit);
  add_simulation(crit);
  crit->add_option("--n", c.sample_sizes, "Sample sizes")->delimiter(',');

  auto* eff = app.add_subcommand("efficiency", "Local Bahadur efficiencies");
  add_common(eff);
  eff->add_option("--family", c.family, "lp1 | lp2 | log-weibull");

  auto* lao = app.add_subcommand("lao", "Locally optimal alternative densities");
  add_common(lao);
  lao->add_option("--theta", c.theta, "Perturbation size");
  lao->add_option("--lao-c", c.lao_c, "Scale C of the projection term");
  lao->add_option("--lao-c-prime", c.lao_c_prime, "Coefficient C' of (ln x - 1)");
  lao->add_option("--t0", c.t0, "Level t0 (default: argmax of delta^2)");
  lao->add_option("--grid-points", c.grid_points, "Grid size");
  lao->add_option("--grid-max", c.grid_max, "Largest x on the grid");
  lao->add_option("--family", c.family, "Ignored; accepted for symmetry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kValidationError;
  }

  try {
    const auto [k_lo, k_hi] = parse_k_range(k_text);
    c.k = k_lo;
    c.k_max = k_hi;
    c.format = format == "json"  ? OutputFormat::Json
               : format == "csv" ? OutputFormat::Csv
                                 : OutputFormat::Text;
    if (!cache_dir.empty()) c.cache_dir = cache_dir;

    if (test->parsed()) return cmd_test(c, in, out, err);
    if (crit->parsed()) return cmd_critical_values(c, out, err);
    if (eff->parsed()) return cmd_efficiency(c, out, err);
    return cmd_lao(c, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace paretogof::cli
