// Copyright 2026 The dynprice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
// Exit codes: 0 success, 1 a property check failed, 2 usage or configuration
// error, 3 runtime error. Data goes to stdout, diagnostics to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynprice/checks.h"
#include "dynprice/equilibrium.h"
#include "dynprice/errors.h"
#include "dynprice/regret.h"
#include "dynprice/scenario.h"
#include "dynprice/simulation.h"
#include "dynprice/trace.h"

namespace fs = std::filesystem;

namespace dynprice {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScenarioConfig LoadConfig(const std::string& path,
                          const std::vector<std::string>& overrides) {
  nlohmann::json doc;
  try {
    doc = ParseJsonText(ReadFile(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  for (const auto& o : overrides) ApplyOverride(doc, o);
  try {
    return ScenarioFromJson(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
}

fs::path OutputDir(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("DYNPRICE_OUT_DIR");
    dir = env != nullptr && *env != '\0' ? env : ".";
  }
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "'");
  return p;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string ManifestFor(const std::string& trace_path,
                        const std::string& flag) {
  if (!flag.empty()) return flag;
  return (fs::path(trace_path).parent_path() / "manifest.json").string();
}

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream s(item);
    std::string part;
    while (std::getline(s, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

struct RunArgs {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
};

int CmdRun(const RunArgs& args) {
  const ScenarioConfig config = LoadConfig(args.config, args.overrides);
  const Trace trace = RunScenario(config);
  const fs::path dir = OutputDir(args.out);
  std::ostringstream csv;
  WriteTraceCsv(trace, csv);
  WriteText(dir / config.output.trace, csv.str());
  WriteText(dir / config.output.manifest,
            MakeManifest(trace, config.output.trace).dump(2) + "\n");
  std::cout << (dir / config.output.trace).string() << "\n"
            << (dir / config.output.manifest).string() << "\n";
  return kExitOk;
}

struct SweepArgs {
  RunArgs run;
  std::vector<std::string> horizons;
  int seller = 0;
};

int CmdSweep(const SweepArgs& args) {
  std::vector<int64_t> horizons;
  std::set<int64_t> seen;
  for (const auto& h : SplitList(args.horizons)) {
    int64_t T = 0;
    try {
      size_t used = 0;
      T = std::stoll(h, &used);
      if (used != h.size()) throw std::invalid_argument(h);
    } catch (const std::exception&) {
      throw ConfigError("horizons: '" + h + "' is not an integer");
    }
    if (T < 1) throw ConfigError("horizons: must be >= 1");
    if (!seen.insert(T).second) {
      throw ConfigError("horizons: duplicate horizon " + h);
    }
    horizons.push_back(T);
  }
  if (horizons.empty()) throw ConfigError("horizons: none given");
  const ScenarioConfig base = LoadConfig(args.run.config, args.run.overrides);
  if (args.seller < 0 || args.seller >= base.num_sellers()) {
    throw ConfigError("seller index out of range");
  }
  const double discount = base.smoothing ? base.smoothing->discount() : 0.0;

  struct Row {
    double regret;
    double approx;
  };
  std::vector<std::future<Row>> jobs;
  for (int64_t T : horizons) {
    jobs.push_back(std::async(std::launch::async, [&base, T, &args,
                                                   discount]() {
      ScenarioConfig c = base;
      c.horizon = T;
      const Trace trace = RunScenario(c);
      const BestPrice best = BestFixedPrice(trace, args.seller);
      return Row{StaticRegret(trace, args.seller, best.log_price).back(),
                 ApproxRegret(trace, args.seller, best.log_price, discount)
                     .back()};
    }));
  }
  std::vector<Row> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::ostringstream csv;
  csv << "T,regret,approx_regret,exponent\n";
  std::vector<double> ts;
  std::vector<double> rs;
  for (size_t k = 0; k < horizons.size(); ++k) {
    ts.push_back(static_cast<double>(horizons[k]));
    rs.push_back(rows[k].regret);
    std::string exponent;
    try {
      exponent = FormatDouble(FitScalingExponent(ts, rs).exponent);
    } catch (const ConfigError&) {
      // Not enough usable points yet.
    }
    csv << horizons[k] << ',' << FormatDouble(rows[k].regret) << ','
        << FormatDouble(rows[k].approx) << ',' << exponent << '\n';
  }
  const fs::path dir = OutputDir(args.run.out);
  WriteText(dir / "sweep.csv", csv.str());
  std::cout << csv.str();
  return kExitOk;
}

struct CheckArgs {
  std::string trace;
  std::string manifest;
  std::vector<std::string> properties;
};

int CmdCheck(const CheckArgs& args) {
  const Trace trace =
      LoadTrace(args.trace, ManifestFor(args.trace, args.manifest));
  const auto verdicts = RunChecks(trace, SplitList(args.properties));
  WriteVerdictTable(verdicts, std::cout);
  for (const auto& v : verdicts) {
    if (!v.pass) return kExitCheckFailed;
  }
  return kExitOk;
}

struct EquilibriumArgs {
  RunArgs run;
  bool sequence = false;
};

int CmdEquilibrium(const EquilibriumArgs& args) {
  const ScenarioConfig config = LoadConfig(args.run.config, args.run.overrides);
  const EquilibriumSolverConfig solver;
  if (!args.sequence) {
    const EquilibriumResult r = Tatonnement(config.model, config.supply.base,
                                            solver, config.domain);
    const auto x = Demand(config.model, r.prices);
    std::cout << "good,price,log_price,demand,supply\n";
    for (int i = 0; i < r.prices.size(); ++i) {
      std::cout << i << ',' << FormatDouble(r.prices.price(i)) << ','
                << FormatDouble(r.prices.log_price(i)) << ','
                << FormatDouble(x[i]) << ','
                << FormatDouble(config.supply.base[i]) << '\n';
    }
    std::cerr << "residual " << r.residual << " after " << r.iterations
              << " iterations\n";
    if (r.clipped) std::cerr << "warning: " << r.warning << "\n";
    return kExitOk;
  }
  const SupplySchedule schedule =
      MakeSupplySchedule(config.supply, config.seed, config.horizon);
  const auto seq =
      EquilibriumSequence(config.model, schedule, solver, config.domain);
  std::ostringstream csv;
  csv << "t";
  for (int i = 0; i < config.num_sellers(); ++i) {
    csv << ",price_" << i << ",supply_" << i;
  }
  csv << ",residual\n";
  int clipped = 0;
  for (size_t k = 0; k < seq.size(); ++k) {
    csv << (k + 1);
    for (int i = 0; i < config.num_sellers(); ++i) {
      csv << ',' << FormatDouble(seq[k].prices.price(i)) << ','
          << FormatDouble(schedule.supplies[k][i]);
    }
    csv << ',' << FormatDouble(seq[k].residual) << '\n';
    clipped += seq[k].clipped ? 1 : 0;
  }
  const fs::path dir = OutputDir(args.run.out);
  WriteText(dir / "equilibrium.csv", csv.str());
  std::cout << csv.str();
  std::cerr << "W_T = " << SupplyVariation(schedule) << "\n";
  if (clipped > 0) {
    std::cerr << "warning: " << clipped
              << " equilibria clipped to the price domain\n";
  }
  return kExitOk;
}

struct ReportArgs {
  std::string trace;
  std::string manifest;
  std::string out;
  int seller = 0;
  int64_t grid = 10000;
  std::string objective = "log";
  std::vector<std::string> checks;
};

int CmdReport(const ReportArgs& args) {
  const Trace trace =
      LoadTrace(args.trace, ManifestFor(args.trace, args.manifest));
  if (args.seller < 0 || args.seller >= trace.num_sellers()) {
    throw ConfigError("seller index out of range");
  }
  ReportOptions options;
  options.best.grid_intervals = args.grid;
  if (args.objective == "revenue") {
    options.best.objective = BenchmarkObjective::kRevenue;
  } else if (args.objective != "log") {
    throw ConfigError("objective must be 'log' or 'revenue'");
  }
  options.checks = SplitList(args.checks);
  const RegretReport report = BuildReport(trace, args.seller, options);
  const fs::path dir = OutputDir(args.out);
  const std::string stem = "report_seller" + std::to_string(args.seller);
  std::ostringstream csv;
  WriteReportCsv(trace, report, csv);
  WriteText(dir / (stem + ".csv"), csv.str());
  nlohmann::json summary = ReportSummary(trace, report);
  if (options.best.objective == BenchmarkObjective::kRevenue) {
    summary["benchmark_objective"] = "revenue";
  } else {
    summary["benchmark_objective"] = "log_revenue";
  }
  const std::string text = summary.dump(2) + "\n";
  WriteText(dir / (stem + ".json"), text);
  std::cout << text;
  for (const auto& v : report.verdicts) {
    if (!v.pass) return kExitCheckFailed;
  }
  return kExitOk;
}

void AddRunOptions(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("config", args.config, "Scenario JSON file")->required();
  cmd->add_option("-o,--out", args.out,
                  "Output directory (default $DYNPRICE_OUT_DIR or .)");
  cmd->add_option("--set", args.overrides,
                  "Override a config field: key.path=value (repeatable)");
}

}  // namespace

int Main(int argc, char** argv) {
  CLI::App app{"Repeated-game dynamic pricing simulator and regret analyzer"};
  app.require_subcommand(1);

  RunArgs run_args;
  AddRunOptions(app.add_subcommand("run", "Run a scenario, write trace and manifest"),
                run_args);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario at several horizons");
  AddRunOptions(sweep, sweep_args.run);
  sweep->add_option("--horizons", sweep_args.horizons,
                    "Comma-separated horizons")
      ->required();
  sweep->add_option("--seller", sweep_args.seller, "Seller index");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Verify properties of a trace");
  check->add_option("trace", check_args.trace, "Trace CSV")->required();
  check->add_option("--manifest", check_args.manifest,
                    "Run manifest (default: manifest.json beside the trace)");
  check->add_option("--properties", check_args.properties,
                    "Comma-separated checks (default: all)");

  EquilibriumArgs eq_args;
  auto* eq = app.add_subcommand("equilibrium", "Solve market equilibrium");
  AddRunOptions(eq, eq_args.run);
  eq->add_flag("--sequence", eq_args.sequence,
               "Solve every round of the supply schedule");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Regret report for one seller");
  report->add_option("trace", report_args.trace, "Trace CSV")->required();
  report->add_option("--manifest", report_args.manifest, "Run manifest");
  report->add_option("-o,--out", report_args.out, "Output directory");
  report->add_option("--seller", report_args.seller, "Seller index");
  report->add_option("--grid", report_args.grid, "Benchmark grid intervals");
  report->add_option("--objective", report_args.objective,
                     "Benchmark objective: log or revenue");
  report->add_option("--checks", report_args.checks,
                     "Comma-separated checks to include");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("run")) return CmdRun(run_args);
    if (app.got_subcommand("sweep")) return CmdSweep(sweep_args);
    if (app.got_subcommand("check")) return CmdCheck(check_args);
    if (app.got_subcommand("equilibrium")) return CmdEquilibrium(eq_args);
    if (app.got_subcommand("report")) return CmdReport(report_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace dynprice

int main(int argc, char** argv) { return dynprice::Main(argc, argv); }
