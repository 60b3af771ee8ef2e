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

// Property checks over recorded traces and the per-seller regret report.

#ifndef DYNPRICE_CHECKS_H_
#define DYNPRICE_CHECKS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dynprice/equilibrium.h"
#include "dynprice/regret.h"
#include "dynprice/trace.h"
#include "json.hpp"

namespace dynprice {

struct Verdict {
  std::string name;
  bool applicable = true;
  bool pass = true;
  int64_t trials = 0;
  int64_t failures = 0;
  // Largest violation ratio seen (check-specific; <= 1 means within bound).
  double worst = 0.0;
  std::string detail;
};

// Names accepted by RunChecks, in table order.
const std::vector<std::string>& CheckNames();

// Stored revenue equals p min(x, w) recomputed from the stored primitives
// and stored demand equals the model's demand at the stored prices, both to
// relative error 1e-12.
Verdict CheckSelfConsistency(const Trace& trace);

// OMD and OFTRL sellers with a fixed step: RVU with theoretical constants
// against both domain endpoints and the best fixed price.
Verdict CheckRvu(const Trace& trace);

// OMD sellers with a fixed step on CES markets: DRVU with theoretical
// constants against the per-round equilibrium sequence.
Verdict CheckDrvu(const Trace& trace,
                  const EquilibriumSolverConfig& solver = {});

// IGS with smoothing: 0 <= r~ - r~sm <= eps r at played prices of up to
// `samples` evenly spaced rounds, with quadrature slack eps r 1e-3.
Verdict CheckSmoothingCost(const Trace& trace, int samples = 50);

// Smoothed sellers: |delta^t - delta^(t-1)| <= L ||p~^t - p~^(t-1)||_1
// (1 + 1e-3) between consecutive rounds with equal supply, where
// L = E_feedback * E_model / (eps r).
Verdict CheckLipschitz(const Trace& trace);

// OMD and OFTRL sellers with a fixed step:
// |p~^t - p~^(t-1)| <= factor * eta * max_t |g^t|.
// An interior step moves eta |2 g_(t-1) - g_(t-2)|, so factor 3 holds for
// every gradient stream and factor 2 whenever consecutive gradients share a
// sign. The detail reports how many steps exceed factor 2.
Verdict CheckStability(const Trace& trace, double factor = 3.0);

// CES markets: equilibrium log-price shift between consecutive distinct
// supply vectors stays within || ln w' - ln w ||_1. Up to `samples` changes.
Verdict CheckEquilibriumShift(const Trace& trace,
                              const EquilibriumSolverConfig& solver = {},
                              int samples = 200);

// Runs the named checks (all when empty). Self-consistency always runs
// first. Throws ConfigError on an unknown name.
std::vector<Verdict> RunChecks(const Trace& trace,
                               const std::vector<std::string>& names);

void WriteVerdictTable(const std::vector<Verdict>& verdicts,
                       std::ostream& out);
nlohmann::json VerdictToJson(const Verdict& verdict);

struct ReportOptions {
  BestPriceOptions best;
  EquilibriumSolverConfig solver;
  // Properties to verify; empty runs none.
  std::vector<std::string> checks;
};

struct RegretReport {
  int seller = 0;
  // "fixed-price" or "equilibrium-sequence".
  std::string benchmark_kind;
  BestPrice best;
  double discount = 0.0;
  std::vector<double> equilibrium_log_prices;  // empty when unavailable
  std::string equilibrium_note;
  std::vector<double> regret;
  std::vector<double> approx_regret;
  std::vector<double> dynamic_regret;  // empty when unavailable
  std::vector<Verdict> verdicts;
};

RegretReport BuildReport(const Trace& trace, int seller,
                         const ReportOptions& options = {});

// Columns: t, price, demand, revenue, gradient, benchmark, regret,
// approx_regret, dynamic_regret. benchmark is the fixed price p**;
// dynamic_regret is "nan" when no equilibrium sequence is available.
void WriteReportCsv(const Trace& trace, const RegretReport& report,
                    std::ostream& out);
nlohmann::json ReportSummary(const Trace& trace, const RegretReport& report);

}  // namespace dynprice

#endif  // DYNPRICE_CHECKS_H_
