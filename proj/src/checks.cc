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

#include "dynprice/checks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dynprice/errors.h"
#include "dynprice/market.h"

namespace dynprice {
namespace {

constexpr double kConsistencyTol = 1e-12;

bool RelClose(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b),
                                             1e-300});
}

bool IsOptimistic(Algorithm a) {
  return a == Algorithm::kOmd || a == Algorithm::kOftrl;
}

std::optional<double> FixedStep(const Trace& trace, int i) {
  if (static_cast<int>(trace.fixed_steps.size()) != trace.num_sellers()) {
    return std::nullopt;
  }
  return trace.fixed_steps[i];
}

Verdict NotApplicable(std::string name, std::string why) {
  Verdict v;
  v.name = std::move(name);
  v.applicable = false;
  v.pass = true;
  v.detail = std::move(why);
  return v;
}

void Record(Verdict& v, bool ok, double ratio) {
  ++v.trials;
  if (!ok) {
    ++v.failures;
    v.pass = false;
  }
  if (std::isfinite(ratio)) v.worst = std::max(v.worst, ratio);
}

std::string Fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::vector<double> Column(const std::vector<EquilibriumResult>& eq, int i) {
  std::vector<double> out;
  out.reserve(eq.size());
  for (const auto& r : eq) out.push_back(r.prices.log_price(i));
  return out;
}

SupplySchedule ScheduleFromTrace(const Trace& trace) {
  SupplySchedule s;
  s.kind = trace.config.supply.kind;
  s.base = trace.config.supply.base;
  s.drift_log_ratio = trace.config.supply.log_ratio;
  s.step_cap = trace.config.supply.step_cap;
  s.seed = trace.config.seed;
  for (int64_t k = 0; k < trace.length(); ++k) {
    s.supplies.push_back(trace.Supplies(k));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& CheckNames() {
  static const std::vector<std::string> names{
      "self-consistency", "rvu",       "drvu",
      "smoothing-cost",   "lipschitz", "stability",
      "equilibrium-shift"};
  return names;
}

Verdict CheckSelfConsistency(const Trace& trace) {
  Verdict v;
  v.name = "self-consistency";
  for (int64_t k = 0; k < trace.length(); ++k) {
    const PricePoint p = PricePoint::FromPrices(
        std::vector<double>(trace.Round(k).prices));
    const std::vector<double> x = Demand(trace.config.model, p);
    for (int i = 0; i < trace.num_sellers(); ++i) {
      const bool log_ok = p.log_price(i) == trace.log_price(k, i);
      const bool demand_ok = RelClose(x[i], trace.demand(k, i),
                                      kConsistencyTol);
      const double r =
          Revenue(trace.price(k, i), trace.demand(k, i), trace.supply(k, i));
      const bool revenue_ok = RelClose(r, trace.revenue(k, i),
                                       kConsistencyTol);
      const bool capped =
          trace.revenue(k, i) <= trace.price(k, i) * trace.supply(k, i) *
                                     (1.0 + kConsistencyTol);
      const bool ok = log_ok && demand_ok && revenue_ok && capped;
      const double err = std::fabs(r - trace.revenue(k, i)) /
                         std::max(std::fabs(r), 1e-300);
      Record(v, ok, err / kConsistencyTol);
      if (!ok && v.detail.empty()) {
        v.detail = "first mismatch at round " + std::to_string(k + 1) +
                   ", seller " + std::to_string(i);
      }
    }
  }
  return v;
}

Verdict CheckRvu(const Trace& trace) {
  Verdict v;
  v.name = "rvu";
  if (trace.empty()) return NotApplicable(v.name, "empty trace");
  for (int i = 0; i < trace.num_sellers(); ++i) {
    const Algorithm a = trace.config.sellers[i].algorithm;
    const auto eta = FixedStep(trace, i);
    if (!IsOptimistic(a) || !eta) continue;
    const RvuConstants c =
        TheoreticalRvuConstants(a, *eta, trace.config.domain);
    const double best = BestFixedPrice(trace, i).log_price;
    for (double comparator : {trace.config.domain.log_min(),
                              trace.config.domain.log_max(), best}) {
      const InequalityCheck chk = RvuCheck(trace, i, c, comparator);
      Record(v, chk.pass, chk.inflation);
    }
  }
  if (v.trials == 0) {
    return NotApplicable(v.name, "no omd/oftrl seller with a fixed step");
  }
  v.detail = "comparators: both domain endpoints and p**";
  return v;
}

Verdict CheckDrvu(const Trace& trace, const EquilibriumSolverConfig& solver) {
  Verdict v;
  v.name = "drvu";
  if (trace.empty()) return NotApplicable(v.name, "empty trace");
  if (trace.config.model.kind() != DemandKind::kCes) {
    return NotApplicable(v.name, "equilibrium benchmark needs a ces model");
  }
  std::vector<int> sellers;
  for (int i = 0; i < trace.num_sellers(); ++i) {
    if (trace.config.sellers[i].algorithm == Algorithm::kOmd &&
        FixedStep(trace, i)) {
      sellers.push_back(i);
    }
  }
  if (sellers.empty()) {
    return NotApplicable(v.name, "no omd seller with a fixed step");
  }
  const auto eq = EquilibriumSequence(trace.config.model,
                                      ScheduleFromTrace(trace), solver,
                                      trace.config.domain);
  int clipped = 0;
  for (const auto& r : eq) clipped += r.clipped ? 1 : 0;
  for (int i : sellers) {
    const RvuConstants c = TheoreticalDrvuConstants(
        *FixedStep(trace, i), trace.config.domain,
        trace.initial_log_prices[i]);
    const InequalityCheck chk = DrvuCheck(trace, i, c, Column(eq, i));
    Record(v, chk.pass, chk.inflation);
    if (!chk.pass) {
      v.detail += "seller " + std::to_string(i) + " needs inflation " +
                  Fmt(chk.inflation) + "; ";
    }
  }
  if (clipped > 0) {
    v.detail += std::to_string(clipped) + " equilibria clipped to the domain";
  }
  return v;
}

Verdict CheckSmoothingCost(const Trace& trace, int samples) {
  Verdict v;
  v.name = "smoothing-cost";
  if (trace.config.model.kind() != DemandKind::kIgs) {
    return NotApplicable(v.name, "bound is stated for the igs model");
  }
  if (!trace.config.smoothing) {
    return NotApplicable(v.name, "no smoothing parameters");
  }
  if (trace.empty()) return NotApplicable(v.name, "empty trace");
  const SmoothingParams& sp = *trace.config.smoothing;
  const double band = sp.band();
  const double slack = band * 1e-3;
  const int64_t T = trace.length();
  const int64_t m = std::min<int64_t>(std::max(samples, 1), T);
  int64_t skipped = 0;
  for (int64_t s = 0; s < m; ++s) {
    const int64_t k = m == 1 ? 0 : s * (T - 1) / (m - 1);
    const PricePoint p = PricePoint::FromLogPrices(trace.LogPrices(k));
    for (int i = 0; i < trace.num_sellers(); ++i) {
      try {
        const SmoothedRevenueCurve curve(
            trace.config.model, p, i, trace.supply(k, i),
            trace.config.FeedbackElasticity(), sp, trace.config.domain);
        const double gap = curve.ActualAt(p.log_price(i)) -
                           curve.At(p.log_price(i));
        const bool ok = gap >= -slack && gap <= band + slack;
        Record(v, ok, std::max(gap, -gap) / band);
      } catch (const NumericalError&) {
        ++skipped;
      }
    }
  }
  if (skipped > 0) {
    v.detail = std::to_string(skipped) +
               " samples skipped: no anchor for the smoothed curve";
  }
  if (v.trials == 0) return NotApplicable(v.name, v.detail);
  return v;
}

Verdict CheckLipschitz(const Trace& trace) {
  Verdict v;
  v.name = "lipschitz";
  if (!trace.config.smoothing) {
    return NotApplicable(v.name, "no smoothing parameters");
  }
  const double L = trace.config.FeedbackElasticity() *
                   trace.config.model.elasticity_bound() /
                   trace.config.smoothing->band();
  for (int i = 0; i < trace.num_sellers(); ++i) {
    if (trace.config.sellers[i].feedback != FeedbackChannel::kSmoothed) {
      continue;
    }
    for (int64_t k = 1; k < trace.length(); ++k) {
      if (trace.Supplies(k) != trace.Supplies(k - 1)) continue;
      double dist = 0.0;
      for (int j = 0; j < trace.num_sellers(); ++j) {
        dist += std::fabs(trace.log_price(k, j) - trace.log_price(k - 1, j));
      }
      const double dg =
          std::fabs(trace.gradient(k, i) - trace.gradient(k - 1, i));
      const double bound = L * dist * (1.0 + 1e-3);
      Record(v, dg <= bound, bound > 0.0 ? dg / bound : (dg > 0.0 ? HUGE_VAL : 0.0));
    }
  }
  if (v.trials == 0) {
    return NotApplicable(v.name, "no smoothed seller with round pairs");
  }
  return v;
}

Verdict CheckStability(const Trace& trace, double factor) {
  Verdict v;
  v.name = "stability";
  int64_t above_two = 0;
  for (int i = 0; i < trace.num_sellers(); ++i) {
    const auto eta = FixedStep(trace, i);
    if (!IsOptimistic(trace.config.sellers[i].algorithm) || !eta) continue;
    double gmax = 0.0;
    for (int64_t k = 0; k < trace.length(); ++k) {
      gmax = std::max(gmax, std::fabs(trace.gradient(k, i)));
    }
    const double bound = factor * *eta * gmax * (1.0 + 1e-12);
    const double same_sign_bound = 2.0 * *eta * gmax * (1.0 + 1e-12);
    double prev = trace.initial_log_prices.empty()
                      ? trace.log_price(0, i)
                      : trace.initial_log_prices[i];
    for (int64_t k = 0; k < trace.length(); ++k) {
      const double step = std::fabs(trace.log_price(k, i) - prev);
      Record(v, step <= bound,
             bound > 0.0 ? step / bound : (step > 0.0 ? HUGE_VAL : 0.0));
      above_two += step > same_sign_bound ? 1 : 0;
      prev = trace.log_price(k, i);
    }
  }
  if (v.trials == 0) {
    return NotApplicable(v.name, "no omd/oftrl seller with a fixed step");
  }
  v.detail = "factor " + Fmt(factor) + "; " + std::to_string(above_two) +
             " steps above 2 eta max|g|";
  return v;
}

Verdict CheckEquilibriumShift(const Trace& trace,
                              const EquilibriumSolverConfig& solver,
                              int samples) {
  Verdict v;
  v.name = "equilibrium-shift";
  if (trace.config.model.kind() != DemandKind::kCes) {
    return NotApplicable(v.name, "equilibrium solver needs a ces model");
  }
  std::vector<int64_t> changes;
  for (int64_t k = 1; k < trace.length(); ++k) {
    if (trace.Supplies(k) != trace.Supplies(k - 1)) changes.push_back(k);
  }
  if (changes.empty()) return NotApplicable(v.name, "supply never changes");
  const size_t m = std::min<size_t>(std::max(samples, 1), changes.size());
  for (size_t s = 0; s < m; ++s) {
    const int64_t k =
        changes[m == 1 ? 0 : s * (changes.size() - 1) / (m - 1)];
    const ShiftCheck chk = EquilibriumShiftCheck(
        trace.config.model, trace.Supplies(k - 1), trace.Supplies(k), solver,
        trace.config.domain);
    Record(v, chk.pass, chk.bound > 0.0 ? chk.shift / chk.bound : 0.0);
  }
  return v;
}

std::vector<Verdict> RunChecks(const Trace& trace,
                               const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (std::find(CheckNames().begin(), CheckNames().end(), n) ==
        CheckNames().end()) {
      throw ConfigError("unknown check '" + n + "'");
    }
  }
  auto wanted = [&](const std::string& n) {
    return names.empty() ||
           std::find(names.begin(), names.end(), n) != names.end();
  };
  std::vector<Verdict> out{CheckSelfConsistency(trace)};
  if (wanted("rvu")) out.push_back(CheckRvu(trace));
  if (wanted("drvu")) out.push_back(CheckDrvu(trace));
  if (wanted("smoothing-cost")) out.push_back(CheckSmoothingCost(trace));
  if (wanted("lipschitz")) out.push_back(CheckLipschitz(trace));
  if (wanted("stability")) out.push_back(CheckStability(trace));
  if (wanted("equilibrium-shift")) {
    out.push_back(CheckEquilibriumShift(trace));
  }
  return out;
}

void WriteVerdictTable(const std::vector<Verdict>& verdicts,
                       std::ostream& out) {
  out << "check\tverdict\ttrials\tfailures\tworst\tdetail\n";
  for (const Verdict& v : verdicts) {
    out << v.name << '\t'
        << (!v.applicable ? "n/a" : (v.pass ? "pass" : "FAIL")) << '\t'
        << v.trials << '\t' << v.failures << '\t' << Fmt(v.worst) << '\t'
        << v.detail << '\n';
  }
}

nlohmann::json VerdictToJson(const Verdict& v) {
  return nlohmann::json{{"name", v.name},       {"applicable", v.applicable},
                        {"pass", v.pass},       {"trials", v.trials},
                        {"failures", v.failures}, {"worst", v.worst},
                        {"detail", v.detail}};
}

RegretReport BuildReport(const Trace& trace, int seller,
                         const ReportOptions& options) {
  RegretReport r;
  r.seller = seller;
  r.best = BestFixedPrice(trace, seller, options.best);
  r.discount = trace.config.smoothing ? trace.config.smoothing->discount() : 0.0;
  r.regret = StaticRegret(trace, seller, r.best.log_price);
  r.approx_regret = ApproxRegret(trace, seller, r.best.log_price, r.discount);
  const bool dynamic_supply = trace.config.supply.kind != SupplyKind::kStatic;
  r.benchmark_kind = dynamic_supply ? "equilibrium-sequence" : "fixed-price";
  if (trace.config.model.kind() == DemandKind::kCes) {
    try {
      const auto eq = EquilibriumSequence(trace.config.model,
                                          ScheduleFromTrace(trace),
                                          options.solver, trace.config.domain);
      r.equilibrium_log_prices = Column(eq, seller);
      r.dynamic_regret = DynamicRegret(trace, seller, r.equilibrium_log_prices,
                                       r.discount);
    } catch (const NonConvergenceError& e) {
      r.equilibrium_note = e.what();
    }
  } else {
    r.equilibrium_note = "equilibrium benchmark is offered for ces models only";
  }
  if (r.dynamic_regret.empty()) r.benchmark_kind = "fixed-price";
  if (!options.checks.empty()) {
    std::vector<std::string> names;
    for (const auto& n : options.checks) {
      if (n != "self-consistency") names.push_back(n);
    }
    r.verdicts = RunChecks(trace, names);
  }
  return r;
}

void WriteReportCsv(const Trace& trace, const RegretReport& r,
                    std::ostream& out) {
  out << "t,price,demand,revenue,gradient,benchmark,regret,approx_regret,"
         "dynamic_regret\n";
  const int i = r.seller;
  for (int64_t k = 0; k < trace.length(); ++k) {
    out << (k + 1) << ',' << FormatDouble(trace.price(k, i)) << ','
        << FormatDouble(trace.demand(k, i)) << ','
        << FormatDouble(trace.revenue(k, i)) << ','
        << FormatDouble(trace.gradient(k, i)) << ','
        << FormatDouble(r.best.price) << ',' << FormatDouble(r.regret[k])
        << ',' << FormatDouble(r.approx_regret[k]) << ','
        << (r.dynamic_regret.empty() ? std::string("nan")
                                     : FormatDouble(r.dynamic_regret[k]))
        << '\n';
  }
}

nlohmann::json ReportSummary(const Trace& trace, const RegretReport& r) {
  using nlohmann::json;
  const int64_t T = trace.length();
  const PriceDomain& d = trace.config.domain;
  json summary{
      {"seller", r.seller},
      {"horizon", T},
      {"benchmark_kind", r.benchmark_kind},
      {"best_fixed_price",
       {{"price", r.best.price},
        {"log_price", r.best.log_price},
        {"cumulative_log_revenue", r.best.value},
        {"grid_index", r.best.grid_index}}},
      {"discount", r.discount},
      {"final_regret", T ? json(r.regret.back()) : json(nullptr)},
      {"final_approx_regret", T ? json(r.approx_regret.back()) : json(nullptr)},
      {"final_dynamic_regret", r.dynamic_regret.empty()
                                   ? json(nullptr)
                                   : json(r.dynamic_regret.back())},
      {"rvu_diameter_squared", d.log_width() * d.log_width()},
  };
  if (!r.equilibrium_note.empty()) {
    summary["equilibrium_note"] = r.equilibrium_note;
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(VerdictToJson(v));
  summary["verdicts"] = verdicts;
  return summary;
}

}  // namespace dynprice
