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

#include "dynprice/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

void CheckSupply(std::span<const double> supply, int n) {
  if (static_cast<int>(supply.size()) != n) {
    throw ConfigError("supply vector has " + std::to_string(supply.size()) +
                      " entries, market has " + std::to_string(n) + " goods");
  }
  for (double w : supply) {
    if (!(std::isfinite(w) && w > 0.0)) {
      throw DomainError("supplies must be positive and finite");
    }
  }
}

std::vector<double> LogExcess(const DemandModel& model, const PricePoint& p,
                              std::span<const double> supply) {
  const std::vector<double> x = Demand(model, p);
  std::vector<double> excess(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    excess[i] = std::log(x[i]) - std::log(supply[i]);
  }
  return excess;
}

double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

EquilibriumResult SolveIgs(const DemandModel& model,
                           std::span<const double> supply,
                           const PriceDomain& domain) {
  const int n = model.num_goods();
  if (n == 2) {
    throw UnsupportedError(
        "IGS equilibrium with 2 goods is degenerate (singular log-linear "
        "system); use a CES model for equilibrium benchmarks");
  }
  // ln x = ln c + E (11^T - 2I) l, and (11^T - 2I)^-1 = -(I - 11^T/(n-2))/2.
  const double e = model.elasticity();
  std::vector<double> v(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    v[i] = std::log(supply[i]) - std::log(model.scales()[i]);
    total += v[i];
  }
  std::vector<double> logs(n);
  bool clipped = false;
  for (int i = 0; i < n; ++i) {
    const double l = -(v[i] - total / (n - 2)) / (2.0 * e);
    logs[i] = domain.ProjectLog(l);
    clipped = clipped || logs[i] != l;
  }
  EquilibriumResult result{PricePoint::FromLogPrices(logs), 0.0, 0, false, {}};
  result.residual = MaxAbs(LogExcess(model, result.prices, supply));
  result.clipped = clipped;
  if (clipped) result.warning = "equilibrium lies outside the price domain";
  return result;
}

}  // namespace

std::string_view SupplyKindName(SupplyKind kind) {
  switch (kind) {
    case SupplyKind::kStatic:
      return "static";
    case SupplyKind::kDrift:
      return "drift";
    case SupplyKind::kRandomWalk:
      return "random_walk";
  }
  return "unknown";
}

SupplyKind ParseSupplyKind(std::string_view name) {
  if (name == "static") return SupplyKind::kStatic;
  if (name == "drift") return SupplyKind::kDrift;
  if (name == "random_walk") return SupplyKind::kRandomWalk;
  throw ConfigError("unknown supply schedule '" + std::string(name) +
                    "' (expected static, drift or random_walk)");
}

void SupplySchedule::Validate() const {
  for (size_t t = 0; t < supplies.size(); ++t) {
    for (double w : supplies[t]) {
      if (!(std::isfinite(w) && w > 0.0)) {
        throw ConfigError("supply at round " + std::to_string(t + 1) +
                          " is not positive");
      }
    }
    if (t > 0 && supplies[t].size() != supplies[t - 1].size()) {
      throw ConfigError("supply vectors change length at round " +
                        std::to_string(t + 1));
    }
  }
  if (kind == SupplyKind::kRandomWalk) {
    constexpr double kRoundoff = 1e-12;
    for (size_t t = 1; t < supplies.size(); ++t) {
      for (size_t i = 0; i < supplies[t].size(); ++i) {
        const double step =
            std::abs(std::log(supplies[t][i]) - std::log(supplies[t - 1][i]));
        if (step > step_cap + kRoundoff) {
          throw ConfigError("random-walk step exceeds its cap at round " +
                            std::to_string(t + 1));
        }
      }
    }
  }
}

double SupplyVariation(std::span<const std::vector<double>> supplies) {
  double total = 0.0;
  for (size_t t = 1; t < supplies.size(); ++t) {
    for (size_t i = 0; i < supplies[t].size(); ++i) {
      total += std::abs(std::log(supplies[t][i]) - std::log(supplies[t - 1][i]));
    }
  }
  return total;
}

double SupplyVariation(const SupplySchedule& schedule) {
  return SupplyVariation(schedule.supplies);
}

void EquilibriumSolverConfig::Validate() const {
  if (damping && !(*damping > 0.0 && std::isfinite(*damping))) {
    throw ConfigError("equilibrium damping must be positive");
  }
  if (!(tolerance > 0.0)) throw ConfigError("equilibrium tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

EquilibriumResult Tatonnement(const DemandModel& model,
                              std::span<const double> supply,
                              const EquilibriumSolverConfig& config,
                              const PriceDomain& domain,
                              std::span<const double> warm_start_log) {
  config.Validate();
  domain.Validate();
  const int n = model.num_goods();
  CheckSupply(supply, n);
  if (model.kind() == DemandKind::kIgs) return SolveIgs(model, supply, domain);

  const double kappa = config.damping.value_or(0.5 / model.sigma());
  std::vector<double> logs(n, domain.log_midpoint());
  if (!warm_start_log.empty()) {
    if (static_cast<int>(warm_start_log.size()) != n) {
      throw ConfigError("warm start has the wrong dimension");
    }
    for (int i = 0; i < n; ++i) logs[i] = domain.ProjectLog(warm_start_log[i]);
  }

  double residual = 0.0;
  for (int64_t it = 0; it <= config.max_iterations; ++it) {
    PricePoint p = PricePoint::FromLogPrices(logs);
    const std::vector<double> excess = LogExcess(model, p, supply);
    residual = MaxAbs(excess);
    if (residual < config.tolerance) {
      return EquilibriumResult{std::move(p), residual, it, false, {}};
    }
    bool stuck = true;
    for (int i = 0; i < n; ++i) {
      const double next = domain.ProjectLog(p.log_price(i) + kappa * excess[i]);
      if (std::abs(excess[i]) >= config.tolerance && next != p.log_price(i)) {
        stuck = false;
      }
      logs[i] = next;
    }
    if (stuck) {
      EquilibriumResult result{std::move(p), residual, it, false, {}};
      result.clipped = true;
      result.warning =
          "equilibrium lies outside the price domain; residual " +
          std::to_string(residual);
      return result;
    }
  }
  throw NonConvergenceError(
      "tatonnement did not converge in " +
          std::to_string(config.max_iterations) + " iterations (residual " +
          std::to_string(residual) + ")",
      residual, config.max_iterations);
}

std::vector<EquilibriumResult> EquilibriumSequence(
    const DemandModel& model, const SupplySchedule& schedule,
    const EquilibriumSolverConfig& config, const PriceDomain& domain) {
  schedule.Validate();
  std::vector<EquilibriumResult> sequence;
  sequence.reserve(schedule.supplies.size());
  for (size_t t = 0; t < schedule.supplies.size(); ++t) {
    std::span<const double> warm;
    if (!sequence.empty()) warm = sequence.back().prices.log_prices();
    try {
      sequence.push_back(
          Tatonnement(model, schedule.supplies[t], config, domain, warm));
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError(
          "round " + std::to_string(t + 1) + ": " + e.what(), e.residual(),
          e.iterations());
    }
  }
  return sequence;
}

ShiftCheck EquilibriumShiftCheck(const DemandModel& model,
                                 std::span<const double> supply_old,
                                 std::span<const double> supply_new,
                                 const EquilibriumSolverConfig& config,
                                 const PriceDomain& domain) {
  const EquilibriumResult before = Tatonnement(model, supply_old, config, domain);
  const EquilibriumResult after = Tatonnement(model, supply_new, config, domain);
  ShiftCheck check;
  for (int i = 0; i < model.num_goods(); ++i) {
    check.shift = std::max(check.shift, std::abs(after.prices.log_price(i) -
                                                 before.prices.log_price(i)));
    check.bound += std::abs(std::log(supply_new[i]) - std::log(supply_old[i]));
  }
  check.slack = 10.0 * config.tolerance;
  check.pass = check.shift <= check.bound + check.slack;
  return check;
}

}  // namespace dynprice
