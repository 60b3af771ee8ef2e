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

// Walrasian equilibrium prices for gross-substitutes markets and supply-drift
// metrics, used as the dynamic-regret benchmark.

#ifndef DYNPRICE_EQUILIBRIUM_H_
#define DYNPRICE_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynprice/market.h"

namespace dynprice {

enum class SupplyKind { kStatic, kDrift, kRandomWalk };

std::string_view SupplyKindName(SupplyKind kind);
SupplyKind ParseSupplyKind(std::string_view name);

// Per-round supply vectors w^1 .. w^T together with the generator that
// produced them.
struct SupplySchedule {
  SupplyKind kind = SupplyKind::kStatic;
  std::vector<double> base;
  std::vector<double> drift_log_ratio;  // kDrift: total ln-change per good
  double step_cap = 0.0;                // kRandomWalk: |ln w step| <= cap
  uint64_t seed = 0;
  std::vector<std::vector<double>> supplies;

  int64_t horizon() const { return static_cast<int64_t>(supplies.size()); }
  // Throws ConfigError when any supply is non-positive or the walk exceeds
  // its step cap.
  void Validate() const;
};

// W_T = sum_t || ln w^t - ln w^(t-1) ||_1, with w^0 = w^1.
double SupplyVariation(const SupplySchedule& schedule);
double SupplyVariation(std::span<const std::vector<double>> supplies);

struct EquilibriumSolverConfig {
  // Step of p~ <- p~ + kappa (ln x(p~) - ln w). Defaults to 0.5 / sigma.
  std::optional<double> damping;
  double tolerance = 1e-8;
  int64_t max_iterations = 100000;

  void Validate() const;
};

struct EquilibriumResult {
  PricePoint prices;
  double residual = 0.0;  // max_i |ln x_i - ln w_i|
  int64_t iterations = 0;
  // Set when the fixed point of the projected iteration sits on the boundary
  // of the price domain with residual above tolerance.
  bool clipped = false;
  std::string warning;
};

// Log-space tatonnement. CES only; IGS with n >= 3 is solved in closed form
// (its log-linear system is invertible but the iteration is unstable along
// the uniform-scaling direction), IGS with n == 2 is degenerate and rejected.
EquilibriumResult Tatonnement(const DemandModel& model,
                              std::span<const double> supply,
                              const EquilibriumSolverConfig& config,
                              const PriceDomain& domain,
                              std::span<const double> warm_start_log = {});

// One equilibrium per round, each warm-started from the previous solution.
std::vector<EquilibriumResult> EquilibriumSequence(
    const DemandModel& model, const SupplySchedule& schedule,
    const EquilibriumSolverConfig& config, const PriceDomain& domain);

struct ShiftCheck {
  double shift = 0.0;  // max_j |ln p_j^new - ln p_j^old|
  double bound = 0.0;  // || ln w_new - ln w_old ||_1
  double slack = 0.0;  // solver slack, 10 * tolerance
  bool pass = false;
};

ShiftCheck EquilibriumShiftCheck(const DemandModel& model,
                                 std::span<const double> supply_old,
                                 std::span<const double> supply_new,
                                 const EquilibriumSolverConfig& config,
                                 const PriceDomain& domain);

}  // namespace dynprice

#endif  // DYNPRICE_EQUILIBRIUM_H_
