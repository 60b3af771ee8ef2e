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

// Scenario description: market, sellers, supply, horizon and output paths.
// Read from and echoed to JSON; unknown keys are rejected.

#ifndef DYNPRICE_SCENARIO_H_
#define DYNPRICE_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynprice/equilibrium.h"
#include "dynprice/learners.h"
#include "dynprice/market.h"
#include "json.hpp"

namespace dynprice {

enum class FeedbackChannel { kExact, kAdjusted, kSmoothed };

std::string_view FeedbackChannelName(FeedbackChannel channel);
FeedbackChannel ParseFeedbackChannel(std::string_view name);

struct SellerConfig {
  Algorithm algorithm = Algorithm::kOgd;
  FeedbackChannel feedback = FeedbackChannel::kAdjusted;
  ScheduleKind schedule = ScheduleKind::kInverseSqrt;
  std::optional<double> step;       // kConstant
  std::optional<double> lipschitz;  // kFixedHorizon override of E^2/(eps r)
  std::optional<double> initial_price;
};

struct SupplyConfig {
  SupplyKind kind = SupplyKind::kStatic;
  std::vector<double> base{1.0, 1.0};
  std::vector<double> log_ratio;  // kDrift
  double step_cap = 0.0;          // kRandomWalk
};

struct OutputConfig {
  std::string trace = "trace.csv";
  std::string manifest = "manifest.json";
};

struct ScenarioConfig {
  DemandModel model = DemandModel::CesFromSigma(2.0, {1.0, 1.0}, 2.5);
  int64_t horizon = 1000;
  PriceDomain domain;
  std::optional<SmoothingParams> smoothing;
  // Elasticity used by the exact and smoothed channels. Defaults to E for
  // IGS and sigma for CES.
  std::optional<double> feedback_elasticity;
  SupplyConfig supply;
  std::vector<SellerConfig> sellers{SellerConfig{}, SellerConfig{}};
  uint64_t seed = 0;
  // Half-width of the uniform log-price jitter added to initial prices.
  double initial_jitter = 0.0;
  OutputConfig output;

  int num_sellers() const { return static_cast<int>(sellers.size()); }
  double FeedbackElasticity() const;
  StepSchedule SellerSchedule(int seller) const;
  // Throws ConfigError naming the violated constraint.
  void Validate() const;
};

ScenarioConfig ScenarioFromJson(const nlohmann::json& doc);
nlohmann::json ScenarioToJson(const ScenarioConfig& config);

// Parses JSON text. Syntax errors become ConfigError with line and column.
nlohmann::json ParseJsonText(std::string_view text);
ScenarioConfig ParseScenario(std::string_view text);

// Applies "key.path=value" onto a JSON document. The value is parsed as JSON
// when possible, otherwise taken as a string. Numeric path components index
// into arrays.
void ApplyOverride(nlohmann::json& doc, std::string_view assignment);

}  // namespace dynprice

#endif  // DYNPRICE_SCENARIO_H_
