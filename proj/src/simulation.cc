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

#include "dynprice/simulation.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

// Offset that separates the jitter stream from the supply stream.
constexpr uint64_t kJitterStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

double UniformDraw(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

SupplySchedule MakeSupplySchedule(const SupplyConfig& supply, uint64_t seed,
                                  int64_t horizon) {
  if (horizon < 0) throw ConfigError("horizon must be >= 0");
  if (supply.kind == SupplyKind::kRandomWalk && !(supply.step_cap >= 0.0)) {
    throw ConfigError("supply.step_cap: negative step cap");
  }
  const size_t n = supply.base.size();
  SupplySchedule s;
  s.kind = supply.kind;
  s.base = supply.base;
  s.drift_log_ratio = supply.log_ratio;
  s.step_cap = supply.step_cap;
  s.seed = seed;
  s.supplies.reserve(horizon);
  switch (supply.kind) {
    case SupplyKind::kStatic:
      s.supplies.assign(horizon, supply.base);
      break;
    case SupplyKind::kDrift: {
      if (supply.log_ratio.size() != n) {
        throw ConfigError("supply.log_ratio: need one entry per good");
      }
      for (int64_t t = 1; t <= horizon; ++t) {
        double frac = horizon > 1 ? static_cast<double>(t - 1) /
                                        static_cast<double>(horizon - 1)
                                  : 0.0;
        std::vector<double> w(n);
        for (size_t i = 0; i < n; ++i) {
          w[i] = supply.base[i] * std::exp(supply.log_ratio[i] * frac);
        }
        s.supplies.push_back(std::move(w));
      }
      break;
    }
    case SupplyKind::kRandomWalk: {
      std::mt19937_64 rng(seed);
      std::vector<double> log_w(n);
      for (size_t i = 0; i < n; ++i) log_w[i] = std::log(supply.base[i]);
      for (int64_t t = 1; t <= horizon; ++t) {
        if (t > 1) {
          for (size_t i = 0; i < n; ++i) {
            log_w[i] += supply.step_cap * (2.0 * UniformDraw(rng()) - 1.0);
          }
        }
        std::vector<double> w(n);
        for (size_t i = 0; i < n; ++i) w[i] = std::exp(log_w[i]);
        s.supplies.push_back(std::move(w));
      }
      break;
    }
  }
  s.Validate();
  return s;
}

std::vector<double> InitialLogPrices(const ScenarioConfig& config) {
  std::mt19937_64 rng(config.seed + kJitterStream);
  std::vector<double> out;
  for (const SellerConfig& s : config.sellers) {
    double l = s.initial_price ? std::log(*s.initial_price)
                               : config.domain.log_midpoint();
    if (config.initial_jitter > 0.0) {
      l += config.initial_jitter * (2.0 * UniformDraw(rng()) - 1.0);
    }
    out.push_back(config.domain.ProjectLog(l));
  }
  return out;
}

std::vector<std::unique_ptr<PricingAgent>> MakeAgents(
    const ScenarioConfig& config) {
  const std::vector<double> initial = InitialLogPrices(config);
  const LogInterval interval{config.domain.log_min(), config.domain.log_max()};
  std::vector<std::unique_ptr<PricingAgent>> agents;
  for (int i = 0; i < config.num_sellers(); ++i) {
    agents.push_back(std::make_unique<LearnerAgent>(
        Learner(config.sellers[i].algorithm, config.SellerSchedule(i),
                interval, initial[i])));
  }
  return agents;
}

double FeedbackGradient(FeedbackChannel channel, const DemandModel& model,
                        const PricePoint& p, int i, double demand,
                        double supply, double elasticity,
                        const SmoothingParams* smoothing) {
  switch (channel) {
    case FeedbackChannel::kExact:
      return ExactLogGradient(model, p, i, supply);
    case FeedbackChannel::kAdjusted:
      return AdjustedGradient(demand, supply);
    case FeedbackChannel::kSmoothed:
      if (smoothing == nullptr) {
        throw ConfigError("smoothed feedback requires smoothing parameters");
      }
      return SmoothedGradient(demand, supply, elasticity, *smoothing);
  }
  throw ConfigError("unknown feedback channel");
}

Trace RunScenario(const ScenarioConfig& config) {
  config.Validate();
  auto owned = MakeAgents(config);
  std::vector<PricingAgent*> agents;
  for (auto& a : owned) agents.push_back(a.get());
  return RunScenario(config, agents);
}

Trace RunScenario(const ScenarioConfig& config,
                  std::span<PricingAgent* const> agents) {
  config.Validate();
  const int n = config.num_sellers();
  if (static_cast<int>(agents.size()) != n) {
    throw ConfigError("need one agent per seller");
  }
  const SupplySchedule supply =
      MakeSupplySchedule(config.supply, config.seed, config.horizon);
  const double elasticity = config.FeedbackElasticity();
  const SmoothingParams* smoothing =
      config.smoothing ? &*config.smoothing : nullptr;

  Trace trace(n);
  trace.config = config;
  trace.initial_log_prices = InitialLogPrices(config);
  for (int i = 0; i < n; ++i) {
    trace.fixed_steps.push_back(config.SellerSchedule(i).fixed_step());
  }

  std::vector<double> log_prices(n);
  for (int64_t t = 1; t <= config.horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      double l = agents[i]->PostLogPrice();
      if (!std::isfinite(l) || l < config.domain.log_min() ||
          l > config.domain.log_max()) {
        throw DomainError("round " + std::to_string(t) + ", seller " +
                          std::to_string(i) +
                          ": posted log-price outside the domain");
      }
      log_prices[i] = l;
    }
    const PricePoint p = PricePoint::FromLogPrices(log_prices);
    const std::vector<double>& w = supply.supplies[t - 1];
    RoundRecord r;
    r.t = t;
    r.log_prices = p.log_prices();
    r.prices = p.prices();
    r.demands = Demand(config.model, p);
    r.supplies = w;
    r.revenues.resize(n);
    r.gradients.resize(n);
    for (int i = 0; i < n; ++i) {
      r.revenues[i] = Revenue(p.price(i), r.demands[i], w[i]);
      r.gradients[i] =
          FeedbackGradient(config.sellers[i].feedback, config.model, p, i,
                           r.demands[i], w[i], elasticity, smoothing);
    }
    for (int i = 0; i < n; ++i) {
      try {
        agents[i]->ReceiveFeedback(r.gradients[i]);
      } catch (const FeedbackError& e) {
        throw FeedbackError("round " + std::to_string(t) + ", seller " +
                            std::to_string(i) + ": " + e.what());
      }
    }
    trace.Append(r);
  }
  return trace;
}

}  // namespace dynprice
