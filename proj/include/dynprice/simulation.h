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

// The repeated pricing game: sellers post prices simultaneously, demand
// realizes, supply caps revenue and each seller is handed its own feedback
// gradient.

#ifndef DYNPRICE_SIMULATION_H_
#define DYNPRICE_SIMULATION_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dynprice/equilibrium.h"
#include "dynprice/learners.h"
#include "dynprice/market.h"
#include "dynprice/scenario.h"
#include "dynprice/trace.h"

namespace dynprice {

// Everything a seller sees of the market. A seller posts a log-price and is
// then handed one number, its feedback gradient for that round.
class PricingAgent {
 public:
  virtual ~PricingAgent() = default;
  virtual double PostLogPrice() = 0;
  virtual void ReceiveFeedback(double gradient) = 0;
};

class LearnerAgent : public PricingAgent {
 public:
  explicit LearnerAgent(Learner learner) : learner_(std::move(learner)) {}

  double PostLogPrice() override { return learner_.CurrentLogPrice(); }
  void ReceiveFeedback(double gradient) override { learner_.Step(gradient); }

  const Learner& learner() const { return learner_; }

 private:
  Learner learner_;
};

// Uniform draw in [0, 1) from the top 53 bits, identical on every platform.
double UniformDraw(uint64_t bits);

// static: w^t = base. drift: w_i^t = base_i exp(d_i (t - 1) / (T - 1)).
// random_walk: ln w_i^(t+1) = ln w_i^t + s (2u - 1), u uniform in [0, 1).
SupplySchedule MakeSupplySchedule(const SupplyConfig& supply, uint64_t seed,
                                  int64_t horizon);

// Configured initial price (domain midpoint by default) plus optional
// seeded jitter, projected onto the domain.
std::vector<double> InitialLogPrices(const ScenarioConfig& config);

std::vector<std::unique_ptr<PricingAgent>> MakeAgents(
    const ScenarioConfig& config);

// Gradient handed to seller i under the given channel.
double FeedbackGradient(FeedbackChannel channel, const DemandModel& model,
                        const PricePoint& p, int i, double demand,
                        double supply, double elasticity,
                        const SmoothingParams* smoothing);

// Validates the config and plays T rounds with learners built from it.
Trace RunScenario(const ScenarioConfig& config);

// Plays T rounds with caller-provided agents (one per seller).
Trace RunScenario(const ScenarioConfig& config,
                  std::span<PricingAgent* const> agents);

}  // namespace dynprice

#endif  // DYNPRICE_SIMULATION_H_
