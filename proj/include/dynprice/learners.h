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

// Online learners over a one-dimensional log-price interval.
//
// All three algorithms maximize (gradient ascent) and use the squared
// Euclidean regularizer, so every update is a projected gradient step:
//
//   OGD    p_{t+1} = P(p_t + eta_t g_t)
//   OMD    p_t     = P(y_{t-1} + eta_t M_t),   y_t = P(y_{t-1} + eta_t g_t)
//   OFTRL  p_t     = P(p_0 + eta_t (G_{t-1} + M_t))
//
// with prediction M_t = g_{t-1}, g_0 = 0 and G_t the running gradient sum.

#ifndef DYNPRICE_LEARNERS_H_
#define DYNPRICE_LEARNERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dynprice {

enum class Algorithm { kOgd, kOmd, kOftrl };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

enum class ScheduleKind {
  kInverseSqrt,   // eta_t = t^(-1/2)
  kFixedHorizon,  // eta = (L n)^(-1/2) T^(-1/4)
  kConstant,      // eta fixed by hand
};

std::string_view ScheduleKindName(ScheduleKind kind);
ScheduleKind ParseScheduleKind(std::string_view name);

// Inputs to MakeSchedule. Fixed-horizon needs horizon, num_sellers and either
// lipschitz or (elasticity, smoothing_band) from which L = E^2 / (eps r).
struct ScheduleParams {
  std::optional<int64_t> horizon;
  std::optional<int> num_sellers;
  std::optional<double> lipschitz;
  std::optional<double> elasticity;
  std::optional<double> smoothing_band;
  std::optional<double> step;
};

class StepSchedule {
 public:
  ScheduleKind kind() const { return kind_; }
  // Step size for round t >= 1.
  double StepAt(int64_t t) const;
  // The constant step of fixed-horizon and constant schedules.
  std::optional<double> fixed_step() const;

 private:
  friend StepSchedule MakeSchedule(ScheduleKind, const ScheduleParams&);
  StepSchedule(ScheduleKind kind, double step) : kind_(kind), step_(step) {}

  ScheduleKind kind_;
  double step_;
};

StepSchedule MakeSchedule(ScheduleKind kind, const ScheduleParams& params);

// Closed interval of admissible log-prices.
struct LogInterval {
  double lo = 0.0;
  double hi = 0.0;

  double Project(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  double width() const { return hi - lo; }
};

// Per-seller learner state. Single owner; step it sequentially.
//
// Round protocol: read CurrentLogPrice() for round t, then Step(g_t) with the
// feedback observed for that price. The state then holds the round t + 1
// price.
class Learner {
 public:
  Learner(Algorithm algorithm, StepSchedule schedule, LogInterval domain,
          double initial_log_price);

  Algorithm algorithm() const { return algorithm_; }
  const StepSchedule& schedule() const { return schedule_; }
  const LogInterval& domain() const { return domain_; }
  double initial_log_price() const { return initial_; }

  // Round number of the price currently posted (1 before any feedback).
  int64_t round() const { return round_; }
  double CurrentLogPrice() const { return current_; }
  // OMD secondary iterate y_{t-1}.
  double secondary() const { return secondary_; }
  // OFTRL running sum G_{t-1}.
  double cumulative_gradient() const { return cumulative_; }
  // Prediction for the current round, M_t = g_{t-1}.
  double last_gradient() const { return last_gradient_; }

  void Step(double gradient);

 private:
  Algorithm algorithm_;
  StepSchedule schedule_;
  LogInterval domain_;
  double initial_;
  int64_t round_ = 1;
  double current_;
  double secondary_;
  double cumulative_ = 0.0;
  double last_gradient_ = 0.0;
};

}  // namespace dynprice

#endif  // DYNPRICE_LEARNERS_H_
