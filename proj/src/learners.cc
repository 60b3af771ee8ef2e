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

#include "dynprice/learners.h"

#include <cmath>
#include <string>

#include "dynprice/errors.h"

namespace dynprice {

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kOgd:
      return "ogd";
    case Algorithm::kOmd:
      return "omd";
    case Algorithm::kOftrl:
      return "oftrl";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "ogd") return Algorithm::kOgd;
  if (name == "omd") return Algorithm::kOmd;
  if (name == "oftrl") return Algorithm::kOftrl;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected ogd, omd or oftrl)");
}

std::string_view ScheduleKindName(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kInverseSqrt:
      return "inverse_sqrt";
    case ScheduleKind::kFixedHorizon:
      return "fixed_horizon";
    case ScheduleKind::kConstant:
      return "constant";
  }
  return "unknown";
}

ScheduleKind ParseScheduleKind(std::string_view name) {
  if (name == "inverse_sqrt") return ScheduleKind::kInverseSqrt;
  if (name == "fixed_horizon") return ScheduleKind::kFixedHorizon;
  if (name == "constant") return ScheduleKind::kConstant;
  throw ConfigError("unknown step schedule '" + std::string(name) +
                    "' (expected inverse_sqrt, fixed_horizon or constant)");
}

double StepSchedule::StepAt(int64_t t) const {
  if (kind_ == ScheduleKind::kInverseSqrt) {
    return 1.0 / std::sqrt(static_cast<double>(t < 1 ? 1 : t));
  }
  return step_;
}

std::optional<double> StepSchedule::fixed_step() const {
  if (kind_ == ScheduleKind::kInverseSqrt) return std::nullopt;
  return step_;
}

StepSchedule MakeSchedule(ScheduleKind kind, const ScheduleParams& params) {
  switch (kind) {
    case ScheduleKind::kInverseSqrt:
      return StepSchedule(kind, 0.0);
    case ScheduleKind::kConstant: {
      if (!params.step || !(*params.step > 0.0) || !std::isfinite(*params.step)) {
        throw ConfigError("constant schedule needs a positive step");
      }
      return StepSchedule(kind, *params.step);
    }
    case ScheduleKind::kFixedHorizon: {
      if (!params.horizon || *params.horizon < 1) {
        throw ConfigError("fixed-horizon schedule needs the horizon T >= 1");
      }
      if (!params.num_sellers || *params.num_sellers < 1) {
        throw ConfigError("fixed-horizon schedule needs the number of sellers");
      }
      double lipschitz;
      if (params.lipschitz) {
        lipschitz = *params.lipschitz;
      } else if (params.elasticity && params.smoothing_band) {
        lipschitz = *params.elasticity * *params.elasticity /
                    *params.smoothing_band;
      } else {
        throw ConfigError(
            "fixed-horizon schedule needs L, or E together with epsilon * r");
      }
      if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        throw ConfigError("fixed-horizon schedule needs L > 0");
      }
      const double step =
          1.0 / std::sqrt(lipschitz * *params.num_sellers) /
          std::pow(static_cast<double>(*params.horizon), 0.25);
      return StepSchedule(kind, step);
    }
  }
  throw ConfigError("unknown schedule kind");
}

Learner::Learner(Algorithm algorithm, StepSchedule schedule,
                 LogInterval domain, double initial_log_price)
    : algorithm_(algorithm),
      schedule_(schedule),
      domain_(domain),
      initial_(domain.Project(initial_log_price)),
      current_(initial_),
      secondary_(initial_) {
  if (!(domain.lo <= domain.hi)) throw ConfigError("empty learner domain");
  if (!std::isfinite(initial_log_price)) {
    throw ConfigError("initial log-price must be finite");
  }
}

void Learner::Step(double gradient) {
  if (!std::isfinite(gradient)) {
    throw FeedbackError("non-finite gradient fed to learner at round " +
                        std::to_string(round_));
  }
  const double eta = schedule_.StepAt(round_);
  const double next_eta = schedule_.StepAt(round_ + 1);
  switch (algorithm_) {
    case Algorithm::kOgd:
      current_ = domain_.Project(current_ + eta * gradient);
      break;
    case Algorithm::kOmd:
      secondary_ = domain_.Project(secondary_ + eta * gradient);
      current_ = domain_.Project(secondary_ + next_eta * gradient);
      break;
    case Algorithm::kOftrl:
      cumulative_ += gradient;
      current_ = domain_.Project(initial_ +
                                 next_eta * (cumulative_ + gradient));
      break;
  }
  last_gradient_ = gradient;
  ++round_;
}

}  // namespace dynprice
