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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dynprice/errors.h"
#include "dynprice/simulation.h"

namespace dynprice {
namespace {

ScenarioConfig Base(int64_t horizon) {
  ScenarioConfig c;
  c.horizon = horizon;
  return c;
}

std::string Csv(const Trace& t) {
  std::ostringstream s;
  WriteTraceCsv(t, s);
  return s.str();
}

// Records everything the harness hands to an agent.
class SpyAgent : public PricingAgent {
 public:
  explicit SpyAgent(double log_price) : log_price_(log_price) {}
  double PostLogPrice() override { return log_price_; }
  void ReceiveFeedback(double gradient) override { seen.push_back(gradient); }
  std::vector<double> seen;

 private:
  double log_price_;
};

class BrokenAgent : public PricingAgent {
 public:
  double PostLogPrice() override { return 0.0; }
  void ReceiveFeedback(double) override {
    if (++calls == 3) throw FeedbackError("bad gradient");
  }
  int calls = 0;
};

TEST_CASE("empty horizon gives an empty trace") {
  Trace t = RunScenario(Base(0));
  CHECK(t.length() == 0);
  CHECK(t.num_sellers() == 2);
}

TEST_CASE("replay is bit-identical") {
  ScenarioConfig c = Base(500);
  c.supply.kind = SupplyKind::kRandomWalk;
  c.supply.step_cap = 0.02;
  c.initial_jitter = 0.3;
  c.seed = 12;
  CHECK(Csv(RunScenario(c)) == Csv(RunScenario(c)));
  ScenarioConfig other = c;
  other.seed = 13;
  CHECK(Csv(RunScenario(c)) != Csv(RunScenario(other)));
}

TEST_CASE("revenue never exceeds price times supply") {
  ScenarioConfig c = Base(400);
  c.supply.kind = SupplyKind::kRandomWalk;
  c.supply.step_cap = 0.05;
  c.seed = 3;
  Trace t = RunScenario(c);
  for (int64_t k = 0; k < t.length(); ++k) {
    for (int i = 0; i < 2; ++i) {
      CHECK(t.revenue(k, i) <= t.price(k, i) * t.supply(k, i));
    }
  }
}

TEST_CASE("agents are handed only their own gradient") {
  ScenarioConfig c = Base(40);
  SpyAgent a(0.3), b(-0.2);
  std::vector<PricingAgent*> agents{&a, &b};
  Trace t = RunScenario(c, agents);
  REQUIRE(a.seen.size() == 40);
  REQUIRE(b.seen.size() == 40);
  for (int64_t k = 0; k < 40; ++k) {
    CHECK(a.seen[k] == t.gradient(k, 0));
    CHECK(b.seen[k] == t.gradient(k, 1));
    // Adjusted feedback carries only the sign of excess demand.
    CHECK(std::fabs(a.seen[k]) == 1.0);
  }
}

TEST_CASE("a feedback error aborts with the round index") {
  BrokenAgent a, b;
  std::vector<PricingAgent*> agents{&a, &b};
  try {
    RunScenario(Base(10), agents);
    FAIL("expected a feedback error");
  } catch (const FeedbackError& e) {
    CHECK(std::string(e.what()).find("round 3") != std::string::npos);
  }
}

TEST_CASE("exact feedback ascends below the kink") {
  ScenarioConfig c = Base(300);
  c.model = DemandModel::Igs({1.0, 1.0}, 2.5);
  c.sellers[0].feedback = FeedbackChannel::kExact;
  c.sellers[0].initial_price = 0.2;
  c.sellers[1].feedback = FeedbackChannel::kExact;
  c.sellers[1].initial_price = 0.2;
  c.supply.base = {1.0, 1.0};
  Trace t = RunScenario(c);
  // Symmetric play keeps x = 1 = w, so the supply-capped branch applies.
  int64_t k = 0;
  while (k < t.length() && t.gradient(k, 0) == 1.0) {
    if (k > 0) {
      CHECK((t.log_price(k, 0) > t.log_price(k - 1, 0) ||
             t.log_price(k, 0) == c.domain.log_max()));
    }
    ++k;
  }
  CHECK(k > 0);
  for (int64_t j = 0; j < t.length(); ++j) {
    CHECK(t.gradient(j, 0) ==
          (t.demand(j, 0) >= t.supply(j, 0) ? 1.0 : -1.5));
  }
}

TEST_CASE("supply schedules") {
  SupplyConfig s;
  s.base = {1.0, 1.0};
  auto flat = MakeSupplySchedule(s, 0, 100);
  CHECK(flat.horizon() == 100);
  CHECK(SupplyVariation(flat) == 0.0);

  s.kind = SupplyKind::kDrift;
  s.log_ratio = {std::log(2.0), 0.0};
  auto drift = MakeSupplySchedule(s, 0, 100);
  CHECK(drift.supplies.front()[0] == 1.0);
  CHECK(drift.supplies.back()[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(SupplyVariation(drift) == doctest::Approx(std::log(2.0)));

  s.kind = SupplyKind::kRandomWalk;
  s.step_cap = 0.01;
  auto walk = MakeSupplySchedule(s, 9, 1000);
  CHECK(SupplyVariation(walk) <= 2 * 0.01 * 1000);
  for (size_t t = 1; t < walk.supplies.size(); ++t) {
    for (int i = 0; i < 2; ++i) {
      CHECK(std::fabs(std::log(walk.supplies[t][i]) -
                      std::log(walk.supplies[t - 1][i])) <= 0.01 + 1e-15);
    }
  }
  auto again = MakeSupplySchedule(s, 9, 1000);
  CHECK(again.supplies == walk.supplies);

  s.step_cap = -0.1;
  CHECK_THROWS_AS(MakeSupplySchedule(s, 0, 10), ConfigError);
}

TEST_CASE("uniform draws use the top 53 bits") {
  CHECK(UniformDraw(0) == 0.0);
  CHECK(UniformDraw(~0ULL) < 1.0);
  CHECK(UniformDraw(1ULL << 63) == 0.5);
}

TEST_CASE("initial prices default to the domain midpoint") {
  ScenarioConfig c = Base(1);
  auto l = InitialLogPrices(c);
  CHECK(l[0] == c.domain.log_midpoint());
  c.sellers[1].initial_price = 2.0;
  CHECK(InitialLogPrices(c)[1] == std::log(2.0));
  c.initial_jitter = 0.5;
  for (double v : InitialLogPrices(c)) {
    CHECK(v >= c.domain.log_min());
    CHECK(v <= c.domain.log_max());
  }
}

// OGD keeps crossing the kink with sign feedback while OMD on the smoothed
// channel comes to rest.
TEST_CASE("ogd oscillates where omd settles") {
  ScenarioConfig c = Base(4000);
  c.smoothing = SmoothingParams{std::log(10.0 / 9.0), 1.0, 1.0};
  ScenarioConfig omd = c;
  for (auto& s : omd.sellers) {
    s.algorithm = Algorithm::kOmd;
    s.feedback = FeedbackChannel::kSmoothed;
    s.schedule = ScheduleKind::kFixedHorizon;
  }
  Trace a = RunScenario(c);
  Trace b = RunScenario(omd);
  auto spread = [](const Trace& t) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (int64_t k = t.length() * 9 / 10; k < t.length(); ++k) {
      lo = std::min(lo, t.log_price(k, 0));
      hi = std::max(hi, t.log_price(k, 0));
    }
    return hi - lo;
  };
  CHECK(spread(a) > 0.0);
  CHECK(spread(b) < 0.2 * spread(a));
}

}  // namespace
}  // namespace dynprice
