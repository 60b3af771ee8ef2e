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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "dynprice/errors.h"
#include "dynprice/regret.h"
#include "dynprice/simulation.h"

namespace dynprice {
namespace {

// A trace whose every round is played at the given joint log-prices.
Trace HandTrace(const ScenarioConfig& config,
                const std::vector<std::vector<double>>& log_prices,
                const std::vector<double>& supply,
                const std::vector<std::vector<double>>& gradients = {}) {
  Trace t(config.num_sellers());
  t.config = config;
  t.initial_log_prices = log_prices.empty() ? std::vector<double>(
                                                  config.num_sellers(), 0.0)
                                            : log_prices.front();
  t.fixed_steps.assign(config.num_sellers(), std::nullopt);
  for (size_t k = 0; k < log_prices.size(); ++k) {
    auto p = PricePoint::FromLogPrices(log_prices[k]);
    RoundRecord r;
    r.t = static_cast<int64_t>(k) + 1;
    r.log_prices = p.log_prices();
    r.prices = p.prices();
    r.demands = Demand(config.model, p);
    r.supplies = supply;
    for (int i = 0; i < config.num_sellers(); ++i) {
      r.revenues.push_back(Revenue(p.price(i), r.demands[i], supply[i]));
      r.gradients.push_back(gradients.empty() ? 0.0 : gradients[k][i]);
    }
    t.Append(r);
  }
  return t;
}

ScenarioConfig IgsConfig() {
  ScenarioConfig c;
  c.model = DemandModel::Igs({1.0, 1.0}, 2.5);
  c.horizon = 0;
  return c;
}

// Brute-force argmax of summed log-revenue on the same grid.
double BruteForceBest(const Trace& t, int seller, int64_t K) {
  const PriceDomain& d = t.config.domain;
  double best = -HUGE_VAL, arg = 0.0;
  for (int64_t k = 0; k <= K; ++k) {
    const double l = k == K ? d.log_max() : d.log_min() + d.log_width() * k / K;
    double sum = 0.0;
    for (int64_t s = 0; s < t.length(); ++s) {
      auto p = PricePoint::FromLogPrices(t.LogPrices(s)).WithLogPrice(seller, l);
      sum += std::log(Revenue(p.price(seller), Demand(t.config.model, p)[seller],
                              t.supply(s, seller)));
    }
    if (sum > best) {
      best = sum;
      arg = l;
    }
  }
  return arg;
}

TEST_CASE("single round benchmark maximizes that round") {
  Trace t = HandTrace(ScenarioConfig{}, {{0.3, -0.4}}, {1.0, 1.0});
  auto best = BestFixedPrice(t, 0, {1000, BenchmarkObjective::kLogRevenue,
                                    GridSearch::kExhaustive});
  CHECK(best.log_price == doctest::Approx(BruteForceBest(t, 0, 1000)));
}

TEST_CASE("igs benchmark sits at the supply kink") {
  // Opponent at log-price 0.5: x_0 = 1 exactly when own log-price is 0.5.
  Trace t = HandTrace(IgsConfig(), std::vector<std::vector<double>>(
                                       5, std::vector<double>{0.0, 0.5}),
                      {1.0, 1.0});
  auto best = BestFixedPrice(t, 0);
  const double h = PriceDomain{}.log_width() / 10000;
  CHECK(std::fabs(best.log_price - 0.5) <= h);
  CHECK(best.log_price == doctest::Approx(BruteForceBest(t, 0, 10000)));
}

TEST_CASE("concave search agrees with exhaustive search") {
  ScenarioConfig c;
  c.horizon = 300;
  c.supply.kind = SupplyKind::kRandomWalk;
  c.supply.step_cap = 0.05;
  c.initial_jitter = 1.0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    c.seed = seed;
    Trace t = RunScenario(c);
    for (int i = 0; i < 2; ++i) {
      auto fast = BestFixedPrice(t, i);
      auto slow = BestFixedPrice(
          t, i, {10000, BenchmarkObjective::kLogRevenue,
                 GridSearch::kExhaustive});
      CHECK(fast.grid_index == slow.grid_index);
    }
  }
  Trace igs = RunScenario([] {
    ScenarioConfig g = IgsConfig();
    g.horizon = 200;
    g.sellers[0].feedback = FeedbackChannel::kExact;
    g.sellers[0].initial_price = 0.5;
    return g;
  }());
  CHECK(BestFixedPrice(igs, 0).grid_index ==
        BestFixedPrice(igs, 0, {10000, BenchmarkObjective::kLogRevenue,
                                GridSearch::kExhaustive})
            .grid_index);
}

TEST_CASE("benchmark value under grid refinement") {
  ScenarioConfig c;
  c.horizon = 2000;
  Trace t = RunScenario(c);
  double prev = -HUGE_VAL;
  for (int64_t K : {1250, 2500, 5000, 10000, 20000}) {
    auto best = BestFixedPrice(t, 0, {K, BenchmarkObjective::kLogRevenue,
                                      GridSearch::kExhaustive});
    // Nested grids never find a worse optimum.
    CHECK(best.value >= prev);
    if (K == 20000) {
      auto coarse = BestFixedPrice(t, 0);
      CHECK(std::fabs(best.value - coarse.value) < 1e-3);
    }
    prev = best.value;
  }
}

TEST_CASE("raw revenue benchmark") {
  Trace t = HandTrace(ScenarioConfig{}, {{0.3, -0.4}, {0.1, 0.2}},
                      {1.0, 1.0});
  auto best = BestFixedPrice(t, 0, {500, BenchmarkObjective::kRevenue,
                                    GridSearch::kConcave});
  CounterfactualRevenue cf(t, 0);
  const PriceDomain d;
  for (int k = 0; k <= 500; ++k) {
    CHECK(cf.CumulativeRevenue(d.log_min() + d.log_width() * k / 500) <=
          best.value * (1 + 1e-12));
  }
}

TEST_CASE("counterfactual at the played price reproduces stored revenue") {
  ScenarioConfig c;
  c.horizon = 500;
  c.supply.kind = SupplyKind::kRandomWalk;
  c.supply.step_cap = 0.05;
  Trace t = RunScenario(c);
  for (int i = 0; i < 2; ++i) {
    CounterfactualRevenue cf(t, i);
    for (int64_t k = 0; k < t.length(); ++k) {
      const double r = cf.Revenue(k, t.log_price(k, i));
      CHECK(std::fabs(r - t.revenue(k, i)) <= 1e-12 * t.revenue(k, i));
    }
  }
}

TEST_CASE("static regret") {
  // Own price 1 earns p^-1.5 = 1; the benchmark 1.2^(-2/3) earns 1.2.
  Trace t = HandTrace(IgsConfig(), {{0.0, 0.0}}, {10.0, 10.0});
  const double bench = std::log(std::pow(1.2, -1.0 / 1.5));
  auto r = StaticRegret(t, 0, bench);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(0.2).epsilon(1e-12));

  Trace same = HandTrace(ScenarioConfig{}, std::vector<std::vector<double>>(
                                               20, {0.4, 0.1}),
                         {1.0, 1.0});
  for (double v : StaticRegret(same, 0, 0.4)) CHECK(std::fabs(v) < 1e-12);

  ScenarioConfig c;
  c.horizon = 300;
  Trace run = RunScenario(c);
  auto curve = StaticRegret(run, 1, 0.2);
  CounterfactualRevenue cf(run, 1);
  for (int64_t k = 1; k < run.length(); ++k) {
    CHECK(curve[k] - curve[k - 1] ==
          doctest::Approx(cf.Revenue(k, 0.2) - run.revenue(k, 1)));
  }
}

TEST_CASE("approximate regret discounts the benchmark") {
  ScenarioConfig c;
  c.horizon = 400;
  c.smoothing = SmoothingParams{0.05, 1.0, 1.0};
  for (auto& s : c.sellers) {
    s.algorithm = Algorithm::kOftrl;
    s.feedback = FeedbackChannel::kSmoothed;
    s.schedule = ScheduleKind::kFixedHorizon;
  }
  Trace t = RunScenario(c);
  const double bench = BestFixedPrice(t, 0).log_price;
  auto plain = StaticRegret(t, 0, bench);
  auto zero = ApproxRegret(t, 0, bench, 0.0);
  auto disc = ApproxRegret(t, 0, bench, *c.smoothing);
  for (int64_t k = 0; k < t.length(); ++k) {
    CHECK(zero[k] == plain[k]);
    CHECK(disc[k] <= plain[k]);
  }
  CHECK_THROWS_AS(ApproxRegret(t, 0, bench, 1.0), ConfigError);

  Trace fixed = HandTrace(ScenarioConfig{}, std::vector<std::vector<double>>(
                                                10, {0.4, 0.1}),
                          {1.0, 1.0});
  auto curve = ApproxRegret(fixed, 0, 0.4, 0.05);
  double sum = 0.0;
  for (int64_t k = 0; k < 10; ++k) {
    sum += fixed.revenue(k, 0);
    CHECK(curve[k] == doctest::Approx(-0.05 * sum));
    CHECK(curve[k] <= 0.0);
  }
}

TEST_CASE("dynamic regret") {
  ScenarioConfig c;
  c.horizon = 200;
  Trace t = RunScenario(c);
  std::vector<double> constant(t.length(), 0.1);
  auto dyn = DynamicRegret(t, 0, constant, 0.05);
  auto approx = ApproxRegret(t, 0, 0.1, 0.05);
  for (int64_t k = 0; k < t.length(); ++k) CHECK(dyn[k] == approx[k]);

  auto played = t.LogPriceColumn(0);
  for (double v : DynamicRegret(t, 0, played, 0.0)) {
    CHECK(std::fabs(v) < 1e-12 * t.length());
  }
  CHECK_THROWS_AS(DynamicRegret(t, 0, std::vector<double>(3, 0.0), 0.0),
                  ConfigError);
}

TEST_CASE("regret splits additively") {
  ScenarioConfig c;
  c.horizon = 300;
  c.supply.kind = SupplyKind::kRandomWalk;
  c.supply.step_cap = 0.02;
  Trace t = RunScenario(c);
  const int64_t split = 123;
  Trace head(2), tail(2);
  head.config = tail.config = t.config;
  for (int64_t k = 0; k < t.length(); ++k) {
    RoundRecord r = t.Round(k);
    if (k < split) {
      head.Append(r);
    } else {
      r.t = k - split + 1;
      tail.Append(r);
    }
  }
  auto full = StaticRegret(t, 0, 0.3);
  auto a = StaticRegret(head, 0, 0.3);
  auto b = StaticRegret(tail, 0, 0.3);
  CHECK(a.back() + b.back() == doctest::Approx(full.back()).epsilon(1e-12));
}

TEST_CASE("rvu inequality") {
  ScenarioConfig c;
  // Constant play, zero gradients.
  Trace still = HandTrace(c, std::vector<std::vector<double>>(50, {0.2, 0.2}),
                          {1.0, 1.0});
  const RvuConstants k = TheoreticalRvuConstants(Algorithm::kOftrl, 0.1,
                                                 c.domain);
  auto chk = RvuCheck(still, 0, k, 0.2);
  CHECK(chk.lhs == 0.0);
  CHECK(chk.pass);
  CHECK(chk.slack == doctest::Approx(k.alpha));
  CHECK(RvuCheck(still, 0, k, c.domain.log_max()).pass);

  const double D = c.domain.log_width() * c.domain.log_width();
  CHECK(k.alpha == doctest::Approx(D / 0.1));
  CHECK(k.beta == 0.1);
  CHECK(k.gamma == doctest::Approx(2.5));
  CHECK(TheoreticalRvuConstants(Algorithm::kOmd, 0.1, c.domain).gamma ==
        doctest::Approx(1.25));
  CHECK_THROWS_AS(TheoreticalRvuConstants(Algorithm::kOgd, 0.1, c.domain),
                  UnsupportedError);

  auto drvu = TheoreticalDrvuConstants(0.1, c.domain, 0.0);
  CHECK(drvu.alpha == doctest::Approx(0.5 * std::pow(c.domain.log_width() / 2, 2) / 0.1));
  CHECK(drvu.rho == doctest::Approx(c.domain.log_width() / 0.1));

  // Hand-computed LHS and RHS on a three-round trace.
  Trace tiny = HandTrace(c, {{0.0, 0.0}, {0.1, 0.0}, {0.3, 0.0}}, {1.0, 1.0},
                         {{1.0, 0.0}, {-1.0, 0.0}, {0.5, 0.0}});
  RvuConstants u{1.0, 0.5, 2.0, 0.0};
  auto hand = RvuCheck(tiny, 0, u, 1.0);
  const double lhs = (1.0 - 0.0) * 1.0 + (1.0 - 0.1) * -1.0 + (1.0 - 0.3) * 0.5;
  const double du = 1.0 + 4.0 + 2.25;
  const double dp = 0.0 + 0.01 + 0.04;
  CHECK(hand.lhs == doctest::Approx(lhs));
  CHECK(hand.rhs == doctest::Approx(1.0 + 0.5 * du - 2.0 * dp));

  // A constant comparator path reduces DRVU to RVU.
  RvuConstants withrho = u;
  withrho.rho = 7.0;
  auto dr = DrvuCheck(tiny, 0, withrho, std::vector<double>(3, 1.0));
  CHECK(dr.lhs == hand.lhs);
  CHECK(dr.rhs == hand.rhs);
  // A moving path adds rho times its length.
  auto moving = DrvuCheck(tiny, 0, withrho, std::vector<double>{1.0, 1.5, 1.0});
  CHECK(moving.rhs == doctest::Approx(hand.rhs + 7.0 * 1.0));

  // Inflation restores the inequality when constants are too small.
  RvuConstants small{0.0, 0.0, 0.0, 0.0};
  small.alpha = 0.1;
  auto fail = RvuCheck(tiny, 0, small, 1.0);
  CHECK_FALSE(fail.pass);
  CHECK(fail.inflation == doctest::Approx(lhs / 0.1));
}

TEST_CASE("worst-case comparator maximizes the left-hand side") {
  ScenarioConfig c;
  c.horizon = 200;
  Trace t = RunScenario(c);
  RvuConstants k{1, 1, 1, 0};
  const double worst = WorstCaseComparator(t, 0);
  const double lhs = RvuCheck(t, 0, k, worst).lhs;
  for (int j = 0; j <= 50; ++j) {
    const double comp = c.domain.log_min() + c.domain.log_width() * j / 50;
    CHECK(RvuCheck(t, 0, k, comp).lhs <= lhs + 1e-9);
  }
}

TEST_CASE("optimistic traces satisfy rvu with theoretical constants") {
  for (Algorithm alg : {Algorithm::kOftrl, Algorithm::kOmd}) {
    ScenarioConfig c;
    c.horizon = 2000;
    c.smoothing = SmoothingParams{0.05, 1.0, 1.0};
    for (auto& s : c.sellers) {
      s.algorithm = alg;
      s.feedback = FeedbackChannel::kSmoothed;
      s.schedule = ScheduleKind::kFixedHorizon;
    }
    Trace t = RunScenario(c);
    for (int i = 0; i < 2; ++i) {
      auto k = TheoreticalRvuConstants(alg, *t.fixed_steps[i], c.domain);
      CHECK(RvuCheck(t, i, k, WorstCaseComparator(t, i)).pass);
      CHECK(RvuCheck(t, i, k, BestFixedPrice(t, i).log_price).pass);
    }
  }
}

TEST_CASE("scaling exponent fits") {
  std::vector<double> T{10, 100, 1000, 10000};
  std::vector<double> sq, quarter;
  for (double t : T) {
    sq.push_back(std::sqrt(t));
    quarter.push_back(3.0 * std::pow(t, 0.25));
  }
  auto a = FitScalingExponent(T, sq);
  CHECK(a.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.r_squared == doctest::Approx(1.0));
  auto b = FitScalingExponent(T, quarter);
  CHECK(b.exponent == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(b.intercept == doctest::Approx(std::log(3.0)));

  std::vector<double> with_negative{-1.0, 10.0, 31.6, 100.0};
  auto c = FitScalingExponent(T, with_negative);
  CHECK(c.used == 3);
  CHECK(c.dropped == 1);

  CHECK_THROWS_AS(FitScalingExponent(std::vector<double>{10, 100},
                                     std::vector<double>{1, 2}),
                  ConfigError);
  CHECK_THROWS_AS(FitScalingExponent(std::vector<double>{10, 20, 40},
                                     std::vector<double>{1, 2, 3}),
                  ConfigError);
}

TEST_CASE("empty trace has no benchmark") {
  CHECK_THROWS_AS(BestFixedPrice(Trace(2), 0), ConfigError);
}

}  // namespace
}  // namespace dynprice
