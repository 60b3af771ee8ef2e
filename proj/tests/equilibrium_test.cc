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
#include <random>
#include <vector>

#include "doctest.h"
#include "dynprice/equilibrium.h"
#include "dynprice/errors.h"
#include "dynprice/market.h"

namespace dynprice {
namespace {

// With one CES buyer, x_i = w_i forces p_i proportional to a_i w_i^(-1/sigma)
// and the budget fixes the scale.
std::vector<double> CesClearingPrices(double budget,
                                      const std::vector<double>& a,
                                      double sigma,
                                      const std::vector<double>& w) {
  double denom = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    denom += a[j] * std::pow(w[j], 1.0 - 1.0 / sigma);
  }
  std::vector<double> p(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    p[i] = budget / denom * a[i] * std::pow(w[i], -1.0 / sigma);
  }
  return p;
}

double Residual(const DemandModel& model, const PricePoint& p,
                const std::vector<double>& w) {
  auto x = Demand(model, p);
  double r = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    r = std::max(r, std::fabs(std::log(x[i]) - std::log(w[i])));
  }
  return r;
}

const PriceDomain kDomain;
const EquilibriumSolverConfig kSolver;

TEST_CASE("symmetric ces equilibria") {
  auto model = DemandModel::CesFromSigma(2.0, {1, 1}, 2.5);
  auto r = Tatonnement(model, std::vector<double>{1, 1}, kSolver, kDomain);
  CHECK(std::fabs(r.prices.price(0) - 1.0) < 1e-8);
  CHECK(std::fabs(r.prices.price(1) - 1.0) < 1e-8);
  r = Tatonnement(model, std::vector<double>{2, 2}, kSolver, kDomain);
  CHECK(std::fabs(r.prices.price(0) - 0.5) < 1e-8);
  CHECK(std::fabs(r.prices.price(1) - 0.5) < 1e-8);
  CHECK(r.residual < 1e-8);
  CHECK_FALSE(r.clipped);
}

TEST_CASE("random ces instances match the clearing-price formula") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const double sigma = 1.3 + 3.0 * u(rng);
    const double budget = 0.5 + 3.0 * u(rng);
    std::vector<double> a(n), w(n);
    for (int i = 0; i < n; ++i) {
      a[i] = 0.5 + u(rng);
      w[i] = 0.5 + 1.5 * u(rng);
    }
    auto model = DemandModel::CesFromSigma(budget, a, sigma);
    auto r = Tatonnement(model, w, kSolver, kDomain);
    CHECK(r.residual < 1e-8);
    CHECK(Residual(model, r.prices, w) < 1e-8);
    auto oracle = CesClearingPrices(budget, a, sigma, w);
    for (int i = 0; i < n; ++i) {
      CHECK(std::fabs(r.prices.log_price(i) - std::log(oracle[i])) < 1e-7);
    }
  }
}

TEST_CASE("warm starts are never much slower than cold starts") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto model = DemandModel::CesFromSigma(2.0, {1.0, 1.5, 0.8}, 2.5);
  std::vector<double> w{1.0, 1.0, 1.0};
  auto prev = Tatonnement(model, w, kSolver, kDomain);
  for (int trial = 0; trial < 50; ++trial) {
    for (double& v : w) v *= std::exp(0.1 * (2 * u(rng) - 1));
    auto cold = Tatonnement(model, w, kSolver, kDomain);
    auto warm = Tatonnement(model, w, kSolver, kDomain,
                            prev.prices.log_prices());
    CHECK(warm.iterations <= 2 * cold.iterations);
    prev = warm;
  }
}

TEST_CASE("more supply never raises an equilibrium price") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto model = DemandModel::CesFromSigma(2.0, {1.0, 0.6, 1.4},
                                           1.5 + 2 * u(rng));
    std::vector<double> w{0.5 + u(rng), 0.5 + u(rng), 0.5 + u(rng)};
    auto before = Tatonnement(model, w, kSolver, kDomain);
    const int i = trial % 3;
    w[i] *= 1.0 + u(rng);
    auto after = Tatonnement(model, w, kSolver, kDomain);
    for (int j = 0; j < 3; ++j) {
      CHECK(after.prices.log_price(j) <=
            before.prices.log_price(j) + 10 * kSolver.tolerance);
    }
  }
}

TEST_CASE("equilibrium sequences") {
  auto model = DemandModel::CesFromSigma(2.0, {1, 1}, 2.5);
  SupplySchedule s;
  s.base = {1, 1};
  for (int t = 0; t < 10; ++t) {
    s.supplies.push_back(t < 4 ? std::vector<double>{1, 1}
                               : std::vector<double>{1.5, 0.8});
  }
  auto seq = EquilibriumSequence(model, s, kSolver, kDomain);
  REQUIRE(seq.size() == 10);
  for (int t = 1; t < 10; ++t) {
    if (t == 4) continue;
    for (int i = 0; i < 2; ++i) {
      CHECK(std::fabs(seq[t].prices.log_price(i) -
                      seq[t - 1].prices.log_price(i)) < 1e-8);
    }
  }
  CHECK(std::fabs(seq[3].prices.log_price(0) - seq[4].prices.log_price(0)) >
        0.01);

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SupplySchedule walk;
  walk.kind = SupplyKind::kRandomWalk;
  walk.step_cap = 0.05;
  std::vector<double> w{1, 1};
  for (int t = 0; t < 300; ++t) {
    if (t > 0) {
      for (double& v : w) v *= std::exp(0.05 * u(rng));
    }
    walk.supplies.push_back(w);
  }
  for (const auto& r : EquilibriumSequence(model, walk, kSolver, kDomain)) {
    CHECK(r.residual < kSolver.tolerance);
  }
}

TEST_CASE("supply variation") {
  std::vector<std::vector<double>> flat(100, std::vector<double>{1.0, 1.0});
  CHECK(SupplyVariation(flat) == 0.0);
  std::vector<std::vector<double>> up_down{{1.0}, {2.0}, {1.0}};
  CHECK(SupplyVariation(up_down) == doctest::Approx(2 * std::log(2.0)));
  std::vector<std::vector<double>> both{{1.0, 1.0}, {2.0, 2.0}};
  CHECK(SupplyVariation(both) == doctest::Approx(2 * std::log(2.0)));
  // Additive over concatenation (sharing the junction point).
  std::vector<std::vector<double>> a{{1.0}, {1.5}, {0.7}};
  std::vector<std::vector<double>> b{{0.7}, {3.0}};
  std::vector<std::vector<double>> ab{{1.0}, {1.5}, {0.7}, {3.0}};
  CHECK(SupplyVariation(ab) ==
        doctest::Approx(SupplyVariation(a) + SupplyVariation(b)));
}

TEST_CASE("equilibrium shift stays within the supply change") {
  auto model = DemandModel::CesFromSigma(2.0, {1, 1}, 2.5);
  auto same = EquilibriumShiftCheck(model, std::vector<double>{1, 1},
                                    std::vector<double>{1, 1}, kSolver,
                                    kDomain);
  CHECK(same.pass);
  CHECK(same.shift < same.slack);
  auto doubled = EquilibriumShiftCheck(model, std::vector<double>{1, 1},
                                       std::vector<double>{2, 2}, kSolver,
                                       kDomain);
  CHECK(doubled.shift == doctest::Approx(std::log(2.0)).epsilon(1e-7));
  CHECK(doubled.bound == doctest::Approx(2 * std::log(2.0)));
  CHECK(doubled.pass);

  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> f(std::log(0.5), std::log(2.0));
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> w{1.0, 1.0};
    std::vector<double> w2 = w;
    w2[trial % 2] *= std::exp(f(rng));
    CHECK(EquilibriumShiftCheck(model, w, w2, kSolver, kDomain).pass);
  }
}

TEST_CASE("igs equilibria") {
  auto two = DemandModel::Igs({1, 1}, 2.5);
  CHECK_THROWS_AS(
      Tatonnement(two, std::vector<double>{1, 1}, kSolver, kDomain),
      UnsupportedError);
  auto three = DemandModel::Igs({1.0, 2.0, 0.5}, 2.5);
  std::vector<double> w{1.0, 1.2, 0.9};
  auto r = Tatonnement(three, w, kSolver, kDomain);
  CHECK(Residual(three, r.prices, w) < 1e-10);
}

TEST_CASE("solver failures") {
  auto model = DemandModel::CesFromSigma(2.0, {1, 1}, 2.5);
  EquilibriumSolverConfig tight;
  tight.max_iterations = 2;
  try {
    Tatonnement(model, std::vector<double>{1.0, 3.0}, tight, kDomain);
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.residual() > tight.tolerance);
    CHECK(e.iterations() == 2);
  }
  // Clearing prices of 1000 lie far above the domain.
  auto r = Tatonnement(model, std::vector<double>{1e-3, 1e-3}, kSolver,
                       kDomain);
  CHECK(r.clipped);
  CHECK_FALSE(r.warning.empty());
  CHECK(r.residual > kSolver.tolerance);
  CHECK_THROWS_AS(
      Tatonnement(model, std::vector<double>{1.0, 0.0}, kSolver, kDomain),
      DomainError);
  EquilibriumSolverConfig bad;
  bad.damping = -1.0;
  CHECK_THROWS_AS(
      Tatonnement(model, std::vector<double>{1.0, 1.0}, bad, kDomain),
      ConfigError);
}

}  // namespace
}  // namespace dynprice
