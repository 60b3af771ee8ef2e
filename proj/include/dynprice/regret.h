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

// Regret against fixed-price and equilibrium benchmarks, RVU / DRVU
// inequality checks and log-log scaling fits.
//
// The analyzer evaluates counterfactual revenues through the demand model
// stored in the trace metadata; learners never see it.

#ifndef DYNPRICE_REGRET_H_
#define DYNPRICE_REGRET_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dynprice/learners.h"
#include "dynprice/market.h"
#include "dynprice/trace.h"

namespace dynprice {

// Seller i's revenue in each round of a trace as a function of its own
// log-price, opponents frozen at their played prices.
class CounterfactualRevenue {
 public:
  CounterfactualRevenue(const Trace& trace, int seller);

  int64_t length() const { return static_cast<int64_t>(slices_.size()); }
  double LogRevenue(int64_t k, double own_log_price) const;
  double Revenue(int64_t k, double own_log_price) const;
  double CumulativeLogRevenue(double own_log_price) const;
  double CumulativeRevenue(double own_log_price) const;

 private:
  std::vector<OwnPriceSlice> slices_;
  std::vector<double> log_supply_;
};

enum class BenchmarkObjective { kLogRevenue, kRevenue };

enum class GridSearch {
  // Bisection on the sign of the cumulative forward difference. Valid
  // because cumulative log-revenue is concave in the own log-price for both
  // demand models.
  kConcave,
  kExhaustive,
};

struct BestPriceOptions {
  int64_t grid_intervals = 10000;
  BenchmarkObjective objective = BenchmarkObjective::kLogRevenue;
  GridSearch search = GridSearch::kConcave;
};

struct BestPrice {
  double log_price = 0.0;
  double price = 0.0;
  double value = 0.0;  // cumulative objective at the grid point
  int64_t grid_index = 0;
};

// Argmax over the uniform log-price grid; ties go to the lowest price. The
// raw-revenue objective is always searched exhaustively.
BestPrice BestFixedPrice(const Trace& trace, int seller,
                         const BestPriceOptions& options = {});

// Cumulative sums of disc * r^t(benchmark) - r^t(p^t), disc = 1 - discount,
// in revenue units. Played revenue is read from the trace.
std::vector<double> StaticRegret(const Trace& trace, int seller,
                                 double benchmark_log_price);
std::vector<double> ApproxRegret(const Trace& trace, int seller,
                                 double benchmark_log_price, double discount);
std::vector<double> ApproxRegret(const Trace& trace, int seller,
                                 double benchmark_log_price,
                                 const SmoothingParams& smoothing);
std::vector<double> DynamicRegret(const Trace& trace, int seller,
                                  std::span<const double> benchmark_log_prices,
                                  double discount);

// Constants of the inequality
//   sum_t (c_t - p^t) u^t <= alpha + beta sum_t (u^t - u^(t-1))^2
//                            - gamma sum_t (p^t - p^(t-1))^2
//                            + rho sum_t |c_t - c_(t-1)|
// over log-prices p and feedback gradients u, with p^0 the initial
// log-price, u^0 = 0 and c_0 = c_1. rho = 0 gives the static form.
struct RvuConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
};

// D = (ln p_max - ln p_min)^2. OFTRL: alpha = D/eta, beta = eta,
// gamma = 1/(4 eta). OMD: gamma = 1/(8 eta). OGD has none.
RvuConstants TheoreticalRvuConstants(Algorithm algorithm, double eta,
                                     const PriceDomain& domain);

// OMD: alpha = D1/eta, rho = D2/eta, beta = eta, gamma = 1/(8 eta), with D1
// the largest Bregman divergence from the initial point and D2 the domain
// width in log-price.
RvuConstants TheoreticalDrvuConstants(double eta, const PriceDomain& domain,
                                      double initial_log_price);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
  // Smallest factor >= 1 on alpha, beta and rho that makes the inequality
  // hold.
  double inflation = 1.0;
};

InequalityCheck RvuCheck(const Trace& trace, int seller,
                         const RvuConstants& constants,
                         double comparator_log_price);
InequalityCheck DrvuCheck(const Trace& trace, int seller,
                          const RvuConstants& constants,
                          std::span<const double> comparator_log_prices);

// The domain endpoint maximizing the left-hand side, which is linear in a
// fixed comparator.
double WorstCaseComparator(const Trace& trace, int seller);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int used = 0;
  int dropped = 0;  // non-positive values left out of the fit
};

// Least-squares slope of ln value against ln horizon. Needs >= 3 positive
// values whose horizons span >= 2 decades.
ScalingFit FitScalingExponent(std::span<const double> horizons,
                              std::span<const double> values);

}  // namespace dynprice

#endif  // DYNPRICE_REGRET_H_
