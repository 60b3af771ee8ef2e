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

#include "dynprice/regret.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

void CheckSeller(const Trace& trace, int seller) {
  if (seller < 0 || seller >= trace.num_sellers()) {
    throw ConfigError("seller index " + std::to_string(seller) +
                      " out of range");
  }
}

void CheckDiscount(double discount) {
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw ConfigError("degenerate discount: epsilon * R must lie in [0, 1)");
  }
}

double InitialLogPrice(const Trace& trace, int seller) {
  if (static_cast<int>(trace.initial_log_prices.size()) !=
      trace.num_sellers()) {
    throw ConfigError("trace metadata lacks initial log-prices");
  }
  return trace.initial_log_prices[seller];
}

// Floating-point allowance when comparing the two sides of an inequality
// built from O(T) summed terms.
double Tolerance(double lhs, double rhs, int64_t terms) {
  return 1e-12 * static_cast<double>(terms + 1) *
         (std::fabs(lhs) + std::fabs(rhs) + 1.0);
}

}  // namespace

CounterfactualRevenue::CounterfactualRevenue(const Trace& trace, int seller) {
  CheckSeller(trace, seller);
  slices_.reserve(trace.length());
  log_supply_.reserve(trace.length());
  for (int64_t k = 0; k < trace.length(); ++k) {
    slices_.emplace_back(trace.config.model,
                         PricePoint::FromLogPrices(trace.LogPrices(k)), seller);
    log_supply_.push_back(std::log(trace.supply(k, seller)));
  }
}

double CounterfactualRevenue::LogRevenue(int64_t k, double l) const {
  return l + std::min(slices_[k].LogDemand(l), log_supply_[k]);
}

double CounterfactualRevenue::Revenue(int64_t k, double l) const {
  return std::exp(LogRevenue(k, l));
}

double CounterfactualRevenue::CumulativeLogRevenue(double l) const {
  double sum = 0.0;
  for (int64_t k = 0; k < length(); ++k) sum += LogRevenue(k, l);
  return sum;
}

double CounterfactualRevenue::CumulativeRevenue(double l) const {
  double sum = 0.0;
  for (int64_t k = 0; k < length(); ++k) sum += Revenue(k, l);
  return sum;
}

BestPrice BestFixedPrice(const Trace& trace, int seller,
                         const BestPriceOptions& options) {
  CheckSeller(trace, seller);
  if (trace.empty()) throw ConfigError("best fixed price of an empty trace");
  if (options.grid_intervals < 1) {
    throw ConfigError("grid needs at least one interval");
  }
  const CounterfactualRevenue cf(trace, seller);
  const PriceDomain& domain = trace.config.domain;
  const int64_t K = options.grid_intervals;
  const double lo = domain.log_min();
  const double h = domain.log_width() / static_cast<double>(K);
  auto grid = [&](int64_t k) { return k == K ? domain.log_max() : lo + h * k; };

  // Values closer than kTie relative to the summed magnitudes of their terms
  // count as ties, so both searches settle on the lowest price of a flat
  // stretch instead of following round-off.
  constexpr double kTie = 1e-12;
  BestPrice best;
  if (options.objective == BenchmarkObjective::kLogRevenue &&
      options.search == GridSearch::kConcave) {
    // Smallest k whose forward difference is not positive; K if none.
    int64_t a = 0;
    int64_t b = K;
    while (a < b) {
      int64_t mid = a + (b - a) / 2;
      double diff = 0.0;
      double scale = 0.0;
      const double l0 = grid(mid);
      const double l1 = grid(mid + 1);
      for (int64_t t = 0; t < cf.length(); ++t) {
        const double f0 = cf.LogRevenue(t, l0);
        const double f1 = cf.LogRevenue(t, l1);
        diff += f1 - f0;
        scale += std::fabs(f0) + std::fabs(f1);
      }
      if (diff <= kTie * scale) {
        b = mid;
      } else {
        a = mid + 1;
      }
    }
    best.grid_index = a;
    best.log_price = grid(a);
    best.value = cf.CumulativeLogRevenue(best.log_price);
  } else {
    const bool log_objective =
        options.objective == BenchmarkObjective::kLogRevenue;
    double best_scale = 0.0;
    best.value = -HUGE_VAL;
    for (int64_t k = 0; k <= K; ++k) {
      const double l = grid(k);
      double v = 0.0;
      double scale = 0.0;
      for (int64_t t = 0; t < cf.length(); ++t) {
        const double f = log_objective ? cf.LogRevenue(t, l) : cf.Revenue(t, l);
        v += f;
        scale += std::fabs(f);
      }
      if (v > best.value + kTie * (scale + best_scale)) {
        best.value = v;
        best_scale = scale;
        best.grid_index = k;
        best.log_price = l;
      }
    }
  }
  best.price = std::exp(best.log_price);
  return best;
}

std::vector<double> StaticRegret(const Trace& trace, int seller,
                                 double benchmark_log_price) {
  return ApproxRegret(trace, seller, benchmark_log_price, 0.0);
}

std::vector<double> ApproxRegret(const Trace& trace, int seller,
                                 double benchmark_log_price, double discount) {
  std::vector<double> bench(trace.length(), benchmark_log_price);
  return DynamicRegret(trace, seller, bench, discount);
}

std::vector<double> ApproxRegret(const Trace& trace, int seller,
                                 double benchmark_log_price,
                                 const SmoothingParams& smoothing) {
  return ApproxRegret(trace, seller, benchmark_log_price,
                      smoothing.discount());
}

std::vector<double> DynamicRegret(const Trace& trace, int seller,
                                  std::span<const double> benchmark_log_prices,
                                  double discount) {
  CheckSeller(trace, seller);
  CheckDiscount(discount);
  if (static_cast<int64_t>(benchmark_log_prices.size()) != trace.length()) {
    throw ConfigError("benchmark length " +
                      std::to_string(benchmark_log_prices.size()) +
                      " does not match trace length " +
                      std::to_string(trace.length()));
  }
  const CounterfactualRevenue cf(trace, seller);
  std::vector<double> curve(trace.length());
  double sum = 0.0;
  for (int64_t k = 0; k < trace.length(); ++k) {
    sum += (1.0 - discount) * cf.Revenue(k, benchmark_log_prices[k]) -
           trace.revenue(k, seller);
    curve[k] = sum;
  }
  return curve;
}

RvuConstants TheoreticalRvuConstants(Algorithm algorithm, double eta,
                                     const PriceDomain& domain) {
  if (!(eta > 0.0)) throw ConfigError("step size must be positive");
  const double D = domain.log_width() * domain.log_width();
  switch (algorithm) {
    case Algorithm::kOftrl:
      return {D / eta, eta, 1.0 / (4.0 * eta), 0.0};
    case Algorithm::kOmd:
      return {D / eta, eta, 1.0 / (8.0 * eta), 0.0};
    case Algorithm::kOgd:
      break;
  }
  throw UnsupportedError("no RVU constants for ogd");
}

RvuConstants TheoreticalDrvuConstants(double eta, const PriceDomain& domain,
                                      double initial_log_price) {
  if (!(eta > 0.0)) throw ConfigError("step size must be positive");
  const double reach = std::max(initial_log_price - domain.log_min(),
                                domain.log_max() - initial_log_price);
  const double d1 = 0.5 * reach * reach;
  const double d2 = domain.log_width();
  return {d1 / eta, eta, 1.0 / (8.0 * eta), d2 / eta};
}

InequalityCheck DrvuCheck(const Trace& trace, int seller,
                          const RvuConstants& c,
                          std::span<const double> comparators) {
  CheckSeller(trace, seller);
  if (static_cast<int64_t>(comparators.size()) != trace.length()) {
    throw ConfigError("comparator sequence length does not match the trace");
  }
  double lhs = 0.0;
  double du2 = 0.0;
  double dp2 = 0.0;
  double path = 0.0;
  double prev_p = InitialLogPrice(trace, seller);
  double prev_u = 0.0;
  for (int64_t k = 0; k < trace.length(); ++k) {
    const double p = trace.log_price(k, seller);
    const double u = trace.gradient(k, seller);
    if (!std::isfinite(u)) {
      throw ConfigError("trace is missing gradients at round " +
                        std::to_string(k + 1));
    }
    lhs += (comparators[k] - p) * u;
    du2 += (u - prev_u) * (u - prev_u);
    dp2 += (p - prev_p) * (p - prev_p);
    if (k > 0) path += std::fabs(comparators[k] - comparators[k - 1]);
    prev_p = p;
    prev_u = u;
  }
  InequalityCheck out;
  const double positive = c.alpha + c.beta * du2 + c.rho * path;
  out.lhs = lhs;
  out.rhs = positive - c.gamma * dp2;
  out.slack = out.rhs - out.lhs;
  out.pass = out.slack >= -Tolerance(out.lhs, out.rhs, trace.length());
  if (!out.pass) {
    out.inflation = positive > 0.0 ? (lhs + c.gamma * dp2) / positive
                                   : HUGE_VAL;
  }
  return out;
}

InequalityCheck RvuCheck(const Trace& trace, int seller,
                         const RvuConstants& constants,
                         double comparator_log_price) {
  std::vector<double> path(trace.length(), comparator_log_price);
  RvuConstants c = constants;
  c.rho = 0.0;
  return DrvuCheck(trace, seller, c, path);
}

double WorstCaseComparator(const Trace& trace, int seller) {
  CheckSeller(trace, seller);
  double sum = 0.0;
  for (int64_t k = 0; k < trace.length(); ++k) {
    sum += trace.gradient(k, seller);
  }
  return sum > 0.0 ? trace.config.domain.log_max()
                   : trace.config.domain.log_min();
}

ScalingFit FitScalingExponent(std::span<const double> horizons,
                              std::span<const double> values) {
  if (horizons.size() != values.size()) {
    throw ConfigError("horizons and values differ in length");
  }
  ScalingFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (size_t k = 0; k < horizons.size(); ++k) {
    if (!(horizons[k] > 0.0)) throw ConfigError("horizons must be positive");
    if (values[k] > 0.0 && std::isfinite(values[k])) {
      xs.push_back(std::log(horizons[k]));
      ys.push_back(std::log(values[k]));
    } else {
      ++fit.dropped;
    }
  }
  fit.used = static_cast<int>(xs.size());
  if (fit.used < 3) {
    throw ConfigError("scaling fit needs at least 3 positive values, got " +
                      std::to_string(fit.used) + " (" +
                      std::to_string(fit.dropped) + " non-positive dropped)");
  }
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*hi - *lo < 2.0 * std::log(10.0) - 1e-12) {
    throw ConfigError("scaling fit horizons must span at least 2 decades");
  }
  const double n = static_cast<double>(fit.used);
  double mx = 0.0;
  double my = 0.0;
  for (int k = 0; k < fit.used; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int k = 0; k < fit.used; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ssr = 0.0;
  for (int k = 0; k < fit.used; ++k) {
    const double e = ys[k] - (fit.intercept + fit.exponent * xs[k]);
    ssr += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

}  // namespace dynprice
