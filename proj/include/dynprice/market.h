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

// Demand oracles, revenue evaluation and the gradient feedback channels
// consumed by the pricing learners.
//
// All prices live on a bounded domain [p_min, p_max]; learners operate on
// log-prices. Every function here is a pure function of its value inputs.

#ifndef DYNPRICE_MARKET_H_
#define DYNPRICE_MARKET_H_

#include <span>
#include <vector>

namespace dynprice {

enum class DemandKind { kCes, kIgs };

// Consumer-side demand oracle.
//
// CES: a single representative buyer with budget B, weights a_i and
// substitution parameter rho in (0, 1), sigma = 1 / (1 - rho):
//   x_i(p) = B a_i^sigma p_i^-sigma / sum_j a_j^sigma p_j^(1 - sigma).
// IGS: log-demand affine in log-prices with constant elasticity E > 1:
//   ln x_j = ln c_j - E ln p_j + E sum_{i != j} ln p_i.
class DemandModel {
 public:
  static DemandModel Ces(double budget, std::vector<double> weights,
                         double rho);
  static DemandModel CesFromSigma(double budget, std::vector<double> weights,
                                  double sigma);
  static DemandModel Igs(std::vector<double> scales, double elasticity);

  DemandKind kind() const { return kind_; }
  int num_goods() const { return static_cast<int>(coefficients_.size()); }

  // CES accessors. Calling them on an IGS model throws UnsupportedError.
  double budget() const;
  const std::vector<double>& weights() const;
  double rho() const;
  double sigma() const;

  // IGS accessors.
  const std::vector<double>& scales() const;
  double elasticity() const;

  // Upper bound on the magnitude of any own- or cross-price elasticity:
  // E for IGS, sigma for CES.
  double elasticity_bound() const;

  // CES: a_i^sigma. Empty for IGS.
  const std::vector<double>& weight_powers() const { return weight_powers_; }

 private:
  DemandModel() = default;

  DemandKind kind_ = DemandKind::kCes;
  std::vector<double> coefficients_;  // a_i (CES) or c_j (IGS)
  std::vector<double> weight_powers_;
  double budget_ = 0.0;
  double rho_ = 0.0;
  double sigma_ = 0.0;
  double elasticity_ = 0.0;
};

struct PriceDomain {
  double min_price = 1e-2;
  double max_price = 1e2;

  void Validate() const;
  double log_min() const;
  double log_max() const;
  double log_width() const { return log_max() - log_min(); }
  double log_midpoint() const { return 0.5 * (log_min() + log_max()); }
  // Euclidean projection onto [ln p_min, ln p_max].
  double ProjectLog(double log_price) const;
  bool Contains(double price) const;
};

// A strictly positive price vector together with its element-wise log.
// log_prices()[i] == std::log(prices()[i]) holds bit-exactly.
class PricePoint {
 public:
  static PricePoint FromPrices(std::vector<double> prices);
  static PricePoint FromLogPrices(std::span<const double> log_prices);

  int size() const { return static_cast<int>(prices_.size()); }
  const std::vector<double>& prices() const { return prices_; }
  const std::vector<double>& log_prices() const { return log_prices_; }
  double price(int i) const { return prices_[i]; }
  double log_price(int i) const { return log_prices_[i]; }

  bool WithinDomain(const PriceDomain& domain) const;
  PricePoint WithLogPrice(int i, double log_price) const;

 private:
  PricePoint() = default;
  std::vector<double> prices_;
  std::vector<double> log_prices_;
};

// Smoothing constant epsilon and the revenue bounds r <= R. The threshold
// demand of a seller with supply w is X = w / exp(epsilon * r).
struct SmoothingParams {
  double epsilon = 0.0;
  double revenue_lower = 0.0;
  double revenue_upper = 0.0;

  void Validate() const;
  // epsilon * r == ln w - ln X.
  double band() const { return epsilon * revenue_lower; }
  // epsilon * R, the multiplicative discount on benchmark revenue.
  double discount() const { return epsilon * revenue_upper; }
  double LogThreshold(double supply) const;
  double Threshold(double supply) const;
};

std::vector<double> Demand(const DemandModel& model, const PricePoint& p);
double LogDemand(const DemandModel& model, const PricePoint& p, int i);

// ln x_i as a function of seller i's own log-price with every other price
// frozen. Cheap to evaluate repeatedly, which is what counterfactual
// analysis and quadrature need.
class OwnPriceSlice {
 public:
  OwnPriceSlice(const DemandModel& model, const PricePoint& p, int i);

  double LogDemand(double own_log_price) const;

 private:
  DemandKind kind_;
  double constant_ = 0.0;    // CES: ln B + sigma ln a_i. IGS: ln c_i + E sum_{j!=i} ln p_j
  double slope_ = 0.0;       // CES: sigma. IGS: E
  double own_weight_ = 0.0;  // CES: a_i^sigma
  double others_ = 0.0;      // CES: sum_{j != i} a_j^sigma p_j^(1 - sigma)
};

// p * min(x, w) and its natural log.
double Revenue(double price, double demand, double supply);
double LogRevenue(double price, double demand, double supply);

// d ln r_i / d ln p_i for the IGS model: 1 - E below supply, 1 once demand
// reaches supply (x_i == w_i counts as supply-capped).
double ExactLogGradient(const DemandModel& model, const PricePoint& p, int i,
                        double supply);

// Model-free sign feedback: -1 if x < w, +1 otherwise.
double AdjustedGradient(double demand, double supply);

// Piecewise-linear-in-log-demand surrogate gradient. Equals 1 above supply,
// 1 - E below the threshold X and interpolates linearly in ln x between them.
double SmoothedGradient(double demand, double supply, double elasticity,
                        const SmoothingParams& smoothing);

// The smoothed log-revenue curve of one seller at fixed opponent prices,
// tabulated on a uniform log-price grid over the whole domain.
//
// The curve is the integral of the smoothed gradient, anchored at the top of
// the price domain where demand is below the threshold X. There the smoothed
// gradient equals the actual slope 1 - E, so both curves coincide on that
// side of the band.
class SmoothedRevenueCurve {
 public:
  static constexpr int kDefaultGridPoints = 20000;

  SmoothedRevenueCurve(const DemandModel& model, const PricePoint& p, int i,
                       double supply, double elasticity,
                       const SmoothingParams& smoothing,
                       const PriceDomain& domain,
                       int grid_points = kDefaultGridPoints);

  // Smoothed log-revenue at an arbitrary own log-price in the domain
  // (trapezoid rule up to the enclosing cell, partial cell included).
  double At(double own_log_price) const;
  // Actual log-revenue at the same own log-price.
  double ActualAt(double own_log_price) const;

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& gradients() const { return gradients_; }

 private:
  double GradientAt(double own_log_price) const;

  OwnPriceSlice slice_;
  double log_supply_;
  double elasticity_;
  SmoothingParams smoothing_;
  PriceDomain domain_;
  double step_;
  std::vector<double> grid_;
  std::vector<double> gradients_;
  std::vector<double> values_;
};

// Convenience wrapper: smoothed log-revenue of seller i at its price in p.
double SmoothedLogRevenue(const DemandModel& model, const PricePoint& p, int i,
                          double supply, double elasticity,
                          const SmoothingParams& smoothing,
                          const PriceDomain& domain,
                          int grid_points =
                              SmoothedRevenueCurve::kDefaultGridPoints);

// Central-difference estimate of d ln x_j / d ln p_i.
double ElasticityFd(const DemandModel& model, const PricePoint& p, int i,
                    int j, double step = 1e-6);

}  // namespace dynprice

#endif  // DYNPRICE_MARKET_H_
