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

#include "dynprice/market.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

bool IsPositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }

void CheckCoefficients(const std::vector<double>& values, const char* name) {
  if (values.size() < 2) {
    throw ConfigError(std::string("demand model needs at least 2 goods, got ") +
                      std::to_string(values.size()) + " " + name);
  }
  for (double v : values) {
    if (!IsPositiveFinite(v)) {
      throw ConfigError(std::string("every ") + name +
                        " entry must be positive and finite");
    }
  }
}

void CheckIndex(const DemandModel& model, const PricePoint& p, int i) {
  if (p.size() != model.num_goods()) {
    throw ConfigError("price vector has " + std::to_string(p.size()) +
                      " entries, model has " +
                      std::to_string(model.num_goods()) + " goods");
  }
  if (i < 0 || i >= model.num_goods()) {
    throw ConfigError("good index " + std::to_string(i) + " out of range");
  }
}

// ln sum_j a_j^sigma p_j^(1 - sigma), shifted for stability.
double CesLogDenominator(const DemandModel& model, const PricePoint& p) {
  const double sigma = model.sigma();
  const auto& wp = model.weight_powers();
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(wp.size());
  for (size_t j = 0; j < wp.size(); ++j) {
    terms[j] = std::log(wp[j]) + (1.0 - sigma) * p.log_price(j);
    shift = std::max(shift, terms[j]);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - shift);
  return shift + std::log(sum);
}

double SmoothedGradientLog(double log_demand, double log_supply,
                           double elasticity, double band) {
  if (log_demand > log_supply) return 1.0;
  if (log_demand < log_supply - band) return 1.0 - elasticity;
  return 1.0 + elasticity * (log_demand - log_supply) / band;
}

void CheckBand(const SmoothingParams& smoothing) {
  const double band = smoothing.band();
  if (!(std::isfinite(band) && band > 0.0)) {
    throw NumericalError(
        "degenerate smoothing: epsilon * r must be positive, got " +
        std::to_string(band));
  }
}

}  // namespace

// -- DemandModel --------------------------------------------------------------

DemandModel DemandModel::Ces(double budget, std::vector<double> weights,
                             double rho) {
  if (!(std::isfinite(rho) && rho > 0.0 && rho < 1.0)) {
    throw ConfigError("CES rho must lie strictly inside (0, 1), got " +
                      std::to_string(rho));
  }
  DemandModel model = CesFromSigma(budget, std::move(weights),
                                   1.0 / (1.0 - rho));
  model.rho_ = rho;
  return model;
}

DemandModel DemandModel::CesFromSigma(double budget,
                                      std::vector<double> weights,
                                      double sigma) {
  if (!IsPositiveFinite(budget)) {
    throw ConfigError("CES budget must be positive, got " +
                      std::to_string(budget));
  }
  if (!(std::isfinite(sigma) && sigma > 1.0)) {
    throw ConfigError("CES sigma must exceed 1, got " + std::to_string(sigma));
  }
  CheckCoefficients(weights, "weight");
  DemandModel model;
  model.kind_ = DemandKind::kCes;
  model.budget_ = budget;
  model.sigma_ = sigma;
  model.rho_ = 1.0 - 1.0 / sigma;
  model.coefficients_ = std::move(weights);
  model.weight_powers_.reserve(model.coefficients_.size());
  for (double a : model.coefficients_) {
    model.weight_powers_.push_back(std::pow(a, sigma));
  }
  return model;
}

DemandModel DemandModel::Igs(std::vector<double> scales, double elasticity) {
  if (!(std::isfinite(elasticity) && elasticity > 1.0)) {
    throw ConfigError("IGS elasticity must exceed 1, got " +
                      std::to_string(elasticity));
  }
  CheckCoefficients(scales, "scale");
  DemandModel model;
  model.kind_ = DemandKind::kIgs;
  model.elasticity_ = elasticity;
  model.coefficients_ = std::move(scales);
  return model;
}

double DemandModel::budget() const {
  if (kind_ != DemandKind::kCes) throw UnsupportedError("budget: not a CES model");
  return budget_;
}

const std::vector<double>& DemandModel::weights() const {
  if (kind_ != DemandKind::kCes) throw UnsupportedError("weights: not a CES model");
  return coefficients_;
}

double DemandModel::rho() const {
  if (kind_ != DemandKind::kCes) throw UnsupportedError("rho: not a CES model");
  return rho_;
}

double DemandModel::sigma() const {
  if (kind_ != DemandKind::kCes) throw UnsupportedError("sigma: not a CES model");
  return sigma_;
}

const std::vector<double>& DemandModel::scales() const {
  if (kind_ != DemandKind::kIgs) throw UnsupportedError("scales: not an IGS model");
  return coefficients_;
}

double DemandModel::elasticity() const {
  if (kind_ != DemandKind::kIgs) {
    throw UnsupportedError(
        "elasticity: CES price elasticity is not constant");
  }
  return elasticity_;
}

double DemandModel::elasticity_bound() const {
  return kind_ == DemandKind::kIgs ? elasticity_ : sigma_;
}

// -- PriceDomain --------------------------------------------------------------

void PriceDomain::Validate() const {
  if (!IsPositiveFinite(min_price) || !IsPositiveFinite(max_price) ||
      !(min_price < max_price)) {
    throw ConfigError("price domain needs 0 < min_price < max_price");
  }
}

double PriceDomain::log_min() const { return std::log(min_price); }
double PriceDomain::log_max() const { return std::log(max_price); }

double PriceDomain::ProjectLog(double log_price) const {
  return std::clamp(log_price, log_min(), log_max());
}

bool PriceDomain::Contains(double price) const {
  constexpr double kRelTol = 1e-12;
  return price >= min_price * (1.0 - kRelTol) &&
         price <= max_price * (1.0 + kRelTol);
}

// -- PricePoint ---------------------------------------------------------------

PricePoint PricePoint::FromPrices(std::vector<double> prices) {
  PricePoint p;
  p.log_prices_.reserve(prices.size());
  for (double v : prices) {
    if (!IsPositiveFinite(v)) {
      throw DomainError("prices must be positive and finite, got " +
                        std::to_string(v));
    }
    p.log_prices_.push_back(std::log(v));
  }
  p.prices_ = std::move(prices);
  return p;
}

PricePoint PricePoint::FromLogPrices(std::span<const double> log_prices) {
  std::vector<double> prices;
  prices.reserve(log_prices.size());
  for (double l : log_prices) {
    if (!std::isfinite(l)) throw DomainError("log-price must be finite");
    prices.push_back(std::exp(l));
  }
  return FromPrices(std::move(prices));
}

bool PricePoint::WithinDomain(const PriceDomain& domain) const {
  return std::all_of(prices_.begin(), prices_.end(),
                     [&](double v) { return domain.Contains(v); });
}

PricePoint PricePoint::WithLogPrice(int i, double log_price) const {
  std::vector<double> logs = log_prices_;
  logs.at(i) = log_price;
  return FromLogPrices(logs);
}

// -- SmoothingParams ----------------------------------------------------------

void SmoothingParams::Validate() const {
  if (!IsPositiveFinite(epsilon)) {
    throw ConfigError("smoothing epsilon must be positive");
  }
  if (!IsPositiveFinite(revenue_lower) || !IsPositiveFinite(revenue_upper) ||
      revenue_lower > revenue_upper) {
    throw ConfigError("revenue bounds must satisfy 0 < r <= R");
  }
}

double SmoothingParams::LogThreshold(double supply) const {
  return std::log(supply) - band();
}

double SmoothingParams::Threshold(double supply) const {
  return supply / std::exp(band());
}

// -- Demand -------------------------------------------------------------------

double LogDemand(const DemandModel& model, const PricePoint& p, int i) {
  CheckIndex(model, p, i);
  if (model.kind() == DemandKind::kCes) {
    const double sigma = model.sigma();
    return std::log(model.budget()) + std::log(model.weight_powers()[i]) -
           sigma * p.log_price(i) - CesLogDenominator(model, p);
  }
  const double e = model.elasticity();
  double others = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    if (j != i) others += p.log_price(j);
  }
  return std::log(model.scales()[i]) - e * p.log_price(i) + e * others;
}

std::vector<double> Demand(const DemandModel& model, const PricePoint& p) {
  CheckIndex(model, p, 0);
  std::vector<double> x(p.size());
  if (model.kind() == DemandKind::kCes) {
    const double log_den = CesLogDenominator(model, p);
    const double sigma = model.sigma();
    const double log_budget = std::log(model.budget());
    for (int i = 0; i < p.size(); ++i) {
      x[i] = std::exp(log_budget + std::log(model.weight_powers()[i]) -
                      sigma * p.log_price(i) - log_den);
    }
  } else {
    const double e = model.elasticity();
    double total = 0.0;
    for (double l : p.log_prices()) total += l;
    for (int j = 0; j < p.size(); ++j) {
      const double others = total - p.log_price(j);
      x[j] = std::exp(std::log(model.scales()[j]) - e * p.log_price(j) +
                      e * others);
    }
  }
  return x;
}

OwnPriceSlice::OwnPriceSlice(const DemandModel& model, const PricePoint& p,
                             int i)
    : kind_(model.kind()) {
  CheckIndex(model, p, i);
  if (kind_ == DemandKind::kCes) {
    slope_ = model.sigma();
    own_weight_ = model.weight_powers()[i];
    constant_ = std::log(model.budget()) + std::log(own_weight_);
    for (int j = 0; j < p.size(); ++j) {
      if (j == i) continue;
      others_ += model.weight_powers()[j] *
                 std::exp((1.0 - slope_) * p.log_price(j));
    }
  } else {
    slope_ = model.elasticity();
    double others = 0.0;
    for (int j = 0; j < p.size(); ++j) {
      if (j != i) others += p.log_price(j);
    }
    constant_ = std::log(model.scales()[i]) + slope_ * others;
  }
}

double OwnPriceSlice::LogDemand(double own_log_price) const {
  if (kind_ == DemandKind::kIgs) return constant_ - slope_ * own_log_price;
  const double own = own_weight_ * std::exp((1.0 - slope_) * own_log_price);
  return constant_ - slope_ * own_log_price - std::log(own + others_);
}

// -- Revenue and feedback -----------------------------------------------------

double Revenue(double price, double demand, double supply) {
  if (!IsPositiveFinite(price) || !IsPositiveFinite(demand) ||
      !IsPositiveFinite(supply)) {
    throw DomainError("revenue inputs must be positive");
  }
  return price * std::min(demand, supply);
}

double LogRevenue(double price, double demand, double supply) {
  return std::log(Revenue(price, demand, supply));
}

double ExactLogGradient(const DemandModel& model, const PricePoint& p, int i,
                        double supply) {
  if (model.kind() != DemandKind::kIgs) {
    throw UnsupportedError(
        "exact log-revenue gradient needs the IGS model; use the adjusted or "
        "smoothed feedback for CES");
  }
  if (!IsPositiveFinite(supply)) throw DomainError("supply must be positive");
  const double x = Demand(model, p)[i];
  return x < supply ? 1.0 - model.elasticity() : 1.0;
}

double AdjustedGradient(double demand, double supply) {
  if (!IsPositiveFinite(demand) || !IsPositiveFinite(supply)) {
    throw DomainError("adjusted gradient inputs must be positive");
  }
  return demand < supply ? -1.0 : 1.0;
}

double SmoothedGradient(double demand, double supply, double elasticity,
                        const SmoothingParams& smoothing) {
  CheckBand(smoothing);
  if (!IsPositiveFinite(demand) || !IsPositiveFinite(supply)) {
    throw DomainError("smoothed gradient inputs must be positive");
  }
  if (demand > supply) return 1.0;
  return SmoothedGradientLog(std::log(demand), std::log(supply), elasticity,
                             smoothing.band());
}

// -- SmoothedRevenueCurve -----------------------------------------------------

SmoothedRevenueCurve::SmoothedRevenueCurve(
    const DemandModel& model, const PricePoint& p, int i, double supply,
    double elasticity, const SmoothingParams& smoothing,
    const PriceDomain& domain, int grid_points)
    : slice_(model, p, i),
      log_supply_(std::log(supply)),
      elasticity_(elasticity),
      smoothing_(smoothing),
      domain_(domain) {
  CheckBand(smoothing);
  domain.Validate();
  if (!IsPositiveFinite(supply)) throw DomainError("supply must be positive");
  if (grid_points < 2) throw ConfigError("quadrature grid needs >= 2 points");

  const double lo = domain.log_min();
  const double hi = domain.log_max();
  step_ = (hi - lo) / (grid_points - 1);
  grid_.resize(grid_points);
  gradients_.resize(grid_points);
  values_.resize(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    grid_[k] = k + 1 == grid_points ? hi : lo + k * step_;
    gradients_[k] = GradientAt(grid_[k]);
  }

  const double top_log_demand = slice_.LogDemand(hi);
  if (!(top_log_demand < log_supply_ - smoothing.band())) {
    throw NumericalError(
        "cannot anchor smoothed revenue curve: demand at the highest price in "
        "the domain is not below the threshold X");
  }
  values_.back() = ActualAt(hi);
  for (int k = grid_points - 2; k >= 0; --k) {
    values_[k] = values_[k + 1] -
                 (grid_[k + 1] - grid_[k]) * 0.5 *
                     (gradients_[k] + gradients_[k + 1]);
  }
}

double SmoothedRevenueCurve::GradientAt(double own_log_price) const {
  return SmoothedGradientLog(slice_.LogDemand(own_log_price), log_supply_,
                             elasticity_, smoothing_.band());
}

double SmoothedRevenueCurve::At(double own_log_price) const {
  const double lo = grid_.front();
  const double hi = grid_.back();
  constexpr double kSlack = 1e-9;
  if (!(own_log_price >= lo - kSlack && own_log_price <= hi + kSlack)) {
    throw DomainError("own price outside the quadrature domain");
  }
  const double l = std::clamp(own_log_price, lo, hi);
  const int last_cell = static_cast<int>(grid_.size()) - 2;
  const int k = std::clamp(static_cast<int>((l - lo) / step_), 0, last_cell);
  return values_[k + 1] -
         (grid_[k + 1] - l) * 0.5 * (GradientAt(l) + gradients_[k + 1]);
}

double SmoothedRevenueCurve::ActualAt(double own_log_price) const {
  return own_log_price + std::min(slice_.LogDemand(own_log_price), log_supply_);
}

double SmoothedLogRevenue(const DemandModel& model, const PricePoint& p, int i,
                          double supply, double elasticity,
                          const SmoothingParams& smoothing,
                          const PriceDomain& domain, int grid_points) {
  SmoothedRevenueCurve curve(model, p, i, supply, elasticity, smoothing,
                             domain, grid_points);
  return curve.At(p.log_price(i));
}

double ElasticityFd(const DemandModel& model, const PricePoint& p, int i,
                    int j, double step) {
  CheckIndex(model, p, i);
  CheckIndex(model, p, j);
  if (!(std::isfinite(step) && step > 0.0)) {
    throw NumericalError("finite-difference step must be positive");
  }
  const PricePoint up = p.WithLogPrice(i, p.log_price(i) + step);
  const PricePoint down = p.WithLogPrice(i, p.log_price(i) - step);
  const double width = up.log_price(i) - down.log_price(i);
  if (!(width > 0.0)) {
    throw NumericalError("finite-difference step underflow at log-price " +
                         std::to_string(p.log_price(i)));
  }
  return (LogDemand(model, up, j) - LogDemand(model, down, j)) / width;
}

}  // namespace dynprice
