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

// Round-by-round record of a simulation, its CSV form and the run manifest.

#ifndef DYNPRICE_TRACE_H_
#define DYNPRICE_TRACE_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dynprice/scenario.h"
#include "json.hpp"

namespace dynprice {

struct RoundRecord {
  int64_t t = 0;
  std::vector<double> log_prices;
  std::vector<double> prices;
  std::vector<double> demands;
  std::vector<double> supplies;
  std::vector<double> revenues;
  std::vector<double> gradients;
};

// Column-major storage of rounds 1..T for n sellers. Index k below is the
// zero-based round index, i.e. round t = k + 1.
class Trace {
 public:
  explicit Trace(int num_sellers);

  // Rounds must be appended in order starting at t = 1.
  void Append(const RoundRecord& record);

  int num_sellers() const { return num_sellers_; }
  int64_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  double log_price(int64_t k, int i) const { return log_prices_[At(k, i)]; }
  double price(int64_t k, int i) const { return prices_[At(k, i)]; }
  double demand(int64_t k, int i) const { return demands_[At(k, i)]; }
  double supply(int64_t k, int i) const { return supplies_[At(k, i)]; }
  double revenue(int64_t k, int i) const { return revenues_[At(k, i)]; }
  double gradient(int64_t k, int i) const { return gradients_[At(k, i)]; }

  std::vector<double> LogPrices(int64_t k) const;
  std::vector<double> Supplies(int64_t k) const;
  RoundRecord Round(int64_t k) const;

  // Per-seller column over all rounds.
  std::vector<double> LogPriceColumn(int i) const;
  std::vector<double> GradientColumn(int i) const;
  std::vector<double> RevenueColumn(int i) const;

  // Scenario metadata.
  ScenarioConfig config;
  std::vector<double> initial_log_prices;
  std::vector<std::optional<double>> fixed_steps;

  // Direct mutation for tamper tests and CSV loading.
  void SetRevenue(int64_t k, int i, double value) {
    revenues_[At(k, i)] = value;
  }

 private:
  size_t At(int64_t k, int i) const {
    return static_cast<size_t>(k) * num_sellers_ + i;
  }

  int num_sellers_;
  int64_t length_ = 0;
  std::vector<double> log_prices_;
  std::vector<double> prices_;
  std::vector<double> demands_;
  std::vector<double> supplies_;
  std::vector<double> revenues_;
  std::vector<double> gradients_;
};

// Shortest round-trip decimal form.
std::string FormatDouble(double value);

// Header: t, then for each seller i: log_price_i, price_i, demand_i,
// supply_i, revenue_i, gradient_i.
std::vector<std::string> TraceColumns(int num_sellers);
void WriteTraceCsv(const Trace& trace, std::ostream& out);
// Restores the per-round data. Metadata is left default; see LoadTrace.
Trace ReadTraceCsv(std::istream& in);

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json MakeManifest(const Trace& trace,
                            const std::string& trace_file);

// Reads a trace CSV and the manifest written next to it.
Trace LoadTrace(const std::string& csv_path, const std::string& manifest_path);

}  // namespace dynprice

#endif  // DYNPRICE_TRACE_H_
