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

#include "dynprice/trace.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

constexpr int kFieldsPerSeller = 6;

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos
                                         ? std::string::npos
                                         : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
    out.back().pop_back();
  }
  return out;
}

double ParseDouble(const std::string& s, int64_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("trace line " + std::to_string(line) +
                      ": cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

Trace::Trace(int num_sellers) : num_sellers_(num_sellers) {
  if (num_sellers < 1) throw ConfigError("trace needs at least one seller");
}

void Trace::Append(const RoundRecord& r) {
  if (r.t != length_ + 1) {
    throw Error("trace rounds must be appended in order: expected t = " +
                std::to_string(length_ + 1) + ", got " + std::to_string(r.t));
  }
  const size_t n = num_sellers_;
  if (r.log_prices.size() != n || r.prices.size() != n ||
      r.demands.size() != n || r.supplies.size() != n ||
      r.revenues.size() != n || r.gradients.size() != n) {
    throw Error("round record has the wrong number of sellers");
  }
  log_prices_.insert(log_prices_.end(), r.log_prices.begin(),
                     r.log_prices.end());
  prices_.insert(prices_.end(), r.prices.begin(), r.prices.end());
  demands_.insert(demands_.end(), r.demands.begin(), r.demands.end());
  supplies_.insert(supplies_.end(), r.supplies.begin(), r.supplies.end());
  revenues_.insert(revenues_.end(), r.revenues.begin(), r.revenues.end());
  gradients_.insert(gradients_.end(), r.gradients.begin(), r.gradients.end());
  ++length_;
}

std::vector<double> Trace::LogPrices(int64_t k) const {
  auto first = log_prices_.begin() + At(k, 0);
  return {first, first + num_sellers_};
}

std::vector<double> Trace::Supplies(int64_t k) const {
  auto first = supplies_.begin() + At(k, 0);
  return {first, first + num_sellers_};
}

RoundRecord Trace::Round(int64_t k) const {
  auto slice = [&](const std::vector<double>& v) {
    auto first = v.begin() + At(k, 0);
    return std::vector<double>(first, first + num_sellers_);
  };
  return RoundRecord{k + 1,          slice(log_prices_), slice(prices_),
                     slice(demands_), slice(supplies_),  slice(revenues_),
                     slice(gradients_)};
}

std::vector<double> Trace::LogPriceColumn(int i) const {
  std::vector<double> out(length_);
  for (int64_t k = 0; k < length_; ++k) out[k] = log_price(k, i);
  return out;
}

std::vector<double> Trace::GradientColumn(int i) const {
  std::vector<double> out(length_);
  for (int64_t k = 0; k < length_; ++k) out[k] = gradient(k, i);
  return out;
}

std::vector<double> Trace::RevenueColumn(int i) const {
  std::vector<double> out(length_);
  for (int64_t k = 0; k < length_; ++k) out[k] = revenue(k, i);
  return out;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<std::string> TraceColumns(int num_sellers) {
  std::vector<std::string> cols{"t"};
  for (int i = 0; i < num_sellers; ++i) {
    std::string s = std::to_string(i);
    for (const char* name :
         {"log_price_", "price_", "demand_", "supply_", "revenue_",
          "gradient_"}) {
      cols.push_back(name + s);
    }
  }
  return cols;
}

void WriteTraceCsv(const Trace& trace, std::ostream& out) {
  const auto cols = TraceColumns(trace.num_sellers());
  for (size_t c = 0; c < cols.size(); ++c) {
    out << (c ? "," : "") << cols[c];
  }
  out << '\n';
  for (int64_t k = 0; k < trace.length(); ++k) {
    out << (k + 1);
    for (int i = 0; i < trace.num_sellers(); ++i) {
      out << ',' << FormatDouble(trace.log_price(k, i)) << ','
          << FormatDouble(trace.price(k, i)) << ','
          << FormatDouble(trace.demand(k, i)) << ','
          << FormatDouble(trace.supply(k, i)) << ','
          << FormatDouble(trace.revenue(k, i)) << ','
          << FormatDouble(trace.gradient(k, i));
    }
    out << '\n';
  }
}

Trace ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trace CSV is empty");
  auto header = SplitCsvLine(line);
  if (header.empty() || header[0] != "t" ||
      (header.size() - 1) % kFieldsPerSeller != 0 || header.size() == 1) {
    throw ConfigError("trace CSV: unexpected header");
  }
  const int n = static_cast<int>((header.size() - 1) / kFieldsPerSeller);
  if (header != TraceColumns(n)) {
    throw ConfigError("trace CSV: unexpected header");
  }
  Trace trace(n);
  int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": expected " + std::to_string(header.size()) +
                        " fields");
    }
    RoundRecord r;
    r.t = static_cast<int64_t>(ParseDouble(fields[0], line_no));
    for (int i = 0; i < n; ++i) {
      const size_t base = 1 + static_cast<size_t>(i) * kFieldsPerSeller;
      r.log_prices.push_back(ParseDouble(fields[base], line_no));
      r.prices.push_back(ParseDouble(fields[base + 1], line_no));
      r.demands.push_back(ParseDouble(fields[base + 2], line_no));
      r.supplies.push_back(ParseDouble(fields[base + 3], line_no));
      r.revenues.push_back(ParseDouble(fields[base + 4], line_no));
      r.gradients.push_back(ParseDouble(fields[base + 5], line_no));
    }
    try {
      trace.Append(r);
    } catch (const Error& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return trace;
}

nlohmann::json MakeManifest(const Trace& trace,
                            const std::string& trace_file) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.fixed_steps) {
    steps.push_back(s ? nlohmann::json(*s) : nlohmann::json(nullptr));
  }
  return nlohmann::json{
      {"version", kVersion},
      {"seed", trace.config.seed},
      {"config", ScenarioToJson(trace.config)},
      {"initial_log_prices", trace.initial_log_prices},
      {"fixed_steps", steps},
      {"trace",
       {{"file", trace_file},
        {"rows", trace.length()},
        {"columns", TraceColumns(trace.num_sellers())}}},
  };
}

Trace LoadTrace(const std::string& csv_path,
                const std::string& manifest_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw ConfigError("cannot open trace file '" + csv_path + "'");
  Trace trace = ReadTraceCsv(csv);

  std::ifstream mf(manifest_path);
  if (!mf) {
    throw ConfigError("cannot open manifest '" + manifest_path + "'");
  }
  std::stringstream buf;
  buf << mf.rdbuf();
  nlohmann::json manifest = ParseJsonText(buf.str());
  try {
    trace.config = ScenarioFromJson(manifest.at("config"));
    trace.initial_log_prices =
        manifest.at("initial_log_prices").get<std::vector<double>>();
    trace.fixed_steps.clear();
    for (const auto& s : manifest.at("fixed_steps")) {
      trace.fixed_steps.push_back(
          s.is_null() ? std::nullopt : std::optional<double>(s.get<double>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (trace.config.num_sellers() != trace.num_sellers() ||
      static_cast<int>(trace.initial_log_prices.size()) !=
          trace.num_sellers() ||
      static_cast<int>(trace.fixed_steps.size()) != trace.num_sellers()) {
    throw ConfigError("manifest does not match the trace's seller count");
  }
  return trace;
}

}  // namespace dynprice
