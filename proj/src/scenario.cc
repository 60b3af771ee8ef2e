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

#include "dynprice/scenario.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dynprice/errors.h"

namespace dynprice {
namespace {

using nlohmann::json;

// Reads fields of a JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool Has(const std::string& key) {
    known_.insert(key);
    return obj_.contains(key) && !obj_.at(key).is_null();
  }

  const json& Get(const std::string& key) {
    if (!Has(key)) throw ConfigError(Path(key) + ": required field missing");
    return obj_.at(key);
  }

  double Number(const std::string& key) {
    const json& v = Get(key);
    if (!v.is_number()) throw ConfigError(Path(key) + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(Path(key) + ": must be finite");
    return d;
  }

  double Number(const std::string& key, double fallback) {
    return Has(key) ? Number(key) : fallback;
  }

  int64_t Integer(const std::string& key) {
    const json& v = Get(key);
    if (v.is_number_integer()) return v.get<int64_t>();
    if (v.is_number_float()) {
      double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9e15) {
        return static_cast<int64_t>(d);
      }
    }
    throw ConfigError(Path(key) + ": expected an integer");
  }

  uint64_t Unsigned(const std::string& key, uint64_t fallback) {
    if (!Has(key)) return fallback;
    const json& v = obj_.at(key);
    if (v.is_number_unsigned()) return v.get<uint64_t>();
    if (v.is_number_integer() && v.get<int64_t>() >= 0) {
      return static_cast<uint64_t>(v.get<int64_t>());
    }
    throw ConfigError(Path(key) + ": expected a non-negative integer");
  }

  std::string String(const std::string& key) {
    const json& v = Get(key);
    if (!v.is_string()) throw ConfigError(Path(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::string String(const std::string& key, const std::string& fallback) {
    return Has(key) ? String(key) : fallback;
  }

  std::vector<double> Numbers(const std::string& key) {
    const json& v = Get(key);
    if (!v.is_array()) throw ConfigError(Path(key) + ": expected an array");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) {
        throw ConfigError(Path(key) + ": expected an array of numbers");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  // Call after all reads.
  void Finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!known_.count(key)) throw ConfigError(Path(key) + ": unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> known_;
};

// Wraps parse errors of enum names with the field path.
template <typename F>
auto ParseName(const std::string& path, F&& parse, const std::string& name) {
  try {
    return parse(name);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

DemandModel ModelFromJson(const json& doc) {
  ObjectReader r(doc, "model");
  std::string kind = r.String("kind");
  DemandModel model = DemandModel::CesFromSigma(2.0, {1.0, 1.0}, 2.5);
  try {
    if (kind == "ces") {
      double budget = r.Number("budget");
      std::vector<double> weights = r.Numbers("weights");
      bool has_sigma = r.Has("sigma");
      bool has_rho = r.Has("rho");
      if (has_sigma == has_rho) {
        throw ConfigError("model: give exactly one of sigma and rho");
      }
      model = has_sigma
                  ? DemandModel::CesFromSigma(budget, weights, r.Number("sigma"))
                  : DemandModel::Ces(budget, weights, r.Number("rho"));
    } else if (kind == "igs") {
      model = DemandModel::Igs(r.Numbers("scales"), r.Number("elasticity"));
    } else {
      throw ConfigError("model.kind: unknown model kind '" + kind +
                        "' (expected ces or igs)");
    }
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    if (msg.rfind("model", 0) == 0) throw;
    throw ConfigError("model: " + msg);
  }
  r.Finish();
  return model;
}

json ModelToJson(const DemandModel& model) {
  if (model.kind() == DemandKind::kCes) {
    return json{{"kind", "ces"},
                {"budget", model.budget()},
                {"weights", model.weights()},
                {"sigma", model.sigma()}};
  }
  return json{{"kind", "igs"},
              {"scales", model.scales()},
              {"elasticity", model.elasticity()}};
}

SellerConfig SellerFromJson(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  SellerConfig s;
  if (r.Has("algorithm")) {
    s.algorithm =
        ParseName(r.Path("algorithm"), ParseAlgorithm, r.String("algorithm"));
  }
  if (r.Has("feedback")) {
    s.feedback = ParseName(r.Path("feedback"), ParseFeedbackChannel,
                           r.String("feedback"));
  }
  if (r.Has("schedule")) {
    ObjectReader sr(r.Get("schedule"), r.Path("schedule"));
    s.schedule = ParseName(sr.Path("kind"), ParseScheduleKind,
                           sr.String("kind", "inverse_sqrt"));
    if (sr.Has("step")) s.step = sr.Number("step");
    if (sr.Has("lipschitz")) s.lipschitz = sr.Number("lipschitz");
    sr.Finish();
  }
  if (r.Has("initial_price")) s.initial_price = r.Number("initial_price");
  r.Finish();
  return s;
}

json SellerToJson(const SellerConfig& s) {
  json schedule{{"kind", ScheduleKindName(s.schedule)}};
  if (s.step) schedule["step"] = *s.step;
  if (s.lipschitz) schedule["lipschitz"] = *s.lipschitz;
  json out{{"algorithm", AlgorithmName(s.algorithm)},
           {"feedback", FeedbackChannelName(s.feedback)},
           {"schedule", schedule}};
  if (s.initial_price) out["initial_price"] = *s.initial_price;
  return out;
}

std::string Describe(const nlohmann::json::exception& e) {
  std::string what = e.what();
  // nlohmann messages start with "[json.exception.<kind>.<id>] ".
  auto pos = what.find("] ");
  return pos == std::string::npos ? what : what.substr(pos + 2);
}

}  // namespace

std::string_view FeedbackChannelName(FeedbackChannel channel) {
  switch (channel) {
    case FeedbackChannel::kExact:
      return "exact";
    case FeedbackChannel::kAdjusted:
      return "adjusted";
    case FeedbackChannel::kSmoothed:
      return "smoothed";
  }
  return "unknown";
}

FeedbackChannel ParseFeedbackChannel(std::string_view name) {
  if (name == "exact") return FeedbackChannel::kExact;
  if (name == "adjusted") return FeedbackChannel::kAdjusted;
  if (name == "smoothed") return FeedbackChannel::kSmoothed;
  throw ConfigError("unknown feedback channel '" + std::string(name) +
                    "' (expected exact, adjusted or smoothed)");
}

double ScenarioConfig::FeedbackElasticity() const {
  return feedback_elasticity ? *feedback_elasticity : model.elasticity_bound();
}

StepSchedule ScenarioConfig::SellerSchedule(int seller) const {
  const SellerConfig& s = sellers.at(seller);
  ScheduleParams params;
  params.horizon = horizon;
  params.num_sellers = num_sellers();
  params.lipschitz = s.lipschitz;
  params.elasticity = FeedbackElasticity();
  if (smoothing) params.smoothing_band = smoothing->band();
  params.step = s.step;
  try {
    return MakeSchedule(s.schedule, params);
  } catch (const ConfigError& e) {
    throw ConfigError("sellers." + std::to_string(seller) +
                      ".schedule: " + e.what());
  }
}

void ScenarioConfig::Validate() const {
  const int n = model.num_goods();
  if (horizon < 0) throw ConfigError("horizon: must be >= 0");
  domain.Validate();
  if (num_sellers() != n) {
    throw ConfigError("sellers: need one entry per good (" +
                      std::to_string(n) + "), got " +
                      std::to_string(num_sellers()));
  }
  if (feedback_elasticity &&
      !(std::isfinite(*feedback_elasticity) && *feedback_elasticity > 1.0)) {
    throw ConfigError("feedback_elasticity: must be > 1");
  }
  if (smoothing) {
    try {
      smoothing->Validate();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("smoothing: ") + e.what());
    }
    if (!(smoothing->discount() < 1.0)) {
      throw ConfigError(
          "smoothing: epsilon * revenue_upper must be < 1 (got " +
          std::to_string(smoothing->discount()) + ")");
    }
  }
  for (int i = 0; i < num_sellers(); ++i) {
    const SellerConfig& s = sellers[i];
    const std::string path = "sellers." + std::to_string(i);
    if (s.feedback == FeedbackChannel::kExact &&
        model.kind() != DemandKind::kIgs) {
      throw ConfigError(path + ".feedback: exact feedback requires the igs model");
    }
    if (s.feedback == FeedbackChannel::kSmoothed && !smoothing) {
      throw ConfigError(path + ".feedback: smoothed feedback requires smoothing");
    }
    if (s.initial_price && !domain.Contains(*s.initial_price)) {
      throw ConfigError(path + ".initial_price: outside the price domain");
    }
    SellerSchedule(i);
  }
  if (!(initial_jitter >= 0.0 && std::isfinite(initial_jitter))) {
    throw ConfigError("initial_jitter: must be >= 0");
  }
  if (static_cast<int>(supply.base.size()) != n) {
    throw ConfigError("supply.base: need one entry per good");
  }
  for (double w : supply.base) {
    if (!(w > 0.0 && std::isfinite(w))) {
      throw ConfigError("supply.base: supplies must be positive");
    }
  }
  if (supply.kind == SupplyKind::kDrift) {
    if (static_cast<int>(supply.log_ratio.size()) != n) {
      throw ConfigError("supply.log_ratio: need one entry per good");
    }
    for (double d : supply.log_ratio) {
      if (!std::isfinite(d)) {
        throw ConfigError("supply.log_ratio: must be finite");
      }
    }
  }
  if (supply.kind == SupplyKind::kRandomWalk &&
      !(supply.step_cap >= 0.0 && std::isfinite(supply.step_cap))) {
    throw ConfigError("supply.step_cap: negative step cap");
  }
  if (output.trace.empty() || output.manifest.empty()) {
    throw ConfigError("output: file names must be non-empty");
  }
}

ScenarioConfig ScenarioFromJson(const json& doc) {
  ObjectReader r(doc, "");
  ScenarioConfig c;
  c.model = ModelFromJson(r.Get("model"));
  c.horizon = r.Integer("horizon");
  if (r.Has("price_domain")) {
    ObjectReader dr(r.Get("price_domain"), "price_domain");
    c.domain.min_price = dr.Number("min", c.domain.min_price);
    c.domain.max_price = dr.Number("max", c.domain.max_price);
    dr.Finish();
  }
  if (r.Has("smoothing")) {
    ObjectReader sr(r.Get("smoothing"), "smoothing");
    SmoothingParams sp;
    sp.epsilon = sr.Number("epsilon");
    sp.revenue_lower = sr.Number("revenue_lower");
    sp.revenue_upper = sr.Number("revenue_upper");
    sr.Finish();
    c.smoothing = sp;
  }
  if (r.Has("feedback_elasticity")) {
    c.feedback_elasticity = r.Number("feedback_elasticity");
  }
  if (r.Has("supply")) {
    ObjectReader sr(r.Get("supply"), "supply");
    c.supply.kind = ParseName("supply.kind", ParseSupplyKind,
                              sr.String("kind", "static"));
    c.supply.base = sr.Has("base")
                        ? sr.Numbers("base")
                        : std::vector<double>(c.model.num_goods(), 1.0);
    if (sr.Has("log_ratio")) c.supply.log_ratio = sr.Numbers("log_ratio");
    c.supply.step_cap = sr.Number("step_cap", 0.0);
    sr.Finish();
  } else {
    c.supply.base.assign(c.model.num_goods(), 1.0);
  }
  {
    const json& sellers = r.Get("sellers");
    if (!sellers.is_array()) throw ConfigError("sellers: expected an array");
    c.sellers.clear();
    for (size_t i = 0; i < sellers.size(); ++i) {
      c.sellers.push_back(
          SellerFromJson(sellers[i], "sellers." + std::to_string(i)));
    }
  }
  c.seed = r.Unsigned("seed", 0);
  c.initial_jitter = r.Number("initial_jitter", 0.0);
  if (r.Has("output")) {
    ObjectReader orr(r.Get("output"), "output");
    c.output.trace = orr.String("trace", c.output.trace);
    c.output.manifest = orr.String("manifest", c.output.manifest);
    orr.Finish();
  }
  r.Finish();
  c.Validate();
  return c;
}

json ScenarioToJson(const ScenarioConfig& c) {
  json doc;
  doc["model"] = ModelToJson(c.model);
  doc["horizon"] = c.horizon;
  doc["price_domain"] = {{"min", c.domain.min_price},
                         {"max", c.domain.max_price}};
  if (c.smoothing) {
    doc["smoothing"] = {{"epsilon", c.smoothing->epsilon},
                        {"revenue_lower", c.smoothing->revenue_lower},
                        {"revenue_upper", c.smoothing->revenue_upper}};
  }
  if (c.feedback_elasticity) doc["feedback_elasticity"] = *c.feedback_elasticity;
  json supply{{"kind", SupplyKindName(c.supply.kind)}, {"base", c.supply.base}};
  if (c.supply.kind == SupplyKind::kDrift) {
    supply["log_ratio"] = c.supply.log_ratio;
  }
  if (c.supply.kind == SupplyKind::kRandomWalk) {
    supply["step_cap"] = c.supply.step_cap;
  }
  doc["supply"] = supply;
  doc["sellers"] = json::array();
  for (const SellerConfig& s : c.sellers) {
    doc["sellers"].push_back(SellerToJson(s));
  }
  doc["seed"] = c.seed;
  doc["initial_jitter"] = c.initial_jitter;
  doc["output"] = {{"trace", c.output.trace},
                   {"manifest", c.output.manifest}};
  return doc;
}

json ParseJsonText(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Recover line and column from the byte offset.
    size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    if (offset > text.size()) offset = text.size();
    size_t line = 1;
    size_t column = 1;
    for (size_t k = 0; k < offset; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("malformed JSON at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " +
                      Describe(e));
  }
}

ScenarioConfig ParseScenario(std::string_view text) {
  json doc = ParseJsonText(text);
  try {
    return ScenarioFromJson(doc);
  } catch (const json::exception& e) {
    throw ConfigError(Describe(e));
  }
}

void ApplyOverride(json& doc, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) +
                      "': expected key.path=value");
  }
  std::string key(assignment.substr(0, eq));
  std::string raw(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &doc;
  size_t start = 0;
  while (true) {
    size_t dot = key.find('.', start);
    std::string part = key.substr(start, dot == std::string::npos
                                             ? std::string::npos
                                             : dot - start);
    if (part.empty()) {
      throw ConfigError("override '" + key + "': empty path component");
    }
    bool last = dot == std::string::npos;
    if (node->is_array()) {
      size_t index = 0;
      try {
        size_t used = 0;
        index = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ConfigError("override '" + key + "': '" + part +
                          "' is not an array index");
      }
      if (index >= node->size()) {
        throw ConfigError("override '" + key + "': index " + part +
                          " out of range");
      }
      node = &(*node)[index];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) {
        throw ConfigError("override '" + key + "': cannot descend into a " +
                          std::string(node->type_name()));
      }
      node = &(*node)[part];
    }
    if (last) break;
    start = dot + 1;
  }
  *node = value;
}

}  // namespace dynprice
