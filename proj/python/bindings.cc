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

// Python bindings for the dynprice core.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dynprice/checks.h"
#include "dynprice/equilibrium.h"
#include "dynprice/errors.h"
#include "dynprice/market.h"
#include "dynprice/regret.h"
#include "dynprice/scenario.h"
#include "dynprice/simulation.h"
#include "dynprice/trace.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace dynprice {
namespace {

py::array_t<double> ToArray(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict EquilibriumToDict(const EquilibriumResult& r) {
  return py::dict("prices"_a = r.prices.prices(),
                  "log_prices"_a = r.prices.log_prices(),
                  "residual"_a = r.residual, "iterations"_a = r.iterations,
                  "clipped"_a = r.clipped, "warning"_a = r.warning);
}

std::vector<double> Column(const Trace& t, const std::string& name, int i) {
  if (i < 0 || i >= t.num_sellers()) throw ConfigError("seller out of range");
  std::vector<double> out(static_cast<size_t>(t.length()));
  for (int64_t k = 0; k < t.length(); ++k) {
    if (name == "log_price") {
      out[k] = t.log_price(k, i);
    } else if (name == "price") {
      out[k] = t.price(k, i);
    } else if (name == "demand") {
      out[k] = t.demand(k, i);
    } else if (name == "supply") {
      out[k] = t.supply(k, i);
    } else if (name == "revenue") {
      out[k] = t.revenue(k, i);
    } else if (name == "gradient") {
      out[k] = t.gradient(k, i);
    } else {
      throw ConfigError("unknown trace column '" + name + "'");
    }
  }
  return out;
}

void CheckSeller(const Trace& t, int i) {
  if (i < 0 || i >= t.num_sellers()) throw ConfigError("seller out of range");
}

}  // namespace
}  // namespace dynprice

PYBIND11_MODULE(_core, m) {
  using namespace dynprice;
  m.doc() = "Competitive dynamic pricing simulator core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<FeedbackError>(m, "FeedbackError", error.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError",
                                              error.ptr());

  py::class_<DemandModel>(m, "DemandModel")
      .def_static("ces", &DemandModel::CesFromSigma, "budget"_a, "weights"_a,
                  "sigma"_a)
      .def_static("ces_rho", &DemandModel::Ces, "budget"_a, "weights"_a,
                  "rho"_a)
      .def_static("igs", &DemandModel::Igs, "scales"_a, "elasticity"_a)
      .def_property_readonly("kind",
                             [](const DemandModel& d) {
                               return d.kind() == DemandKind::kCes ? "ces"
                                                                   : "igs";
                             })
      .def_property_readonly("num_goods", &DemandModel::num_goods);

  py::class_<PriceDomain>(m, "PriceDomain")
      .def(py::init([](double lo, double hi) {
             PriceDomain d{lo, hi};
             d.Validate();
             return d;
           }),
           "min_price"_a = 1e-2, "max_price"_a = 1e2)
      .def_readonly("min_price", &PriceDomain::min_price)
      .def_readonly("max_price", &PriceDomain::max_price);

  py::class_<SmoothingParams>(m, "SmoothingParams")
      .def(py::init([](double eps, double r, double R) {
             SmoothingParams s{eps, r, R};
             s.Validate();
             return s;
           }),
           "epsilon"_a, "revenue_lower"_a, "revenue_upper"_a)
      .def_readonly("epsilon", &SmoothingParams::epsilon)
      .def_readonly("revenue_lower", &SmoothingParams::revenue_lower)
      .def_readonly("revenue_upper", &SmoothingParams::revenue_upper)
      .def("threshold", &SmoothingParams::Threshold, "supply"_a);

  m.def(
      "demand",
      [](const DemandModel& model, std::vector<double> prices) {
        return Demand(model, PricePoint::FromPrices(std::move(prices)));
      },
      "model"_a, "prices"_a);
  m.def(
      "exact_log_gradient",
      [](const DemandModel& model, std::vector<double> prices, int i,
         double supply) {
        return ExactLogGradient(model, PricePoint::FromPrices(std::move(prices)),
                                i, supply);
      },
      "model"_a, "prices"_a, "seller"_a, "supply"_a);
  m.def("adjusted_gradient", &AdjustedGradient, "demand"_a, "supply"_a);
  m.def("smoothed_gradient", &SmoothedGradient, "demand"_a, "supply"_a,
        "elasticity"_a, "smoothing"_a);
  m.def("revenue", &Revenue, "price"_a, "demand"_a, "supply"_a);

  m.def(
      "equilibrium",
      [](const DemandModel& model, const std::vector<double>& supply,
         const PriceDomain& domain) {
        return EquilibriumToDict(Tatonnement(model, supply, {}, domain));
      },
      "model"_a, "supply"_a, "domain"_a = PriceDomain{});

  py::class_<Trace>(m, "Trace")
      .def_property_readonly("length", &Trace::length)
      .def_property_readonly("num_sellers", &Trace::num_sellers)
      .def("__len__", &Trace::length)
      .def(
          "column",
          [](const Trace& t, const std::string& name, int i) {
            return ToArray(Column(t, name, i));
          },
          "name"_a, "seller"_a)
      .def_property_readonly("config_json",
                             [](const Trace& t) {
                               return ScenarioToJson(t.config).dump();
                             })
      .def(
          "save",
          [](const Trace& t, const std::string& csv_path,
             const std::string& manifest_path) {
            std::ofstream csv(csv_path);
            WriteTraceCsv(t, csv);
            std::ofstream manifest(manifest_path);
            manifest << MakeManifest(t, csv_path).dump(2) << "\n";
            if (!csv || !manifest) throw ConfigError("cannot write trace files");
          },
          "csv_path"_a, "manifest_path"_a);

  m.def(
      "run_scenario",
      [](const std::string& config_json) {
        const ScenarioConfig config = ParseScenario(config_json);
        py::gil_scoped_release release;
        return RunScenario(config);
      },
      "config_json"_a);
  m.def("load_trace", &LoadTrace, "csv_path"_a, "manifest_path"_a);

  m.def(
      "best_fixed_price",
      [](const Trace& t, int seller, int64_t grid, const std::string& obj) {
        CheckSeller(t, seller);
        BestPriceOptions opts;
        opts.grid_intervals = grid;
        if (obj == "revenue") {
          opts.objective = BenchmarkObjective::kRevenue;
        } else if (obj != "log") {
          throw ConfigError("objective must be 'log' or 'revenue'");
        }
        const BestPrice b = BestFixedPrice(t, seller, opts);
        return py::dict("log_price"_a = b.log_price, "price"_a = b.price,
                        "value"_a = b.value, "grid_index"_a = b.grid_index);
      },
      "trace"_a, "seller"_a, "grid_intervals"_a = 10000,
      "objective"_a = "log");
  m.def(
      "static_regret",
      [](const Trace& t, int seller, double benchmark_log_price) {
        CheckSeller(t, seller);
        return ToArray(StaticRegret(t, seller, benchmark_log_price));
      },
      "trace"_a, "seller"_a, "benchmark_log_price"_a);
  m.def(
      "approx_regret",
      [](const Trace& t, int seller, double benchmark_log_price,
         double discount) {
        CheckSeller(t, seller);
        return ToArray(ApproxRegret(t, seller, benchmark_log_price, discount));
      },
      "trace"_a, "seller"_a, "benchmark_log_price"_a, "discount"_a);
  m.def(
      "dynamic_regret",
      [](const Trace& t, int seller, const std::vector<double>& path,
         double discount) {
        CheckSeller(t, seller);
        return ToArray(DynamicRegret(t, seller, path, discount));
      },
      "trace"_a, "seller"_a, "benchmark_log_prices"_a, "discount"_a);
  m.def(
      "fit_scaling_exponent",
      [](const std::vector<double>& horizons,
         const std::vector<double>& values) {
        const ScalingFit f = FitScalingExponent(horizons, values);
        return py::dict("exponent"_a = f.exponent, "intercept"_a = f.intercept,
                        "r_squared"_a = f.r_squared, "used"_a = f.used,
                        "dropped"_a = f.dropped);
      },
      "horizons"_a, "values"_a);

  m.def(
      "run_checks",
      [](const Trace& t, const std::vector<std::string>& names) {
        std::vector<Verdict> verdicts;
        {
          py::gil_scoped_release release;
          verdicts = RunChecks(t, names);
        }
        py::list out;
        for (const Verdict& v : verdicts) out.append(VerdictToJson(v).dump());
        return out;
      },
      "trace"_a, "names"_a = std::vector<std::string>{});
  m.def(
      "report_json",
      [](const Trace& t, int seller) {
        CheckSeller(t, seller);
        return ReportSummary(t, BuildReport(t, seller)).dump();
      },
      "trace"_a, "seller"_a);
}
