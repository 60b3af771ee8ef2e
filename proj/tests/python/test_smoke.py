# Copyright 2026 The dynprice Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import dynprice

MODEL = {"kind": "ces", "budget": 2.0, "weights": [1.0, 1.0], "sigma": 2.5}
SELLER = {"algorithm": "ogd", "feedback": "adjusted",
          "schedule": {"kind": "inverse_sqrt"}}
SELLERS = [SELLER, SELLER]


def ces_demand(budget, weights, sigma, prices):
    powers = [a**sigma for a in weights]
    total = sum(w * p ** (1 - sigma) for w, p in zip(powers, prices))
    return [budget * w * p**-sigma / total for w, p in zip(powers, prices)]


def test_ces_demand_matches_formula():
    model = dynprice.DemandModel.ces(2.0, [1.0, 1.5], 2.5)
    prices = [0.7, 1.3]
    got = dynprice.demand(model, prices)
    want = ces_demand(2.0, [1.0, 1.5], 2.5, prices)
    assert got == pytest.approx(want, rel=1e-12)


def test_budget_is_spent():
    model = dynprice.DemandModel.ces(3.0, [1.0, 2.0, 0.5], 1.7)
    prices = [0.4, 2.0, 1.1]
    x = dynprice.demand(model, prices)
    assert sum(p * q for p, q in zip(prices, x)) == pytest.approx(3.0)


def test_feedback_channels():
    assert dynprice.adjusted_gradient(0.5, 1.0) == -1.0
    assert dynprice.adjusted_gradient(1.0, 1.0) == 1.0
    sp = dynprice.SmoothingParams(0.1, 1.0, 1.0)
    assert dynprice.smoothed_gradient(2.0, 1.0, 2.5, sp) == 1.0
    assert dynprice.smoothed_gradient(0.5, 1.0, 2.5, sp) == pytest.approx(-1.5)
    assert sp.threshold(1.0) == pytest.approx(math.exp(-0.1))


def test_symmetric_equilibrium():
    model = dynprice.DemandModel.ces(2.0, [1.0, 1.0], 2.5)
    eq = dynprice.equilibrium(model, [1.0, 1.0])
    assert eq["prices"] == pytest.approx([1.0, 1.0], rel=1e-8)
    assert eq["residual"] < 1e-8


def test_igs_two_goods_equilibrium_unsupported():
    model = dynprice.DemandModel.igs([1.0, 1.0], 2.5)
    with pytest.raises(dynprice.UnsupportedError):
        dynprice.equilibrium(model, [1.0, 1.0])


def test_run_scenario_and_regret(tmp_path):
    config = {"model": MODEL, "sellers": SELLERS, "horizon": 200, "seed": 3}
    trace = dynprice.run_scenario(config)
    assert len(trace) == 200
    assert trace.num_sellers == 2
    prices = trace.column("price", 0)
    demands = trace.column("demand", 0)
    supplies = trace.column("supply", 0)
    revenue = trace.column("revenue", 0)
    np.testing.assert_allclose(revenue, prices * np.minimum(demands, supplies),
                               rtol=1e-12)

    best = dynprice.best_fixed_price(trace, 0, grid_intervals=200)
    regret = dynprice.static_regret(trace, 0, best["log_price"])
    assert regret.shape == (200,)
    zero = dynprice.approx_regret(trace, 0, best["log_price"], 0.0)
    np.testing.assert_array_equal(regret, zero)

    csv = tmp_path / "trace.csv"
    manifest = tmp_path / "manifest.json"
    trace.save(str(csv), str(manifest))
    loaded = dynprice.load_trace(str(csv), str(manifest))
    np.testing.assert_array_equal(loaded.column("log_price", 1),
                                  trace.column("log_price", 1))


def test_checks_and_report():
    trace = dynprice.run_scenario({"model": MODEL, "sellers": SELLERS, "horizon": 100})
    verdicts = dynprice.run_checks(trace, ["self-consistency"])
    assert verdicts[0]["name"] == "self-consistency"
    assert verdicts[0]["pass"]
    summary = dynprice.report(trace, 1)
    assert summary["seller"] == 1


def test_bad_config_raises_config_error():
    with pytest.raises(dynprice.ConfigError, match="unknown key"):
        dynprice.run_scenario({"model": MODEL, "sellers": SELLERS, "horizon": 10, "speed": 1})
    with pytest.raises(dynprice.ConfigError):
        dynprice.run_scenario("{not json")
