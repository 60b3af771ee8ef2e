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
"""Competitive dynamic pricing simulator."""

import json

from dynprice._core import (
    ConfigError,
    DemandModel,
    DomainError,
    Error,
    FeedbackError,
    NonConvergenceError,
    NumericalError,
    PriceDomain,
    SmoothingParams,
    Trace,
    UnsupportedError,
    adjusted_gradient,
    approx_regret,
    best_fixed_price,
    demand,
    dynamic_regret,
    equilibrium,
    exact_log_gradient,
    fit_scaling_exponent,
    load_trace,
    revenue,
    smoothed_gradient,
    static_regret,
)
from dynprice import _core

__version__ = "0.1.0"


def run_scenario(config):
    """Runs a scenario given as a dict or a JSON string."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _core.run_scenario(config)


def run_checks(trace, names=()):
    """Returns one verdict dict per property check."""
    return [json.loads(v) for v in _core.run_checks(trace, list(names))]


def report(trace, seller=0):
    """Regret summary of one seller as a dict."""
    return json.loads(_core.report_json(trace, seller))
