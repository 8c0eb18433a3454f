"""Frozen regression points for the packaged examples.

These values were produced by this codebase and pinned to catch drift
from one revision to the next; they are not external references. The
engine is deterministic, so agreement is expected at float precision.
"""

import pytest

from bevsim import resources, run_case


def test_city_stop_start_regression(tmp_path):
    dest = resources.materialize_example("sedan_city", tmp_path / "case")
    result, budget, _ = run_case(dest, write_package=False)
    assert result.steps == 6000
    assert result.distance_m == pytest.approx(4815.2777777770225, rel=1e-9)
    assert result.final_soc == pytest.approx(0.8947129137218656, rel=1e-9)
    assert budget.e_net_wh == pytest.approx(444.1002583546132, rel=1e-9)
    assert budget.e_regen_wh == pytest.approx(149.27369599413046, rel=1e-9)
    # visible regen contribution
    assert budget.e_regen_wh > 0.2 * budget.e_net_wh


def test_mixed_full_range_regression(tmp_path):
    dest = resources.materialize_example("sedan_mixed", tmp_path / "case")
    result, budget, _ = run_case(dest, write_package=False)
    assert result.steps == 18000
    assert result.distance_m == pytest.approx(23197.083333346178, rel=1e-9)
    assert result.final_soc == pytest.approx(0.8629510022606103, rel=1e-9)
    assert budget.e_net_wh == pytest.approx(3112.100038704929, rel=1e-9)
    assert budget.consumption_kwh_per_100km == pytest.approx(13.4159, abs=1e-3)
