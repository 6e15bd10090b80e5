import math

import pytest
from hypothesis import given, strategies as st

from permsum import montecarlo as mc


def test_constants_closed_forms():
    assert mc.C_MEAN == pytest.approx(0.2838338, abs=1e-7)
    assert mc.C_PAIRED == pytest.approx(0.2869387, abs=1e-7)
    assert mc.C_UPPER == pytest.approx(0.4463495, abs=1e-7)
    assert mc.LAMBDA_TENT == pytest.approx(0.1963495, abs=1e-7)
    assert mc.LOWER_COEF == pytest.approx(0.1767767, abs=1e-7)
    # mean constant is the integral of the hit curve over sigma, halved
    assert mc.C_MEAN == pytest.approx(0.5 * (1 - (1 - math.exp(-2)) / 2), rel=1e-12)


@pytest.mark.parametrize("sampler", ["uniform", "paired"])
@pytest.mark.parametrize("seed, m", [(0, 2), (7, 50), (2**63, 13)])
def test_n2_is_exact(sampler, seed, m):
    st_ = mc.estimate_mean_ratio(2, m, seed, sampler)
    assert st_.mean == 0.75 and st_.std == 0.0 and st_.samples == m and st_.seed == seed


def test_bad_arguments():
    with pytest.raises(ValueError):
        mc.estimate_mean_ratio(1, 10, 0)
    with pytest.raises(ValueError):
        mc.estimate_mean_ratio(10, 1, 0)
    with pytest.raises(ValueError):
        mc.estimate_mean_ratio(10, 10, 0, "zigzag")
    with pytest.raises(ValueError):
        mc.estimate_hit_probability(10, 1.0, 10, 0)
    with pytest.raises(ValueError):
        mc.variance_sweep([8, 4], 10, 0)


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=2, max_size=50))
def test_summary_ci_contains_mean(values):
    s = mc.StatSummary.from_values(1, values, 0)
    assert s.ci95[0] <= s.mean <= s.ci95[1]
    assert s.std >= 0 and s.sem == pytest.approx(s.std / math.sqrt(len(values)))


def test_summary_matches_textbook():
    s = mc.StatSummary.from_values(3, [1.0, 2.0, 3.0, 4.0], 9)
    assert s.mean == 2.5
    assert s.std == pytest.approx(math.sqrt(5 / 3))


def test_determinism():
    a = mc.estimate_mean_ratio(64, 20, 5)
    b = mc.estimate_mean_ratio(64, 20, 5)
    assert a == b
    assert mc.estimate_mean_ratio(64, 20, 6) != a


def test_parallel_matches_serial():
    assert mc.estimate_mean_ratio(48, 12, 3, workers=2) == mc.estimate_mean_ratio(48, 12, 3)
    h1 = mc.estimate_hit_probability(48, 0.5, 12, 3, workers=2)
    assert h1 == mc.estimate_hit_probability(48, 0.5, 12, 3)


def test_hit_small_sigma_hits_one():
    h = mc.estimate_hit_probability(4, 0.01, 30, 1)
    assert h.s == 1 and h.summary.mean == 1.0


def test_hit_target_clamped():
    assert mc.hit_target(3, 1e-9) == 1
    assert mc.hit_target(3, 0.999) <= 6
    assert mc.hit_theory(0.5) == pytest.approx(1 - math.exp(-1))


def test_variance_n2_row_zero():
    table = mc.variance_sweep([2, 16], 10, 4)
    assert table[0] == (2, 0.0)
    assert table[1][1] > 0
    assert mc.variance_sweep([2, 16], 10, 4) == table


def test_convergence_sweep_shapes():
    assert mc.convergence_sweep([], 10, 0) == []
    (row,) = mc.convergence_sweep([40], 10, 2, "paired")
    direct = mc.estimate_mean_ratio(40, 10, 2, "paired").mean
    assert row == (40, direct, abs(direct - mc.C_PAIRED))


def test_construction_report():
    rows = {r.name: r for r in mc.construction_report(120)}
    assert {"identity", "zigzag", "tent", "block2", "block4", "block8", "uniform", "paired"} <= set(rows)
    assert rows["zigzag"].S_ratio >= 0.25
    assert all(r.lower_bound_ok for r in rows.values())
    assert {r.name for r in mc.construction_report(30)} >= {"block2"}
    assert "block4" not in {r.name for r in mc.construction_report(30)}


@pytest.mark.slow
def test_tent_report_region_constant():
    rows = {r.name: r for r in mc.construction_report(4096, block_sizes=())}
    assert abs(rows["tent"].L_ratio - mc.LAMBDA_TENT) <= 0.005
