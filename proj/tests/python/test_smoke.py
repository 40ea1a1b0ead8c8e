# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python extension surface."""

import math

import pytest

import hydra_ts as ht


def test_kernel_ops():
    assert ht.suffix_products([0.5, 0.5]) == [0.5, 1.0]
    assert ht.matvec([[1.0, 0.0], [0.0, 1.0]], [3.0, 4.0]) == [3.0, 4.0]
    assert ht.outer([-1.0], [1.0]) == [[-1.0]]
    roundtrip = ht.emap_log(ht.emap_exp([[0.3, -2.0]]))
    assert abs(roundtrip[0][0] - 0.3) < 1e-12
    with pytest.raises(Exception):
        ht.emap_log([[0.0]])


def test_generate_sar_is_deterministic():
    a = ht.generate_sar(1, 0, 1, [0.5], [], 0.3, 7, 2, 16)
    b = ht.generate_sar(1, 0, 1, [0.5], [], 0.3, 7, 2, 16)
    assert a == b
    decay = ht.generate_sar(1, 0, 1, [0.5], [], 0.0, 0, 1, 10, deterministic_init=[1.0])
    for k, x in enumerate(decay[0]):
        assert abs(x - 0.5**k) < 1e-12


def test_1d_chunked_matches_exact():
    m0 = [[0.0, 0.1], [-0.2, 0.3]]
    keys = [[1.0, 0.5], [0.2, -0.4], [0.9, 0.1], [-0.3, 0.8]]
    vals = [[0.5, 1.0], [1.2, -0.1], [0.0, 0.7], [0.4, 0.4]]
    alphas = [0.9, 0.8, 1.0, 0.7]
    etas = [0.05, 0.1, 0.02, 0.08]
    exact = ht.run_sequence(m0, keys, vals, alphas, etas)
    chunked = ht.run_chunked(m0, keys, vals, alphas, etas, 1)
    closed = ht.run_chunked_closed_form(m0, keys, vals, alphas, etas, 2)
    for t in range(4):
        for a in range(2):
            for b in range(2):
                assert abs(exact[t][a][b] - chunked[t][a][b]) < 1e-12
    assert len(closed) == 4


def test_golden_grid():
    series = [[1, 2, 3, 4, 5, 6], [2, 3, 4, 5, 6, 7], [3, 4, 5, 6, 7, 8]]
    gates = [0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01]
    h1, h2 = ht.run_grid_scalar(series, gates)
    assert abs(h1[0][0] - 1.020) < 5e-3
    assert abs(h1[2][5] - 2.023) < 5e-3
    assert abs(h2[1][0] - 1.105) < 5e-3

    # 1x1 chunks with per-head anchors differ from the worked numbers
    c1, _ = ht.run_grid_chunked_scalar(series, gates, 1, 1)
    assert abs(c1[0][0] - 1.020) < 5e-3


def test_metrics():
    assert ht.smape([1.0], [3.0]) == pytest.approx(100.0)
    assert ht.mase([5.0], [7.0], [1.0, 2.0, 3.0, 4.0], 1) == pytest.approx(2.0)
    assert ht.owa(5.0, 1.0, 10.0, 2.0) == pytest.approx(0.5)
    pers, seasonal = ht.naive_baselines([1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 3, 3)
    assert pers == [6.0, 6.0, 6.0]
    assert seasonal == [4.0, 5.0, 6.0]


def test_forecast_beats_persistence_on_seeded_sar():
    series = ht.generate_sar(2, 1, 12, [0.6, 0.2], [0.15], 0.1, 42, 4, 120)
    report = ht.forecast(series, 96, 24, seasonal_period=12)
    assert report["model"]["mse"] < report["persistence"]["mse"]
    assert len(report["forecasts"]) == 4
    assert len(report["forecasts"][0]) == 24
    assert math.isfinite(report["model"]["mae"])
