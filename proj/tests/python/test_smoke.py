import json
import os
import subprocess

import numpy as np
import pytest

import mvsk


@pytest.fixture(scope="module")
def returns():
    return mvsk.synthesize(n=5, m=300, seed=3)


@pytest.fixture(scope="module")
def model(returns):
    return mvsk.build_model(returns)


def test_model_shapes(model):
    assert (model.n, model.m) == (5, 300)
    assert model.covariance.shape == (5, 5)
    assert model.coskewness.shape == (25, 5)
    assert model.cokurtosis.shape == (25, 25)


def test_objectives_match_numpy(returns, model):
    w = np.full(5, 0.2)
    y = (returns - returns.mean(axis=1, keepdims=True)).T @ w
    f = model.objectives(w)
    assert f["f1"] == pytest.approx(returns.mean(axis=1) @ w, rel=1e-12)
    assert f["f2"] == pytest.approx(y @ y / (len(y) - 1), rel=1e-10)
    assert f["f3"] == pytest.approx(np.mean(y**3), rel=1e-9, abs=1e-18)
    assert f["f4"] == pytest.approx(np.mean(y**4), rel=1e-9)


def test_projection():
    y = mvsk.project_simplex(np.array([0.5, 2.0, -1.0]))
    np.testing.assert_allclose(y, [0.0, 1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(mvsk.project_cube(np.array([3.0, -0.2]), 1.0), [1.0, -0.2])


def test_two_asset_quadratic():
    returns = np.array([[1.0, -1.0, 1.0, -1.0], [1.5, -1.5, 1.5, -1.5]])
    model = mvsk.build_model(returns)
    r = mvsk.solve(model, [0, 1, 0, 0])
    assert r["w"].sum() == pytest.approx(1.0)
    assert r["w"][0] > r["w"][1]


def test_solve_and_sparse(model):
    dense = mvsk.solve(model, [0.25, 0.25, 0.25, 0.25])
    assert dense["w"].sum() == pytest.approx(1.0, abs=1e-12)
    assert (dense["w"] >= 0).all()
    sparse = mvsk.solve_sparse(model, [0.25, 0.25, 0.25, 0.25], k=2)
    assert len(sparse["support"]) <= 2
    assert sparse["scalarized_value"] >= dense["scalarized_value"] - 1e-12


def test_classify(returns):
    lower, upper = mvsk.domain_bounds(returns)
    assert lower < 0 < upper
    assert mvsk.classify([0.5, 0.5, 0.0, 0.0], lower, upper) == "GlobalConvex"
    assert mvsk.classify([0.0, 0.0, 1.0, 0.0], lower, upper) == "Unknown"


def test_grid():
    assert mvsk.build_grid(40).shape == (11480, 4)
    g = mvsk.build_grid(3, lambda1_filter=False)
    assert g.shape == (20, 4)
    np.testing.assert_allclose(g.sum(axis=1), 1.0)


def test_sweep(model):
    doc = mvsk.sweep(model, s=3, jobs=2)
    assert doc["meta"]["count"] == len(doc["results"]) == 10
    assert doc["meta"]["failures"] == 0
    assert all(0.0 <= r["aggregate"] <= 4.0 for r in doc["results"])


def test_errors_raise_value_error(model):
    with pytest.raises(ValueError):
        mvsk.solve(model, [0.25, 0.25, 0.25, 0.25], domain="ball")
    with pytest.raises(ValueError):
        mvsk.solve(model, [1, 0, 0, 0], warm_start=np.zeros(3))


@pytest.mark.skipif("MVSK_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_round_trip(tmp_path):
    cli = os.environ["MVSK_CLI"]
    data = tmp_path / "returns.csv"
    subprocess.run([cli, "synth", "--n", "4", "--m", "200", "--seed", "2", "--out", str(data)], check=True)
    out = subprocess.run(
        [cli, "solve", "--data", str(data), "--lambda", "0.25,0.25,0.25,0.25", "--out", str(tmp_path / "s.json")],
        check=True,
        capture_output=True,
        text=True,
    )
    doc = json.loads(out.stdout)
    ret, _ = mvsk.load_returns(str(data))
    direct = mvsk.solve(mvsk.build_model(ret), [0.25, 0.25, 0.25, 0.25])
    np.testing.assert_allclose(doc["w"], direct["w"], atol=1e-12)
