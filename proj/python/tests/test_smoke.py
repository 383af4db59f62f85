import math

import numpy as np
import pytest

import pampa


def test_presets_are_listed():
    names = pampa.list_presets()
    assert "sod" in names and "mhd_leblanc" in names
    assert "cells: 200" in pampa.config_yaml("sod")


def test_sod_run_returns_arrays():
    s = pampa.run("sod")
    assert s["completed"]
    assert s["violations"] == 0
    rho = s["averages"][:, 0]
    assert s["averages"].shape == (200, 3)
    assert s["node_values"].shape == (201, 3)
    assert rho.min() > 0.1 and rho.max() <= 1.0 + 1e-12
    assert np.all(np.diff(s["x"]) > 0)


def test_inline_config_and_overrides(tmp_path):
    text = """
name: inline
system: {kind: burgers, bounds: [-1, 2]}
domain: [-1, 1]
cells: 64
boundary: periodic
initial:
  breaks: [-0.2, 0.2]
  pieces:
    - state: [-1]
    - state: [2]
    - state: [-1]
  node_at_break: [left, right]
time: {final: 0.2, integrator: ssp_ms3, cfl: 0.1}
"""
    s = pampa.run(yaml=text, out=str(tmp_path), write_files=True, seed=3)
    assert s["completed"] and s["violations"] == 0
    u = s["averages"][:, 0]
    assert u.min() >= -1.0 and u.max() <= 2.0
    assert s["conservation_drift"] < 1e-12
    assert (tmp_path / "inline" / "cells.csv").is_file()


def test_convergence_is_third_order():
    rows = pampa.convergence("advection_smooth", [80, 160])
    assert math.isnan(rows[0]["cell_order"])
    assert rows[1]["cell_order"] > 2.8


def test_oracles():
    r = pampa.thm43(0.1)
    assert r["continuous_average"] == pytest.approx(1.1, abs=1e-12)
    assert 0.0 <= r["idp_average"] <= 1.0
    assert pampa.lf_splitting("euler", samples=5000)["passed"]
    assert not pampa.lf_splitting("burgers", samples=5000, lambda_scale=0.5)["passed"]
    results = pampa.verify("thm43")
    assert results and all(r["passed"] for r in results)


def test_errors_map_to_python():
    with pytest.raises(pampa.ConfigError):
        pampa.run("no_such_preset")
    with pytest.raises(ValueError):
        pampa.run("sod", cells=2)


def test_number_format():
    assert pampa.format_number(0.1) == "0.10000000000000001"
