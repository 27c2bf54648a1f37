import json
import math
from fractions import Fraction

import numpy as np
import pytest

import algdyn


def test_pcount_matches_smith_form():
    r = algdyn.pcount("2-u-v", "diag:2", exact=True)
    assert r["exact_count"] == 16
    assert r["index"] == 4
    count, torus_dim = algdyn.snf_count("2-u-v", "diag:2")
    assert count == 16 and torus_dim == r["torus_dim"]
    assert algdyn.pcount("1+u+v", "hnf:3,1,1")["torus_dim"] == 2


def test_entropy():
    value, radius = algdyn.entropy("3")
    assert abs(value - math.log(3)) < 1e-15
    value, radius = algdyn.entropy("2-u-v")
    assert abs(value - math.log(2)) < max(radius, 1e-4)


def test_unitary_and_verify():
    sol = algdyn.unitary("2-u^2+v-u*v")
    assert not sol["infinite"]
    assert len(sol["points"]) == 2
    assert sol["points"][0]["coords"][0]["min_poly"] == [2, -1, -3, -1, 2]
    for p in sol["points"]:
        assert algdyn.verify_point("2-u^2+v-u*v", p, dim=2)
    assert algdyn.unitary("u-1")["infinite"]


def test_exact_kernel_values():
    assert algdyn.harmonic_value(1, 1) == Fraction(1, 4)
    assert algdyn.g3_convolution_exact(3, 0) == Fraction(1, 16)


def test_fft_kernel_and_shells():
    k = algdyn.fft_kernel("2-u-v", "1", grid=256, box=10)
    v = k["values"]
    assert v.shape == (21, 21)
    assert abs(v[10, 10] - 0.5) < 1e-12
    assert abs(v[9, 9] - 0.25) < 1e-12
    assert abs(v[11, 10]) < 1e-12
    s = algdyn.shell_sums("2-u-v", "(u-1)^3", grid=1024, box=64)
    assert -1.7 <= s["fitted_exponent"] <= -1.3
    assert s["verdict"] == "summable-likely"


def test_cover_and_periodic():
    rng = np.random.default_rng(1)
    v = rng.integers(-4, 5, size=(81, 81))
    t = algdyn.symbolic_cover("2-u-v", "(u-1)^6", v, [-40, -40])
    assert t["values"].shape == (17, 17)
    assert ((t["values"] >= 0) & (t["values"] < 1)).all()
    assert t["identity_defect"] <= t["residual_bound"]
    w = rng.integers(-4, 5, size=(128, 128))
    a = algdyn.periodic_approx("2-u-v", "(u-1)^6", w, [-32, -32], "diag:64", 0.05)
    assert a["achieved_eps"] < 0.05
    with pytest.raises(algdyn.InputError):
        algdyn.symbolic_cover("2-u-v", "1", np.full((81, 81), 9), [-40, -40])


def test_cli_bridge():
    rc, out, err = algdyn.run_cli(["pcount", "--poly", "1", "--lattice", "diag:5", "--exact"])
    assert rc == 0
    d = json.loads(out)
    assert d["exact_count"] == 1 and d["log_count"].startswith("0.000")
    rc, out, err = algdyn.run_cli(["unitary", "--poly", "u-1"])
    assert rc == 3
    rc, out, err = algdyn.run_cli(["pcount", "--poly", "2-u-", "--lattice", "diag:2"])
    assert rc == 1 and "error" in err
