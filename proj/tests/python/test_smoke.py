import cmath
import math

import pytest

import sepcoords


def test_catalog():
    assert sepcoords.spaces() == ["m4c", "m3c", "m4r", "m31", "m22"]
    assert len(sepcoords.chart_ids("m4r")) == 2
    info = sepcoords.chart("C_M41")
    assert info["id"] == "C_M41"
    assert info["masa"]["id"]
    assert len(sepcoords.masas("m4c")) == 7
    with pytest.raises(KeyError):
        sepcoords.chart("nope")
    with pytest.raises(ValueError):
        sepcoords.chart_ids("m5")


def test_dual_path_and_metric():
    u = sepcoords.sample_domain("C_M41", seed=3)
    a = sepcoords.closed_form("C_M41", u)
    b = sepcoords.group_action("C_M41", u)
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-11 * (1 + max(map(abs, a)))
    g = sepcoords.induced_metric("C_M41", u)
    assert len(g) == 4 and all(abs(g[i][k] - g[k][i]) < 1e-12 for i in range(4) for k in range(4))
    assert sepcoords.dual_path_check("E22_a", 20)["pass"]
    assert sepcoords.reality_check("R4_cyl", 20)["pass"]


def test_laplacian_and_opsets():
    assert sepcoords.verify_laplacian("C_M43")["pass"]
    printed = sepcoords.verify_laplacian("E22_e", seed=2)
    assert not printed["pass"] and printed["discrepancies"]
    assert sepcoords.verify_laplacian("E22_e", seed=2, corrected=True)["pass"]
    assert sepcoords.verify_opset("C_4C1")["pass"]


def test_solve():
    assert len(sepcoords.recipe_charts()) == 12
    rep = sepcoords.solve("C_M43", {"zeta": 1, "alpha1": 1, "alpha2": 0, "E": 2})
    assert rep["pass"] and rep["pde_residual"] <= 1e-10
    assert sepcoords.solve("C_3C_k1", seed=4)["pass"]
    with pytest.raises(sepcoords.SeparationError):
        sepcoords.solve("C_M43", {"zeta": 1})
    idx = sepcoords.radial_index_oracle(0)
    assert not idx["printed_agrees"]


def test_special_functions():
    assert abs(sepcoords.gamma(0.5) - math.sqrt(math.pi)) < 1e-13
    assert abs(sepcoords.bessel_j(0.5, 1.0) - math.sqrt(2 / math.pi) * math.sin(1.0)) < 1e-13
    assert abs(sepcoords.kummer_m(1, 2, 1) - (math.e - 1)) < 1e-13
    assert abs(sepcoords.hyp2f1(1, 1, 2, 0.5) + math.log(0.5) / 0.5) < 1e-13
    assert abs(sepcoords.airy_ai(0) - 0.3550280538878172) < 1e-13
    assert abs(sepcoords.jacobi_p(1, 1, 2, 0) + 0.5) < 1e-15
    z = complex(0.3, 0.4)
    assert abs(sepcoords.legendre_p(1, 0, z) - z) < 1e-14
    with pytest.raises(sepcoords.SpecfunUnsupported):
        sepcoords.whittaker_w(0.2, 0.5, 1.0)
    assert all(r["pass"] for r in sepcoords.specfun_battery(seed=5, samples=10))
    assert sepcoords.PRNG == "splitmix64-v1"
    assert cmath.isfinite(sepcoords.whittaker_w(0.1j, 0.3, 1.0))
