import math

import pytest

import morrey


def test_power_function_norm():
    v = morrey.centered_norm(1, 1, 2, morrey.power_function(1, 2))
    assert v["kind"] == "finite"
    assert v["value"] == pytest.approx(2 * math.sqrt(2), rel=1e-10)


def test_annular_witness_diverges_for_p2():
    f = morrey.theorem13_function(1, 1, 1.5, 2, 4096)
    assert f.is_indicator()
    v = morrey.centered_norm(1, 1.5, 2, f)
    assert v["kind"] == "infinite"
    assert v["growth"] > 0


def test_profile_round_trip_and_exact_norm():
    chi = morrey.RadialProfile([(0, 1, 1, 0)])
    assert chi(0.5) == 1
    assert chi(2) == 0
    assert morrey.exact_norm_1d(1, 2, chi)["value"] == pytest.approx(math.sqrt(2))
    assert morrey.weak_norm(1, 1, 2, chi)["value"] == pytest.approx(math.sqrt(2))


def test_maximal_function():
    assert morrey.maximal_value(1, morrey.ball_indicator(1), 3) == pytest.approx(0.25)
    r = morrey.maximal_morrey_lower_bound(2, 16)
    assert r["ratio"] >= 1


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        morrey.centered_norm(1, 3, 2, morrey.power_function(1, 2))
    with pytest.raises(morrey.ResourceGuardError):
        morrey.theorem13_function(1, 1, 1.5, 2, 10**9)


def test_criterion_report():
    rep = morrey.run_criterion(1, quick=True)
    assert rep["id"] == "c1_exact_constant"
    assert rep["pass"]
    assert all(c["pass"] for c in rep["checks"])
