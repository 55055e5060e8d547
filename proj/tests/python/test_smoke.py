"""Smoke tests for the python bindings: every exposed operation gets one
known-value check against the C++ core."""

import math

import pytest

import sfcusp


def test_version():
    assert sfcusp.__version__


def test_arith():
    assert sfcusp.mobius(6) == 1
    assert sfcusp.mobius(12) == 0
    assert sfcusp.nu(30) == 3
    assert sfcusp.squarefree_divisors(12) == [1, 2, 3, 6]
    flags = sfcusp.squarefree_flags(10)
    assert sum(flags) == 7
    assert sfcusp.divisor_power_sum(2, 3) == 9
    # exact bigint transport: sigma_23(1000) needs > 64 bits
    assert sfcusp.divisor_power_sum(1000, 23) > 10**60


def test_arith_errors():
    with pytest.raises(sfcusp.SfcuspError):
        sfcusp.mobius(0)


def test_delta_coefficients_exact():
    tau = sfcusp.delta_coefficients(8)
    assert tau[:8] == [0, 1, -24, 252, -1472, 4830, -6048, -16744]
    e4 = sfcusp.eisenstein_coefficients(4, 3)
    assert e4 == [1, 240, 2160]


def test_newform_records():
    d = sfcusp.level1_newform(12, 200)
    assert d.weight == 12 and d.level == 1
    assert abs(d.lambda_(2) - (-24 / 2**5.5)) < 1e-12
    f, g = sfcusp.weight24_newforms(100)
    assert abs(f.lambda_(2) - g.lambda_(2)) > 1e-6
    e11 = sfcusp.eta_newform(11, 100)
    assert e11.level == 11 and e11.weight == 2

    lams = sfcusp.eigen_lambdas(12, 60, [2])
    assert len(lams) == 1
    assert abs(lams[0][1] - d.lambda_(2)) < 1e-10


def test_weights_and_sums():
    assert sfcusp.bump(0.4) == 0.0
    assert abs(sfcusp.bump(0.75) - 1.0) < 1e-12
    val, err = sfcusp.mellin(1.0 + 0.0j)
    assert val.real > 0 and err < 1e-9

    d = sfcusp.level1_newform(12, 1100)
    s, terms = sfcusp.direct_weighted_sum(d, d, 500.0)
    assert s.real >= 0 and terms > 0
    c = sfcusp.contour_sum_oracle(d, d, 100.0, 1, 2.0, 400.0, 1000)
    s100, _ = sfcusp.direct_weighted_sum(d, d, 100.0)
    assert abs(c - s100) / (1 + abs(s100)) < 1e-3


def test_threshold_ops():
    assert sfcusp.theorem_bound(12, 1, 0.0) == pytest.approx(1728.0)
    assert sfcusp.legacy_bound_log(12, 1, 1.0) == pytest.approx(2141.3, rel=0.01)
    assert math.log(sfcusp.theorem_bound(12, 1, 0.01)) < sfcusp.legacy_bound_log(12, 1, 1.0)
    d = sfcusp.level1_newform(12, 100)
    assert sfcusp.min_squarefree_nonzero(d, 50) == 1


def test_io_roundtrip(tmp_path):
    d = sfcusp.level1_newform(12, 50)
    path = str(tmp_path / "d.nf")
    sfcusp.save_newforms([d], path)
    back = sfcusp.load_newforms(path)
    assert len(back) == 1
    assert abs(back[0].lambda_(2) - d.lambda_(2)) < 1e-12
