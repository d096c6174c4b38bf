import math

import mpmath
import pytest

import degeis


def test_version():
    assert degeis.__version__ == "1.0.0"


def test_zeta_against_mpmath():
    s = complex(1.5, 50.0)
    ref = complex(mpmath.zeta(s))
    assert abs(degeis.zeta(s).value - ref) < 1e-12 * abs(ref)


def test_bessel_against_mpmath():
    nu, x = complex(0.3, 40.0), 10.0
    ref = complex(mpmath.exp(mpmath.pi * 20) * mpmath.besselk(nu, x))
    assert abs(degeis.bessel_k_scaled(nu, x) - ref) < 1e-9 * abs(ref)


def test_evaluators_agree_n2():
    z = degeis.IwasawaPoint(2, [0.3], [1.7])
    f = degeis.eisenstein(z, 1.3).value
    e = degeis.epstein(z, 1.3, 80).value
    assert abs(f - 10.853335313204158) < 1e-11
    assert abs(e - f) < 1e-7 * abs(f)


def test_unitary_line_lattice_sum_refused():
    z = degeis.IwasawaPoint(2, [0.3], [1.7])
    with pytest.raises(degeis.DivergenceError):
        degeis.epstein(z, complex(0.5, 10.0))


def test_invalid_point_raises():
    with pytest.raises(ValueError):
        degeis.IwasawaPoint(2, [0.0], [-1.0])


def test_measure_constant():
    assert degeis.measure_constant(2) == pytest.approx(3.0 / math.pi, rel=1e-15)


def test_run_command_empty_suite():
    rc, csv, _ = degeis.run_command("command = verify-identities\nstade_count = 0\nramanujan_count = 0\n")
    assert rc == 0
    lines = csv.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("# degeis version=1.0.0 config_hash=")


def test_config_round_trip():
    text = degeis.canonical_config("seed = 5\nt_grid = 20, 40.5\n")
    assert degeis.canonical_config(text) == text
    with pytest.raises(degeis.ConfigError):
        degeis.canonical_config("bogus = 1\n")
