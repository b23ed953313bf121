import json
import math
from fractions import Fraction

import pytest

import pcr3bp


def test_hansen_exact():
    assert pcr3bp.hansen(2, 2, 0, 7) == {2: Fraction(5, 2)}
    assert pcr3bp.hansen_text(2, 2, 0, 7) == "5/2 e^2"
    assert pcr3bp.hansen(0, 0, 4, 7) == {}
    assert pcr3bp.hansen(3, 1, 2, 10, "newcomb") == pcr3bp.hansen(3, 1, 2, 10, "wnuk")


def test_hansen_matches_quadrature():
    series = pcr3bp.hansen_value(1, 2, 4, 30, 0.2)
    assert abs(series - pcr3bp.oracle_hansen(1, 2, 4, 0.2)) < 1e-12


def test_fourier():
    f = pcr3bp.fourier(0, 0, 2, 2)
    assert f[(0, 0)] == -1
    assert f[(2, 0)] == Fraction(-1, 4)
    assert pcr3bp.fourier_value(2, 2, 2, 0, 0.1, 0.0) == pytest.approx(-0.0075, abs=1e-15)
    assert pcr3bp.fourier(1, 1, 2) == {}
    with pytest.raises(ValueError):
        pcr3bp.fourier(-1, 2, 4)


def test_tmk():
    assert pcr3bp.tmk(2, 2) == (Fraction(-3, 8), "A=")
    assert pcr3bp.tmk(0, 0) == (Fraction(-1, 4), "B=")


def test_kepler():
    u, r, f = pcr3bp.solve_kepler(1.0, 0.3)
    assert abs(u - 0.3 * math.sin(u) - 1.0) < 1e-13
    assert r == pytest.approx(1 - 0.3 * math.cos(u))
    with pytest.raises(pcr3bp.DomainError):
        pcr3bp.solve_kepler(0.0, 1.5)


def test_scan_and_exports():
    report = pcr3bp.scan("double", 30, 30, mode_bound=6, grid_n=128)
    data = json.loads(report.json())
    assert data["task"] == "double"
    assert data["double_count"] == report.double_count
    assert report.svg().startswith("<svg")
    assert report.json() == pcr3bp.scan("double", 30, 30, mode_bound=6, grid_n=128, threads=1).json()


def test_triangle_for_5_m2():
    entry = pcr3bp.find_triple(5, -2, order=60)
    assert entry["triple_zeros"] == []
    tri = entry["triangles"][0]
    assert abs(tri["incenter"][0] - 0.18799) < 2e-3
    assert abs(tri["incenter"][1] - 0.89970) < 2e-3
