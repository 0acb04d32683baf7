import cmath
import math

import numpy as np
import pytest

from app.core.utils.enums import BranchLabel, Termination
from app.core.utils.errors import PoleArgument
from app.models.paths import PATH_HEADERS
from app.models.rational import ComplexRational
from app.services.descent import PathTracer
from app.services.saddle import SaddleEngine

PATH_TOL = 1e-10


def z_(text):
    return ComplexRational.parse(text)


@pytest.fixture(scope="module")
def paths_two():
    return {line.direction_label: line for line in PathTracer.trace_paths(z_("2"), 0)}


def test_four_branches(paths_two):
    assert list(paths_two) == list(BranchLabel)


def test_asymptotes_for_real_x(paths_two):
    for label in (BranchLabel.DESCENT_PLUS, BranchLabel.DESCENT_MINUS):
        eta = paths_two[label].eta_at(-20.0)
        assert abs(abs(eta) * 2 / math.pi - 1) < 0.01


def test_descent_branches_mirror(paths_two):
    up = paths_two[BranchLabel.DESCENT_PLUS]
    down = paths_two[BranchLabel.DESCENT_MINUS]
    m = min(len(up.points), len(down.points))
    assert np.max(np.abs(up.xi[:m] - down.xi[:m])) < 10 * PATH_TOL
    assert np.max(np.abs(up.eta[:m] + down.eta[:m])) < 10 * PATH_TOL


def test_ascent_runs_into_pole(paths_two):
    assert paths_two[BranchLabel.ASCENT_PLUS].termination is Termination.POLE
    assert paths_two[BranchLabel.ASCENT_MINUS].termination is Termination.MAX_LEN


def test_initial_tangent_is_vertical(config, paths_two):
    sctx = SaddleEngine.make_context(2, 0, config)
    assert PathTracer.descent_direction(sctx) == pytest.approx(0.0, abs=1e-12)
    first = paths_two[BranchLabel.DESCENT_PLUS].as_complex[:2]
    angle = cmath.phase(first[1] - first[0])
    assert abs(angle - cmath.phase(PathTracer.descent_tangent(sctx))) < 0.01
    assert abs(angle - math.pi / 2) < 0.01


@pytest.mark.parametrize("k,eta", [(0, math.pi), (-1, -math.pi)])
def test_horizontal_lines_in_unit_interval(k, eta):
    lines = PathTracer.trace_paths(z_("3/4"), k)
    for line in lines[:2]:
        assert line.direction_label.is_descent
        assert np.max(np.abs(line.eta - eta)) < 1e-8


@pytest.mark.parametrize("z,k", [("2", 0), ("3/4", 0), ("1,1", 0), ("1,1", 1), ("2/3,1/4", 0)])
def test_im_psi_held_at_saddle_value(z, k):
    for line in PathTracer.trace_paths(z_(z), k):
        zc = complex(float(line.saddle.z.real), float(line.saddle.z.imag))
        saddle = complex(float(line.saddle.s.real), float(line.saddle.s.imag))
        level = PathTracer.psi(saddle, zc).imag
        # psi is recomputed with the principal logarithm, so compare modulo 2 pi
        drift = [math.remainder(PathTracer.psi(complex(xi, eta), zc).imag - level, 2 * math.pi)
                 for xi, eta in line.points]
        assert len(drift) > 2
        assert max(abs(d) for d in drift) < PATH_TOL, line.direction_label
        assert line.im_psi_spread() < PATH_TOL


@pytest.mark.parametrize("z", ["2", "1,1", "3/4,1"])
def test_re_psi_increases_along_descent(z):
    for line in PathTracer.trace_paths(z_(z), 0):
        steps = np.diff(np.array(line.re_psi))
        if line.direction_label.is_descent:
            assert np.all(steps > 0)
        else:
            assert np.all(steps < 0)


def test_stokes_configuration_connects_saddles(config):
    lines = PathTracer.trace_paths(z_("1,1"), 0)
    assert any(line.termination is Termination.SADDLE for line in lines)


def test_descent_direction_formula(config):
    sctx = SaddleEngine.make_context(z_("1,1"), 0, config)
    z = complex(1, 1)
    assert PathTracer.descent_direction(sctx) == pytest.approx(math.pi / 2 - cmath.phase(z * (1 - z)) / 2)


@pytest.mark.parametrize("z", [complex(2, 0), complex(1, 1), complex(0.75, 0.25)])
def test_second_derivative_by_finite_difference(z):
    s = cmath.log(z / (z - 1))
    h = 1e-5
    numeric = (PathTracer.psi_prime(s + h, z) - PathTracer.psi_prime(s - h, z)) / (2 * h)
    e = cmath.exp(s)
    assert abs(numeric - (-e / (e - 1) ** 2)) <= 1e-8 * abs(numeric)


def test_rows(paths_two):
    line = paths_two[BranchLabel.DESCENT_PLUS]
    rows = line.to_rows()
    assert len(PATH_HEADERS) == 4
    assert len(rows) == len(line.points)
    assert rows[0][0] == "descent+"
    assert rows[0][1] == pytest.approx(math.log(2))


def test_pole_argument():
    with pytest.raises(PoleArgument):
        PathTracer.trace_paths(z_("1"), 0)


@pytest.mark.parametrize("z", ["3/4,1/2", "2/3,1/4"])
def test_descent_asymptotic_directions(z):
    x, y = float(z_(z).re), float(z_(z).im)
    left, right = math.pi - math.atan(y / x), math.atan(y / (1 - x))
    for line in PathTracer.trace_paths(z_(z), 0):
        if not line.direction_label.is_descent:
            continue
        assert line.termination is Termination.MAX_LEN
        tail = line.as_complex[-len(line.points) // 5:]
        angle = cmath.phase(tail[-1] - tail[0])
        expected = left if tail[-1].real < 0 else right
        assert abs(math.remainder(angle - expected, math.pi)) < 0.02, line.direction_label
