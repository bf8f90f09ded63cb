import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ador.grid import (
    Boundary,
    Field,
    Grid,
    count_interior_extrema,
    error_report,
    norm,
    read_field_csv,
    total_variation,
    write_field_csv,
)

finite = st.floats(min_value=-1.0e3, max_value=1.0e3, allow_nan=False)


def test_grid_spacing():
    g = Grid.uniform(41, (0.0, 1.0), Boundary.DIRICHLET_ZERO)
    assert g.spacing == (0.025,)
    assert g.axis()[-1] == 1.0

    g = Grid.uniform(32, (0.0, 2 * math.pi), Boundary.PERIODIC, dim=2)
    assert g.shape == (32, 32)
    assert g.spacing[0] * 32 == pytest.approx(2 * math.pi)
    assert g.axis(1)[-1] < 2 * math.pi


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid.uniform(4, (0.0, 1.0), Boundary.PERIODIC)
    with pytest.raises(ValueError):
        Grid.uniform(16, (1.0, 0.0), Boundary.PERIODIC)


def test_field_checks():
    g = Grid.uniform(8, (0.0, 1.0), Boundary.DIRICHLET_ZERO)
    with pytest.raises(ValueError):
        Field(g, np.zeros(9))
    with pytest.raises(FloatingPointError):
        Field(g, np.array([0, 1, 2, np.nan, 4, 5, 6, 7.0]))

    f = Field(g, np.arange(8.0))
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_norm_examples():
    for kind in ("l1", "l2", "linf"):
        assert norm(np.zeros(5), kind) == 0.0
    assert norm(np.full(7, -2.5), "linf") == 2.5
    assert norm(np.array([3.0, -4.0]), "l2") == pytest.approx(math.sqrt(25 / 2), rel=1e-15)
    assert norm(np.array([3.0, -4.0]), "l1") == 3.5

    with pytest.raises(FloatingPointError):
        norm(np.array([1.0, np.inf]))
    with pytest.raises(ValueError):
        norm(np.ones(3), "h1")


@given(arrays(np.float64, 12, elements=finite), finite)
def test_norm_homogeneity(e, alpha):
    for kind in ("l1", "l2", "linf"):
        assert norm(alpha * e, kind) == pytest.approx(abs(alpha) * norm(e, kind), rel=1e-12, abs=1e-300)


@given(arrays(np.float64, 12, elements=finite))
def test_norm_vanishes_iff_zero(e):
    for kind in ("l1", "l2", "linf"):
        assert (norm(e, kind) == 0.0) == (not np.any(e))


def test_error_report():
    rep = error_report(0.4, np.array([1.0, 2.0]), np.array([1.0, 4.0]))
    assert rep.time == 0.4
    assert (rep.l1, rep.linf) == (1.0, 2.0)
    assert rep.l2 == pytest.approx(math.sqrt(2.0))


def test_extrema_examples():
    assert count_interior_extrema([0.0, 1.0, 2.0, 3.0]) == 0
    assert count_interior_extrema([0.0, 1.0, 0.0]) == 1
    assert count_interior_extrema(np.sin(np.pi * np.linspace(0, 1, 41))) == 1
    # plateaus are not sign changes
    assert count_interior_extrema([0.0, 1.0, 1.0, 2.0]) == 0


@given(arrays(np.float64, 20, elements=finite))
def test_extrema_of_monotone_is_zero(u):
    assert count_interior_extrema(np.sort(u)) == 0
    assert count_interior_extrema(np.sort(u)[::-1]) == 0


def test_total_variation_examples():
    assert total_variation(np.full(5, 3.0)) == 0.0
    assert total_variation([0.0, 1.0, 0.0]) == 2.0

    x = np.linspace(0, 1, 101)
    assert total_variation(np.sin(np.pi * x)) == pytest.approx(2.0, abs=1e-14)


@given(arrays(np.float64, 16, elements=finite), finite)
def test_total_variation_shift_invariance(u, c):
    assert total_variation(u + c) == pytest.approx(total_variation(u), rel=1e-9, abs=1e-9)


def test_field_csv_roundtrip(tmp_path):
    rng = np.random.default_rng(7)
    for values in (rng.standard_normal(9), rng.standard_normal((4, 6))):
        path = tmp_path / "f.csv"
        write_field_csv(path, 0.1, values)
        header = path.read_text().splitlines()[0]
        assert header.startswith("# t=0.1 nx=")
        t, back = read_field_csv(path)
        assert t == 0.1
        np.testing.assert_array_equal(back, values)
