import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ador.dsc import (
    DscKernel,
    DscOperator,
    derivative_weights,
    differentiate,
    differentiation_matrix,
    kernel_value,
)
from ador.grid import Boundary, Field, Grid

KERNEL = DscKernel()


def periodic_grid(n=32):
    return Grid.uniform(n, (0.0, 2 * math.pi), Boundary.PERIODIC)


def test_kernel_value_examples():
    assert kernel_value(0.0, KERNEL) == 1.0
    assert np.all(kernel_value(np.array([-3.0, -1.0, 1.0, 7.0]), KERNEL) == 0.0)
    assert kernel_value(0.5, KERNEL) == pytest.approx(0.628895, abs=1e-6)
    assert kernel_value(0.5, KERNEL) == pytest.approx(2 / math.pi * math.exp(-1 / (8 * 3.2**2)), rel=1e-15)


@pytest.mark.parametrize("order", [1, 2, 4])
@pytest.mark.parametrize("spacing", [1.0, 0.025])
def test_weights_against_mpmath(order, spacing):
    kernel = DscKernel(spacing=spacing)
    stencil = derivative_weights(order, kernel)
    sigma = kernel.sigma

    def delta(x):
        z = mpmath.pi * x / spacing
        s = mpmath.mpf(1) if x == 0 else mpmath.sin(z) / z
        return s * mpmath.exp(-x * x / (2 * sigma**2))

    with mpmath.workdps(40):
        for k in (0, 1, 2, 5, 17, 31):
            expected = float(mpmath.diff(delta, mpmath.mpf(-k * spacing), order))
            scale = spacing ** -(order + 1)
            assert stencil.weights[31 + k] == pytest.approx(expected, abs=1e-13 * scale)


@pytest.mark.parametrize("order", [1, 2, 4])
def test_weight_symmetry(order):
    w = derivative_weights(order, KERNEL).weights
    assert w.size == 63
    if order % 2:
        assert np.array_equal(w, -w[::-1])
        assert w[31] == 0.0
    else:
        assert np.array_equal(w, w[::-1])


@pytest.mark.parametrize("order", [1, 2, 4])
def test_weight_moments(order):
    w = derivative_weights(order, KERNEL).weights
    k = np.arange(-31, 32)
    assert abs(np.sum(w)) < 1e-12
    assert np.sum(k * w) == pytest.approx(1.0 if order == 1 else 0.0, abs=1e-12)
    if order == 2:
        assert np.sum(k**2 * w) / 2 == pytest.approx(1.0, abs=1e-10)


def test_unsupported_order():
    with pytest.raises(ValueError):
        derivative_weights(3, KERNEL)


def test_first_derivative_on_sine():
    g = periodic_grid()
    (x,) = g.mesh()
    kernel = DscKernel(spacing=g.spacing[0])
    d = differentiate(Field(g, np.sin(x)), 0, 1, kernel)
    assert np.max(np.abs(d - np.cos(x))) <= 1e-11


def test_second_derivative_on_sine():
    g = periodic_grid()
    (x,) = g.mesh()
    kernel = DscKernel(spacing=g.spacing[0])
    d = differentiate(Field(g, np.sin(x)), 0, 2, kernel)
    assert np.max(np.abs(d + np.sin(x))) <= 1e-10


def test_constant_annihilated():
    g = periodic_grid()
    op = DscOperator(g)
    for order in (1, 2, 4):
        # rounding of weights of size spacing^-order
        tol = 1e-13 * g.spacing[0] ** -order
        assert np.max(np.abs(op.diff(np.full(32, 2.5), 0, order))) < tol


def test_dirichlet_derivative_at_wall():
    g = Grid.uniform(41, (0.0, 1.0), Boundary.DIRICHLET_ZERO)
    (x,) = g.mesh()
    d = DscOperator(g).diff(np.sin(np.pi * x), 0, 1)
    assert d[0] == pytest.approx(math.pi, abs=1e-6)
    assert d[-1] == pytest.approx(-math.pi, abs=1e-6)


def test_monomial_exactness():
    # a wide Dirichlet grid so interior points see no boundary extension
    h = 0.01
    kernel = DscKernel(spacing=h)
    x = h * np.arange(-31, 32)
    x0 = 0.3
    w1 = derivative_weights(1, kernel).weights
    w2 = derivative_weights(2, kernel).weights
    assert np.sum(w1 * (x0 + x)) == pytest.approx(1.0, rel=1e-10)
    assert np.sum(w1 * (x0 + x) ** 2) == pytest.approx(2 * x0, rel=1e-10)
    assert np.sum(w2 * (x0 + x) ** 2) == pytest.approx(2.0, rel=1e-8)


@pytest.mark.parametrize("m", range(1, 9))
def test_spectral_accuracy(m):
    # every mode with m * spacing <= pi / 2 on the 32-point grid
    g = periodic_grid()
    (x,) = g.mesh()
    op = DscOperator(g)
    assert m * g.spacing[0] <= math.pi / 2 + 1e-15
    assert np.max(np.abs(op.diff(np.sin(m * x), 0, 1) - m * np.cos(m * x))) < 1e-10


def test_fourth_order_vs_two_passes():
    g = Grid.uniform(64, (0.0, 2 * math.pi), Boundary.PERIODIC)
    (x,) = g.mesh()
    op = DscOperator(g)
    f = np.exp(np.sin(x))
    direct = op.diff(f, 0, 4)
    twice = op.diff(op.diff(f, 0, 2), 0, 2)
    assert np.max(np.abs(direct - twice)) < 1e-7 * np.max(np.abs(direct))


def test_periodic_wrapping_short_axis():
    # stencil longer than the axis wraps several times
    g = Grid.uniform(8, (0.0, 2 * math.pi), Boundary.PERIODIC)
    (x,) = g.mesh()
    d = DscOperator(g).diff(np.sin(x), 0, 1)
    assert np.max(np.abs(d - np.cos(x))) < 1e-6


def test_matrix_too_small():
    with pytest.raises(ValueError):
        differentiation_matrix(2, derivative_weights(1, KERNEL), Boundary.PERIODIC)


def test_kernel_spacing_mismatch():
    g = periodic_grid()
    with pytest.raises(ValueError):
        differentiate(Field(g, np.zeros(32)), 0, 1, DscKernel(spacing=1.0))


def test_2d_axes():
    g = Grid.uniform(32, (0.0, 2 * math.pi), Boundary.PERIODIC, dim=2)
    x, y = g.mesh()
    op = DscOperator(g)
    f = np.sin(x) * np.cos(2 * y)
    assert np.max(np.abs(op.diff(f, 0, 1) - np.cos(x) * np.cos(2 * y))) < 1e-10
    assert np.max(np.abs(op.diff(f, 1, 1) + 2 * np.sin(x) * np.sin(2 * y))) < 1e-10
    assert np.max(np.abs(op.laplacian(f) + 5 * f)) < 1e-9
    assert np.max(np.abs(op.biharmonic(f) - 25 * f)) < 1e-7


vectors = arrays(np.float64, 32, elements=st.floats(-10, 10, allow_nan=False))
scalars = st.floats(-10, 10, allow_nan=False)


@given(vectors, vectors, scalars, scalars)
def test_linearity(f, g, a, b):
    op = DscOperator(periodic_grid())
    for order in (1, 2):
        lhs = op.diff(a * f + b * g, 0, order)
        rhs = a * op.diff(f, 0, order) + b * op.diff(g, 0, order)
        scale = 1.0 + np.max(np.abs(lhs))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale * 100


@given(st.floats(1e-3, 10.0), st.sampled_from([1, 2, 4]))
def test_symmetry_any_spacing(spacing, order):
    w = derivative_weights(order, DscKernel(spacing=spacing)).weights
    assert np.array_equal(w, (-1) ** order * w[::-1])
    assert np.all(np.isfinite(w))


def test_even_extension():
    g = Grid.uniform(41, (0.0, 1.0), Boundary.DIRICHLET_ZERO)
    (x,) = g.mesh()
    op = DscOperator(g)
    # cos(pi x) is even about both walls
    d = op.diff(np.cos(np.pi * x), 0, 1, parity=1)
    assert np.max(np.abs(d + np.pi * np.sin(np.pi * x))) < 1e-10
    d2 = op.diff(np.cos(np.pi * x), 0, 2, parity=1)
    assert np.max(np.abs(d2 + np.pi**2 * np.cos(np.pi * x))) < 1e-9
    with pytest.raises(ValueError):
        differentiation_matrix(8, derivative_weights(1, KERNEL), Boundary.DIRICHLET_ZERO, parity=0)
