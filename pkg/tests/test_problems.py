import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ador.anisotropic import AdorConfig
from ador.dsc import DscOperator
from ador.grid import Boundary, Grid
from ador.problems import (
    BurgersProblem,
    IncompressibleProblem,
    ShearLayerParams,
    burgers1d_rhs,
    burgers2d_rhs,
    cole_exact,
    kinetic_energy,
    poisson_solve_periodic,
    shear_layer_init,
    taylor_green_exact,
    velocity_from_vorticity,
    vorticity_rhs,
)
from ador.reference import solve_burgers_reference


# {{{ Burgers


def burgers(n=41, **kwargs):
    prob = BurgersProblem.on_unit_interval(n, **kwargs)
    return prob, DscOperator(prob.grid)


def test_burgers_requires_dirichlet():
    grid = Grid.uniform(16, (0.0, 1.0), Boundary.PERIODIC)
    with pytest.raises(ValueError):
        BurgersProblem(grid)
    with pytest.raises(ValueError):
        BurgersProblem.on_unit_interval(16, reynolds=0.0)


def test_burgers1d_rhs_examples():
    prob, op = burgers(reynolds=100.0)
    (x,) = prob.grid.mesh()
    assert np.all(burgers1d_rhs(np.zeros(41), prob, op) == 0.0)

    rhs = burgers1d_rhs(np.sin(np.pi * x), prob, op)
    assert rhs[20] == pytest.approx(-math.pi**2 / 100, abs=1e-10)

    prob, op = burgers()
    rhs = burgers1d_rhs(np.sin(np.pi * x), prob, op)
    assert np.max(np.abs(rhs + math.pi / 2 * np.sin(2 * math.pi * x))) < 1e-10


def test_infinite_reynolds_disables_viscosity():
    prob, op = burgers()
    assert prob.viscosity == 0.0
    rng = np.random.default_rng(3)
    u = prob.project(rng.standard_normal(41))
    np.testing.assert_array_equal(burgers1d_rhs(u, prob, op), -u * op.diff(u, 0, 1))


def test_burgers_initial_and_projection():
    prob, _ = burgers()
    u0 = prob.initial_state()
    assert u0[0] == 0.0 and u0[-1] == 0.0
    assert u0[20] == 1.0

    prob2, _ = burgers(dim=2)
    s = prob2.initial_state()
    assert s.shape == (2, 41, 41)
    assert np.all(s[:, 0, :] == 0.0) and np.all(s[:, :, -1] == 0.0)
    x, y = prob2.grid.mesh()
    inner = (slice(1, -1), slice(1, -1))
    v = np.sin(np.pi * x) + np.sin(2 * np.pi * x) + np.sin(np.pi * y) + np.sin(2 * np.pi * y)
    np.testing.assert_allclose(s[1][inner], v[inner], atol=1e-15)


def test_burgers2d_rhs_examples():
    prob, op = burgers(dim=2)
    zero = np.zeros((41, 41))
    ru, rv = burgers2d_rhs(zero, zero, prob, op)
    assert np.all(ru == 0.0) and np.all(rv == 0.0)

    x, y = prob.grid.mesh()
    u = np.sin(np.pi * x) * np.sin(np.pi * y)
    ru, _ = burgers2d_rhs(u, u, prob, op)
    assert abs(ru[20, 20]) < 1e-12


def test_burgers2d_reduces_to_1d():
    prob2, op2 = burgers(dim=2)
    prob1, op1 = burgers()
    x, _ = prob2.grid.mesh()
    line = np.sin(np.pi * x[:, 0]) + 0.3 * np.sin(3 * np.pi * x[:, 0])
    u = np.repeat(line[:, None], 41, axis=1)
    ru, rv = burgers2d_rhs(u, np.zeros_like(u), prob2, op2)
    expected = burgers1d_rhs(line, prob1, op1)
    assert np.max(np.abs(ru - expected[:, None])) < 1e-13
    assert np.all(rv == 0.0)


# }}}


# {{{ Cole series


def test_cole_examples():
    x = np.linspace(0.0, 1.0, 21)
    np.testing.assert_allclose(cole_exact(x, 0.0, 100.0), np.sin(np.pi * x), atol=1e-13)
    u = cole_exact(np.array([0.0, 1.0]), 0.4, 100.0)
    assert np.all(u == 0.0)


def test_cole_limits():
    with pytest.raises(ValueError):
        cole_exact(0.5, 0.4, 200.0)
    with pytest.raises(ArithmeticError):
        cole_exact(0.5, 0.0, 100.0, max_modes=5)


def test_cole_heat_limit():
    # for small Re the nonlinearity is weak: u ~ sin(pi x) exp(-pi^2 t / Re),
    # with a relative correction of order Re
    x = np.linspace(0.0, 1.0, 11)

    def deviation(re):
        t = 0.01 * re
        heat = np.sin(np.pi * x) * math.exp(-math.pi**2 * t / re)
        return np.max(np.abs(cole_exact(x, t, re) - heat)) / math.exp(-math.pi**2 * t / re)

    small, smaller = deviation(0.1), deviation(0.01)
    assert smaller < 2e-4
    assert small / smaller == pytest.approx(10.0, rel=0.05)


def test_cole_against_reference():
    # a reduced version of the 1601-point cross check
    ref = solve_burgers_reference(100.0, [0.4], n=201, dt=1e-3)
    x = np.linspace(0.0, 1.0, 201)
    assert np.max(np.abs(ref[0.4] - cole_exact(x, 0.4, 100.0))) < 1e-7


def test_reference_initial():
    ref = solve_burgers_reference(10.0, [0.0], n=65)
    np.testing.assert_array_equal(ref[0.0], np.sin(np.pi * np.linspace(0, 1, 65)))


# }}}


# {{{ incompressible flow


def square(n=32, **kwargs):
    prob = IncompressibleProblem.on_square(n, **kwargs)
    return prob, DscOperator(prob.grid)


def test_incompressible_validation():
    with pytest.raises(ValueError):
        IncompressibleProblem(Grid.uniform(16, (0.0, 1.0), Boundary.DIRICHLET_ZERO, dim=2))
    with pytest.raises(ValueError):
        IncompressibleProblem.on_square(16, ador_on="pressure")
    with pytest.raises(ValueError):
        ShearLayerParams(delta=-1.0)


def test_poisson_examples():
    prob, _ = square()
    x, y = prob.grid.mesh()
    assert np.all(poisson_solve_periodic(np.zeros((32, 32)), prob.grid) == 0.0)
    psi = poisson_solve_periodic(2 * np.cos(x) * np.cos(y), prob.grid)
    assert np.max(np.abs(psi - np.cos(x) * np.cos(y))) < 1e-12
    psi = poisson_solve_periodic(np.sin(3 * x), prob.grid)
    assert np.max(np.abs(psi - np.sin(3 * x) / 9)) < 1e-12
    with pytest.raises(ValueError):
        poisson_solve_periodic(np.ones((32, 32)), prob.grid)


def test_vorticity_rhs_examples():
    prob, op = square()
    assert np.all(vorticity_rhs(np.zeros((32, 32)), prob, op) == 0.0)

    x, y = prob.grid.mesh()
    omega = 2 * np.cos(x) * np.cos(y)
    assert np.max(np.abs(vorticity_rhs(omega, prob, op))) <= 1e-10

    prob, op = square(reynolds=100.0)
    assert np.max(np.abs(vorticity_rhs(omega, prob, op) + 0.02 * omega)) <= 1e-9


@pytest.mark.parametrize("ador_on", ["velocity", "vorticity"])
def test_vorticity_rhs_mean_free(ador_on):
    prob, op = square(ador=AdorConfig("c5", gamma1=0.01), initial=ShearLayerParams(), ador_on=ador_on)
    rhs = vorticity_rhs(prob.initial_state(op), prob, op)
    assert abs(np.mean(rhs)) < 1e-15


def test_taylor_green_exact_examples():
    x = np.array([0.0, 1.0])
    y = np.array([math.pi / 2, 0.3])
    u, v, p = taylor_green_exact(x, y, 0.0, 100.0)
    np.testing.assert_array_equal(u, -np.cos(x) * np.sin(y))
    np.testing.assert_array_equal(v, np.sin(x) * np.cos(y))
    np.testing.assert_array_equal(p, -0.25 * (np.cos(2 * x) + np.cos(2 * y)))

    for t in (0.0, 3.0, 100.0):
        assert np.array_equal(taylor_green_exact(x, y, t)[0], u)

    u, _, _ = taylor_green_exact(0.0, math.pi / 2, 1.0, 100.0)
    assert u == pytest.approx(-0.980199, abs=5e-7)


def test_shear_layer_examples():
    prob, op = square(64)
    u, v, omega = shear_layer_init(ShearLayerParams(), prob.grid, op)
    assert u[0, 16] == 0.0  # y = pi / 2
    assert v[16, 5] == pytest.approx(0.05, rel=1e-15)  # x = pi / 2
    assert u[0, 0] == pytest.approx(math.tanh(-7.5), rel=1e-15)
    assert u[0, 0] == pytest.approx(-0.99999939, abs=1e-8)
    assert abs(np.mean(omega)) < 1e-15


def test_shear_layer_discontinuous():
    prob, _ = square(64)
    u, v, omega = shear_layer_init(ShearLayerParams(rho=None), prob.grid)
    assert set(np.unique(u)) <= {-1.0, 0.0, 1.0}
    assert abs(np.mean(omega)) < 1e-15
    # the vorticity peak is set by the one-cell layer width
    h = prob.grid.spacing[1]
    assert np.max(np.abs(omega)) == pytest.approx(2 / h, rel=0.05)


@given(st.integers(0, 2**32 - 1))
def test_reconstructed_velocity_divergence_free(seed):
    rng = np.random.default_rng(seed)
    prob, op = square()
    omega = rng.standard_normal((32, 32))
    omega -= np.mean(omega)
    u, v, _ = velocity_from_vorticity(omega, prob.grid, op)
    assert np.max(np.abs(op.diff(u, 0, 1) + op.diff(v, 1, 1))) <= 1e-10


def test_kinetic_energy():
    prob, op = square()
    x, y = prob.grid.mesh()
    u, v, _ = taylor_green_exact(x, y, 0.0)
    # mean of cos^2 sin^2 is 1/4 over the periodic square
    assert kinetic_energy(u, v, prob.grid) == pytest.approx(0.5 * 0.5 * (2 * math.pi) ** 2, rel=1e-14)


# }}}
