r"""
Model problems: Burgers' equation in one and two dimensions and planar
incompressible flow in vorticity-streamfunction form.

.. autoclass:: BurgersProblem
.. autoclass:: ShearLayerParams
.. autoclass:: IncompressibleProblem

.. autofunction:: burgers1d_rhs
.. autofunction:: burgers2d_rhs
.. autofunction:: cole_exact
.. autofunction:: poisson_solve_periodic
.. autofunction:: velocity_from_vorticity
.. autofunction:: vorticity_rhs
.. autofunction:: taylor_green_exact
.. autofunction:: shear_layer_init
.. autofunction:: kinetic_energy
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import mpmath
import numpy as np

from ador.anisotropic import AdorConfig, ador_term
from ador.dsc import DscOperator
from ador.grid import Boundary, Grid

INF = math.inf


def _inverse_reynolds(reynolds: float) -> float:
    if not reynolds > 0:
        raise ValueError(f"Reynolds number must be positive: {reynolds}")
    return 0.0 if math.isinf(reynolds) else 1.0 / reynolds


# {{{ Burgers


@dataclass(frozen=True)
class BurgersProblem:
    """Burgers' equation on ``[0, 1]^d`` with homogeneous Dirichlet walls.

    The initial data is :math:`\\sin(\\pi x)` in 1D and, in 2D,

    .. math::

        u = \\sin \\pi x \\sin \\pi y, \\qquad
        v = \\sin \\pi x + \\sin 2\\pi x + \\sin \\pi y + \\sin 2\\pi y.
    """

    grid: Grid
    reynolds: float = INF
    ador: AdorConfig = field(default_factory=AdorConfig)

    def __post_init__(self) -> None:
        if self.grid.boundary is not Boundary.DIRICHLET_ZERO:
            raise ValueError("Burgers problems use homogeneous Dirichlet boundaries")
        _inverse_reynolds(self.reynolds)

    @classmethod
    def on_unit_interval(cls, n: int, dim: int = 1, **kwargs) -> "BurgersProblem":
        grid = Grid.uniform(n, (0.0, 1.0), Boundary.DIRICHLET_ZERO, dim=dim)
        return cls(grid=grid, **kwargs)

    @property
    def viscosity(self) -> float:
        return _inverse_reynolds(self.reynolds)

    def initial_state(self) -> np.ndarray:
        if self.grid.dim == 1:
            (x,) = self.grid.mesh()
            return self.project(np.sin(np.pi * x))

        x, y = self.grid.mesh()
        u = np.sin(np.pi * x) * np.sin(np.pi * y)
        v = (np.sin(np.pi * x) + np.sin(2 * np.pi * x)) + (np.sin(np.pi * y) + np.sin(2 * np.pi * y))
        return self.project(np.stack([u, v]))

    def project(self, state: np.ndarray) -> np.ndarray:
        """Reimpose the zero wall values."""
        state = np.array(state, dtype=np.float64)
        if self.grid.dim == 1:
            state[..., 0] = 0.0
            state[..., -1] = 0.0
        else:
            state[..., 0, :] = 0.0
            state[..., -1, :] = 0.0
            state[..., :, 0] = 0.0
            state[..., :, -1] = 0.0
        return state

    def rhs(self, op: DscOperator):
        """Right-hand side closure acting on the stacked state."""
        if self.grid.dim == 1:
            return lambda u: burgers1d_rhs(u, self, op)

        def rhs2d(state: np.ndarray) -> np.ndarray:
            return np.stack(burgers2d_rhs(state[0], state[1], self, op))

        return rhs2d


def burgers1d_rhs(u: np.ndarray, prob: BurgersProblem, op: DscOperator) -> np.ndarray:
    r""":math:`-u u_x + \mathrm{Re}^{-1} u_{xx}` plus the ADOR terms."""
    u_x = op.diff(u, 0, 1)
    result = -u * u_x
    if prob.viscosity:
        result = result + prob.viscosity * op.diff(u, 0, 2)
    if prob.ador.enabled:
        result = result + ador_term(u, prob.ador, op)
    return result


def burgers2d_rhs(
    u: np.ndarray, v: np.ndarray, prob: BurgersProblem, op: DscOperator
) -> Tuple[np.ndarray, np.ndarray]:
    results = []
    for w in (u, v):
        w_x, w_y = op.gradient(w)
        r = -(u * w_x + v * w_y)
        if prob.viscosity:
            r = r + prob.viscosity * op.laplacian(w)
        if prob.ador.enabled:
            r = r + ador_term(w, prob.ador, op)
        results.append(r)
    return results[0], results[1]


#: working precision (decimal digits) of the Cole series; the denominator
#: drops to about exp(-Re / pi) relative to its mean near x = 1
COLE_DPS = 45


@lru_cache(maxsize=16)
def _cole_coefficients(reynolds: float, nmodes: int, npanels: int = 4096, dps: int = COLE_DPS):
    """Cosine coefficients of ``exp(-Re (1 - cos(pi x)) / (2 pi))`` on ``[0, 1]``.

    Composite trapezoid rule in extended precision; the integrand is smooth
    and even about both endpoints, so the rule converges spectrally.
    """
    with mpmath.workdps(dps):
        kappa = mpmath.mpf(reynolds) / (2 * mpmath.pi)
        # cos(pi m / npanels) for m in [0, 2 npanels)
        table = [mpmath.cospi(mpmath.mpf(m) / npanels) for m in range(2 * npanels)]
        f = [mpmath.exp(kappa * (table[j] - 1)) for j in range(npanels + 1)]
        f[0] /= 2
        f[-1] /= 2

        period = 2 * npanels
        coeffs = []
        for n in range(nmodes + 1):
            acc = mpmath.fsum(f[j] * table[(n * j) % period] for j in range(npanels + 1))
            coeffs.append(acc * (1 if n == 0 else 2) / npanels)
    return tuple(coeffs)


def cole_exact(x, t: float, reynolds: float, tol: float = 1.0e-15, max_modes: int = 200) -> np.ndarray:
    r"""Cole's series solution of Burgers' equation with :math:`u(x, 0) = \sin \pi x`.

    .. math::

        u(x, t) = \frac{2 \pi}{\mathrm{Re}}
            \frac{\sum_{n \ge 1} n a_n e^{-n^2 \pi^2 t / \mathrm{Re}} \sin n \pi x}
                 {a_0 + \sum_{n \ge 1} a_n e^{-n^2 \pi^2 t / \mathrm{Re}} \cos n \pi x}

    The denominator drops to about :math:`e^{-\mathrm{Re} / \pi}` times
    :math:`a_0` near :math:`x = 1`, so the sums cancel badly in double
    precision; coefficients and sums are evaluated with :mod:`mpmath` and
    the series is cut once its terms fall below *tol* times the smallest
    denominator.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative: {t}")
    if not 0 < reynolds <= 100:
        raise ValueError(f"the series is only usable for 0 < Re <= 100: got {reynolds}")

    x = np.asarray(x, dtype=np.float64)
    a = _cole_coefficients(float(reynolds), max_modes)

    with mpmath.workdps(COLE_DPS):
        rate = mpmath.pi**2 * mpmath.mpf(t) / reynolds
        c = [a[n] * mpmath.exp(-(n**2) * rate) for n in range(max_modes + 1)]

        # theta(x, t) is smallest at x = 1 (it solves the heat equation with
        # data decreasing in x)
        den_min = mpmath.fsum(c[n] * (-1) ** n for n in range(max_modes + 1))
        if not den_min > 0:
            raise ArithmeticError(f"Cole series denominator is not positive: {den_min}")

        bound = tol * den_min
        cut = max((n for n in range(1, max_modes + 1) if n * abs(c[n]) >= bound), default=0) + 1
        if cut > max_modes:
            raise ArithmeticError(
                f"Cole series did not converge to {tol:.1e} within {max_modes} modes"
            )

        u = np.empty(x.size)
        for i, xi in enumerate(x.flat):
            if xi == 0.0 or xi == 1.0:
                u[i] = 0.0
                continue
            theta = mpmath.pi * mpmath.mpf(float(xi))
            cos1 = mpmath.cos(theta)
            # cos(n theta), sin(n theta) by the Chebyshev recurrence
            cn_prev, cn = mpmath.mpf(1), cos1
            sn_prev, sn = mpmath.mpf(0), mpmath.sin(theta)
            num = mpmath.mpf(0)
            den = c[0]
            for n in range(1, cut):
                num += n * c[n] * sn
                den += c[n] * cn
                cn_prev, cn = cn, 2 * cos1 * cn - cn_prev
                sn_prev, sn = sn, 2 * cos1 * sn - sn_prev
            u[i] = float(2 * mpmath.pi / reynolds * num / den)

    return u.reshape(x.shape)


# }}}


# {{{ incompressible flow


@dataclass(frozen=True)
class ShearLayerParams:
    """Double shear layer (periodic jet) parameters.

    ``rho=None`` selects the discontinuous limit.
    """

    rho: Optional[float] = math.pi / 15.0
    delta: float = 0.05

    def __post_init__(self) -> None:
        if self.rho is not None and not self.rho > 0:
            raise ValueError(f"'rho' must be positive: {self.rho}")
        if self.delta < 0:
            raise ValueError(f"'delta' must be non-negative: {self.delta}")

    @property
    def discontinuous(self) -> bool:
        return self.rho is None


@dataclass(frozen=True)
class IncompressibleProblem:
    """Planar incompressible flow on the periodic square ``[0, 2 pi]^2``.

    The state is the vorticity :math:`\\omega = v_x - u_y`; the
    streamfunction solves :math:`-\\nabla^2 \\psi = \\omega` with
    :math:`u = \\psi_y, v = -\\psi_x`.

    :attr initial: ``"taylor_green"`` or a :class:`ShearLayerParams`.
    :attr ador_on: ``"velocity"`` adds the ADOR term to both momentum
        equations and takes its curl; ``"vorticity"`` applies it to the
        vorticity directly.
    """

    grid: Grid
    reynolds: float = INF
    ador: AdorConfig = field(default_factory=AdorConfig)
    initial: object = "taylor_green"
    ador_on: str = "velocity"

    def __post_init__(self) -> None:
        if self.grid.boundary is not Boundary.PERIODIC or self.grid.dim != 2:
            raise ValueError("incompressible problems need a periodic 2D grid")
        if self.ador_on not in ("velocity", "vorticity"):
            raise ValueError(f"'ador_on' must be 'velocity' or 'vorticity': {self.ador_on!r}")
        _inverse_reynolds(self.reynolds)

    @classmethod
    def on_square(cls, n: int, **kwargs) -> "IncompressibleProblem":
        grid = Grid.uniform(n, (0.0, 2.0 * math.pi), Boundary.PERIODIC, dim=2)
        return cls(grid=grid, **kwargs)

    @property
    def viscosity(self) -> float:
        return _inverse_reynolds(self.reynolds)

    def initial_state(self, op: DscOperator) -> np.ndarray:
        if isinstance(self.initial, ShearLayerParams):
            return shear_layer_init(self.initial, self.grid, op)[2]
        if self.initial == "taylor_green":
            x, y = self.grid.mesh()
            return 2.0 * np.cos(x) * np.cos(y)

        raise ValueError(f"unknown initial condition: {self.initial!r}")

    def rhs(self, op: DscOperator):
        return lambda omega: vorticity_rhs(omega, self, op)


def _wavenumbers(grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
    ks = []
    for n, (a, b) in zip(grid.n, grid.extent):
        ks.append(2.0 * np.pi / (b - a) * np.fft.fftfreq(n, d=1.0 / n))
    return np.meshgrid(*ks, indexing="ij")


def poisson_solve_periodic(omega: np.ndarray, grid: Grid, mean_tol: float = 1.0e-10) -> np.ndarray:
    """Solve ``-lap(psi) = omega`` spectrally; the result has zero mean."""
    omega = np.asarray(omega, dtype=np.float64)
    if not grid.periodic:
        raise ValueError("periodic grid required")
    mean = float(np.mean(omega))
    if abs(mean) > mean_tol:
        raise ValueError(f"vorticity must have zero mean: got {mean:.3e}")

    kx, ky = _wavenumbers(grid)
    k2 = kx**2 + ky**2
    k2[0, 0] = 1.0

    psi_hat = np.fft.fft2(omega) / k2
    psi_hat[0, 0] = 0.0
    return np.fft.ifft2(psi_hat).real


def velocity_from_vorticity(
    omega: np.ndarray, grid: Grid, op: DscOperator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(u, v, psi)`` with DSC derivatives of the streamfunction."""
    psi = poisson_solve_periodic(omega, grid)
    return op.diff(psi, 1, 1), -op.diff(psi, 0, 1), psi


def vorticity_rhs(omega: np.ndarray, prob: IncompressibleProblem, op: DscOperator) -> np.ndarray:
    r""":math:`-(u \omega_x + v \omega_y) + \mathrm{Re}^{-1} \nabla^2 \omega` plus ADOR.

    With ``ador_on="velocity"`` the ADOR contribution is
    :math:`\partial_x A(v) - \partial_y A(u)`, where :math:`A` is the ADOR
    term of a single velocity component. The mean of the result is removed,
    since the vorticity of a periodic velocity field has zero mean.
    """
    u, v, _ = velocity_from_vorticity(omega, prob.grid, op)
    w_x, w_y = op.gradient(omega)

    result = -(u * w_x + v * w_y)
    if prob.viscosity:
        result = result + prob.viscosity * op.laplacian(omega)
    if prob.ador.enabled:
        if prob.ador_on == "velocity":
            result = result + op.diff(ador_term(v, prob.ador, op), 0, 1)
            result = result - op.diff(ador_term(u, prob.ador, op), 1, 1)
        else:
            result = result + ador_term(omega, prob.ador, op)
    return result - np.mean(result)


def taylor_green_exact(x, y, t: float, reynolds: float = INF):
    """Decaying Taylor-Green vortex ``(u, v, p)``."""
    nu = _inverse_reynolds(reynolds)
    decay = math.exp(-2.0 * nu * t)
    u = -np.cos(x) * np.sin(y) * decay
    v = np.sin(x) * np.cos(y) * decay
    p = -0.25 * (np.cos(2 * x) + np.cos(2 * y)) * decay**2
    return u, v, p


def _sech2(z: np.ndarray) -> np.ndarray:
    q = np.exp(-2.0 * np.abs(z))
    return 4.0 * q / (1.0 + q) ** 2


def shear_layer_init(
    params: ShearLayerParams, grid: Grid, op: Optional[DscOperator] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Double shear layer initial ``(u, v, omega)``; *omega* has zero mean.

    The smooth layer differentiates the velocity with DSC. The discontinuous
    layer uses ``u = +-1`` and the analytic vorticity of a tanh layer one
    cell wide (``rho = h / 2``).
    """
    x, y = grid.mesh()
    lower = y <= np.pi
    v = params.delta * np.sin(x)

    if params.discontinuous:
        rho = 0.5 * grid.spacing[1]
        u = np.where(lower, np.sign(2 * y - np.pi), np.sign(3 * np.pi - 2 * y))
        u_y = np.where(
            lower,
            _sech2((2 * y - np.pi) / (2 * rho)) / rho,
            -_sech2((3 * np.pi - 2 * y) / (2 * rho)) / rho,
        )
        omega = params.delta * np.cos(x) - u_y
    else:
        rho = params.rho
        u = np.where(lower, np.tanh((2 * y - np.pi) / (2 * rho)), np.tanh((3 * np.pi - 2 * y) / (2 * rho)))
        if op is None:
            op = DscOperator(grid)
        omega = op.diff(v, 0, 1) - op.diff(u, 1, 1)

    return u, v, omega - np.mean(omega)


def kinetic_energy(u: np.ndarray, v: np.ndarray, grid: Grid) -> float:
    return 0.5 * float(np.sum(u**2 + v**2)) * grid.cell_volume


# }}}
