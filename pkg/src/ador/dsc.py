r"""
Discrete singular convolution with the regularized Shannon kernel.

The kernel is

.. math::

    \delta_{\sigma, \Delta}(x) =
        \frac{\sin(\pi x / \Delta)}{\pi x / \Delta}
        \exp\left(-\frac{x^2}{2 \sigma^2}\right),

and the :math:`p`-th derivative of a sampled function is approximated by
the banded convolution

.. math::

    f^{(p)}(x_i) \approx \sum_{k = -M}^{M} \delta^{(p)}_{\sigma, \Delta}(-k \Delta)
        f(x_{i + k}).

.. autoclass:: DscKernel
.. autoclass:: DerivativeStencil
.. autoclass:: DscOperator

.. autofunction:: kernel_value
.. autofunction:: derivative_weights
.. autofunction:: differentiation_matrix
.. autofunction:: differentiate
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, Tuple

import numpy as np
from numpy.polynomial import hermite_e

from ador.grid import Boundary, Field, Grid

SUPPORTED_ORDERS = (1, 2, 4)

#: relative tolerance of the finite difference check on the stencil weights
WEIGHT_CHECK_RTOL = 1.0e-6


@dataclass(frozen=True)
class DscKernel:
    """Regularized Shannon kernel parameters.

    .. attribute:: sigma_over_delta

        Gaussian width in units of the grid spacing.

    .. attribute:: half_width

        Stencil half width :math:`M`; stencils have :math:`2 M + 1` weights.
    """

    spacing: float = 1.0
    sigma_over_delta: float = 3.2
    half_width: int = 31

    def __post_init__(self) -> None:
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive: {self.spacing}")
        if not self.sigma_over_delta > 0:
            raise ValueError(f"sigma_over_delta must be positive: {self.sigma_over_delta}")
        if self.half_width < 1:
            raise ValueError(f"half_width must be at least 1: {self.half_width}")

    @property
    def sigma(self) -> float:
        return self.sigma_over_delta * self.spacing


@dataclass(frozen=True)
class DerivativeStencil:
    """Weights ``w[k + M]`` multiplying the sample at offset ``k``."""

    order: int
    weights: np.ndarray = field(repr=False)

    @property
    def half_width(self) -> int:
        return (self.weights.size - 1) // 2

    @property
    def offsets(self) -> np.ndarray:
        m = self.half_width
        return np.arange(-m, m + 1)


def kernel_value(x, kernel: DscKernel):
    """Evaluate the regularized Shannon kernel (vectorized in *x*).

    Values at nonzero integer multiples of the spacing are exactly zero.
    """
    x = np.asarray(x, dtype=np.float64)
    z = x / kernel.spacing
    value = np.sinc(z) * np.exp(-(x**2) / (2.0 * kernel.sigma**2))
    return np.where((z == np.round(z)) & (z != 0.0), 0.0, value)[()]


# {{{ closed form derivatives at grid offsets


def _sinc_derivatives_at_offset(k: int, order: int, a: float) -> np.ndarray:
    """Derivatives ``0..order`` of ``sin(a x) / (a x)`` at ``x = k pi / a``."""
    out = np.empty(order + 1)
    if k == 0:
        for j in range(order + 1):
            out[j] = 0.0 if j % 2 else (-1) ** (j // 2) * a**j / (j + 1)
        return out

    # Leibniz on sin(a x) * x^{-1}, with sin(k pi + i pi / 2) taken exactly
    x = k * np.pi / a
    parity = -1.0 if k % 2 else 1.0
    sin_shift = (0.0, 1.0, 0.0, -1.0)
    for j in range(order + 1):
        acc = 0.0
        for i in range(j + 1):
            s = parity * sin_shift[i % 4]
            if s == 0.0:
                continue
            r = j - i
            acc += comb(j, i) * a**i * s * (-1) ** r * factorial(r) / x ** (r + 1)
        out[j] = acc / a
    return out


def _gaussian_derivatives(x: float, order: int, sigma: float) -> np.ndarray:
    z = x / sigma
    g = np.exp(-0.5 * z * z)
    out = np.empty(order + 1)
    for m in range(order + 1):
        coeffs = np.zeros(m + 1)
        coeffs[m] = 1.0
        out[m] = (-1) ** m * sigma ** (-m) * hermite_e.hermeval(z, coeffs) * g
    return out


def _kernel_derivative_at_offset(k: int, order: int, kernel: DscKernel) -> float:
    a = np.pi / kernel.spacing
    ds = _sinc_derivatives_at_offset(k, order, a)
    dg = _gaussian_derivatives(k * kernel.spacing, order, kernel.sigma)
    return float(sum(comb(order, m) * ds[order - m] * dg[m] for m in range(order + 1)))


def _central_fd_weights(order: int, m: int) -> np.ndarray:
    offsets = np.arange(-m, m + 1, dtype=np.float64)
    A = np.vander(offsets, increasing=True).T
    b = np.zeros(offsets.size)
    b[order] = factorial(order)
    return np.linalg.solve(A, b)


def _check_weights(stencil: DerivativeStencil, kernel: DscKernel) -> None:
    p = stencil.order
    h = kernel.spacing / 64.0
    fd = _central_fd_weights(p, 4 + p // 2)
    m = (fd.size - 1) // 2

    x = -stencil.offsets * kernel.spacing
    approx = sum(c * kernel_value(x + j * h, kernel) for j, c in zip(range(-m, m + 1), fd))
    approx = approx / h**p

    scale = np.max(np.abs(stencil.weights))
    error = np.max(np.abs(approx - stencil.weights))
    if error > WEIGHT_CHECK_RTOL * scale:
        raise RuntimeError(
            f"order {p} DSC weights disagree with finite differences: "
            f"relative error {error / scale:.3e}"
        )


# }}}


def derivative_weights(order: int, kernel: DscKernel, check: bool = True) -> DerivativeStencil:
    """Collocation weights for the *order*-th derivative.

    Odd orders are built antisymmetric and even orders symmetric by
    construction, so the symmetry holds exactly.
    """
    if order not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported derivative order {order}; expected one of {SUPPORTED_ORDERS}")

    m = kernel.half_width
    w = np.zeros(2 * m + 1)
    sign = -1.0 if order % 2 else 1.0
    # weight at offset k is the derivative evaluated at -k * spacing
    for k in range(0, m + 1):
        value = _kernel_derivative_at_offset(-k, order, kernel) if k else 0.0
        w[m + k] = value
        w[m - k] = sign * value
    if order % 2 == 0:
        w[m] = _kernel_derivative_at_offset(0, order, kernel)

    stencil = DerivativeStencil(order=order, weights=w)
    if check:
        _check_weights(stencil, kernel)
    return stencil


def differentiation_matrix(
    n: int, stencil: DerivativeStencil, boundary: Boundary, parity: int = -1
) -> np.ndarray:
    """Dense ``n x n`` matrix applying *stencil* with boundary extension.

    Periodic axes wrap the offsets modulo *n* (several times if the stencil
    is longer than the axis). Dirichlet axes use the odd extension about both
    endpoints, i.e. a ghost value at distance *d* past a wall is minus the
    value at distance *d* inside; this is applied repeatedly, so it amounts to
    the odd periodic extension with period ``2 (n - 1)``.

    :arg parity: ``-1`` for the odd extension, ``+1`` for the even one, used
        for quantities that are even about the walls (e.g. coefficients that
        depend on :math:`u_x^2`). Ignored on periodic axes.
    """
    if n < 3:
        raise ValueError(f"axis too small for DSC differentiation: {n} points")
    if parity not in (-1, 1):
        raise ValueError(f"parity must be -1 or +1: {parity}")

    D = np.zeros((n, n))
    rows = np.arange(n)
    for k, w in zip(stencil.offsets, stencil.weights):
        j = rows + k
        if boundary is Boundary.PERIODIC:
            np.add.at(D, (rows, j % n), w)
        else:
            period = 2 * (n - 1)
            r = j % period
            mirrored = r > n - 1
            idx = np.where(mirrored, period - r, r)
            np.add.at(D, (rows, idx), np.where(mirrored, parity * w, w))

    return D


class DscOperator:
    """DSC derivative operators on a fixed :class:`~ador.grid.Grid`.

    Matrices are built on first use and cached per ``(axis, order)``.
    """

    def __init__(self, grid: Grid, sigma_over_delta: float = 3.2, half_width: int = 31) -> None:
        self.grid = grid
        self.kernels = tuple(
            DscKernel(spacing=h, sigma_over_delta=sigma_over_delta, half_width=half_width)
            for h in grid.spacing
        )
        self._matrices: Dict[Tuple[int, int, int], np.ndarray] = {}

    def matrix(self, axis: int, order: int, parity: int = -1) -> np.ndarray:
        if self.grid.periodic:
            parity = -1
        key = (axis, order, parity)
        if key not in self._matrices:
            stencil = derivative_weights(order, self.kernels[axis])
            self._matrices[key] = differentiation_matrix(
                self.grid.n[axis], stencil, self.grid.boundary, parity=parity
            )
        return self._matrices[key]

    def diff(self, f: np.ndarray, axis: int = 0, order: int = 1, parity: int = -1) -> np.ndarray:
        """Derivative of *f* along *axis*; *parity* selects the wall extension
        on Dirichlet grids (see :func:`differentiation_matrix`)."""
        D = self.matrix(axis, order, parity)
        f = np.asarray(f)
        if axis == 0:
            return D @ f
        if axis == 1 and f.ndim == 2:
            return f @ D.T
        raise ValueError(f"invalid axis {axis} for a {f.ndim}D field")

    def gradient(self, f: np.ndarray) -> Tuple[np.ndarray, ...]:
        return tuple(self.diff(f, axis, 1) for axis in range(self.grid.dim))

    def laplacian(self, f: np.ndarray, parity: int = -1) -> np.ndarray:
        result = self.diff(f, 0, 2, parity)
        for axis in range(1, self.grid.dim):
            result = result + self.diff(f, axis, 2, parity)
        return result

    def biharmonic(self, f: np.ndarray) -> np.ndarray:
        result = self.diff(f, 0, 4)
        if self.grid.dim == 2:
            result = result + 2.0 * self.diff(self.diff(f, 0, 2), 1, 2) + self.diff(f, 1, 4)
        return result


def differentiate(f: Field, axis: int, order: int, kernel: DscKernel) -> np.ndarray:
    """Apply the *order*-th DSC derivative of *f* along *axis*.

    The kernel spacing must match the grid spacing along *axis*.
    """
    grid = f.grid
    if axis >= grid.dim:
        raise ValueError(f"invalid axis {axis} for a {grid.dim}D grid")
    if not np.isclose(kernel.spacing, grid.spacing[axis], rtol=1.0e-12, atol=0.0):
        raise ValueError(
            f"kernel spacing {kernel.spacing} does not match grid spacing {grid.spacing[axis]}"
        )

    D = differentiation_matrix(grid.n[axis], derivative_weights(order, kernel), grid.boundary)
    return D @ f.values if axis == 0 else f.values @ D.T
