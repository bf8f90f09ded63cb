r"""
Fine grid reference solver for the viscous Burgers benchmark.

Solves :math:`u_t + (u^2 / 2)_x = \nu u_{xx}` on ``[0, 1]`` with
:math:`u(0) = u(1) = 0` by a Fourier sine pseudo-spectral discretization
and the exponential time differencing RK4 scheme of Cox and Matthews, with
the :math:`\varphi` functions evaluated by contour integrals (Kassam and
Trefethen). The viscous term is integrated exactly, so the time step is only
limited by the advection.

It shares nothing with the DSC solver or with the Cole series and is used
to cross-check both.

.. autofunction:: solve_burgers_reference
"""

from __future__ import annotations

from typing import Dict, Iterable

import numpy as np
from scipy import fft


def _phi_coefficients(L: np.ndarray, dt: float, ncontour: int = 64):
    r = np.exp(1j * np.pi * (np.arange(1, ncontour + 1) - 0.5) / ncontour)
    LR = dt * L[:, None] + r[None, :]
    Q = dt * np.real(np.mean((np.exp(LR / 2) - 1) / LR, axis=1))
    f1 = dt * np.real(np.mean((-4 - LR + np.exp(LR) * (4 - 3 * LR + LR**2)) / LR**3, axis=1))
    f2 = dt * np.real(np.mean((2 + LR + np.exp(LR) * (-2 + LR)) / LR**3, axis=1))
    f3 = dt * np.real(np.mean((-4 - 3 * LR - LR**2 + np.exp(LR) * (4 - LR)) / LR**3, axis=1))
    return Q, f1, f2, f3


def solve_burgers_reference(
    reynolds: float,
    times: Iterable[float],
    n: int = 1601,
    dt: float = 1.0e-4,
) -> Dict[float, np.ndarray]:
    """Integrate from ``u(x, 0) = sin(pi x)`` on *n* nodes including walls.

    :returns: a mapping from each requested time to the nodal solution.
    """
    m = n - 2
    x = np.linspace(0.0, 1.0, n)
    k = np.pi * np.arange(1, m + 1)
    kc = np.pi * np.arange(0, n)
    L = -k**2 / reynolds

    def nonlinear(b: np.ndarray) -> np.ndarray:
        u = np.zeros(n)
        u[1:-1] = fft.idst(b, type=1)
        # -(u^2 / 2)_x: cosine series of u^2 / 2, differentiated into sines,
        # in the (unnormalized) DST-I scaling of the state
        c = fft.dct(0.5 * u * u, type=1)
        return kc[1:-1] * c[1:-1]

    E = np.exp(dt * L)
    E2 = np.exp(dt * L / 2)
    Q, f1, f2, f3 = _phi_coefficients(L, dt)

    marks = {int(round(t / dt)): float(t) for t in times}
    nsteps = max(marks) if marks else 0

    b = fft.dst(np.sin(np.pi * x[1:-1]), type=1)
    out: Dict[float, np.ndarray] = {}
    if 0 in marks:
        out[marks[0]] = np.sin(np.pi * x)

    for step in range(1, nsteps + 1):
        Nb = nonlinear(b)
        a = E2 * b + Q * Nb
        Na = nonlinear(a)
        c = E2 * b + Q * Na
        Nc = nonlinear(c)
        d = E2 * a + Q * (2 * Nc - Nb)
        Nd = nonlinear(d)
        b = E * b + Nb * f1 + 2 * (Na + Nc) * f2 + Nd * f3

        if step in marks:
            u = np.zeros(n)
            u[1:-1] = fft.idst(b, type=1)
            out[marks[step]] = u

    return out
