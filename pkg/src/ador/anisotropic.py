r"""
Anisotropic diffusion oscillation reduction (ADOR) terms.

A hyperbolic equation :math:`u_t + \nabla \cdot F(u) = 0` is augmented by
gradient sensitive diffusion, either in divergence form

.. math::

    \nabla \cdot [d_1 \nabla u] + \nabla \cdot [d_2 \nabla \nabla^2 u] + e,

or in the simplified non-conservative form

.. math::

    \Gamma_1 \nabla^2 u + \Gamma_2 \nabla^4 u + e,

where all coefficients are functions of :math:`\|\nabla u\|` that vanish
(or nearly so) away from steep fronts.

.. autoclass:: Prescription
.. autoclass:: AdorConfig
.. autoclass:: GradDecomposition2D

.. autofunction:: edge_function
.. autofunction:: diffusivity
.. autofunction:: ador_term
.. autofunction:: ador_term_conservative
.. autofunction:: ador_term_nonconservative
.. autofunction:: edge_enhancing
.. autofunction:: decompose_velocity_gradient
.. autofunction:: artificial_pressure_tensor
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ador.dsc import DscOperator


class Prescription(enum.Enum):
    """Coefficient prescriptions.

    ``C1`` and the Perona-Malik kinds act in divergence form; ``C2`` to
    ``C6`` use the non-conservative form.
    """

    C1 = "c1"
    C2 = "c2"
    C3 = "c3"
    C4 = "c4"
    C5 = "c5"
    C6 = "c6"
    PERONA_GAUSS = "perona_gauss"
    PERONA_LORENTZ = "perona_lorentz"

    @property
    def conservative(self) -> bool:
        return self in _CONSERVATIVE


_CONSERVATIVE = frozenset({Prescription.C1, Prescription.PERONA_GAUSS, Prescription.PERONA_LORENTZ})


@dataclass(frozen=True)
class AdorConfig:
    """Prescription and coefficients.

    .. attribute:: d1
    .. attribute:: d2

        Divergence form coefficients (``C1``); ``d1`` also scales the
        Perona-Malik edge-stopping functions.

    .. attribute:: e1

        Scale of the edge enhancing source term.

    .. attribute:: gamma1
    .. attribute:: gamma2

        Non-conservative coefficients for ``C2`` to ``C6``. ``gamma2``
        multiplies the fourth order (super diffusion) term and must be
        non-positive.
    """

    prescription: Optional[Prescription] = None
    d1: float = 0.0
    d2: float = 0.0
    e1: float = 0.0
    gamma1: float = 0.0
    gamma2: float = 0.0
    sigma_edge: float = 1.0

    def __post_init__(self) -> None:
        if isinstance(self.prescription, str):
            object.__setattr__(self, "prescription", Prescription(self.prescription.lower()))
        if self.d1 < 0:
            raise ValueError(f"'d1' must be non-negative: {self.d1}")
        if self.gamma1 < 0:
            raise ValueError(f"'gamma1' must be non-negative: {self.gamma1}")
        if self.gamma2 > 0:
            raise ValueError(f"'gamma2' must be non-positive: {self.gamma2}")
        if not self.sigma_edge > 0:
            raise ValueError(f"'sigma_edge' must be positive: {self.sigma_edge}")

    @property
    def enabled(self) -> bool:
        return self.prescription is not None and any(
            c != 0.0 for c in (self.d1, self.d2, self.e1, self.gamma1, self.gamma2)
        )


Coefficient = Union[np.ndarray, Tuple[np.ndarray, np.ndarray]]


# {{{ coefficients


def _grad_norm(u_x: np.ndarray, u_y: Optional[np.ndarray]) -> np.ndarray:
    if u_y is None:
        return np.abs(u_x)
    return np.hypot(u_x, u_y)


def edge_function(
    prescription: Prescription,
    u_x: np.ndarray,
    u_y: Optional[np.ndarray] = None,
    sigma_edge: float = 1.0,
) -> Coefficient:
    """Unscaled gradient dependence shared by the first and second coefficients.

    For ``C6`` a pair ``(f_x, f_y)`` is returned, weighting :math:`u_{xx}` and
    :math:`u_{yy}` respectively.
    """
    if u_x is None:
        raise ValueError("gradient 'u_x' is required")

    p = Prescription(prescription)
    if p is Prescription.C1:
        return np.log1p(_grad_norm(u_x, u_y) ** 2)
    if p is Prescription.C2:
        return np.abs(u_x) ** 0.25
    if p is Prescription.C3:
        return np.log1p(np.abs(u_x))
    if p is Prescription.C4:
        return np.log1p(u_x**2)
    if p is Prescription.C5:
        return np.log1p(_grad_norm(u_x, u_y))
    if p is Prescription.C6:
        if u_y is None:
            raise ValueError("prescription 'c6' requires both 'u_x' and 'u_y'")
        return np.log1p(np.abs(u_x)), np.log1p(np.abs(u_y))
    if p is Prescription.PERONA_GAUSS:
        return np.exp(-(_grad_norm(u_x, u_y) ** 2) / (2.0 * sigma_edge**2))
    if p is Prescription.PERONA_LORENTZ:
        return 1.0 / (1.0 + _grad_norm(u_x, u_y) ** 2 / sigma_edge**2)

    raise ValueError(f"unknown prescription: {prescription!r}")


def diffusivity(
    config: AdorConfig,
    u_x: np.ndarray,
    u_y: Optional[np.ndarray] = None,
    which: int = 1,
) -> Coefficient:
    """Evaluate the first (``which=1``) or second (``which=2``) coefficient.

    For divergence form prescriptions these are :math:`d_1, d_2`, otherwise
    :math:`\\Gamma_1, \\Gamma_2`.
    """
    if config.prescription is None:
        raise ValueError("no prescription selected")
    if which not in (1, 2):
        raise ValueError(f"'which' must be 1 or 2: got {which}")

    if config.prescription.conservative:
        scale = config.d1 if which == 1 else config.d2
    else:
        scale = config.gamma1 if which == 1 else config.gamma2

    f = edge_function(config.prescription, u_x, u_y, config.sigma_edge)
    if isinstance(f, tuple):
        return scale * f[0], scale * f[1]
    return scale * f


# }}}


# {{{ terms


def _divergence_form(d: np.ndarray, w: np.ndarray, op: DscOperator, form: str) -> np.ndarray:
    # d is even about Dirichlet walls and w odd, so d w is odd and the
    # fluxes d w_x are even
    if form == "symmetric":
        # div(d grad w) = (lap(d w) + d lap(w) - w lap(d)) / 2
        return 0.5 * (op.laplacian(d * w) + d * op.laplacian(w) - w * op.laplacian(d, parity=1))
    if form == "flux":
        result = np.zeros_like(w, dtype=np.float64)
        for axis in range(op.grid.dim):
            result = result + op.diff(d * op.diff(w, axis, 1), axis, 1, parity=1)
        return result

    raise ValueError(f"unknown divergence form: {form!r}")


def ador_term_conservative(
    u: np.ndarray, config: AdorConfig, op: DscOperator, form: str = "flux"
) -> np.ndarray:
    r"""Divergence form :math:`\nabla \cdot (d_1 \nabla u) + \nabla \cdot (d_2 \nabla \nabla^2 u)`.

    :arg form: ``"flux"`` differentiates the flux ``d * grad(w)`` with first
        derivative stencils. ``"symmetric"`` evaluates

        .. math::

            \nabla \cdot (d \nabla w) =
                \tfrac{1}{2} [\nabla^2 (d w) + d \nabla^2 w - w \nabla^2 d]

        with second derivative stencils, which also damps the odd-even mode
        that the flux form leaves untouched. Both sum to zero on periodic
        grids.

    On Dirichlet grids the coefficient and the fluxes are even about the
    walls and are differentiated with the even extension.
    """
    grads = op.gradient(u)
    u_y = grads[1] if len(grads) > 1 else None

    d1 = diffusivity(config, grads[0], u_y, which=1)
    result = _divergence_form(d1, u, op, form)

    if config.d2 != 0.0:
        d2 = diffusivity(config, grads[0], u_y, which=2)
        result = result + _divergence_form(d2, op.laplacian(u), op, form)

    return result


def ador_term_nonconservative(u: np.ndarray, config: AdorConfig, op: DscOperator) -> np.ndarray:
    r""":math:`\Gamma_1 \nabla^2 u + \Gamma_2 \nabla^4 u`."""
    if config.gamma1 == 0.0 and config.gamma2 == 0.0:
        return np.zeros_like(u, dtype=np.float64)

    grads = op.gradient(u)
    u_y = grads[1] if len(grads) > 1 else None

    result = np.zeros_like(u, dtype=np.float64)
    if config.gamma1 != 0.0:
        g1 = diffusivity(config, grads[0], u_y, which=1)
        if isinstance(g1, tuple):
            result = result + g1[0] * op.diff(u, 0, 2) + g1[1] * op.diff(u, 1, 2)
        else:
            result = result + g1 * op.laplacian(u)

    if config.gamma2 != 0.0:
        g2 = diffusivity(config, grads[0], u_y, which=2)
        if isinstance(g2, tuple):
            result = result + g2[0] * op.diff(u, 0, 4) + g2[1] * op.diff(u, 1, 4)
        else:
            result = result + g2 * op.biharmonic(u)

    return result


def edge_enhancing(
    u: np.ndarray,
    config: AdorConfig,
    op: DscOperator,
    v: Optional[np.ndarray] = None,
) -> np.ndarray:
    r"""Edge enhancing source :math:`e^1 (\nabla \cdot \mathbf{u})^2`.

    For a scalar *u* this is :math:`e^1 u_x^2`; if a second velocity
    component *v* is given the divergence :math:`u_x + v_y` is used.
    """
    if config.e1 == 0.0:
        return np.zeros_like(u, dtype=np.float64)

    div = op.diff(u, 0, 1)
    if v is not None:
        div = div + op.diff(v, 1, 1)
    return config.e1 * div**2


def ador_term(u: np.ndarray, config: AdorConfig, op: DscOperator) -> np.ndarray:
    """Full ADOR contribution for *config*, dispatching on the prescription form."""
    if not config.enabled:
        return np.zeros_like(u, dtype=np.float64)

    if config.prescription.conservative:
        result = ador_term_conservative(u, config, op)
    else:
        result = ador_term_nonconservative(u, config, op)

    if config.e1 != 0.0:
        result = result + edge_enhancing(u, config, op)
    return result


# }}}


# {{{ velocity gradient decomposition


@dataclass(frozen=True)
class GradDecomposition2D:
    r"""Irreducible parts of :math:`\nabla \mathbf{v}` for a planar flow.

    The flow is viewed as three dimensional with :math:`w = 0` and no
    :math:`z` dependence, so that

    .. math::

        \nabla \mathbf{v} = \tfrac{1}{3} (\nabla \cdot \mathbf{v}) I
            + A + [\nabla \mathbf{v}]^{(2)},

    with :math:`A_{xy} = -A_{yx} = \omega_z / 2`. The symmetric traceless part
    has in-plane components ``s11, s12, s22`` and ``s33 = -divergence / 3``.
    """

    divergence: np.ndarray
    curl_z: np.ndarray
    s11: np.ndarray
    s12: np.ndarray
    s22: np.ndarray

    @property
    def s33(self) -> np.ndarray:
        return -self.divergence / 3.0

    def gradient(self) -> np.ndarray:
        """Reassemble the in-plane gradient ``G[i, j] = d_i v_j``."""
        iso = self.divergence / 3.0
        half_curl = 0.5 * self.curl_z
        return np.stack([
            np.stack([iso + self.s11, half_curl + self.s12]),
            np.stack([-half_curl + self.s12, iso + self.s22]),
        ])

    def norms(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Pointwise ``(div, |curl|, |[grad v]^(2)|)`` invariants."""
        shear = np.sqrt(self.s11**2 + 2.0 * self.s12**2 + self.s22**2 + self.s33**2)
        return self.divergence, np.abs(self.curl_z), shear


def decompose_velocity_gradient(
    u: np.ndarray, v: np.ndarray, op: DscOperator
) -> GradDecomposition2D:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.shape != op.grid.shape or op.grid.dim != 2:
        raise ValueError(
            f"velocity components must live on the same 2D grid: "
            f"got {u.shape} and {v.shape} for grid {op.grid.shape}"
        )

    u_x, u_y = op.gradient(u)
    v_x, v_y = op.gradient(v)
    div = u_x + v_y
    iso = div / 3.0
    return GradDecomposition2D(
        divergence=div,
        curl_z=v_x - u_y,
        s11=u_x - iso,
        s12=0.5 * (u_y + v_x),
        s22=v_y - iso,
    )


PressureCoefficient = Union[float, Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]]


def artificial_pressure_tensor(
    decomp: GradDecomposition2D,
    heat: PressureCoefficient = 0.0,
    bulk: PressureCoefficient = 0.0,
    rotational: PressureCoefficient = 0.0,
    shear: PressureCoefficient = 0.0,
) -> np.ndarray:
    r"""In-plane block ``P[i, j]`` of the artificial pressure tensor

    .. math::

        P = \epsilon n k_B T\, I - \zeta_V (\nabla \cdot \mathbf{v}) I
            - \zeta_r\, \varepsilon \cdot (\nabla \times \mathbf{v})
            - 2 \zeta\, [\nabla \mathbf{v}]^{(2)}.

    :arg heat: the :math:`\epsilon n k_B T` term.
    :arg bulk: :math:`\zeta_V`, :arg rotational: :math:`\zeta_r`,
        :arg shear: :math:`\zeta`. Each coefficient is a constant or a
        callable of ``(div, |curl|, |[grad v]^(2)|)``.
    """
    invariants = decomp.norms()

    def coeff(c: PressureCoefficient) -> np.ndarray:
        if callable(c):
            return np.asarray(c(*invariants), dtype=np.float64)
        return np.full_like(decomp.divergence, float(c))

    eps, zeta_v, zeta_r, zeta = (coeff(c) for c in (heat, bulk, rotational, shear))
    diag = eps - zeta_v * decomp.divergence
    rot = zeta_r * decomp.curl_z
    return np.stack([
        np.stack([diag - 2.0 * zeta * decomp.s11, -rot - 2.0 * zeta * decomp.s12]),
        np.stack([rot - 2.0 * zeta * decomp.s12, diag - 2.0 * zeta * decomp.s22]),
    ])


# }}}
