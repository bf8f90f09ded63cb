"""
Method of lines time stepping.

.. autoclass:: Scheme
.. autoclass:: StepperConfig
.. autoclass:: ImplicitStep

.. autoexception:: BlowUpError
.. autoexception:: ConvergenceError

.. autofunction:: rk4_step
.. autofunction:: backward_euler_step
.. autofunction:: trapezoidal_step
.. autofunction:: integrate
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

RhsFunction = Callable[[np.ndarray], np.ndarray]
Projection = Callable[[np.ndarray], np.ndarray]


class BlowUpError(FloatingPointError):
    """Raised when the solution becomes non-finite or exceeds a bound."""

    def __init__(self, message: str, time: Optional[float] = None, max_abs: float = np.inf) -> None:
        super().__init__(message)
        self.time = time
        self.max_abs = max_abs


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int) -> None:
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class Scheme(enum.Enum):
    RK4 = "rk4"
    BACKWARD_EULER = "backward_euler"
    TRAPEZOIDAL = "trapezoidal"


@dataclass(frozen=True)
class StepperConfig:
    scheme: Scheme = Scheme.RK4
    dt: float = 1.0e-3
    fp_tol: float = 1.0e-12
    fp_max_iter: int = 100

    def __post_init__(self) -> None:
        if isinstance(self.scheme, str):
            object.__setattr__(self, "scheme", Scheme(self.scheme.lower()))
        if not self.dt > 0:
            raise ValueError(f"'dt' must be positive: {self.dt}")
        if not self.fp_tol > 0:
            raise ValueError(f"'fp_tol' must be positive: {self.fp_tol}")
        if self.fp_max_iter < 1:
            raise ValueError(f"'fp_max_iter' must be at least 1: {self.fp_max_iter}")


class ImplicitStep(NamedTuple):
    state: np.ndarray
    iterations: int
    residual: float


def _max_abs(u: np.ndarray) -> float:
    with np.errstate(invalid="ignore"):
        return float(np.nanmax(np.abs(u))) if np.any(np.isfinite(u)) else np.inf


def _check_finite(u: np.ndarray, t: Optional[float], what: str) -> np.ndarray:
    if not np.all(np.isfinite(u)):
        at = "" if t is None else f" at t = {t:.6g}"
        raise BlowUpError(f"non-finite {what}{at}", time=t, max_abs=_max_abs(u))
    return u


def rk4_step(
    u: np.ndarray,
    rhs: RhsFunction,
    dt: float,
    project: Optional[Projection] = None,
    t: Optional[float] = None,
) -> np.ndarray:
    """Classical fourth order Runge-Kutta step.

    :arg project: applied to every stage value and to the result, e.g. to
        reimpose boundary values.
    :arg t: only used in error messages.
    """
    if not dt > 0:
        raise ValueError(f"'dt' must be positive: {dt}")
    if project is None:
        project = _identity

    k1 = _check_finite(rhs(u), t, "stage 1")
    k2 = _check_finite(rhs(project(u + 0.5 * dt * k1)), t, "stage 2")
    k3 = _check_finite(rhs(project(u + 0.5 * dt * k2)), t, "stage 3")
    k4 = _check_finite(rhs(project(u + dt * k3)), t, "stage 4")

    return project(u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def backward_euler_step(
    u: np.ndarray,
    rhs: RhsFunction,
    dt: float,
    tol: float = 1.0e-12,
    max_iter: int = 100,
    project: Optional[Projection] = None,
    t: Optional[float] = None,
) -> ImplicitStep:
    """Backward Euler step solved by Picard iteration.

    The iteration ``w <- u + dt * rhs(w)`` is seeded by an explicit Euler
    predictor and stops once the fixed point residual (in the max norm) of
    the current iterate is below *tol*.
    """
    if not dt > 0:
        raise ValueError(f"'dt' must be positive: {dt}")
    if project is None:
        project = _identity

    w = project(u + dt * _check_finite(rhs(u), t, "predictor"))
    residual = np.inf
    for it in range(1, max_iter + 1):
        update = project(u + dt * _check_finite(rhs(w), t, "fixed point iterate"))
        residual = float(np.max(np.abs(update - w)))
        if residual <= tol:
            return ImplicitStep(w, it, residual)
        w = update

    raise ConvergenceError(
        f"backward Euler did not converge in {max_iter} iterations "
        f"(residual {residual:.3e} > {tol:.3e})",
        residual=residual,
        iterations=max_iter,
    )


def trapezoidal_step(
    u: np.ndarray,
    rhs: RhsFunction,
    dt: float,
    tol: float = 1.0e-12,
    max_iter: int = 100,
    project: Optional[Projection] = None,
    t: Optional[float] = None,
) -> ImplicitStep:
    """Implicit trapezoidal (Crank-Nicolson) step solved by Picard iteration.

    Second order counterpart of :func:`backward_euler_step`, solving
    ``w = u + dt / 2 * (rhs(u) + rhs(w))``.
    """
    if not dt > 0:
        raise ValueError(f"'dt' must be positive: {dt}")
    if project is None:
        project = _identity

    f0 = _check_finite(rhs(u), t, "explicit stage")
    explicit = u + 0.5 * dt * f0
    w = project(u + dt * f0)
    residual = np.inf
    for it in range(1, max_iter + 1):
        update = project(explicit + 0.5 * dt * _check_finite(rhs(w), t, "fixed point iterate"))
        residual = float(np.max(np.abs(update - w)))
        if residual <= tol:
            return ImplicitStep(w, it, residual)
        w = update

    raise ConvergenceError(
        f"trapezoidal step did not converge in {max_iter} iterations "
        f"(residual {residual:.3e} > {tol:.3e})",
        residual=residual,
        iterations=max_iter,
    )


def _identity(u: np.ndarray) -> np.ndarray:
    return u


def integrate(
    u0: np.ndarray,
    rhs: RhsFunction,
    t_end: float,
    stepper: StepperConfig,
    times: Iterable[float] = (),
    project: Optional[Projection] = None,
    max_abs: float = np.inf,
) -> Iterator[Tuple[float, np.ndarray]]:
    """Integrate from ``t = 0`` to *t_end*, yielding ``(t, u)`` at output times.

    Output times are rounded to the nearest step; ``t = 0`` is yielded if
    requested. Times are computed as ``step * dt`` to avoid drift.

    :arg max_abs: raise :exc:`BlowUpError` once ``max |u|`` exceeds this bound.
    """
    dt = stepper.dt
    nsteps = int(round(t_end / dt))
    if abs(nsteps * dt - t_end) > 1.0e-9 * max(1.0, t_end):
        raise ValueError(f"'t_end' = {t_end} is not a multiple of 'dt' = {dt}")

    marks = sorted({int(round(t / dt)) for t in times})
    if marks and (marks[0] < 0 or marks[-1] > nsteps):
        raise ValueError(f"output times must lie in [0, {t_end}]")

    u = np.array(u0, dtype=np.float64)
    _check_finite(u, 0.0, "initial state")
    imark = 0
    if marks and marks[0] == 0:
        yield 0.0, u
        imark = 1

    for n in range(1, nsteps + 1):
        t = (n - 1) * dt
        if stepper.scheme is Scheme.RK4:
            u = rk4_step(u, rhs, dt, project=project, t=t)
        else:
            implicit = (
                backward_euler_step if stepper.scheme is Scheme.BACKWARD_EULER else trapezoidal_step
            )
            u = implicit(
                u, rhs, dt, tol=stepper.fp_tol, max_iter=stepper.fp_max_iter,
                project=project, t=t,
            ).state

        _check_finite(u, n * dt, "solution")
        amplitude = float(np.max(np.abs(u)))
        if amplitude > max_abs:
            raise BlowUpError(
                f"max |u| = {amplitude:.3e} exceeds {max_abs:.3e} at t = {n * dt:.6g}",
                time=n * dt, max_abs=amplitude,
            )

        if imark < len(marks) and marks[imark] == n:
            yield n * dt, u
            imark += 1
