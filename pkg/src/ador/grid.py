"""
Uniform collocation grids, fields and diagnostic functionals.

.. autoclass:: Boundary
.. autoclass:: Grid
.. autoclass:: Field
.. autoclass:: ErrorReport

.. autofunction:: norm
.. autofunction:: error_report
.. autofunction:: count_interior_extrema
.. autofunction:: total_variation
.. autofunction:: write_field_csv
.. autofunction:: read_field_csv
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np

ArrayLike = Union[np.ndarray, "Field", Sequence[float]]


class Boundary(enum.Enum):
    PERIODIC = "periodic"
    DIRICHLET_ZERO = "dirichlet_zero"


@dataclass(frozen=True)
class Grid:
    """Uniform tensor-product grid in one or two dimensions.

    Periodic axes hold ``n`` points ``a, a + h, ..., b - h`` with
    ``h = (b - a) / n``; Dirichlet axes include both endpoints, so
    ``h = (b - a) / (n - 1)``.

    .. attribute:: n

        Number of points per axis.

    .. attribute:: extent

        ``(a, b)`` bounds per axis.
    """

    n: Tuple[int, ...]
    extent: Tuple[Tuple[float, float], ...]
    boundary: Boundary

    def __post_init__(self) -> None:
        if len(self.n) not in (1, 2):
            raise ValueError(f"only 1D and 2D grids are supported: got dim {len(self.n)}")
        if len(self.extent) != len(self.n):
            raise ValueError("'extent' must have one (a, b) pair per axis")
        for n, (a, b) in zip(self.n, self.extent):
            if int(n) != n or n < 8:
                raise ValueError(f"each axis needs at least 8 points: got {n}")
            if not b > a:
                raise ValueError(f"invalid axis extent: ({a}, {b})")

    @classmethod
    def uniform(
        cls,
        n: Union[int, Sequence[int]],
        extent: Tuple[float, float],
        boundary: Boundary,
        dim: int = 1,
    ) -> "Grid":
        """Build a grid with the same point count and extent on every axis."""
        ns = (int(n),) * dim if np.isscalar(n) else tuple(int(m) for m in n)
        return cls(n=ns, extent=(tuple(map(float, extent)),) * len(ns), boundary=boundary)

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.n)

    @property
    def size(self) -> int:
        return int(np.prod(self.n))

    @property
    def periodic(self) -> bool:
        return self.boundary is Boundary.PERIODIC

    @property
    def spacing(self) -> Tuple[float, ...]:
        if self.periodic:
            return tuple((b - a) / n for n, (a, b) in zip(self.n, self.extent))
        return tuple((b - a) / (n - 1) for n, (a, b) in zip(self.n, self.extent))

    def axis(self, i: int = 0) -> np.ndarray:
        """Node coordinates along axis *i*."""
        a, _ = self.extent[i]
        return a + self.spacing[i] * np.arange(self.n[i])

    def mesh(self) -> Tuple[np.ndarray, ...]:
        """Coordinate arrays with ``indexing="ij"`` (axis 0 is *x*)."""
        if self.dim == 1:
            return (self.axis(0),)
        return tuple(np.meshgrid(self.axis(0), self.axis(1), indexing="ij"))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))


@dataclass(frozen=True)
class Field:
    """Finite real samples on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise FloatingPointError("field contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


@dataclass(frozen=True)
class ErrorReport:
    time: float
    l1: float
    l2: float
    linf: float


def _values(f: ArrayLike) -> np.ndarray:
    if isinstance(f, Field):
        return f.values
    return np.asarray(f, dtype=np.float64)


def _finite(e: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(e)):
        raise FloatingPointError("non-finite values in field")
    return e


# {{{ norms and diagnostics


def norm(error: ArrayLike, kind: str = "l2") -> float:
    """Grid-averaged discrete norm of *error*.

    :arg kind: one of ``"l1"``, ``"l2"`` or ``"linf"``. The L1 and L2 norms
        are averaged over the number of points, not weighted by the spacing.
    """
    e = _finite(_values(error))
    kind = kind.lower()
    if kind == "l1":
        return float(np.mean(np.abs(e)))
    if kind == "l2":
        # scaled to avoid underflow and overflow of the squares
        scale = np.max(np.abs(e)) if e.size else 0.0
        if scale == 0.0:
            return 0.0
        return float(scale * np.sqrt(np.mean((e / scale) ** 2)))
    if kind in ("linf", "inf", "max"):
        return float(np.max(np.abs(e)))

    raise ValueError(f"unknown norm kind: {kind!r}")


def error_report(t: float, numerical: ArrayLike, exact: ArrayLike) -> ErrorReport:
    e = _values(numerical) - _values(exact)
    return ErrorReport(
        time=float(t), l1=norm(e, "l1"), l2=norm(e, "l2"), linf=norm(e, "linf")
    )


def count_interior_extrema(u: ArrayLike) -> int:
    """Number of interior points where the discrete slope changes sign.

    A zero difference on either side does not count as a sign change.
    """
    u = _finite(_values(u))
    if u.ndim != 1 or u.size < 3:
        raise ValueError("expected a 1D field with at least 3 points")

    du = np.diff(u)
    return int(np.count_nonzero(du[:-1] * du[1:] < 0))


def total_variation(u: ArrayLike) -> float:
    u = _finite(_values(u))
    if u.ndim != 1:
        raise ValueError("expected a 1D field")
    return float(np.sum(np.abs(np.diff(u))))


# }}}


# {{{ csv dumps


def write_field_csv(path: Union[str, Path], t: float, values: ArrayLike) -> None:
    """Write a 1D or 2D field as CSV with a ``# t=... nx=... ny=...`` header.

    2D data is written one row per *x* index (axis 0).
    """
    v = np.atleast_2d(_values(values))
    if np.ndim(_values(values)) == 1:
        v = v.reshape(-1, 1)
    nx, ny = v.shape

    with open(path, "w", encoding="utf-8") as fd:
        fd.write(f"# t={t!r} nx={nx} ny={ny}\n")
        for row in v:
            fd.write(",".join(f"{x:.17g}" for x in row))
            fd.write("\n")


def read_field_csv(path: Union[str, Path]) -> Tuple[float, np.ndarray]:
    with open(path, encoding="utf-8") as fd:
        header = fd.readline()
    if not header.startswith("#"):
        raise ValueError(f"missing header in {path}")

    meta = dict(item.split("=") for item in header[1:].split())
    v = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if int(meta["ny"]) == 1:
        v = v[:, 0]
    return float(meta["t"]), v


# }}}
