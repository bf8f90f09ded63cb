"""
Execute a :class:`~ador.config.RunConfig` and write its output files.

Every run directory contains

* ``fields_t<time>.csv`` for each snapshot and the final time (``_u`` and
  ``_v`` suffixes for 2D Burgers; vorticity for incompressible flow, with a
  ``_levels.csv`` companion of contour levels),
* ``diagnostics.csv`` with stability measures at the output times,
* ``errors.csv`` when an exact solution is available,
* ``run_summary.txt``, also written when the run fails.

.. autoclass:: RunResult
.. autoexception:: OracleError

.. autofunction:: run
.. autofunction:: field_filename
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ador.config import RunConfig
from ador.dsc import DscOperator
from ador.grid import count_interior_extrema, error_report, total_variation, write_field_csv
from ador.integrators import BlowUpError, ConvergenceError, integrate
from ador.problems import (
    BurgersProblem,
    IncompressibleProblem,
    ShearLayerParams,
    cole_exact,
    kinetic_energy,
    taylor_green_exact,
    velocity_from_vorticity,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_ORACLE = 4

#: number of suggested contour levels for vorticity snapshots
CONTOUR_LEVELS = 30


class OracleError(RuntimeError):
    pass


@dataclass
class RunResult:
    exit_code: int = EXIT_OK
    verdict: str = "stable"
    message: str = ""
    #: last time reached, or the time of the failing step
    final_time: float = 0.0
    max_abs: float = math.nan
    #: errors at the last output time, per component
    final_errors: Dict[str, Tuple[float, float, float]] = field(default_factory=dict)
    wall_time: float = 0.0


def format_time(t: float) -> str:
    return f"{t:.6g}"


def field_filename(t: float, suffix: str = "") -> str:
    return f"fields_t{format_time(t)}{suffix}.csv"


# {{{ problem setup


@dataclass
class _Setup:
    u0: np.ndarray
    rhs: Callable[[np.ndarray], np.ndarray]
    project: Optional[Callable[[np.ndarray], np.ndarray]]
    #: named components of a state, for snapshots and errors
    components: Callable[[np.ndarray], Dict[str, np.ndarray]]
    exact: Optional[Callable[[float], Dict[str, np.ndarray]]]
    diagnostics: Callable[[np.ndarray], Dict[str, float]]


def _setup(config: RunConfig) -> _Setup:
    if config.kind in ("burgers1d", "burgers2d"):
        dim = 1 if config.kind == "burgers1d" else 2
        prob = BurgersProblem.on_unit_interval(
            config.nx, dim=dim, reynolds=config.reynolds, ador=config.ador
        )
        op = DscOperator(prob.grid)

        if dim == 1:
            (x,) = prob.grid.mesh()
            exact = None
            if not math.isinf(config.reynolds):
                def exact(t: float) -> Dict[str, np.ndarray]:
                    return {"u": cole_exact(x, t, config.reynolds)}

            def diagnostics(u: np.ndarray) -> Dict[str, float]:
                return {
                    "max_abs": float(np.max(np.abs(u))),
                    "extrema": float(count_interior_extrema(u)),
                    "total_variation": total_variation(u),
                }

            return _Setup(
                prob.initial_state(), prob.rhs(op), prob.project,
                lambda u: {"u": u}, exact, diagnostics,
            )

        def diagnostics2(s: np.ndarray) -> Dict[str, float]:
            return {"max_abs_u": float(np.max(np.abs(s[0]))), "max_abs_v": float(np.max(np.abs(s[1])))}

        return _Setup(
            prob.initial_state(), prob.rhs(op), prob.project,
            lambda s: {"u": s[0], "v": s[1]}, None, diagnostics2,
        )

    if config.kind == "taylor_green":
        initial: object = "taylor_green"
    else:
        initial = ShearLayerParams(rho=config.rho, delta=config.delta)
    prob = IncompressibleProblem.on_square(
        config.nx, reynolds=config.reynolds, ador=config.ador,
        initial=initial, ador_on=config.ador_on,
    )
    op = DscOperator(prob.grid)
    x, y = prob.grid.mesh()

    def velocity(omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        u, v, _ = velocity_from_vorticity(omega, prob.grid, op)
        return u, v

    exact = None
    if config.kind == "taylor_green":
        def exact(t: float) -> Dict[str, np.ndarray]:
            u, v, _ = taylor_green_exact(x, y, t, config.reynolds)
            return {"u": u, "v": v}

        def components(omega: np.ndarray) -> Dict[str, np.ndarray]:
            u, v = velocity(omega)
            return {"u": u, "v": v}
    else:
        def components(omega: np.ndarray) -> Dict[str, np.ndarray]:
            return {"omega": omega}

    def diagnostics(omega: np.ndarray) -> Dict[str, float]:
        u, v = velocity(omega)
        div = op.diff(u, 0, 1) + op.diff(v, 1, 1)
        return {
            "max_abs_omega": float(np.max(np.abs(omega))),
            "kinetic_energy": kinetic_energy(u, v, prob.grid),
            "divergence": float(np.max(np.abs(div))),
        }

    return _Setup(prob.initial_state(op), prob.rhs(op), None, components, exact, diagnostics)


# }}}


# {{{ output


def _write_levels(path: Path, t: float, omega: np.ndarray) -> None:
    lo, hi = float(np.min(omega)), float(np.max(omega))
    with open(path, "w", encoding="utf-8") as fd:
        fd.write(f"# t={t!r} min={lo:.17g} max={hi:.17g} levels={CONTOUR_LEVELS}\n")
        for level in np.linspace(lo, hi, CONTOUR_LEVELS):
            fd.write(f"{level:.17g}\n")


def _write_snapshot(out: Path, config: RunConfig, t: float, u: np.ndarray) -> None:
    if config.kind == "burgers2d":
        write_field_csv(out / field_filename(t, "_u"), t, u[0])
        write_field_csv(out / field_filename(t, "_v"), t, u[1])
    else:
        write_field_csv(out / field_filename(t), t, u)
        if u.ndim == 2:
            _write_levels(out / field_filename(t, "_levels"), t, u)


def _write_table(path: Path, header: List[str], rows: List[List[object]]) -> None:
    def fmt(x: object) -> str:
        return f"{x:.17g}" if isinstance(x, float) else str(x)

    with open(path, "w", encoding="utf-8") as fd:
        fd.write(",".join(header) + "\n")
        for row in rows:
            fd.write(",".join(fmt(x) for x in row) + "\n")


def _summary_lines(config: RunConfig, result: RunResult) -> List[str]:
    a = config.ador
    lines = [
        f"problem = {config.kind}",
        f"re = {config.reynolds!r}",
        f"nx = {config.nx}",
    ]
    if config.kind == "shear_layer":
        lines.append(f"rho = {'discontinuous' if config.rho is None else repr(config.rho)}")
        lines.append(f"delta = {config.delta!r}")
    lines += [
        f"prescription = {a.prescription.value if a.prescription else 'none'}",
        f"d1 = {a.d1!r}",
        f"d2 = {a.d2!r}",
        f"e1 = {a.e1!r}",
        f"gamma1 = {a.gamma1!r}",
        f"gamma2 = {a.gamma2!r}",
        f"scheme = {config.stepper.scheme.value}",
        f"dt = {config.stepper.dt!r}",
        f"t_end = {config.t_end!r}",
        f"snapshots = {', '.join(format_time(t) for t in config.snapshots)}",
        f"verdict = {result.verdict}",
        f"exit_code = {result.exit_code}",
        f"final_time = {result.final_time!r}",
        f"max_abs = {result.max_abs!r}",
    ]
    for name, (l1, l2, linf) in result.final_errors.items():
        lines.append(f"final_error_{name} = l1 {l1:.6e} l2 {l2:.6e} linf {linf:.6e}")
    if result.message:
        lines.append(f"message = {result.message}")
    lines.append(f"wall_time = {result.wall_time:.3f} s")
    return lines


# }}}


def run(config: RunConfig) -> RunResult:
    """Integrate the configured problem and write all output files.

    Errors are reported through :attr:`RunResult.exit_code`; the summary
    file is written in every case once the output directory exists.
    """
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    result = RunResult()
    start = time.perf_counter()
    error_rows: List[List[object]] = []
    diag_rows: List[List[object]] = []
    diag_header: List[str] = []
    try:
        setup = _setup(config)
        if config.oracle == "on" and setup.exact is None:
            raise OracleError(f"no exact solution available for {config.kind!r} at re = {config.reynolds}")
        use_oracle = setup.exact is not None and config.oracle != "off"

        marks = set(config.snapshots) | {config.t_end}
        snapshot_steps = {int(round(t / config.stepper.dt)) for t in config.snapshots}
        for t, u in integrate(
            setup.u0, setup.rhs, config.t_end, config.stepper, times=sorted(marks),
            project=setup.project, max_abs=config.max_abs,
        ):
            result.final_time = t
            result.max_abs = float(np.max(np.abs(u)))
            step = int(round(t / config.stepper.dt))
            if step in snapshot_steps or step == int(round(config.t_end / config.stepper.dt)):
                _write_snapshot(out, config, t, u)

            diag = setup.diagnostics(u)
            diag_header = ["time"] + list(diag)
            diag_rows.append([format_time(t)] + list(diag.values()))

            if use_oracle:
                try:
                    exact = setup.exact(t)
                except (ArithmeticError, ValueError) as exc:
                    raise OracleError(f"exact solution failed at t = {format_time(t)}: {exc}") from exc
                for name, values in setup.components(u).items():
                    rep = error_report(t, values, exact[name])
                    error_rows.append([format_time(t), name, rep.l1, rep.l2, rep.linf])
                    result.final_errors[name] = (rep.l1, rep.l2, rep.linf)

    except (BlowUpError, ConvergenceError) as exc:
        t = getattr(exc, "time", None)
        result.exit_code = EXIT_BLOWUP
        if t is not None:
            result.final_time = t
        result.max_abs = getattr(exc, "max_abs", math.nan)
        result.verdict = "blow-up" if t is None else f"blow-up at t = {format_time(t)}"
        result.message = str(exc)
    except OracleError as exc:
        result.exit_code = EXIT_ORACLE
        result.verdict = "oracle failure"
        result.message = str(exc)
    finally:
        result.wall_time = time.perf_counter() - start
        if diag_rows:
            _write_table(out / "diagnostics.csv", diag_header, diag_rows)
        if error_rows:
            _write_table(out / "errors.csv", ["time", "component", "l1", "l2", "linf"], error_rows)
        (out / "run_summary.txt").write_text("\n".join(_summary_lines(config, result)) + "\n", encoding="utf-8")

    return result
