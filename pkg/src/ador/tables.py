"""
Error tables assembled from completed run directories.

One-dimensional Burgers runs give one table per run with a row per time and
the :math:`L_1` and :math:`L_\\infty` columns. Taylor-Green runs are gathered
into a single table with a row per Reynolds number and an ``(u, v)`` pair of
:math:`L_2` errors per time.

.. autoexception:: TableError

.. autofunction:: mantissa_exponent
.. autofunction:: load_run
.. autofunction:: build_tables
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

REQUIRED_FILES = ("run_summary.txt", "errors.csv")


class TableError(ValueError):
    pass


def mantissa_exponent(x: float, digits: int = 2) -> str:
    """Format *x* as ``2.1(-4)``."""
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        return str(x)
    mantissa, exponent = f"{x:.{digits - 1}e}".split("e")
    return f"{mantissa}({int(exponent)})"


@dataclass(frozen=True)
class RunErrors:
    path: Path
    summary: Dict[str, str]
    #: ``(time, component) -> (l1, l2, linf)``
    errors: Dict[Tuple[float, str], Tuple[float, float, float]]

    @property
    def kind(self) -> str:
        return self.summary.get("problem", "")

    @property
    def reynolds(self) -> float:
        return float(self.summary.get("re", "inf"))

    @property
    def times(self) -> List[float]:
        return sorted({t for t, _ in self.errors})


def load_run(path: Path) -> RunErrors:
    path = Path(path)
    missing = [str(path / name) for name in REQUIRED_FILES if not (path / name).is_file()]
    if missing:
        raise TableError("missing run outputs: " + ", ".join(missing))

    summary = {}
    for line in (path / "run_summary.txt").read_text(encoding="utf-8").splitlines():
        key, sep, value = line.partition(" = ")
        if sep:
            summary[key.strip()] = value.strip()

    errors = {}
    with open(path / "errors.csv", encoding="utf-8", newline="") as fd:
        for row in csv.DictReader(fd):
            errors[float(row["time"]), row["component"]] = (
                float(row["l1"]), float(row["l2"]), float(row["linf"]),
            )
    return RunErrors(path, summary, errors)


def _align(rows: List[List[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [" | ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _time(t: float) -> str:
    return f"{t:g}"


def _reynolds(re: float) -> str:
    return "inf" if math.isinf(re) else f"{re:g}"


def _burgers_table(run: RunErrors) -> Tuple[str, List[List[str]]]:
    text = [["Time", "L1", "Linf"]]
    rows = []
    for t in run.times:
        l1, _, linf = run.errors[t, "u"]
        text.append([_time(t), mantissa_exponent(l1), mantissa_exponent(linf)])
        rows.append(["burgers1d", _reynolds(run.reynolds), _time(t), "u", f"{l1:.6e}", "", f"{linf:.6e}"])
    title = f"Burgers, Re = {_reynolds(run.reynolds)} ({run.path})"
    return f"{title}\n{_align(text)}", rows


def _taylor_green_table(runs: Sequence[RunErrors]) -> Tuple[str, List[List[str]]]:
    times = sorted({t for run in runs for t in run.times})
    header = ["Re"] + [f"{c}(t={_time(t)})" for t in times for c in ("u", "v")]
    text = [header]
    rows = []
    for run in sorted(runs, key=lambda r: r.reynolds):
        cells = [_reynolds(run.reynolds)]
        for t in times:
            for c in ("u", "v"):
                err = run.errors.get((t, c))
                cells.append("-" if err is None else mantissa_exponent(err[1]))
                if err is not None:
                    rows.append(["taylor_green", _reynolds(run.reynolds), _time(t), c, "", f"{err[1]:.6e}", ""])
        text.append(cells)
    return f"Taylor-Green, L2 velocity errors\n{_align(text)}", rows


CSV_HEADER = ["problem", "re", "time", "component", "l1", "l2", "linf"]


def build_tables(paths: Sequence[Path]) -> Tuple[str, List[List[str]]]:
    """Aligned text and CSV rows (without header) for the given run
    directories."""
    if not paths:
        raise TableError("no run directories given")

    runs = [load_run(p) for p in paths]
    blocks = []
    rows: List[List[str]] = []
    for run in runs:
        if run.kind == "burgers1d":
            text, r = _burgers_table(run)
            blocks.append(text)
            rows += r

    tg = [run for run in runs if run.kind == "taylor_green"]
    if tg:
        text, r = _taylor_green_table(tg)
        blocks.append(text)
        rows += r

    if not blocks:
        kinds = sorted({run.kind for run in runs})
        raise TableError(f"no tabulated problem among the runs (found {', '.join(kinds)})")
    return "\n\n".join(blocks) + "\n", rows
