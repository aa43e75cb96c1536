"""Parameter sweeps over t and their CSV / JSON / gnuplot serialization."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import PTEPError
from .model import build_hamiltonian, partition, z_of_t
from .spectra import CLUSTER_TOL, POLY, REAL_TOL, classify, eigenvalues, sort_eigenvalues

FORMATS = ("csv", "json", "gnuplot")


@dataclass(frozen=True, eq=False)
class SweepRecord:
    t: float
    eigenvalues: np.ndarray
    m: int
    k: int
    n_real: int
    error: str | None = None


def sweep_point(n: int, t: float, method: str = POLY, real_tol: float = REAL_TOL,
                cluster_tol: float = CLUSTER_TOL) -> SweepRecord:
    z = z_of_t(n, t)
    p = partition(z)
    try:
        spec = classify(eigenvalues(build_hamiltonian(z), method), real_tol, cluster_tol)
    except PTEPError as exc:
        nan = np.full(n, complex(math.nan, math.nan))
        return SweepRecord(t, nan, p.m, p.k, -1, f"{type(exc).__name__}: {exc}")
    return SweepRecord(t, sort_eigenvalues(spec.eigenvalues), p.m, p.k, spec.real_count)


def _point(args):
    return sweep_point(*args)


def sweep(n: int = 8, t_min: float = -1.0, t_max: float = 18.0, steps: int = 400,
          method: str = POLY, real_tol: float = REAL_TOL, cluster_tol: float = CLUSTER_TOL,
          jobs: int = 1) -> list[SweepRecord]:
    """Uniform grid including both endpoints; records come back in grid order."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not t_min < t_max:
        raise ValueError("need t_min < t_max")
    grid = [float(t) for t in np.linspace(t_min, t_max, steps)]
    tasks = [(n, t, method, real_tol, cluster_tol) for t in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_point(a) for a in tasks]


def fmt(x: float) -> str:
    """Shortest round-trip decimal (at most 17 significant digits)."""
    return repr(float(x))


def csv_header(n: int) -> list[str]:
    cols = ["t"]
    for i in range(1, n + 1):
        cols += [f"re_{i}", f"im_{i}"]
    return cols + ["m", "k", "n_real"]


def to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = len(records[0].eigenvalues) if records else 0
    writer.writerow(csv_header(n))
    for r in records:
        row = [fmt(r.t)]
        for e in r.eigenvalues:
            row += [fmt(e.real), fmt(e.imag)]
        writer.writerow(row + [str(r.m), str(r.k), str(r.n_real)])
    return buf.getvalue()


def to_json(records) -> str:
    out = []
    for r in records:
        obj = {"t": float(r.t),
               "eigs": [[float(e.real), float(e.imag)] for e in r.eigenvalues],
               "m": r.m, "k": r.k, "n_real": r.n_real}
        if r.error:
            obj["error"] = r.error
        out.append(obj)
    return json.dumps(out) + "\n"


def gnuplot_script(csv_name: str, n: int, real_tol: float = REAL_TOL) -> str:
    plots = []
    for i in range(1, n + 1):
        re_col, im_col = 2 * i, 2 * i + 1
        sel = (f"(abs(column({im_col})) <= {real_tol!r}*(1+abs(column({re_col}))) "
               f"? column({re_col}) : 1/0)")
        plots.append(f"'{csv_name}' using 1:{sel} with points pt 7 ps 0.3 lc rgb 'black' notitle")
    return ("set datafile separator ','\n"
            "set key off\n"
            "set xlabel 't'\n"
            "set ylabel 'real eigenvalues'\n"
            "plot " + ", \\\n     ".join(plots) + "\n")


def emit(records, format: str, path) -> list[Path]:
    """Write records; returns the files written (gnuplot writes CSV + script)."""
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    path = Path(path)
    try:
        if format == "csv":
            path.write_text(to_csv(records), newline="")
            return [path]
        if format == "json":
            path.write_text(to_json(records), newline="")
            return [path]
        csv_path = path.with_suffix(".csv")
        gp_path = path.with_suffix(".gp")
        n = len(records[0].eigenvalues) if records else 0
        csv_path.write_text(to_csv(records), newline="")
        gp_path.write_text(gnuplot_script(os.path.basename(csv_path), n), newline="")
        return [csv_path, gp_path]
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
