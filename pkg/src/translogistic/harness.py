"""Error landmarks, parameter sweeps, reference overlays and figure data."""
from dataclasses import dataclass, field
import csv
import math
from pathlib import Path
import warnings

import numpy as np

from .csvio import write_csv
from .dynamic import b_dynamic, find_z0, onset_index, r_app_dynamic
from .errors import OverlayWarning, ParseError, RegimeError, SolverError, UsageError
from .maps import DynamicMapConfig, StaticMapConfig, iterate_dynamic, iterate_static
from .period4 import EPS0, EPS_POLE, EtaParam, r4_app
from .static import r2_app
from .weights import classify_region, profile_f4, profile_f8

__all__ = [
    "LandmarkSet",
    "ErrorReport",
    "ApproxTable",
    "ReferenceOverlay",
    "MODES",
    "FIGURE_IDS",
    "solve_K",
    "landmarks",
    "approximation_table",
    "error_sweep",
    "import_reference_errors",
    "align_overlay",
    "weight_rows",
    "emit_figure_data",
]

MODES = ("static2", "static4", "dynamic")
_MODE_ALIASES = {"static-2": "static2", "static-4": "static4"}
DYNAMIC_EPS_MAX = 0.01


@dataclass(frozen=True)
class LandmarkSet:
    """Representative steps before, at and after the dynamic transition."""

    K: float
    n1: int
    n2: int
    n3: int
    grouping: str = "paren"

    def as_tuple(self):
        return (self.n1, self.n2, self.n3)


def solve_K(eps, damping=0.5, tol=1e-12, max_iter=200):
    """Solve ``K = sqrt(log K - 1.5 log eps)`` by damped fixed-point iteration.

    Parameters
    ----------
    eps : float
        In ``(0, 1)``.
    damping : float, optional
        Weight of the new iterate in each update.

    Raises
    ------
    SolverError
        If the iteration does not settle within `max_iter` steps or leaves
        the domain of the square root (no solution exists for
        ``eps > exp(-(1 + log 2)/3)``).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("solve_K needs 0 < eps < 1")
    c = -1.5 * math.log(eps)
    k = math.sqrt(c)
    for _ in range(max_iter):
        arg = math.log(k) + c
        if arg <= 0.0:
            raise SolverError(f"K equation has no solution for eps={eps!r}")
        new = (1.0 - damping) * k + damping * math.sqrt(arg)
        if abs(new - k) < tol * 1e-2:
            k = new
            if abs(k - math.sqrt(math.log(k) + c)) < tol:
                return k
        k = new
    raise SolverError(f"K iteration did not converge for eps={eps!r}")


def landmarks(eps, grouping="paren"):
    """Landmark steps for the dynamic error report.

    ``n1 = floor(1/sqrt(eps))``.  With ``grouping="paren"``,
    ``n2 = floor((K + 1/K)/sqrt(eps))`` and ``n3 = floor((K + 15/K)/sqrt(eps))``;
    ``grouping="literal"`` gives ``floor(K + 1/(K sqrt(eps)))`` and
    ``floor(K + 15/(K sqrt(eps)))``.
    """
    k = solve_K(eps)
    r = math.sqrt(eps)
    n1 = math.floor(1.0 / r)
    if grouping == "paren":
        n2 = math.floor((k + 1.0 / k) / r)
        n3 = math.floor((k + 15.0 / k) / r)
    elif grouping == "literal":
        n2 = math.floor(k + 1.0 / (k * r))
        n3 = math.floor(k + 15.0 / (k * r))
    else:
        raise UsageError(f"unknown grouping {grouping!r}")
    return LandmarkSet(k, n1, n2, n3, grouping)


@dataclass(frozen=True)
class ApproxTable:
    """Exact and approximate orbit on ``n = 0 .. N``."""

    eps: float
    n: np.ndarray
    x: np.ndarray
    exact: np.ndarray
    approx: np.ndarray

    @property
    def error(self):
        return np.abs(self.exact - self.approx)

    def rows(self):
        return zip(self.n.tolist(), self.x, self.exact, self.approx, self.error)


def _normalize_mode(mode):
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


def _check_regime(mode, eps):
    if mode == "static2" and not 0.0 < eps < EPS0:
        raise RegimeError(f"static2 needs 0 < eps < sqrt(6) - 2, got {eps!r}")
    if mode == "static4" and not EPS0 < eps <= 1.0:
        raise RegimeError(f"static4 needs sqrt(6) - 2 < eps <= 1, got {eps!r}")
    if mode == "dynamic" and not 0.0 < eps <= DYNAMIC_EPS_MAX:
        raise RegimeError(f"dynamic needs 0 < eps <= {DYNAMIC_EPS_MAX}, got {eps!r}")


def approximation_table(mode, eps, n_max, y0=2.0 / 3.0):
    """Exact orbit and its transasymptotic approximation side by side."""
    mode = _normalize_mode(mode)
    _check_regime(mode, eps)
    n = np.arange(n_max + 1)
    x = eps * n
    if mode == "dynamic":
        exact = iterate_dynamic(DynamicMapConfig(eps, 3.0, y0), n_max).values
        approx = r_app_dynamic(x, eps)
    else:
        exact = iterate_static(StaticMapConfig(eps, y0), n_max).values
        approx = (r2_app if mode == "static2" else r4_app)(x, eps)
    return ApproxTable(eps, n, x, np.asarray(exact), np.asarray(approx, dtype=float))


@dataclass(frozen=True)
class ErrorReport:
    """Error metrics of one approximation at one parameter value.

    Attributes
    ----------
    mode : str
    eps : float
    max_abs_error : float
        Largest ``|exact - approx|`` over `n_range`.
    argmax_n : int
    n_range : tuple of int
        Inclusive step range used.
    landmark_errors : dict
        ``{n: error}`` at the landmark steps (dynamic mode).
    branch_errors : tuple of float
        Largest tail error on each residue class of n mod 4, ordered by the
        branch's exact value (static4).
    """

    mode: str
    eps: float
    max_abs_error: float
    argmax_n: int
    n_range: tuple
    landmark_errors: dict = field(default_factory=dict)
    branch_errors: tuple = ()


BRANCH_WINDOW = 400


def _branch_errors(tab, window=BRANCH_WINDOW):
    """Tail error on each residue class of n mod 4.

    Each class is one branch of the 4-periodic tail (two values once the
    orbit has doubled again); the largest error over the last `window`
    steps is reported, ordered by the mean exact value of the branch.
    """
    w = min(window, len(tab.n))
    n, ex, err = tab.n[-w:], tab.exact[-w:], tab.error[-w:]
    branches = sorted((ex[n % 4 == r].mean(), err[n % 4 == r].max()) for r in range(4))
    return tuple(float(b[1]) for b in branches)


def _default_n_max(mode, eps, lm):
    if mode == "static2":
        return 2000
    if mode == "static4":
        return 4000
    return max(int(math.floor(0.3 / eps)), lm.n3)


def error_sweep(mode, eps_grid, n_max=None, grouping="paren"):
    """Compare an approximation with exact iteration across parameter values.

    Parameters
    ----------
    mode : {"static2", "static4", "dynamic"}
    eps_grid : sequence of float
        Every value must lie in the regime of `mode`.
    n_max : int, optional
        Last step compared.  Defaults to 2000 (static2), 4000 (static4) or
        ``max(floor(0.3/eps), n3)`` (dynamic).
    grouping : {"paren", "literal"}
        Landmark reading for dynamic mode.

    Returns
    -------
    list of ErrorReport

    Raises
    ------
    RegimeError
        If any grid value lies outside the regime of `mode`.
    """
    mode = _normalize_mode(mode)
    grid = [float(e) for e in eps_grid]
    for e in grid:
        _check_regime(mode, e)
    reports = []
    for e in grid:
        lm = landmarks(e, grouping) if mode == "dynamic" else None
        n_top = n_max if n_max is not None else _default_n_max(mode, e, lm)
        tab = approximation_table(mode, e, n_top)
        err = tab.error
        k = int(np.argmax(err))
        extra = {}
        if mode == "dynamic":
            extra["landmark_errors"] = {
                n: float(err[n]) for n in lm.as_tuple() if n <= n_top
            }
        if mode == "static4":
            extra["branch_errors"] = _branch_errors(tab)
        reports.append(ErrorReport(mode, e, float(err[k]), k, (0, n_top), **extra))
    return reports


@dataclass(frozen=True)
class ReferenceOverlay:
    """Reference error curve loaded from ``eps,error`` CSV."""

    eps: np.ndarray
    error: np.ndarray
    source: str = ""

    def __len__(self):
        return len(self.eps)


def import_reference_errors(path):
    """Read a reference error curve with columns ``eps,error``.

    Raises
    ------
    ParseError
        On a wrong header or a malformed record, with its line number.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    rows = list(csv.reader(text.splitlines()))
    rows = [(i + 1, r) for i, r in enumerate(rows) if r and any(c.strip() for c in r)]
    if not rows:
        warnings.warn(f"{path} is empty; overlay is empty", OverlayWarning, stacklevel=2)
        return ReferenceOverlay(np.empty(0), np.empty(0), str(path))
    line, header = rows[0]
    if [c.strip() for c in header] != ["eps", "error"]:
        raise ParseError(f"expected header 'eps,error', got {','.join(header)!r}", line)
    eps, err = [], []
    for line, rec in rows[1:]:
        if len(rec) != 2:
            raise ParseError(f"expected 2 fields, got {len(rec)}", line)
        try:
            eps.append(float(rec[0]))
            err.append(float(rec[1]))
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
    if not eps:
        warnings.warn(f"{path} has no records; overlay is empty", OverlayWarning, stacklevel=2)
    order = np.argsort(eps, kind="stable")
    return ReferenceOverlay(np.asarray(eps)[order], np.asarray(err)[order], str(path))


def align_overlay(overlay, eps_grid, rtol=1e-9):
    """Reference errors at `eps_grid`, taken from the nearest overlay point.

    Warns with `OverlayWarning` when any grid point has no exact match.
    Returns NaN everywhere for an empty overlay.
    """
    grid = np.asarray(eps_grid, dtype=float)
    if len(overlay) == 0:
        return np.full(grid.shape, np.nan)
    idx = np.abs(grid[:, None] - overlay.eps[None, :]).argmin(axis=1)
    near = overlay.eps[idx]
    if np.any(np.abs(near - grid) > rtol * np.maximum(np.abs(grid), 1e-300)):
        warnings.warn("reference grid differs from the sweep grid; using nearest points",
                      OverlayWarning, stacklevel=2)
    return overlay.error[idx]


def weight_rows(profile):
    """Rows ``eps, re_f, im_f, region`` of a weight profile."""
    for e, f in zip(profile.eps_grid, profile.f_values):
        yield (float(e), float(np.real(f)), float(np.imag(f)), classify_region(profile, e).label)


# figure data ----------------------------------------------------------------

FIGURE_IDS = (
    "dyn-exact",
    "A1-log",
    "A2-log",
    "static2-example",
    "static-approx",
    "dyn-approx",
    "dyn-error",
    "4-per",
)

_GP_HEAD = """set datafile separator ","
set terminal pngcairo size {w},{h}
set output "{name}.png"
set key autotitle columnhead
"""


def _gp(name, body, w=900, h=500):
    return _GP_HEAD.format(name=name, w=w, h=h) + body


def _write(out, name, header, rows):
    p = out / f"{name}.csv"
    write_csv(p, header, rows)
    return p


def _write_script(out, name, text):
    p = out / f"{name}.gp"
    p.write_text(text, encoding="utf-8")
    return p


def _fig_dyn_exact(out, ref):
    eps = 0.012**2
    n_max = 6000
    orbit = iterate_dynamic(DynamicMapConfig(eps), n_max)
    onset = onset_index(eps)
    rows = ((n, y, int(n == onset)) for n, y in zip(orbit.n.tolist(), orbit.values))
    files = [_write(out, "dyn-exact", ["n", "y", "onset"], rows)]
    files.append(_write_script(out, "dyn-exact", _gp("dyn-exact", f"""set xlabel "n"
set ylabel "y(n)"
set arrow from {onset},graph 0 to {onset},graph 1 nohead lc rgb "red"
plot "dyn-exact.csv" using 1:2 with dots lc rgb "black" title "exact"
""")))
    return files


def _annotations(out, name, items):
    return _write(out, f"{name}_annotations", ["name", "value"], items)


def _weight_script(name, title):
    return _gp(name, f"""set multiplot layout 1,2 title "{title}"
set xlabel "eps"
set ylabel "Re f"
set yrange [-1:1]
plot "{name}.csv" using 1:2 with lines title "Re f"
set ylabel "Im f"
set autoscale y
plot "{name}.csv" using 1:3 with lines title "Im f"
unset multiplot
""", w=1200)


def _fig_a1(out, ref):
    grid = np.linspace(0.0025, 0.6, 240)
    prof = profile_f4(grid)
    files = [_write(out, "A1-log", ["eps", "re_f", "im_f", "region"], weight_rows(prof))]
    files.append(_annotations(out, "A1-log", [("pole", prof.poles[0]),
                                               ("sign_change", prof.sign_changes[0])]))
    files.append(_write_script(out, "A1-log", _weight_script("A1-log", "4-periodic weight")))
    return files


def _fig_a2(out, ref):
    grid = np.linspace(EPS0 + 2.5e-4, 0.6, 200)
    prof = profile_f8(grid)
    files = [_write(out, "A2-log", ["eps", "re_f", "im_f", "region"], weight_rows(prof))]
    files.append(_annotations(out, "A2-log", [("eps0", EPS0), ("pole", prof.poles[0]),
                                               ("sign_change", prof.sign_changes[0])]))
    files.append(_write_script(out, "A2-log", _weight_script("A2-log", "8-periodic weight")))
    return files


_APPROX_HEADER = ["n", "x", "exact", "approx", "error"]


def _approx_script(name, csvs):
    plots = []
    for c in csvs:
        plots.append(f"""plot "{c}" using 1:3 with points pt 7 ps 0.4 title "exact", \\
     "{c}" using 1:4 with lines title "approx"
plot "{c}" using 1:5 with lines title "error"
""")
    return _gp(name, f"set multiplot layout {len(csvs)},2\nset xlabel \"n\"\n" + "".join(plots)
               + "unset multiplot\n", w=1200, h=400 * len(csvs))


def _fig_static2_example(out, ref):
    a = approximation_table("static2", 0.05, 600)
    b = approximation_table("static4", 0.51, 400)
    files = [_write(out, "static2-example_a", _APPROX_HEADER, a.rows()),
             _write(out, "static2-example_b", _APPROX_HEADER, b.rows())]
    files.append(_write_script(out, "static2-example", _approx_script(
        "static2-example", ["static2-example_a.csv", "static2-example_b.csv"])))
    return files


def _fig_static_approx(out, ref):
    grid = np.linspace(0.005, 0.1, 20)
    reps = error_sweep("static2", grid)
    header = ["eps", "error"]
    cols = [grid, [r.max_abs_error for r in reps]]
    if ref is not None:
        header.append("reference")
        cols.append(align_overlay(ref, grid))
    files = [_write(out, "static-approx_a", header, zip(*cols))]
    etas = np.linspace(0.005, 0.06, 12)
    reps4 = error_sweep("static4", [EtaParam.from_eta(h).eps for h in etas])
    rows = ((h, *r.branch_errors) for h, r in zip(etas, reps4))
    files.append(_write(out, "static-approx_b", ["eta", "branch1", "branch2", "branch3", "branch4"], rows))
    refplot = ', \\\n     "static-approx_a.csv" using 1:3 with lines title "reference"' if ref is not None else ""
    files.append(_write_script(out, "static-approx", _gp("static-approx", f"""set multiplot layout 1,2
set logscale y
set xlabel "eps"
plot "static-approx_a.csv" using 1:2 with linespoints title "2-periodic"{refplot}
set xlabel "eta"
plot for [k=2:5] "static-approx_b.csv" using 1:k with linespoints
unset multiplot
""", w=1200)))
    return files


def _fig_dyn_approx(out, ref):
    eps = 0.001
    tab = approximation_table("dynamic", eps, 300)
    lm = landmarks(eps)
    files = [_write(out, "dyn-approx", _APPROX_HEADER, tab.rows())]
    files.append(_annotations(out, "dyn-approx", [("n1", lm.n1), ("n2", lm.n2), ("n3", lm.n3)]))
    files.append(_write_script(out, "dyn-approx", _approx_script("dyn-approx", ["dyn-approx.csv"])))
    return files


def _fig_dyn_error(out, ref):
    grid = np.geomspace(5e-4, 1e-2, 16)
    reps = error_sweep("dynamic", grid)
    header = ["eps", "err_n1", "err_n2", "err_n3"]
    rows = []
    for e, r in zip(grid, reps):
        rows.append([e] + list(r.landmark_errors.values()))
    if ref is not None:
        header.append("reference")
        for row, v in zip(rows, align_overlay(ref, grid)):
            row.append(v)
    files = [_write(out, "dyn-error", header, rows)]
    files.append(_write_script(out, "dyn-error", _gp("dyn-error", """set logscale xy
set xlabel "eps"
plot for [k=2:4] "dyn-error.csv" using 1:k with linespoints
""")))
    return files


def _fig_4per(out, ref):
    z = np.linspace(0.0, 1.5, 1501)
    z = z[z != EPS_POLE]
    b = b_dynamic(z)
    z0 = find_z0()
    files = [_write(out, "4-per", ["z", "re_B", "im_B"], zip(z, b.real, b.imag))]
    files.append(_annotations(out, "4-per", [("z0", z0), ("branch_point", EPS_POLE)]))
    files.append(_write_script(out, "4-per", _gp("4-per", f"""set multiplot layout 1,2
set xlabel "z"
set arrow from {z0!r},graph 0 to {z0!r},graph 1 nohead lc rgb "red"
plot "4-per.csv" using 1:2 with lines title "Re B"
plot "4-per.csv" using 1:3 with lines title "Im B"
unset multiplot
""", w=1200)))
    return files


_FIGURES = {
    "dyn-exact": _fig_dyn_exact,
    "A1-log": _fig_a1,
    "A2-log": _fig_a2,
    "static2-example": _fig_static2_example,
    "static-approx": _fig_static_approx,
    "dyn-approx": _fig_dyn_approx,
    "dyn-error": _fig_dyn_error,
    "4-per": _fig_4per,
}


def emit_figure_data(figure_id, output_path, ref=None):
    """Write the CSV data and a gnuplot script for one figure.

    Parameters
    ----------
    figure_id : str
        One of `FIGURE_IDS`.
    output_path : str or Path
        Directory receiving the files; created if missing.
    ref : ReferenceOverlay, optional
        Reference error curve added as an extra column where a figure has an
        error-versus-eps panel.

    Returns
    -------
    list of Path
        Files written.

    Raises
    ------
    UsageError
        For an unknown figure id.
    """
    if figure_id not in _FIGURES:
        raise UsageError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    out = Path(output_path)
    out.mkdir(parents=True, exist_ok=True)
    return _FIGURES[figure_id](out, ref)
