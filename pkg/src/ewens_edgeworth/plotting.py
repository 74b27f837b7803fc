"""Figures for the sweep CSVs.

The CLI never draws anything itself: it writes the CSV and, next to it, a
small script that calls :func:`render` on that CSV. Running the script
produces the PNG.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .errors import DomainError
from .mode import TRACE_HEADER
from .sweeps import CDF_HEADER, EDGEWORTH_HEADER, LARGEDEV_HEADER, MAXIMUM_HEADER

SCHEMAS = {
    EDGEWORTH_HEADER: "edgeworth-sweep",
    CDF_HEADER: "cdf-sweep",
    MAXIMUM_HEADER: "maximum",
    TRACE_HEADER: "density",
    LARGEDEV_HEADER: "largedev",
}


def detect_kind(csv_path) -> str:
    with open(csv_path, newline="") as fh:
        header = tuple(next(csv.reader(fh), ()))
    try:
        return SCHEMAS[header]
    except KeyError:
        raise DomainError(f"{csv_path}: unknown CSV schema {header!r}") from None


def _read(csv_path):
    with open(csv_path, newline="") as fh:
        return list(csv.DictReader(fh))


def _edgeworth(ax, rows):
    by_r = {}
    for row in rows:
        by_r.setdefault(int(row["r"]), []).append((int(row["n"]), float(row["scaled_error"])))
    for r, pts in sorted(by_r.items()):
        ns, es = zip(*pts)
        ax.loglog(ns, es, "o-", label=f"r = {r}")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$(\log n)^{(r+1)/2}\,\sup_k |\mathrm{error}|$")
    ax.legend(frameon=False)


def _cdf(ax, rows):
    ns = [int(r["n"]) for r in rows]
    ax.loglog(ns, [float(r["sup_error_normal"]) for r in rows], "o-", label="normal")
    ax.loglog(ns, [float(r["sup_error_edgeworth"]) for r in rows], "s-", label="one-term corrected")
    ax.set_xlabel("n")
    ax.set_ylabel("sup lattice CDF error")
    ax.legend(frameon=False)


def _density(ax, rows):
    agree = 0
    ns, fr = [], []
    for i, row in enumerate(rows, start=1):
        agree += int(row["agrees"])
        ns.append(int(row["n"]))
        fr.append(agree / i)
    ax.semilogx(ns, fr, "-")
    ax.set_xlabel("N")
    ax.set_ylabel("running fraction with mode = nint(u*)")
    ax.set_ylim(0, 1.02)


def _maximum(ax, rows):
    ns = [int(r["n"]) for r in rows]
    ax.semilogx(ns, [float(r["scaled_residual"]) for r in rows], "o-")
    ax.set_xlabel("n")
    ax.set_ylabel(r"residual $\times \log n$")


def _largedev(ax, rows):
    by_q = {}
    for row in rows:
        by_q.setdefault(int(row["q"]), []).append((int(row["k"]), float(row["rel_error"])))
    for q, pts in sorted(by_q.items()):
        ks, es = zip(*pts)
        ax.semilogy(ks, es, "o-", label=f"q = {q}")
    ax.set_xlabel("k")
    ax.set_ylabel("relative error")
    ax.legend(frameon=False)


_DRAW = {
    "edgeworth-sweep": _edgeworth,
    "cdf-sweep": _cdf,
    "density": _density,
    "maximum": _maximum,
    "largedev": _largedev,
}


def render(csv_path, png_path=None, kind=None) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    kind = kind or detect_kind(csv_path)
    if kind not in _DRAW:
        raise DomainError(f"no figure for kind {kind!r}")
    png_path = Path(png_path) if png_path else Path(csv_path).with_suffix(".png")
    golden = (math.sqrt(5) - 1) / 2
    fig, ax = plt.subplots(figsize=(6, 6 * golden))
    _DRAW[kind](ax, _read(csv_path))
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path


_SCRIPT = """\
# Generated by ewens-edgeworth; draws {png} from {csv}.
from ewens_edgeworth.plotting import render

render({csv!r}, {png!r}, kind={kind!r})
"""


def emit_plot_script(csv_path, kind=None, script_path=None) -> Path:
    """Write (never run) a script that renders the figure for ``csv_path``."""
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise DomainError(f"{csv_path} does not exist")
    kind = kind or detect_kind(csv_path)
    if kind not in _DRAW:
        raise DomainError(f"no figure for kind {kind!r}")
    script_path = Path(script_path) if script_path else csv_path.with_suffix(".plot.py")
    png = str(csv_path.with_suffix(".png"))
    script_path.write_text(_SCRIPT.format(csv=str(csv_path), png=png, kind=kind))
    return script_path
