"""Table serialization and optional figures.

Rows are lists of Python values: Fractions print as "p/q", floats with
repr (shortest round-trip form), None as an empty cell. Matplotlib is only
imported when a figure is actually requested.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["Table", "format_cell", "to_csv", "to_json", "render_figure", "FIGURE_KINDS"]


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)
    figure_kind: str | None = None


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_cell(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def to_json(table: Table) -> str:
    payload = {
        "meta": {k: _json_cell(v) for k, v in table.meta.items()},
        "columns": list(table.columns),
        "rows": [{c: _json_cell(v) for c, v in zip(table.columns, row)} for row in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _col(table: Table, name: str) -> list:
    i = table.columns.index(name)
    return [row[i] for row in table.rows]


def _floats(values) -> list:
    out = []
    for v in values:
        try:
            out.append(float(v))
        except (TypeError, ValueError, OverflowError):
            out.append(math.nan)
    return out


def _weyl_figure(table, ax):
    n = _col(table, "n")
    ratio = _floats(_col(table, "ratio"))
    if any(math.isfinite(r) for r in ratio):
        ax.plot(n, [abs(r - 1.0) for r in ratio], "o-", ms=3)
        ax.set_yscale("log")
        ax.set_ylabel("|ratio - 1|")
    else:
        c = _col(table, "c_hat_exact")
        logs = [
            math.log10(abs(x.numerator)) - math.log10(x.denominator) if isinstance(x, Fraction) and x else math.nan
            for x in c
        ]
        ax.plot(n, logs, "o-", ms=3)
        ax.set_ylabel("log10 |c_hat_n|")
    ax.set_xlabel("n")


def _poles_figure(table, ax):
    re = _floats(_col(table, "re"))
    im = _floats(_col(table, "im"))
    dims = _col(table, "d")
    for d in sorted(set(dims)):
        idx = [i for i, x in enumerate(dims) if x == d]
        ax.plot([re[i] for i in idx], [im[i] for i in idx], "o", ms=3, label=f"d={d}")
    ax.axhline(0.0, color="0.7", lw=0.5)
    ax.axvline(0.0, color="0.7", lw=0.5)
    ax.set_xlabel("Re v")
    ax.set_ylabel("Im v")
    ax.set_aspect("equal", adjustable="datalim")
    if len(set(dims)) <= 10:
        ax.legend(fontsize=7)


def _ellipse_figure(table, ax):
    j = _col(table, "j")
    h = _floats(_col(table, "H_j_float"))
    ax.semilogy(j, [abs(x) for x in h], "o-")
    ax.set_xlabel("j")
    ax.set_ylabel("|H_j|")


def _grid_figure(table, ax):
    s = _floats(_col(table, "s"))
    v = _floats(_col(table, "value"))
    ax.plot(s, v, "o-", ms=3)
    ax.set_xlabel("s")
    ax.set_ylabel("value")


def _ratio_figure(table, ax):
    n = _col(table, "n")
    r = _floats(_col(table, "ratio"))
    ax.plot(n, r, "o-", ms=3)
    ax.axhline(1.0, color="0.6", lw=0.5)
    ax.set_xlabel("n")
    ax.set_ylabel("ratio")


FIGURE_KINDS = {
    "weyl": _weyl_figure,
    "poles": _poles_figure,
    "ellipse": _ellipse_figure,
    "grid": _grid_figure,
    "ratio": _ratio_figure,
}


def render_figure(table: Table, path: str) -> None:
    """Draw the table's natural plot to path (format from the extension)."""
    if table.figure_kind not in FIGURE_KINDS:
        raise ValueError(f"no figure available for this table ({table.figure_kind!r})")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    FIGURE_KINDS[table.figure_kind](table, ax)
    title = table.meta.get("title")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
