"""Report assembly: JSON-able tables, CSV rendering, and figure files.

Two report kinds ship: `qtable` (scaled quotient norms of the basis fields
with their upper/lower certificates) and `membership` (growth diagnostics
for a coefficient family). Reports are plain dicts of strings, ints, bools
and floats, already in canonical form for `jsonio.dumps_canonical`.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from . import freealg, norms
from .errors import InputFormatError
from .rational import format_rational

REPORT_KINDS = ("qtable", "membership")


def qtable_report(t: Fraction, nmax: int, columns: int = 40,
                  pivot: str = "bland") -> dict:
    rows = []
    for row in freealg.basis_norm_table(t, nmax, columns, pivot):
        rows.append({
            "n": row["n"],
            "exact": format_rational(row["exact"]),
            "upper": format_rational(row["upper"]),
            "lower_operator": format_rational(row["lower_operator"]),
            "lower_operator_witness": row["lower_operator_witness"],
            "lower_series_t": format_rational(row["lower_series_t"]),
            "lower_series_2t": format_rational(row["lower_series_2t"]),
            "sandwich_ok": row["sandwich_ok"],
            "halved_reading_ok": row["halved_reading_ok"],
        })
    return {
        "kind": "qtable",
        "t": format_rational(Fraction(t)),
        "nmax": nmax,
        "columns": columns,
        "rows": rows,
    }


def membership_report(rule: str, order: int, r: Fraction = Fraction(1),
                      coeffs: Sequence[Fraction] | None = None) -> dict:
    raw = norms.membership_report(rule, order, r, coeffs)
    return {
        "kind": "membership",
        "rule": raw["rule"],
        "r": format_rational(raw["r"]),
        "order": raw["order"],
        "indicator": [
            {"j": entry["j"], "value": entry["value"]}
            for entry in raw["indicator"]
        ],
        "partial_norms": [
            {"sigma": format_rational(entry["sigma"]),
             "value": format_rational(entry["value"])}
            for entry in raw["partial_norms"]
        ],
        "classification": raw["classification"],
        **({"threshold_estimate": raw["threshold_estimate"]}
           if "threshold_estimate" in raw else {}),
    }


_QTABLE_COLUMNS = (
    "n", "exact", "upper", "lower_operator", "lower_operator_witness",
    "lower_series_t", "lower_series_2t", "sandwich_ok", "halved_reading_ok",
)


def report_to_csv(report: dict) -> str:
    """Flat CSV rendering; membership emits its two tables as sections."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    kind = report.get("kind")
    if kind == "qtable":
        writer.writerow(_QTABLE_COLUMNS)
        for row in report["rows"]:
            writer.writerow([row[c] for c in _QTABLE_COLUMNS])
    elif kind == "membership":
        writer.writerow(("j", "indicator"))
        for entry in report["indicator"]:
            writer.writerow((entry["j"], repr(entry["value"])))
        writer.writerow(())
        writer.writerow(("sigma", "partial_norm"))
        for entry in report["partial_norms"]:
            writer.writerow((entry["sigma"], entry["value"]))
        writer.writerow(())
        writer.writerow(("classification", report["classification"]))
        if "threshold_estimate" in report:
            writer.writerow(("threshold_estimate",
                             repr(report["threshold_estimate"])))
    else:
        raise InputFormatError(f"no CSV rendering for report kind {kind!r}")
    return out.getvalue()


def render_figure(report: dict, path: str) -> None:
    """Render a report to an image file next to the delimited output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    kind = report.get("kind")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    try:
        if kind == "qtable":
            ns = [row["n"] for row in report["rows"]]
            for key, style in (("exact", "o-"), ("upper", "s--"),
                               ("lower_operator", "^:"), ("lower_series_t", "v:")):
                ax.semilogy(ns, [float(Fraction(row[key])) for row in report["rows"]],
                            style, label=key)
            ax.set_xlabel("basis degree n")
            ax.set_ylabel(f"scaled quotient norm, t = {report['t']}")
            ax.legend()
        elif kind == "membership":
            js = [entry["j"] for entry in report["indicator"]]
            ax.plot(js, [entry["value"] for entry in report["indicator"]],
                    "o-", label="growth indicator")
            if "threshold_estimate" in report:
                ax.axhline(1.0 / report["threshold_estimate"], color="gray",
                           linestyle="--", label="indicator limit estimate")
            ax.set_xlabel("coefficient index j")
            ax.set_ylabel("(|a_j|/j!)^(1/(j-1))")
            ax.set_title(f"rule {report['rule']}: {report['classification']}")
            ax.legend()
        else:
            raise InputFormatError(f"no figure rendering for report kind {kind!r}")
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
