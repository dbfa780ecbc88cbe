"""Serialization of distortion reports: table-style TSV and full-precision JSON.

TSV mirrors the diagnostic-table layout — one row per point (label, raw
distance, embedded distance per dimension, classification per dimension),
then footer rows for the weighted averages, the cumulative principal values
(squared for CA), the distortion constants and, for TCA, the
intrinsic-dimension bounds — with values at 4 decimals.  JSON carries the
same content at full precision with a stable key order, so a parsed document
reproduces every number exactly.
"""

from __future__ import annotations

import json

from .decomposition import CA
from .distortion import DistortionReport, IntrinsicDimensionBounds

__all__ = ["emit_report", "report_to_dict"]

_FORMATS = ("tsv", "json")


def report_to_dict(
    report: DistortionReport, bounds: IntrinsicDimensionBounds | None = None
) -> dict:
    """JSON-ready dict of a report (and optional bounds), stable key order."""
    points = [
        {
            "label": label,
            "raw": float(report.raw[i]),
            "embedded": [float(x) for x in report.embedded[i]],
            "classification": list(report.classification[i]),
            "admissible": [bool(x) for x in report.admissible[i]],
        }
        for i, label in enumerate(report.labels)
    ]
    return {
        "method": report.method,
        "axis": report.axis,
        "dims": list(report.dims),
        "points": points,
        "weighted_average": {
            "raw": report.weighted_average_raw,
            "embedded": list(report.weighted_average_embedded),
        },
        "deltas": list(report.deltas),
        "bounds": None
        if bounds is None
        else {
            "lower": bounds.lower,
            "upper": bounds.upper,
            "total_dispersion": bounds.total_dispersion,
            "cumulative_deltas": list(bounds.cumulative_deltas),
            "point_estimate": bounds.point_estimate,
            "capped": bounds.capped,
        },
        "constants": [
            {"d": d, "c1": c1, "c2": c2}
            for d, (c1, c2) in zip(report.dims, report.constants)
        ],
    }


def _cumulative_deltas(report: DistortionReport) -> list[float]:
    power = 2 if report.method == CA else 1
    cum, total = [], 0.0
    for delta in report.deltas:
        total += delta**power
        cum.append(total)
    return [cum[d - 1] for d in report.dims]


def emit_report(
    report: DistortionReport,
    bounds: IntrinsicDimensionBounds | None = None,
    format: str = "tsv",
) -> str:
    """Render one report as a TSV block or a JSON document.

    Raises
    ------
    ValueError
        Unsupported format.
    """
    if format not in _FORMATS:
        raise ValueError(f"unsupported format {format!r}; expected one of {_FORMATS}")
    if format == "json":
        return json.dumps(report_to_dict(report, bounds), indent=2) + "\n"

    dims = report.dims
    lines = [f"# method={report.method}\taxis={report.axis}"]
    header = ["label", "raw"]
    header += [f"cum{d}" for d in dims]
    header += [f"class{d}" for d in dims]
    lines.append("\t".join(header))
    for i, label in enumerate(report.labels):
        cells = [label, f"{report.raw[i]:.4f}"]
        cells += [f"{x:.4f}" for x in report.embedded[i]]
        cells += list(report.classification[i])
        lines.append("\t".join(cells))
    lines.append(
        "\t".join(
            ["weightedAve", f"{report.weighted_average_raw:.4f}"]
            + [f"{x:.4f}" for x in report.weighted_average_embedded]
        )
    )
    cum_label = "cumDeltaSq" if report.method == CA else "cumDelta"
    lines.append(
        "\t".join([cum_label, ""] + [f"{x:.4f}" for x in _cumulative_deltas(report)])
    )
    lines.append(
        "\t".join(["c1", ""] + [f"{c1:.4f}" for c1, _ in report.constants])
    )
    if report.method != CA:
        lines.append(
            "\t".join(["c2", ""] + [f"{c2:.4f}" for _, c2 in report.constants])
        )
    if bounds is not None:
        cells = [
            "bounds",
            f"lower={bounds.lower}",
            f"upper={bounds.upper}",
            f"point_estimate={bounds.point_estimate}",
        ]
        if bounds.capped:
            cells.append("capped")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
