"""Command-line front end: load a table, analyze, emit reports and maps.

Exit codes: 0 success, 1 parse/validation failure, 2 numerical failure.
A residual exhausted below the requested number of dimensions is a warning,
not an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .ca import ca_decompose
from .contingency import (
    COLS,
    ROWS,
    InvalidTableError,
    build_model,
    load_table,
    sparsity,
)
from .decomposition import numerical_rank
from .distortion import (
    DEFAULT_REL_TOL,
    IntrinsicDimensionBounds,
    distortion_report,
    intrinsic_dimension_bounds,
)
from .report import emit_report, report_to_dict
from .svgmap import emit_map
from .tca import tca_decompose, tca_total_dispersion

__all__ = ["AnalysisConfig", "build_parser", "run", "main"]

_METHODS = ("ca", "tca", "both")
_AXES = ("rows", "cols", "both")
_STRATEGIES = ("auto", "exhaustive", "iterative")
_FORMATS = ("tsv", "json")


@dataclass(frozen=True)
class AnalysisConfig:
    """Validated bundle of one analysis run's settings."""

    input_path: str
    method: str = "both"
    dims: int = 3
    axis: str = "rows"
    tca_strategy: str = "auto"
    restarts: int = 20
    seed: int = 0
    rel_tol: float = DEFAULT_REL_TOL
    drop_empty: bool = False
    output_format: str = "tsv"
    map_path: str | None = None
    map_axes: tuple[int, int] = (1, 2)
    delimiter: str | None = None

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.axis not in _AXES:
            raise ValueError(f"axis must be one of {_AXES}, got {self.axis!r}")
        if self.tca_strategy not in _STRATEGIES:
            raise ValueError(
                f"tca-strategy must be one of {_STRATEGIES}, got {self.tca_strategy!r}"
            )
        if self.output_format not in _FORMATS:
            raise ValueError(f"format must be one of {_FORMATS}, got {self.output_format!r}")
        if self.dims < 1:
            raise ValueError("dims must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.rel_tol <= 0:
            raise ValueError("rel-tol must be > 0")
        axes = tuple(int(a) for a in self.map_axes)
        if len(axes) != 2 or min(axes) < 1:
            raise ValueError("map-axes must be two positive axis numbers")
        object.__setattr__(self, "map_axes", axes)


def run(config: AnalysisConfig) -> int:
    """Execute one analysis; report to stdout, diagnostics to stderr."""
    try:
        table = load_table(
            config.input_path, drop_empty=config.drop_empty, delimiter=config.delimiter
        )
        model = build_model(table)
    except (InvalidTableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    spar = sparsity(table)
    try:
        rank = numerical_rank(model)
        if rank == 0:
            print(
                "warning: residual rank is 0 (independence table); nothing to decompose",
                file=sys.stderr,
            )
            _emit(config, spar, [])
            return 0
        n_dims = min(config.dims, rank)
        if n_dims < config.dims:
            print(
                f"warning: requested dims {config.dims} exceeds rank {rank}; using {n_dims}",
                file=sys.stderr,
            )
        dims = list(range(1, n_dims + 1))
        axes = [ROWS, COLS] if config.axis == "both" else [config.axis]
        methods = ["ca", "tca"] if config.method == "both" else [config.method]

        blocks: list[tuple] = []
        map_dec = None
        for method in methods:
            bounds: IntrinsicDimensionBounds | None = None
            if method == "ca":
                dec = ca_decompose(model, k=n_dims)
            else:
                dec = tca_decompose(
                    model,
                    k=n_dims,
                    strategy=config.tca_strategy,
                    restarts=config.restarts,
                    seed=config.seed,
                )
                if dec.k:
                    bounds = intrinsic_dimension_bounds(
                        dec.deltas, tca_total_dispersion(model)
                    )
            if dec.k == 0:  # residual exhausted immediately; warning already issued
                continue
            if map_dec is None or method == "tca":
                map_dec = dec
            report_dims = [d for d in dims if d <= dec.k]
            for axis in axes:
                report = distortion_report(model, dec, axis, report_dims, config.rel_tol)
                blocks.append((report, bounds))
        if config.map_path is not None:
            if map_dec is None:
                raise ValueError("no axes extracted; cannot draw a factor map")
            emit_map(map_dec, config.map_axes, config.map_path)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    _emit(config, spar, blocks)
    return 0


def _emit(config: AnalysisConfig, spar: float, blocks: list[tuple]) -> None:
    if config.output_format == "json":
        document = {
            "sparsity": spar,
            "reports": [report_to_dict(report, bounds) for report, bounds in blocks],
        }
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
        return
    parts = [f"# sparsity={spar:.7f}\n"]
    parts.extend(emit_report(report, bounds, "tsv") for report, bounds in blocks)
    sys.stdout.write("\n".join(parts))


def _axes_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        a, b = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected two comma-separated axis numbers, e.g. 1,2"
        ) from None
    return a, b


class _Parser(argparse.ArgumentParser):
    # Argument problems are validation failures: exit 1, not argparse's 2.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="analyze",
        description=(
            "Correspondence analysis (CA) and taxicab correspondence analysis (TCA) "
            "of a contingency table, with per-point embedding-distortion reports "
            "and TCA intrinsic-dimension bounds."
        ),
    )
    parser.add_argument("--input", dest="input_path", required=True, help="contingency table (CSV/TSV)")
    parser.add_argument("--method", choices=_METHODS, default="both")
    parser.add_argument("--dims", type=int, default=3, help="max embedding dimension (default 3)")
    parser.add_argument("--axis", choices=_AXES, default="rows")
    parser.add_argument("--tca-strategy", dest="tca_strategy", choices=_STRATEGIES, default="auto")
    parser.add_argument("--restarts", type=int, default=20, help="random restarts of the iterative solver")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, default=DEFAULT_REL_TOL,
                        help="relative isometry tolerance")
    parser.add_argument("--drop-empty", dest="drop_empty", action="store_true",
                        help="drop all-zero rows/columns instead of failing")
    parser.add_argument("--format", dest="output_format", choices=_FORMATS, default="tsv")
    parser.add_argument("--map", dest="map_path", default=None, help="write an SVG factor map here")
    parser.add_argument("--map-axes", dest="map_axes", type=_axes_pair, default=(1, 2),
                        help="axis pair for the map (default 1,2)")
    parser.add_argument("--delimiter", default=None, help="field separator (default: auto-detect)")
    return parser


def main(argv: list[str] | None = None) -> int:
    namespace = build_parser().parse_args(argv)
    try:
        config = AnalysisConfig(**vars(namespace))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
