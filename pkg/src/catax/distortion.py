"""Per-point embedding distortion and TCA intrinsic-dimension bounds.

Embedding the profiles in the first ``d`` factor axes maps each point's raw
distance from the barycenter (squared chi-square for CA, taxicab for TCA) to
an embedded distance (``sum f**2`` resp. ``sum |f|``).  Comparing the two
classifies every point as a contraction, isometry or stretching; the extreme
ratios over admissible points are the distortion constants ``c1`` (and ``c2``
for TCA).  CA below full rank only contracts; TCA can do either.

For TCA the cumulative principal values are compared against the total
dispersion ``T = sum |D_ij|``: the smallest ``d`` whose cumulative sum
reaches ``T`` is an upper bound for the intrinsic dimension, the largest
``d`` still below ``T`` a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ca import benzecri_distance, embedded_sq_distance
from .contingency import CorrespondenceModel, _check_axis, _freeze
from .decomposition import CA, TCA, FactorDecomposition
from .tca import embedded_l1_distance, taxicab_distance

__all__ = [
    "CONTRACTION",
    "ISOMETRY",
    "STRETCHING",
    "classify",
    "DistortionReport",
    "distortion_report",
    "distortion_constants",
    "IntrinsicDimensionBounds",
    "intrinsic_dimension_bounds",
    "DEFAULT_REL_TOL",
]

CONTRACTION = "Contraction"
ISOMETRY = "Isometry"
STRETCHING = "Stretching"

DEFAULT_REL_TOL = 1e-9


def classify(raw: float, embedded: float, rel_tol: float = DEFAULT_REL_TOL) -> str:
    """Compare a raw distance with its embedded counterpart.

    Within ``rel_tol * raw`` of each other -> isometry; below -> contraction;
    above -> stretching.  A point sitting on the barycenter (``raw == 0``)
    is an isometry by convention (its embedded distance is 0 too); such
    points are excluded from the distortion constants.
    """
    if raw < 0 or embedded < 0:
        raise ValueError("distances must be nonnegative")
    if raw == 0 or abs(embedded - raw) <= rel_tol * raw:
        return ISOMETRY
    return CONTRACTION if embedded < raw else STRETCHING


@dataclass(frozen=True)
class DistortionReport:
    """Raw-versus-embedded comparison for every point of one axis.

    Attributes
    ----------
    method : {"CA", "TCA"}
    axis : {"rows", "cols"}
    labels : tuple of str
    dims : tuple of int
        Embedding dimensions evaluated (sorted, e.g. ``(1, 2, 3)``).
    raw : (n,) ndarray
        Squared chi-square distance (CA) or taxicab distance (TCA).
    embedded : (n, len(dims)) ndarray
        Cumulative embedded distance per point and dimension.
    classification : tuple of tuple of str
        Per point, per dimension.
    admissible : (n, len(dims)) ndarray of bool
        Points entering the constants at each dimension: nonzero raw and
        nonzero embedded distance.
    weights : (n,) ndarray
        Marginals of the axis; the weighted average of ``raw`` is the total
        inertia (CA) or total dispersion (TCA).
    weighted_average_raw : float
    weighted_average_embedded : tuple of float
        Per dimension; equals the cumulative ``delta**2`` (CA) or ``delta``
        (TCA) sums of the decomposition.
    deltas : tuple of float
        First ``max(dims)`` principal values of the decomposition.
    constants : tuple of (c1, c2) pairs
        Per dimension; ``c2`` is None for CA (pure contraction).
    rank : int
        Numerical rank of the decomposed residual.
    """

    method: str
    axis: str
    labels: tuple[str, ...]
    dims: tuple[int, ...]
    raw: np.ndarray
    embedded: np.ndarray
    classification: tuple[tuple[str, ...], ...]
    admissible: np.ndarray
    weights: np.ndarray
    weighted_average_raw: float
    weighted_average_embedded: tuple[float, ...]
    deltas: tuple[float, ...]
    constants: tuple[tuple[float, float | None], ...]
    rank: int

    def __post_init__(self) -> None:
        for field in ("raw", "embedded", "weights"):
            object.__setattr__(self, field, _freeze(getattr(self, field)))
        admissible = np.asarray(self.admissible, dtype=bool)
        admissible.flags.writeable = False
        object.__setattr__(self, "admissible", admissible)


def _constants(
    raw: np.ndarray, embedded_d: np.ndarray, admissible: np.ndarray, method: str, d: int, rank: int
) -> tuple[float, float | None]:
    if not np.any(admissible):
        raise ValueError(f"no admissible points at d={d}; constants undefined")
    ratios = embedded_d[admissible] / raw[admissible]
    c1 = float(ratios.min())
    if method == CA:
        if d < rank and not (0 < c1 and ratios.max() <= 1 + 1e-10):
            raise ArithmeticError(
                f"CA ratios outside (0, 1] at d={d} < rank {rank}: contraction violated"
            )
        return c1, None
    return c1, float(ratios.max())


def distortion_report(
    model: CorrespondenceModel,
    dec: FactorDecomposition,
    axis: str,
    dims: Sequence[int],
    rel_tol: float = DEFAULT_REL_TOL,
) -> DistortionReport:
    """Assemble the distortion table of ``axis`` for dimensions ``dims``.

    One row per point: raw distance, embedded distance and classification at
    each ``d``; footer data (marginal-weighted averages, per-``d`` constants)
    matches the raw/embedded columns.

    Raises
    ------
    ValueError
        Empty ``dims``, a dimension outside ``[1, dec.k]``, or an invalid
        axis.
    """
    _check_axis(axis)
    dims = tuple(sorted(set(int(d) for d in dims)))
    if not dims:
        raise ValueError("dims must not be empty")
    if dims[0] < 1 or dims[-1] > dec.k:
        raise ValueError(f"dims must lie in [1, {dec.k}], got {dims}")

    labels = model.labels(axis)
    weights = model.weights(axis)
    n = len(labels)
    if dec.method == CA:
        raw_of = benzecri_distance
        embedded_of = embedded_sq_distance
    else:
        raw_of = taxicab_distance
        embedded_of = embedded_l1_distance
    raw = np.array([raw_of(model, axis, i) for i in range(n)])
    embedded = np.array(
        [[embedded_of(dec, axis, i, d) for d in dims] for i in range(n)]
    )
    classification = tuple(
        tuple(classify(raw[i], embedded[i, j], rel_tol) for j in range(len(dims)))
        for i in range(n)
    )
    admissible = (raw > 0)[:, None] & (embedded > 0)
    constants = tuple(
        _constants(raw, embedded[:, j], admissible[:, j], dec.method, d, dec.rank)
        for j, d in enumerate(dims)
    )
    return DistortionReport(
        method=dec.method,
        axis=axis,
        labels=labels,
        dims=dims,
        raw=raw,
        embedded=embedded,
        classification=classification,
        admissible=admissible,
        weights=weights,
        weighted_average_raw=float(weights @ raw),
        weighted_average_embedded=tuple(float(weights @ embedded[:, j]) for j in range(len(dims))),
        deltas=tuple(float(x) for x in dec.deltas[: dims[-1]]),
        constants=constants,
        rank=dec.rank,
    )


def distortion_constants(report: DistortionReport, d: int) -> tuple[float, float | None]:
    """Extreme embedded/raw ratios at dimension ``d`` over admissible points.

    Returns ``(c1, c2)``: the minimum ratio and, for TCA, the maximum;
    ``c2`` is None for CA, whose ratios cannot exceed 1 below full rank.

    Raises
    ------
    ValueError
        ``d`` not evaluated in the report, or no admissible points.
    """
    if d not in report.dims:
        raise ValueError(f"d={d} not among evaluated dims {report.dims}")
    j = report.dims.index(d)
    return _constants(
        report.raw, report.embedded[:, j], report.admissible[:, j], report.method, d, report.rank
    )


@dataclass(frozen=True)
class IntrinsicDimensionBounds:
    """Bracketing of the TCA intrinsic dimension by cumulative delta sums.

    ``lower <= upper <= lower + 1`` except when the cumulative sums never
    reach ``total_dispersion`` within the extracted axes; then ``upper`` is
    the number of extracted axes and ``capped`` is set.  ``point_estimate``
    is the upper bound (the dimension at which the embedding stops losing
    dispersion).
    """

    lower: int
    upper: int
    total_dispersion: float
    cumulative_deltas: tuple[float, ...]
    point_estimate: int
    capped: bool = False


def intrinsic_dimension_bounds(
    deltas: Sequence[float], total_dispersion: float
) -> IntrinsicDimensionBounds:
    """Bounds for the intrinsic dimension from TCA principal values.

    ``upper`` is the smallest ``d`` with ``sum_{alpha<=d} delta >= T`` and
    ``lower`` the largest ``d`` with the cumulative sum still ``<= T``
    (``T = total_dispersion``), each read with a 1e-12-relative band so the
    exact-crossing case (rank-1 tables, where ``delta_1 == T``) yields
    ``lower == upper``.

    Raises
    ------
    ValueError
        Empty ``deltas`` or nonpositive ``total_dispersion``.
    """
    cum = np.cumsum(np.asarray(deltas, dtype=float))
    if cum.size == 0:
        raise ValueError("deltas must not be empty")
    if total_dispersion <= 0:
        raise ValueError("total_dispersion must be positive")
    tol = 1e-12 * max(1.0, total_dispersion)
    reached = np.flatnonzero(cum >= total_dispersion - tol)
    capped = reached.size == 0
    upper = int(cum.size if capped else reached[0] + 1)
    below = np.flatnonzero(cum <= total_dispersion + tol)
    lower = int(below[-1] + 1) if below.size else 1
    lower = min(lower, upper)
    return IntrinsicDimensionBounds(
        lower=lower,
        upper=upper,
        total_dispersion=float(total_dispersion),
        cumulative_deltas=tuple(float(x) for x in cum),
        point_estimate=upper,
        capped=capped,
    )
