"""Classical correspondence analysis via SVD of the standardized residual.

With ``S = D / sqrt(outer(r, c))`` and ``S = U diag(sigma) V^T``, the factor
scores are ``f_alpha(i) = sigma_alpha u_alpha(i) / sqrt(r_i)`` and
``g_alpha(j) = sigma_alpha v_alpha(j) / sqrt(c_j)``; the principal values
``delta_alpha = sigma_alpha`` satisfy ``sum(delta**2) == total inertia``.
"""

from __future__ import annotations

import numpy as np

from .contingency import ROWS, CorrespondenceModel, _check_axis
from .decomposition import (
    CA,
    RANK_RTOL,
    FactorDecomposition,
    empty_decomposition,
    orient_axes,
    resolve_k,
    standardized_residual,
)

__all__ = [
    "ca_decompose",
    "benzecri_distance",
    "ca_total_inertia",
    "embedded_sq_distance",
]


def ca_decompose(model: CorrespondenceModel, k: int | str | None = "full") -> FactorDecomposition:
    """Correspondence analysis of ``model`` with ``k`` axes.

    Parameters
    ----------
    k : int, "full" or None
        Number of axes; "full" (default) extracts the numerical rank of
        ``D``.  A rank-0 model yields an empty decomposition.

    Raises
    ------
    ValueError
        If ``k`` exceeds the numerical rank.
    """
    S = standardized_residual(model)
    U, s, Vt = np.linalg.svd(S, full_matrices=False)
    # sigma values are canonical correlations in [0, 1]: a leading value at or
    # below the absolute floor is independence-table rounding noise (rank 0)
    rank = 0 if s.size == 0 or s[0] <= RANK_RTOL else int(np.count_nonzero(s > RANK_RTOL * s[0]))
    if rank == 0:
        return empty_decomposition(model, CA)
    k = resolve_k(k, rank)
    if k == 0:
        return empty_decomposition(model, CA)

    row_scores = s[:k] * U[:, :k] / np.sqrt(model.r)[:, None]
    col_scores = s[:k] * Vt[:k].T / np.sqrt(model.c)[:, None]
    orient_axes(row_scores, col_scores)
    return FactorDecomposition(
        method=CA,
        deltas=s[:k].copy(),
        row_scores=row_scores,
        col_scores=col_scores,
        rank=rank,
        row_labels=model.row_labels,
        col_labels=model.col_labels,
    )


def benzecri_distance(model: CorrespondenceModel, axis: str, index: int) -> float:
    """Squared chi-square distance of one profile from its barycenter.

    Rows: ``sum_j (p_ij/p_i+ - p_+j)**2 / p_+j``; columns symmetrically.
    The squared distance is returned, matching the dist^2 convention of the
    diagnostic tables.
    """
    _check_axis(axis)
    if axis == ROWS:
        deviation = model.P[index] / model.r[index] - model.c
        return float(np.sum(deviation**2 / model.c))
    deviation = model.P[:, index] / model.c[index] - model.r
    return float(np.sum(deviation**2 / model.r))


def ca_total_inertia(model: CorrespondenceModel) -> float:
    """Total inertia ``sum D**2 / outer(r, c)``.

    Equals the r-weighted average of squared row distances, the c-weighted
    average of squared column distances, and ``sum(deltas**2)`` of the full
    decomposition.
    """
    return float(np.sum(model.D**2 / np.outer(model.r, model.c)))


def embedded_sq_distance(dec: FactorDecomposition, axis: str, index: int, d: int) -> float:
    """Squared distance in the first ``d`` axes: ``sum_{alpha<=d} f_alpha**2``.

    Non-decreasing in ``d``; never exceeds the squared chi-square distance,
    with equality at ``d == rank``.
    """
    if dec.method != CA:
        raise ValueError("embedded_sq_distance requires a CA decomposition")
    if not 1 <= d <= dec.k:
        raise ValueError(f"d must be in [1, {dec.k}], got {d}")
    scores = dec.scores(axis)[index, :d]
    return float(np.sum(scores**2))
