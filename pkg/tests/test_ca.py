import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catax import (
    COLS,
    ROWS,
    ContingencyTable,
    benzecri_distance,
    build_model,
    ca_decompose,
    ca_total_inertia,
    embedded_sq_distance,
    numerical_rank,
    tca_decompose,
)
from conftest import random_models, table_from_counts
from oracles import benzecri_col_loop, benzecri_row_loop, inertia_loop

DIAG_MODEL = build_model(
    ContingencyTable(("r1", "r2"), ("x", "y"), np.array([[2.0, 0.0], [0.0, 2.0]]))
)


def check_ca_invariants(model, dec, atol=1e-10):
    for axis, weights in ((ROWS, model.r), (COLS, model.c)):
        scores = dec.scores(axis)
        for a in range(dec.k):
            assert abs(np.sum(scores[:, a] * weights)) < atol  # centering
            assert abs(np.sum(scores[:, a] ** 2 * weights) - dec.deltas[a] ** 2) < atol
            for b in range(a):
                assert abs(np.sum(scores[:, a] * scores[:, b] * weights)) < atol


def test_diag_decomposition():
    dec = ca_decompose(DIAG_MODEL)
    assert dec.k == 1 and dec.rank == 1
    assert dec.deltas[0] == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.abs(dec.row_scores[:, 0]), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.abs(dec.col_scores[:, 0]), 1.0, atol=1e-12)


def test_independence_gives_empty_decomposition():
    counts = np.outer([4.0, 6.0], [3.0, 5.0, 2.0])
    model = build_model(ContingencyTable(("a", "b"), ("x", "y", "z"), counts))
    dec = ca_decompose(model)
    assert dec.k == 0 and dec.rank == 0
    assert dec.deltas.shape == (0,)
    assert dec.row_scores.shape == (2, 0)


def test_k_exceeds_rank():
    with pytest.raises(ValueError, match="exceeds numerical rank"):
        ca_decompose(DIAG_MODEL, k=2)


def test_partial_k():
    model = random_models(1, seed=5)[0]
    dec = ca_decompose(model, k=2)
    full = ca_decompose(model)
    assert dec.k == 2
    np.testing.assert_allclose(dec.deltas, full.deltas[:2])


def test_invariants_on_random_tables(models30):
    for model in models30:
        check_ca_invariants(model, ca_decompose(model))


def test_parseval(models30):
    for model in models30:
        dec = ca_decompose(model)
        assert abs(np.sum(dec.deltas**2) - ca_total_inertia(model)) < 1e-10


def test_reconstruction_full_rank(models30):
    for model in models30:
        dec = ca_decompose(model)
        recon = (dec.row_scores / dec.deltas) @ dec.col_scores.T
        np.testing.assert_allclose(recon, model.delta_index, atol=1e-8)


def test_rank_bound(models30):
    for model in models30:
        I, J = model.shape
        assert numerical_rank(model) <= min(I - 1, J - 1)


def test_benzecri_matches_loop_oracle(models30):
    for model in models30[:10]:
        I, J = model.shape
        for i in range(I):
            assert benzecri_distance(model, ROWS, i) == pytest.approx(
                benzecri_row_loop(model, i), abs=1e-12
            )
        for j in range(J):
            assert benzecri_distance(model, COLS, j) == pytest.approx(
                benzecri_col_loop(model, j), abs=1e-12
            )


def test_benzecri_diag_and_independence():
    assert benzecri_distance(DIAG_MODEL, ROWS, 0) == pytest.approx(1.0, abs=1e-12)
    counts = np.outer([4.0, 6.0], [3.0, 5.0, 2.0])
    model = build_model(ContingencyTable(("a", "b"), ("x", "y", "z"), counts))
    assert benzecri_distance(model, ROWS, 1) == pytest.approx(0.0, abs=1e-15)


def test_total_inertia_equals_weighted_distances(models30):
    for model in models30[:10]:
        inertia = ca_total_inertia(model)
        assert inertia == pytest.approx(inertia_loop(model), abs=1e-12)
        I, J = model.shape
        row_avg = sum(model.r[i] * benzecri_distance(model, ROWS, i) for i in range(I))
        col_avg = sum(model.c[j] * benzecri_distance(model, COLS, j) for j in range(J))
        assert abs(inertia - row_avg) < 1e-10
        assert abs(inertia - col_avg) < 1e-10


def test_embedded_contraction_below_rank(models30):
    for model in models30:
        dec = ca_decompose(model)
        for axis in (ROWS, COLS):
            n = len(model.labels(axis))
            for index in range(n):
                raw = benzecri_distance(model, axis, index)
                for d in range(1, dec.rank):
                    assert embedded_sq_distance(dec, axis, index, d) <= raw + 1e-10


def test_embedded_full_rank_is_isometry(models30):
    for model in models30:
        dec = ca_decompose(model)
        for axis in (ROWS, COLS):
            for index in range(len(model.labels(axis))):
                raw = benzecri_distance(model, axis, index)
                assert embedded_sq_distance(dec, axis, index, dec.k) == pytest.approx(
                    raw, abs=1e-8
                )


def test_embedded_monotone_in_d():
    model = random_models(1, seed=11)[0]
    dec = ca_decompose(model)
    values = [embedded_sq_distance(dec, ROWS, 0, d) for d in range(1, dec.k + 1)]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def test_embedded_errors():
    dec = ca_decompose(DIAG_MODEL)
    with pytest.raises(ValueError):
        embedded_sq_distance(dec, ROWS, 0, 0)
    with pytest.raises(ValueError):
        embedded_sq_distance(dec, ROWS, 0, 2)
    tca = tca_decompose(DIAG_MODEL)
    with pytest.raises(ValueError, match="CA decomposition"):
        embedded_sq_distance(tca, ROWS, 0, 1)


def test_sign_convention_largest_score_positive(models30):
    for model in models30[:10]:
        dec = ca_decompose(model)
        for a in range(dec.k):
            f = dec.row_scores[:, a]
            assert f[np.argmax(np.abs(f))] > 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariants_hypothesis(seed):
    rng = np.random.default_rng(seed)
    counts = rng.integers(0, 11, size=(4, 5)).astype(float)
    counts[counts.sum(axis=1) == 0, 0] = 1
    counts[0, counts.sum(axis=0) == 0] = 1
    model = build_model(table_from_counts(counts))
    check_ca_invariants(model, ca_decompose(model))
