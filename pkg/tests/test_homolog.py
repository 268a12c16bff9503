from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBE, DUAL, FIVE, algebra
from grex.corpus import generate_corpus
from grex.gradalg import build_algebra
from grex.homolog import (
    dual,
    euler_characteristic,
    graded_ext,
    hom_dim,
    minimal_resolution,
    projective,
    radical_series,
    shifted,
    simple,
    socle_series,
    syzygy,
    ungraded_ext_dims,
    vanishing_range_check,
)
from oracles import truncated_polynomial_ext

SAMPLE = generate_corpus(limit=60, seed=11)


def truncated(n):
    return algebra({"name": f"x{n}", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 1]],
                    "relations": [[["1", ["x"] * n]]]})


def test_projectives_of_five(five):
    P1, P2 = projective(five, 0), projective(five, 1)
    P1.verify()
    assert radical_series(P1).layers == [Counter({("1", 0): 1}), Counter({("2", 1): 1}), Counter({("1", 2): 1})]
    assert socle_series(P1).layers == [Counter({("1", 2): 1}), Counter({("2", 1): 1}), Counter({("1", 0): 1})]
    assert radical_series(P2).loewy_length() == 2


def test_resolution_of_simple(five):
    res = minimal_resolution(simple(five, 0), 4)
    assert res.is_minimal()
    assert res.betti(0) == Counter({("1", 0): 1})
    assert res.betti(1) == Counter({("2", 1): 1})
    assert res.is_finite()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_truncated_polynomial_ext_against_closed_form(n):
    L = simple(truncated(n), 0)
    assert graded_ext(L, L, 6).graded == truncated_polynomial_ext(n, 6)


def test_shift_convention(five):
    L1, L2 = simple(five, 0), simple(five, 1)
    assert graded_ext(L1, L2, 3).graded == {(1, 1): 1}
    assert graded_ext(L1, shifted(L2, 1), 3).graded == {(1, 0): 1}
    assert graded_ext(shifted(L1, 1), L2, 3).graded == {(1, 2): 1}


def test_hom_spaces(five):
    P1 = projective(five, 0)
    assert hom_dim(P1, P1, graded=False) == 2
    assert hom_dim(P1, P1, 0) == 1 and hom_dim(P1, P1, 2) == 1 and hom_dim(P1, P1, -2) == 0
    assert hom_dim(P1, simple(five, 1), graded=False) == 0


def test_dual_reverses_grading(five):
    P1 = projective(five, 0)
    D = dual(P1)
    assert D.dim == 3 and sorted(D.grades) == [-2, -1, 0]
    assert dual(D).grades == P1.grades


def test_euler_characteristic_matches_ext(five):
    L1, L2 = simple(five, 0), simple(five, 1)
    res = minimal_resolution(L1, 4)
    table = graded_ext(L1, L2, 4, res=res)
    for r in range(-1, 4):
        alt = sum((-1) ** i * table.get(i, r) for i in range(5))
        assert euler_characteristic(res, L2, r, 4) == alt


def test_syzygy(five):
    omega, cover, _ = syzygy(simple(five, 0))
    assert omega.dim == 2 and cover.dim == 3


def test_vanishing_range(five):
    assert vanishing_range_check(shifted(simple(five, 0), 3), simple(five, 1), 3, 0, 3)
    with pytest.raises(ValueError):
        vanishing_range_check(simple(five, 0), simple(five, 1), 1, 0, 2)


@pytest.mark.parametrize("d", [DUAL, CUBE, FIVE])
def test_graded_ext_sums_to_ungraded(d):
    a = algebra(d)
    for v in range(len(a.vertices)):
        for u in range(len(a.vertices)):
            M, N = simple(a, v), simple(a, u)
            assert graded_ext(M, N, 3).ungraded() == ungraded_ext_dims(M, N, 3)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SAMPLE), st.data())
def test_loewy_length_radical_equals_socle(entry, data):
    a = build_algebra(entry.spec)
    v = data.draw(st.integers(0, len(a.vertices) - 1))
    for M in (projective(a, v), simple(a, v)):
        assert radical_series(M).loewy_length() == socle_series(M).loewy_length()
        total = Counter()
        for layer in radical_series(M).layers:
            total.update(layer)
        assert total == M.composition_factors()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SAMPLE), st.data())
def test_hom_from_projective_counts_vertex_vectors(entry, data):
    a = build_algebra(entry.spec)
    v = data.draw(st.integers(0, len(a.vertices) - 1))
    u = data.draw(st.integers(0, len(a.vertices) - 1))
    M = projective(a, u)
    assert hom_dim(projective(a, v), M, graded=False) == sum(1 for x in M.verts if x == v)
    for r in range(0, a.top_grade + 1):
        expected = sum(1 for x, g in zip(M.verts, M.grades) if x == v and g == r)
        assert hom_dim(projective(a, v), M, r) == expected
