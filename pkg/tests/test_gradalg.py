from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIVE, algebra
from grex.gradalg import (
    Arrow,
    PresentationError,
    QuiverSpec,
    build_algebra,
    grade_zero_data,
    opposite,
    parse_spec,
    serialize_spec,
    tensor_product,
    truncated_tensor_algebra,
)

SQUARE = {"name": "square", "field": 2, "vertices": ["1", "2", "3", "4"],
          "arrows": [["a", "1", "2", 1], ["b", "2", "4", 1], ["c", "1", "3", 1], ["d", "3", "4", 1]],
          "relations": [[["1", ["b", "a"]], ["-1", ["d", "c"]]]]}


def test_five_dimensional_algebra(five):
    assert five.dim == 5
    assert five.grade_dims() == [2, 2, 1]
    assert five.names == ["e_1", "e_2", "a", "b", "ba"]
    five.verify()


def test_commutative_square_dimension():
    a = algebra(SQUARE)
    assert a.dim == 9 and a.grade_dims() == [4, 4, 1]
    a.verify()


def test_opposite_and_tensor(five):
    op = opposite(five)
    assert op.grade_dims() == five.grade_dims()
    assert opposite(op).grade_dims() == five.grade_dims()
    t = tensor_product(five, five)
    assert t.dim == 25
    assert t.grade_dims() == [4, 8, 8, 4, 1]


def test_grade_zero_algebra():
    d = dict(FIVE, arrows=[["a", "1", "2", 0], ["b", "2", "1", 1]])
    a = algebra(d)
    gz = grade_zero_data(a)
    assert gz.algebra.dim == 3
    assert sorted(gz.incl) == [b for b in range(a.dim) if a.grades[b] == 0]


def test_truncated_tensor_algebra(five):
    T, data = truncated_tensor_algebra(five, 3)
    assert T.grade_dims() == [2, 2, 2, 2]
    assert data.surjective(1) and data.surjective(2)
    assert not data.surjective(3) or five.top_grade < 3


def test_spec_roundtrip():
    spec = QuiverSpec.from_dict(FIVE)
    again = parse_spec(serialize_spec(spec))
    assert again.to_dict() == spec.to_dict()


@pytest.mark.parametrize("text", ["not json", "[1, 2]", '{"vertices": ["1"]}'])
def test_malformed_specs(text):
    with pytest.raises(PresentationError):
        parse_spec(text)


def test_infinite_dimensional_is_rejected():
    free_loop = {"name": "loop", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 1]]}
    with pytest.raises((PresentationError, OverflowError)) as err:
        algebra(free_loop)
    assert "x" in str(err.value)


def test_rational_coefficients():
    d = {"name": "q", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 1], ["y", "1", "1", 1]],
         "relations": [[["1", ["x", "y"]], ["-1/2", ["y", "x"]]], [["1", ["x", "x"]]], [["1", ["y", "y"]]]]}
    a = algebra(d)
    assert a.grade_dims() == [1, 2, 1]
    a.verify()


# --- monomial algebras against brute-force path counting -------------------

ACYCLIC = [
    (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]),
    (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "1", "3")]),
    (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4"), ("e", "2", "3")]),
]


def composable_words(arrows, k):
    """Words in notation order: consecutive letters u, v satisfy src(u) = dst(v)."""
    words = [(a,) for a in arrows]
    for _ in range(k - 1):
        words = [w + (a,) for w in words for a in arrows if w[-1][1] == a[2]]
    return words


def path_count_by_grade(vertices, arrows, grades, forbidden):
    counts = {0: len(vertices)}
    gmap = {a[0]: g for a, g in zip(arrows, grades)}
    for k in range(1, len(vertices) + 1):
        for w in composable_words(arrows, k):
            labels = tuple(a[0] for a in w)
            if any(labels[i:i + len(f)] == f for f in forbidden for i in range(len(labels) - len(f) + 1)):
                continue
            g = sum(gmap[x] for x in labels)
            counts[g] = counts.get(g, 0) + 1
    return counts


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ACYCLIC), st.data(), st.sampled_from([0, 2, 3]))
def test_monomial_algebra_dimension(shape, data, p):
    vertices, arrows = shape
    length2 = [tuple(a[0] for a in w) for w in composable_words(arrows, 2)]
    forbidden = data.draw(st.lists(st.sampled_from(length2), unique=True)) if length2 else []
    grades = data.draw(st.lists(st.integers(0, 2), min_size=len(arrows), max_size=len(arrows)))
    spec = QuiverSpec(p, vertices, [Arrow(l, s, d, g) for (l, s, d), g in zip(arrows, grades)],
                      [[(Fraction(1), w)] for w in forbidden])
    a = build_algebra(spec)
    expected = path_count_by_grade(vertices, arrows, grades, forbidden)
    got = {g: d for g, d in enumerate(a.grade_dims()) if d}
    assert got == {g: d for g, d in expected.items() if d}
    a.verify()
