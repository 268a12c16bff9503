from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import algebra
from grex.corpus import generate_corpus
from grex.gradalg import Arrow, QuiverSpec, build_algebra
from grex.homolog import graded_ext, minimal_resolution, simple
from grex.koszul import (
    HOLDS,
    REFUTED,
    bimodule_filtration_check,
    check_koszul,
    check_n_q_koszul,
    check_standard_q_koszul,
    check_tight,
    delta0_filtration_suite,
    product_formula_check,
    q_koszul_level,
    quadratic_check,
)
from test_gradalg import ACYCLIC, composable_words

GRADE_TWO = {"name": "y2", "field": 0, "vertices": ["1"], "arrows": [["y", "1", "1", 2]],
             "relations": [[["1", ["y", "y"]]]]}


def test_dual_numbers_koszul(dual_numbers):
    rep = check_koszul(dual_numbers, 8)
    assert rep.verdict == HOLDS
    L = simple(dual_numbers, 0)
    assert graded_ext(L, L, 8).graded == {(i, i): 1 for i in range(9)}


def test_cube_refutations(cube):
    rep = check_koszul(cube, 4)
    assert rep.verdict == REFUTED
    assert rep.witnesses[0]["n"] == 2 and rep.witnesses[0]["r"] == 3
    data, q = quadratic_check(cube)
    assert q.verdict == REFUTED
    assert data.w2_dim == 0
    assert q.witnesses[0]["grade"] == 3 and q.witnesses[0]["kernel_dim"] == 1


def test_quadratic_holds_for_dual_numbers(dual_numbers):
    data, q = quadratic_check(dual_numbers)
    assert q.holds and data.w2_dim == 1


def test_generator_in_grade_two_is_not_tight():
    a = algebra(GRADE_TWO)
    t = check_tight(a)
    assert t.verdict == REFUTED and t.witnesses[0] == {"grade": 2, "dim": 1, "generated": 0}
    rep = check_n_q_koszul(a, None, 2)
    assert rep.verdict == REFUTED and rep.witnesses[0]["r"] == 2


def test_five_standard_q_koszul(five):
    rep = check_standard_q_koszul(five, None, 6)
    assert rep.holds and rep.details["q_koszul_replay"] == HOLDS
    assert product_formula_check(five, None, 4).holds
    assert q_koszul_level(five, None, 3) == 3
    assert delta0_filtration_suite(five, None, 3).holds
    assert bimodule_filtration_check(five).holds


def test_q_koszul_level_without_qha_degree_zero_part():
    d = {"name": "m", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 0]],
         "relations": [[["1", ["x", "x"]]]]}
    assert q_koszul_level(algebra(d)) == -1


def koszul_identity_holds(a, N):
    """E(t)·H(t) = I where E counts (−1)^i ext^i(L_u, L_v<i>) t^i and H counts paths by grade."""
    n = len(a.vertices)
    E = [[[0] * (N + 1) for _ in range(n)] for _ in range(n)]
    for u in range(n):
        res = minimal_resolution(simple(a, u), N + 1)
        for v in range(n):
            t = graded_ext(simple(a, u), simple(a, v), N, res=res)
            for i in range(N + 1):
                E[u][v][i] = (-1) ** i * t.get(i, i)
    H = [[[0] * (N + 1) for _ in range(n)] for _ in range(n)]
    for b in range(a.dim):
        if a.grades[b] <= N:
            H[a.src[b]][a.tgt[b]][a.grades[b]] += 1
    for u in range(n):
        for w in range(n):
            for g in range(N + 1):
                s = sum(E[u][v][i] * H[v][w][g - i] for v in range(n) for i in range(g + 1))
                if s != (1 if (u == w and g == 0) else 0):
                    return False
    return True


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ACYCLIC), st.data(), st.sampled_from([0, 2, 3]))
def test_quadratic_monomial_algebras_are_koszul(shape, data, p):
    vertices, arrows = shape
    length2 = [tuple(a[0] for a in w) for w in composable_words(arrows, 2)]
    forbidden = data.draw(st.lists(st.sampled_from(length2), unique=True))
    spec = QuiverSpec(p, vertices, [Arrow(*x, 1) for x in arrows], [[(Fraction(1), w)] for w in forbidden])
    a = build_algebra(spec)
    assert check_koszul(a, 4).holds
    assert koszul_identity_holds(a, 4)
    assert quadratic_check(a)[1].holds
    assert check_tight(a).holds


QUADRATIC_MONOMIAL = [e for e in generate_corpus()
                      if e.name.split(":")[3] in ("rad2",) and set(e.name.split(":")[2]) == {"1"}]


@pytest.mark.parametrize("entry", QUADRATIC_MONOMIAL[::3], ids=lambda e: e.name)
def test_corpus_radical_square_zero_algebras_are_koszul(entry):
    a = build_algebra(entry.spec)
    assert check_koszul(a, 4).holds
    assert koszul_identity_holds(a, 4)
