from __future__ import annotations

from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBE, algebra
from grex.gradalg import Arrow, PresentationError, QuiverSpec, build_algebra
from grex.qha import (
    WeightPoset,
    bgg_cartan,
    cartan,
    cartan_direct,
    certify_qha,
    decomposition_matrix,
    delta_filtration_test,
    grade_zero_system,
    standard_system,
    truncate_to_ideal,
)

HEREDITARY = [
    (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]),
    (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]),
    (["1", "2", "3"], [("a", "1", "2"), ("b", "1", "2"), ("c", "3", "2")]),
    (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]),
]


def test_standard_modules_of_five(five):
    S = standard_system(five)
    assert S.delta("1").composition_factors() == Counter({("1", 0): 1})
    assert S.delta("2").composition_factors() == Counter({("2", 0): 1, ("1", 1): 1})
    assert S.nabla("2").composition_factors() == Counter({("2", 0): 1, ("1", -1): 1})
    cert = certify_qha(five, sys=S)
    assert cert.ok
    labels, D = decomposition_matrix(S)
    assert labels == ["1", "2"] and D == [[1, 0], [1, 1]]
    assert cartan(D) == cartan_direct(S) == bgg_cartan(S) == [[2, 1], [1, 1]]


def test_reversed_order_is_not_quasi_hereditary(five):
    cert = certify_qha(five, WeightPoset(["1", "2"], [("2", "1")]))
    assert not cert.ok and cert.condition == "head multiplicity"


def test_local_non_semisimple_algebra_is_not_quasi_hereditary():
    assert not certify_qha(algebra(CUBE)).ok


def test_filtrations(five):
    S = standard_system(five)
    assert delta_filtration_test(S.proj("1"), S).ok
    bad = delta_filtration_test(S.simple("2"), S)
    assert not bad.ok and bad.witness["weight"] == "1"


def test_grade_zero_system_and_truncation(five):
    S = standard_system(five)
    G = grade_zero_system(S)
    assert G.delta0("2").dim == 1 and G.nabla0("2").dim == 1
    assert truncate_to_ideal(five, S.poset, ["1"]).dim == 1


def test_poset_validation():
    p = WeightPoset(["1", "2", "3"], [("1", "2")])
    assert p.leq("1", "2") and not p.leq("1", "3")
    assert WeightPoset.total(["1", "2", "3"]).leq("1", "3")
    with pytest.raises(PresentationError):
        WeightPoset(["1", "2"], [("1", "2"), ("2", "1")])
    with pytest.raises(PresentationError):
        WeightPoset(["1"], [("1", "9")])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(HEREDITARY), st.data(), st.sampled_from([0, 2, 3]))
def test_hereditary_algebras_are_quasi_hereditary_for_every_order(shape, data, p):
    vertices, arrows = shape
    a = build_algebra(QuiverSpec(p, vertices, [Arrow(*x, 1) for x in arrows]))
    order = data.draw(st.sampled_from(list(permutations(vertices))))
    poset = WeightPoset.total(list(order))
    S = standard_system(a, poset)
    assert certify_qha(a, poset, sys=S).ok
    assert bgg_cartan(S) == cartan_direct(S)
    for lam in vertices:
        assert delta_filtration_test(S.proj(lam), S).ok
    # dim A = Σ dim Δ(λ) dim ∇(λ) for a basic QHA
    assert a.dim == sum(S.delta(l).dim * S.nabla(l).dim for l in vertices)
