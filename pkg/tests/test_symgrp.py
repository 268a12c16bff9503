from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grex.kl import r_lambda
from grex.symgrp import (
    HeckeAlgebra,
    Partition,
    QPermModule,
    braid_check,
    classical_hom_dim,
    compose,
    composition_factor_dims,
    coset_generating_function,
    distinguished_reps,
    double_coset_count,
    inverse,
    invariant_form_check,
    left_mul_s,
    length,
    partitions,
    permutation_module,
    q_perm_hom,
    reduced_word,
    right_mul_s,
    simple_reflection,
    specht_module,
    splitting_check,
    trivial_module,
    young_module_consequence,
    young_subgroup,
)
from grex.symgrp import direct_sum_modules
from oracles import hook_dimension

perms5 = st.permutations(list(range(5))).map(tuple)
small_partitions = st.integers(1, 9).flatmap(lambda n: st.sampled_from(partitions(n)))
COMPOSITIONS = [(2, 1), (1, 2), (3, 1), (2, 2), (2, 1, 1), (3, 2), (2, 3), (4, 1), (2, 2, 1)]


@given(perms5, perms5)
def test_permutation_arithmetic(u, v):
    assert compose(u, inverse(u)) == tuple(range(5))
    assert length(inverse(u)) == length(u)
    word = reduced_word(u)
    assert len(word) == length(u)
    w = tuple(range(5))
    for i in word:
        w = compose(w, simple_reflection(5, i))
    assert w == u
    for i in range(1, 5):
        assert right_mul_s(u, i) == compose(u, simple_reflection(5, i))
        assert left_mul_s(u, i) == compose(simple_reflection(5, i), u)


@given(small_partitions)
def test_partition_dual_and_hooks(lam):
    assert lam.dual().dual() == lam
    assert lam.num_standard_tableaux() == hook_dimension(list(lam.parts))


@pytest.mark.parametrize("n", range(1, 8))
def test_sum_of_squares(n):
    assert sum(l.num_standard_tableaux() ** 2 for l in partitions(n)) == factorial(n)


@given(small_partitions, st.sampled_from([2, 3, 5]))
def test_core_is_a_core_with_matching_residues(lam, p):
    core = lam.core(p)
    assert (sum(lam.parts) - sum(core.parts)) % p == 0
    assert all(h % p for row in core.hook_lengths() for h in row)

    def residues(mu):
        return Counter((j - i) % p for i, part in enumerate(mu.parts) for j in range(part))

    diff = residues(lam) - residues(core)
    k = (sum(lam.parts) - sum(core.parts)) // p
    assert diff == Counter({r: k for r in range(p)} if k else {})


@given(small_partitions, st.sampled_from([2, 3]))
def test_regularity(lam, p):
    assert lam.is_regular(p) == (max(Counter(lam.parts).values()) < p)


def test_partition_parsing():
    assert Partition.parse("2,2,1") == Partition([2, 2, 1])
    assert Partition([2, 2, 1]).dual() == Partition([3, 2])
    assert len(partitions(5)) == 7


@pytest.mark.parametrize("comp", COMPOSITIONS)
def test_distinguished_reps_are_minimal_in_right_cosets(comp):
    n = sum(comp)
    Y = young_subgroup(comp)
    assert len(Y.elements) == prod(factorial(k) for k in comp)
    cosets = {}
    for w in permutations(range(n)):
        key = frozenset(compose(y, w) for y in Y.elements)
        cosets.setdefault(key, []).append(w)
    minimal = sorted((min(c, key=lambda w: (length(w), w)) for c in cosets.values()), key=lambda w: (length(w), w))
    for c in cosets.values():
        assert sum(1 for w in c if length(w) == min(length(x) for x in c)) == 1
    assert distinguished_reps(comp) == minimal
    assert coset_generating_function(comp) == r_lambda(comp)


@pytest.mark.parametrize("lam", COMPOSITIONS[:6])
@pytest.mark.parametrize("mu", COMPOSITIONS[:6])
def test_double_cosets_count_homomorphisms(lam, mu):
    if sum(lam) != sum(mu):
        return
    n = sum(lam)
    # brute force: orbits of S_λ × S_μ on S_n
    Yl, Ym = young_subgroup(lam).elements, young_subgroup(mu).elements
    seen, orbits = set(), 0
    for w in permutations(range(n)):
        if w in seen:
            continue
        orbits += 1
        seen.update(compose(compose(a, w), b) for a in Yl for b in Ym)
    assert double_coset_count(lam, mu) == orbits
    for p in (2, 3):
        assert classical_hom_dim(lam, mu, p) == orbits
    for q in (-1, 1, 2):
        assert len(q_perm_hom(lam, mu, q)) == orbits


@pytest.mark.parametrize("lam", partitions(4) + partitions(5))
@pytest.mark.parametrize("p", [2, 3])
def test_specht_dimensions(lam, p):
    S = specht_module(lam, p)
    S.verify()
    assert S.dim == hook_dimension(list(lam.parts))
    assert sum(composition_factor_dims(S)) == S.dim


@pytest.mark.parametrize("lam", partitions(4) + partitions(5))
def test_specht_modules_irreducible_in_large_characteristic(lam):
    S = specht_module(lam, 7)
    assert composition_factor_dims(S) == [S.dim]


def test_specht_221_over_gf2():
    S = specht_module([2, 2, 1], 2)
    assert S.dim == 5
    assert composition_factor_dims(S) == [1, 4]


def test_composition_factors_of_direct_sums():
    T = trivial_module(5, 2)
    assert composition_factor_dims(direct_sum_modules(T, T)) == [1, 1]
    M, tabs = permutation_module((3, 2), 2)
    assert M.dim == len(tabs) == 10
    assert sum(composition_factor_dims(M)) == 10
    assert invariant_form_check((3, 2), 3)


@pytest.mark.parametrize("q", [-1, 2, Fraction(1, 3)])
def test_hecke_relations(q):
    assert braid_check(4, q)


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(4))), st.permutations(list(range(4))), st.permutations(list(range(4))),
       st.sampled_from([-1, 2, 3]))
def test_hecke_associativity(a, b, c, q):
    H = HeckeAlgebra(4, q)
    x, y, z = H.tau(a), H.add(H.tau(b), H.tau(c), 2), H.tau(c)
    assert H.mul(H.mul(x, y), z) == H.mul(x, H.mul(y, z))
    for i in range(1, 4):
        assert H.mul(x, H.tau(simple_reflection(4, i))) == H.mul_s(x, i)
        assert H.mul(H.tau(simple_reflection(4, i)), x) == H.s_mul(i, x)


@given(st.permutations(list(range(4))), st.permutations(list(range(4))))
def test_hecke_at_one_is_group_algebra(a, b):
    H = HeckeAlgebra(4, 1)
    assert H.mul(H.tau(tuple(a)), H.tau(tuple(b))) == H.tau(compose(tuple(a), tuple(b)))


def test_q_permutation_module_action():
    H = HeckeAlgebra(4, -1)
    T = QPermModule(H, (2, 2))
    assert T.dim == 6
    for i in range(1, 4):
        for k, d in enumerate(T.reps):
            img = H.mul_s(T.basis[k], i)
            col = [row[k] for row in T.gens[i - 1]]
            assert T.coords(img) == col


def test_splitting():
    r = splitting_check()
    assert r.scalar == 2 and r.phi_is_hom and r.psi_is_hom and r.hom_dims == (1, 1)
    assert young_module_consequence(r)["trivial_summand_splits"]
    assert splitting_check(q=1).scalar == 10
    with pytest.raises(ValueError):
        HeckeAlgebra(9, -1)
