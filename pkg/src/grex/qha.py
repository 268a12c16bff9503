"""Weight posets, standard and costandard modules, quasi-heredity.

A StandardSystem caches Δ(λ), ∇(λ), P(λ), L(λ) for a graded algebra
with a weight poset; every construction here works for arbitrary input,
so non-quasi-hereditary algebras are refuted rather than rejected.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .exact import rref
from .gradalg import GradedAlgebra, PresentationError, grade_zero_data
from .homolog import (
    BlockSpace,
    GradedModule,
    dual,
    graded_ext,
    hom_space,
    inflate,
    projective,
    quotient,
    simple,
    spin,
)


class WeightPoset:
    """Partial order on vertex labels given by cover pairs (lo, hi)."""

    def __init__(self, labels, covers=(), refinement=None):
        self.labels = [str(x) for x in labels]
        self.covers = [(str(a), str(b)) for a, b in covers]
        idx = {x: i for i, x in enumerate(self.labels)}
        for a, b in self.covers:
            if a not in idx or b not in idx:
                raise PresentationError(f"poset cover ({a}, {b}) uses an unknown label")
        n = len(self.labels)
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in self.covers:
            le[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise PresentationError(f"poset has a cycle through {self.labels[i]} and {self.labels[j]}")
        self._le = le
        self._idx = idx
        self.refinement = list(refinement) if refinement else self._linear_extension()

    def _linear_extension(self):
        out, left = [], list(self.labels)
        while left:
            for x in left:
                if not any(y != x and self.lt(y, x) for y in left):
                    out.append(x)
                    left.remove(x)
                    break
        return out

    def leq(self, a, b) -> bool:
        return self._le[self._idx[str(a)]][self._idx[str(b)]]

    def lt(self, a, b) -> bool:
        return str(a) != str(b) and self.leq(a, b)

    def is_ideal(self, subset) -> bool:
        s = {str(x) for x in subset}
        return all(y in s for x in s for y in self.labels if self.leq(y, x))

    def maximal(self, subset):
        s = [str(x) for x in subset]
        return [x for x in s if not any(self.lt(x, y) for y in s)]

    def to_dict(self):
        return {"covers": [list(c) for c in self.covers]}

    @classmethod
    def for_algebra(cls, alg: GradedAlgebra, covers=None):
        if covers is None:
            spec = getattr(alg, "spec", None)
            covers = (spec.covers or []) if spec is not None else []
        return cls(alg.vertices, covers)

    @classmethod
    def total(cls, labels):
        labels = list(labels)
        return cls(labels, list(zip(labels, labels[1:])))

    @classmethod
    def product(cls, p: "WeightPoset", q: "WeightPoset"):
        labels = [f"{a}|{b}" for a in p.labels for b in q.labels]
        covers = []
        for a, b in p.covers:
            covers += [(f"{a}|{c}", f"{b}|{c}") for c in q.labels]
        for a, b in q.covers:
            covers += [(f"{c}|{a}", f"{c}|{b}") for c in p.labels]
        return cls(labels, covers)


# ---------------------------------------------------------------------------


def _vertex_vectors(m: GradedModule, keep):
    F = m.F
    out = []
    for i in range(m.dim):
        if keep(m.verts[i]):
            v = [F.zero] * m.dim
            v[i] = F.one
            out.append(v)
    return out


def standard_module(a: GradedAlgebra, poset: WeightPoset, lam) -> GradedModule:
    """Largest quotient of P(λ) with composition factors L(μ), μ ≤ λ."""
    lam = str(lam)
    v = a.vertex_index(lam)
    m = projective(a, v)
    labels = a.vertices
    bad = lambda u: not poset.leq(labels[u], lam)  # noqa: E731
    while True:
        vecs = _vertex_vectors(m, bad)
        if not vecs:
            break
        m, _ = quotient(m, spin(m, vecs))
    m.name = f"Δ({lam})"
    return m


def costandard_module(a: GradedAlgebra, poset: WeightPoset, lam) -> GradedModule:
    """∇(λ) = D Δ_{A^op}(λ), graded in non-positive degrees."""
    d = standard_module(a.opposite(), poset, lam)
    return dual(d, name=f"∇({lam})")


class StandardSystem:
    """Lazy cache of Δ, ∇, P, L for a graded algebra and weight poset."""

    def __init__(self, alg: GradedAlgebra, poset: WeightPoset):
        if sorted(poset.labels) != sorted(alg.vertices):
            raise PresentationError("poset labels must match algebra vertices")
        self.alg = alg
        self.poset = poset
        self.labels = [x for x in poset.refinement]
        self._cache: dict = {}

    def _get(self, kind, lam, build):
        key = (kind, str(lam))
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def delta(self, lam):
        return self._get("Δ", lam, lambda: standard_module(self.alg, self.poset, lam))

    def nabla(self, lam):
        return self._get("∇", lam, lambda: costandard_module(self.alg, self.poset, lam))

    def proj(self, lam):
        return self._get("P", lam, lambda: projective(self.alg, self.alg.vertex_index(lam)))

    def simple(self, lam):
        return self._get("L", lam, lambda: simple(self.alg, self.alg.vertex_index(lam)))


def standard_system(alg: GradedAlgebra, poset: WeightPoset | None = None) -> StandardSystem:
    return StandardSystem(alg, poset or WeightPoset.for_algebra(alg))


# ---------------------------------------------------------------------------
# Filtrations and certification


@dataclass
class FiltrationResult:
    ok: bool
    multiplicities: Counter = field(default_factory=Counter)  # (label, shift) -> count
    witness: dict | None = None

    def ungraded(self) -> Counter:
        c = Counter()
        for (lab, _), k in self.multiplicities.items():
            c[lab] += k
        return c


def delta_peel(m: GradedModule, sys: StandardSystem) -> FiltrationResult:
    """Constructive Δ-filtration test.

    Repeatedly takes a maximal weight μ of M, the submodule U = A e_μ M,
    and checks U ≅ ⊕ Δ(μ)<s> by weights and dimension before passing to
    M / U.  Correct for any algebra; does not assume quasi-heredity.
    """
    labels = sys.alg.vertices
    mult = Counter()
    cur = m
    while cur.dim:
        present = sorted({labels[v] for v in cur.verts}, key=sys.labels.index)
        mu = sys.poset.maximal(present)[0]
        vmu = sys.alg.vertex_index(mu)
        gens = _vertex_vectors(cur, lambda u: u == vmu)
        shifts = [cur.grades[i] for i in range(cur.dim) if cur.verts[i] == vmu]
        U = spin(cur, gens)
        sub_labels = set()
        for key in U.blocks:
            if U.block_dim(key):
                sub_labels.add(labels[key[1]])
        if any(not sys.poset.leq(x, mu) for x in sub_labels):
            return FiltrationResult(False, mult, {"weight": mu, "reason": "trace has weights not below the peeled weight"})
        if U.dim() != len(gens) * sys.delta(mu).dim:
            return FiltrationResult(
                False, mult, {"weight": mu, "reason": "trace is not a sum of standard modules",
                              "trace_dim": U.dim(), "expected": len(gens) * sys.delta(mu).dim}
            )
        d0 = min(sys.delta(mu).grades) if sys.delta(mu).dim else 0
        for s in shifts:
            mult[(mu, s - d0)] += 1
        cur, _ = quotient(cur, U)
    return FiltrationResult(True, mult)


def delta_filtration_test(m: GradedModule, sys: StandardSystem, nmax: int = 1) -> FiltrationResult:
    """Ext¹ criterion: M is Δ-filtered iff Ext¹(M, ∇(μ)) = 0 for all μ.

    On success the graded multiplicities [M : Δ(μ)<r>] = dim hom(M, ∇(μ)<r>)
    are returned.  Requires a quasi-hereditary system.
    """
    mult = Counter()
    for mu in sys.labels:
        nab = sys.nabla(mu)
        table = graded_ext(m, nab, nmax)
        for n in range(1, nmax + 1):
            bad = {r: d for (i, r), d in table.graded.items() if i == n}
            if bad:
                r, d = sorted(bad.items())[0]
                return FiltrationResult(False, mult, {"weight": mu, "n": n, "r": r, "dim": d})
        for (i, r), d in table.graded.items():
            if i == 0:
                mult[(mu, r)] += d
    return FiltrationResult(True, mult)


@dataclass
class QHACertificate:
    ok: bool
    condition: str = ""
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"certified": self.ok, "condition": self.condition, "detail": self.detail}


def certify_qha(a: GradedAlgebra, poset: WeightPoset | None = None, sys: StandardSystem | None = None) -> QHACertificate:
    """Check [Δ(λ):L(λ)] = 1, dim A = Σ dim Δ(λ)·dim ∇(λ), and Δ-filtrations of projectives."""
    sys = sys or standard_system(a, poset)
    for lam in sys.labels:
        k = sys.delta(lam).ungraded_factors()[lam]
        if k != 1:
            return QHACertificate(False, "head multiplicity", {"weight": lam, "multiplicity": k})
    total = sum(sys.delta(lam).dim * sys.nabla(lam).dim for lam in sys.labels)
    if total != a.dim:
        return QHACertificate(False, "dimension", {"dim": a.dim, "sum": total})
    mults = {}
    for lam in sys.labels:
        res = delta_peel(sys.proj(lam), sys)
        if not res.ok:
            return QHACertificate(False, "projective filtration", {"projective": lam, **res.witness})
        mults[lam] = sorted([lab, s, k] for (lab, s), k in res.multiplicities.items())
    return QHACertificate(True, "", {"dim": a.dim, "sum": total, "projective_filtrations": mults})


# ---------------------------------------------------------------------------
# Matrices


def decomposition_matrix(sys: StandardSystem):
    """(labels, D) with D[λ][μ] = [Δ(λ) : L(μ)] (ungraded)."""
    labels = sys.labels
    D = []
    for lam in labels:
        c = sys.delta(lam).ungraded_factors()
        D.append([c[mu] for mu in labels])
    return labels, D


def costandard_decomposition_matrix(sys: StandardSystem):
    labels = sys.labels
    return labels, [[sys.nabla(lam).ungraded_factors()[mu] for mu in labels] for lam in labels]


def cartan(D):
    """DᵀD."""
    n = len(D)
    m = len(D[0]) if n else 0
    return [[sum(D[k][i] * D[k][j] for k in range(n)) for j in range(m)] for i in range(m)]


def cartan_direct(sys: StandardSystem):
    """C[λ][μ] = [P(λ) : L(μ)] from the projectives themselves."""
    labels = sys.labels
    return [[sys.proj(lam).ungraded_factors()[mu] for mu in labels] for lam in labels]


def bgg_cartan(sys: StandardSystem):
    """Σ_ν [∇(ν):L(λ)]·[Δ(ν):L(μ)], which equals [P(λ):L(μ)] on a QHA."""
    _, D = decomposition_matrix(sys)
    _, E = costandard_decomposition_matrix(sys)
    n = len(D)
    return [[sum(E[k][i] * D[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Grade-zero system


@dataclass
class GradeZeroSystem:
    system: StandardSystem  # over A_0
    alg: GradedAlgebra  # the graded algebra A
    _cache: dict = field(default_factory=dict)

    def delta0(self, lam) -> GradedModule:
        """Δ⁰(λ) inflated to a graded A-module in grade 0."""
        key = ("Δ0", str(lam))
        if key not in self._cache:
            self._cache[key] = inflate(self.system.delta(lam), self.alg, name=f"Δ⁰({lam})")
        return self._cache[key]

    def nabla0(self, lam) -> GradedModule:
        key = ("∇0", str(lam))
        if key not in self._cache:
            self._cache[key] = inflate(self.system.nabla(lam), self.alg, name=f"∇₀({lam})")
        return self._cache[key]


def grade_zero_system(sys: StandardSystem) -> GradeZeroSystem:
    a0 = grade_zero_data(sys.alg).algebra
    return GradeZeroSystem(StandardSystem(a0, sys.poset), sys.alg)


# ---------------------------------------------------------------------------
# Truncation to a poset ideal


def truncate_to_ideal(a: GradedAlgebra, poset: WeightPoset, gamma) -> GradedAlgebra:
    """A_Γ = A / A e A with e the sum of e_λ for λ outside Γ."""
    gamma = [str(x) for x in gamma]
    if not gamma:
        raise ValueError("ideal must be nonempty")
    if not poset.is_ideal(gamma):
        raise ValueError(f"{gamma} is not a poset ideal")
    F = a.F
    n = a.dim
    out_v = [a.vertex_index(x) for x in a.vertices if x not in gamma]
    rows = []
    for v in out_v:
        left = [b for b in range(n) if a.src[b] == v]
        for b in left:
            for c in range(n):
                prod = a.mult[b][c]
                if prod:
                    row = [F.zero] * n
                    for k, x in prod:
                        row[k] = x
                    rows.append(row)
    R, piv = rref(rows, F, n) if rows else ([], [])
    pivset = set(piv)
    keep = [b for b in range(n) if b not in pivset]
    pos = {b: k for k, b in enumerate(keep)}

    def reduce(vec):
        for r, p in zip(R, piv):
            if vec[p] != 0:
                c = vec[p]
                vec = [F.reduce(x - c * y) for x, y in zip(vec, r)]
        return vec

    mult = []
    for i in keep:
        row = []
        for j in keep:
            vec = [F.zero] * n
            for k, x in a.mult[i][j]:
                vec[k] = x
            vec = reduce(vec)
            row.append(tuple((pos[k], vec[k]) for k in keep if vec[k] != 0))
        mult.append(row)
    gamma_order = [x for x in a.vertices if x in gamma]
    vmap = {a.vertex_index(x): t for t, x in enumerate(gamma_order)}
    out = GradedAlgebra(
        F,
        gamma_order,
        [a.grades[b] for b in keep],
        [vmap[a.src[b]] for b in keep],
        [vmap[a.tgt[b]] for b in keep],
        [a.names[b] for b in keep],
        mult,
        [pos[a.idem[a.vertex_index(x)]] for x in gamma_order],
    )
    return out


def restrict_poset(poset: WeightPoset, gamma) -> WeightPoset:
    gamma = [str(x) for x in gamma]
    covers = [(x, y) for x, y in product(gamma, gamma) if poset.lt(x, y)]
    return WeightPoset([x for x in poset.labels if x in gamma], covers)


__all__ = [
    "WeightPoset",
    "StandardSystem",
    "standard_system",
    "standard_module",
    "costandard_module",
    "certify_qha",
    "delta_filtration_test",
    "delta_peel",
    "decomposition_matrix",
    "cartan",
    "cartan_direct",
    "bgg_cartan",
    "grade_zero_system",
    "truncate_to_ideal",
    "restrict_poset",
    "hom_space",
    "BlockSpace",
]
