"""Principal block of S(5,5) in characteristic 2: table-level pipeline.

The algebra itself is never constructed.  Published tables (dimensions,
Carlson's Cartan matrix, radical and socle series, filtration and
resolution data) are embedded as input and every derived fact is checked
by exact integer arithmetic on them.

Labels follow the Carlson numbering: (1^5)=7, (2^2,1)=2, (3,1^2)=6,
(3,2)=5, (5)=4.  ORDER lists them increasingly in the weight poset.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .gradalg import QuiverSpec, serialize_spec
from .symgrp import Partition

ORDER = (7, 2, 6, 5, 4)

CONVERSION = {(1, 1, 1, 1, 1): 7, (2, 2, 1): 2, (3, 1, 1): 6, (3, 2): 5, (5,): 4}
PARTITION_OF = {v: k for k, v in CONVERSION.items()}

# dim Δ(λ) = dim Δ′(λ), dim L′(λ), dim L(λ), indexed by partition
DIMENSIONS = {
    (1, 1, 1, 1, 1): (1, 1, 1),
    (2, 2, 1): (75, 75, 74),
    (3, 1, 1): (126, 50, 50),
    (3, 2): (175, 50, 50),
    (5,): (126, 75, 25),
}

# Carlson's Cartan matrix, keyed by his labels (stored in sorted label order)
CARLSON = {
    2: {2: 3, 4: 0, 5: 1, 6: 2, 7: 4},
    4: {2: 0, 4: 1, 5: 1, 6: 1, 7: 1},
    5: {2: 1, 4: 1, 5: 2, 6: 2, 7: 2},
    6: {2: 2, 4: 1, 5: 2, 6: 3, 7: 4},
    7: {2: 4, 4: 1, 5: 2, 6: 4, 7: 8},
}

# Known rows of the decomposition matrix fixed by the Specht data:
# Δ(2²,1) has factors L(2²,1) and L(1⁵) once each.
KNOWN_ROWS = {(2, 2, 1): {(1, 1, 1, 1, 1): 1, (2, 2, 1): 1}}

RADICAL_SERIES = {
    7: [[7], [2, 6], [5, 7, 7], [2, 4, 6], [5, 7, 7], [2, 6], [7, 7], [2, 6], [7]],
    2: [[2], [7], [6], [5, 7], [2], [7], [6], [7], [2]],
    6: [[6], [5, 7], [2, 4], [5, 7], [6, 6], [7], [2], [7]],
    5: [[5], [4, 6], [5, 7], [2, 6], [7]],
    4: [[4], [5], [6], [7]],
}

# listed head first, socle last
SOCLE_SERIES = {
    7: [[7], [2, 6], [7, 7], [2, 6], [5, 7, 7], [2, 4, 6], [5, 7, 7], [2, 6], [7]],
    2: [[2], [7], [6], [7], [2], [5, 7], [6], [7], [2]],
    6: [[6], [7], [2], [5, 7], [4, 6], [5, 7], [2, 6], [7]],
    5: [[5], [4, 6], [5, 7], [2, 6], [7]],
    4: [[4], [5], [6], [7]],
}

# radical series = socle series
STANDARD_SERIES = {7: [[7]], 2: [[2], [7]], 6: [[6], [7], [2], [7]], 5: [[5], [6], [7], [2]], 4: [[4], [5], [6], [7]]}
QUANTUM_STANDARD_SERIES = {7: [[7]], 2: [[2]], 6: [[6], [2, 7]], 5: [[5], [6], [2]], 4: [[4], [6], [7]]}
DELTA_RED_SERIES = {7: [[7]], 2: [[2], [7]], 6: [[6]], 5: [[5]], 4: [[4], [5]]}

# Loewy index ℓ(P′(λ), Δ′(μ)) for the Δ′-sections of each P′(λ)
LOEWY_INDEX = {
    7: {7: 0, 6: 1, 4: 2},
    2: {2: 0, 6: 1, 5: 2},
    6: {6: 0, 5: 1, 4: 1},
    5: {5: 0},
    4: {4: 0},
}

# published graded Δ′-multiplicities of grP′(λ): (μ, s) -> count
QUANTUM_GRADED_TABLE = {
    7: {(7, 0): 1, (6, 1): 1, (4, 2): 1},
    2: {(2, 0): 1, (6, 1): 1, (5, 2): 1},
    6: {(6, 0): 1, (5, 1): 1, (4, 1): 1},
    5: {(5, 0): 1},
    4: {(4, 0): 1},
}

# published graded Δ-multiplicities of the modular graded PIMs
MODULAR_GRADED_TABLE = {
    7: {(7, 0): 1, (2, 0): 1, (6, 1): 2, (5, 2): 1, (4, 2): 1},
    2: {(2, 0): 1, (6, 1): 1, (5, 2): 1},
    6: {(6, 0): 1, (5, 1): 1, (4, 1): 1},
    5: {(5, 0): 1, (4, 0): 1},
    4: {(4, 0): 1},
}

# resolutions: list of terms (degree 0 first); each term a list of (label, shift)
MODULAR_RESOLUTIONS = {
    4: [[(4, 0)]],
    5: [[(5, 0)], [(4, 0)]],
    6: [[(6, 0)], [(5, 1)]],
    2: [[(2, 0)], [(6, 1)], [(4, 2)]],
    7: [[(7, 0)], [(6, 1), (2, 0)], [(5, 2)], [(4, 2)]],
}

# as printed; the entry for 5 fails the Euler check and is corrected below
QUANTUM_RESOLUTIONS_PRINTED = {
    4: [[(4, 0)]],
    5: [[(5, 0)], [(4, 0)]],
    6: [[(6, 0)], [(4, 1), (5, 1)]],
    2: [[(2, 0)], [(6, 1)], [(4, 2)]],
    7: [[(7, 0)], [(6, 1)], [(5, 2)]],
}

# ungraded decomposition matrices as published (x = y = 1 filled in)
PUBLISHED_D = {7: [1, 0, 0, 0, 0], 2: [1, 1, 0, 0, 0], 6: [2, 1, 1, 0, 0], 5: [1, 1, 1, 1, 0], 4: [1, 0, 1, 1, 1]}
PUBLISHED_D_PRIME = {7: [1, 0, 0, 0, 0], 2: [0, 1, 0, 0, 0], 6: [1, 1, 1, 0, 0], 5: [0, 1, 1, 1, 0], 4: [1, 0, 1, 0, 1]}


class CaseStudyError(AssertionError):
    """A named step of the pipeline failed."""

    def __init__(self, step: str, message: str):
        super().__init__(f"{step}: {message}")
        self.step = step


@dataclass
class CaseData:
    order: tuple
    dims: dict  # label -> (dim Δ, dim L′, dim L)
    carlson: dict
    known_rows: dict
    radical: dict
    socle: dict

    @property
    def dim_delta(self):
        return {k: v[0] for k, v in self.dims.items()}

    @property
    def dim_Lq(self):
        return {k: v[1] for k, v in self.dims.items()}

    @property
    def dim_L(self):
        return {k: v[2] for k, v in self.dims.items()}


def default_data() -> CaseData:
    dims = {CONVERSION[p]: d for p, d in DIMENSIONS.items()}
    known = {CONVERSION[p]: {CONVERSION[q]: c for q, c in row.items()} for p, row in KNOWN_ROWS.items()}
    return CaseData(ORDER, dims, {k: dict(v) for k, v in CARLSON.items()}, known,
                    RADICAL_SERIES, SOCLE_SERIES)


def _matrix(rows: dict, order=ORDER):
    return [list(rows[k]) for k in order]


def _cartan(D):
    n = len(D)
    return [[sum(D[k][i] * D[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Ungraded decomposition data


def _decomposition_candidates(data: CaseData):
    """All unitriangular non-negative D obeying the dimension table and the
    bound [Δ(λ):L(1⁵)] ≤ dim S_λ."""
    order = data.order
    per_row = []
    for i, lam in enumerate(order):
        target = data.dim_delta[lam] - data.dim_L[lam]
        bound = Partition(PARTITION_OF[lam]).num_standard_tableaux()
        if lam in data.known_rows:
            row = [data.known_rows[lam].get(mu, 0) for mu in order]
            if sum(c * data.dim_L[mu] for c, mu in zip(row, order)) != data.dim_delta[lam]:
                raise CaseStudyError("deduce", f"known row for {lam} breaks the dimension table")
            per_row.append([row])
            continue
        below = order[:i]
        ranges = []
        for mu in below:
            cap = target // data.dim_L[mu]
            if mu == 7:
                cap = min(cap, bound)
            ranges.append(range(cap + 1))
        rows = []
        for combo in product(*ranges):
            if sum(c * data.dim_L[mu] for c, mu in zip(combo, below)) == target:
                rows.append(list(combo) + [1] + [0] * (len(order) - i - 1))
        if not rows:
            raise CaseStudyError("deduce", f"no admissible row for Δ({lam})")
        per_row.append(rows)
    return [list(D) for D in product(*per_row)]


def _carlson_matrix(carlson, labels):
    return [[carlson[a][b] for b in labels] for a in labels]


def cartan_matches(C, carlson) -> list[tuple]:
    """Simultaneous reorderings σ with C[i][j] = Carlson[σ(i)][σ(j)]."""
    labels = sorted(carlson)
    out = []
    for perm in permutations(labels):
        if all(C[i][j] == carlson[perm[i]][perm[j]] for i in range(len(C)) for j in range(len(C))):
            out.append(perm)
    return out


@dataclass
class Deduction:
    D: list
    x: int
    y: int
    first_cartan_row: list
    candidates: int
    matches: int
    conversion: dict

    def to_json(self):
        return {"D": self.D, "x": self.x, "y": self.y, "first_cartan_row": self.first_cartan_row,
                "candidates": self.candidates, "matches": self.matches,
                "conversion": {",".join(map(str, p)) or "()": lbl for p, lbl in self.conversion.items()}}


def deduce_decomposition_matrix(data: CaseData | None = None) -> Deduction:
    """Resolve the two unknown entries of the Δ(5) row against Carlson."""
    data = data or default_data()
    cands = _decomposition_candidates(data)
    free = [D for D in cands]
    # only the Δ(5) row is undetermined; x, y are its L(3,1²), L(3,2) entries
    xs = sorted({(D[4][2], D[4][3]) for D in free})
    if len(free) != len(xs) or any(x + y != 2 for x, y in xs):
        raise CaseStudyError("deduce", f"unexpected candidate family {xs}")
    carl_rows = [sorted(r.values(), reverse=True) for r in data.carlson.values()]
    survivors = []
    for D in free:
        C = _cartan(D)
        if sorted(C[0], reverse=True) not in carl_rows:
            continue
        # the first row is the only one with three entries ≥ 4
        big = [i for i, r in enumerate(C) if sum(1 for v in r if v >= 4) >= 3]
        if big != [0]:
            continue
        survivors.append(D)
    if len(survivors) != 1:
        raise CaseStudyError("deduce", f"{len(survivors)} consistent assignments of x, y")
    D = survivors[0]
    C = _cartan(D)
    matches = cartan_matches(C, data.carlson)
    if len(matches) != 1:
        raise CaseStudyError("match", f"{len(matches)} simultaneous reorderings match Carlson's matrix")
    perm = matches[0]
    conversion = {PARTITION_OF[lbl]: perm[i] for i, lbl in enumerate(data.order)}
    return Deduction(D, D[4][2], D[4][3], C[0], len(cands), len(matches), conversion)


def match_cartan(data: CaseData | None = None) -> dict:
    """Conversion table partition -> Carlson label from the unique match."""
    return deduce_decomposition_matrix(data).conversion


def _unitriangular_inverse(M):
    n = len(M)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            inv[i][j] = -sum(M[i][k] * inv[k][j] for k in range(j, i))
    return inv


@dataclass
class QuantumDecomposition:
    D_prime: list
    adjustment: list  # E with D = D′E
    closures: list  # (label, dim Δ′, [(label, mult, dim L′)])

    def to_json(self):
        return {"D_prime": self.D_prime, "adjustment": self.adjustment,
                "closures": [{"label": lbl, "dim": d, "terms": terms} for lbl, d, terms in self.closures]}


def quantum_decomposition(data: CaseData | None = None, D=None) -> QuantumDecomposition:
    """D′ from D, the dimension table, Δ′(2)=L′(2) and [Δ′(4):L′(5)] = 0.

    D = D′E with E unitriangular and non-negative, so 0 ≤ D′ ≤ D entrywise.
    """
    data = data or default_data()
    D = D or deduce_decomposition_matrix(data).D
    order = data.order
    n = len(order)
    idx = {lbl: i for i, lbl in enumerate(order)}
    per_row = []
    for i, lam in enumerate(order):
        rows = []
        for combo in product(*[range(D[i][j] + 1) for j in range(i)]):
            row = list(combo) + [1] + [0] * (n - i - 1)
            if sum(c * data.dim_Lq[mu] for c, mu in zip(row, order)) == data.dim_delta[lam]:
                rows.append(row)
        per_row.append(rows)
    # the two imported facts
    per_row[idx[2]] = [r for r in per_row[idx[2]] if r == [int(lbl == 2) for lbl in order]]
    per_row[idx[4]] = [r for r in per_row[idx[4]] if r[idx[5]] == 0]
    sols = []
    for Dp in product(*per_row):
        Dp = [list(r) for r in Dp]
        E = [[int(v) if v.denominator == 1 else None for v in row]
             for row in _mat_mul_frac(_unitriangular_inverse(Dp), D)]
        if any(v is None or v < 0 for row in E for v in row):
            continue
        if any(sum(E[i][j] * data.dim_L[order[j]] for j in range(n)) != data.dim_Lq[order[i]] for i in range(n)):
            continue
        sols.append((Dp, E))
    if len(sols) != 1:
        raise CaseStudyError("quantum", f"{len(sols)} candidate quantum decomposition matrices")
    Dp, E = sols[0]
    closures = []
    for i, lam in enumerate(order):
        terms = [(mu, Dp[i][j], data.dim_Lq[mu]) for j, mu in enumerate(order) if Dp[i][j]]
        if sum(c * d for _, c, d in terms) != data.dim_delta[lam]:
            raise CaseStudyError("quantum", f"closure fails for Δ′({lam})")
        closures.append((lam, data.dim_delta[lam], terms))
    return QuantumDecomposition(Dp, E, closures)


def _mat_mul_frac(A, B):
    return [[sum(Fraction(A[i][k]) * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


# ---------------------------------------------------------------------------
# Graded multiplicities and resolutions


def graded_multiplicities(data: CaseData | None = None, loewy=None, D=None) -> dict:
    """Graded Δ-multiplicity tables for grP′ and for the modular graded PIMs.

    Quantum: multiplicity one at shift s iff the Loewy index equals s.
    Modular: the lattice of P(λ) has generic fibre ⊕_ν E[ν][λ]·P′(ν), so the
    modular table is the E-weighted sum of quantum rows, shifts preserved.
    """
    data = data or default_data()
    loewy = loewy or LOEWY_INDEX
    qd = quantum_decomposition(data, D)
    order = data.order
    idx = {lbl: i for i, lbl in enumerate(order)}
    quantum = {}
    for lam in order:
        row = {}
        for mu, s in loewy[lam].items():
            if qd.D_prime[idx[mu]][idx[lam]] != 1:
                raise CaseStudyError("graded", f"[P′({lam}):Δ′({mu})] is not one; multiplicity regime unsupported")
            row[(mu, s)] = 1
        # every Δ′-section must be indexed (BGG reciprocity)
        bgg = {mu for mu in order if qd.D_prime[idx[mu]][idx[lam]]}
        if bgg != set(loewy[lam]):
            raise CaseStudyError("graded", f"Loewy index table misses sections of P′({lam})")
        quantum[lam] = row
    modular = {}
    for lam in order:
        row: Counter = Counter()
        for nu in order:
            e = qd.adjustment[idx[nu]][idx[lam]]
            for key, c in quantum[nu].items():
                row[key] += e * c
        modular[lam] = {k: v for k, v in row.items() if v}
    return {"quantum": quantum, "modular": modular}


def _grothendieck(res, table):
    """Alternating sum of the graded Δ-classes of the terms."""
    out: Counter = Counter()
    for n, term in enumerate(res):
        for lbl, s in term:
            for (mu, t), c in table[lbl].items():
                out[(mu, t + s)] += (-1) ** n * c
    return {k: v for k, v in out.items() if v}


def _pim_dims(D, data: CaseData):
    order = data.order
    return {lam: sum(D[i][j] * data.dim_delta[order[i]] for i in range(len(order)))
            for j, lam in enumerate(order)}


@dataclass
class ResolutionCheck:
    label: int
    ok: bool
    dim_euler: int
    class_euler: dict

    def to_json(self):
        return {"label": self.label, "ok": self.ok, "dim_euler": self.dim_euler,
                "class_euler": {f"{m}<{s}>": c for (m, s), c in sorted(self.class_euler.items())}}


def check_resolution(lam, res, table, pim_dim, dim_delta) -> ResolutionCheck:
    dim = sum((-1) ** n * sum(pim_dim[lbl] for lbl, _ in term) for n, term in enumerate(res))
    cls = _grothendieck(res, table)
    ok = dim == dim_delta[lam] and cls == {(lam, 0): 1}
    return ResolutionCheck(lam, ok, dim, cls)


def quantum_resolutions(data: CaseData | None = None) -> tuple[dict, list]:
    """Printed quantum resolutions, with failing ones replaced.

    A standard module Δ′(μ) whose P′(μ) has no other Δ′-section is itself
    projective, so its resolution is the single term P′(μ).
    """
    data = data or default_data()
    tables = graded_multiplicities(data)
    qd = quantum_decomposition(data)
    dims = _pim_dims(qd.D_prime, data)
    fixed, notes = {}, []
    for lam, res in QUANTUM_RESOLUTIONS_PRINTED.items():
        chk = check_resolution(lam, res, tables["quantum"], dims, data.dim_delta)
        if chk.ok:
            fixed[lam] = res
            continue
        if tables["quantum"][lam] == {(lam, 0): 1}:
            repl = [[(lam, 0)]]
            if not check_resolution(lam, repl, tables["quantum"], dims, data.dim_delta).ok:
                raise CaseStudyError("resolutions", f"no repair for Δ′({lam})")
            fixed[lam] = repl
            notes.append({"label": lam, "printed": res, "dim_euler": chk.dim_euler,
                          "expected": data.dim_delta[lam], "replacement": repl,
                          "reason": f"P′({lam}) = Δ′({lam}) is projective"})
        else:
            raise CaseStudyError("resolutions", f"printed resolution of Δ′({lam}) is inconsistent")
    return fixed, notes


# ∇_red(λ) is concentrated in one grade; composition factors as multisets
def nabla_red_factors(lam) -> Counter:
    return Counter(x for layer in DELTA_RED_SERIES[lam] for x in layer)


def ext_irreducible(res, j, n, r) -> int:
    """dim ext^n(Δ, L(j)⟨r⟩) from a minimal resolution: count P(j)⟨r⟩ in term n."""
    if n >= len(res):
        return 0
    return sum(1 for lbl, s in res[n] if lbl == j and s == r)


@dataclass
class ExtEntry:
    n: int
    r: int
    dim: int | None  # None when only the Euler characteristic is certified
    reason: str


def _section_rank(res, n, r, lam, pim_grade0):
    """Rank of the grade-r piece of C^n → C^{n+1} when it is forced.

    Forced case: at shift r, term n is a single P(i)⟨r⟩ and term n+1 a single
    P(j)⟨r⟩, and P_0(i) = Δ^red(i) over Δ^red(j).  The grade-r differential
    then has image the bottom section Δ^red(j), and
    Hom(P_0(i),∇_red(λ)) → Hom(P_0(j),∇_red(λ)) has rank dim Hom(Δ^red(j),∇_red(λ)) = δ_{jλ}.
    """
    a = [lbl for lbl, s in res[n] if s == r]
    b = [lbl for lbl, s in res[n + 1] if s == r] if n + 1 < len(res) else []
    if len(a) != 1 or len(b) != 1:
        return None
    i, j = a[0], b[0]
    if pim_grade0[i] != Counter({i: 1, j: 1}):
        return None
    return int(j == lam)


def ext_from_resolutions(mu, lam, res=None, table=None, nmax=None) -> dict:
    """Table of dim ext^n(g̃rΔ(μ), ∇_red(λ)⟨r⟩) keyed by (n, r).

    The cochain space in degree n and grade r is ⊕ Hom(P_0(i), ∇_red(λ)) over
    summands P(i)⟨r⟩ of term n.  Entries are exact when the slice has no
    adjacent nonzero cochains, when the target is simple (minimality), or
    when the section rule fixes the rank; otherwise only the Euler
    characteristic of the slice is reported.
    """
    res = res or MODULAR_RESOLUTIONS[mu]
    table = table or MODULAR_GRADED_TABLE
    grade0 = {i: Counter({nu: c for (nu, s), c in row.items() if s == 0}) for i, row in table.items()}
    nab = nabla_red_factors(lam)
    simple_target = sum(nab.values()) == 1
    shifts = sorted({s for term in res for _, s in term})
    N = len(res)
    out = {"entries": {}, "euler": {}}
    for r in shifts:
        C = [sum(nab[lbl] for lbl, s in res[n] if s == r) for n in range(N)]
        out["euler"][r] = sum((-1) ** n * c for n, c in enumerate(C))
        ranks: list = [0] * N  # ranks[n] = rank of C^n -> C^{n+1}
        reasons: list = [None] * N
        for n in range(N - 1):
            if C[n] == 0 or C[n + 1] == 0:
                continue
            if simple_target:
                reasons[n] = "minimality"
                continue
            ranks[n] = _section_rank(res, n, r, lam, grade0)
            reasons[n] = "section" if ranks[n] is not None else None
        for n in range(N):
            before = ranks[n - 1] if n > 0 else 0
            after = ranks[n]
            if before is None or after is None:
                out["entries"][(n, r)] = ExtEntry(n, r, None, "euler-certified")
                continue
            used = [x for x in ((reasons[n - 1] if n > 0 else None), reasons[n]) if x]
            out["entries"][(n, r)] = ExtEntry(n, r, C[n] - before - after, "+".join(used) or "isolated")
    return out


def quantum_ext(mu, lam, resolutions) -> dict:
    """dim ext^n(grΔ′(μ), L′(λ)⟨m⟩) by counting P′(λ)⟨m⟩ in term n."""
    res = resolutions[mu]
    out = {}
    for n, term in enumerate(res):
        for lbl, s in term:
            if lbl == lam:
                out[(n, s)] = out.get((n, s), 0) + 1
    return out


@dataclass
class CrossCheck:
    ok: bool
    pairs: int
    exact_entries: int
    certified_entries: int
    failures: list
    diagonal_ok: bool

    def to_json(self):
        return {"ok": self.ok, "pairs": self.pairs, "exact_entries": self.exact_entries,
                "certified_entries": self.certified_entries, "failures": self.failures,
                "diagonal_ok": self.diagonal_ok}


def equality_cross_check(data: CaseData | None = None) -> CrossCheck:
    """Compare the modular ∇_red side with the quantum irreducible side."""
    data = data or default_data()
    qres, _ = quantum_resolutions(data)
    failures = []
    exact = certified = 0
    diagonal_ok = True
    for mu in data.order:
        for lam in data.order:
            mod = ext_from_resolutions(mu, lam)
            q = quantum_ext(mu, lam, qres)
            for (n, m), v in q.items():
                if v and n != m:
                    diagonal_ok = False
                    failures.append({"mu": mu, "lambda": lam, "n": n, "m": m, "kind": "diagonal"})
            qe: Counter = Counter()
            for (n, m), v in q.items():
                qe[m] += (-1) ** n * v
            grades = set(mod["euler"]) | set(qe)
            for r in sorted(grades):
                if mod["euler"].get(r, 0) != qe.get(r, 0):
                    failures.append({"mu": mu, "lambda": lam, "m": r, "kind": "euler",
                                     "modular": mod["euler"].get(r, 0), "quantum": qe.get(r, 0)})
            for (n, r), e in mod["entries"].items():
                if e.dim is None:
                    certified += 1
                    continue
                exact += 1
                if e.dim != q.get((n, r), 0):
                    failures.append({"mu": mu, "lambda": lam, "n": n, "m": r, "kind": "exact",
                                     "modular": e.dim, "quantum": q.get((n, r), 0)})
            # quantum entries outside the modular support must vanish there too
            for (n, m), v in q.items():
                if v and (n, m) not in mod["entries"]:
                    failures.append({"mu": mu, "lambda": lam, "n": n, "m": m, "kind": "support"})
    return CrossCheck(not failures, len(data.order) ** 2, exact, certified, failures, diagonal_ok)


# ---------------------------------------------------------------------------
# Refutations for the radical-series grading


def _graded_factors(series, shift=0) -> Counter:
    return Counter((x, g + shift) for g, layer in enumerate(series) for x in layer)


def remark_62_refutations(data: CaseData | None = None) -> dict:
    data = data or default_data()
    rad = data.radical
    # (i) not Koszul: resolve L(2) by its linear start
    p2 = _graded_factors(rad[2])
    rad_p2 = p2 - Counter({(2, 0): 1})
    head1 = Counter(x for (x, g) in rad_p2 if g == 1)
    if sorted(head1.elements()) != [7]:
        raise CaseStudyError("remark-koszul", "rad P(2) is not generated by L(7) in grade 1")
    cover = _graded_factors(rad[7], shift=1)
    kernel = cover.copy()
    kernel.subtract(rad_p2)
    if any(v < 0 for v in kernel.values()):
        raise CaseStudyError("remark-koszul", "grP(7)⟨1⟩ does not cover rad grP(2)")
    kernel = +kernel
    low = min(g for _, g in kernel)
    kernel_head = sorted(x for (x, g) in kernel.elements() if g == low)
    needs_4 = any(x == 4 for x, _ in kernel)
    cartan_p2_l4 = data.carlson[2][4]
    p2_has_4 = any(4 in layer for layer in rad[2])
    koszul_refuted = low == 2 and kernel_head == [2] and needs_4 and cartan_p2_l4 == 0 and not p2_has_4
    # (ii) not quasi-hereditary
    repeated = {lbl: sum(layer.count(lbl) for layer in rad[lbl]) for lbl in data.order}
    only_p4 = [lbl for lbl, c in repeated.items() if c == 1]
    p6 = rad[6]
    ms = [g for g, layer in enumerate(p6) for _ in range(layer.count(4))]
    unique_m = ms[0] if len(ms) == 1 else None
    p4 = rad[4]
    socle_p4 = p4[-1]
    socle_grade = None if unique_m is None else unique_m + len(p4) - 1
    layer_ok = socle_grade is not None and socle_grade < len(p6) and p6[socle_grade] == socle_p4 == [7]
    next_nonzero = socle_grade is not None and socle_grade + 1 < len(p6) and bool(p6[socle_grade + 1])
    qha_refuted = only_p4 == [4] and unique_m == 2 and layer_ok and next_nonzero
    return {
        "koszul_refuted": koszul_refuted,
        "koszul_witness": {
            "kernel_generated_in_grade": low,
            "kernel_head": kernel_head,
            "kernel_contains_L4_in_grade": sorted(g for x, g in kernel if x == 4),
            "[P(2):L(4)]": cartan_p2_l4,
        },
        "qha_refuted": qha_refuted,
        "qha_witness": {
            "heads_with_multiplicity_one": only_p4,
            "hom_shifts_grP4_to_grP6": ms,
            "unique_m": unique_m,
            "socle_L7_grade": socle_grade,
            "grP6_layer": p6[socle_grade] if layer_ok else None,
            "grP6_next_layer": p6[socle_grade + 1] if next_nonzero else None,
        },
    }


# ---------------------------------------------------------------------------
# Table consistency


def table_consistency(data: CaseData | None = None) -> dict:
    data = data or default_data()
    order = data.order
    checks = {}
    ded = deduce_decomposition_matrix(data)
    D = ded.D
    C = _cartan(D)
    idx = {lbl: i for i, lbl in enumerate(order)}
    # Loewy lengths and composition factors of the PIMs
    pim_ok = True
    for lbl in order:
        rad, soc = data.radical[lbl], data.socle[lbl]
        cr = Counter(x for layer in rad for x in layer)
        cs = Counter(x for layer in soc for x in layer)
        row = {mu: C[idx[lbl]][idx[mu]] for mu in order}
        pim_ok &= len(rad) == len(soc) and cr == cs and all(cr[mu] == row[mu] for mu in order)
        pim_ok &= rad[0] == [lbl] and soc[0] == [lbl] and rad[-1] == soc[-1]
    checks["pim_series"] = pim_ok
    # standard modules: composition factors agree with D rows
    std_ok = all(Counter(x for layer in STANDARD_SERIES[lbl] for x in layer)
                 == Counter({mu: D[idx[lbl]][idx[mu]] for mu in order if D[idx[lbl]][idx[mu]]})
                 for lbl in order)
    checks["standard_series"] = std_ok
    qd = quantum_decomposition(data, D)
    Dp = qd.D_prime
    checks["quantum_standard_series"] = all(
        Counter(x for layer in QUANTUM_STANDARD_SERIES[lbl] for x in layer)
        == Counter({mu: Dp[idx[lbl]][idx[mu]] for mu in order if Dp[idx[lbl]][idx[mu]]})
        for lbl in order)
    # dimension closure for every Δ, Δ′, P
    dimL, dimLq, dimD = data.dim_L, data.dim_Lq, data.dim_delta
    closure = all(sum(D[i][j] * dimL[order[j]] for j in range(5)) == dimD[order[i]] for i in range(5))
    closure &= all(sum(Dp[i][j] * dimLq[order[j]] for j in range(5)) == dimD[order[i]] for i in range(5))
    pdims = _pim_dims(D, data)
    closure &= all(sum(C[idx[lbl]][j] * dimL[order[j]] for j in range(5)) == pdims[lbl] for lbl in order)
    checks["dimension_closure"] = closure
    # Δ^red: grade-0 parts of the modular graded standards
    red_ok = True
    for lbl in order:
        series = STANDARD_SERIES[lbl]
        red = DELTA_RED_SERIES[lbl]
        red_ok &= series[: len(red)] == red
    checks["delta_red_prefix"] = red_ok
    # unitriangularity and Cartan symmetry
    checks["D_unitriangular"] = all(D[i][i] == 1 and all(D[i][j] == 0 for j in range(i + 1, 5)) for i in range(5))
    checks["D_prime_unitriangular"] = all(Dp[i][i] == 1 and all(Dp[i][j] == 0 for j in range(i + 1, 5)) for i in range(5))
    checks["cartan_symmetric"] = all(C[i][j] == C[j][i] for i in range(5) for j in range(5)) and all(C[i][i] > 0 for i in range(5))
    # graded tables
    tables = graded_multiplicities(data)
    checks["quantum_graded_table"] = tables["quantum"] == QUANTUM_GRADED_TABLE
    checks["modular_graded_table"] = tables["modular"] == MODULAR_GRADED_TABLE
    # grade-0 parts of the PIMs carry Δ^red-filtrations matching the radical series head layers
    # modular resolutions pass the Euler checks
    mod_res = {lbl: check_resolution(lbl, MODULAR_RESOLUTIONS[lbl], MODULAR_GRADED_TABLE, pdims, dimD).ok
               for lbl in order}
    checks["modular_resolutions"] = all(mod_res.values())
    return checks


# ---------------------------------------------------------------------------
# Report and export


def run(data: CaseData | None = None) -> dict:
    """Full pipeline; each fact carries a status and witnesses."""
    data = data or default_data()
    facts = []

    def record(name, ok, witness, status="verified"):
        facts.append({"fact": name, "status": status if ok else "failed", "witness": witness})

    ded = deduce_decomposition_matrix(data)
    record("x=1, y=1", (ded.x, ded.y) == (1, 1), {"x": ded.x, "y": ded.y}, "derived")
    record("decomposition matrix D", ded.D == _matrix(PUBLISHED_D), ded.D, "derived")
    record("first Cartan row 8,4,4,2,1", ded.first_cartan_row == [8, 4, 4, 2, 1], ded.first_cartan_row, "derived")
    expected_conv = {p: lbl for p, lbl in CONVERSION.items()}
    record("unique Cartan matching and conversion table", ded.matches == 1 and ded.conversion == expected_conv,
           ded.to_json()["conversion"], "derived")
    qd = quantum_decomposition(data, ded.D)
    record("quantum decomposition matrix D′", qd.D_prime == _matrix(PUBLISHED_D_PRIME), qd.to_json(), "derived")
    tables = graded_multiplicities(data, D=ded.D)
    record("graded Δ′-multiplicities of grP′", tables["quantum"] == QUANTUM_GRADED_TABLE,
           _table_json(tables["quantum"]), "derived")
    record("graded Δ-multiplicities of the modular graded PIMs", tables["modular"] == MODULAR_GRADED_TABLE,
           _table_json(tables["modular"]), "derived")
    qres, notes = quantum_resolutions(data)
    record("quantum resolutions pass Euler checks after repair", bool(qres), {"repairs": notes})
    cc = equality_cross_check(data)
    record("ext equality, modular ∇_red vs quantum L′", cc.ok, cc.to_json())
    thm = ext_from_resolutions(7, 2)
    ext1 = {r: e.dim for (n, r), e in thm["entries"].items() if n == 1}
    record("ext¹(g̃rΔ(7), ∇_red(2)⟨r⟩) = 0 for all r", all(v == 0 for v in ext1.values()), ext1)
    rem = remark_62_refutations(data)
    record("radical-series grading is not Koszul", rem["koszul_refuted"], rem["koszul_witness"])
    record("radical-series grading is not quasi-hereditary", rem["qha_refuted"], rem["qha_witness"])
    cons = table_consistency(data)
    record("table consistency", all(cons.values()), cons)
    return {"schema": 1, "ok": all(f["status"] != "failed" for f in facts), "facts": facts}


def _table_json(t):
    return {str(lbl): {f"{mu}<{s}>": c for (mu, s), c in sorted(row.items())} for lbl, row in t.items()}


def export_data() -> str:
    """Embedded tables wrapped in the algebra spec format (no arrows)."""
    covers = [(str(a), str(b)) for a, b in zip(ORDER, ORDER[1:])]
    spec = QuiverSpec(2, [str(v) for v in ORDER], [], [], covers, "S(5,5) principal block, p=2 (tables only)")
    d = json.loads(serialize_spec(spec))
    d["tables"] = {
        "conversion": {",".join(map(str, p)): lbl for p, lbl in CONVERSION.items()},
        "dimensions": {",".join(map(str, p)): list(v) for p, v in DIMENSIONS.items()},
        "carlson_cartan": {str(k): {str(a): b for a, b in v.items()} for k, v in CARLSON.items()},
        "radical_series": {str(k): v for k, v in RADICAL_SERIES.items()},
        "socle_series": {str(k): v for k, v in SOCLE_SERIES.items()},
        "standard_series": {str(k): v for k, v in STANDARD_SERIES.items()},
        "quantum_standard_series": {str(k): v for k, v in QUANTUM_STANDARD_SERIES.items()},
        "delta_red_series": {str(k): v for k, v in DELTA_RED_SERIES.items()},
        "loewy_index": {str(k): {str(a): b for a, b in v.items()} for k, v in LOEWY_INDEX.items()},
        "modular_resolutions": {str(k): [[list(t) for t in term] for term in v] for k, v in MODULAR_RESOLUTIONS.items()},
        "quantum_resolutions_printed": {str(k): [[list(t) for t in term] for term in v]
                                        for k, v in QUANTUM_RESOLUTIONS_PRINTED.items()},
    }
    return json.dumps(d, indent=2, sort_keys=True) + "\n"
