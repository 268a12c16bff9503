"""Symmetric groups, Specht modules over GF(p) and the Hecke algebra.

Permutations are one-line tuples w = (w(0), ..., w(n-1)) with
(uv)(i) = u(v(i)).  The simple reflection s_i (1 <= i < n) swaps i-1, i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .exact import Field, kernel, mat_mul, mat_vec, rank, rref, reduce_against
from .kl import LaurentPoly


# ---------------------------------------------------------------------------
# Permutations


def compose(u, v):
    return tuple(u[i] for i in v)


def inverse(w):
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x] = i
    return tuple(out)


def length(w) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def simple_reflection(n, i):
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def right_mul_s(w, i):
    """w·s_i: swap positions i-1 and i of the one-line word."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def left_mul_s(w, i):
    """s_i·w: swap the values i-1 and i."""
    return tuple(i if x == i - 1 else i - 1 if x == i else x for x in w)


def reduced_word(w):
    """A reduced word (1-based generators) with w = s_{a1} ... s_{ak}."""
    w = tuple(w)
    out = []
    while True:
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:  # right descent
                out.append(i)
                w = right_mul_s(w, i)
                break
        else:
            return tuple(reversed(out))


# ---------------------------------------------------------------------------
# Partitions


class Partition:
    def __init__(self, parts):
        parts = [int(x) for x in parts if int(x) != 0]
        if any(x < 0 for x in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not a partition")
        self.parts = tuple(parts)
        self.n = sum(parts)

    @classmethod
    def parse(cls, text: str):
        return cls(int(x) for x in text.replace(" ", "").split(",") if x)

    def __repr__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def dual(self) -> "Partition":
        if not self.parts:
            return Partition([])
        return Partition([sum(1 for x in self.parts if x > j) for j in range(self.parts[0])])

    def is_regular(self, p: int) -> bool:
        """No part repeated p or more times."""
        return all(self.parts.count(x) < p for x in set(self.parts))

    def core(self, p: int) -> "Partition":
        """p-core via beta-numbers on a p-runner abacus."""
        k = len(self.parts)
        beta = sorted((self.parts[i] + k - 1 - i for i in range(k)), reverse=True)
        runners = {}
        for b in beta:
            runners.setdefault(b % p, []).append(b)
        slid = []
        for r, beads in runners.items():
            slid += [r + p * j for j in range(len(beads))]
        slid.sort(reverse=True)
        return Partition([b - (k - 1 - i) for i, b in enumerate(slid)])

    def hook_lengths(self):
        d = self.dual().parts
        return [[self.parts[i] - j + d[j] - i - 1 for j in range(self.parts[i])] for i in range(len(self.parts))]

    def num_standard_tableaux(self) -> int:
        prod = 1
        for row in self.hook_lengths():
            for h in row:
                prod *= h
        return factorial(self.n) // prod


def partitions(n):
    def rec(n, maxp):
        if n == 0:
            yield ()
            return
        for k in range(min(n, maxp), 0, -1):
            for rest in rec(n - k, k):
                yield (k,) + rest

    return [Partition(p) for p in rec(n, n)]


# ---------------------------------------------------------------------------
# Young subgroups and coset representatives


@dataclass
class YoungSubgroup:
    composition: tuple
    generators: list  # 1-based simple reflections
    elements: list


def _blocks(composition):
    out, pos = [], 0
    for part in composition:
        out.append(list(range(pos, pos + part)))
        pos += part
    return out


def young_subgroup(composition) -> YoungSubgroup:
    comp = tuple(int(x) for x in composition)
    n = sum(comp)
    gens, pos = [], 0
    for part in comp:
        gens += list(range(pos + 1, pos + part))
        pos += part
    elems = []
    blocks = _blocks(comp)
    for w in permutations(range(n)):
        if all(w[i] in b for b in blocks for i in b):
            elems.append(tuple(w))
    return YoungSubgroup(comp, gens, sorted(elems, key=lambda w: (length(w), w)))


def distinguished_reps(composition):
    """Minimal-length d in the right cosets S_λ d: d⁻¹ increasing on blocks."""
    comp = tuple(int(x) for x in composition)
    n = sum(comp)
    blocks = _blocks(comp)
    out = []
    for w in permutations(range(n)):
        wi = inverse(w)
        if all(wi[b[k]] < wi[b[k + 1]] for b in blocks for k in range(len(b) - 1)):
            out.append(tuple(w))
    return sorted(out, key=lambda w: (length(w), w))


def coset_generating_function(composition) -> LaurentPoly:
    out = {}
    for d in distinguished_reps(composition):
        out[length(d)] = out.get(length(d), 0) + 1
    return LaurentPoly(out, "q")


def double_coset_count(lam, mu) -> int:
    """|S_λ \\ S_n / S_μ|."""
    n = sum(lam)
    bl, bm = _blocks(lam), _blocks(mu)
    which_l = {i: k for k, b in enumerate(bl) for i in b}
    which_m = {i: k for k, b in enumerate(bm) for i in b}
    seen = set()
    for w in permutations(range(n)):
        seen.add(tuple(sorted((which_l[w[i]], which_m[i]) for i in range(n))))
    return len(seen)


# ---------------------------------------------------------------------------
# Modules for the group algebra


class GroupModule:
    """Module for F S_n given by matrices of s_1, ..., s_{n-1} (column action)."""

    def __init__(self, F: Field, n: int, gens, name=""):
        self.F = F
        self.n = n
        self.gens = gens
        self.dim = len(gens[0]) if gens else 0
        self.name = name

    def act(self, word, v):
        for i in reversed(word):
            v = mat_vec(self.gens[i - 1], v, self.F)
        return v

    def verify(self):
        F = self.F
        ident = [[F.one if i == j else F.zero for j in range(self.dim)] for i in range(self.dim)]
        k = len(self.gens)
        for i in range(k):
            if mat_mul(self.gens[i], self.gens[i], F) != ident:
                return False
            for j in range(i + 1, k):
                a, b = self.gens[i], self.gens[j]
                if j == i + 1:
                    if mat_mul(a, mat_mul(b, a, F), F) != mat_mul(b, mat_mul(a, b, F), F):
                        return False
                elif mat_mul(a, b, F) != mat_mul(b, a, F):
                    return False
        return True

    def spin(self, vectors):
        """RREF basis of the submodule generated by ``vectors``."""
        F = self.F
        R, piv = [], []
        queue = []
        for v in vectors:
            w = reduce_against(R, piv, v, F)
            if any(x != 0 for x in w):
                R, piv = rref(R + [list(v)], F, self.dim)
                queue.append(list(v))
        while queue:
            v = queue.pop()
            for g in self.gens:
                w = mat_vec(g, v, F)
                if any(x != 0 for x in reduce_against(R, piv, w, F)):
                    R, piv = rref(R + [w], F, self.dim)
                    queue.append(w)
        return R, piv

    def dual(self) -> "GroupModule":
        # g acts on M* by (g⁻¹)ᵀ; s_i is an involution
        return GroupModule(self.F, self.n, [[list(r) for r in zip(*g)] for g in self.gens], f"D{self.name}")

    def submodule(self, R, piv) -> "GroupModule":
        F = self.F
        mats = []
        for g in self.gens:
            cols = []
            for r in R:
                w = mat_vec(g, r, F)
                cols.append([w[p] for p in piv])  # RREF rows: coordinates at pivots
            mats.append([[cols[j][i] for j in range(len(R))] for i in range(len(R))])
        return GroupModule(F, self.n, mats)

    def quotient(self, R, piv) -> "GroupModule":
        F = self.F
        comp = [k for k in range(self.dim) if k not in set(piv)]
        mats = []
        for g in self.gens:
            cols = []
            for k in comp:
                e = [F.zero] * self.dim
                e[k] = F.one
                w = reduce_against(R, piv, mat_vec(g, e, F), F)
                cols.append([w[c] for c in comp])
            mats.append([[cols[j][i] for j in range(len(comp))] for i in range(len(comp))])
        return GroupModule(F, self.n, mats)


def _tabloid(rows):
    return tuple(frozenset(r) for r in rows)


def permutation_module(composition, p: int) -> tuple[GroupModule, list]:
    """M^λ on λ-tabloids (row sets), with its basis of tabloids."""
    F = Field(p)
    comp = tuple(int(x) for x in composition)
    n = sum(comp)
    tabs = sorted({_tabloid([[w[i] for i in b] for b in _blocks(comp)]) for w in permutations(range(n))},
                  key=lambda t: [sorted(r) for r in t])
    pos = {t: k for k, t in enumerate(tabs)}
    gens = []
    for i in range(1, n):
        s = simple_reflection(n, i)
        m = [[F.zero] * len(tabs) for _ in tabs]
        for k, t in enumerate(tabs):
            img = _tabloid([[s[x] for x in r] for r in t])
            m[pos[img]][k] = F.one
        gens.append(m)
    return GroupModule(F, n, gens, f"M{comp}"), tabs


def _standard_tableaux(lam: Partition):
    n = lam.n
    shape = lam.parts
    out = []

    def rec(filled, k):
        if k == n:
            out.append([list(r) for r in filled])
            return
        for i in range(len(shape)):
            if len(filled[i]) < shape[i] and (i == 0 or len(filled[i - 1]) > len(filled[i])):
                filled[i].append(k)
                rec(filled, k + 1)
                filled[i].pop()

    rec([[] for _ in shape], 0)
    return out


def _column_group(t):
    cols = []
    for j in range(len(t[0])):
        cols.append([t[i][j] for i in range(len(t)) if len(t[i]) > j])
    return cols


def polytabloid(t, tabs_pos, F: Field):
    """e_t = Σ_{σ ∈ C_t} sgn(σ) {σ t} as a coordinate vector."""
    n = sum(len(r) for r in t)
    vec = [F.zero] * len(tabs_pos)
    cols = _column_group(t)
    col_perms = [list(permutations(c)) for c in cols]

    def sign(seq, base):
        perm = [base.index(x) for x in seq]
        return (-1) ** length(perm)

    def rec(k, mapping, sgn):
        if k == len(cols):
            rows = [[mapping.get(x, x) for x in r] for r in t]
            key = _tabloid(rows)
            vec[tabs_pos[key]] = F.reduce(vec[tabs_pos[key]] + sgn)
            return
        for img in col_perms[k]:
            m = dict(mapping)
            for a, b in zip(cols[k], img):
                m[a] = b
            rec(k + 1, m, sgn * sign(img, cols[k]))

    rec(0, {}, 1)
    del n
    return vec


def specht_module(lam, p: int, nmax: int = 8) -> GroupModule:
    """S^λ spanned by polytabloids inside the tabloid module over GF(p) (p = 0: ℚ)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if lam.n > nmax:
        raise ValueError(f"n = {lam.n} exceeds the size guard {nmax}")
    M, tabs = permutation_module(lam.parts, p)
    F = M.F
    pos = {t: k for k, t in enumerate(tabs)}
    basis = [polytabloid(t, pos, F) for t in _standard_tableaux(lam)]
    R, piv = rref(basis, F, len(tabs))
    if len(R) != len(basis):
        raise AssertionError("standard polytabloids are dependent")
    S = M.submodule(R, piv)
    S.name = f"S{lam}"
    return S


def trivial_module(n: int, p: int, copies: int = 1) -> GroupModule:
    F = Field(p)
    ident = [[F.one if i == j else F.zero for j in range(copies)] for i in range(copies)]
    return GroupModule(F, n, [ident for _ in range(n - 1)])


def direct_sum_modules(a: GroupModule, b: GroupModule) -> GroupModule:
    F = a.F
    mats = []
    for x, y in zip(a.gens, b.gens):
        m = [[F.zero] * (a.dim + b.dim) for _ in range(a.dim + b.dim)]
        for i in range(a.dim):
            for j in range(a.dim):
                m[i][j] = x[i][j]
        for i in range(b.dim):
            for j in range(b.dim):
                m[a.dim + i][a.dim + j] = y[i][j]
        mats.append(m)
    return GroupModule(F, a.n, mats)


def _all_vectors(F: Field, basis, limit=1 << 14):
    """Nonzero vectors of span(basis) up to scalars (first nonzero coord 1)."""
    k = len(basis)
    if F.p == 0 or F.p ** k > limit:
        return None
    dim = len(basis[0])
    out = []

    def rec(i, coeffs, lead):
        if i == k:
            if lead:
                v = [F.zero] * dim
                for c, b in zip(coeffs, basis):
                    if c:
                        v = [F.reduce(x + c * y) for x, y in zip(v, b)]
                out.append(v)
            return
        rng = range(F.p) if lead else (0, 1)
        for c in rng:
            rec(i + 1, coeffs + [c], lead or c != 0)

    rec(0, [], False)
    return out


def _proper_submodule(m: GroupModule, rng: random.Random, tries: int = 40):
    """A proper nonzero submodule as (R, piv), or None if M is irreducible.

    Norton's test with an element a of the group algebra: every nonzero
    submodule U either meets ker(a) or has U^⊥ meeting ker(aᵀ) in M*.
    All kernel vectors are spun, so the test is conclusive for any a with
    nonzero kernel.
    """
    F = m.F
    d = m.dim
    if d <= 1:
        return None
    words = [[]] + [[i] for i in range(1, m.n)]
    for _ in range(tries):
        a = [[F.zero] * d for _ in range(d)]
        for _ in range(rng.randint(2, 5)):
            w = [rng.randint(1, m.n - 1) for _ in range(rng.randint(1, 2 * m.n))] if m.n > 1 else []
            c = rng.randint(1, max(1, (F.p or 5) - 1))
            g = [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]
            for i in reversed(w):
                g = mat_mul(m.gens[i - 1], g, F)
            a = [[F.reduce(x + c * y) for x, y in zip(ra, rg)] for ra, rg in zip(a, g)]
        K = kernel(a, F, d)
        if not K:
            continue
        vecs = _all_vectors(F, K)
        if vecs is None:
            continue
        for v in vecs:
            R, piv = m.spin([v])
            if len(R) < d:
                return R, piv
        at = [list(r) for r in zip(*a)]
        Kt = kernel(at, F, d)
        D = m.dual()
        for w in _all_vectors(F, Kt) or []:
            R, piv = D.spin([w])
            if len(R) < d:
                # annihilator of the dual submodule
                ann = kernel(R, F, d)
                return rref(ann, F, d)
        return None
    del words
    # fallback: brute force over all vectors
    basis = [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]
    vecs = _all_vectors(F, basis, limit=1 << 16)
    if vecs is None:
        raise RuntimeError("could not decide irreducibility")
    for v in vecs:
        R, piv = m.spin([v])
        if len(R) < d:
            return R, piv
    return None


def composition_factor_dims(m: GroupModule, seed: int = 0, guard: int = 200) -> list[int]:
    """Sorted dimensions of the composition factors of M."""
    if m.dim > guard:
        raise ValueError(f"dimension {m.dim} exceeds guard {guard}")
    rng = random.Random(seed)
    out = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.dim == 0:
            continue
        sub = _proper_submodule(x, rng)
        if sub is None:
            out.append(x.dim)
        else:
            R, piv = sub
            stack.append(x.submodule(R, piv))
            stack.append(x.quotient(R, piv))
    return sorted(out)


def invariant_form_check(composition, p: int) -> bool:
    """The tabloid basis is orthonormal for an S_n-invariant symmetric form."""
    M, _ = permutation_module(composition, p)
    F = M.F
    ident = [[F.one if i == j else F.zero for j in range(M.dim)] for i in range(M.dim)]
    return all(mat_mul([list(r) for r in zip(*g)], g, F) == ident for g in M.gens)


# ---------------------------------------------------------------------------
# Hecke algebra


class HeckeAlgebra:
    """Iwahori-Hecke algebra of S_n over ℚ with parameter q: τ_s² = (q−1)τ_s + q."""

    def __init__(self, n: int, q, nmax: int = 6):
        if n > nmax:
            raise ValueError(f"n = {n} exceeds the size guard {nmax}")
        self.n = n
        self.q = Fraction(q)
        self.one = {tuple(range(n)): Fraction(1)}

    def tau(self, w):
        return {tuple(w): Fraction(1)}

    def mul_s(self, h: dict, i: int) -> dict:
        """h·τ_{s_i}."""
        q = self.q
        out: dict = {}
        for w, c in h.items():
            ws = right_mul_s(w, i)
            if w[i - 1] < w[i]:
                out[ws] = out.get(ws, 0) + c
            else:
                out[w] = out.get(w, 0) + (q - 1) * c
                out[ws] = out.get(ws, 0) + q * c
        return {w: c for w, c in out.items() if c != 0}

    def s_mul(self, i: int, h: dict) -> dict:
        """τ_{s_i}·h."""
        q = self.q
        out: dict = {}
        for w, c in h.items():
            sw = left_mul_s(w, i)
            if length(sw) > length(w):
                out[sw] = out.get(sw, 0) + c
            else:
                out[w] = out.get(w, 0) + (q - 1) * c
                out[sw] = out.get(sw, 0) + q * c
        return {w: c for w, c in out.items() if c != 0}

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for w, c in b.items():
            prod = dict(a)
            for i in reduced_word(w):
                prod = self.mul_s(prod, i)
            for x, y in prod.items():
                out[x] = out.get(x, 0) + c * y
        return {w: c for w, c in out.items() if c != 0}

    def add(self, a, b, cb=1):
        out = dict(a)
        for w, c in b.items():
            out[w] = out.get(w, 0) + cb * c
        return {w: c for w, c in out.items() if c != 0}

    def scale(self, a, c):
        return {w: c * x for w, x in a.items() if c * x != 0}

    def x_element(self, composition) -> dict:
        return {w: Fraction(1) for w in young_subgroup(composition).elements}


def hecke_algebra(n: int, q) -> HeckeAlgebra:
    return HeckeAlgebra(n, q)


class QPermModule:
    """T′_λ = x_λ H with basis x_λ τ_d over distinguished right coset reps d."""

    def __init__(self, H: HeckeAlgebra, composition):
        self.H = H
        self.composition = tuple(composition)
        self.x = H.x_element(composition)
        self.reps = distinguished_reps(composition)
        self.dim = len(self.reps)
        self.basis = [H.mul(self.x, H.tau(d)) for d in self.reps]
        self.gens = [self._right_matrix(i) for i in range(1, H.n)]

    def coords(self, h: dict):
        """Coordinates of an element of x_λ H in the x_λ τ_d basis."""
        c = [h.get(d, Fraction(0)) for d in self.reps]
        back: dict = {}
        for k, b in enumerate(self.basis):
            for w, x in b.items():
                back[w] = back.get(w, 0) + c[k] * x
        back = {w: x for w, x in back.items() if x != 0}
        if back != {w: x for w, x in h.items() if x != 0}:
            raise ValueError("element is not in x_λ H")
        return c

    def element(self, coords):
        out: dict = {}
        for c, b in zip(coords, self.basis):
            if c:
                out = self.H.add(out, b, c)
        return out

    def _right_matrix(self, i):
        cols = [self.coords(self.H.mul_s(b, i)) for b in self.basis]
        return [[cols[j][r] for j in range(self.dim)] for r in range(self.dim)]


def q_perm_hom(lam, mu, q=-1, H: HeckeAlgebra | None = None) -> list:
    """Basis of right-module maps T′_λ → T′_μ as matrices (dim μ × dim λ)."""
    H = H or HeckeAlgebra(sum(lam), q)
    A, B = QPermModule(H, lam), QPermModule(H, mu)
    F = Field(0)
    nA, nB = A.dim, B.dim
    rows = []
    # unknown X[r][c] at index r*nA + c; right action: X·ρ_A(s) = ρ_B(s)·X
    for ga, gb in zip(A.gens, B.gens):
        for r in range(nB):
            for c in range(nA):
                row = [F.zero] * (nA * nB)
                for k in range(nA):
                    if ga[k][c]:
                        row[r * nA + k] += ga[k][c]
                for k in range(nB):
                    if gb[r][k]:
                        row[k * nA + c] -= gb[r][k]
                if any(x != 0 for x in row):
                    rows.append(row)
    K = kernel(rows, F, nA * nB)
    return [[[v[r * nA + c] for c in range(nA)] for r in range(nB)] for v in K]


@dataclass
class SplittingResult:
    scalar: Fraction
    phi_is_hom: bool
    psi_is_hom: bool
    hom_dims: tuple

    def to_json(self):
        return {"scalar": str(self.scalar), "phi_is_hom": self.phi_is_hom, "psi_is_hom": self.psi_is_hom,
                "hom_dims": list(self.hom_dims)}


def splitting_check(q=-1, lam=(3, 2)) -> SplittingResult:
    """ψ∘φ on T′_(n) for φ: x_(n) ↦ Σ_d x_λ τ_d and ψ: x_λ h ↦ x_(n) h."""
    n = sum(lam)
    H = HeckeAlgebra(n, q)
    Tn = QPermModule(H, (n,))
    Tl = QPermModule(H, lam)
    # φ as a matrix (dim Tl × 1): x_(n) ↦ Σ_d x_λ τ_d
    phi_img = {}
    for b in Tl.basis:
        phi_img = H.add(phi_img, b)
    phi = [[c] for c in Tl.coords(phi_img)]
    if H.add(phi_img, Tn.x, -1):
        raise AssertionError("Σ_d x_λ τ_d differs from x_(n)")
    # ψ as a matrix (1 × dim Tl): x_λ τ_d ↦ x_(n) τ_d
    psi = [[Tn.coords(H.mul(Tn.x, H.tau(d)))[0] for d in Tl.reps]]
    F = Field(0)

    def commutes(X, A, B):
        return all(mat_mul(X, ga, F) == mat_mul(gb, X, F) for ga, gb in zip(A.gens, B.gens))

    comp = mat_mul(psi, phi, F)
    direct = {}
    for d in Tl.reps:
        direct = H.add(direct, H.mul(Tn.x, H.tau(d)))
    scalar = comp[0][0]
    if H.add(direct, Tn.x, -scalar):
        raise AssertionError("ψ∘φ is not a scalar multiple of x_(n)")
    dims = (len(q_perm_hom(lam, (n,), q, H)), len(q_perm_hom((n,), lam, q, H)))
    return SplittingResult(scalar, commutes(phi, Tn, Tl), commutes(psi, Tl, Tn), dims)


def braid_check(n: int, q=-1) -> bool:
    """Quadratic and braid relations on every basis element of H_n."""
    H = HeckeAlgebra(n, q)
    elems = [H.tau(w) for w in permutations(range(n))]
    for h in elems:
        for i in range(1, n):
            lhs = H.mul_s(H.mul_s(h, i), i)
            rhs = H.add(H.scale(H.mul_s(h, i), H.q - 1), H.scale(h, H.q))
            if lhs != rhs:
                return False
            for j in range(i + 1, n):
                if j == i + 1:
                    a = H.mul_s(H.mul_s(H.mul_s(h, i), j), i)
                    b = H.mul_s(H.mul_s(H.mul_s(h, j), i), j)
                else:
                    a = H.mul_s(H.mul_s(h, i), j)
                    b = H.mul_s(H.mul_s(h, j), i)
                if a != b:
                    return False
    return True


def young_module_consequence(result: SplittingResult) -> dict:
    """Nonzero ψ∘φ with one-dimensional hom spaces both ways: T′_(n) is a
    summand of T′_λ, so the complement Y′_λ satisfies T′_λ ≅ T′_(n) ⊕ Y′_λ
    and, when λ = (3,2), Y′_(3,2) ≅ S′_(3,2)."""
    splits = result.scalar != 0 and result.phi_is_hom and result.psi_is_hom and result.hom_dims == (1, 1)
    return {"trivial_summand_splits": splits, "Y'_(3,2) = S'_(3,2)": splits}


def classical_hom_dim(lam, mu, p: int = 0) -> int:
    """dim Hom_{F S_n}(M^λ, M^μ) by solving intertwiner equations."""
    A, _ = permutation_module(lam, p)
    B, _ = permutation_module(mu, p)
    F = A.F
    nA, nB = A.dim, B.dim
    rows = []
    for ga, gb in zip(A.gens, B.gens):
        for r in range(nB):
            for c in range(nA):
                row = [F.zero] * (nA * nB)
                for k in range(nA):
                    if ga[k][c]:
                        row[r * nA + k] = F.reduce(row[r * nA + k] + ga[k][c])
                for k in range(nB):
                    if gb[r][k]:
                        row[k * nA + c] = F.reduce(row[k * nA + c] - gb[r][k])
                if any(x != 0 for x in row):
                    rows.append(row)
    return nA * nB - rank(rows, F)


__all__ = [
    "Partition",
    "partitions",
    "young_subgroup",
    "distinguished_reps",
    "coset_generating_function",
    "double_coset_count",
    "permutation_module",
    "specht_module",
    "composition_factor_dims",
    "hecke_algebra",
    "HeckeAlgebra",
    "QPermModule",
    "q_perm_hom",
    "splitting_check",
    "classical_hom_dim",
    "invariant_form_check",
    "braid_check",
    "young_module_consequence",
]
