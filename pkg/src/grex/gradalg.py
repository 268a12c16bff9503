"""Positively graded finite-dimensional algebras.

Paths compose right to left: the word ``("b", "a")`` means "a first, then b",
written b∘a, and multiplication of basis paths is concatenation of words.
Every algebra here carries a basis adapted to the vertex idempotents: each
basis element lives in some e_t A e_s, and the non-idempotent basis elements
span the radical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Field, kernel, rank, rref, reduce_against

DEFAULT_DIM_GUARD = 10000
MAX_PATH_LENGTH = 64
MAX_PATH_COUNT = 100000


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Input presentation


@dataclass(frozen=True)
class Arrow:
    label: str
    src: str
    dst: str
    grade: int = 1


@dataclass
class QuiverSpec:
    p: int
    vertices: list[str]
    arrows: list[Arrow]
    # each relation: list of (coefficient, word); words are tuples of arrow labels
    relations: list[list[tuple[Fraction, tuple[str, ...]]]] = field(default_factory=list)
    covers: list[tuple[str, str]] | None = None  # (lower, upper) pairs
    name: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "field": self.p,
            "vertices": list(self.vertices),
            "arrows": [[a.label, a.src, a.dst, a.grade] for a in self.arrows],
            "relations": [[[_frac_str(c), list(w)] for c, w in rel] for rel in self.relations],
        }
        if self.covers is not None:
            d["poset"] = {"covers": [[lo, hi] for lo, hi in self.covers]}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "QuiverSpec":
        try:
            p = int(d["field"])
            vertices = [str(v) for v in d["vertices"]]
            arrows = [Arrow(str(a[0]), str(a[1]), str(a[2]), int(a[3])) for a in d.get("arrows", [])]
            relations = []
            for rel in d.get("relations", []):
                relations.append([(Fraction(str(c)), tuple(str(x) for x in w)) for c, w in rel])
            covers = None
            if "poset" in d and d["poset"] is not None:
                covers = [(str(lo), str(hi)) for lo, hi in d["poset"].get("covers", [])]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise PresentationError(f"malformed algebra spec: {exc}") from exc
        return cls(p, vertices, arrows, relations, covers, str(d.get("name", "")))


def _frac_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_spec(text: str) -> QuiverSpec:
    """Parse the JSON algebra spec format."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise PresentationError("algebra spec must be a JSON object")
    return QuiverSpec.from_dict(d)


def serialize_spec(spec: QuiverSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------


class GradedAlgebra:
    """Basis, structure constants, grading and vertex idempotents.

    ``mult[i][j]`` is a tuple of (k, c) pairs giving b_i * b_j = sum c b_k.
    """

    def __init__(self, F: Field, vertices, grades, src, tgt, names, mult, idem, *, check=True):
        self.F = F
        self.vertices = list(vertices)
        self.grades = list(grades)
        self.src = list(src)
        self.tgt = list(tgt)
        self.names = list(names)
        self.mult = mult
        self.idem = list(idem)
        self.dim = len(self.grades)
        self._opposite = None
        self._grade_zero = None
        self._finish(check)

    # -- derived data -------------------------------------------------------

    def _finish(self, check: bool):
        n = self.dim
        F = self.F
        idemset = set(self.idem)
        self.radical = [b for b in range(n) if b not in idemset]
        if check:
            self.verify()
        # rad^2 and a generating set for the radical
        rpos = {b: k for k, b in enumerate(self.radical)}
        sq = []
        for b in self.radical:
            for c in self.radical:
                prod = self.mult[b][c]
                if prod:
                    v = [F.zero] * len(self.radical)
                    for k, x in prod:
                        v[rpos[k]] = x
                    sq.append(v)
        R, piv = rref(sq, F, len(self.radical)) if sq else ([], [])
        gens = []
        order = sorted(self.radical, key=lambda b: (self.grades[b], b))
        for b in order:
            v = [F.zero] * len(self.radical)
            v[rpos[b]] = F.one
            w = reduce_against(R, piv, v, F)
            if any(x != 0 for x in w):
                gens.append(b)
                R, piv = rref(R + [v], F, len(self.radical))
        self.rad_gens = gens
        self.top_grade = max(self.grades) if self.grades else 0
        self._exprs = None
        self._cells = None

    @property
    def exprs(self):
        """Each basis element as a combination of words in the generators.

        A word (g1, ..., gk) stands for the product g1 * ... * gk.
        """
        if self._exprs is None:
            self._exprs = self._compute_exprs()
        return self._exprs

    def _compute_exprs(self):
        F = self.F
        n = self.dim
        words = []
        vecs = []
        R, piv = [], []

        def add(word, vec):
            nonlocal R, piv
            w = reduce_against(R, piv, vec, F)
            if any(x != 0 for x in w):
                words.append(word)
                vecs.append(vec)
                R, piv = rref(R + [vec], F, n)
                return True
            return False

        for e in self.idem:
            add((e,), self._unit_vec(e))
        frontier = []
        for g in self.rad_gens:
            if add((g,), self._unit_vec(g)):
                frontier.append(((g,), self._unit_vec(g)))
        while frontier and len(words) < n:
            nxt = []
            for word, vec in frontier:
                for g in self.rad_gens:
                    prod = self.mul_vec(self._unit_vec(g), vec)
                    if any(x != 0 for x in prod) and add((g,) + word, prod):
                        nxt.append(((g,) + word, prod))
            frontier = nxt
        if len(words) != n:
            raise PresentationError("radical generators do not generate the algebra")
        from .exact import coordinates

        coords = coordinates(vecs, [self._unit_vec(b) for b in range(n)], F)
        return [[(c, words[k]) for k, c in enumerate(row) if c != 0] for row in coords]

    def _unit_vec(self, b):
        v = [self.F.zero] * self.dim
        v[b] = self.F.one
        return v

    def mul_vec(self, x, y):
        """Product of two coordinate vectors."""
        F = self.F
        out = [0] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a != 0]
        ys = [(j, b) for j, b in enumerate(y) if b != 0]
        for i, a in xs:
            row = self.mult[i]
            for j, b in ys:
                for k, c in row[j]:
                    out[k] += a * b * c
        return [F.reduce(v) if F.p else Fraction(v) for v in out]

    def mul_basis(self, i, j):
        return self.mult[i][j]

    def vertex_index(self, label) -> int:
        return self.vertices.index(str(label))

    def grade_dims(self) -> list[int]:
        dims = [0] * (self.top_grade + 1)
        for g in self.grades:
            dims[g] += 1
        return dims

    def cells(self):
        """Map (source, target, grade) -> list of basis indices."""
        if self._cells is None:
            c: dict = {}
            for b in range(self.dim):
                c.setdefault((self.src[b], self.tgt[b], self.grades[b]), []).append(b)
            self._cells = c
        return self._cells

    def basis_in_grade(self, g):
        return [b for b in range(self.dim) if self.grades[b] == g]

    # -- verification -------------------------------------------------------

    def verify(self):
        """Exhaustive associativity, grading and idempotent checks."""
        F = self.F
        n = self.dim
        nv = len(self.vertices)
        if len(self.idem) != nv:
            raise PresentationError("one idempotent per vertex required")
        for b in range(n):
            for c in range(n):
                prod = self.mult[b][c]
                if prod and self.src[b] != self.tgt[c]:
                    raise PresentationError("nonzero product of non-composable basis elements")
                for k, _ in prod:
                    if self.grades[k] != self.grades[b] + self.grades[c]:
                        raise PresentationError("product does not respect the grading")
                    if self.src[k] != self.src[c] or self.tgt[k] != self.tgt[b]:
                        raise PresentationError("product leaves its Peirce cell")
        for v, e in enumerate(self.idem):
            if self.grades[e] != 0 or self.src[e] != v or self.tgt[e] != v:
                raise PresentationError("idempotent misplaced")
            for b in range(n):
                left = dict(self.mult[e][b])
                right = dict(self.mult[b][e])
                want_l = {b: F.one} if self.tgt[b] == v else {}
                want_r = {b: F.one} if self.src[b] == v else {}
                if left != want_l or right != want_r:
                    raise PresentationError("vertex idempotents do not act as projections")
        self.check_associative()

    def check_associative(self):
        n = self.dim
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    lhs: dict = {}
                    for k, x in ab:
                        for m, y in self.mult[k][c]:
                            lhs[m] = lhs.get(m, 0) + x * y
                    rhs: dict = {}
                    for k, x in self.mult[b][c]:
                        for m, y in self.mult[a][k]:
                            rhs[m] = rhs.get(m, 0) + x * y
                    F = self.F
                    lhs = {m: F.reduce(v) for m, v in lhs.items() if F.reduce(v) != 0}
                    rhs = {m: F.reduce(v) for m, v in rhs.items() if F.reduce(v) != 0}
                    if lhs != rhs:
                        raise PresentationError(f"associativity fails on basis triple {(a, b, c)}")

    # -- constructions ------------------------------------------------------

    def opposite(self) -> "GradedAlgebra":
        if self._opposite is None:
            n = self.dim
            mult = [[self.mult[j][i] for j in range(n)] for i in range(n)]
            op = GradedAlgebra(
                self.F, self.vertices, self.grades, self.tgt, self.src, self.names, mult, self.idem, check=False
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, graded dims={self.grade_dims()}, {self.F})"


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    return a.opposite()


def _sparse(d: dict, F: Field):
    return tuple(sorted((k, F.reduce(v)) for k, v in d.items() if F.reduce(v) != 0))


# ---------------------------------------------------------------------------
# Building from a bound quiver


def build_algebra(spec: QuiverSpec, dim_guard: int = DEFAULT_DIM_GUARD,
                  max_length: int = MAX_PATH_LENGTH) -> GradedAlgebra:
    """Basis of paths modulo the relation ideal, with structure constants.

    Paths are enumerated breadth first by length.  For a length cutoff L the
    ideal is approximated by all u*r*v of length <= L; within each
    (source, target, grade) cell the spanning ideal elements are row reduced
    with longer paths ordered first, so the surviving basis consists of the
    shortest normal forms.  The cutoff grows until every path of length L is
    reducible and the cell dimensions are stable one relation-length later.
    Presentations whose surviving paths exceed ``max_length`` arrows are
    rejected as (probably) infinite dimensional.
    """
    try:
        F = Field(spec.p)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    vlist = list(spec.vertices)
    if len(set(vlist)) != len(vlist):
        raise PresentationError("duplicate vertex labels")
    vix = {v: i for i, v in enumerate(vlist)}
    labels = [a.label for a in spec.arrows]
    if len(set(labels)) != len(labels):
        raise PresentationError("duplicate arrow labels")
    aix = {a.label: i for i, a in enumerate(spec.arrows)}
    asrc, adst, agr = [], [], []
    for a in spec.arrows:
        if a.src not in vix or a.dst not in vix:
            raise PresentationError(f"arrow {a.label} uses an unknown vertex")
        if a.grade < 0:
            raise PresentationError(f"arrow {a.label} has negative grade")
        asrc.append(vix[a.src])
        adst.append(vix[a.dst])
        agr.append(a.grade)

    def psrc(w):
        return asrc[w[-1]]

    def ptgt(w):
        return adst[w[0]]

    def pgrade(w):
        return sum(agr[i] for i in w)

    rels = []
    for rel in spec.relations:
        terms = []
        for c, word in rel:
            if not word:
                raise PresentationError("relations must involve paths of positive length")
            try:
                w = tuple(aix[x] for x in word)
            except KeyError as exc:
                raise PresentationError(f"relation uses unknown arrow {exc}") from None
            for k in range(len(w) - 1):
                if asrc[w[k]] != adst[w[k + 1]]:
                    raise PresentationError(f"relation path {''.join(word)} is not composable")
            terms.append((F(c), w))
        keys = {(psrc(w), ptgt(w), pgrade(w)) for _, w in terms}
        if len(keys) > 1:
            raise PresentationError("relation terms are not parallel paths of equal grade")
        if terms:
            rels.append(terms)
    maxrel = max((len(w) for r in rels for _, w in r), default=1)

    # paths of each length
    by_len: list[list[tuple]] = [[]]
    by_len.append([(i,) for i in range(len(spec.arrows))])

    def extend(L):
        while len(by_len) <= L:
            prev = by_len[-1]
            cur = [(i,) + w for w in prev for i in range(len(spec.arrows)) if asrc[i] == adst[w[0]]]
            by_len.append(cur)
            total = sum(len(x) for x in by_len)
            if total > min(50 * dim_guard + 1000, MAX_PATH_COUNT):
                raise PresentationError(_unbounded(cur[0] if cur else (), spec, asrc))

    def reduce_at(L):
        extend(L)
        cells: dict = {}
        for length in range(1, L + 1):
            for w in by_len[length]:
                cells.setdefault((psrc(w), ptgt(w), pgrade(w)), []).append(w)
        # ideal elements u r v
        ideal: dict = {}
        for terms in rels:
            rl = max(len(w) for _, w in terms)
            rs, rt = psrc(terms[0][1]), ptgt(terms[0][1])
            for lu in range(0, L - rl + 1):
                lefts = [()] if lu == 0 else [u for u in by_len[lu] if asrc[u[-1]] == rt]
                for lv in range(0, L - rl - lu + 1):
                    rights = [()] if lv == 0 else [v for v in by_len[lv] if adst[v[0]] == rs]
                    for u in lefts:
                        for v in rights:
                            elt = {}
                            for c, w in terms:
                                elt[u + w + v] = elt.get(u + w + v, 0) + c
                            key = None
                            for w in elt:
                                key = (psrc(w), ptgt(w), pgrade(w))
                                break
                            ideal.setdefault(key, []).append(elt)
        normal: dict = {}
        basis_paths = []
        for key, paths in cells.items():
            order = sorted(paths, key=lambda w: (-len(w), w))
            pos = {w: k for k, w in enumerate(order)}
            rows = []
            for elt in ideal.get(key, []):
                row = [F.zero] * len(order)
                for w, c in elt.items():
                    row[pos[w]] = F.reduce(row[pos[w]] + c)
                if any(x != 0 for x in row):
                    rows.append(row)
            R, piv = rref(rows, F, len(order)) if rows else ([], [])
            pivset = set(piv)
            free = [order[k] for k in range(len(order)) if k not in pivset]
            basis_paths.extend(free)
            for w in free:
                normal[w] = {w: F.one}
            for row, c in zip(R, piv):
                nf = {}
                for k, x in enumerate(row):
                    if x != 0 and k != c:
                        nf[order[k]] = F.neg(x)
                normal[order[c]] = nf
        top_reducible = all(w in normal and w not in normal[w] for w in by_len[L]) if L < len(by_len) else True
        return normal, basis_paths, top_reducible

    L = max(2, maxrel)
    while True:
        normal, basis_paths, ok = reduce_at(L)
        if len(basis_paths) + len(vlist) > dim_guard:
            longest = max(basis_paths, key=len)
            raise PresentationError(
                f"dimension exceeds guard {dim_guard}; " + _unbounded(longest, spec, asrc)
            )
        if L > max_length:
            longest = max(basis_paths, key=len)
            raise PresentationError(f"nonzero paths longer than {max_length} arrows; "
                                    + _unbounded(longest, spec, asrc))
        if ok:
            normal2, basis2, ok2 = reduce_at(L + maxrel)
            if ok2 and sorted(basis2) == sorted(basis_paths):
                break
        L += 1

    basis_paths.sort(key=lambda w: (pgrade(w), len(w), psrc(w), ptgt(w), w))
    nv = len(vlist)
    index = {("e", v): v for v in range(nv)}
    for k, w in enumerate(basis_paths):
        index[w] = nv + k
    names = [f"e_{v}" for v in vlist] + ["".join(spec.arrows[i].label for i in w) for w in basis_paths]
    grades = [0] * nv + [pgrade(w) for w in basis_paths]
    src = list(range(nv)) + [psrc(w) for w in basis_paths]
    tgt = list(range(nv)) + [ptgt(w) for w in basis_paths]

    cache: dict = {}

    def nf_path(w):
        """Normal form of an arbitrary composable path as {basis index: coeff}."""
        if w in cache:
            return cache[w]
        if len(w) <= L:
            out = {index[x]: c for x, c in normal.get(w, {}).items()} if w in normal else {}
        else:
            out = {}
            for b, c in nf_path(w[1:]).items():
                bw = basis_paths[b - nv]
                for k, x in nf_path((w[0],) + bw).items():
                    out[k] = F.reduce(out.get(k, 0) + c * x)
            out = {k: x for k, x in out.items() if x != 0}
        cache[w] = out
        return out

    n = nv + len(basis_paths)
    mult = [[() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if src[i] != tgt[j]:
                continue
            if i < nv:
                mult[i][j] = ((j, F.one),)
            elif j < nv:
                mult[i][j] = ((i, F.one),)
            else:
                w = basis_paths[i - nv] + basis_paths[j - nv]
                mult[i][j] = _sparse(nf_path(w), F)
    alg = GradedAlgebra(F, vlist, grades, src, tgt, names, mult, list(range(nv)))
    alg.spec = spec
    return alg


def _unbounded(path, spec: QuiverSpec, asrc) -> str:
    """Describe a cycle inside a long surviving path."""
    if not path:
        return "path growth does not stabilize"
    applied = list(reversed(path))
    verts = [asrc[applied[0]]] + [spec.vertices.index(spec.arrows[i].dst) for i in applied]
    seen: dict = {}
    for k, v in enumerate(verts):
        if v in seen:
            cyc = applied[seen[v]:k]
            word = "".join(spec.arrows[i].label for i in reversed(cyc))
            return f"path growth does not stabilize: unbounded cycle {word} at vertex {spec.vertices[v]}"
        seen[v] = k
    return "path growth does not stabilize"


# ---------------------------------------------------------------------------
# Structure-constant input


def from_structure_constants(p, vertices, grades, src, tgt, table, idem, radical, names=None):
    """Algebra from explicit structure constants.

    ``table[(i, j)]`` maps to a dict {k: c}.  The caller designates the vertex
    idempotents and the basis elements spanning the radical; both are
    verified (ideal, nilpotent, quotient of dimension #vertices, hence the
    split semisimple k^n).
    """
    F = Field(p)
    n = len(grades)
    mult = [[_sparse({k: F(c) for k, c in table.get((i, j), {}).items()}, F) for j in range(n)] for i in range(n)]
    names = names or [f"b{i}" for i in range(n)]
    alg = GradedAlgebra(F, vertices, grades, src, tgt, names, mult, idem)
    rad = set(radical)
    if rad != set(alg.radical):
        raise PresentationError("radical must be spanned by the non-idempotent basis elements")
    for b in rad:
        for c in range(n):
            for k, _ in list(mult[b][c]) + list(mult[c][b]):
                if k not in rad:
                    raise PresentationError("designated radical is not an ideal")
    # nilpotency: rad^m = 0 for some m <= n + 1
    power = [[F.one if k == b else F.zero for k in range(n)] for b in rad]
    for _ in range(n + 1):
        nxt = []
        for v in power:
            for b in rad:
                w = alg.mul_vec(alg._unit_vec(b), v)
                if any(x != 0 for x in w):
                    nxt.append(w)
        power = rref(nxt, F, n)[0] if nxt else []
        if not power:
            break
    if power:
        raise PresentationError("designated radical is not nilpotent")
    return alg


# ---------------------------------------------------------------------------
# Grade zero part, tensor products, bimodules


@dataclass
class GradeZero:
    algebra: GradedAlgebra
    pi: dict  # basis index of A -> basis index of A_0 (grade-0 elements only)
    incl: list  # basis index of A_0 -> basis index of A


def grade_zero(a: GradedAlgebra) -> tuple[GradedAlgebra, dict]:
    """A_0 = A / A_{>0}, with pi as a map on basis indices (others go to 0)."""
    gz = grade_zero_data(a)
    return gz.algebra, gz.pi


def grade_zero_data(a: GradedAlgebra) -> GradeZero:
    if a._grade_zero is None:
        keep = [b for b in range(a.dim) if a.grades[b] == 0]
        pos = {b: k for k, b in enumerate(keep)}
        mult = [[tuple((pos[k], c) for k, c in a.mult[i][j]) for j in keep] for i in keep]
        a0 = GradedAlgebra(
            a.F,
            a.vertices,
            [0] * len(keep),
            [a.src[b] for b in keep],
            [a.tgt[b] for b in keep],
            [a.names[b] for b in keep],
            mult,
            [pos[e] for e in a.idem],
            check=False,
        )
        a._grade_zero = GradeZero(a0, pos, keep)
    return a._grade_zero


def tensor_product(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """A ⊗_k B with additive grading; vertices are pairs (labels 'x|y')."""
    if a.F != b.F:
        raise ValueError("field mismatch")
    F = a.F
    na, nb = len(a.vertices), len(b.vertices)
    pairs = [(i, j) for i in range(a.dim) for j in range(b.dim)]
    pos = {p: k for k, p in enumerate(pairs)}
    mult = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            d: dict = {}
            for x, c in a.mult[i][k]:
                for y, e in b.mult[j][l]:
                    d[pos[(x, y)]] = d.get(pos[(x, y)], 0) + c * e
            row.append(_sparse(d, F))
        mult.append(row)
    verts = [f"{u}|{v}" for u in a.vertices for v in b.vertices]
    idem = [pos[(a.idem[u], b.idem[v])] for u in range(na) for v in range(nb)]
    return GradedAlgebra(
        F,
        verts,
        [a.grades[i] + b.grades[j] for i, j in pairs],
        [a.src[i] * nb + b.src[j] for i, j in pairs],
        [a.tgt[i] * nb + b.tgt[j] for i, j in pairs],
        [f"{a.names[i]}⊗{b.names[j]}" for i, j in pairs],
        mult,
        idem,
        check=False,
    )


class GradedBimodule:
    """(L, R)-bimodule with dense action matrices for every basis element.

    ``left[a]`` is the matrix of m -> a*m and ``right[b]`` that of m -> m*b,
    both acting on column vectors.  ``lvert``/``rvert`` record the vertex
    idempotents fixing each basis vector on either side.
    """

    def __init__(self, left_alg, right_alg, grades, lvert, rvert, left, right, check=True):
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.grades = list(grades)
        self.lvert = list(lvert)
        self.rvert = list(rvert)
        self.left = left
        self.right = right
        self.dim = len(self.grades)
        if check:
            self.verify()

    def verify(self):
        from .exact import mat_mul

        F = self.left_alg.F
        for a in range(self.left_alg.dim):
            for b in range(self.right_alg.dim):
                if mat_mul(self.left[a], self.right[b], F) != mat_mul(self.right[b], self.left[a], F):
                    raise ValueError("left and right actions do not commute")

    def __repr__(self):
        return f"GradedBimodule(dim={self.dim})"


def _left_mult_matrix(alg, a, basis):
    """Matrix of x -> b_a * x on the span of the given algebra basis subset."""
    F = alg.F
    pos = {b: k for k, b in enumerate(basis)}
    m = [[F.zero] * len(basis) for _ in basis]
    for col, b in enumerate(basis):
        for k, c in alg.mult[a][b]:
            m[pos[k]][col] = c
    return m


def _right_mult_matrix(alg, a, basis):
    F = alg.F
    pos = {b: k for k, b in enumerate(basis)}
    m = [[F.zero] * len(basis) for _ in basis]
    for col, b in enumerate(basis):
        for k, c in alg.mult[b][a]:
            m[pos[k]][col] = c
    return m


def grade_piece_bimodule(a: GradedAlgebra, s: int) -> GradedBimodule:
    """A_s as an (A_0, A_0)-bimodule."""
    gz = grade_zero_data(a)
    basis = a.basis_in_grade(s)
    left = [_left_mult_matrix(a, e, basis) for e in gz.incl]
    right = [_right_mult_matrix(a, e, basis) for e in gz.incl]
    return GradedBimodule(
        gz.algebra, gz.algebra, [s] * len(basis), [a.tgt[b] for b in basis], [a.src[b] for b in basis], left, right, check=False
    )


def regular_bimodule(a0: GradedAlgebra) -> GradedBimodule:
    basis = list(range(a0.dim))
    left = [_left_mult_matrix(a0, e, basis) for e in basis]
    right = [_right_mult_matrix(a0, e, basis) for e in basis]
    return GradedBimodule(a0, a0, a0.grades, a0.tgt, a0.src, left, right, check=False)


class Quotient:
    """V / U for U spanned by ``rows`` in F^n; basis = non-pivot coordinates."""

    def __init__(self, n, rows, F):
        self.n = n
        self.F = F
        self.R, self.piv = rref(rows, F, n) if rows else ([], [])
        pivset = set(self.piv)
        self.basis = [k for k in range(n) if k not in pivset]
        self.dim = len(self.basis)

    def project(self, v):
        w = reduce_against(self.R, self.piv, v, self.F)
        return [w[k] for k in self.basis]


def bimodule_tensor_A0(m: GradedBimodule, n: GradedBimodule) -> tuple[GradedBimodule, Quotient, list]:
    """M ⊗_{A_0} N = (M ⊗_k N) / span{ma ⊗ y − m ⊗ ay}.

    Returns the bimodule, the quotient data and the list of index pairs
    of M ⊗_k N, so that callers can push elements of M ⊗_k N down.
    """
    if m.right_alg is not n.left_alg and (m.right_alg.dim != n.left_alg.dim or m.right_alg.mult != n.left_alg.mult):
        raise ValueError("right algebra of M must equal left algebra of N")
    A0 = m.right_alg
    F = A0.F
    # only pairs glued at a common vertex survive the idempotent relations
    pairs = [(i, j) for i in range(m.dim) for j in range(n.dim) if m.rvert[i] == n.lvert[j]]
    pos = {p: k for k, p in enumerate(pairs)}
    rows = []
    for a in A0.radical:
        Ra = m.right[a]
        La = n.left[a]
        for i in range(m.dim):
            for j in range(n.dim):
                vec = {}
                # (m_i a) ⊗ n_j
                for k in range(m.dim):
                    c = Ra[k][i]
                    if c != 0 and (k, j) in pos:
                        vec[pos[(k, j)]] = vec.get(pos[(k, j)], 0) + c
                # - m_i ⊗ (a n_j)
                for k in range(n.dim):
                    c = La[k][j]
                    if c != 0 and (i, k) in pos:
                        vec[pos[(i, k)]] = vec.get(pos[(i, k)], 0) - c
                vec = {k: F.reduce(x) for k, x in vec.items() if F.reduce(x) != 0}
                if vec:
                    row = [F.zero] * len(pairs)
                    for k, x in vec.items():
                        row[k] = x
                    rows.append(row)
    Q = Quotient(len(pairs), rows, F)
    bpairs = [pairs[k] for k in Q.basis]

    def induced(act_pair):
        mats = []
        for x in range(len(act_pair)):
            cols = []
            for (i, j) in bpairs:
                v = act_pair[x](i, j)
                cols.append(Q.project(v))
            mats.append([list(r) for r in zip(*cols)] if cols else [])
        return mats

    def left_fn(a):
        La = m.left[a]

        def f(i, j):
            v = [F.zero] * len(pairs)
            for k in range(m.dim):
                c = La[k][i]
                if c != 0:
                    v[pos[(k, j)]] = F.reduce(v[pos[(k, j)]] + c)
            return v

        return f

    def right_fn(b):
        Rb = n.right[b]

        def f(i, j):
            v = [F.zero] * len(pairs)
            for k in range(n.dim):
                c = Rb[k][j]
                if c != 0:
                    v[pos[(i, k)]] = F.reduce(v[pos[(i, k)]] + c)
            return v

        return f

    left = induced([left_fn(a) for a in range(m.left_alg.dim)])
    right = induced([right_fn(b) for b in range(n.right_alg.dim)])
    out = GradedBimodule(
        m.left_alg,
        n.right_alg,
        [m.grades[i] + n.grades[j] for i, j in bpairs],
        [m.lvert[i] for i, j in bpairs],
        [n.rvert[j] for i, j in bpairs],
        left,
        right,
        check=False,
    )
    return out, Q, pairs


# ---------------------------------------------------------------------------
# Truncated tensor algebra


class TensorAlgebraData:
    """T_{A_0}(A_1) truncated above ``dmax`` together with the map to A.

    T_s is realised as the quotient of the composable tuples of A_1 basis
    elements by the balancing relations; ``reps[s]`` lists the tuples whose
    images form the chosen basis of T_s.
    """

    def __init__(self, a: GradedAlgebra, dmax: int):
        if dmax < a.top_grade:
            raise ValueError("dmax must be at least the top grade")
        self.A = a
        self.dmax = dmax
        F = a.F
        gz = grade_zero_data(a)
        self.A0 = gz.algebra
        a1 = a.basis_in_grade(1)
        self.a1 = a1
        self.tuples = {0: None}
        self.quot = {}
        self.reps = {}
        rad0 = [gz.incl[b] for b in self.A0.radical]
        for s in range(1, dmax + 1):
            tup = self._composable(s)
            pos = {t: k for k, t in enumerate(tup)}
            rows = []
            for cut in range(1, s):
                for u in self._composable(cut):
                    for v in self._composable(s - cut):
                        for r in rad0:
                            if a.src[u[-1]] != a.tgt[r] or a.src[r] != a.tgt[v[0]]:
                                continue
                            vec = {}
                            for k, c in a.mult[u[-1]][r]:
                                tt = u[:-1] + (k,) + v
                                if tt in pos:
                                    vec[pos[tt]] = vec.get(pos[tt], 0) + c
                            for k, c in a.mult[r][v[0]]:
                                tt = u + (k,) + v[1:]
                                if tt in pos:
                                    vec[pos[tt]] = vec.get(pos[tt], 0) - c
                            vec = {k: F.reduce(x) for k, x in vec.items() if F.reduce(x) != 0}
                            if vec:
                                row = [F.zero] * len(tup)
                                for k, x in vec.items():
                                    row[k] = x
                                rows.append(row)
            Q = Quotient(len(tup), rows, F)
            self.tuples[s] = tup
            self.quot[s] = Q
            self.reps[s] = [tup[k] for k in Q.basis]

    def _composable(self, s):
        a = self.A
        cur = [(b,) for b in self.a1]
        for _ in range(s - 1):
            cur = [t + (b,) for t in cur for b in self.a1 if a.src[t[-1]] == a.tgt[b]]
        # tuples that differ only by where zero-products sit are all kept; the
        # pairs (x, y) with src(x) != tgt(y) are already zero in the tensor
        return cur

    def tuple_image(self, t):
        """Image in A of a tuple a_1 ⊗ ... ⊗ a_s, as a coordinate vector."""
        a = self.A
        v = a._unit_vec(t[-1])
        for b in reversed(t[:-1]):
            v = a.mul_vec(a._unit_vec(b), v)
        return v

    def grade_map(self, s):
        """Matrix (rows: A_s basis, cols: T_s basis) of the multiplication map."""
        a = self.A
        target = a.basis_in_grade(s)
        if s == 0:
            return [[a.F.one if i == j else a.F.zero for j in range(len(target))] for i in range(len(target))]
        cols = [self.tuple_image(t) for t in self.reps[s]]
        return [[col[b] for col in cols] for b in target]

    def dim(self, s):
        if s == 0:
            return self.A0.dim
        return self.quot[s].dim

    def surjective(self, s) -> bool:
        m = self.grade_map(s)
        return rank(m, self.A.F) == len(self.A.basis_in_grade(s)) if m else len(self.A.basis_in_grade(s)) == 0

    def kernel_in_tuples(self, s):
        """ker(V_s -> A_s) as vectors over the composable tuples of length s."""
        a = self.A
        tup = self.tuples[s]
        target = a.basis_in_grade(s)
        imgs = [self.tuple_image(t) for t in tup]
        M = [[img[b] for img in imgs] for b in target]
        if not M:
            return [[a.F.one if i == j else a.F.zero for j in range(len(tup))] for i in range(len(tup))]
        return kernel(M, a.F, len(tup))

    def algebra(self) -> GradedAlgebra:
        """T as a GradedAlgebra (basis: A_0 basis, then the T_s bases)."""
        a = self.A
        F = a.F
        a0 = self.A0
        gz = grade_zero_data(a)
        entries = [("0", b) for b in range(a0.dim)]
        for s in range(1, self.dmax + 1):
            entries += [(s, t) for t in self.reps[s]]
        pos = {e: k for k, e in enumerate(entries)}
        grades, src, tgt, names = [], [], [], []
        for s, x in entries:
            if s == "0":
                grades.append(0)
                src.append(a0.src[x])
                tgt.append(a0.tgt[x])
                names.append(a0.names[x])
            else:
                grades.append(s)
                src.append(a.src[x[-1]])
                tgt.append(a.tgt[x[0]])
                names.append("⊗".join(a.names[b] for b in x))

        def as_tuples(s, t_vec):
            # t_vec: dict over tuples of length s -> project to T_s basis
            tup = self.tuples[s]
            tp = {t: k for k, t in enumerate(tup)}
            v = [F.zero] * len(tup)
            for t, c in t_vec.items():
                if t in tp:
                    v[tp[t]] = F.reduce(v[tp[t]] + c)
            coords = self.quot[s].project(v)
            return {pos[(s, self.reps[s][k])]: c for k, c in enumerate(coords) if c != 0}

        def times(e1, e2):
            s1, x1 = e1
            s2, x2 = e2
            if s1 == "0" and s2 == "0":
                return {pos[("0", k)]: c for k, c in a0.mult[x1][x2]}
            if s1 == "0":
                if a0.src[x1] != a.tgt[x2[0]]:
                    return {}
                d = {}
                for k, c in a.mult[gz.incl[x1]][x2[0]]:
                    d[(k,) + x2[1:]] = d.get((k,) + x2[1:], 0) + c
                return as_tuples(s2, d)
            if s2 == "0":
                if a.src[x1[-1]] != a0.tgt[x2]:
                    return {}
                d = {}
                for k, c in a.mult[x1[-1]][gz.incl[x2]]:
                    d[x1[:-1] + (k,)] = d.get(x1[:-1] + (k,), 0) + c
                return as_tuples(s1, d)
            if s1 + s2 > self.dmax or a.src[x1[-1]] != a.tgt[x2[0]]:
                return {}
            return as_tuples(s1 + s2, {x1 + x2: F.one})

        n = len(entries)
        mult = [[_sparse(times(entries[i], entries[j]), F) for j in range(n)] for i in range(n)]
        idem = [pos[("0", e)] for e in a0.idem]
        return GradedAlgebra(F, a.vertices, grades, src, tgt, names, mult, idem, check=False)


def truncated_tensor_algebra(a: GradedAlgebra, dmax: int):
    """(T_{<=dmax} as a GradedAlgebra, data object exposing the map T -> A).

    The data object reports per-grade surjectivity and kernels.
    """
    data = TensorAlgebraData(a, dmax)
    return data.algebra(), data
