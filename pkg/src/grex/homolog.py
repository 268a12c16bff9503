"""Graded modules, minimal projective resolutions and Ext tables.

Conventions: M<r>_i = M_{i-r}, so a degree-r map M -> N is an element of
hom(M, N<r>) sending M_i into N_{i+r}.  Modules are left modules given by
the matrices of the algebra's radical generators; idempotents act through
the vertex label of each basis vector.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field

from .exact import Field, kernel, mat_mul, mat_vec, rank, rref, reduce_against
from .gradalg import GradedAlgebra, grade_zero_data

DEFAULT_DEGREE_BOUND = 8


def default_degree_bound() -> int:
    """GREX_DEGREE_BOUND when set (a positive integer), else 8."""
    raw = os.environ.get("GREX_DEGREE_BOUND")
    if raw is None or raw.strip() == "":
        return DEFAULT_DEGREE_BOUND
    try:
        d = int(raw)
    except ValueError:
        raise ValueError(f"GREX_DEGREE_BOUND must be a positive integer, got {raw!r}") from None
    if d < 1:
        raise ValueError(f"GREX_DEGREE_BOUND must be a positive integer, got {raw!r}")
    return d


class GradedModule:
    """Finite-dimensional graded left module.

    Args:
        alg: the owning GradedAlgebra.
        grades: grade of each basis vector.
        verts: vertex index of each basis vector (e_v fixes it).
        rmats: one dim x dim matrix per entry of ``alg.rad_gens``.
    """

    def __init__(self, alg: GradedAlgebra, grades, verts, rmats, name: str = ""):
        self.alg = alg
        self.F: Field = alg.F
        self.grades = list(grades)
        self.verts = list(verts)
        self.rmats = rmats
        self.dim = len(self.grades)
        self.name = name
        self._act = {}

    def __repr__(self):
        return f"GradedModule({self.name or '?'}, dim={self.dim})"

    # -- actions ------------------------------------------------------------

    def gen_matrix(self, g):
        """Matrix of an algebra generator (idempotent or radical generator)."""
        alg = self.alg
        if g in alg.idem:
            v = alg.idem.index(g)
            return [[self.F.one if (i == j and self.verts[i] == v) else self.F.zero for j in range(self.dim)] for i in range(self.dim)]
        return self.rmats[alg.rad_gens.index(g)]

    def act_basis(self, b):
        """Matrix of the algebra basis element b."""
        if b not in self._act:
            F = self.F
            alg = self.alg
            total = [[F.zero] * self.dim for _ in range(self.dim)]
            for c, word in alg.exprs[b]:
                m = self.gen_matrix(word[-1])
                for g in reversed(word[:-1]):
                    m = mat_mul(self.gen_matrix(g), m, F)
                for i in range(self.dim):
                    row, mrow = total[i], m[i]
                    for j in range(self.dim):
                        if mrow[j]:
                            row[j] = F.reduce(row[j] + c * mrow[j])
            self._act[b] = total
        return self._act[b]

    def apply(self, b, v):
        return mat_vec(self.act_basis(b), v, self.F)

    def apply_gen(self, k, v):
        """Action of the k-th radical generator on a vector."""
        return mat_vec(self.rmats[k], v, self.F)

    def blocks(self):
        """Map (grade, vertex) -> list of basis indices."""
        out: dict = {}
        for i in range(self.dim):
            out.setdefault((self.grades[i], self.verts[i]), []).append(i)
        return out

    def grade_range(self):
        if not self.dim:
            return (0, -1)
        return (min(self.grades), max(self.grades))

    def composition_factors(self) -> Counter:
        """Graded multiplicities [M : L(v)<g>] keyed by (vertex label, grade)."""
        labels = self.alg.vertices
        return Counter((labels[v], g) for g, v in zip(self.grades, self.verts))

    def ungraded_factors(self) -> Counter:
        labels = self.alg.vertices
        return Counter(labels[v] for v in self.verts)

    def verify(self):
        """Check grading, vertex support and the multiplication table."""
        alg = self.alg
        F = self.F
        for k, g in enumerate(alg.rad_gens):
            m = self.rmats[k]
            for i in range(self.dim):
                for j in range(self.dim):
                    if m[i][j] != 0:
                        if self.grades[i] != self.grades[j] + alg.grades[g]:
                            raise ValueError("action does not respect the grading")
                        if self.verts[j] != alg.src[g] or self.verts[i] != alg.tgt[g]:
                            raise ValueError("action does not respect vertex idempotents")
        for g in alg.idem + alg.rad_gens:
            G = self.gen_matrix(g)
            for b in range(alg.dim):
                lhs = mat_mul(G, self.act_basis(b), F)
                rhs = [[F.zero] * self.dim for _ in range(self.dim)]
                for k, c in alg.mult[g][b]:
                    Mk = self.act_basis(k)
                    for i in range(self.dim):
                        for j in range(self.dim):
                            if Mk[i][j]:
                                rhs[i][j] = F.reduce(rhs[i][j] + c * Mk[i][j])
                if lhs != rhs:
                    raise ValueError(f"module relation fails for generator {g} and basis element {b}")
        return True


@dataclass
class GradedMap:
    domain: GradedModule
    codomain: GradedModule
    matrix: list  # codomain.dim x domain.dim
    shift: int = 0


# ---------------------------------------------------------------------------
# Constructors


def projective(alg: GradedAlgebra, v: int, shift: int = 0) -> GradedModule:
    """P(v)<shift> = A e_v."""
    basis = [b for b in range(alg.dim) if alg.src[b] == v]
    pos = {b: k for k, b in enumerate(basis)}
    F = alg.F
    rmats = []
    for g in alg.rad_gens:
        m = [[F.zero] * len(basis) for _ in basis]
        for col, b in enumerate(basis):
            for k, c in alg.mult[g][b]:
                m[pos[k]][col] = c
        rmats.append(m)
    return GradedModule(
        alg, [alg.grades[b] + shift for b in basis], [alg.tgt[b] for b in basis], rmats,
        name=f"P({alg.vertices[v]})" + (f"<{shift}>" if shift else ""),
    )


def projective_basis(alg: GradedAlgebra, v: int):
    return [b for b in range(alg.dim) if alg.src[b] == v]


def simple(alg: GradedAlgebra, v: int, shift: int = 0) -> GradedModule:
    F = alg.F
    return GradedModule(alg, [shift], [v], [[[F.zero]] for _ in alg.rad_gens],
                        name=f"L({alg.vertices[v]})" + (f"<{shift}>" if shift else ""))


def zero_module(alg: GradedAlgebra) -> GradedModule:
    return GradedModule(alg, [], [], [[] for _ in alg.rad_gens], name="0")


def shifted(m: GradedModule, r: int) -> GradedModule:
    """M<r>."""
    out = GradedModule(m.alg, [g + r for g in m.grades], m.verts, m.rmats, name=f"{m.name}<{r}>")
    out._act = m._act
    return out


def direct_sum(mods) -> GradedModule:
    mods = list(mods)
    alg = mods[0].alg
    F = alg.F
    n = sum(m.dim for m in mods)
    rmats = []
    for k in range(len(alg.rad_gens)):
        big = [[F.zero] * n for _ in range(n)]
        off = 0
        for m in mods:
            for i in range(m.dim):
                for j in range(m.dim):
                    big[off + i][off + j] = m.rmats[k][i][j]
            off += m.dim
        rmats.append(big)
    return GradedModule(alg, [g for m in mods for g in m.grades], [v for m in mods for v in m.verts], rmats,
                        name=" ⊕ ".join(m.name for m in mods))


class BlockSpace:
    """Graded, vertex-split subspace of a module, one RREF per block."""

    def __init__(self, module: GradedModule):
        self.M = module
        self.F = module.F
        self.blocks = module.blocks()
        self.rows: dict = {key: ([], []) for key in self.blocks}  # key -> (R, pivots) in block coords

    def _restrict(self, key, v):
        return [v[i] for i in self.blocks[key]]

    def add(self, v) -> bool:
        """Add the block components of v; return True if the span grew."""
        grew = False
        for key, idx in self.blocks.items():
            w = [v[i] for i in idx]
            if any(x != 0 for x in w):
                R, piv = self.rows[key]
                rem = reduce_against(R, piv, w, self.F)
                if any(x != 0 for x in rem):
                    self.rows[key] = rref(R + [w], self.F, len(idx))
                    grew = True
        return grew

    def contains(self, v) -> bool:
        for key, idx in self.blocks.items():
            w = [v[i] for i in idx]
            if any(x != 0 for x in w):
                R, piv = self.rows[key]
                if any(x != 0 for x in reduce_against(R, piv, w, self.F)):
                    return False
        return True

    def dim(self) -> int:
        return sum(len(R) for R, _ in self.rows.values())

    def block_dim(self, key) -> int:
        return len(self.rows[key][0])

    def vectors(self):
        """Basis vectors in full module coordinates, block by block."""
        out = []
        n = self.M.dim
        for key in sorted(self.rows):
            R, _ = self.rows[key]
            idx = self.blocks[key]
            for row in R:
                v = [self.F.zero] * n
                for i, x in zip(idx, row):
                    v[i] = x
                out.append((key, v))
        return out

    def copy(self):
        c = BlockSpace.__new__(BlockSpace)
        c.M, c.F, c.blocks = self.M, self.F, self.blocks
        c.rows = dict(self.rows)
        return c


def spin(m: GradedModule, vectors) -> BlockSpace:
    """Graded submodule generated by the block components of ``vectors``."""
    S = BlockSpace(m)
    queue = []
    for v in vectors:
        for key, idx in S.blocks.items():
            w = [m.F.zero] * m.dim
            nz = False
            for i in idx:
                if v[i] != 0:
                    w[i] = v[i]
                    nz = True
            if nz and S.add(w):
                queue.append(w)
    while queue:
        v = queue.pop()
        for k in range(len(m.alg.rad_gens)):
            w = m.apply_gen(k, v)
            if any(x != 0 for x in w) and S.add(w):
                queue.append(w)
    return S


def submodule(m: GradedModule, space: BlockSpace, name: str = "") -> tuple[GradedModule, list]:
    """Module structure on a BlockSpace; returns (module, inclusion columns)."""
    vecs = space.vectors()
    F = m.F
    basis = [v for _, v in vecs]
    keys = [key for key, _ in vecs]
    # coordinates: within a block, RREF rows give coordinates at pivot columns
    locate = {}
    start = 0
    for key in sorted(space.rows):
        R, piv = space.rows[key]
        locate[key] = (start, piv, space.blocks[key])
        start += len(R)

    def coords(w):
        out = [F.zero] * len(basis)
        for key, (st, piv, idx) in locate.items():
            for t, c in enumerate(piv):
                x = w[idx[c]]
                if x != 0:
                    out[st + t] = x
        return out

    rmats = []
    for k in range(len(m.alg.rad_gens)):
        cols = [coords(m.apply_gen(k, v)) for v in basis]
        rmats.append([[cols[j][i] for j in range(len(basis))] for i in range(len(basis))])
    sub = GradedModule(m.alg, [key[0] for key in keys], [key[1] for key in keys], rmats, name=name)
    return sub, basis


def quotient(m: GradedModule, space: BlockSpace, name: str = "") -> tuple[GradedModule, callable]:
    """M / U for a graded submodule U; returns (module, projection function)."""
    F = m.F
    chosen = []  # (key, module index) of complement basis vectors
    for key in sorted(space.blocks):
        idx = space.blocks[key]
        R, piv = space.rows[key]
        pivset = set(piv)
        for c in range(len(idx)):
            if c not in pivset:
                chosen.append((key, idx[c], c))
    locate = {}
    for t, (key, i, c) in enumerate(chosen):
        locate.setdefault(key, []).append((t, c))

    def project(v):
        out = [F.zero] * len(chosen)
        for key, idx in space.blocks.items():
            w = [v[i] for i in idx]
            if not any(x != 0 for x in w):
                continue
            R, piv = space.rows[key]
            w = reduce_against(R, piv, w, F)
            for t, c in locate.get(key, []):
                out[t] = w[c]
        return out

    rmats = []
    for k in range(len(m.alg.rad_gens)):
        cols = []
        for key, i, c in chosen:
            e = [F.zero] * m.dim
            e[i] = F.one
            cols.append(project(m.apply_gen(k, e)))
        rmats.append([[cols[j][r] for j in range(len(chosen))] for r in range(len(chosen))])
    q = GradedModule(m.alg, [key[0] for key, _, _ in chosen], [key[1] for key, _, _ in chosen], rmats, name=name)
    return q, project


def dual(m: GradedModule, name: str = "") -> GradedModule:
    """Linear dual D M = Hom_k(M, k) as a module over the opposite algebra."""
    op = m.alg.opposite()
    rmats = [[list(r) for r in zip(*mat)] if m.dim else [] for mat in m.rmats]
    return GradedModule(op, [-g for g in m.grades], m.verts, rmats, name=name or f"D{m.name}")


def grade_truncate(m: GradedModule, lo: int, hi: int, name: str = "") -> GradedModule:
    """Subquotient M_{>=lo} / M_{>hi}, i.e. the grades lo..hi of M."""
    keep = [i for i in range(m.dim) if lo <= m.grades[i] <= hi]
    pos = {i: k for k, i in enumerate(keep)}
    rmats = [[[mat[i][j] for j in keep] for i in keep] for mat in m.rmats]
    del pos
    return GradedModule(m.alg, [m.grades[i] for i in keep], [m.verts[i] for i in keep], rmats,
                        name=name or f"{m.name}[{lo}..{hi}]")


def inflate(m0: GradedModule, alg: GradedAlgebra, name: str = "") -> GradedModule:
    """View a module over A_0 = grade_zero(alg) as an A-module via pi.

    The A_0-module must be concentrated in one grade; positive-grade
    generators act by zero.
    """
    gz = grade_zero_data(alg)
    if m0.alg is not gz.algebra:
        raise ValueError("module is not over the grade-zero algebra of alg")
    F = alg.F
    rmats = []
    for g in alg.rad_gens:
        if alg.grades[g] == 0:
            rmats.append(m0.act_basis(gz.pi[g]))
        else:
            rmats.append([[F.zero] * m0.dim for _ in range(m0.dim)])
    return GradedModule(alg, m0.grades, m0.verts, rmats, name=name or m0.name)


def restrict_to_grade_zero(m: GradedModule, s: int | None = None, name: str = "") -> GradedModule:
    """The A_0-module M_s (all of M when s is None) by restriction along A_0 ⊂ A."""
    alg = m.alg
    gz = grade_zero_data(alg)
    a0 = gz.algebra
    keep = [i for i in range(m.dim) if s is None or m.grades[i] == s]
    rmats = []
    for g in a0.rad_gens:
        full = m.act_basis(gz.incl[g])
        rmats.append([[full[i][j] for j in keep] for i in keep])
    return GradedModule(a0, [m.grades[i] for i in keep], [m.verts[i] for i in keep], rmats,
                        name=name or (f"{m.name}_{s}" if s is not None else m.name))


def module_from_matrices(alg, grades, verts, gen_action: dict, name=""):
    """Module from matrices of the quiver arrows keyed by basis index of the arrow."""
    F = alg.F
    n = len(grades)
    rmats = []
    for g in alg.rad_gens:
        rmats.append(gen_action.get(g, [[F.zero] * n for _ in range(n)]))
    return GradedModule(alg, grades, verts, rmats, name=name)


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(m: GradedModule, n: GradedModule, r: int = 0, graded: bool = True) -> list[GradedMap]:
    """Basis of hom(M, N<r>), i.e. module maps sending M_i into N_{i+r}.

    With ``graded=False`` the grade constraint is dropped and the result is
    a basis of the ungraded Hom_A(M, N).
    """
    if m.alg is not n.alg:
        raise ValueError("modules over different algebras")
    F = m.F
    alg = m.alg
    unknowns = []
    upos = {}
    for i in range(m.dim):
        for j in range(n.dim):
            if m.verts[i] == n.verts[j] and (not graded or n.grades[j] == m.grades[i] + r):
                upos[(j, i)] = len(unknowns)
                unknowns.append((j, i))
    if not unknowns:
        return []
    rows = []
    for k, g in enumerate(alg.rad_gens):
        A = m.rmats[k]
        B = n.rmats[k]
        # column-sparse views
        a_col = [[(t, A[t][i]) for t in range(m.dim) if A[t][i] != 0] for i in range(m.dim)]
        b_row = [[(t, B[j][t]) for t in range(n.dim) if B[j][t] != 0] for j in range(n.dim)]
        for i in range(m.dim):
            if m.verts[i] != alg.src[g]:
                continue
            for j in range(n.dim):
                if n.verts[j] != alg.tgt[g]:
                    continue
                if graded and n.grades[j] != m.grades[i] + r + alg.grades[g]:
                    continue
                eq = {}
                for t, c in a_col[i]:  # (f A)[j][i] = sum_t f[j][t] A[t][i]
                    u = upos.get((j, t))
                    if u is not None:
                        eq[u] = eq.get(u, 0) + c
                for t, c in b_row[j]:  # (B f)[j][i] = sum_t B[j][t] f[t][i]
                    u = upos.get((t, i))
                    if u is not None:
                        eq[u] = eq.get(u, 0) - c
                eq = {u: F.reduce(x) for u, x in eq.items() if F.reduce(x) != 0}
                if eq:
                    row = [F.zero] * len(unknowns)
                    for u, x in eq.items():
                        row[u] = x
                    rows.append(row)
    sols = kernel(rows, F, len(unknowns)) if rows else [
        [F.one if a == b else F.zero for b in range(len(unknowns))] for a in range(len(unknowns))
    ]
    out = []
    for s in sols:
        mat = [[F.zero] * m.dim for _ in range(n.dim)]
        for u, x in enumerate(s):
            if x != 0:
                j, i = unknowns[u]
                mat[j][i] = x
        out.append(GradedMap(m, n, mat, r if graded else 0))
    return out


def hom_dim(m, n, r=0, graded=True) -> int:
    return len(hom_space(m, n, r, graded))


# ---------------------------------------------------------------------------
# Radical and socle series


@dataclass
class Filtration:
    """A chain of graded submodules with semisimple sections.

    ``layers[k]`` is a Counter of (vertex label, grade) multiplicities of
    the k-th section, counted from the top for radical series and from the
    bottom (the socle) for socle series.
    """

    kind: str
    layers: list
    spaces: list = field(default_factory=list, repr=False)

    def loewy_length(self) -> int:
        return len(self.layers)

    def ungraded_layers(self):
        out = []
        for lay in self.layers:
            c = Counter()
            for (v, _), k in lay.items():
                c[v] += k
            out.append(c)
        return out


def radical(m: GradedModule, space: BlockSpace | None = None) -> BlockSpace:
    """rad A · U for the submodule U (default U = M).

    rad A is the ideal generated by the radical generators, i.e. rad(A_0)
    together with A_{>=1}.
    """
    vecs = [v for _, v in space.vectors()] if space is not None else [
        [m.F.one if k == i else m.F.zero for k in range(m.dim)] for i in range(m.dim)
    ]
    out = BlockSpace(m)
    for v in vecs:
        for k in range(len(m.alg.rad_gens)):
            w = m.apply_gen(k, v)
            if any(x != 0 for x in w):
                out.add(w)
    return out


def _full(m):
    S = BlockSpace(m)
    for key, idx in S.blocks.items():
        S.rows[key] = ([[m.F.one if a == b else m.F.zero for b in range(len(idx))] for a in range(len(idx))], list(range(len(idx))))
    return S


def _layer(m, upper: BlockSpace, lower: BlockSpace) -> Counter:
    c = Counter()
    labels = m.alg.vertices
    for key in upper.blocks:
        d = upper.block_dim(key) - lower.block_dim(key)
        if d:
            c[(labels[key[1]], key[0])] += d
    return c


def radical_series(m: GradedModule) -> Filtration:
    cur = _full(m)
    layers, spaces = [], [cur]
    while cur.dim() > 0:
        nxt = radical(m, cur)
        layers.append(_layer(m, cur, nxt))
        spaces.append(nxt)
        cur = nxt
    return Filtration("radical", layers, spaces)


def socle(m: GradedModule, below: BlockSpace | None = None) -> BlockSpace:
    """{x : (rad A) x ⊆ below}, i.e. the preimage of soc(M / below)."""
    F = m.F
    S = BlockSpace(m)
    below = below or BlockSpace(m)
    for key, idx in S.blocks.items():
        rows = []
        for k, g in enumerate(m.alg.rad_gens):
            # image block of generator g applied to this block
            tkey = (key[0] + m.alg.grades[g], m.alg.tgt[g])
            if key[1] != m.alg.src[g] or tkey not in S.blocks:
                continue
            tidx = S.blocks[tkey]
            R, piv = below.rows[tkey]
            img_cols = []
            for i in idx:
                col = [m.rmats[k][t][i] for t in tidx]
                img_cols.append(reduce_against(R, piv, col, F))
            for t in range(len(tidx)):
                rows.append([img_cols[c][t] for c in range(len(idx))])
        ker = kernel(rows, F, len(idx)) if rows else [
            [F.one if a == b else F.zero for b in range(len(idx))] for a in range(len(idx))
        ]
        S.rows[key] = rref(ker, F, len(idx)) if ker else ([], [])
    return S


def socle_series(m: GradedModule) -> Filtration:
    cur = BlockSpace(m)
    layers, spaces = [], [cur]
    while cur.dim() < m.dim:
        nxt = socle(m, cur)
        layers.append(_layer(m, nxt, cur))
        spaces.append(nxt)
        cur = nxt
    return Filtration("socle", layers, spaces)


def top(m: GradedModule) -> Counter:
    """Graded head M / rad M."""
    return _layer(m, _full(m), radical(m))


# ---------------------------------------------------------------------------
# Projective covers and resolutions


def top_generators(m: GradedModule):
    """Homogeneous, vertex-pure vectors lifting a basis of M / rad M."""
    F = m.F
    rad = radical(m)
    gens = []
    for key in sorted(m.blocks()):
        idx = m.blocks()[key]
        R, piv = rad.rows[key]
        R = [list(r) for r in R]
        for c in range(len(idx)):
            e = [F.zero] * len(idx)
            e[c] = F.one
            if any(x != 0 for x in reduce_against(R, piv, e, F)):
                R, piv = rref(R + [e], F, len(idx))
                v = [F.zero] * m.dim
                v[idx[c]] = F.one
                gens.append((key[1], key[0], v))
    return gens


def projective_cover(m: GradedModule) -> tuple[GradedModule, GradedMap]:
    """P = ⊕ P(v)<s> over the graded head of M, with the covering map."""
    alg = m.alg
    F = m.F
    gens = top_generators(m)
    if not gens:
        return zero_module(alg), GradedMap(zero_module(alg), m, [[] for _ in range(m.dim)])
    P = direct_sum([projective(alg, v, s) for v, s, _ in gens])
    cols = []
    for v, s, vec in gens:
        for b in projective_basis(alg, v):
            cols.append(m.apply(b, vec))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(m.dim)]
    return P, GradedMap(P, m, mat, 0)


class Resolution:
    """Minimal graded projective resolution, cut at a length.

    ``terms[n]`` lists the generators (vertex, shift) of P^n, i.e.
    P^n = ⊕ P(v)<shift>.  ``diffs[n][j]`` for n >= 1 is the image of the
    j-th generator of P^n in P^{n-1} as a dict {(i, b): c}: component i,
    algebra basis element b (with source the vertex of generator i).
    ``aug[j]`` is the image in M of the j-th generator of P^0.
    """

    def __init__(self, module: GradedModule):
        self.module = module
        self.alg = module.alg
        self.terms: list[list[tuple[int, int]]] = []
        self.diffs: list[list[dict]] = [[]]
        self.aug: list = []
        self.kernel_dims: list[int] = []

    def length(self):
        return len(self.terms) - 1

    def betti(self, n) -> Counter:
        labels = self.alg.vertices
        return Counter((labels[v], s) for v, s in self.terms[n]) if n < len(self.terms) else Counter()

    def is_finite(self) -> bool:
        """True when the last computed syzygy vanished (resolution terminates)."""
        return bool(self.kernel_dims) and self.kernel_dims[-1] == 0

    def term_basis(self, n):
        alg = self.alg
        out = []
        for i, (v, s) in enumerate(self.terms[n]):
            for b in projective_basis(alg, v):
                out.append((i, b))
        return out

    def term_module(self, n) -> GradedModule:
        alg = self.alg
        if not self.terms[n]:
            return zero_module(alg)
        return direct_sum([projective(alg, v, s) for v, s in self.terms[n]])

    def is_minimal(self) -> bool:
        idem = set(self.alg.idem)
        for n in range(1, len(self.terms)):
            for img in self.diffs[n]:
                if any(b in idem for (_, b) in img):
                    return False
        return True


def _term_blocks(alg, gens):
    """Basis (i, b) of ⊕ P(v_i)<s_i> grouped by block (grade, vertex)."""
    blocks: dict = {}
    for i, (v, s) in enumerate(gens):
        for b in projective_basis(alg, v):
            blocks.setdefault((s + alg.grades[b], alg.tgt[b]), []).append((i, b))
    return blocks


def _left_mult(alg, c, elt: dict) -> dict:
    """c · elt for elt in a sum of projectives (dict (i, b) -> coeff)."""
    out: dict = {}
    for (i, b), x in elt.items():
        for k, y in alg.mult[c][b]:
            out[(i, k)] = out.get((i, k), 0) + x * y
    F = alg.F
    return {key: F.reduce(v) for key, v in out.items() if F.reduce(v) != 0}


def _kernel_blocks(alg, gens, image_of, target_blocks):
    """Kernel of a block-preserving map out of ⊕ P(v_i)<s_i>.

    ``image_of(i, b)`` returns the image as a dict keyed by target-block
    positions: {(block key, position): coeff}.
    """
    F = alg.F
    blocks = _term_blocks(alg, gens)
    ker: dict = {}
    for key, basis in blocks.items():
        tlen = len(target_blocks.get(key, []))
        if tlen == 0:
            ker[key] = [{basis[k]: F.one} for k in range(len(basis))]
            continue
        cols = [image_of(i, b) for (i, b) in basis]
        rows = [[F.zero] * len(basis) for _ in range(tlen)]
        for c, img in enumerate(cols):
            for t, x in img.items():
                rows[t][c] = x
        K = kernel(rows, F, len(basis))
        ker[key] = [{basis[k]: x for k, x in enumerate(v) if x != 0} for v in K]
    return blocks, ker


def _minimal_generators(alg, blocks, ker):
    """Choose kernel vectors spanning K / rad(A) K, block by block."""
    F = alg.F
    rad_vecs: dict = {}
    for key, vecs in ker.items():
        for v in vecs:
            for g in alg.rad_gens:
                w = _left_mult(alg, g, v)
                if w:
                    tkey = (key[0] + alg.grades[g], alg.tgt[g])
                    rad_vecs.setdefault(tkey, []).append(w)
    new = []
    for key in sorted(ker):
        basis = blocks[key]
        pos = {x: k for k, x in enumerate(basis)}

        def dense(d):
            row = [F.zero] * len(basis)
            for x, c in d.items():
                row[pos[x]] = c
            return row

        rows = [dense(w) for w in rad_vecs.get(key, [])]
        R, piv = rref(rows, F, len(basis)) if rows else ([], [])
        for v in ker[key]:
            dv = dense(v)
            if any(x != 0 for x in reduce_against(R, piv, dv, F)):
                R, piv = rref(R + [dv], F, len(basis))
                new.append((key, v))
    return new


def minimal_resolution(m: GradedModule, n: int | None = None) -> Resolution:
    """Terms P^0 .. P^n of a minimal graded projective resolution of M."""
    if n is None:
        n = default_degree_bound()
    if n < 0:
        raise ValueError("length must be non-negative")
    alg = m.alg
    res = Resolution(m)
    gens0 = top_generators(m)
    res.terms.append([(v, s) for v, s, _ in gens0])
    res.aug = [vec for _, _, vec in gens0]
    mblocks = m.blocks()
    mpos = {key: {i: k for k, i in enumerate(idx)} for key, idx in mblocks.items()}

    def eps_image(i, b):
        w = m.apply(b, res.aug[i])
        out = {}
        key = None
        for t, x in enumerate(w):
            if x != 0:
                key = (m.grades[t], m.verts[t])
                out[mpos[key][t]] = x
        return out

    blocks, ker = _kernel_blocks(alg, res.terms[0], eps_image, mblocks)
    res.kernel_dims.append(sum(len(v) for v in ker.values()))
    for k in range(1, n + 1):
        new = _minimal_generators(alg, blocks, ker)
        gens = [(key[1], key[0]) for key, _ in new]
        res.terms.append(gens)
        res.diffs.append([v for _, v in new])
        if not gens:
            res.kernel_dims.append(0)
            break
        prev_blocks = blocks
        ppos = {key: {x: t for t, x in enumerate(basis)} for key, basis in prev_blocks.items()}
        images = res.diffs[k]

        def d_image(i, b, images=images, ppos=ppos):
            w = _left_mult(alg, b, images[i])
            out = {}
            for x, c in w.items():
                key = (res.terms[k - 1][x[0]][1] + alg.grades[x[1]], alg.tgt[x[1]])
                out[ppos[key][x]] = c
            return out

        blocks, ker = _kernel_blocks(alg, gens, d_image, prev_blocks)
        res.kernel_dims.append(sum(len(v) for v in ker.values()))
    return res


# ---------------------------------------------------------------------------
# Ext


@dataclass
class ExtTable:
    graded: dict  # (i, r) -> dim, nonzero entries only
    nmax: int
    finite: bool = False

    def ungraded(self) -> list[int]:
        out = [0] * (self.nmax + 1)
        for (i, _), d in self.graded.items():
            out[i] += d
        return out

    def get(self, i, r) -> int:
        return self.graded.get((i, r), 0)

    def to_json(self):
        return {
            "nmax": self.nmax,
            "graded": [[i, r, d] for (i, r), d in sorted(self.graded.items())],
            "ungraded": self.ungraded(),
        }


def _cochain_basis(res: Resolution, n: int, N: GradedModule, r: int):
    out = []
    for i, (v, s) in enumerate(res.terms[n]):
        for u in range(N.dim):
            if N.verts[u] == v and N.grades[u] == s - r:
                out.append((i, u))
    return out


def _coboundary(res: Resolution, n: int, N: GradedModule, r: int, src_basis, dst_basis):
    """Matrix of phi -> phi ∘ d_{n+1} from C^n(r) to C^{n+1}(r)."""
    F = N.F
    dpos = {x: k for k, x in enumerate(dst_basis)}
    rows = [[F.zero] * len(src_basis) for _ in dst_basis]
    by_comp: dict = {}
    for j, img in enumerate(res.diffs[n + 1]):
        for (i, b), c in img.items():
            by_comp.setdefault(i, []).append((j, b, c))
    for col, (i, u) in enumerate(src_basis):
        for j, b, c in by_comp.get(i, []):
            Mb = N.act_basis(b)
            for t in range(N.dim):
                x = Mb[t][u]
                if x != 0:
                    k = dpos.get((j, t))
                    if k is not None:
                        rows[k][col] = F.reduce(rows[k][col] + c * x)
    return rows


def ext_from_resolution(res: Resolution, N: GradedModule, nmax: int) -> ExtTable:
    if res.length() < nmax + 1 and not res.is_finite():
        raise ValueError("resolution too short for requested degree")
    F = N.F
    shifts = set()
    for n in range(min(nmax + 1, len(res.terms))):
        for v, s in res.terms[n]:
            for u in range(N.dim):
                if N.verts[u] == v:
                    shifts.add(s - N.grades[u])
    table = {}
    for r in sorted(shifts):
        bases = [(_cochain_basis(res, n, N, r) if n < len(res.terms) else []) for n in range(nmax + 2)]
        ranks = []
        for n in range(nmax + 1):
            if bases[n] and n + 1 < len(res.terms) and bases[n + 1]:
                ranks.append(rank(_coboundary(res, n, N, r, bases[n], bases[n + 1]), F))
            else:
                ranks.append(0)
        for n in range(nmax + 1):
            d = len(bases[n]) - ranks[n] - (ranks[n - 1] if n > 0 else 0)
            if d:
                table[(n, r)] = d
    return ExtTable(table, nmax, res.is_finite())


def graded_ext(m: GradedModule, n: GradedModule, nmax: int | None = None, res: Resolution | None = None) -> ExtTable:
    """{(i, r): dim ext^i(M, N<r>)} for i <= nmax, from a minimal resolution."""
    if nmax is None:
        nmax = default_degree_bound()
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    if res is None or (res.length() < nmax + 1 and not res.is_finite()):
        res = minimal_resolution(m, nmax + 1)
    return ext_from_resolution(res, n, nmax)


def syzygy(m: GradedModule) -> tuple[GradedModule, GradedModule, list]:
    """(Omega M, P, inclusion columns) from a projective cover, computed with
    plain kernels and spinning (no block bookkeeping of the resolution code)."""
    P, cover = projective_cover(m)
    F = m.F
    K = kernel(cover.matrix, F, P.dim) if m.dim else [
        [F.one if a == b else F.zero for b in range(P.dim)] for a in range(P.dim)
    ]
    S = spin(P, K)
    omega, incl = submodule(P, S, name=f"Ω({m.name})")
    return omega, P, incl


def ungraded_ext_dims(m: GradedModule, n: GradedModule, nmax: int) -> list[int]:
    """dim Ext^i_A(M, N) ignoring grades, by dimension shifting.

    Ext^0 = Hom(M, N) and, for i >= 1, Ext^i = Hom(Ω^i, N) modulo the maps
    that extend to P^{i-1}; all hom spaces are solved as intertwiner systems.
    """
    F = m.F
    out = [hom_dim(m, n, graded=False)]
    cur = m
    for i in range(1, nmax + 1):
        if cur.dim == 0:
            out.append(0)
            continue
        omega, P, incl = syzygy(cur)
        hom_omega = hom_space(omega, n, graded=False)
        if not hom_omega:
            out.append(0)
            cur = omega
            continue
        hom_P = hom_space(P, n, graded=False)
        # restrict maps P -> N to Omega and express in the hom_omega basis
        flat = lambda mat: [x for row in mat for x in row]  # noqa: E731
        basis_rows = [flat(h.matrix) for h in hom_omega]
        restricted = []
        for h in hom_P:
            comp = mat_mul(h.matrix, [list(r) for r in zip(*incl)], F) if incl else []
            restricted.append(flat(comp))
        rk = rank(restricted, F) if restricted else 0
        del basis_rows
        out.append(len(hom_omega) - rk)
        cur = omega
    return out


def euler_characteristic(res: Resolution, N: GradedModule, r: int, nmax: int) -> int:
    """Σ (−1)^i dim hom(P^i, N<r>) over the computed terms up to nmax."""
    tot = 0
    for i in range(min(nmax + 1, len(res.terms))):
        tot += (-1) ** i * len(_cochain_basis(res, i, N, r))
    return tot


def vanishing_range_check(x: GradedModule, y: GradedModule, r: int, s: int, nmax: int | None = None) -> bool:
    """ext^n(X, Y) = 0 for n <= nmax when X lives in grades >= r, Y in grades <= s, r > s."""
    if nmax is None:
        nmax = default_degree_bound()
    if x.dim and min(x.grades) < r:
        raise ValueError(f"X is not concentrated in grades >= {r}")
    if y.dim and max(y.grades) > s:
        raise ValueError(f"Y is not concentrated in grades <= {s}")
    if r <= s:
        return True
    table = graded_ext(x, y, nmax)
    return all(table.get(n, 0) == 0 for n in range(nmax + 1))
