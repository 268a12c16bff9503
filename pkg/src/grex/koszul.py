"""Koszul-type property checkers.

Every checker certifies only up to an explicit degree bound and returns a
PropertyReport whose refutation witnesses can be replayed with graded_ext.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import kernel, rank, rref
from .gradalg import (
    GradedAlgebra,
    GradedBimodule,
    bimodule_tensor_A0,
    grade_piece_bimodule,
    grade_zero_data,
    regular_bimodule,
    tensor_product,
    TensorAlgebraData,
)
from .homolog import (
    GradedModule,
    default_degree_bound,
    graded_ext,
    minimal_resolution,
    restrict_to_grade_zero,
    spin,
    submodule,
    syzygy,
    ungraded_ext_dims,
)
from .qha import (
    StandardSystem,
    WeightPoset,
    certify_qha,
    delta_filtration_test,
    grade_zero_system,
    standard_system,
)

HOLDS = "holds-to-bound"
REFUTED = "refuted"
UNASSERTED = "unasserted"


@dataclass
class PropertyReport:
    property: str
    bound: int
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self):
        out = {"property": self.property, "bound": self.bound, "verdict": self.verdict, "witnesses": self.witnesses}
        if self.details:
            out["details"] = self.details
        return out


def _poset(a, poset):
    return poset if poset is not None else WeightPoset.for_algebra(a)


def _diagonal_scan(tables, lo=0, hi=None):
    """First (key, i, r, d) with d != 0 and i != r, scanning by degree."""
    hits = []
    for key, table in tables:
        for (i, r), d in table.graded.items():
            if i != r and i >= lo and (hi is None or i <= hi):
                hits.append((i, r, key, d))
    if not hits:
        return None
    i, r, key, d = min(hits, key=lambda h: (h[0], h[1], str(h[2])))
    return key, i, r, d


def _table_json(tables):
    return [{"pair": list(key), **t.to_json()} for key, t in tables]


# ---------------------------------------------------------------------------


def check_koszul(a: GradedAlgebra, nmax: int | None = None) -> PropertyReport:
    """ext^n(L(λ), L(μ)<r>) ≠ 0 only for n = r, for n <= nmax."""
    nmax = default_degree_bound() if nmax is None else nmax
    from .homolog import simple

    tables = []
    for v, lam in enumerate(a.vertices):
        res = minimal_resolution(simple(a, v), nmax + 1)
        for u, mu in enumerate(a.vertices):
            tables.append(((lam, mu), graded_ext(simple(a, v), simple(a, u), nmax, res=res)))
    hit = _diagonal_scan(tables)
    if hit:
        (lam, mu), i, r, d = hit
        return PropertyReport("koszul", nmax, REFUTED, [{"lambda": lam, "mu": mu, "n": i, "r": r, "dim": d}])
    return PropertyReport("koszul", nmax, HOLDS, [], {"ext": _table_json(tables)})


def _a0_certificate(a, poset):
    gz = grade_zero_data(a)
    return certify_qha(gz.algebra, poset)


def q_koszul_tables(a: GradedAlgebra, poset: WeightPoset, nmax: int, zsys=None):
    zsys = zsys or grade_zero_system(standard_system(a, poset))
    tables = []
    for lam in zsys.system.labels:
        d0 = zsys.delta0(lam)
        res = minimal_resolution(d0, nmax + 1)
        for mu in zsys.system.labels:
            tables.append(((lam, mu), graded_ext(d0, zsys.nabla0(mu), nmax, res=res)))
    return tables


def check_n_q_koszul(a: GradedAlgebra, poset: WeightPoset | None = None, n: int = 2) -> PropertyReport:
    """ext^i(Δ⁰(λ), ∇₀(μ)<j>) ≠ 0 ⟹ i = j for 0 < i <= n; A_0 must be quasi-hereditary."""
    poset = _poset(a, poset)
    name = f"{n}-q-koszul"
    cert = _a0_certificate(a, poset)
    if not cert.ok:
        return PropertyReport(name, n, REFUTED, [{"kind": "A0 not quasi-hereditary", **cert.to_json()}])
    tables = q_koszul_tables(a, poset, n)
    hit = _diagonal_scan(tables, lo=1, hi=n)
    if hit:
        (lam, mu), i, r, d = hit
        return PropertyReport(name, n, REFUTED, [{"kind": "ext", "lambda": lam, "mu": mu, "n": i, "r": r, "dim": d}])
    return PropertyReport(name, n, HOLDS, [], {"ext": _table_json(tables)})


def q_koszul_level(a: GradedAlgebra, poset: WeightPoset | None = None, nmax: int = 3) -> int:
    """Largest n <= nmax with A n-Q-Koszul; -1 when A_0 is not quasi-hereditary."""
    poset = _poset(a, poset)
    if not _a0_certificate(a, poset).ok:
        return -1
    hit = _diagonal_scan(q_koszul_tables(a, poset, nmax), lo=1, hi=nmax)
    return nmax if hit is None else hit[1] - 1


def check_standard_q_koszul(a: GradedAlgebra, poset: WeightPoset | None = None, nmax: int | None = None) -> PropertyReport:
    """Both diagonal conditions for (Δ, ∇₀) and (Δ⁰, ∇), then the Q-Koszul replay."""
    nmax = default_degree_bound() if nmax is None else nmax
    poset = _poset(a, poset)
    sys = standard_system(a, poset)
    cert = certify_qha(a, sys=sys)
    if not cert.ok:
        return PropertyReport("standard-q-koszul", nmax, REFUTED, [{"kind": "not quasi-hereditary", **cert.to_json()}])
    zcert = _a0_certificate(a, poset)
    if not zcert.ok:
        return PropertyReport("standard-q-koszul", nmax, REFUTED, [{"kind": "A0 not quasi-hereditary", **zcert.to_json()}])
    zsys = grade_zero_system(sys)
    first, second = [], []
    for lam in sys.labels:
        res = minimal_resolution(sys.delta(lam), nmax + 1)
        for mu in sys.labels:
            first.append(((lam, mu), graded_ext(sys.delta(lam), zsys.nabla0(mu), nmax, res=res)))
    for mu in sys.labels:
        res = minimal_resolution(zsys.delta0(mu), nmax + 1)
        for lam in sys.labels:
            second.append(((mu, lam), graded_ext(zsys.delta0(mu), sys.nabla(lam), nmax, res=res)))
    for label, tables in (("Δ,∇₀", first), ("Δ⁰,∇", second)):
        hit = _diagonal_scan(tables)
        if hit:
            (x, y), i, r, d = hit
            return PropertyReport(
                "standard-q-koszul", nmax, REFUTED,
                [{"kind": label, "first": x, "second": y, "n": i, "r": r, "dim": d}],
            )
    replay = check_n_q_koszul(a, poset, nmax)
    return PropertyReport(
        "standard-q-koszul", nmax, HOLDS, [],
        {"delta_nabla0": _table_json(first), "delta0_nabla": _table_json(second), "q_koszul_replay": replay.verdict},
    )


def check_tight(a: GradedAlgebra) -> PropertyReport:
    """A_n = A_1 · A_{n-1} for 2 <= n <= top grade."""
    F = a.F
    for n in range(2, a.top_grade + 1):
        target = a.basis_in_grade(n)
        pos = {b: k for k, b in enumerate(target)}
        rows = []
        for x in a.basis_in_grade(1):
            for y in a.basis_in_grade(n - 1):
                prod = a.mult[x][y]
                if prod:
                    row = [F.zero] * len(target)
                    for k, c in prod:
                        row[pos[k]] = c
                    rows.append(row)
        rk = rank(rows, F) if rows else 0
        if rk != len(target):
            return PropertyReport("tight", a.top_grade, REFUTED, [{"grade": n, "dim": len(target), "generated": rk}])
    return PropertyReport("tight", a.top_grade, HOLDS)


@dataclass
class QuadraticData:
    w2_dim: int
    grades: dict  # s -> (dim <W2>_s, dim I_s)

    def to_json(self):
        return {"w2_dim": self.w2_dim, "grades": {str(s): list(v) for s, v in sorted(self.grades.items())}}


def quadratic_check(a: GradedAlgebra):
    """Compare the ideal generated by W₂ with the kernel of T_{A_0}(A_1) -> A."""
    tight = check_tight(a)
    if not tight.holds:
        return None, PropertyReport("quadratic", a.top_grade + 1, REFUTED, [{"kind": "not tight", **tight.witnesses[0]}])
    F = a.F
    smax = max(a.top_grade + 1, 2)
    data = TensorAlgebraData(a, smax)
    kers = {}
    for s in range(2, smax + 1):
        M = data.grade_map(s)
        ncols = data.dim(s)
        kers[s] = kernel(M, F, ncols) if M else [[F.one if i == j else F.zero for j in range(ncols)] for i in range(ncols)]
    w2 = kers[2]
    w2_tuples = []
    for w in w2:
        w2_tuples.append({data.reps[2][k]: c for k, c in enumerate(w) if c != 0})
    grades = {}
    witness = None
    for s in range(2, smax + 1):
        tp = {t: k for k, t in enumerate(data.tuples[s])}
        gen = []
        for i in range(0, s - 1):
            j = s - 2 - i
            lefts = data._composable(i) if i else [()]
            rights = data._composable(j) if j else [()]
            for x in lefts:
                for y in rights:
                    for w in w2_tuples:
                        vec = [F.zero] * len(tp)
                        nz = False
                        for t, c in w.items():
                            tt = x + t + y
                            if tt in tp:
                                vec[tp[tt]] = F.reduce(vec[tp[tt]] + c)
                                nz = True
                        if nz:
                            p = data.quot[s].project(vec)
                            if any(v != 0 for v in p):
                                gen.append(p)
        gdim = rank(gen, F) if gen else 0
        idim = len(kers[s])
        joint = rank(gen + kers[s], F) if gen or kers[s] else 0
        if joint != idim:
            raise AssertionError("ideal generated by W2 is not inside the kernel")
        grades[s] = (gdim, idim)
        if gdim != idim and witness is None:
            witness = {"grade": s, "generated_dim": gdim, "kernel_dim": idim, "w2_dim": len(w2)}
    qd = QuadraticData(len(w2), grades)
    if witness:
        return qd, PropertyReport("quadratic", smax, REFUTED, [witness], {"data": qd.to_json()})
    return qd, PropertyReport("quadratic", smax, HOLDS, [], {"data": qd.to_json()})


# ---------------------------------------------------------------------------
# Modules over A_0 built from bimodules


def left_a0_module(b: GradedBimodule, name="") -> GradedModule:
    a0 = b.left_alg
    return GradedModule(a0, [0] * b.dim, b.lvert, [b.left[g] for g in a0.rad_gens], name=name)


def right_a0_module(b: GradedBimodule, name="") -> GradedModule:
    """M as a left A_0^op-module (m ↦ m·x)."""
    op = b.right_alg.opposite()
    return GradedModule(op, [0] * b.dim, b.rvert, [b.right[g] for g in op.rad_gens], name=name)


def enveloping_module(b: GradedBimodule, env: GradedAlgebra, name="") -> GradedModule:
    """An (A_0, A_0)-bimodule as a left module over A_0 ⊗ A_0^op."""
    from .exact import mat_mul

    a0 = b.left_alg
    n0 = a0.dim
    nv = len(a0.vertices)
    rmats = []
    for g in env.rad_gens:
        x, y = divmod(g, n0)
        rmats.append(mat_mul(b.left[x], b.right[y], a0.F))
    return GradedModule(env, [0] * b.dim, [l * nv + r for l, r in zip(b.lvert, b.rvert)], rmats, name=name)


def _claim(name, result, asserted=True):
    out = {"claim": name, "asserted": asserted, "filtered": result.ok}
    if result.ok:
        out["multiplicities"] = sorted([lab, s, k] for (lab, s), k in result.multiplicities.items())
    else:
        out["witness"] = result.witness
    return out


def delta0_filtration_suite(a: GradedAlgebra, poset: WeightPoset | None = None, n: int = 3) -> PropertyReport:
    """Δ⁰-filtration consequences of the detected Q-Koszul level (up to n)."""
    poset = _poset(a, poset)
    gz = grade_zero_data(a)
    a0 = gz.algebra
    cert0 = certify_qha(a0, poset)
    if not cert0.ok:
        return PropertyReport("delta0-filtrations", n, REFUTED, [{"kind": "A0 not quasi-hereditary", **cert0.to_json()}])
    sys0 = StandardSystem(a0, poset)
    sys0op = StandardSystem(a0.opposite(), poset)
    level = q_koszul_level(a, poset, n)
    claims = []
    if level >= 2:
        a1 = grade_piece_bimodule(a, 1)
        claims.append(_claim("A1 left", delta_filtration_test(left_a0_module(a1, "A1"), sys0)))
        claims.append(_claim("A1 right", delta_filtration_test(right_a0_module(a1, "A1"), sys0op)))
        if certify_qha(a, poset).ok:
            sys = standard_system(a, poset)
            for lam in sys.labels:
                d1 = restrict_to_grade_zero(sys.delta(lam), 1)
                claims.append(_claim(f"Δ({lam})_1", delta_filtration_test(d1, sys0)))
    # (N)-Q-Koszul with N = s + 1 gives filtrations of Ω_{s-1}(A_s), Ω_s(A_s), ...
    for s in range(1, level):
        if s > a.top_grade:
            break
        As = left_a0_module(grade_piece_bimodule(a, s), f"A{s}")
        cur = As
        for k in range(s + 1):
            if k >= s - 1:
                claims.append(_claim(f"Ω_{k}(A_{s})", delta_filtration_test(cur, sys0)))
            if k < s:
                cur, _, _ = syzygy(cur)
    bad = [c for c in claims if c["asserted"] and not c["filtered"]]
    verdict = REFUTED if bad else HOLDS
    return PropertyReport("delta0-filtrations", n, verdict, bad, {"level": level, "claims": claims})


def bimodule_filtration_check(a: GradedAlgebra, poset: WeightPoset | None = None, n: int = 3) -> PropertyReport:
    """Δ⁰⊗Δ^{0,op}-filtrations of A_1, A_1⊗_{A_0}A_1 and W₂ over A_0 ⊗ A_0^op."""
    poset = _poset(a, poset)
    gz = grade_zero_data(a)
    a0 = gz.algebra
    level = q_koszul_level(a, poset, max(n, 3))
    qha = certify_qha(a, poset).ok
    env = tensor_product(a0, a0.opposite())
    envsys = StandardSystem(env, WeightPoset.product(poset, poset))
    claims = []
    reg = enveloping_module(regular_bimodule(a0), env, "A0")
    claims.append(_claim("A0", delta_filtration_test(reg, envsys), True))
    a1 = grade_piece_bimodule(a, 1)
    asserted = level >= 2 and qha
    m1 = enveloping_module(a1, env, "A1")
    claims.append(_claim("A1", delta_filtration_test(m1, envsys), asserted))
    t2, Q, pairs = bimodule_tensor_A0(a1, a1)
    m2 = enveloping_module(t2, env, "A1⊗A1")
    claims.append(_claim("A1⊗A1", delta_filtration_test(m2, envsys), asserted))
    # W2 = kernel of multiplication A1 ⊗_{A0} A1 -> A2
    F = a.F
    b1 = a.basis_in_grade(1)
    b2 = a.basis_in_grade(2)
    p2 = {b: k for k, b in enumerate(b2)}
    bpairs = [pairs[k] for k in Q.basis]
    rows = [[F.zero] * len(bpairs) for _ in b2]
    for col, (i, j) in enumerate(bpairs):
        for k, c in a.mult[b1[i]][b1[j]]:
            rows[p2[k]][col] = c
    kvecs = kernel(rows, F, len(bpairs)) if b2 else [
        [F.one if x == y else F.zero for y in range(len(bpairs))] for x in range(len(bpairs))
    ]
    if kvecs:
        w2, _ = submodule(m2, spin(m2, kvecs), name="W2")
        if w2.dim != len(kvecs):
            raise AssertionError("W2 is not a sub-bimodule")
        claims.append(_claim("W2", delta_filtration_test(w2, envsys), level >= 3 and qha))
    else:
        claims.append({"claim": "W2", "asserted": level >= 3 and qha, "filtered": True, "multiplicities": []})
    bad = [c for c in claims if c["asserted"] and not c["filtered"]]
    return PropertyReport(
        "bimodule-filtrations", max(n, 3), REFUTED if bad else HOLDS, bad,
        {"level": level, "quasi_hereditary": qha, "claims": claims},
    )


def product_formula_check(a: GradedAlgebra, poset: WeightPoset | None = None, nmax: int = 4) -> PropertyReport:
    """dim Ext^n(Δ⁰(λ), ∇₀(μ)) against Σ_{a+b=n} Σ_ν Ext^a(Δ(ν), ∇₀(μ))·Ext^b(Δ⁰(λ), ∇(ν)).

    The left side is computed by dimension shifting over syzygies, the right
    side from minimal graded resolutions.
    """
    poset = _poset(a, poset)
    sys = standard_system(a, poset)
    zsys = grade_zero_system(sys)
    labels = sys.labels
    E1 = {}
    for nu in labels:
        res = minimal_resolution(sys.delta(nu), nmax + 1)
        for mu in labels:
            E1[(nu, mu)] = graded_ext(sys.delta(nu), zsys.nabla0(mu), nmax, res=res).ungraded()
    E2 = {}
    for lam in labels:
        res = minimal_resolution(zsys.delta0(lam), nmax + 1)
        for nu in labels:
            E2[(lam, nu)] = graded_ext(zsys.delta0(lam), sys.nabla(nu), nmax, res=res).ungraded()
    rows = []
    witnesses = []
    for lam in labels:
        for mu in labels:
            lhs = ungraded_ext_dims(zsys.delta0(lam), zsys.nabla0(mu), nmax)
            for n in range(nmax + 1):
                rhs = sum(E1[(nu, mu)][x] * E2[(lam, nu)][n - x] for nu in labels for x in range(n + 1))
                rows.append([lam, mu, n, lhs[n], rhs])
                if lhs[n] != rhs:
                    witnesses.append({"lambda": lam, "mu": mu, "n": n, "lhs": lhs[n], "rhs": rhs})
    return PropertyReport("product-formula", nmax, REFUTED if witnesses else HOLDS, witnesses, {"rows": rows})
