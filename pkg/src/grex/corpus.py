"""Deterministic corpus of small graded quiver algebras and the property suite.

The corpus enumerates a fixed list of quiver shapes (at most three vertices,
at most four arrows), grade assignments in {0, 1, 2}, and relation families
(all paths of length 2, all paths of length 3, one monomial of length 2 on
top of all length-3 paths, commutativity relations), over GF(2) and GF(3).
Every algebra that builds with dimension at most ``max_dim`` is kept, once
per total order on its vertices (identity and reversed).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .gradalg import Arrow, PresentationError, QuiverSpec, build_algebra, grade_zero_data
from .homolog import graded_ext, minimal_resolution, simple, ungraded_ext_dims
from .koszul import (
    HOLDS,
    check_standard_q_koszul,
    check_tight,
    delta0_filtration_suite,
    q_koszul_level,
    quadratic_check,
)
from .qha import WeightPoset, bgg_cartan, cartan_direct, certify_qha, standard_system

SHAPES = [
    ("1", [("x", "1", "1")]),
    ("1", [("x", "1", "1"), ("y", "1", "1")]),
    ("12", [("a", "1", "2")]),
    ("12", [("a", "1", "2"), ("b", "2", "1")]),
    ("12", [("a", "1", "2"), ("c", "1", "2")]),
    ("12", [("a", "1", "2"), ("b", "2", "1"), ("x", "1", "1")]),
    ("123", [("a", "1", "2"), ("b", "2", "3")]),
    ("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]),
    ("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]),
    ("123", [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"), ("d", "3", "2")]),
    ("123", [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "3"), ("d", "3", "2")]),
]

PROPERTIES = ("tight", "quadratic", "standard", "ext-sum", "bgg")


def _paths(arrows, k):
    """Composable words of length k (notation order: w[0] applied last)."""
    out = [(a,) for a in arrows]
    for _ in range(k - 1):
        out = [(a,) + w for w in out for a in arrows if a[1] == w[0][2]]
    return [tuple(x[0] for x in w) for w in out]


def _relation_families(arrows):
    p2, p3 = _paths(arrows, 2), _paths(arrows, 3)
    fams = [("free", [])]
    if p2:
        fams.append(("rad2", [[(Fraction(1), w)] for w in p2]))
    if p3:
        fams.append(("rad3", [[(Fraction(1), w)] for w in p3]))
        for w in p2:
            fams.append((f"mono-{''.join(w)}", [[(Fraction(1), w)]] + [[(Fraction(1), u)] for u in p3]))
    # commutativity: two length-2 paths with equal ends
    ends = {}
    by_label = {a[0]: a for a in arrows}
    for w in p2:
        key = (by_label[w[-1]][1], by_label[w[0]][2])
        ends.setdefault(key, []).append(w)
    for key, ws in sorted(ends.items()):
        if len(ws) >= 2:
            u, v = ws[0], ws[1]
            rel = [[(Fraction(1), u), (Fraction(-1), v)]]
            fams.append((f"comm-{''.join(u)}-{''.join(v)}", rel + [[(Fraction(1), t)] for t in p3]))
    return fams


def _grade_variants(arrows):
    n = len(arrows)
    out = [tuple([1] * n)]
    for i in range(n):
        for g in (0, 2):
            v = [1] * n
            v[i] = g
            out.append(tuple(v))
    return out


@dataclass
class CorpusEntry:
    spec: QuiverSpec
    dim: int

    @property
    def name(self):
        return self.spec.name


def generate_corpus(fields=(2, 3), max_dim: int = 40, seed: int = 0, limit: int | None = None) -> list[CorpusEntry]:
    """All buildable shape/grade/relation/poset combinations, deterministically ordered.

    With ``limit`` a seeded sample of that size is returned instead.
    """
    out = []
    seen = set()
    for p in fields:
        for verts, arrows in SHAPES:
            for grades in _grade_variants(arrows):
                arr = [Arrow(l, s, d, g) for (l, s, d), g in zip(arrows, grades)]
                for fname, rels in _relation_families(arrows):
                    vs = list(verts)
                    orders = [vs] if len(vs) == 1 else [vs, vs[::-1]]
                    base = QuiverSpec(p, vs, arr, rels, None, "")
                    try:
                        a = build_algebra(base, dim_guard=max_dim)
                    except (PresentationError, OverflowError):
                        continue
                    if a.dim > max_dim:
                        continue
                    for order in orders:
                        covers = [(order[i], order[i + 1]) for i in range(len(order) - 1)]
                        gtag = "".join(map(str, grades))
                        name = f"GF{p}:{''.join(x[0] for x in arrows)}:{gtag}:{fname}:{''.join(order)}"
                        if name in seen:
                            continue
                        seen.add(name)
                        out.append(CorpusEntry(QuiverSpec(p, vs, arr, rels, covers, name), a.dim))
    if limit is not None and limit < len(out):
        rng = random.Random(seed)
        out = sorted(rng.sample(out, limit), key=lambda e: e.name)
    return out


@dataclass
class PropertyOutcome:
    name: str
    results: dict = field(default_factory=dict)  # property -> "holds" | "vacuous" | "counterexample"
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "results": self.results, "details": self.details}


def run_properties(spec: QuiverSpec, degree: int = 3) -> PropertyOutcome:
    """Evaluate the five implications on one algebra with its poset."""
    a = build_algebra(spec)
    poset = WeightPoset.for_algebra(a)
    out = PropertyOutcome(spec.name)
    level = q_koszul_level(a, poset, min(degree, 3))
    out.details["level"] = level

    # 1-Q-Koszul implies tight
    if level >= 1:
        out.results["tight"] = "holds" if check_tight(a).holds else "counterexample"
    else:
        out.results["tight"] = "vacuous"

    # 2-Q-Koszul implies quadratic and A_1 Δ⁰-filtered
    if level >= 2:
        _, q = quadratic_check(a)
        suite = delta0_filtration_suite(a, poset, min(degree, 3))
        ok = q.holds and suite.verdict == HOLDS
        out.results["quadratic"] = "holds" if ok else "counterexample"
        if not ok:
            out.details["quadratic"] = {"quadratic": q.to_json(), "filtrations": suite.to_json()}
    else:
        out.results["quadratic"] = "vacuous"

    # standard Q-Koszul implies Q-Koszul
    qha = certify_qha(a, poset).ok
    a0_qha = certify_qha(grade_zero_data(a).algebra, poset).ok
    if qha and a0_qha:
        rep = check_standard_q_koszul(a, poset, degree)
        if rep.holds:
            ok = rep.details.get("q_koszul_replay") == HOLDS
            out.results["standard"] = "holds" if ok else "counterexample"
        else:
            out.results["standard"] = "vacuous"
    else:
        out.results["standard"] = "vacuous"

    # graded/ungraded Ext sum identity on simples
    ok = True
    for v in range(len(a.vertices)):
        L = simple(a, v)
        res = minimal_resolution(L, degree + 1)
        for u in range(len(a.vertices)):
            M = simple(a, u)
            g = graded_ext(L, M, degree, res=res).ungraded()
            un = ungraded_ext_dims(L, M, degree)
            if list(g[: degree + 1]) != list(un[: degree + 1]):
                ok = False
                out.details.setdefault("ext-sum", []).append({"from": a.vertices[v], "to": a.vertices[u],
                                                               "graded": list(g), "ungraded": list(un)})
    out.results["ext-sum"] = "holds" if ok else "counterexample"

    # BGG reciprocity on certified QHAs
    if qha:
        sys = standard_system(a, poset)
        out.results["bgg"] = "holds" if bgg_cartan(sys) == cartan_direct(sys) else "counterexample"
    else:
        out.results["bgg"] = "vacuous"
    return out


def _run_one(args):
    spec, degree = args
    return run_properties(spec, degree)


@dataclass
class CorpusSummary:
    size: int
    counts: dict  # property -> {"holds": n, "vacuous": n, "counterexample": n}
    counterexamples: list

    @property
    def ok(self):
        return not self.counterexamples

    def to_json(self):
        return {"size": self.size, "counts": self.counts, "counterexamples": self.counterexamples, "ok": self.ok}


def run_corpus(entries, degree: int = 3, jobs: int | None = 1) -> CorpusSummary:
    tasks = [(e.spec, degree) for e in entries]
    if jobs == 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, tasks, chunksize=4))
    counts = {p: {"holds": 0, "vacuous": 0, "counterexample": 0} for p in PROPERTIES}
    bad = []
    for r in results:
        for p, v in r.results.items():
            counts[p][v] += 1
            if v == "counterexample":
                bad.append({"algebra": r.name, "property": p, "details": r.details})
    return CorpusSummary(len(results), counts, bad)


def corpus_specs_json(entries) -> list:
    return [e.spec.to_dict() for e in entries]


__all__ = ["generate_corpus", "run_properties", "run_corpus", "CorpusEntry", "CorpusSummary", "SHAPES",
           "PROPERTIES"]
