"""grex command line: check, kl, casestudy, corpus.

Exit codes: 0 success / property holds, 1 property refuted or a case-study
step failed, 2 malformed input, 3 length ball or degree bound exceeded.
JSON goes to stdout (or --out); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .gradalg import PresentationError, build_algebra, parse_spec

SCHEMA = 1
EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3

PROPERTIES = ("koszul", "qkoszul", "standard-qkoszul", "tight", "quadratic", "qha", "filtrations", "product-formula")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    paths: list
    degree: int
    fmt: str = "json"
    seed: int = 0
    jobs: int = 1
    out: str | None = None


def _degree(args) -> int:
    if getattr(args, "degree", None) is not None:
        d = args.degree
    else:
        from .homolog import default_degree_bound

        try:
            d = default_degree_bound()
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if d < 1:
        raise InputError(f"degree bound must be at least 1, got {d}")
    return d


def _render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return pad + ", ".join(map(str, obj))
        return "\n".join(_render_text(x, indent) if isinstance(x, dict) else pad + json.dumps(x) for x in obj)
    return pad + str(obj)


def _emit(report: dict, cfg: RunConfig):
    report = {"schema": SCHEMA, **report}
    text = json.dumps(report, indent=2, sort_keys=False, default=str) if cfg.fmt == "json" else _render_text(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# check


def cmd_check(cfg: RunConfig, prop: str, n: int | None = None) -> int:
    from . import koszul, qha

    try:
        with open(cfg.paths[0], encoding="utf-8") as fh:
            spec = parse_spec(fh.read())
        a = build_algebra(spec)
        poset = qha.WeightPoset.for_algebra(a)
    except OSError as exc:
        raise InputError(f"cannot read {cfg.paths[0]}: {exc}") from exc
    deg = cfg.degree
    if prop == "koszul":
        rep = koszul.check_koszul(a, deg)
    elif prop == "qkoszul":
        rep = koszul.check_n_q_koszul(a, poset, n or deg)
    elif prop == "standard-qkoszul":
        rep = koszul.check_standard_q_koszul(a, poset, deg)
    elif prop == "tight":
        rep = koszul.check_tight(a)
    elif prop == "quadratic":
        _, rep = koszul.quadratic_check(a)
    elif prop == "qha":
        cert = qha.certify_qha(a, poset)
        report = {"property": "qha", "verdict": koszul.HOLDS if cert.ok else koszul.REFUTED, **cert.to_json()}
        if cert.ok:
            sys_ = qha.standard_system(a, poset)
            labels, D = qha.decomposition_matrix(sys_)
            report["labels"] = labels
            report["decomposition_matrix"] = D
            report["cartan"] = qha.cartan_direct(sys_)
        _emit({"algebra": spec.name, "dim": a.dim, **report}, cfg)
        return EXIT_OK if cert.ok else EXIT_REFUTED
    elif prop == "filtrations":
        r1 = koszul.delta0_filtration_suite(a, poset, min(deg, 3))
        r2 = koszul.bimodule_filtration_check(a, poset, min(deg, 3))
        ok = r1.verdict != koszul.REFUTED and r2.verdict != koszul.REFUTED
        _emit({"algebra": spec.name, "dim": a.dim, "property": "filtrations",
               "verdict": koszul.HOLDS if ok else koszul.REFUTED,
               "reports": [r1.to_json(), r2.to_json()]}, cfg)
        return EXIT_OK if ok else EXIT_REFUTED
    elif prop == "product-formula":
        rep = koszul.product_formula_check(a, poset, min(deg, 4))
    else:
        raise InputError(f"unknown property {prop}")
    _emit({"algebra": spec.name, "dim": a.dim, **rep.to_json()}, cfg)
    return EXIT_OK if rep.holds else EXIT_REFUTED


# ---------------------------------------------------------------------------
# kl


def _composition(text: str):
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"bad composition {text!r}") from exc
    if not parts or any(p < 0 for p in parts):
        raise InputError(f"bad composition {text!r}")
    return parts


def _int(text, what):
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"{what} must be an integer, got {text!r}") from exc


def _poly(f):
    return {"terms": f.to_json(), "text": str(f)}


def _group(kind: str, n: int, affine: bool, ball: int):
    from . import kl

    try:
        if affine:
            return kl.affine_weyl_group(kind.upper(), n, ball)
        return kl.coxeter_group(kind.upper(), n, ball)
    except (KeyError, ValueError) as exc:
        raise InputError(f"unknown group {kind}{n}: {exc}") from exc


def _word(G, text):
    try:
        return G.element(G.parse_word(text))
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad word {text!r} for generators {G.names}") from exc


def cmd_kl(cfg: RunConfig, args) -> int:
    from . import kl

    items = args.items
    ball = args.ball
    head = items[0].lower()
    if head == "poincare":
        if len(items) != 3:
            raise InputError("usage: kl poincare N PARTS")
        n, comp = _int(items[1], "n"), _composition(items[2])
        if sum(comp) != n:
            raise InputError(f"composition {comp} does not sum to {n}")
        f = kl.r_lambda(comp)
        _emit({"command": "poincare", "n": n, "composition": comp, "r_lambda": _poly(f)}, cfg)
        return EXIT_OK
    if head == "psing":
        if len(items) not in (5, 6):
            raise InputError("usage: kl psing TYPE N YBAR WBAR [I]")
        G = _group(items[1], _int(items[2], "rank"), args.affine, ball)
        y, w = _word(G, items[3]), _word(G, items[4])
        I = G.parse_word(items[5]) if len(items) == 6 and items[5] not in ("-", "") else []
        table = kl.KLTable(G, ball if G.affine else None)
        try:
            f = kl.parabolic_sing(y, w, I, table)
        except kl.NotDistinguished as exc:
            raise InputError(str(exc)) from exc
        _emit({"command": "psing", "group": G.names, "ybar": [G.names[s] for s in y.word],
               "wbar": [G.names[s] for s in w.word],
               "I": [G.names[s] for s in I], "P_sing": _poly(f)}, cfg)
        return EXIT_OK
    if head == "ciii":
        if len(items) != 4:
            raise InputError("usage: kl ciii LAMBDA MU P")
        lam, mu, p = _composition(items[1]), _composition(items[2]), _int(items[3], "p")
        try:
            a = kl.alcove_normalize(lam, p, args.type, None, ball)
            f = kl.conjecture_iii_series(lam, mu, p, args.type, None, not args.no_bar, ball)
        except kl.NoAlcoveRepresentative as exc:
            raise InputError(str(exc)) from exc
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        _emit({"command": "ciii", "lambda": lam, "mu": mu, "p": p, "normal_form": a.to_json(),
               "series": _poly(f)}, cfg)
        return EXIT_OK
    if len(items) != 4:
        raise InputError("usage: kl TYPE N XWORD YWORD")
    G = _group(items[0], _int(items[1], "rank"), args.affine, ball)
    x, y = _word(G, items[2]), _word(G, items[3])
    table = kl.KLTable(G, ball if G.affine else None)
    leq = table.leq(x, y)
    f = table.P(x, y)
    _emit({"command": "kl", "group": G.names, "x": [G.names[s] for s in x.word], "y": [G.names[s] for s in y.word],
           "bruhat_leq": leq, "P": _poly(f)}, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# casestudy and corpus


def cmd_casestudy(cfg: RunConfig, action: str) -> int:
    from . import casestudy

    if action == "export-data":
        text = casestudy.export_data()
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    try:
        report = casestudy.run()
    except casestudy.CaseStudyError as exc:
        print(f"casestudy failed at step {exc.step}: {exc}", file=sys.stderr)
        _emit({"ok": False, "failed_step": exc.step, "error": str(exc)}, cfg)
        return EXIT_REFUTED
    report = dict(report)
    report.pop("schema", None)
    _emit(report, cfg)
    for f in report["facts"]:
        if f["status"] == "failed":
            print(f"failed: {f['fact']}", file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_REFUTED


def cmd_corpus(cfg: RunConfig, action: str, limit: int | None) -> int:
    from . import corpus

    entries = corpus.generate_corpus(seed=cfg.seed, limit=limit)
    if action == "generate":
        _emit({"size": len(entries), "algebras": corpus.corpus_specs_json(entries)}, cfg)
        return EXIT_OK
    print(f"running {len(entries)} algebras with {cfg.jobs} job(s)", file=sys.stderr)
    summary = corpus.run_corpus(entries, min(cfg.degree, 3), cfg.jobs)
    _emit(summary.to_json(), cfg)
    return EXIT_OK if summary.ok else EXIT_REFUTED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grex", description="Graded algebra, Koszulity and KL toolkit")
    p.add_argument("--version", action="version", version=f"grex {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--degree", type=int, help="degree bound (default GREX_DEGREE_BOUND or 8)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("check", parents=[common], help="check a property of an algebra spec")
    c.add_argument("spec")
    c.add_argument("--property", "-p", choices=PROPERTIES, required=True)
    c.add_argument("--n", type=int, help="n for n-Q-Koszul (default: degree bound)")

    k = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig computations",
                       description="kl TYPE N X Y | kl poincare N PARTS | kl psing TYPE N YBAR WBAR [I] | kl ciii LAMBDA MU P")
    k.add_argument("items", nargs="+")
    k.add_argument("--affine", action="store_true", help="use the affine Weyl group of TYPE N")
    k.add_argument("--ball", type=int, default=12, help="length ball for affine groups")
    k.add_argument("--type", default="A", help="root system type for ciii")
    k.add_argument("--no-bar", action="store_true", help="ciii: skip the bar involution on P^sing")

    cs = sub.add_parser("casestudy", parents=[common], help="S(5,5) principal block pipeline")
    cs.add_argument("action", choices=["run", "export-data"])

    co = sub.add_parser("corpus", parents=[common], help="generate or test the property corpus")
    co.add_argument("action", choices=["generate", "test"])
    co.add_argument("--seed", type=int, default=0)
    co.add_argument("--limit", type=int, default=None, help="sample this many algebras")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    from .kl import LengthBoundExceeded

    try:
        cfg = RunConfig(args.subcommand, [getattr(args, "spec", None)], _degree(args), args.format,
                        getattr(args, "seed", 0), args.jobs or os.cpu_count() or 1, args.out)
        if args.subcommand == "check":
            return cmd_check(cfg, args.property, args.n)
        if args.subcommand == "kl":
            return cmd_kl(cfg, args)
        if args.subcommand == "casestudy":
            return cmd_casestudy(cfg, args.action)
        if args.subcommand == "corpus":
            return cmd_corpus(cfg, args.action, args.limit)
    except (InputError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LengthBoundExceeded, OverflowError) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except BrokenPipeError:
        # reader closed the pipe early (e.g. `| head`); stop quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
