"""Read the published tables straight out of paper.md for conformance tests."""

from __future__ import annotations

import re
from pathlib import Path

PAPER = (Path(__file__).resolve().parent.parent / "paper.md").read_text()


def tabular_before(anchor: str, text: str = PAPER) -> str:
    end = text.index(anchor)
    start = text.rindex(r"\begin{tabular}", 0, end)
    stop = text.index(r"\end{tabular}", start)
    return text[start:stop]


def tabular_after(anchor: str, text: str = PAPER) -> str:
    pos = text.index(anchor)
    start = text.index(r"\begin{tabular}", pos)
    stop = text.index(r"\end{tabular}", start)
    return text[start:stop]


def rows(tab: str):
    """Rows of a tabular, split on \\hline; cells split on &."""
    body = re.sub(r"^\\begin\{tabular\}\{[^}]*\}", "", tab)
    out = []
    for raw in body.split(r"\hline"):
        raw = re.sub(r"\\\\\s*$", "", raw.strip()).strip()
        if raw:
            out.append([c.strip() for c in raw.split("&")])
    return out


def labels(cell: str, prefix=r"L'?"):
    return [int(x) for x in re.findall(prefix + r"\((\d)\)", cell)]


def graded_labels(cell: str):
    return [(int(a), int(b or 0)) for a, b in re.findall(r"Delta'?\((\d)\)(?:\\langle\s*(\d)\\rangle)?", cell)]


def integers(cell: str):
    return [int(x) for x in re.findall(r"-?\d+", cell)]


def resolutions(anchor: str, text: str = PAPER):
    """Parse a cases-display of resolutions 0 → ... → P → Δ(λ) → 0."""
    pos = text.index(anchor)
    start = text.index(r"\begin{cases}", pos)
    stop = text.index(r"\end{cases}", start)
    block = text[start + len(r"\begin{cases}"):stop]
    out = {}
    for line in re.split(r"\\\\", block):
        parts = [p.strip() for p in re.split(r"\\to(?![a-z])", line)]
        parts = [p for p in parts if p.rstrip(".") not in ("", "0")]
        if not parts:
            continue
        target = int(re.findall(r"Delta'?\((\d)\)", parts[-1])[0])
        terms = []
        for p in reversed(parts[:-1]):
            terms.append([(int(a), int(b or 0))
                          for a, b in re.findall(r"P'?\((\d)\)(?:\\langle\s*(\d)\\rangle)?", p)])
        out[target] = terms
    return out
