from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grex.corpus import PROPERTIES, generate_corpus, run_corpus, run_properties
from grex.gradalg import QuiverSpec, build_algebra

FULL = generate_corpus()


def test_corpus_shape():
    assert len(FULL) == 928
    assert len({e.name for e in FULL}) == len(FULL)
    assert {e.spec.p for e in FULL} == {2, 3}
    assert max(e.dim for e in FULL) <= 40
    assert max(len(e.spec.vertices) for e in FULL) <= 3
    assert generate_corpus() [0].name == FULL[0].name


def test_corpus_is_deterministic_and_sampling_is_seeded():
    a = [e.name for e in generate_corpus(limit=20, seed=5)]
    b = [e.name for e in generate_corpus(limit=20, seed=5)]
    c = [e.name for e in generate_corpus(limit=20, seed=6)]
    assert a == b and a != c and len(a) == 20


def test_entries_roundtrip_through_spec_format():
    for e in FULL[::50]:
        again = QuiverSpec.from_dict(e.spec.to_dict())
        assert build_algebra(again).dim == e.dim


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FULL))
def test_random_entries_have_no_counterexamples(entry):
    out = run_properties(entry.spec, 3)
    assert set(out.results) == set(PROPERTIES)
    assert "counterexample" not in out.results.values(), out.details


def test_sample_run_summary():
    s = run_corpus(generate_corpus(limit=40, seed=1), 3, jobs=1)
    assert s.ok and s.size == 40
    assert all(sum(c.values()) == 40 for c in s.counts.values())
    assert s.counts["ext-sum"]["holds"] == 40
