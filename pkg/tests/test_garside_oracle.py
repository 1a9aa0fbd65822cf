from __future__ import annotations

import random

from rewriting_oracle import (
    RELATOR,
    ComponentIndex,
    check_pairs,
    component,
    free_reduce,
    standard_sample,
    to_twist_word,
)

from obcalc.words import garside_normal_form, words_equal


def test_oracle_sees_braid_relation():
    index = ComponentIndex(10)
    assert index("aba") == index("bab")
    assert index(RELATOR) == index("")
    assert index("a") != index("b")
    assert index("ab") != index("ba")


def test_oracle_components_are_closed_under_inverse_relator():
    comp = component("ab", 8)
    assert "ab" in comp
    assert all(len(s) <= 8 for s in comp)
    assert free_reduce("aAbB") == ""


def test_words_equal_matches_oracle_on_pooled_sample():
    index, pool = standard_sample()
    pairs, equal, mismatches = check_pairs(index, pool, words_equal)
    assert pairs >= 10**4
    assert equal > len(pool)  # the sample includes genuinely different spellings of one braid
    assert mismatches == []


def test_words_equal_matches_oracle_on_random_pairs():
    # words outside the pool but inside already explored components, so no new searches
    index, _ = standard_sample()
    known = sorted(s for s in index.ids if len(s) <= 8)
    rng = random.Random(77)
    for _ in range(2000):
        s, t = rng.choice(known), rng.choice(known)
        assert words_equal(to_twist_word(s), to_twist_word(t)) == (index(s) == index(t))


def test_normal_form_constant_on_components():
    index, pool = standard_sample()
    by_class: dict[int, set] = {}
    for s in pool:
        by_class.setdefault(index(s), set()).add(garside_normal_form(to_twist_word(s)))
    assert all(len(nfs) == 1 for nfs in by_class.values())
    assert len({next(iter(v)) for v in by_class.values()}) == len(by_class)
