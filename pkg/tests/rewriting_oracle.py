"""Bounded breadth-first rewriting search in B3 = <a, b | aba = bab>.

Independent of the Garside code: states are freely reduced strings over
a, b, A, B (capitals are inverses). One move replaces a factor u by x^-1
wherever u x is a cyclic permutation of the relator abaBAB or of its
inverse, or inserts a whole relator; the result is freely reduced and kept
if its length stays within the bound. Two words are declared equal when one
is reachable from the other.
"""

from __future__ import annotations

import random
from collections import deque

from obcalc.words import A_CURVE, B_CURVE, TwistWord

RELATOR = "abaBAB"
_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}


def inverse(s: str) -> str:
    return "".join(_INV[ch] for ch in reversed(s))


def free_reduce(s: str) -> str:
    out: list[str] = []
    for ch in s:
        if out and out[-1] == _INV[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _rules() -> dict[str, set[str]]:
    cyclic = set()
    for r in (RELATOR, inverse(RELATOR)):
        for i in range(len(r)):
            cyclic.add(r[i:] + r[:i])
    rules: dict[str, set[str]] = {}
    for r in cyclic:
        for k in range(1, len(r) + 1):
            u, x = r[:k], r[k:]
            rules.setdefault(u, set()).add(inverse(x))
    return rules


RULES = _rules()
INSERTIONS = sorted(u for u in RULES if len(u) == len(RELATOR))
_MAX_U = max(len(u) for u in RULES)


def splice(left: str, middle: str, right: str) -> str:
    """free_reduce(left + middle + right) for freely reduced left, middle and right."""
    middle = free_reduce(middle)
    i = 0
    while i < len(middle) and left and _INV[left[-1]] == middle[i]:
        left = left[:-1]
        i += 1
    middle = middle[i:]
    if middle:
        j = len(middle)
        while j > 0 and right and _INV[middle[j - 1]] == right[0]:
            right = right[1:]
            j -= 1
        middle = middle[:j]
        if middle:
            return left + middle + right
    return free_reduce(left + right)


def neighbours(s: str, bound: int):
    n = len(s)
    for i in range(n):
        for k in range(1, min(_MAX_U, n - i) + 1):
            repl = RULES.get(s[i:i + k])
            if not repl:
                continue
            for v in repl:
                t = splice(s[:i], v, s[i + k:])
                if len(t) <= bound:
                    yield t
    if n + 6 <= bound:
        for i in range(n + 1):
            for r in INSERTIONS:
                t = splice(s[:i], r, s[i:])
                if len(t) <= bound:
                    yield t


def component(start: str, bound: int) -> set[str]:
    start = free_reduce(start)
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in neighbours(s, bound):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


class ComponentIndex:
    """Memoized map from reduced word to the id of its bounded component."""

    def __init__(self, bound: int = 14):
        self.bound = bound
        self.ids: dict[str, int] = {}
        self.members: list[set[str]] = []

    def __call__(self, word: str) -> int:
        w = free_reduce(word)
        if w not in self.ids:
            comp = component(w, self.bound)
            cid = len(self.members)
            self.members.append(comp)
            for s in comp:
                self.ids.setdefault(s, cid)
        return self.ids[w]


def to_twist_word(s: str) -> TwistWord:
    table = {"a": (A_CURVE, 1), "A": (A_CURVE, -1), "b": (B_CURVE, 1), "B": (B_CURVE, -1)}
    return TwistWord(tuple(table[ch] for ch in s))


def random_reduced(rng: random.Random, max_len: int) -> str:
    return free_reduce("".join(rng.choice("abAB") for _ in range(rng.randint(0, max_len))))


def pooled_sample(
    index: ComponentIndex, rng: random.Random, bases: int, max_len: int = 8, per_class: int = 5
) -> list[str]:
    """Words of length <= max_len, several per class, so that many pairs are equal."""
    pool: list[str] = []
    used: set[int] = set()
    tries = 0
    while len(used) < bases and tries < 20 * bases:
        tries += 1
        w = random_reduced(rng, max_len)
        cid = index(w)
        if cid in used:
            continue
        used.add(cid)
        short = sorted(s for s in index.members[cid] if len(s) <= max_len)
        rng.shuffle(short)
        pool.extend(short[:per_class])
    return pool


_STANDARD: dict = {}


def standard_sample(seed: int = 2024, bases: int = 24, bound: int = 14) -> tuple[ComponentIndex, list[str]]:
    """The shared sample: about 24 classes, 5 words each, so well over 10^4 ordered pairs."""
    key = (seed, bases, bound)
    if key not in _STANDARD:
        index = ComponentIndex(bound)
        pool = pooled_sample(index, random.Random(seed), bases)
        _STANDARD[key] = (index, pool)
    return _STANDARD[key]


def check_pairs(index: ComponentIndex, pool: list[str], words_equal) -> tuple[int, int, list[tuple[str, str]]]:
    """Compare words_equal with the oracle on all ordered pairs; returns (pairs, equal pairs, mismatches)."""
    tw = {s: to_twist_word(s) for s in pool}
    pairs = equal = 0
    mismatches = []
    for s in pool:
        for t in pool:
            pairs += 1
            oracle = index(s) == index(t)
            equal += oracle
            if words_equal(tw[s], tw[t]) != oracle:
                mismatches.append((s, t))
    return pairs, equal, mismatches
