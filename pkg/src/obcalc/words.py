"""Dehn twist words on the once-punctured torus T0.

Conventions (used consistently by every module):

* a word ``w1 w2`` means "apply w1, then w2";
* the algebraic intersection pairing on H_1(T0) = Z<a, b> is <a, b> = -1;
* a right-handed twist acts by x -> x + <x, c> c.

With these, the homology action of a word is an anti-homomorphism:
``homology_action(w1 * w2) == homology_action(w2) @ homology_action(w1)``,
and the word ``h^-1 T_b h`` is the twist along ``homology_action(h) b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .garside import GarsideNF, normal_form_of_letters


@dataclass(frozen=True, order=True)
class CurveClass:
    """A primitive homology class (p, q) = p a + q b, taken up to sign."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if gcd(p, q) != 1:
            raise ValueError(f"curve class ({p},{q}) is not primitive")
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def is_generator(self) -> bool:
        return self in (A_CURVE, B_CURVE)

    def __str__(self) -> str:
        if self == A_CURVE:
            return "a"
        if self == B_CURVE:
            return "b"
        return f"T({self.p},{self.q})"


A_CURVE = CurveClass(1, 0)
B_CURVE = CurveClass(0, 1)


def intersection(x: tuple[int, int], y: tuple[int, int]) -> int:
    """Algebraic intersection <x, y> with <a, b> = -1."""
    return -(x[0] * y[1] - x[1] * y[0])


Letter = tuple[CurveClass, int]


@dataclass(frozen=True)
class TwistWord:
    """A freely reduced word of Dehn twists, read left to right."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def of(cls, *letters: Letter) -> TwistWord:
        return cls(tuple(letters))

    @classmethod
    def parse(cls, text: str) -> TwistWord:
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: TwistWord) -> TwistWord:
        return compose(self, other)

    def __pow__(self, k: int) -> TwistWord:
        if k < 0:
            return invert(self) ** -k
        return TwistWord(self.letters * k)

    def __invert__(self) -> TwistWord:
        return invert(self)

    @property
    def curves(self) -> frozenset[CurveClass]:
        return frozenset(c for c, _ in self.letters)

    @property
    def over_generators(self) -> bool:
        return all(c.is_generator for c, _ in self.letters)

    def twist_count(self) -> tuple[int, int]:
        """(number of positive twists, number of negative twists), with multiplicity."""
        pos = sum(k for _, k in self.letters if k > 0)
        neg = sum(-k for _, k in self.letters if k < 0)
        return pos, neg

    @property
    def is_positive(self) -> bool:
        return all(k > 0 for _, k in self.letters)

    def __str__(self) -> str:
        return format_word(self)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for curve, k in letters:
        if not isinstance(curve, CurveClass):
            raise TypeError(f"expected CurveClass, got {curve!r}")
        k = int(k)
        if out and out[-1][0] == curve:
            k += out.pop()[1]
        if k:
            out.append((curve, k))
    return tuple(out)


def tau(curve: CurveClass | tuple[int, int] | str, k: int = 1) -> TwistWord:
    """The word consisting of one twist T_curve^k."""
    if isinstance(curve, str):
        curve = {"a": A_CURVE, "b": B_CURVE}[curve]
    elif not isinstance(curve, CurveClass):
        curve = CurveClass(*curve)
    return TwistWord(((curve, k),))


def compose(w1: TwistWord, w2: TwistWord) -> TwistWord:
    """w1 then w2."""
    return TwistWord(w1.letters + w2.letters)


def invert(w: TwistWord) -> TwistWord:
    return TwistWord(tuple((c, -k) for c, k in reversed(w.letters)))


# --- text format -------------------------------------------------------------

_TOKEN = re.compile(r"^T\((-?\d+),(-?\d+)\)(?:\^(-?\d+))?$")
_SIMPLE = {"a": (A_CURVE, 1), "A": (A_CURVE, -1), "b": (B_CURVE, 1), "B": (B_CURVE, -1)}


class WordSyntaxError(ValueError):
    pass


def parse_word(text: str) -> TwistWord:
    """Parse ``"a b A T(1,1)^-2"``; tokens are whitespace separated."""
    letters = []
    for token in text.split():
        if token in _SIMPLE:
            letters.append(_SIMPLE[token])
            continue
        match = _TOKEN.match(token.replace(" ", ""))
        if not match:
            raise WordSyntaxError(f"bad word token {token!r}")
        p, q, k = int(match[1]), int(match[2]), int(match[3] or 1)
        try:
            letters.append((CurveClass(p, q), k))
        except ValueError as exc:
            raise WordSyntaxError(str(exc)) from None
    return TwistWord(tuple(letters))


def format_word(w: TwistWord) -> str:
    tokens = []
    for curve, k in w.letters:
        if curve.is_generator:
            symbol = str(curve) if k > 0 else str(curve).upper()
            tokens.extend([symbol] * abs(k))
        else:
            tokens.append(f"T({curve.p},{curve.q})" + (f"^{k}" if k != 1 else ""))
    return " ".join(tokens)


# --- homology ----------------------------------------------------------------


@dataclass(frozen=True)
class SL2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows} is not 1")

    @classmethod
    def identity(cls) -> SL2:
        return cls(1, 0, 0, 1)

    @classmethod
    def of(cls, rows) -> SL2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        if isinstance(other, SL2):
            return SL2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        x, y = other
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def inverse(self) -> SL2:
        return SL2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> SL2:
        base = self if k >= 0 else self.inverse()
        out = SL2.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def __neg__(self) -> SL2:
        # -M has determinant 1 in dimension 2
        return SL2(-self.a, -self.b, -self.c, -self.d)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def twist_matrix(c: CurveClass) -> SL2:
    """Matrix of x -> x + <x, c> c in the basis (a, b)."""
    p, q = c.vector
    # columns are images of a and b
    ia = intersection((1, 0), (p, q))
    ib = intersection((0, 1), (p, q))
    return SL2(1 + ia * p, ib * p, ia * q, 1 + ib * q)


def homology_action(w: TwistWord) -> SL2:
    out = SL2.identity()
    for curve, k in w.letters:
        out = twist_matrix(curve) ** k @ out
    return out


def apply_to_class(w: TwistWord, c: CurveClass) -> CurveClass:
    return CurveClass(*(homology_action(w) @ c.vector))


# --- braid group B3 ----------------------------------------------------------


def _generator_letters(w: TwistWord) -> list[tuple[int, int]]:
    out = []
    for curve, k in w.letters:
        if curve == A_CURVE:
            out.append((1, k))
        elif curve == B_CURVE:
            out.append((2, k))
        else:
            raise ValueError(f"letter T_{curve} is not a generator twist; expand conjugates first")
    return out


def garside_normal_form(w: TwistWord) -> GarsideNF:
    """Left normal form in B3 with sigma_1 = T_a, sigma_2 = T_b."""
    return normal_form_of_letters(_generator_letters(w))


def words_equal(w1: TwistWord, w2: TwistWord) -> bool:
    return garside_normal_form(w1) == garside_normal_form(w2)


def nf_to_word(nf: GarsideNF) -> TwistWord:
    """A generator word representing a normal form (Delta = a b a)."""
    letters = []
    delta = [(A_CURVE, 1), (B_CURVE, 1), (A_CURVE, 1)]
    delta_inv = [(c, -k) for c, k in reversed(delta)]
    letters += (delta if nf.delta_power > 0 else delta_inv) * abs(nf.delta_power)
    for factor in nf.factors:
        letters += [(A_CURVE if g == 1 else B_CURVE, 1) for g in factor.generators]
    return TwistWord(tuple(letters))


# --- conjugate expansion -----------------------------------------------------


def _reducing_word(c: CurveClass) -> tuple[TwistWord, CurveClass]:
    """Return (h, base) with base in {a, b} and apply_to_class(h, base) == c.

    Runs a nearest-integer Euclidean algorithm on (p, q) with powers of T_a
    (which move p) and T_b (which move q); ties prefer T_a.
    """
    v = c.vector
    steps: list[tuple[CurveClass, int]] = []
    while CurveClass(*v) not in (A_CURVE, B_CURVE):
        p, q = v
        options = []
        if q:
            # T_a^k sends (p, q) to (p + k q, q)
            k = -_round_div(p, q)
            if k:
                options.append((abs(p + k * q) + abs(q), 0, A_CURVE, k))
        if p:
            # T_b^k sends (p, q) to (p, q - k p)
            k = _round_div(q, p)
            if k:
                options.append((abs(p) + abs(q - k * p), 1, B_CURVE, k))
        _, _, curve, k = min(options)
        v = twist_matrix(curve) ** k @ v
        steps.append((curve, k))
    base = CurveClass(*v)
    # c = M_1^-1 ... M_r^-1 base; as a left-to-right word that is M_r^-1 ... M_1^-1
    h = TwistWord(tuple((curve, -k) for curve, k in reversed(steps)))
    return h, base


def _round_div(x: int, y: int) -> int:
    """Nearest integer to x / y, halves rounded toward zero."""
    q, r = divmod(x, y)
    if 2 * abs(r) > abs(y) or (2 * abs(r) == abs(y) and q < 0):
        q += 1
    return q


def conjugating_word(c: CurveClass) -> tuple[TwistWord, CurveClass]:
    """The word h and generator curve used to expand T_c as h^-1 T_base h."""
    return _reducing_word(c)


def expand_conjugates(w: TwistWord) -> TwistWord:
    """Rewrite every non-generator letter T_c^k as h^-1 T_base^k h."""
    out = TwistWord()
    for curve, k in w.letters:
        if curve.is_generator:
            out = out * TwistWord(((curve, k),))
            continue
        h, base = _reducing_word(curve)
        out = out * invert(h) * TwistWord(((base, k),)) * h
    return out


# --- the family phi_m --------------------------------------------------------

A_PLUS_B = CurveClass(1, 1)
A_MINUS_B = CurveClass(1, -1)


def _check_m(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"family parameter m must be a non-negative integer, got {m!r}")
    return int(m)


def phi_family(m: int) -> TwistWord:
    """(T_a T_b)^3 T_a^(-m-4)."""
    m = _check_m(m)
    return (tau("a") * tau("b")) ** 3 * tau("a", -m - 4)


def factored_phi(m: int) -> TwistWord:
    """T_(a+b) T_(a-b) T_a^-m, kept with its non-generator letters."""
    m = _check_m(m)
    return tau(A_PLUS_B) * tau(A_MINUS_B) * tau("a", -m)
