"""Seifert fibered data for Y_m and the classification of three-binding planar open books."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactlinalg import AbelianGroup, IntMatrix, determinant, homology_from_presentation

CONNECTED_SUM = "connected_sum_of_lens_spaces"
SMALL_SFS = "small_sfs"


@dataclass(frozen=True)
class SeifertInvariants:
    """M(e0; r_1, ..., r_k) with every r_i in (0, 1), kept sorted."""

    e0: int
    multiplicities: tuple[Fraction, ...]

    def __post_init__(self):
        rs = tuple(sorted(Fraction(r) for r in self.multiplicities))
        for r in rs:
            if not 0 < r < 1:
                raise ValueError(f"Seifert invariant {r} is not in (0, 1)")
        object.__setattr__(self, "multiplicities", rs)

    @property
    def euler_number(self) -> Fraction:
        return self.e0 + sum(self.multiplicities, Fraction(0))

    def __str__(self) -> str:
        return f"M({self.e0}; " + ", ".join(str(r) for r in self.multiplicities) + ")"

    def to_json(self) -> dict:
        return {"e0": self.e0, "multiplicities": [str(r) for r in self.multiplicities]}

    @classmethod
    def from_json(cls, data: dict) -> SeifertInvariants:
        return cls(int(data["e0"]), tuple(Fraction(r) for r in data["multiplicities"]))


def ym_seifert(m: int) -> SeifertInvariants:
    """Y_m = M(-1; 1/2, 1/2, 1/(m+2))."""
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"m must be a non-negative integer, got {m!r}")
    return SeifertInvariants(-1, (Fraction(1, 2), Fraction(1, 2), Fraction(1, m + 2)))


def arm_framings(r: Fraction) -> list[int]:
    """Framings of the chain for one singular fiber: -1/r = [a_1, a_2, ...], a_i <= -2."""
    x = -1 / Fraction(r)
    out = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        if a == x:
            return out
        x = 1 / (a - x)


def seifert_linking_matrix(si: SeifertInvariants) -> IntMatrix:
    """Star-shaped plumbing: a central e0-framed unknot, one chain per singular fiber."""
    framings = [si.e0]
    edges = []
    for r in si.multiplicities:
        attach = 0
        for a in arm_framings(r):
            framings.append(a)
            edges.append((attach, len(framings) - 1))
            attach = len(framings) - 1
    n = len(framings)
    rows = [[0] * n for _ in range(n)]
    for i, f in enumerate(framings):
        rows[i][i] = f
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return IntMatrix.of(rows)


def seifert_homology(si: SeifertInvariants) -> AbelianGroup:
    return homology_from_presentation(seifert_linking_matrix(si))


# --- three-binding planar open books -----------------------------------------


@dataclass(frozen=True)
class ManifoldClass:
    tag: str
    pqr: tuple[int, int, int]
    e0: int | None = None
    rule: str = ""

    def to_json(self) -> dict:
        out = {"tag": self.tag, "pqr": list(self.pqr), "rule": self.rule}
        if self.e0 is not None:
            out["e0"] = self.e0
        return out


def _floor_neg_reciprocal(x: int) -> int:
    # floor(-1/x) for an integer x with |x| >= 2: -1 if x > 0, else 0
    return (-1) // x


def classify_three_binding(p: int, q: int, r: int) -> ManifoldClass:
    """The 3-manifold of the planar open book with three binding components and monodromy T_a^p T_b^q T_c^r."""
    pqr = (p, q, r)
    if {0, 1, -1} & set(pqr):
        return ManifoldClass(CONNECTED_SUM, pqr, None, "some exponent in {0, +1, -1}")
    e0 = sum(_floor_neg_reciprocal(x) for x in pqr)
    return ManifoldClass(SMALL_SFS, pqr, e0, "e0 = floor(-1/p) + floor(-1/q) + floor(-1/r)")


def _triples(bound: int):
    values = [x for x in range(-bound, bound + 1) if abs(x) >= 2]
    return product(values, repeat=3)


def e0_requires_two_negative(target_e0: int, bound: int) -> bool:
    """Whether every small-SFS triple with |entries| <= bound and e0 = target has exactly two negatives.

    Vacuous truth is excluded: at least one triple must reach target_e0.
    """
    hits = [t for t in _triples(bound) if classify_three_binding(*t).e0 == target_e0]
    return bool(hits) and all(sum(1 for x in t if x < 0) == 2 for t in hits)


def e0_witnesses(target_e0: int, bound: int) -> dict[int, int]:
    """Count of triples reaching target_e0, keyed by number of negative entries."""
    counts: dict[int, int] = {}
    for t in _triples(bound):
        if classify_three_binding(*t).e0 == target_e0:
            neg = sum(1 for x in t if x < 0)
            counts[neg] = counts.get(neg, 0) + 1
    return counts


def right_veering_boundary_twists(exponents: Sequence[int], boundaries: Sequence[object] | None = None) -> bool:
    """Right-veering test for a product of twists about distinct boundary-parallel curves.

    Each boundary component sees only its own twist, whose sign fixes the
    direction arcs leave that boundary; so the map is right-veering exactly
    when no exponent is negative.
    """
    if boundaries is not None:
        if len(boundaries) != len(exponents):
            raise ValueError("one boundary label per exponent")
        if len(set(boundaries)) != len(boundaries):
            raise ValueError("twist curves must be parallel to distinct boundary components")
    return all(k >= 0 for k in exponents)


# --- lens space exclusion ----------------------------------------------------


@dataclass(frozen=True)
class LensExclusion:
    """Result of the three-singular-fibre test, with H_1 recorded as corroboration."""

    excluded: bool
    singular_fibers: int
    h1: AbelianGroup
    noncyclic: bool

    def __bool__(self) -> bool:
        return self.excluded

    def to_json(self) -> dict:
        return {
            "excluded": self.excluded,
            "singular_fibers": self.singular_fibers,
            "h1": str(self.h1),
            "h1_noncyclic": self.noncyclic,
        }


def not_lens_space_certificate(si: SeifertInvariants) -> LensExclusion:
    """True when si has at least three genuine singular fibres (then it is not a lens space).

    A non-cyclic H_1 is an independent reason, recorded when it occurs.
    """
    singular = sum(1 for r in si.multiplicities if r.denominator >= 2)
    h1 = seifert_homology(si)
    noncyclic = not h1.is_cyclic
    return LensExclusion(singular >= 3, singular, h1, noncyclic)


def star_determinant_formula(si: SeifertInvariants) -> Fraction:
    """(prod d_i) (e0 - sum 1/d_i) for reciprocal multiplicities r_i = 1/|d_i|, d_i = -1/r_i."""
    ds = [-1 / r for r in si.multiplicities]
    out = Fraction(1)
    for d in ds:
        out *= d
    return out * (si.e0 - sum((1 / d for d in ds), Fraction(0)))


def ym_determinant(m: int) -> int:
    return determinant(seifert_linking_matrix(ym_seifert(m)))
