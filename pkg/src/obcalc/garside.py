"""Left Garside normal form in the braid group B3.

An element is stored as Delta^p x_1 ... x_k where the x_i are permutation
braids (positive braids in which each pair of strands crosses at most once).
B3 has six of them, one per element of S3, so all lattice operations are
done by table lookup over permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

Perm = tuple[int, int, int]

_IDENTITY: Perm = (0, 1, 2)


def _transposition(i: int) -> Perm:
    p = [0, 1, 2]
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _compose(p: Perm, q: Perm) -> Perm:
    # braid product x*y maps to perm(x) o perm(y); homomorphic in this order
    return tuple(p[q[i]] for i in range(3))


def _length(p: Perm) -> int:
    return sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])


@dataclass(frozen=True, order=True)
class Simple:
    """A permutation braid, named by its reduced generator word."""

    generators: tuple[int, ...]

    @property
    def perm(self) -> Perm:
        p = _IDENTITY
        for g in self.generators:
            p = _compose(p, _transposition(g))
        return p

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        if not self.generators:
            return "e"
        if self.generators == (1, 2, 1):
            return "Delta"
        return "".join(f"s{g}" for g in self.generators)


E = Simple(())
S1 = Simple((1,))
S2 = Simple((2,))
S1S2 = Simple((1, 2))
S2S1 = Simple((2, 1))
DELTA = Simple((1, 2, 1))

SIMPLES = (E, S1, S2, S1S2, S2S1, DELTA)
_BY_PERM = {s.perm: s for s in SIMPLES}
assert len(_BY_PERM) == 6 and set(_BY_PERM) == set(permutations(range(3)))


@lru_cache(maxsize=None)
def product(x: Simple, y: Simple) -> Simple | None:
    """x*y if it is again a permutation braid (lengths add), else None."""
    p = _compose(x.perm, y.perm)
    if _length(p) != len(x) + len(y):
        return None
    return _BY_PERM[p]


@lru_cache(maxsize=None)
def left_divides(x: Simple, y: Simple) -> bool:
    return any(product(x, z) == y for z in SIMPLES)


@lru_cache(maxsize=None)
def complement(x: Simple) -> Simple:
    """The simple element z with x*z = Delta."""
    return next(z for z in SIMPLES if product(x, z) == DELTA)


@lru_cache(maxsize=None)
def flip(x: Simple) -> Simple:
    """Conjugation by Delta, swapping sigma_1 and sigma_2."""
    return Simple(tuple(3 - g for g in x.generators))


@lru_cache(maxsize=None)
def left_descents(x: Simple) -> frozenset[int]:
    return frozenset(g for g in (1, 2) if left_divides(Simple((g,)), x))


@lru_cache(maxsize=None)
def right_descents(x: Simple) -> frozenset[int]:
    return frozenset(g for g in (1, 2) if any(product(z, Simple((g,))) == x for z in SIMPLES))


def is_left_weighted(x: Simple, y: Simple) -> bool:
    return left_descents(y) <= right_descents(x)


@lru_cache(maxsize=None)
def _left_weight(x: Simple, y: Simple) -> tuple[Simple, Simple]:
    """Rewrite the pair so that x absorbs the largest possible prefix of y."""
    best = E
    for t in SIMPLES:
        if len(t) > len(best) and left_divides(t, y) and product(x, t) is not None:
            best = t
    rest = next(z for z in SIMPLES if product(best, z) == y)
    return product(x, best), rest


@dataclass(frozen=True)
class GarsideNF:
    delta_power: int
    factors: tuple[Simple, ...] = ()

    def __post_init__(self):
        for f in self.factors:
            if f in (E, DELTA):
                raise ValueError("normal form factors must be proper simple elements")
        for x, y in zip(self.factors, self.factors[1:]):
            if not is_left_weighted(x, y):
                raise ValueError(f"factors {x}, {y} are not left-weighted")

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors)
        return f"Delta^{self.delta_power}" + (f" {body}" if body else "")

    def to_json(self) -> dict:
        return {"delta_power": self.delta_power, "factors": [str(f) for f in self.factors]}


class _Builder:
    """Mutable accumulator for Delta^p x_1 ... x_k, multiplied on the right."""

    def __init__(self):
        self.power = 0
        self.factors: list[Simple] = []

    def times_simple(self, s: Simple) -> None:
        if s == E:
            return
        self.factors.append(s)
        for j in range(len(self.factors) - 1, 0, -1):
            x, y = self.factors[j - 1], self.factors[j]
            if is_left_weighted(x, y):
                break
            self.factors[j - 1], self.factors[j] = _left_weight(x, y)
        while self.factors and self.factors[0] == DELTA:
            self.factors.pop(0)
            self.power += 1
        while self.factors and self.factors[-1] == E:
            self.factors.pop()

    def times_inverse_generator(self, g: int) -> None:
        # X sigma_g^-1 = X complement(sigma_g) Delta^-1 = Delta^-1 flip(X) flip(complement(sigma_g))
        self.power -= 1
        self.factors = [flip(f) for f in self.factors]
        self.times_simple(flip(complement(Simple((g,)))))

    def result(self) -> GarsideNF:
        return GarsideNF(self.power, tuple(self.factors))


def normal_form_of_letters(letters: list[tuple[int, int]]) -> GarsideNF:
    """Normal form of a product of sigma_g^k, given as (g, k) pairs with g in {1, 2}."""
    builder = _Builder()
    for g, k in letters:
        if g not in (1, 2):
            raise ValueError(f"B3 has generators 1 and 2, got {g}")
        for _ in range(abs(k)):
            if k > 0:
                builder.times_simple(Simple((g,)))
            else:
                builder.times_inverse_generator(g)
    return builder.result()
