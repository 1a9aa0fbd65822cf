"""Exact integer and rational linear algebra.

Everything here works over Python ints and :class:`fractions.Fraction`, so
results are exact at any size.  Matrices are small (surgery presentations),
so the algorithms are the plain textbook ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence


class SingularMatrixError(ValueError):
    """Raised when a linear solve is asked of a singular matrix."""


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls.of([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> IntMatrix:
        return IntMatrix.of(zip(*self.entries))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        return IntMatrix.of([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries])

    def diagonal_entries(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_lists()}

    @classmethod
    def from_json(cls, data: dict) -> IntMatrix:
        matrix = cls.of(data["entries"])
        if (matrix.rows, matrix.cols) != (data.get("rows", matrix.rows), data.get("cols", matrix.cols)):
            raise ValueError("declared shape does not match entries")
        for row in data["entries"]:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValueError(f"matrix entries must be integers, got {x!r}")
        return matrix


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum of Z/d_i with d_1 | d_2 | ..."""

    invariant_factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"divisibility chain broken: {factors}")
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None for an infinite group."""
        return prod(self.invariant_factors) if self.is_finite else None

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) + self.free_rank <= 1

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank}


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U @ A @ V == D, U and V unimodular.

    D is diagonal (rectangular, same shape as A) with non-negative entries
    d_1 | d_2 | ... ; zero entries come last.
    """
    m, n = A.rows, A.cols
    D = A.to_lists()
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    return IntMatrix.of(D), IntMatrix.of(U), IntMatrix.of(V)


def homology_from_presentation(A: IntMatrix) -> AbelianGroup:
    """Cokernel of A viewed as a map Z^cols -> Z^rows (relations are columns).

    For a symmetric linking matrix this is H_1 of the surgered manifold.
    """
    D, _, _ = smith_normal_form(A)
    diag = D.diagonal_entries()
    factors = tuple(d for d in diag if d > 1)
    free = sum(1 for d in diag if d == 0) + (A.rows - len(diag))
    return AbelianGroup(factors, free)


def determinant(A: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not A.is_square:
        raise ValueError("determinant of a non-square matrix")
    M = A.to_lists()
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def signature(S: IntMatrix) -> int:
    """Signature of a symmetric integer matrix via rational congruence diagonalization.

    A non-zero diagonal pivot contributes its sign; when every remaining
    diagonal entry is zero, a 2x2 block [[0, c], [c, 0]] is split off and
    contributes one positive and one negative square.
    """
    if not S.is_symmetric:
        raise ValueError("signature requires a symmetric matrix")
    M = [[Fraction(x) for x in row] for row in S.entries]
    pos = neg = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i] != 0), None)
        if k is not None:
            pivot = M[k][k]
            if pivot > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            M = [[M[i][j] - M[i][k] * M[k][j] / pivot for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j] != 0), None)
        if pair is None:
            break  # zero block: null directions only
        i, j = pair
        pos += 1
        neg += 1
        c = M[i][j]
        # inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]]
        rest = [r for r in range(n) if r not in (i, j)]
        M = [
            [M[r][s] - (M[r][i] * M[j][s] + M[r][j] * M[i][s]) / c for s in rest]
            for r in rest
        ]
    return pos - neg


def solve_rational(A: IntMatrix, b: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve A x = b exactly.  Raises SingularMatrixError if det(A) == 0."""
    if not A.is_square:
        raise ValueError("solve_rational needs a square matrix")
    n = A.rows
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A.entries, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def matvec(A: IntMatrix, x: Sequence[Fraction | int]) -> list[Fraction]:
    return [sum((Fraction(a) * xi for a, xi in zip(row, x)), Fraction(0)) for row in A.entries]
