"""Acceptance criteria 1-9, one check each, all exact.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from rewriting_oracle import check_pairs, standard_sample  # noqa: E402

from obcalc.certify import theorem_report, verify_certificate  # noqa: E402
from obcalc.contact import (  # noqa: E402
    ContactSurgeryDiagram,
    HandleSummary,
    LegendrianUnknot,
    OpenBook,
    contact_to_smooth,
    d3,
    figure3_diagram,
    openbook_to_handles,
)
from obcalc.exactlinalg import IntMatrix, determinant, matvec, signature, smith_normal_form, solve_rational  # noqa: E402
from obcalc.seifert import (  # noqa: E402
    SMALL_SFS,
    classify_three_binding,
    e0_requires_two_negative,
    right_veering_boundary_twists,
    seifert_linking_matrix,
    ym_seifert,
)
from obcalc.words import (  # noqa: E402
    SL2,
    expand_conjugates,
    factored_phi,
    homology_action,
    phi_family,
    tau,
    words_equal,
)

M_RANGE = range(21)
RESULTS: dict[int, tuple[bool, str]] = {}


def criterion_1() -> tuple[bool, str]:
    bad = [m for m in M_RANGE if not words_equal(phi_family(m), expand_conjugates(factored_phi(m)))]
    return not bad, f"phi_m = T_(a+b) T_(a-b) T_a^-m in B3 for m = 0..20; failures {bad}"


def criterion_2() -> tuple[bool, str]:
    ab = homology_action(tau("a") * tau("b"))
    ok = ab @ ab @ ab == -SL2.identity()
    bad = []
    for m in M_RANGE:
        target = SL2(-1, m + 4, 0, -1)
        if not homology_action(phi_family(m)) == homology_action(factored_phi(m)) == target:
            bad.append(m)
    return ok and not bad, f"(T_a T_b)^3 -> -I: {ok}; phi_m -> [[-1, m+4], [0, -1]] failures {bad}"


def criterion_3() -> tuple[bool, str]:
    bad = []
    for m in M_RANGE:
        summary = openbook_to_handles(OpenBook.torus(factored_phi(m)))
        if summary != HandleSummary(2, (1,) * m + (-2, 0)) or summary.one_handles != 2:
            bad.append(m)
    return not bad, f"two 1-handles, m x (+1), -2, 0 for m = 0..20; failures {bad}"


def criterion_4() -> tuple[bool, str]:
    bad = [m for m in range(1, 21) if d3(figure3_diagram(m)) != Fraction(-m, 4)]
    empty = d3(ContactSurgeryDiagram())
    single = d3(ContactSurgeryDiagram((LegendrianUnknot(-1, 0, -1),), ((0,),)))
    # hand oracle for the single component: (0 - 3(-1) - 2*2)/4 + 0 + 1/2
    hand = Fraction(0 + 3 - 4, 4) + Fraction(1, 2)
    ok = not bad and empty == 0 and single == hand == Fraction(1, 4)
    return ok, f"d3 = -m/4 for m = 1..20 (failures {bad}); d3(empty) = {empty}; d3(tb -1, rot 0, -1) = {single}"


def criterion_5() -> tuple[bool, str]:
    bad = []
    for m in M_RANGE:
        star = abs(determinant(seifert_linking_matrix(ym_seifert(m))))
        if star != 4:
            bad.append(m)
        if m >= 1 and abs(determinant(contact_to_smooth(figure3_diagram(m)).linking_matrix)) != star:
            bad.append(m)
    return not bad, f"|det| = 4 for the star presentation and the surgery diagram; failures {sorted(set(bad))}"


def _floor_oracle(x: int) -> int:
    return math.floor(Fraction(-1, x))


def criterion_6() -> tuple[bool, str]:
    mismatches = 0
    for p, q, r in product(range(-10, 11), repeat=3):
        c = classify_three_binding(p, q, r)
        if {0, 1, -1} & {p, q, r}:
            mismatches += c.tag == SMALL_SFS
        else:
            mismatches += c.e0 != _floor_oracle(p) + _floor_oracle(q) + _floor_oracle(r)
    two_negative = e0_requires_two_negative(-1, 10)
    values = [x for x in range(-10, 11) if abs(x) >= 2]
    veering = [t for t in product(values, repeat=3) if sum(x < 0 for x in t) == 2 and right_veering_boundary_twists(t)]
    ok = mismatches == 0 and two_negative and not veering
    return ok, f"classifier mismatches {mismatches}; e0 = -1 needs two negatives: {two_negative}; right-veering two-negative triples {len(veering)}"


def criterion_7() -> tuple[bool, str]:
    bad = []
    for m in M_RANGE:
        c = theorem_report(m)
        fine = (
            c.sn_value == 1
            and c.sg_value == 0
            and c.bn_lower >= 3
            and c.bn_upper == m + 5
            and c.stein_fillable == (m == 0)
            and c.strict
            and not c.unverified_computed()
            and not verify_certificate(c)
        )
        if not fine:
            bad.append(m)
    return not bad, f"sn 1, sg 0, bn in (3, m+5], Stein iff m = 0, strict, all computed steps verified; failures {bad}"


def _charpoly_signature(S: IntMatrix) -> int:
    lam = sympy.Symbol("lam")
    coeffs = [int(c) for c in sympy.Matrix(S.to_lists()).charpoly(lam).all_coeffs()]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()

    def changes(cs):
        signs = [c > 0 for c in cs if c]
        return sum(x != y for x, y in zip(signs, signs[1:]))

    deg = len(coeffs) - 1
    return changes(coeffs) - changes([c * (-1) ** (deg - i) for i, c in enumerate(coeffs)])


def criterion_8() -> tuple[bool, str]:
    rng = random.Random(8)
    snf_bad = 0
    for _ in range(500):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = IntMatrix.of([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        D, U, V = smith_normal_form(A)
        diag = D.diagonal_entries()
        ok = U @ A @ V == D and abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        ok = ok and all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
        ok = ok and all((y == 0) if x == 0 else y % x == 0 for x, y in zip(diag, diag[1:]))
        snf_bad += not ok
    sig_bad = 0
    for _ in range(200):
        n = rng.randint(1, 5)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-5, 5)
        S = IntMatrix.of(rows)
        sig_bad += signature(S) != _charpoly_signature(S)
    solve_bad = solved = 0
    while solved < 200:
        n = rng.randint(1, 5)
        A = IntMatrix.of([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        if determinant(A) == 0:
            continue
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        solve_bad += matvec(A, solve_rational(A, b)) != b
        solved += 1
    ok = snf_bad == sig_bad == solve_bad == 0
    return ok, f"SNF failures {snf_bad}/500; signature mismatches {sig_bad}/200; nonzero residuals {solve_bad}/200"


def criterion_9() -> tuple[bool, str]:
    index, pool = standard_sample()
    pairs, equal, mismatches = check_pairs(index, pool, words_equal)
    ok = pairs >= 10**4 and not mismatches
    return ok, f"{pairs} ordered pairs ({equal} equal) of words with <= 8 letters, rewriting bound 14; disagreements {len(mismatches)}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def summary_lines() -> list[str]:
    return [f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}" for i, (ok, detail) in sorted(RESULTS.items())]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    RESULTS[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


if __name__ == "__main__":
    for i, check in CRITERIA.items():
        RESULTS[i] = check()
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
