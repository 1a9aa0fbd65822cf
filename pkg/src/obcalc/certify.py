"""Per-m certificates for the support norm, support genus and binding number of xi_m.

A certificate is a tree of steps.  ``computed_witness`` steps name an
operation from :data:`OPS` with its arguments and the result it produced, so
any of them can be re-run by :func:`verify_certificate`.  ``recorded_fact``
steps are results consumed from the literature; they carry a citation and
the status ``assumed``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import contact, seifert, words
from .exactlinalg import determinant

COMPUTED = "computed_witness"
RECORDED = "recorded_fact"
VERIFIED = "verified"
ASSUMED = "assumed"
FAILED = "failed"

SCHEMA = "obcalc.certificate/1"
RV_BOUND = 10

# citation anchors for results used but not computed here
CITE_TIGHT = "Honda-Kazez-Matic, contact class for open books, Thm 4.3"
CITE_PLANAR = "Ghiggini-Lisca-Stipsicz, classification on M(-1; r1, r2, r3), Sec. 4"
CITE_THREE_TIGHT = "Ghiggini-Lisca-Stipsicz, classification on M(-1; r1, r2, r3)"
CITE_FILLABLE = "Ghiggini-Lisca-Stipsicz, Thm 4.13"
CITE_DIAGRAM = (
    "planar fixture figure3.json: reconstruction of the Ghiggini-Lisca-Stipsicz Fig. 7 diagram, "
    "pinned by d3 = -m/4 and |H_1| = 4"
)
CITE_CORRECTION = "Baldwin, Thm 4.1 and Prop. 5.1 (Y_m is an L-space, d = -m/4)"
CITE_GRADING = "Ozsvath-Szabo, contact invariant, Prop. 4.6"
CITE_RIGHT_VEERING = "Honda-Kazez-Matic, right-veering diffeomorphisms"
CITE_GIROUX = "Giroux correspondence"
CITE_STEIN = "Loi-Piergallini / Akbulut-Ozbagci: positive factorizations give Stein fillings"
CITE_LENS = "open books with disk or annulus pages live on S^3, lens spaces or S^1 x S^2"
CITE_SEIFERT_LENS = "a Seifert fibration over S^2 with three singular fibres is not a lens space"
CITE_KIRBY = "handle calculus on X_m: Y_m = M(-1; 1/2, 1/2, 1/(m+2))"
CITE_FIGURE4 = "planar open books with three binding components: surgery description"


# --- re-runnable operations --------------------------------------------------


def _op_torus_page(m: int) -> dict:
    return contact.page_stats(contact.OpenBook.torus(words.phi_family(m))).to_json()


def _op_planar_page(m: int) -> dict:
    ob = contact.figure3_openbook(m)
    return {**contact.page_stats(ob).to_json(), "negative_twists": len(ob.negative_letters())}


def _op_not_lens(m: int) -> dict:
    return seifert.not_lens_space_certificate(seifert.ym_seifert(m)).to_json()


def _op_ym_seifert(m: int) -> dict:
    return seifert.ym_seifert(m).to_json()


def _op_star_det(m: int) -> int:
    return seifert.ym_determinant(m)


def _op_figure3_det(m: int) -> int:
    return determinant(contact.contact_to_smooth(contact.figure3_diagram(m)).linking_matrix)


def _op_figure3_d3(m: int) -> dict:
    return contact.d3_terms(contact.figure3_diagram(m)).to_json()


def _op_factorization(m: int) -> dict:
    phi = words.phi_family(m)
    factored = words.factored_phi(m)
    expanded = words.expand_conjugates(factored)
    return {
        "phi": str(phi),
        "factored": str(factored),
        "equal_in_B3": words.words_equal(phi, expanded),
        "normal_form": words.garside_normal_form(phi).to_json(),
        "homology_action": words.homology_action(phi).to_json(),
    }


def _op_positive_factorization(m: int) -> dict:
    factored = words.factored_phi(m)
    pos, neg = factored.twist_count()
    return {"factored": str(factored), "positive_twists": pos, "negative_twists": neg}


def _op_handles(m: int) -> dict:
    return contact.openbook_to_handles(contact.OpenBook.torus(words.factored_phi(m))).to_json()


def _op_e0_two_negative(target: int, bound: int) -> dict:
    return {
        "holds": seifert.e0_requires_two_negative(target, bound),
        "triples_by_negatives": {str(k): v for k, v in sorted(seifert.e0_witnesses(target, bound).items())},
    }


def _op_right_veering_two_negative(target: int, bound: int) -> dict:
    triples = [
        t for t in seifert._triples(bound)
        if seifert.classify_three_binding(*t).e0 == target
    ]
    veering = [t for t in triples if seifert.right_veering_boundary_twists(t, ("a", "b", "c"))]
    return {"triples": len(triples), "right_veering": len(veering)}


OPS: dict[str, Callable[..., Any]] = {
    "page_stats(torus open book of phi_m)": _op_torus_page,
    "page_stats(figure3_openbook)": _op_planar_page,
    "not_lens_space_certificate(ym_seifert)": _op_not_lens,
    "ym_seifert": _op_ym_seifert,
    "determinant(seifert_linking_matrix)": _op_star_det,
    "determinant(figure3 linking matrix)": _op_figure3_det,
    "d3(figure3_diagram)": _op_figure3_d3,
    "words_equal(phi_m, factored_phi)": _op_factorization,
    "twist signs of factored_phi": _op_positive_factorization,
    "openbook_to_handles(factored_phi)": _op_handles,
    "e0_requires_two_negative": _op_e0_two_negative,
    "right_veering on e0 triples": _op_right_veering_two_negative,
}


# --- steps -------------------------------------------------------------------


@dataclass(frozen=True)
class CertStep:
    claim: str
    kind: str
    evidence: dict = field(default_factory=dict)
    status: str = VERIFIED
    citation: str | None = None
    children: tuple[CertStep, ...] = ()

    def __post_init__(self):
        if self.kind == COMPUTED and not self.children and "op" not in self.evidence:
            raise ValueError(f"computed step {self.claim!r} has no re-runnable evidence")
        if self.kind == RECORDED and not self.citation:
            raise ValueError(f"recorded fact {self.claim!r} has no citation")

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def to_json(self) -> dict:
        out: dict[str, Any] = {"claim": self.claim, "kind": self.kind, "evidence": self.evidence, "status": self.status}
        if self.citation:
            out["citation"] = self.citation
        if self.children:
            out["steps"] = [c.to_json() for c in self.children]
        return out


def computed(claim: str, op: str, args: dict, check: Callable[[Any], bool]) -> CertStep:
    result = OPS[op](**args)
    ok = bool(check(result))
    return CertStep(claim, COMPUTED, {"op": op, "args": args, "result": result}, VERIFIED if ok else FAILED)


def recorded(claim: str, citation: str) -> CertStep:
    return CertStep(claim, RECORDED, {}, ASSUMED, citation)


def combine(claim: str, children: list[CertStep], evidence: dict | None = None) -> CertStep:
    ok = all(c.status != FAILED for c in children)
    return CertStep(claim, COMPUTED, evidence or {}, VERIFIED if ok else FAILED, None, tuple(children))


# --- the three bounds ----------------------------------------------------------


def support_genus_cert(m: int) -> CertStep:
    n = m + 5
    return combine(
        "sg(xi_m) = 0",
        [
            computed(
                f"figure3_openbook({m}) has a planar page with {n} boundary components and one negative twist",
                "page_stats(figure3_openbook)",
                {"m": m},
                lambda r: r["genus"] == 0 and r["boundary_count"] == n and r["negative_twists"] == 1,
            ),
            recorded("this planar open book supports xi_m", CITE_DIAGRAM),
            recorded("every tight contact structure on Y_m is supported by a planar open book", CITE_PLANAR),
        ],
        {"sg": 0},
    )


def _lens_steps(m: int) -> list[CertStep]:
    steps = [
        recorded("Y_m is diffeomorphic to M(-1; 1/2, 1/2, 1/(m+2))", CITE_KIRBY),
        computed(
            "Y_m has three singular fibres, so it is not a lens space",
            "not_lens_space_certificate(ym_seifert)",
            {"m": m},
            lambda r: r["excluded"] and r["singular_fibers"] == 3,
        ),
        recorded("three singular fibres over S^2 exclude lens spaces", CITE_SEIFERT_LENS),
        computed(
            "|det| of the star presentation of Y_m is 4",
            "determinant(seifert_linking_matrix)",
            {"m": m},
            lambda r: abs(r) == 4,
        ),
    ]
    if m >= 1:
        steps.append(
            computed(
                "the contact surgery diagram presents a manifold with |H_1| = 4, matching the star presentation",
                "determinant(figure3 linking matrix)",
                {"m": m},
                lambda r: abs(r) == abs(seifert.ym_determinant(m)) == 4,
            )
        )
    return steps


def support_norm_cert(m: int) -> CertStep:
    return combine(
        "sn(xi_m) = 1",
        [
            computed(
                "xi_m is supported by (T0, phi_m), whose page has -chi = 1, so sn <= 1",
                "page_stats(torus open book of phi_m)",
                {"m": m},
                lambda r: r == {"minus_euler": 1, "genus": 1, "boundary_count": 1},
            ),
            *_lens_steps(m),
            recorded("sn(xi) < 1 forces a disk or annulus page, hence a lens space", CITE_LENS),
        ],
        {"sn": 1, "sn_upper": 1, "sn_lower": 1},
    )


def binding_cert(m: int) -> CertStep:
    upper = m + 5
    not_one_or_two = combine(
        "bn(xi_m) is not 1 or 2",
        [
            recorded("bn is taken over pages of genus sg(xi_m) = 0, so candidates are planar", CITE_GIROUX),
            recorded("planar pages with one or two boundary components occur only on lens spaces", CITE_LENS),
            computed(
                "Y_m is not a lens space",
                "not_lens_space_certificate(ym_seifert)",
                {"m": m},
                lambda r: r["excluded"],
            ),
        ],
    )
    not_three = combine(
        "bn(xi_m) is not 3",
        [
            recorded(
                "a planar open book with three binding components has monodromy T_a^p T_b^q T_c^r "
                "along boundary-parallel curves; for p, q, r outside {0, +1, -1} it is a small "
                "Seifert fibered space with e0 = floor(-1/p) + floor(-1/q) + floor(-1/r)",
                CITE_FIGURE4,
            ),
            computed("Y_m is a small Seifert fibered space with e0 = -1", "ym_seifert", {"m": m},
                     lambda r: r["e0"] == -1 and len(r["multiplicities"]) == 3),
            computed(
                f"every triple with e0 = -1 has exactly two negative exponents (exhaustive to |x| <= {RV_BOUND}; "
                "floor(-1/x) depends only on the sign of x when |x| >= 2)",
                "e0_requires_two_negative",
                {"target": -1, "bound": RV_BOUND},
                lambda r: r["holds"],
            ),
            computed(
                "no such monodromy is right-veering",
                "right_veering on e0 triples",
                {"target": -1, "bound": RV_BOUND},
                lambda r: r["triples"] > 0 and r["right_veering"] == 0,
            ),
            recorded("an open book supporting a tight contact structure has right-veering monodromy", CITE_RIGHT_VEERING),
            recorded("xi_m is tight (its contact class is non-zero)", CITE_TIGHT),
        ],
    )
    return combine(
        f"3 < bn(xi_m) <= {upper}",
        [
            computed(
                f"figure3_openbook({m}) is planar with {upper} binding components",
                "page_stats(figure3_openbook)",
                {"m": m},
                lambda r: r["genus"] == 0 and r["boundary_count"] == upper,
            ),
            not_one_or_two,
            not_three,
        ],
        {"bn_lower_exclusive": 3, "bn_upper": upper},
    )


def stein_cert(m: int) -> CertStep:
    if m == 0:
        return combine(
            "xi_0 is Stein fillable",
            [
                computed(
                    "phi_0 = T_(a+b) T_(a-b) in B3",
                    "words_equal(phi_m, factored_phi)",
                    {"m": 0},
                    lambda r: r["equal_in_B3"],
                ),
                computed(
                    "the factorization T_(a+b) T_(a-b) has only positive twists",
                    "twist signs of factored_phi",
                    {"m": 0},
                    lambda r: r["negative_twists"] == 0,
                ),
                recorded("a positive Dehn twist factorization gives a Stein filling", CITE_STEIN),
            ],
            {"stein_fillable": True},
        )
    return CertStep(
        f"xi_{m} is not Stein fillable (xi_m is Stein fillable if and only if m = 0)",
        RECORDED,
        {"stein_fillable": False},
        ASSUMED,
        CITE_FILLABLE,
    )


def monodromy_cert(m: int) -> CertStep:
    return combine(
        "phi_m = T_(a+b) T_(a-b) T_a^-m and its handlebody",
        [
            computed(
                "phi_m equals the factored word in B3 and acts on H_1 by [[-1, m+4], [0, -1]]",
                "words_equal(phi_m, factored_phi)",
                {"m": m},
                lambda r: r["equal_in_B3"] and r["homology_action"] == [[-1, m + 4], [0, -1]],
            ),
            computed(
                "the handlebody has two 1-handles and 2-handles framed m x (+1), -2, 0",
                "openbook_to_handles(factored_phi)",
                {"m": m},
                lambda r: r["one_handles"] == 2 and sorted(r["framings"]) == sorted([1] * m + [-2, 0]),
            ),
        ],
    )


def d3_cert(m: int) -> CertStep:
    target = Fraction(-m, 4)
    return combine(
        f"d3(xi_{m}) = {target}",
        [
            recorded("the planar contact surgery diagram presents xi_m", CITE_DIAGRAM),
            computed(
                f"d3 of the contact surgery diagram is {target}",
                "d3(figure3_diagram)",
                {"m": m},
                lambda r: Fraction(r["d3"]) == target,
            ),
            recorded("Y_m is an L-space with correction term -m/4 in the spin^c structure of xi_m", CITE_CORRECTION),
            recorded("the contact class has grading -d3", CITE_GRADING),
            recorded("exactly one of the three tight structures on Y_m has d3 = -m/4", CITE_THREE_TIGHT),
        ],
        {"d3": str(target)},
    )


# --- the report ----------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    m: int
    sn_value: int
    sg_value: int
    bn_lower: int
    bn_upper: int
    stein_fillable: bool
    d3: Fraction | None
    steps: tuple[CertStep, ...]

    @property
    def strict(self) -> bool:
        """sn < 2 sg + bn - 2, evaluated at the smallest bn the bounds allow."""
        return self.sn_value < 2 * self.sg_value + (self.bn_lower + 1) - 2

    def all_steps(self):
        for s in self.steps:
            yield from s.walk()

    def unverified_computed(self) -> list[CertStep]:
        return [s for s in self.all_steps() if s.kind == COMPUTED and s.status != VERIFIED]

    def recorded_facts(self) -> list[CertStep]:
        return [s for s in self.all_steps() if s.kind == RECORDED]

    @property
    def verified(self) -> bool:
        return not self.unverified_computed()

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "m": self.m,
            "sn": self.sn_value,
            "sg": self.sg_value,
            "bn_lower_exclusive": self.bn_lower,
            "bn_upper": self.bn_upper,
            "stein_fillable": self.stein_fillable,
            "d3": None if self.d3 is None else str(self.d3),
            "strict": self.strict,
            "verified": self.verified,
            "steps": [s.to_json() for s in self.steps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def theorem_report(m: int) -> Certificate:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"m must be a non-negative integer, got {m!r}")
    sg_step = support_genus_cert(m)
    sn_step = support_norm_cert(m)
    bn_step = binding_cert(m)
    stein_step = stein_cert(m)
    steps = [recorded("xi_m is tight", CITE_TIGHT), monodromy_cert(m), sg_step, sn_step, bn_step, stein_step]

    # sg: genus of the planar witness (genus is never negative)
    sg_value = sg_step.children[0].evidence["result"]["genus"]
    # sn: -chi of the torus page above, lens-space exclusion below
    sn_upper = sn_step.children[0].evidence["result"]["minus_euler"]
    sn_lower = 1 if sn_step.status == VERIFIED else 0
    sn_value = sn_upper if sn_lower == sn_upper else sn_lower
    # bn: planar witness above; exclusions of 1, 2 and 3 below
    bn_upper = bn_step.children[0].evidence["result"]["boundary_count"]
    not_one_or_two, not_three = bn_step.children[1:]
    bn_lower = 0
    if not_one_or_two.status == VERIFIED:
        bn_lower = 3 if not_three.status == VERIFIED else 2

    d3_value = None
    if m >= 1:
        step = d3_cert(m)
        steps.append(step)
        d3_value = Fraction(step.children[1].evidence["result"]["d3"])
    return Certificate(
        m=m,
        sn_value=sn_value,
        sg_value=sg_value,
        bn_lower=bn_lower,
        bn_upper=bn_upper,
        stein_fillable=stein_step.evidence["stein_fillable"],
        d3=d3_value,
        steps=tuple(steps),
    )


def rerun_step(step: CertStep) -> bool:
    """Re-execute a computed leaf and compare with the stored result."""
    op = step.evidence["op"]
    return OPS[op](**step.evidence["args"]) == step.evidence["result"]


def verify_certificate(cert: Certificate) -> list[str]:
    """Claims of computed steps that fail or do not reproduce; empty when all is well."""
    problems = []
    for step in cert.all_steps():
        if step.kind != COMPUTED:
            continue
        if step.status != VERIFIED:
            problems.append(step.claim)
        elif "op" in step.evidence and not rerun_step(step):
            problems.append(f"{step.claim} (result does not reproduce)")
    return problems


def render_markdown(cert: Certificate) -> str:
    lines = [
        f"# xi_{cert.m}",
        "",
        f"- sn = {cert.sn_value}, sg = {cert.sg_value}, {cert.bn_lower} < bn <= {cert.bn_upper}",
        f"- Stein fillable: {'yes' if cert.stein_fillable else 'no'}",
    ]
    if cert.d3 is not None:
        lines.append(f"- d3 = {cert.d3}")
    lines += [
        f"- sn < 2 sg + bn - 2: {'yes' if cert.strict else 'no'}",
        f"- computed steps verified: {'all' if cert.verified else 'NO'}",
        "",
    ]

    def emit(step: CertStep, depth: int):
        mark = {VERIFIED: "[x]", ASSUMED: "[cited]", FAILED: "[FAILED]"}[step.status]
        text = f"{'  ' * depth}- {mark} {step.claim}"
        if step.citation:
            text += f" ({step.citation})"
        elif "op" in step.evidence:
            text += f" `{step.evidence['op']}`"
        lines.append(text)
        for c in step.children:
            emit(c, depth + 1)

    for s in cert.steps:
        emit(s, 0)
    return "\n".join(lines) + "\n"
