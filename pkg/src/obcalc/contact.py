"""Open book bookkeeping, the open book to handlebody summary, and d3 of contact surgery diagrams."""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from .exactlinalg import IntMatrix, SingularMatrixError, determinant, signature, solve_rational
from .words import CurveClass, TwistWord

FIXTURE_ENV = "OBCALC_FIXTURES"

TORUS = "torus_one_boundary"
PLANAR = "planar_labeled"
ABSTRACT = "abstract"
PAGE_KINDS = (TORUS, PLANAR, ABSTRACT)


class NotRationalHomologySphere(ValueError):
    pass


# --- pages and open books ----------------------------------------------------


@dataclass(frozen=True)
class PageStats:
    genus: int
    boundary_count: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.boundary_count < 1:
            raise ValueError("a page has at least one boundary component")

    @property
    def minus_euler(self) -> int:
        return 2 * self.genus + self.boundary_count - 2

    def to_json(self) -> dict:
        return {"minus_euler": self.minus_euler, "genus": self.genus, "boundary_count": self.boundary_count}


@dataclass(frozen=True, order=True)
class PlanarCurve:
    """A convex curve on a disk with holes 0..k-1, enclosing the given holes."""

    holes: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        holes = tuple(sorted(set(self.holes)))
        if not holes:
            raise ValueError("a planar curve must enclose at least one hole")
        object.__setattr__(self, "holes", holes)

    def __str__(self) -> str:
        return self.name or "d{" + ",".join(map(str, self.holes)) + "}"


@dataclass(frozen=True)
class SymbolicCurve:
    """A curve known only by name, e.g. the core of a stabilizing 1-handle."""

    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class OpenBook:
    page: PageStats
    page_kind: str
    monodromy: tuple = ()

    def __post_init__(self):
        if self.page_kind not in PAGE_KINDS:
            raise ValueError(f"unknown page kind {self.page_kind!r}")
        if isinstance(self.monodromy, TwistWord):
            object.__setattr__(self, "monodromy", self.monodromy.letters)
        letters = tuple(self.monodromy)
        object.__setattr__(self, "monodromy", letters)
        if self.page_kind == TORUS:
            if (self.page.genus, self.page.boundary_count) != (1, 1):
                raise ValueError("a torus_one_boundary page is the genus one surface with one boundary")
            if not all(isinstance(c, CurveClass) for c, _ in letters):
                raise ValueError("torus page monodromy must use curve classes")
        elif self.page_kind == PLANAR:
            if self.page.genus != 0:
                raise ValueError("planar pages have genus 0")
            holes = self.page.boundary_count - 1
            for c, _ in letters:
                if not isinstance(c, PlanarCurve) or c.holes[-1] >= holes or c.holes[0] < 0:
                    raise ValueError(f"curve {c} does not lie on a disk with {holes} holes")

    @classmethod
    def torus(cls, word: TwistWord) -> OpenBook:
        return cls(PageStats(1, 1), TORUS, word.letters)

    @classmethod
    def disk(cls) -> OpenBook:
        return cls(PageStats(0, 1), PLANAR, ())

    @property
    def word(self) -> TwistWord:
        if self.page_kind != TORUS:
            raise ValueError("only torus pages carry a mapping class word")
        return TwistWord(self.monodromy)

    def negative_letters(self) -> list:
        return [(c, k) for c, k in self.monodromy if k < 0]

    def to_json(self) -> dict:
        return {
            "page": self.page.to_json(),
            "page_kind": self.page_kind,
            "monodromy": [[str(c), k] for c, k in self.monodromy],
        }


def page_stats(ob: OpenBook) -> PageStats:
    return ob.page


def positive_stabilize(ob: OpenBook, mode: str = "binding_up") -> OpenBook:
    """Positive stabilization: attach a 1-handle to the page and add one positive twist.

    ``binding_up`` attaches the handle with both feet on one boundary
    component (genus kept, one more binding component); ``genus_up`` joins
    two boundary components (genus + 1, one binding component fewer).
    """
    g, n = ob.page.genus, ob.page.boundary_count
    fresh = f"s{len(ob.monodromy)}"
    if mode == "binding_up":
        if ob.page_kind == PLANAR:
            hole = n - 1
            curve = PlanarCurve((hole,))
            return OpenBook(PageStats(g, n + 1), PLANAR, ob.monodromy + ((curve, 1),))
        return OpenBook(PageStats(g, n + 1), ABSTRACT, ob.monodromy + ((SymbolicCurve(fresh), 1),))
    if mode == "genus_up":
        if n < 2:
            raise ValueError("genus_up stabilization needs two boundary components to join")
        return OpenBook(PageStats(g + 1, n - 1), ABSTRACT, ob.monodromy + ((SymbolicCurve(fresh), 1),))
    raise ValueError(f"unknown stabilization mode {mode!r}")


# --- handlebody summary ------------------------------------------------------


@dataclass(frozen=True)
class HandleSummary:
    one_handles: int
    framings: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, HandleSummary):
            return NotImplemented
        return self.one_handles == other.one_handles and Counter(self.framings) == Counter(other.framings)

    def __hash__(self):
        return hash((self.one_handles, tuple(sorted(self.framings))))

    def to_json(self) -> dict:
        # positive framings first, then the rest, each in letter order
        ordered = sorted(self.framings, key=lambda f: f <= 0)
        return {"one_handles": self.one_handles, "framings": ordered}


def page_framing(c: CurveClass) -> int:
    """Page framing of the (p, q) curve on the punctured torus, relative to the 1-handle diagram."""
    return -c.p * c.q


def openbook_to_handles(ob: OpenBook) -> HandleSummary:
    """2-handles attached along monodromy curves pushed into the 4-ball with two 1-handles.

    A positive twist gives framing (page framing - 1), a negative one
    (page framing + 1); T_c^k gives |k| parallel handles.
    """
    if ob.page_kind != TORUS:
        raise ValueError("openbook_to_handles needs a torus_one_boundary page")
    framings = []
    for curve, k in ob.monodromy:
        shift = -1 if k > 0 else 1
        framings += [page_framing(curve) + shift] * abs(k)
    return HandleSummary(2, tuple(framings))


# --- contact surgery diagrams ------------------------------------------------


@dataclass(frozen=True)
class LegendrianUnknot:
    tb: int
    rot: int
    coeff: int

    def __post_init__(self):
        if self.coeff not in (1, -1):
            raise ValueError(f"contact surgery coefficient must be +1 or -1, got {self.coeff}")
        if self.tb > -1:
            raise ValueError(f"a Legendrian unknot has tb <= -1, got {self.tb}")
        if abs(self.rot) > -self.tb - 1 or (self.rot + self.tb + 1) % 2:
            raise ValueError(f"(tb, rot) = ({self.tb}, {self.rot}) is not realized by a Legendrian unknot")

    def to_json(self) -> dict:
        return {"tb": self.tb, "rot": self.rot, "coeff": self.coeff}


@dataclass(frozen=True)
class ContactSurgeryDiagram:
    components: tuple[LegendrianUnknot, ...] = ()
    linking: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        n = len(comps)
        linking = tuple(tuple(int(x) for x in row) for row in self.linking) if n else ()
        if len(linking) != n or any(len(row) != n for row in linking):
            raise ValueError(f"linking matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if linking[i][j] != linking[j][i]:
                    raise ValueError("linking matrix must be symmetric")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "linking", linking)

    def __len__(self) -> int:
        return len(self.components)

    def permuted(self, order: Sequence[int]) -> ContactSurgeryDiagram:
        return ContactSurgeryDiagram(
            tuple(self.components[i] for i in order),
            tuple(tuple(self.linking[i][j] for j in order) for i in order),
        )

    def to_json(self) -> dict:
        return {
            "schema": "obcalc.diagram/1",
            "components": [c.to_json() for c in self.components],
            "linking": [list(row) for row in self.linking],
        }

    @classmethod
    def from_json(cls, data: dict) -> ContactSurgeryDiagram:
        comps = tuple(LegendrianUnknot(int(c["tb"]), int(c["rot"]), int(c["coeff"])) for c in data["components"])
        linking = data.get("linking") or [[0] * len(comps) for _ in comps]
        return cls(comps, tuple(tuple(row) for row in linking))


@dataclass(frozen=True)
class SmoothSurgeryData:
    linking_matrix: IntMatrix | None
    rot: tuple[int, ...]
    q_plus: int


def contact_to_smooth(d: ContactSurgeryDiagram) -> SmoothSurgeryData:
    n = len(d)
    if not n:
        return SmoothSurgeryData(None, (), 0)
    rows = [
        [d.components[i].tb + d.components[i].coeff if i == j else d.linking[i][j] for j in range(n)]
        for i in range(n)
    ]
    return SmoothSurgeryData(
        IntMatrix.of(rows),
        tuple(c.rot for c in d.components),
        sum(1 for c in d.components if c.coeff == 1),
    )


@dataclass(frozen=True)
class D3Terms:
    c_squared: Fraction
    sigma: int
    chi: int
    q_plus: int
    value: Fraction

    def to_json(self) -> dict:
        return {
            "c_squared": str(self.c_squared),
            "signature": self.sigma,
            "euler_characteristic": self.chi,
            "q_plus": self.q_plus,
            "d3": str(self.value),
        }


def d3_terms(d: ContactSurgeryDiagram) -> D3Terms:
    """All terms of d3 = (c^2 - 3 sigma - 2 chi)/4 + q + 1/2 (normalized so the standard S^3 gives 0)."""
    smooth = contact_to_smooth(d)
    n = len(d)
    if n == 0:
        c2, sigma = Fraction(0), 0
    else:
        L = smooth.linking_matrix
        try:
            x = solve_rational(L, smooth.rot)
        except SingularMatrixError:
            raise NotRationalHomologySphere(
                "not a rational homology sphere: d3 formula inapplicable"
            ) from None
        c2 = sum((xi * r for xi, r in zip(x, smooth.rot)), Fraction(0))
        quadratic = sum(
            (x[i] * L[i, j] * x[j] for i in range(n) for j in range(n)), Fraction(0)
        )
        assert quadratic == c2, "c^2 disagrees between x.rot and x^T L x"
        sigma = signature(L)
    chi = 1 + n
    value = (c2 - 3 * sigma - 2 * chi) / 4 + smooth.q_plus + Fraction(1, 2)
    return D3Terms(c2, sigma, chi, smooth.q_plus, value)


def d3(d: ContactSurgeryDiagram) -> Fraction:
    return d3_terms(d).value


# --- rational contact surgery ------------------------------------------------


def _negative_continued_fraction(r: Fraction) -> list[int]:
    """[a_0, a_1, ...] with r = a_0 - 1/(a_1 - 1/(...)), all a_i <= -2 after the first."""
    out = []
    while True:
        a = r.numerator // r.denominator
        out.append(a)
        if a == r:
            return out
        r = 1 / (a - r)


def rational_coeff_expand(tb: int, rot: int, r: Fraction | int | str) -> ContactSurgeryDiagram:
    """Replace contact r-surgery on one Legendrian unknot by a chain of +-1 surgeries.

    Uses the Ding-Geiges-Stipsicz algorithm.  Every stabilization is taken
    negative (tb and rot both drop by one).  Components linking the original
    knot link every component of the chain the same number of times.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("contact surgery coefficient 0 is not allowed")
    LegendrianUnknot(tb, rot, -1)  # validates (tb, rot)
    comps: list[LegendrianUnknot] = []
    parent_tb: list[int] = []  # tb of each component, for linking with later push-offs

    if r > 0:
        p, q = r.numerator, r.denominator
        if p == 1:
            plus_count, rest = q, None
        else:
            k = q // p + 1  # least k with q - k p < 0
            plus_count, rest = k, Fraction(p, q - k * p)
        for _ in range(plus_count):
            comps.append(LegendrianUnknot(tb, rot, 1))
            parent_tb.append(tb)
    else:
        rest = r

    if rest is not None:
        cf = _negative_continued_fraction(rest)
        cur_tb, cur_rot = tb, rot
        for i, a in enumerate(cf):
            stabs = -(a - 1) - 2 if i == 0 else -a - 2
            cur_tb -= stabs
            cur_rot -= stabs
            comps.append(LegendrianUnknot(cur_tb, cur_rot, -1))
            parent_tb.append(cur_tb)

    n = len(comps)
    linking = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            linking[i][j] = linking[j][i] = parent_tb[i]
    return ContactSurgeryDiagram(tuple(comps), tuple(map(tuple, linking)))


# --- planar diagram fixture -----------------------------------------------


@dataclass(frozen=True)
class PlanarFixture:
    version: int
    hole_m: int
    hole_const: int
    stabilization_sign: int
    curves: tuple[tuple[str, object, int], ...]
    d3_check: tuple[int, int, int] | None = None
    abs_det_check: int | None = None
    source: str = field(default="", compare=False)

    def hole_count(self, m: int) -> int:
        return self.hole_m * m + self.hole_const

    def planar_curves(self, m: int) -> list[tuple[PlanarCurve, int]]:
        k = self.hole_count(m)
        out = []
        for name, holes, coeff in self.curves:
            hs = tuple(range(k)) if holes == "all" else tuple(holes)
            out.append((PlanarCurve(hs, name), coeff))
        return out

    def expected_d3(self, m: int) -> Fraction | None:
        if self.d3_check is None:
            return None
        a, b, den = self.d3_check
        return Fraction(a * m + b, den)


def fixture_path() -> Path | None:
    override = os.environ.get(FIXTURE_ENV)
    if not override:
        return None
    path = Path(override)
    return path / "figure3.json" if path.is_dir() else path


def load_fixture(path: str | Path | None = None) -> PlanarFixture:
    path = path or fixture_path()
    if path is None:
        text = resources.files("obcalc").joinpath("data/figure3.json").read_text()
        source = "builtin:data/figure3.json"
    else:
        text = Path(path).read_text()
        source = str(path)
    return _parse_fixture(text, source)


@lru_cache(maxsize=8)
def _parse_fixture(text: str, source: str) -> PlanarFixture:
    data = json.loads(text)
    if data.get("schema") != "obcalc.figure3-fixture":
        raise ValueError(f"{source}: not a figure3 fixture")
    checks = data.get("checks", {})
    d3c = checks.get("d3")
    return PlanarFixture(
        version=int(data["version"]),
        hole_m=int(data["holes"]["m"]),
        hole_const=int(data["holes"]["const"]),
        stabilization_sign=int(data.get("stabilization_sign", -1)),
        curves=tuple(
            (c["name"], c["holes"] if c["holes"] == "all" else tuple(c["holes"]), int(c["coeff"]))
            for c in data["curves"]
        ),
        d3_check=(int(d3c["num_m"]), int(d3c["num_const"]), int(d3c["den"])) if d3c else None,
        abs_det_check=checks.get("abs_det"),
        source=source,
    )


def planar_diagram(curves: Sequence[tuple[PlanarCurve, int]], stabilization_sign: int = -1) -> ContactSurgeryDiagram:
    """Legendrian realization of convex curves on a disk with holes.

    A curve around S holes has tb = -|S| and rot = sign * (|S| - 1); two
    curves around S and T link -|S & T| times.
    """
    comps = tuple(
        LegendrianUnknot(-len(c.holes), stabilization_sign * (len(c.holes) - 1), coeff) for c, coeff in curves
    )
    linking = tuple(
        tuple(0 if i == j else -len(set(ci.holes) & set(cj.holes)) for j, (cj, _) in enumerate(curves))
        for i, (ci, _) in enumerate(curves)
    )
    return ContactSurgeryDiagram(comps, linking)


def figure3_diagram(m: int, fixture: PlanarFixture | None = None) -> ContactSurgeryDiagram:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValueError(f"figure3_diagram is defined for m >= 1, got {m!r}")
    fixture = fixture or load_fixture()
    return planar_diagram(fixture.planar_curves(m), fixture.stabilization_sign)


def figure3_openbook(m: int, fixture: PlanarFixture | None = None) -> OpenBook:
    """Planar open book: positive twists around every hole, then one twist per surgery curve.

    Contact (-1)-surgery adds a positive twist and (+1)-surgery a negative one.
    """
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"m must be a non-negative integer, got {m!r}")
    fixture = fixture or load_fixture()
    k = fixture.hole_count(m)
    letters = [(PlanarCurve((i,)), 1) for i in range(k)]
    letters += [(curve, -coeff) for curve, coeff in fixture.planar_curves(m)]
    return OpenBook(PageStats(0, k + 1), PLANAR, tuple(letters))
