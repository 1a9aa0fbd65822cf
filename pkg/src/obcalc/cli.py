"""Command line front end.

    obcalc report --m 0..20 [--format markdown]
    obcalc nf --word "a b a"
    obcalc action --word "a b a b a b A A A A"
    obcalc d3 --diagram diagram.json
    obcalc classify --pqr -2 -2 4
    obcalc handles --m 3

Exit status: 0 when every internal verification passes, 1 when one fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import certify, contact, seifert, words

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_m_range(text: str) -> list[int]:
    """``"3"`` or ``"0..20"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad --m value {text!r}; expected N or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad --m range {text!r}")
    return list(range(lo, hi + 1))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _cmd_report(args) -> tuple[int, str]:
    ms = parse_m_range(args.m)
    if args.jobs > 1 and len(ms) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            certs = list(pool.map(certify.theorem_report, ms))
    else:
        certs = [certify.theorem_report(m) for m in ms]
    status = EXIT_OK
    failures = []
    for cert in certs:
        problems = certify.verify_certificate(cert)
        if problems or not cert.strict:
            status = EXIT_VERIFY
            failures += [f"m={cert.m}: {p}" for p in problems] or [f"m={cert.m}: strict inequality not derived"]
    if args.format == "markdown":
        out = "\n".join(certify.render_markdown(c) for c in certs)
    elif len(certs) == 1:
        out = certs[0].dumps()
    else:
        out = _dump({"schema": "obcalc.report/1", "reports": [c.to_json() for c in certs]})
    for f in failures:
        print(f"verification failed: {f}", file=sys.stderr)
    return status, out


def _parse_word(text: str) -> words.TwistWord:
    try:
        return words.parse_word(text)
    except words.WordSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _cmd_nf(args) -> tuple[int, str]:
    w = words.expand_conjugates(_parse_word(args.word))
    nf = words.garside_normal_form(w)
    if args.format == "markdown":
        return EXIT_OK, str(nf)
    return EXIT_OK, _dump({"schema": "obcalc.garside/1", **nf.to_json()})


def _cmd_action(args) -> tuple[int, str]:
    w = _parse_word(args.word)
    matrix = words.homology_action(w)
    if args.format == "markdown":
        return EXIT_OK, str(matrix.to_json())
    return EXIT_OK, _dump({"schema": "obcalc.sl2/1", "word": str(w), "matrix": matrix.to_json()})


def _cmd_d3(args) -> tuple[int, str]:
    if args.diagram:
        try:
            data = json.loads(Path(args.diagram).read_text())
            diagram = contact.ContactSurgeryDiagram.from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read diagram {args.diagram}: {exc}") from None
        expected = None
    else:
        if args.m is None:
            raise UsageError("d3 needs --diagram FILE or --m N")
        m = parse_m_range(args.m)
        if len(m) != 1 or m[0] < 1:
            raise UsageError("d3 --m takes a single m >= 1")
        fixture = contact.load_fixture()
        diagram = contact.figure3_diagram(m[0], fixture)
        expected = fixture.expected_d3(m[0])
    try:
        terms = contact.d3_terms(diagram)
    except contact.NotRationalHomologySphere as exc:
        raise UsageError(str(exc)) from None
    payload = {"schema": "obcalc.d3/1", **terms.to_json()}
    status = EXIT_OK
    if expected is not None:
        payload["expected"] = str(expected)
        if terms.value != expected:
            print(f"verification failed: fixture d3 {terms.value} != {expected}", file=sys.stderr)
            status = EXIT_VERIFY
    if args.format == "markdown":
        return status, str(terms.value)
    return status, _dump(payload)


def _cmd_classify(args) -> tuple[int, str]:
    p, q, r = args.pqr
    cls = seifert.classify_three_binding(p, q, r)
    veering = seifert.right_veering_boundary_twists((p, q, r))
    payload = {"schema": "obcalc.classify/1", **cls.to_json(), "right_veering": veering}
    if args.format == "markdown":
        e0 = f", e0 = {cls.e0}" if cls.e0 is not None else ""
        return EXIT_OK, f"{cls.tag}{e0} ({cls.rule}); right-veering: {'yes' if veering else 'no'}"
    return EXIT_OK, _dump(payload)


def _cmd_handles(args) -> tuple[int, str]:
    ms = parse_m_range(args.m)
    out = []
    status = EXIT_OK
    for m in ms:
        summary = contact.openbook_to_handles(contact.OpenBook.torus(words.factored_phi(m)))
        if summary != contact.HandleSummary(2, tuple([1] * m + [-2, 0])):
            print(f"verification failed: handle summary for m={m} is {summary}", file=sys.stderr)
            status = EXIT_VERIFY
        out.append({"schema": "obcalc.handles/1", "m": m, **summary.to_json()})
    if args.format == "markdown":
        return status, "\n".join(f"m={h['m']}: {h['one_handles']} one-handles, framings {h['framings']}" for h in out)
    return status, _dump(out[0] if len(out) == 1 else out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="obcalc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "markdown"), default="json")
        p.set_defaults(func=func)
        return p

    p = add("report", _cmd_report, "certificates for xi_m")
    p.add_argument("--m", required=True, help="N or A..B")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for m ranges")

    p = add("nf", _cmd_nf, "Garside normal form of a word")
    p.add_argument("--word", required=True)

    p = add("action", _cmd_action, "action of a word on H_1(T0)")
    p.add_argument("--word", required=True)

    p = add("d3", _cmd_d3, "d3 of a contact surgery diagram")
    p.add_argument("--diagram", help="diagram JSON file")
    p.add_argument("--m", help="use the built-in planar diagram for xi_m instead")

    p = add("classify", _cmd_classify, "three-binding planar open book T_a^p T_b^q T_c^r")
    p.add_argument("--pqr", type=int, nargs=3, required=True, metavar=("P", "Q", "R"))

    p = add("handles", _cmd_handles, "handle summary of (T0, factored phi_m)")
    p.add_argument("--m", required=True, help="N or A..B")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        status, out = args.func(args)
    except UsageError as exc:
        print(f"obcalc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"obcalc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
