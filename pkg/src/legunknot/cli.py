"""Command-line front end.

``run(argv)`` returns ``(exit_code, report)`` and never raises; ``main`` prints
the report.  Exit codes: 0 success, 2 parse error, 3 domain error or
unrealizable input, 4 undetermined verdict.
"""

from __future__ import annotations

import argparse
import contextlib
import io as _stdio
import sys
from typing import Callable, Optional, Sequence

from . import io
from .classification import (
    ContactStructureId,
    InadmissiblePair,
    classify_unknots,
    transverse_unknot_classes,
)
from .foliation import (
    FoliationError,
    detect_nonloose_unknot,
    dividing_components,
    is_convex,
    retrogradient_connections,
    validate_state,
)
from .front import InvalidDiagram, classical_invariants, self_linking_pushoff
from .grid import check_giroux_forbidden, crossings
from .homotopy import QuadraticFormZ2, arf_invariant, hopf_after_pi_lutz, hopf_fibers
from .moves import MoveError, Reidemeister, destabilize, hopf_pass, reidemeister, stabilize
from .movie import (
    MovieError,
    Verdict,
    detect_nonloose_states,
    enumerate_double_resolutions,
    enumerate_triple_resolutions,
    movie_T_bounds,
    state_verdict,
    tight_verdict,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_UNDETERMINED = 4


class UsageError(Exception):
    pass


class _HelpRequested(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or f"{self.prog}: exit {status}")
        raise _HelpRequested()


class DomainError(Exception):
    """Well-formed input that the mathematics rejects."""


class Report:
    def __init__(self, data: dict, lines: Sequence[str], code: int = EXIT_OK):
        self.data = data
        self.lines = list(lines)
        self.code = code

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return io.dumps(self.data)
        return "\n".join(self.lines) + "\n"


# subcommands ----------------------------------------------------------------


def _invariants(args) -> Report:
    d = io.parse_document(args.file, io.Schema.DIAGRAM)
    tb, rot = classical_invariants(d)
    sl = self_linking_pushoff(d)
    return Report(
        {"tb": tb, "rot": rot, "sl": sl, "homology": [d.a, d.b]},
        [f"tb={tb} rot={rot} sl={sl}"],
    )


def _move(args) -> Report:
    d = io.parse_document(args.file, io.Schema.DIAGRAM)
    for _ in range(args.repeat):
        if args.op == "stabilize":
            d = stabilize(d, args.sign, args.position or 0)
        elif args.op == "destabilize":
            d = destabilize(d, args.sign, args.position)
        elif args.op == "hopf-pass":
            d = hopf_pass(d, args.component, args.direction, args.position or 0)
        else:
            move = Reidemeister(args.op.upper())
            if args.insert and move is Reidemeister.R2:
                if args.site is None or args.site2 is None:
                    raise UsageError("r2 insertion needs --site and --site2")
                site = (args.site, args.site2)
            else:
                if args.site is None:
                    raise UsageError(f"{args.op} needs --site")
                site = args.site
            d = reidemeister(d, move, site, insert=args.insert, sign=args.sign)
    doc = io.to_json(d)
    text = io.dumps(doc)
    return Report(doc, [text.rstrip("\n")])


def _classify(args) -> Report:
    structure = ContactStructureId.parse(args.structure)
    if args.transverse:
        if args.sl is None:
            raise UsageError("--transverse needs --sl")
        n = transverse_unknot_classes(structure, args.sl)
        data = {"structure": structure.label(), "sl": args.sl, "transverse": n}
        return Report(data, [f"transverse: {n}"], EXIT_OK if n else EXIT_DOMAIN)
    if args.tb is None or args.rot is None:
        raise UsageError("classify needs --tb and --rot")
    try:
        result = classify_unknots(structure, args.tb, args.rot)
    except InadmissiblePair as exc:
        return Report(
            {"structure": structure.label(), "tb": args.tb, "rot": args.rot, "realizable": False},
            [f"not realizable: {exc}"],
            EXIT_DOMAIN,
        )
    head = f"nonloose: {len(result.nonloose)}, loose: {len(result.loose)}"
    if result.tight:
        head += f", tight: {len(result.tight)}"
    lines = [head]
    lines += [f"  nonloose {c.name}" for c in result.nonloose]
    lines += [f"  loose {c.name}" for c in result.loose]
    lines += [f"  tight {c.name}" for c in result.tight]
    data = {
        "structure": structure.label(),
        "tb": args.tb,
        "rot": args.rot,
        "realizable": result.total > 0,
        "nonloose": [c.name for c in result.nonloose],
        "loose": [c.name for c in result.loose],
        "tight": [c.name for c in result.tight],
    }
    if result.total == 0:
        lines.append("not realizable")
    return Report(data, lines, EXIT_OK if result.total else EXIT_DOMAIN)


def _foliation(args) -> Report:
    s = io.parse_document(args.file, io.Schema.FOLIATION)
    report = validate_state(s)
    if not report.ok:
        return Report(
            {"valid": False, "violations": list(report.violations)},
            ["invalid"] + [f"  {v}" for v in report.violations],
            EXIT_DOMAIN,
        )
    if args.action == "check":
        conns = retrogradient_connections(s)
        data = {"valid": True, "retrogradient": [c.label for c in conns]}
        lines = ["valid", f"retrogradient connections: {len(conns)}"]
        lines += [f"  {c.label}" for c in conns]
        if s.surface.value == "sphere":
            convex = is_convex(s)
            data["convex"] = convex
            lines.append(f"convex: {'yes' if convex else 'no'}")
            if convex and not s.closed_leaves:
                n = dividing_components(s)
                data["dividing_components"] = n
                lines.append(f"dividing components: {n}")
            v = state_verdict(s)
            data["verdict"] = v.value
            lines.append(f"verdict: {v.value}")
        return Report(data, lines)
    w = detect_nonloose_unknot(s)
    if w is None:
        return Report({"nonloose": False}, ["no non-loose unknot detected"])
    data = {
        "nonloose": True,
        "connections": [c.label for c in w.connections],
        "negative_path": list(w.negative_path),
        "positive_path": list(w.positive_path) if w.positive_path else None,
    }
    lines = [
        "non-loose unknot detected",
        f"  connections: {', '.join(c.label for c in w.connections)}",
        f"  negative path: {' '.join(w.negative_path)}",
        f"  positive path: {' '.join(w.positive_path) if w.positive_path else 'none'}",
    ]
    return Report(data, lines)


def _movie_verdict(args) -> Report:
    m = io.parse_document(args.file, io.Schema.MOVIE)
    v = tight_verdict(m)
    data = {"verdict": v.verdict.value, "witness": v.witness}
    lines = [f"verdict: {v}"]
    try:
        bounds = movie_T_bounds(m)
    except MovieError:
        bounds = None
        lines.append("T bounds: unavailable (boundary sphere not tight)")
    else:
        if bounds is None:
            lines.append("T bounds: none (every sphere tight)")
        else:
            lines.append(f"T bounds: T_minus={bounds[0]} T_plus={bounds[1]}")
    data["T_bounds"] = list(bounds) if bounds else None
    marks = detect_nonloose_states(m)
    data["nonloose_states"] = marks
    if marks:
        lines.append(f"non-loose unknot at states: {' '.join(map(str, marks))}")
    code = EXIT_UNDETERMINED if v.verdict is Verdict.UNDETERMINED else EXIT_OK
    return Report(data, lines, code)


def _movie_resolutions(args) -> Report:
    s = io.parse_document(args.file, io.Schema.FOLIATION)
    if args.triple:
        t = enumerate_triple_resolutions(s)
        hits = len(t.in_L_gen)
        lines = [f"{hits} of {len(t.schedules)} schedules in L_gen"]
        lines += [f"  {x.name}: {x.verdict.value}" for x in t.schedules]
        if t.smooth_point:
            lines.append(f"smooth point; trivial connections: {', '.join(t.trivial_connections)}")
        data = {
            "in_L_gen": hits,
            "schedules": [{"name": x.name, "verdict": x.verdict.value} for x in t.schedules],
            "trivial_connections": list(t.trivial_connections),
        }
        return Report(data, lines)
    res = enumerate_double_resolutions(s)
    lines = [f"{r.ordering[0]} then {r.ordering[1]}: {r.verdict}" for r in res]
    data = {
        "resolutions": [
            {"ordering": list(r.ordering), "verdict": r.verdict.verdict.value, "witness": r.verdict.witness}
            for r in res
        ]
    }
    code = EXIT_UNDETERMINED if any(r.verdict.verdict is Verdict.UNDETERMINED for r in res) else EXIT_OK
    return Report(data, lines, code)


def _grid(args) -> Report:
    g = io.parse_document(args.file, io.Schema.GRID)
    forbidden = check_giroux_forbidden(g)
    rows = crossings(g)
    data = {"forbidden": forbidden, "crossing_rows": rows}
    lines = [f"forbidden: {'yes' if forbidden else 'no'}", f"wall crossings at rows: {' '.join(map(str, rows)) or 'none'}"]
    return Report(data, lines)


def _hopf(args) -> Report:
    if args.action == "fibers":
        if args.k is None:
            raise UsageError("hopf fibers needs --k")
        h = hopf_fibers(args.k)
        return Report({"k": args.k, "hopf": h}, [f"hopf={h}"])
    if args.h is None or args.sl is None:
        raise UsageError("hopf lutz needs --h and --sl")
    h = hopf_after_pi_lutz(args.h, args.sl)
    return Report({"h": args.h, "sl": args.sl, "hopf": h}, [f"hopf={h}"])


def _arf(args) -> Report:
    try:
        values = tuple(int(v) for v in args.values.split(",")) if args.values else ()
    except ValueError as exc:
        raise UsageError(f"--values must be comma-separated integers: {exc}") from exc
    q = QuadraticFormZ2(args.genus, values)
    a = arf_invariant(q)
    return Report({"genus": args.genus, "values": list(values), "arf": a}, [f"arf={a}"])


# parser ---------------------------------------------------------------------


def _sign(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("must be 1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="legunknot", description="Legendrian unknot toolkit")
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    x = sub.add_parser("invariants", parents=[fmt], help="tb, rot and sl of a front diagram")
    x.add_argument("file")
    x.set_defaults(handler=_invariants)

    x = sub.add_parser("move", parents=[fmt], help="apply a move and print the new diagram")
    x.add_argument("file")
    x.add_argument("--op", required=True, choices=("stabilize", "destabilize", "hopf-pass", "r1", "r2", "r3"))
    x.add_argument("--sign", type=_sign, default=1)
    x.add_argument("--position", type=int)
    x.add_argument("--component", choices=("z0", "z1"), default="z0")
    x.add_argument("--direction", type=_sign, default=1)
    x.add_argument("--site", type=int)
    x.add_argument("--site2", type=int)
    x.add_argument("--insert", action="store_true")
    x.add_argument("--repeat", type=int, default=1)
    x.set_defaults(handler=_move)

    x = sub.add_parser("classify", parents=[fmt], help="Legendrian or transverse unknot classes")
    x.add_argument("--structure", required=True)
    x.add_argument("--tb", type=int)
    x.add_argument("--rot", type=int)
    x.add_argument("--transverse", action="store_true")
    x.add_argument("--sl", type=int)
    x.set_defaults(handler=_classify)

    x = sub.add_parser("foliation", parents=[fmt], help="inspect a characteristic foliation")
    x.add_argument("action", choices=("check", "nonloose"))
    x.add_argument("file")
    x.set_defaults(handler=_foliation)

    x = sub.add_parser("movie", parents=[fmt], help="verdicts on sphere families")
    msub = x.add_subparsers(dest="action", required=True, parser_class=_Parser)
    y = msub.add_parser("verdict", parents=[fmt])
    y.add_argument("file")
    y.set_defaults(handler=_movie_verdict)
    y = msub.add_parser("resolutions", parents=[fmt])
    y.add_argument("file", help="foliation with simultaneous retrogradient connections")
    y.add_argument("--triple", action="store_true")
    y.set_defaults(handler=_movie_resolutions)

    x = sub.add_parser("grid", parents=[fmt], help="bifurcation grids")
    x.add_argument("action", choices=("check",))
    x.add_argument("file")
    x.set_defaults(handler=_grid)

    x = sub.add_parser("hopf", parents=[fmt], help="Hopf invariant bookkeeping")
    x.add_argument("action", choices=("fibers", "lutz"))
    x.add_argument("--k", type=int)
    x.add_argument("--h", type=int)
    x.add_argument("--sl", type=int)
    x.set_defaults(handler=_hopf)

    x = sub.add_parser("arf", parents=[fmt], help="Arf invariant of a quadratic form")
    x.add_argument("--genus", type=int, required=True)
    x.add_argument("--values", default="")
    x.set_defaults(handler=_arf)
    return p


_DOMAIN_ERRORS = (
    DomainError,
    InvalidDiagram,
    MoveError,
    FoliationError,
    MovieError,
    InadmissiblePair,
    ArithmeticError,
    ValueError,
)


def run(argv: Sequence[str]) -> tuple[int, str]:
    parser = build_parser()
    out = _stdio.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            args = parser.parse_args(list(argv))
    except _HelpRequested:
        return EXIT_OK, out.getvalue()
    except UsageError as exc:
        return EXIT_PARSE, f"error: {exc}\n"
    handler: Callable = args.handler
    fmt = getattr(args, "format", "text")
    try:
        report = handler(args)
    except (io.ParseError, UsageError) as exc:
        return EXIT_PARSE, _error(fmt, "parse", exc)
    except _DOMAIN_ERRORS as exc:
        return EXIT_DOMAIN, _error(fmt, "domain", exc)
    except Exception as exc:  # never let a traceback escape
        return EXIT_DOMAIN, _error(fmt, "internal", exc)
    return report.code, report.render(fmt)


def _error(fmt: str, kind: str, exc: Exception) -> str:
    if fmt == "json":
        doc = {"error": kind, "message": str(exc)}
        loc = getattr(exc, "location", None)
        if loc:
            doc["location"] = loc
        return io.dumps(doc)
    return f"error ({kind}): {exc}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_UNDETERMINED) else sys.stderr
    stream.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
