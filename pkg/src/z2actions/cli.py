"""Command-line front end.

Exit codes: 0 for a pass or a computed value, 1 for a failure with a
witness, 2 for malformed input, bad flags or an exceeded size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import classify, cobordism, fileio, skeleton
from .errors import Z2ActionsError
from .f2algebra import Automorphism, Character, SymFnExpr

load_fixed_data = fileio.load_fixed_data
store = fileio.store


@dataclass
class CommandReport:
    verdict: str  # "pass", "fail", "value" or "error"
    details: dict = field(default_factory=dict)
    exit_code: int = 0
    lines: list[str] = field(default_factory=list)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _csv_bits(text: str) -> list[str]:
    items = [x for x in text.split(",") if x]
    if not items or any(set(x) - {"0", "1"} for x in items):
        raise argparse.ArgumentTypeError(f"expected comma-separated bitstrings, got {text!r}")
    return items


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document on stdout")
    parser = _Parser(prog="z2actions", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", default=False,
                        help="emit one JSON document on stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("validate", "check vertex data (and edges, if present)")
    p.add_argument("file")
    p = add("prime", "prime tangent set (pairs of equal multisets canceled)")
    p.add_argument("file")
    p = add("bounding", "does the data bound (empty prime set)?")
    p.add_argument("file")

    p = add("tdks", "localization polynomiality test")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--f", dest="expr", help="symmetric function, e.g. 'e2*e3+m[2,1]'")
    mode.add_argument("--batch", type=int, metavar="DMAX",
                      help="test 1 and every m[partition] of degree <= DMAX")

    p = add("op", "Delta, Omega and sigma operations")
    ops = p.add_subparsers(dest="operation", required=True, parser_class=_Parser)
    q = ops.add_parser("delta", parents=[common], help="i-fold diagonal product")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--diagonal", action="store_true",
                   help="repeat each multiset i times instead of forming all tuples")
    q.add_argument("file")
    q.add_argument("--out")
    q = ops.add_parser("omega", parents=[common], help="add one rank by doubling")
    q.add_argument("file")
    q.add_argument("--out")
    q = ops.add_parser("sigma", parents=[common], help="relabel by an automorphism")
    q.add_argument("--matrix", type=_csv_bits, required=True, help="rows, e.g. 10,11")
    q.add_argument("file")
    q.add_argument("--out")

    p = add("gen", "generate canonical data")
    gens = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    q = gens.add_parser("rpn", parents=[common], help="linear action on projective n-space")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out")
    q = gens.add_parser("three", parents=[common], help="three fixed points")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--basis", type=_csv_bits)
    q.add_argument("--out")
    q = gens.add_parser("four", parents=[common], help="four fixed points")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--v", type=_csv_ints, default=[])
    q.add_argument("--basis", type=_csv_bits)
    q.add_argument("--out")

    p = add("recognize", "extract three- or four-point parameters")
    p.add_argument("file")

    p = add("skeletons", "enumerate colored skeletons for fixed data")
    p.add_argument("file")
    p.add_argument("--dedupe", action="store_true")
    p.add_argument("--dot", metavar="DIR", help="write one DOT file per skeleton")

    p = add("classes", "cobordism classes in a GL(k) orbit")
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    q = kinds.add_parser("three", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--brute-force", action="store_true")

    p = add("bound", "lower bound on the number of fixed points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("minfix", "minimum number of fixed points, where known")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("lattice", "admissible multiplicity vectors for the shared part")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p = add("count-cf", "monomials in (r1 r2 + r2 r3 + r3 r1)^m")
    p.add_argument("--m", type=int, required=True)
    return parser


def _vertex_lines(D: skeleton.FixedData) -> list[str]:
    return [f"{label}: {' '.join(S.to_strings())}" for label, S in D.vertices]


def _emit_value(value, out: str | None) -> CommandReport:
    doc = fileio.to_json(value)
    lines = fileio.dumps(value).rstrip("\n").splitlines()
    if out:
        fileio.store(out, value)
        lines = [f"wrote {out}"]
    return CommandReport("value", doc, 0, lines)


def _cmd_validate(args) -> CommandReport:
    value = fileio.load_any(args.file)
    if isinstance(value, skeleton.ColoredSkeleton):
        report = skeleton.validate_skeleton(value)
        bound = skeleton.edge_bound_check(value) if report.ok else None
        problems = report.problems + (bound.problems if bound else [])
        kind = "skeleton"
    else:
        D = fileio.load_fixed_data(args.file)
        problems = skeleton.validate_fixed_data(D).problems
        kind = "fixed data"
    ok = not problems
    lines = [f"{kind}: {'valid' if ok else 'invalid'}"] + problems
    return CommandReport("pass" if ok else "fail", {"valid": ok, "problems": problems}, 0 if ok else 1, lines)


def _cmd_prime(args) -> CommandReport:
    P = cobordism.prime_tangent_set(load_fixed_data(args.file))
    lines = _vertex_lines(P) or ["(empty)"]
    return CommandReport("value", fileio.to_json(P), 0, lines)


def _cmd_bounding(args) -> CommandReport:
    bounds = cobordism.is_bounding(load_fixed_data(args.file))
    return CommandReport("value", {"bounding": bounds}, 0, ["bounding" if bounds else "nonbounding"])


def _cmd_tdks(args) -> CommandReport:
    D = load_fixed_data(args.file)
    if args.expr is not None:
        verdict = cobordism.tdks_f_hat(D, SymFnExpr.parse(args.expr))
        doc = verdict.to_json()
        if verdict.is_polynomial:
            return CommandReport("pass", doc, 0, [f"polynomial: {verdict.polynomial}"])
        w = verdict.witness
        return CommandReport(
            "fail", doc, 1,
            [f"not polynomial: division by {w.form} at stage {w.stage} leaves {w.remainder}"],
        )
    report = cobordism.tdks_batch(D, args.batch)
    doc = report.to_json()
    if report.ok:
        return CommandReport("pass", doc, 0, [f"pass: {report.tested} functions"])
    w = report.verdict.witness
    return CommandReport(
        "fail", doc, 1,
        [f"fail at f={report.failed_function}: division by {w.form} at stage {w.stage} leaves {w.remainder}"],
    )


def _cmd_op(args) -> CommandReport:
    D = load_fixed_data(args.file)
    if args.operation == "delta":
        result = (cobordism.delta_diagonal if args.diagonal else cobordism.delta_product)(D, args.i)
    elif args.operation == "omega":
        result = cobordism.omega(D)
    else:
        result = cobordism.sigma_map(D, Automorphism(args.matrix))
    return _emit_value(result, args.out)


def _basis(texts, k):
    if texts is None:
        return tuple(Character.basis(k, i) for i in range(1, k + 1))
    return tuple(Character.parse(t) for t in texts)


def _cmd_gen(args) -> CommandReport:
    if args.family == "rpn":
        _, G = skeleton.builtin_rpn(args.n)
        return _emit_value(G, args.out)
    if args.family == "three":
        s = classify.ThreePointStructure(args.k, args.ell, _basis(args.basis, args.k))
        return _emit_value(classify.generate_three(s), args.out)
    s = classify.FourPointStructure(args.k, args.ell, _basis(args.basis, args.k), tuple(args.v))
    return _emit_value(classify.generate_four(s), args.out)


def _cmd_recognize(args) -> CommandReport:
    D = load_fixed_data(args.file)
    s = classify.recognize_three(D) or classify.recognize_four(D)
    if s is None:
        return CommandReport("fail", {"structure": None}, 1, ["no three- or four-point structure"])
    return CommandReport("value", {"structure": s.to_json()}, 0, [json.dumps(s.to_json())])


def _cmd_skeletons(args) -> CommandReport:
    D = load_fixed_data(args.file)
    found = skeleton.enumerate_skeletons(D, dedupe=args.dedupe)
    lines = [f"{len(found)} skeleton(s)"]
    if args.dedupe:
        lines[0] += f" up to symmetry ({found.labeled_count} labeled)"
    if found.discarded_disconnected:
        lines.append(f"discarded {found.discarded_disconnected} disconnected candidate(s)")
    written = []
    if args.dot:
        out_dir = Path(args.dot)
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.file).stem
    for i, G in enumerate(found, start=1):
        lines.append(f"[{i}] " + " ".join(f"{e.u}-{e.v}:{e.color}" for e in G.edges))
        if args.dot:
            path = out_dir / f"{stem}_{i:03d}.dot"
            path.write_text(G.to_dot(f"skeleton_{i}"))
            written.append(str(path))
    if written:
        lines.append(f"wrote {len(written)} DOT file(s) to {args.dot}")
    doc = {
        "count": len(found),
        "labeled_count": found.labeled_count,
        "discarded_disconnected": found.discarded_disconnected,
        "skeletons": [fileio.skeleton_to_json(G)["edges"] for G in found],
        "dot_files": written,
    }
    return CommandReport("value", doc, 0, lines)


def _cmd_classes(args) -> CommandReport:
    found = classify.enumerate_three_classes(args.k, args.ell, brute_force=args.brute_force or None)
    lines = [f"{len(found)} class(es)"]
    for i, D in enumerate(found, start=1):
        lines.append(f"[{i}] " + "  ".join("{" + ",".join(S.to_strings()) + "}" for S in D.multisets))
    doc = {"count": len(found), "classes": [[S.to_strings() for S in D.multisets] for D in found]}
    return CommandReport("value", doc, 0, lines)


def _cmd_bound(args) -> CommandReport:
    value = classify.lower_bound(args.n, args.k)
    return CommandReport("value", {"bound": value}, 0, [str(value)])


def _cmd_minfix(args) -> CommandReport:
    result = classify.min_fixed_points(args.n, args.k)
    if result.status == "exact":
        line = str(result.value)
    else:
        line = f"{result.status} (lower bound {result.bound})"
    return CommandReport("value", result._asdict(), 0, [line])


def _cmd_lattice(args) -> CommandReport:
    vectors = classify.lattice_I(args.k, args.ell, args.t)
    lines = [f"{len(vectors)} vector(s)"] + [" ".join(map(str, v)) for v in vectors]
    return CommandReport("value", {"count": len(vectors), "vectors": [list(v) for v in vectors]}, 0, lines)


def _cmd_count_cf(args) -> CommandReport:
    value = classify.conner_floyd_count(args.m)
    return CommandReport("value", {"count": value}, 0, [str(value)])


_COMMANDS = {
    "validate": _cmd_validate,
    "prime": _cmd_prime,
    "bounding": _cmd_bounding,
    "tdks": _cmd_tdks,
    "op": _cmd_op,
    "gen": _cmd_gen,
    "recognize": _cmd_recognize,
    "skeletons": _cmd_skeletons,
    "classes": _cmd_classes,
    "bound": _cmd_bound,
    "minfix": _cmd_minfix,
    "lattice": _cmd_lattice,
    "count-cf": _cmd_count_cf,
}


def dispatch(argv: list[str]) -> tuple[CommandReport, bool]:
    """Run one command; returns the report and whether JSON output was requested."""
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandReport("error", {"error": str(exc)}, 2, [str(exc)]), as_json
    try:
        return _COMMANDS[args.command](args), args.json
    except (Z2ActionsError, FileNotFoundError) as exc:
        return CommandReport("error", {"error": str(exc)}, 2, [f"error: {exc}"]), args.json


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv in (["-h"], ["--help"]):
        build_parser().print_help()
        return 0 if argv else 2
    try:
        report, as_json = dispatch(argv)
    except SystemExit as exc:  # --help inside a subcommand
        return int(exc.code or 0)
    if as_json:
        doc = {"verdict": report.verdict, "exit_code": report.exit_code, **report.details}
        print(json.dumps(doc, indent=2))
    else:
        stream = sys.stderr if report.exit_code == 2 else sys.stdout
        for line in report.lines:
            print(line, file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
