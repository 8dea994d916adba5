"""Command-line front end.

Exit status: 0 on success or a zero-entropy verdict, 1 on a negative verdict,
2 on malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import collapse, enumeration, explosion, formats, paths, stars
from .errors import (BadRange, CapExceeded, NonConvergence, NotRepresentable, PatternError,
                     PolicyMismatch, TreetropyError, VerificationFailed)
from .pattern import Pattern, endpoints, star_class

EXIT_OK, EXIT_NEGATIVE, EXIT_BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True)


def _read_pattern(args) -> Pattern:
    if args.file is not None and args.pattern is not None:
        raise UsageError("give the pattern either inline or with --file, not both")
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    elif args.pattern is not None and args.pattern != "-":
        text = args.pattern
    else:
        text = sys.stdin.read()
    pats = formats.parse_many(text)
    if len(pats) != 1:
        raise UsageError(f"expected exactly one pattern, got {len(pats)}")
    return pats[0]


def _check_format(args, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for '{args.command}'"
                         f" (choose from {', '.join(allowed)})")


def _chain_text(cert: collapse.CollapseCertificate) -> list[str]:
    lines = [" -> ".join(str(P) for P in reversed(cert.patterns))]
    lines.append("factors: (" + ",".join(str(f) for f in cert.factors) + ")")
    if cert.valences is not None:
        lines.append("valences: (" + ",".join(str(k) for k in cert.valences) + ")")
    return lines


# --- subcommands -------------------------------------------------------------

def cmd_validate(args, out) -> int:
    _check_format(args, ("text", "json"))
    P = _read_pattern(args)
    cls = star_class(P)
    if args.format == "json":
        data = formats.pattern_to_dict(P)
        data.update(star_class=str(cls), endpoints=sorted(endpoints(P)))
        print(_dumps(data), file=out)
    else:
        print(P, file=out)
        print(f"class: {cls}", file=out)
        print("endpoints: " + " ".join(str(x) for x in sorted(endpoints(P))), file=out)
    return EXIT_OK


def cmd_entropy(args, out) -> int:
    _check_format(args, ("text", "json"))
    P = _read_pattern(args)
    M = paths.path_matrix(P)
    rho = paths.spectral_radius(M, args.tol) if len(M) else 0.0
    h = paths.entropy(P, args.tol)
    zero = paths.is_zero_entropy_spectral(P)
    if args.format == "json":
        print(_dumps({"pattern": str(P), "paths": len(M), "spectral_radius": round(rho, 12),
                      "entropy": round(h, 12), "zero": zero}), file=out)
    else:
        print(f"paths: {len(M)}", file=out)
        print(f"spectral radius: {rho:.10f}", file=out)
        print(f"entropy: {h:.10f}", file=out)
        print("verdict: " + ("zero" if zero else "positive"), file=out)
    return EXIT_OK


def cmd_zero(args, out) -> int:
    _check_format(args, ("text", "json"))
    P = _read_pattern(args)
    cert = collapse.is_strongly_collapsible(P)
    spectral = paths.is_zero_entropy_spectral(P)
    if cert is not None:
        if args.format == "json":
            data = {"pattern": str(P), "zero": True, "spectral_zero": spectral}
            data["certificate"] = cert.to_dict()
            print(_dumps(data), file=out)
        else:
            print("zero entropy", file=out)
            for line in _chain_text(cert):
                print(line, file=out)
        return EXIT_OK
    stuck = collapse.collapse_failure(P)
    witness = paths.branching_witness(paths.path_matrix(P))
    if args.format == "json":
        data = {"pattern": str(P), "zero": False, "spectral_zero": spectral, "stuck": str(stuck)}
        if witness is not None:
            data["witness"] = {"path": str(witness[0]), "successors": [str(w) for w in witness[1]]}
        print(_dumps(data), file=out)
    else:
        print("positive entropy", file=out)
        print(f"no trivial block structure: {stuck}", file=out)
        if witness is not None:
            succ = " ".join(str(w) for w in witness[1])
            print(f"branching path: {witness[0]} -> {succ}", file=out)
    return EXIT_NEGATIVE


def cmd_collapse(args, out) -> int:
    _check_format(args, ("text", "json"))
    P = _read_pattern(args)
    S = collapse.maximal_trivial_structure(P)
    if S is None:
        if args.format == "json":
            print(_dumps({"pattern": str(P), "structure": None}), file=out)
        else:
            print(f"no trivial block structure: {P}", file=out)
        return EXIT_NEGATIVE
    C = collapse.combinatorial_collapse(P, S)
    if args.format == "json":
        print(_dumps({"pattern": str(P), "p": S.p, "blocks": [list(b) for b in S.blocks],
                      "collapse": formats.pattern_to_dict(C)}), file=out)
    else:
        print(f"p: {S.p}", file=out)
        print("blocks: " + " | ".join(" ".join(map(str, b)) for b in S.blocks), file=out)
        print(f"collapse: {C}", file=out)
    return EXIT_OK


def _policy(token: str) -> explosion.LiftPolicy:
    _, policies = explosion.parse_policy_script("base=1 " + token)
    if len(policies) != 1:
        raise UsageError(f"bad policy {token!r}")
    return policies[0]


def cmd_explode(args, out) -> int:
    _check_format(args, ("text", "json"))
    if args.script is not None:
        if args.pattern is not None or args.file is not None:
            raise UsageError("--script replaces the input pattern")
        try:
            p0, policies = explosion.parse_policy_script(args.script)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        P = explosion.explode_sequence(p0, policies)
    else:
        try:
            policy = _policy(args.policy)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        P = explosion.double(_read_pattern(args), policy)
    if args.format == "json":
        print(formats.format_json(P), file=out)
    else:
        print(P, file=out)
        print(f"class: {star_class(P)}", file=out)
    return EXIT_OK


def _table(N: int, K: int) -> list[dict]:
    rows = []
    for n in range(3, N + 1):
        rows.append({"n": n, "zero": {str(k): stars.zero_possible(n, k) for k in range(3, K + 1) if k <= n}})
    return rows


def cmd_construct(args, out) -> int:
    _check_format(args, ("text", "json"))
    if args.table is not None:
        N, K = args.table
        if K < 3 or N < 3:
            raise UsageError("--table needs N >= 3 and K >= 3")
        rows = _table(N, K)
        if args.format == "json":
            print(_dumps({"table": rows}), file=out)
        else:
            print("n\\k " + " ".join(f"{k:>2}" for k in range(3, K + 1)), file=out)
            for row in rows:
                cells = [" " + ("Y" if row["zero"][str(k)] else ".") if str(k) in row["zero"] else "  "
                         for k in range(3, K + 1)]
                print(f"{row['n']:>3} " + " ".join(cells), file=out)
        return EXIT_OK
    if args.n is None or args.k is None:
        raise UsageError("construct needs n and k (or --table N K)")
    n, k = args.n, args.k
    try:
        if args.relaxed:
            used, P = stars.relaxed_zero_pattern(n, k)
        else:
            used, P = k, stars.star_zero_pattern(n, k)
    except NotRepresentable as exc:
        if args.format == "json":
            print(_dumps({"n": n, "k": k, "error": "NotRepresentable", "message": str(exc)}), file=out)
        else:
            print(f"NotRepresentable: {exc}", file=out)
        return EXIT_NEGATIVE
    cert = collapse.is_strongly_collapsible(P)
    cls = star_class(P)
    if args.format == "json":
        print(_dumps({"n": n, "k": k, "branches": used, "pattern": formats.pattern_to_dict(P),
                      "class": str(cls), "certificate": cert.to_dict()}), file=out)
    else:
        print(P, file=out)
        print(f"class: {cls}", file=out)
        for line in _chain_text(cert):
            print(line, file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    _check_format(args, ("text", "json"))
    if args.star is not None:
        if args.star < 3 or args.n < args.star:
            raise UsageError("--star k needs n >= k >= 3")
        stream = enumeration.enumerate_star_patterns(args.n, args.star, args.family, args.cap)
    else:
        stream = enumeration.enumerate_patterns(args.n, args.cap)
    found = []
    for P in stream:
        if args.zero_only and collapse.is_strongly_collapsible(P) is None:
            continue
        found.append(P)
    found.sort(key=lambda P: P.components)
    if args.format == "json":
        data = {"period": args.n, "star": args.star, "family": args.family,
                "zero_only": args.zero_only, "count": len(found)}
        if not args.count_only:
            data["patterns"] = [str(P) for P in found]
        print(_dumps(data), file=out)
    elif args.count_only:
        print(len(found), file=out)
    else:
        for P in found:
            print(P, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    _check_format(args, ("text", "json"))
    report = enumeration.verify_theorem_c(args.n_max, args.k_max, on_star=not args.pattern_entropy)
    if args.format == "json":
        print(report.to_json(), file=out)
    else:
        for row in report.rows:
            mark = "ok" if row["found"] == row["predicted"] else "MISMATCH"
            extra = f" witness={row['witness']}" if row["witness"] else ""
            print(f"({row['n']},{row['k']}) predicted={row['predicted']} found={row['found']} "
                  f"[{row['method']}, {row['checked']} checked] {mark}{extra}", file=out)
        print(f"mismatches: {report.mismatches}", file=out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_matrix(args, out) -> int:
    P = _read_pattern(args)
    M = paths.path_matrix(P)
    if args.format == "dot":
        out.write(M.to_dot())
    elif args.format == "csv":
        out.write(M.to_csv())
    elif args.format == "json":
        print(_dumps({"paths": [str(p) for p in M.paths],
                      "adjacency": [list(r) for r in M.adjacency]}), file=out)
    else:
        for p, row in zip(M.paths, M.adjacency):
            print(f"{str(p):>7} " + " ".join(map(str, row)), file=out)
    return EXIT_OK


# --- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=("text", "json", "dot", "csv"))
    common.add_argument("--tol", type=float, default=paths.DEFAULT_TOL,
                        help="power-iteration tolerance")
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration period cap (default ${enumeration.ENV_CAP} or "
                             f"{enumeration.DEFAULT_CAP})")

    parser = _Parser(prog="treetropy", description="Zero-entropy decisions for periodic tree patterns.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("pattern", nargs="?", help='pattern such as "4: 0 2 | 0 1 | 1 3" or JSON; "-" reads stdin')
        p.add_argument("-f", "--file", help="read the pattern from a file")
        p.set_defaults(func=func)
        return p

    with_input("validate", cmd_validate, "check a pattern and print its star class")
    with_input("entropy", cmd_entropy, "spectral radius and entropy of the path matrix")
    with_input("zero", cmd_zero, "decide zero entropy and print the collapse certificate")
    with_input("collapse", cmd_collapse, "one collapse step by the maximal trivial structure")
    p = with_input("explode", cmd_explode, "double the period with a lift policy")
    p.add_argument("--policy", default="ne", help="ne, ee2 or ee2@PIVOT")
    p.add_argument("--script", help='build from scratch, e.g. "base=3 ne ee2@0"')
    with_input("matrix", cmd_matrix, "path covering matrix")

    p = sub.add_parser("construct", parents=[common], help="zero-entropy star pattern for (n, k)")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--relaxed", action="store_true", help="allow branches without orbit points")
    p.add_argument("--table", type=int, nargs=2, metavar=("N", "K"), help="print the (n, k) truth table")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", parents=[common], help="all patterns of period n up to rotation")
    p.add_argument("n", type=int)
    p.add_argument("--star", type=int, metavar="K", help="only k-star patterns")
    p.add_argument("--family", choices=("NS", "S"), help="with --star: non-simplicial or simplicial only")
    p.add_argument("--zero-only", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-theorem-c", parents=[common],
                       help="compare the (n, k) predicate with exhaustive star searches")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--pattern-entropy", action="store_true",
                   help="accept any zero-entropy star pattern, not only zero-entropy maps of the star")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("treetropy: error: --tol must be positive", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args, out)
    except (UsageError, PatternError, OSError, BadRange, CapExceeded, PolicyMismatch) as exc:
        print(f"treetropy: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (NonConvergence, VerificationFailed, TreetropyError) as exc:
        print(f"treetropy: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
