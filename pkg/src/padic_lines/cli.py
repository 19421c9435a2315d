"""Command-line front door: certify, bound, search, version.

Exit codes are a pure function of the input: 0 success (certify: the
configuration is certified; bound: every counted inequality holds), 1
input error (malformed file or flags, offending field named on stderr),
2 well-formed configuration that is not certified, 3 a counted bound
fails, 4 a search surfaced a certified configuration violating a bound.

All output is deterministic and line-oriented; certificates and search
results are JSON, tables are TSV.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .equiangular import (
    GammaMismatchError,
    bound_classical_gerzon,
    bound_classical_relative,
    bound_ga_relative,
    bound_padic_relative,
    certify,
    configuration_from_json,
)
from .padic import Prime, parse_abs, parse_rational
from .search import frontier_table, run_search, search_space_from_json

_BOUND_TABLE_HEADER = "name\tlhs\trhs\tholds\tsubcase"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BrokenPipeError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-lines",
        description="Certify p-adic equiangular line configurations and check bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="certify a configuration file")
    cert.add_argument("path", type=Path, help="configuration JSON file")
    cert.add_argument(
        "--precision", type=int, default=64, help="p-adic digits for Hensel witnesses"
    )
    cert.set_defaults(handler=_cmd_certify)

    bound = sub.add_parser("bound", help="evaluate bounds from parameters")
    bound.add_argument("--p", help="prime (p-adic mode)")
    bound.add_argument("--n", type=int, required=True, help="number of lines")
    bound.add_argument("--d", type=int, required=True, help="dimension")
    bound.add_argument("--gamma", help="common angle, '0' or 'p^e' (p-adic mode)")
    bound.add_argument("--a", help="common self-product (optional, p-adic mode)")
    bound.add_argument(
        "--classical", action="store_true", help="evaluate the classical real-case bound"
    )
    bound.add_argument("--gamma2", help="gamma squared as a rational (classical mode)")
    bound.set_defaults(handler=_cmd_bound)

    search = sub.add_parser("search", help="run a lattice search job")
    search.add_argument("path", type=Path, help="job file (JSON or TOML)")
    search.add_argument("--workers", type=int, default=1, help="parallel scan workers")
    search.add_argument(
        "--json-out", type=Path, default=None, help="write the full result JSON here"
    )
    search.set_defaults(handler=_cmd_search)

    version = sub.add_parser("version", help="print version")
    version.set_defaults(handler=lambda args: print(f"padic-lines {__version__}") or 0)
    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _cmd_certify(args) -> int:
    try:
        raw = json.loads(args.path.read_text())
    except OSError as exc:
        return _fail(f"cannot read {args.path}: {exc}")
    except json.JSONDecodeError as exc:
        return _fail(f"malformed JSON in {args.path}: {exc}")
    if isinstance(raw, dict) and raw.get("mode") == "certify":
        extra = set(raw) - {"mode", "configuration"}
        if extra:
            return _fail(f"job: unknown fields {sorted(extra)}")
        if "configuration" not in raw:
            return _fail("job: missing field 'configuration'")
        raw = raw["configuration"]
    try:
        cfg = configuration_from_json(raw)
        certificate = certify(cfg, precision=args.precision)
    except GammaMismatchError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))
    sys.stdout.write(certificate.to_json())
    return 0 if certificate.is_equiangular else 2


def _cmd_bound(args) -> int:
    if args.classical:
        if args.gamma2 is None:
            return _fail("--classical requires --gamma2")
        try:
            gamma_sq = parse_rational(args.gamma2)
            reports = [
                bound_classical_relative(args.n, args.d, gamma_sq),
                bound_classical_gerzon(args.n, args.d),
            ]
        except ValueError as exc:
            return _fail(str(exc))
        counted = reports
        p = None
    else:
        if args.p is None or args.gamma is None:
            return _fail("p-adic mode requires --p and --gamma (or use --classical)")
        try:
            p = Prime(int(args.p))
        except ValueError as exc:
            return _fail(f"p: {exc}")
        try:
            gamma = parse_abs(args.gamma, p)
        except ValueError as exc:
            return _fail(str(exc))
        try:
            reports = [bound_padic_relative(args.n, args.d, gamma, p)]
            if args.a is not None:
                a = parse_rational(args.a)
                reports.append(bound_ga_relative(args.n, args.d, gamma, a, p))
            counted = list(reports)
            # the real-case cap is printed for comparison only; p-adic
            # families may legitimately exceed it
            reports.append(bound_classical_gerzon(args.n, args.d))
        except ValueError as exc:
            return _fail(str(exc))
    print(_BOUND_TABLE_HEADER)
    for report in reports:
        row = report.as_json_dict(p)
        print(
            "\t".join(
                [
                    row["name"],
                    row["lhs"],
                    row["rhs"],
                    "true" if row["holds"] else "false",
                    row["subcase"],
                ]
            )
        )
    return 0 if all(r.holds for r in counted) else 3


def _load_job(path: Path) -> dict:
    text = path.read_bytes()
    if path.suffix == ".toml":
        try:
            import tomllib  # type: ignore[import-not-found]
        except ModuleNotFoundError:
            import tomli as tomllib
        return tomllib.loads(text.decode())
    return json.loads(text.decode())


def _cmd_search(args) -> int:
    try:
        raw = _load_job(args.path)
    except OSError as exc:
        return _fail(f"cannot read {args.path}: {exc}")
    except (json.JSONDecodeError, ValueError) as exc:
        return _fail(f"malformed job file {args.path}: {exc}")
    if not isinstance(raw, dict):
        return _fail("job: expected an object")
    if raw.get("mode") != "search":
        return _fail("job: missing or unsupported mode (expected \"search\")")
    extra = set(raw) - {"mode", "space", "fault_injection"}
    if extra:
        return _fail(f"job: unknown fields {sorted(extra)}")
    if "space" not in raw:
        return _fail("job: missing field 'space'")
    corrupt = None
    if "fault_injection" in raw:
        fault = raw["fault_injection"]
        if not isinstance(fault, dict) or set(fault) != {"corrupt_bound"}:
            return _fail("fault_injection: expected {'corrupt_bound': name}")
        corrupt = fault["corrupt_bound"]
    try:
        space = search_space_from_json(raw["space"])
    except ValueError as exc:
        return _fail(str(exc))
    if args.workers < 1:
        return _fail(f"--workers must be positive, got {args.workers}")

    result = run_search(space, workers=args.workers, corrupt_bound=corrupt)
    sys.stdout.write(frontier_table([result]))
    if not result.found:
        print("# no candidates")
    if result.truncated:
        print("# truncated: clique growth stopped at max_n")
    if args.json_out is not None:
        args.json_out.write_text(result.to_json())
    if result.counterexamples:
        banner = "=" * 60
        print(banner, file=sys.stderr)
        print("BOUND VIOLATION: certified configuration fails a bound", file=sys.stderr)
        for cfg, cert, names in result.counterexamples:
            print(f"  violated: {', '.join(names)}", file=sys.stderr)
            print(f"  configuration: {json.dumps(cert.as_json_dict()['bounds'])}", file=sys.stderr)
        print(banner, file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
