"""Command-line interface.

Exit status: 0 success or PASS, 1 verified failure (FAIL, mismatch),
2 usage or parse error, 3 internal assertion.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cycle_census as census_mod
from . import debruijn, omega
from .errors import ConsistencyError, GenerationError, SumregError
from .fsr import FeedbackSpec, State

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(SumregError):
    pass


def _emit_json(out, payload) -> None:
    out.write(json.dumps(payload, indent=2) + "\n")


def cmd_cycles(args, out) -> int:
    kind = args.register.upper()
    methods = {"formula": ["formula"], "enumerate": ["enumeration"],
               "both": ["formula", "enumeration"]}[args.method]
    tables = {m: census_mod.census(kind, args.n, m) for m in methods}
    keys = sorted(set().union(*(t.entries for t in tables.values())))
    rows = [{"d": d, **{m: tables[m].entries.get(d, 0) for m in methods}} for d in keys]
    verdict = None
    if len(methods) == 2:
        for row in rows:
            row["match"] = row["formula"] == row["enumeration"]
        verdict = "match" if all(r["match"] for r in rows) else "mismatch"
    if args.json:
        payload = {"command": "cycles", "register": kind, "n": args.n,
                   "method": args.method, "convention": census_mod.CONVENTION,
                   "rows": rows}
        if verdict:
            payload["verdict"] = verdict
        _emit_json(out, payload)
    else:
        out.write(f"# {kind} n={args.n}: {census_mod.CONVENTION}\n")
        out.write("\t".join(["d"] + methods + (["verdict"] if verdict else [])) + "\n")
        for row in rows:
            cells = [str(row["d"])] + [str(row[m]) for m in methods]
            if verdict:
                cells.append("match" if row["match"] else "mismatch")
            out.write("\t".join(cells) + "\n")
    return EXIT_FAIL if verdict == "mismatch" else EXIT_OK


def read_utable(path: str, n: int) -> debruijn.UTable:
    """Parse ``k: bits`` lines; k values not listed keep the default bridge."""
    table = debruijn.default_utable(n)
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, bits = line.partition(":")
        try:
            if not sep:
                raise ValueError("expected 'k: bits'")
            table.bridges[int(key)] = State.from_string(bits)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    problems = debruijn.validate_utable(n, table)
    if problems:
        raise UsageError(f"{path}: invalid bridge table\n  " + "\n  ".join(problems))
    return table


def cmd_generate(args, out) -> int:
    u = read_utable(args.utable, args.n) if args.utable else debruijn.default_utable(args.n)
    seed = None
    if args.seed:
        seed = State.from_string(args.seed)
        if seed.n != args.n:
            raise UsageError(f"seed has {seed.n} bits, expected {args.n}")
    bits = debruijn.generate(args.n, u, seed)
    if not debruijn.verify_debruijn(bits, args.n):
        raise GenerationError("generated sequence failed verification", len(bits))
    out.write(bits + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    text = Path(args.input).read_text() if args.input else sys.stdin.read()
    text = "".join(text.split())
    if set(text) - {"0", "1"}:
        raise UsageError("input may contain only '0', '1' and whitespace")
    size = 1 << args.n
    if len(text) != size:
        out.write(f"FAIL length {len(text)} != {size}\n")
        return EXIT_FAIL
    repeat = debruijn.first_repeated_window(text, args.n)
    if repeat is not None:
        out.write(f"FAIL repeated window {repeat}\n")
        return EXIT_FAIL
    out.write("PASS\n")
    return EXIT_OK


def cmd_join(args, out) -> int:
    mc = debruijn.build_main_cycle(FeedbackSpec.csr(args.n), args.k)
    if args.json:
        _emit_json(out, {"command": "join", "n": args.n, "k": args.k,
                         "numbering": "state value + 1",
                         "states": mc.decimal_labels(),
                         "joins": [list(p) for p in mc.join_decimals()]})
        return EXIT_OK
    out.write(f"# MC{args.k} of CSR n={args.n}, {len(mc.states)} states numbered value+1\n")
    out.write(" ".join(map(str, mc.decimal_labels())) + "\n")
    out.write(" ".join(["joins:"] + [f"({p},{q})" for p, q in mc.join_decimals()]) + "\n")
    return EXIT_OK


def cmd_omega(args, out) -> int:
    try:
        report = omega.enumerate_omega(args.n, args.scope, workers=args.workers)
    except SumregError as exc:
        raise UsageError(str(exc)) from None
    members = [{"g": "".join(map(str, f.g_table)), "kind": f.kind.value}
               for f in report.members]
    ok = sorted(report.kinds) == ["CSR", "PSR"]
    if args.json:
        _emit_json(out, {"command": "omega", "n": args.n, "scope": args.scope,
                         "tested": report.tested, "members": members,
                         "count": len(members), "expected": 2})
    else:
        out.write(f"# n={args.n} scope={args.scope} tested={report.tested}\n")
        for m in members:
            out.write(f"g={m['g']} kind={m['kind']}\n")
        out.write(f"count={len(members)} expected=2\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_symfn(args, out) -> int:
    text = args.vector.strip()
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"malformed vector {args.vector!r}")
    vec = [int(c) for c in text]
    res = omega.value_to_anf(vec) if args.direction == "v2a" else omega.anf_to_value(vec)
    out.write("".join(map(str, res)) + "\n")
    return EXIT_OK


def _order(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("order must be at least 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumreg",
        description="Cycle structure and de Bruijn generation for summing registers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cycles", help="cycle-length census of PSR_n or CSR_n")
    p.add_argument("--register", choices=["psr", "csr"], required=True)
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--method", choices=["formula", "enumerate", "both"], default="formula")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("generate", help="print a de Bruijn cycle built from CSR_n")
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--utable", metavar="FILE", help="bridge states, one 'k: bits' per line")
    p.add_argument("--seed", metavar="BITS", help="initial window (default 01...1)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check that a bit string is a de Bruijn cycle")
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--input", metavar="FILE", help="read bits from FILE instead of stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("join", help="list the main cycle MC_k of CSR_n and its join pairs")
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_join)

    p = sub.add_parser("omega", help="find registers whose cycle lengths all divide n+1")
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--scope", choices=["exhaustive", "symmetric-only"], default="exhaustive")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("symfn", help="convert between value and ANF vectors")
    p.add_argument("direction", choices=["v2a", "a2v"])
    p.add_argument("vector")
    p.set_defaults(func=cmd_symfn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        return args.func(args, out)
    except ConsistencyError as exc:
        print(f"sumreg: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GenerationError as exc:
        print(f"sumreg: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SumregError, ValueError, OSError) as exc:
        print(f"sumreg: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
