"""Command line front end.

Exit status: 0 property holds / success, 1 property fails, 2 input or
usage error, 3 search stopped by its timeout without a proof.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bound2d, cnf, polymethod, search, tables
from .errors import InternalContradiction, NikodymError
from .geometry import make_geometry
from .gf import prime_power
from .sets import read_pointset, write_pointset
from .verify import is_kakeya, is_nikodym, write_witnesses

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_TIMEOUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nikodym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="CSV table of lower bounds and known optima")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--qmax", type=int, required=True)

    p = sub.add_parser("verify", help="check the Nikodym or Kakeya property")
    p.add_argument("--file", required=True)
    p.add_argument("--mode", choices=["nikodym", "kakeya"], required=True)
    p.add_argument("--witness-out")

    p = sub.add_parser("trace", help="replay the polynomial-method lower bound")
    p.add_argument("--file", required=True)

    p = sub.add_parser("audit2d", help="audit the two-dimensional counting bound")
    p.add_argument("--file", required=True)

    p = sub.add_parser("search", help="exact minimum Nikodym or Kakeya set in AG(2, q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in search.Mode], required=True)
    p.add_argument("--sym", choices=[s.value for s in search.Symmetry], default="translations")
    p.add_argument("--timeout", type=float)
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("export-sat", help="write a DIMACS CNF for an external solver")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in search.Mode], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("decode", help="turn a solver assignment into a point-set file")
    p.add_argument("--cnf", required=True)
    p.add_argument("--assignment", required=True)
    return parser


def _geom_2d(q: int):
    pk = prime_power(q)
    if pk is None:
        raise NikodymError(f"q = {q} is not a prime power")
    return make_geometry(pk[0], pk[1], 2)


def _read(path: str):
    return read_pointset(Path(path).read_text(encoding="utf-8"))


def cmd_bounds(args, out) -> int:
    if args.qmax < 2:
        raise NikodymError("--qmax must be at least 2")
    out.write(tables.bounds_csv(args.n, args.qmax))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    b = _read(args.file)
    g = b.geom
    if args.mode == "nikodym":
        res = is_nikodym(b)
        pairs = res.witnesses
        out.write(f"geometry: {g!r}, |B| = {b.size}, |B^c| = {g.num_points - b.size}\n")
        if res.holds:
            for x, lid in sorted(pairs.items()):
                out.write(f"point {x} {g.coords(x)}: line {lid}\n")
            out.write(f"property=nikodym holds=true size={b.size}\n")
        else:
            out.write(f"point {res.failure} {g.coords(res.failure)} has no private line\n")
            out.write(f"property=nikodym holds=false point={res.failure} size={b.size}\n")
    else:
        res = is_kakeya(b)
        pairs = res.lines
        out.write(f"geometry: {g!r}, |K| = {b.size}\n")
        if res.holds:
            for d, lid in sorted(pairs.items()):
                out.write(f"direction {d} {g.coords(g.direction_reps[d])}: line {lid}\n")
            out.write(f"property=kakeya holds=true size={b.size}\n")
        else:
            out.write(f"direction {res.failure} has no line inside the set\n")
            out.write(f"property=kakeya holds=false direction={res.failure} size={b.size}\n")
    if res.holds and args.witness_out:
        Path(args.witness_out).write_text(write_witnesses(pairs), encoding="utf-8")
    return EXIT_OK if res.holds else EXIT_FAILS


def cmd_trace(args, out) -> int:
    trace = polymethod.proof_trace(_read(args.file))
    out.write(trace.report())
    return EXIT_OK if trace.conclusion is polymethod.Conclusion.BOUND_RESPECTED else EXIT_FAILS


def cmd_audit2d(args, out) -> int:
    b = _read(args.file)
    if b.geom.n != 2:
        raise NikodymError("audit2d needs a point set in AG(2, q)")
    res = is_nikodym(b)
    if not res.holds:
        out.write(f"verdict=not_nikodym point={res.failure} size={b.size}\n")
        return EXIT_FAILS
    try:
        report = bound2d.audit(b, res.witnesses).report()
    except InternalContradiction as exc:
        out.write(f"internal contradiction: {exc}\nverdict=internal_contradiction\n")
        return EXIT_FAILS
    out.write(report)
    return EXIT_OK


def cmd_search(args, out) -> int:
    geom = _geom_2d(args.q)
    if args.mode == search.Mode.MIN_NIKODYM.value:
        res = search.min_nikodym(geom, args.sym, timeout=args.timeout, threads=args.threads)
    else:
        res = search.min_kakeya(geom, args.sym, timeout=args.timeout)
    out.write(res.report())
    return EXIT_OK if res.proved_optimal else EXIT_TIMEOUT


def cmd_export_sat(args, out) -> int:
    enc = cnf.encode_cnf(_geom_2d(args.q), args.mode, args.k)
    Path(args.out).write_text(enc.to_dimacs(), encoding="utf-8")
    out.write(f"mode={args.mode} q={args.q} k={args.k} vars={enc.num_vars} clauses={len(enc.clauses)}\n")
    return EXIT_OK


def cmd_decode(args, out) -> int:
    chosen = cnf.decode_solution(
        Path(args.cnf).read_text(encoding="utf-8"),
        Path(args.assignment).read_text(encoding="utf-8"),
    )
    out.write(write_pointset(chosen))
    print(f"points={chosen.size}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "trace": cmd_trace,
    "audit2d": cmd_audit2d,
    "search": cmd_search,
    "export-sat": cmd_export_sat,
    "decode": cmd_decode,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (NikodymError, OSError) as exc:
        print(f"nikodym {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
