"""DIMACS CNF export of the AG(2, q) extremal questions, and solution decoding.

min-nikodym, target k: is there a set S of >= k points in which every
member owns a private line?  Variables ``s_x`` (x in S) and ``y_{x,L}`` (L
is the private line of x) for each incident pair; clauses
``s_x -> OR_L y_{x,L}`` and ``y_{x,L} -> not s_z`` for z on L other than x.

min-kakeya, target k: is there a Kakeya set of <= k points?  Variables
``s_x`` (x in K) and ``y_L`` (L inside K); one clause per direction
``OR_L y_L`` and ``y_L -> s_z`` for z on L.

Cardinality uses the sequential counter of Sinz (2005) on at-most form;
the Nikodym lower bound is encoded as at most q^2 - k of the ``not s_x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InconsistentAssignment, ParseError, TooLarge
from .geometry import GeomSpec, make_geometry
from .search import Mode
from .sets import PointSet
from .verify import private_line

CNF_Q_LIMIT = 9


@dataclass
class CnfEncoding:
    geom: GeomSpec
    mode: Mode
    target: int
    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    membership: dict[int, int] = field(default_factory=dict)  # point -> var
    aux: dict[tuple, int] = field(default_factory=dict)  # (x, L) or (L,) -> var
    counter: tuple[int, int] | None = None  # inclusive var range

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def to_dimacs(self) -> str:
        g = self.geom
        out = [
            f"c nikodym-cnf mode={self.mode.value} p={g.field.p} k={g.field.k} n={g.n} target={self.target}",
        ]
        for x, v in sorted(self.membership.items(), key=lambda kv: kv[1]):
            out.append(f"c s {v} {x}")
        for key, v in sorted(self.aux.items(), key=lambda kv: kv[1]):
            out.append(f"c y {v} " + " ".join(map(str, key)))
        if self.counter is not None:
            out.append(f"c counter {self.counter[0]} {self.counter[1]}")
        out.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        out += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(out) + "\n"


def at_most(enc: CnfEncoding, lits: list[int], m: int) -> None:
    """Sequential counter: at most m of ``lits`` are true."""
    n = len(lits)
    if m >= n:
        return
    if m == 0:
        enc.clauses.extend([-x] for x in lits)
        return
    # r[i][j]: at least j+1 of lits[0..i] are true, i < n-1
    first = enc.num_vars + 1
    r = [[enc.new_var() for _ in range(m)] for _ in range(n - 1)]
    enc.counter = (first, enc.num_vars)
    cl = enc.clauses
    cl.append([-lits[0], r[0][0]])
    for j in range(1, m):
        cl.append([-r[0][j]])
    for i in range(1, n - 1):
        x = lits[i]
        cl.append([-x, r[i][0]])
        cl.append([-r[i - 1][0], r[i][0]])
        for j in range(1, m):
            cl.append([-x, -r[i - 1][j - 1], r[i][j]])
            cl.append([-r[i - 1][j], r[i][j]])
        cl.append([-x, -r[i - 1][m - 1]])
    cl.append([-lits[n - 1], -r[n - 2][m - 1]])


def counter_values(lit_values: list[bool], m: int) -> list[list[bool]]:
    """Register values that satisfy the sequential counter for given inputs."""
    out = []
    running = 0
    for v in lit_values[:-1]:
        running += v
        out.append([running >= j + 1 for j in range(m)])
    return out


def encode_cnf(geom: GeomSpec, mode: Mode | str, k: int) -> CnfEncoding:
    mode = Mode(mode)
    if geom.n != 2:
        raise ValueError("CNF export is defined for AG(2, q)")
    if geom.q > CNF_Q_LIMIT:
        raise TooLarge(f"q = {geom.q} exceeds the CNF export limit {CNF_Q_LIMIT}")
    enc = CnfEncoding(geom, mode, k)
    N = geom.num_points
    for x in range(N):
        enc.membership[x] = enc.new_var()
    s = enc.membership
    if mode is Mode.MIN_NIKODYM:
        for x in range(N):
            for lid in geom.point_lines[x]:
                enc.aux[(x, lid)] = enc.new_var()
        for x in range(N):
            enc.clauses.append([-s[x]] + [enc.aux[(x, lid)] for lid in geom.point_lines[x]])
        for x in range(N):
            for lid in geom.point_lines[x]:
                y = enc.aux[(x, lid)]
                enc.clauses.extend([-y, -s[z]] for z in geom.line_points[lid] if z != x)
        at_most(enc, [-s[x] for x in range(N)], max(0, N - k))
    else:
        for lid in range(geom.num_lines):
            enc.aux[(lid,)] = enc.new_var()
        per = geom.num_lines // geom.num_directions
        for d in range(geom.num_directions):
            enc.clauses.append([enc.aux[(lid,)] for lid in range(d * per, (d + 1) * per)])
        for lid in range(geom.num_lines):
            y = enc.aux[(lid,)]
            enc.clauses.extend([-y, s[z]] for z in geom.line_points[lid])
        at_most(enc, [s[x] for x in range(N)], k)
    return enc


def export_cnf(geom: GeomSpec, mode: Mode | str, k: int) -> str:
    return encode_cnf(geom, mode, k).to_dimacs()


def expected_size(q: int, mode: Mode | str, k: int) -> tuple[int, int]:
    """Closed-form (variables, clauses) of :func:`encode_cnf`."""
    mode = Mode(mode)
    N = q * q
    lines = q * (q + 1)

    def counter(n: int, m: int) -> tuple[int, int]:
        if m >= n:
            return 0, 0
        if m == 0:
            return 0, n
        return (n - 1) * m, 2 * n * m + n - 3 * m - 1

    if mode is Mode.MIN_NIKODYM:
        cv, cc = counter(N, max(0, N - k))
        return N + N * (q + 1) + cv, N + N * (q + 1) * (q - 1) + cc
    cv, cc = counter(N, k)
    return N + lines + cv, (q + 1) + lines * q + cc


# -- solutions --------------------------------------------------------------------

_HEADER = re.compile(r"c nikodym-cnf mode=(\S+) p=(\d+) k=(\d+) n=(\d+) target=(-?\d+)")


@dataclass
class CnfHeader:
    geom: GeomSpec
    mode: Mode
    target: int
    membership: dict[int, int]  # var -> point
    aux: dict[int, tuple[int, ...]]  # var -> (x, L) or (L,)
    num_vars: int


def parse_header(text: str) -> CnfHeader:
    meta = None
    membership: dict[int, int] = {}
    aux: dict[int, tuple[int, ...]] = {}
    num_vars = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad problem line {raw!r}", lineno)
            num_vars = int(parts[2])
            break
        if parts[0] != "c":
            continue
        m = _HEADER.match(raw)
        try:
            if m:
                meta = m.groups()
            elif len(parts) >= 4 and parts[1] == "s":
                membership[int(parts[2])] = int(parts[3])
            elif len(parts) >= 4 and parts[1] == "y":
                aux[int(parts[2])] = tuple(int(t) for t in parts[3:])
        except ValueError:
            raise ParseError(f"bad variable map line {raw!r}", lineno) from None
    if meta is None:
        raise ParseError("missing 'c nikodym-cnf' header comment")
    if num_vars is None:
        raise ParseError("missing 'p cnf' line")
    mode, p, k, n, target = meta
    return CnfHeader(make_geometry(int(p), int(k), int(n)), Mode(mode), int(target),
                     membership, aux, num_vars)


def parse_assignment(text: str) -> dict[int, bool]:
    values: dict[int, bool] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] != "v":
            continue
        for tok in parts[1:]:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"malformed literal {tok!r}", lineno) from None
            if lit == 0:
                continue
            values[abs(lit)] = lit > 0
    return values


def decode_solution(cnf_text: str, assignment_text: str) -> PointSet:
    """Points whose membership variable is true.

    For min-nikodym this is the complement S; the Nikodym set is its
    complement.  Raises InconsistentAssignment if the assignment violates
    the membership/auxiliary clauses.
    """
    header = parse_header(cnf_text)
    values = parse_assignment(assignment_text)
    geom = header.geom
    chosen = PointSet.from_points(geom, (x for v, x in header.membership.items() if values.get(v)))
    bits = chosen.bits
    for v, key in header.aux.items():
        if not values.get(v):
            continue
        if header.mode is Mode.MIN_NIKODYM:
            x, lid = key
            if geom.line_masks[lid] & bits & ~(1 << x):
                raise InconsistentAssignment(f"private line {lid} of point {x} is blocked")
        else:
            (lid,) = key
            if geom.line_masks[lid] & ~bits:
                raise InconsistentAssignment(f"line {lid} marked inside the set is not")
    return chosen


def solution_assignment(enc: CnfEncoding, chosen: PointSet) -> str:
    """A satisfying v-line assignment for a known feasible set (the s_x = 1 set)."""
    geom = enc.geom
    values = [False] * (enc.num_vars + 1)
    for x, v in enc.membership.items():
        values[v] = x in chosen
    if enc.mode is Mode.MIN_NIKODYM:
        for x in chosen:
            lid = private_line(chosen.bits, x, geom)
            if lid is None:
                raise ValueError(f"point {x} has no private line")
            values[enc.aux[(x, lid)]] = True
        inputs = [x not in chosen for x in range(geom.num_points)]
        m = max(0, geom.num_points - enc.target)
    else:
        for (lid,), v in enc.aux.items():
            values[v] = geom.line_masks[lid] & ~chosen.bits == 0
        inputs = [x in chosen for x in range(geom.num_points)]
        m = enc.target
    if enc.counter is not None:
        var = enc.counter[0]
        for row in counter_values(inputs, m):
            for bit in row:
                values[var] = bit
                var += 1
    lits = [v if values[v] else -v for v in range(1, enc.num_vars + 1)]
    return "v " + " ".join(map(str, lits)) + " 0\n"


def satisfies(enc: CnfEncoding, assignment_text: str) -> bool:
    values = parse_assignment(assignment_text)
    return all(any(values.get(abs(l), False) == (l > 0) for l in c) for c in enc.clauses)
