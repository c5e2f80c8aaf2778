"""Polynomial method over F_q: monomials, vanishing polynomials, restriction
to lines, and a step-by-step replay of the lower bound C(n+q-2, n) for
Nikodym sets.

Monomials of degree <= d in x_1..x_n are listed in graded-lex order:
ascending total degree, and within one degree the exponent tuples in
descending lexicographic order (1, x1, x2, x1^2, x1 x2, x2^2, ...).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .geometry import GeomSpec, Line
from .gf import FieldSpec
from .sets import PointSet
from .verify import private_line

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Monomial, ...]:
    out: list[Monomial] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    for deg in range(d + 1):
        rec([], deg, n)
    return tuple(out)


def monomial_count(n: int, d: int) -> int:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(n + d, n)


def theorem1_bound(n: int, q: int) -> int:
    """Lower bound C(n+q-2, n) on the size of a Nikodym set in F_q^n."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    return math.comb(n + q - 2, n)


def dvir_kakeya_bound(n: int, q: int) -> int:
    """Dvir's lower bound C(n+q-1, n) on the size of a Kakeya set in F_q^n."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    return math.comb(n + q - 1, n)


# -- linear algebra -----------------------------------------------------------

def row_reduce(matrix: list[list[int]], F: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: scan columns left to right, take the topmost remaining row
    with a nonzero entry, scale it to 1, clear the column everywhere else.
    """
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    add, mul, neg = F.add, F.mul, F.neg
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        prow = [mul(inv, a) for a in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            c = rows[i][col]
            if i != r and c:
                nc = neg(c)
                rows[i] = [add(a, mul(nc, b)) for a, b in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def null_space(matrix: list[list[int]], F: FieldSpec, ncols: int | None = None) -> list[list[int]]:
    """Kernel basis in free-variable form, one vector per free column (ascending).

    ``ncols`` is needed only when the matrix has no rows.
    """
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    rref, pivots = row_reduce(matrix, F)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for row_i, pc in enumerate(pivots):
            v[pc] = F.neg(rref[row_i][f])
        basis.append(v)
    return basis


def rank(matrix: list[list[int]], F: FieldSpec) -> int:
    if not matrix:
        return 0
    return len(row_reduce(matrix, F)[1])


# -- polynomials ----------------------------------------------------------------

@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one variable t, coefficients low degree first, trimmed."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, F: FieldSpec, coeffs) -> "UniPoly":
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return cls(F, tuple(c))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, t), c)
        return acc

    def roots(self) -> list[int]:
        return [t for t in range(self.field.q) if self(t) == 0]

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        F = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UniPoly.make(F, out)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        a = a + (0,) * (m - len(a))
        b = b + (0,) * (m - len(b))
        return UniPoly.make(F, [F.add(x, y) for x, y in zip(a, b)])

    def __str__(self) -> str:
        return _format_terms(
            [(c, "" if i == 0 else ("t" if i == 1 else f"t^{i}")) for i, c in enumerate(self.coeffs)]
        )


def _format_terms(terms) -> str:
    parts = []
    for c, mono in terms:
        if not c:
            continue
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class MultiPoly:
    """Polynomial of degree <= ``degree`` over AG(n, q) in graded-lex coefficients."""

    geom: GeomSpec
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != monomial_count(self.geom.n, self.degree):
            raise ValueError("coefficient vector has the wrong length")

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return monomials(self.geom.n, self.degree)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def total_degree(self) -> int:
        """Actual total degree, -1 for the zero polynomial."""
        return max((sum(m) for m, c in zip(self.monomials, self.coeffs) if c), default=-1)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self) -> str:
        terms = []
        for m, c in zip(self.monomials, self.coeffs):
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e
            )
            terms.append((c, mono))
        return _format_terms(terms)


def _power_table(F: FieldSpec, coords, d: int) -> list[list[int]]:
    table = []
    for c in coords:
        row = [1]
        for _ in range(d):
            row.append(F.mul(row[-1], c))
        table.append(row)
    return table


def _eval_row(geom: GeomSpec, d: int, x: int) -> list[int]:
    """Values of every monomial of degree <= d at the point x."""
    F = geom.field
    pw = _power_table(F, geom.coords(x), d)
    out = []
    for m in monomials(geom.n, d):
        v = 1
        for i, e in enumerate(m):
            if e:
                v = F.mul(v, pw[i][e])
        out.append(v)
    return out


def evaluate(g: MultiPoly, x: int) -> int:
    F = g.geom.field
    acc = 0
    for c, v in zip(g.coeffs, _eval_row(g.geom, g.degree, x)):
        if c:
            acc = F.add(acc, F.mul(c, v))
    return acc


def evaluation_matrix(b: PointSet, d: int) -> list[list[int]]:
    """Rows: points of b ascending; columns: monomials of degree <= d."""
    return [_eval_row(b.geom, d, x) for x in b]


def vanishing_poly(b: PointSet, d: int) -> MultiPoly | None:
    """First kernel vector of the evaluation matrix as a polynomial, or None.

    A nonzero result always exists when |b| < C(n+d, n).
    """
    geom = b.geom
    ncols = monomial_count(geom.n, d)
    basis = null_space(evaluation_matrix(b, d), geom.field, ncols)
    if not basis:
        return None
    return MultiPoly(geom, d, tuple(basis[0]))


def restrict_to_line(g: MultiPoly, line: Line | int) -> UniPoly:
    """h(t) = g(base + t * rep), expanded symbolically."""
    geom = g.geom
    F = geom.field
    lid = line.id if isinstance(line, Line) else line
    ln = geom.line(lid)
    base = geom.coords(ln.base)
    rep = geom.coords(geom.direction_reps[ln.direction])
    # powers[i][e] = (base_i + rep_i t)^e
    powers = []
    for b_i, r_i in zip(base, rep):
        lin = UniPoly.make(F, [b_i, r_i])
        row = [UniPoly(F, (1,))]
        for _ in range(g.degree):
            row.append(row[-1] * lin)
        powers.append(row)
    total = UniPoly(F, ())
    for m, c in zip(g.monomials, g.coeffs):
        if not c:
            continue
        term = UniPoly(F, (c,))
        for i, e in enumerate(m):
            if e:
                term = term * powers[i][e]
        total = total + term
    return total


# -- proof replay ---------------------------------------------------------------

class Conclusion(enum.Enum):
    BOUND_RESPECTED = "bound_respected"
    NOT_NIKODYM = "not_nikodym"
    TRACE_COMPLETE = "trace_complete"


FINAL_STEP_REASON = (
    "g has total degree <= q-2, so each variable appears with degree < q; "
    "such a polynomial is determined by its values on F_q^n, and vanishing "
    "everywhere forces every coefficient to be 0"
)


@dataclass
class RestrictionVerdict:
    point: int
    line: int
    restriction: UniPoly
    roots: int
    is_zero: bool
    value_at_point: int

    @property
    def fault(self) -> bool:
        q = self.restriction.field.q
        return not self.is_zero or self.roots < q - 1 or self.value_at_point != 0


def check_restriction(g: MultiPoly, x: int, line: int) -> RestrictionVerdict:
    h = restrict_to_line(g, line)
    return RestrictionVerdict(x, line, h, len(h.roots()), h.is_zero(), g(x))


@dataclass
class ProofTrace:
    pointset: PointSet
    size_bound: int
    conclusion: Conclusion
    degree: int
    g: MultiPoly | None = None
    witnesses: dict[int, int] = field(default_factory=dict)
    restrictions: list[RestrictionVerdict] = field(default_factory=list)
    failure: int | None = None
    fault: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.pointset.size

    def summary(self) -> str:
        parts = [f"conclusion={self.conclusion.value}"]
        if self.failure is not None:
            parts.append(f"point={self.failure}")
        parts += [f"size={self.size}", f"bound={self.size_bound}"]
        if self.conclusion is Conclusion.TRACE_COMPLETE:
            parts.append(f"fault={'true' if self.fault else 'false'}")
        return " ".join(parts)

    def report(self) -> str:
        geom = self.pointset.geom
        lines = [
            f"geometry: {geom!r} over {geom.field}",
            f"|B| = {self.size}",
            f"bound C(n+q-2, n) = C({geom.n + geom.q - 2}, {geom.n}) = {self.size_bound}",
        ]
        if self.conclusion is Conclusion.BOUND_RESPECTED:
            lines.append("step 1: |B| >= bound; nothing to refute")
        else:
            lines.append("step 1: |B| < bound; proceeding by contradiction")
            lines.append(f"step 2: vanishing polynomial of degree <= {self.degree}: g = {self.g}")
            for x, lid in sorted(self.witnesses.items()):
                lines.append(f"step 3: x={x} {geom.coords(x)} witness line {lid}")
            if self.failure is not None:
                lines.append(
                    f"step 3: x={self.failure} {geom.coords(self.failure)} has no line "
                    f"meeting the complement only at x; B is not Nikodym"
                )
            for v in self.restrictions:
                lines.append(
                    f"step 4: x={v.point} line {v.line}: g|L = {v.restriction}, "
                    f"roots={v.roots}, zero={v.is_zero}, g(x)={v.value_at_point}"
                )
        lines.extend(self.notes)
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


def proof_trace(b: PointSet) -> ProofTrace:
    geom = b.geom
    q, n = geom.q, geom.n
    bound = theorem1_bound(n, q)
    d = q - 2
    if b.size >= bound:
        return ProofTrace(b, bound, Conclusion.BOUND_RESPECTED, d)

    g = vanishing_poly(b, d)
    if g is None or g.is_zero():
        raise AssertionError("no nonzero vanishing polynomial below the monomial count")
    trace = ProofTrace(b, bound, Conclusion.NOT_NIKODYM, d, g=g)

    comp = b.complement()
    for x in comp:
        lid = private_line(comp.bits, x, geom)
        if lid is None:
            trace.failure = x
            return trace
        trace.witnesses[x] = lid

    # Unreachable for a correct implementation: every step below is refuted.
    trace.conclusion = Conclusion.TRACE_COMPLETE
    for x, lid in sorted(trace.witnesses.items()):
        v = check_restriction(g, x, lid)
        trace.restrictions.append(v)
        trace.fault |= v.fault
    everywhere = all(g(x) == 0 for x in geom.points())
    trace.notes.append(f"g vanishes on all {geom.num_points} points: {everywhere}")
    trace.notes.append(f"justification: {FINAL_STEP_REASON}")
    trace.notes.append("contradiction: g is nonzero; this indicates an implementation fault")
    trace.fault = True
    return trace
