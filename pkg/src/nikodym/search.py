"""Exact extremal search in AG(2, q).

Minimum Nikodym sets are found through their complements: a set S is the
complement of a Nikodym set iff every x in S has a private line, i.e. a
line through x containing no other point of S.  That family is closed
under subsets and under affine maps, which is what makes the bounding and
lex-leader pruning below sound.

Minimum Kakeya sets are unions of one line per direction, so the Kakeya
search ranges over line choices rather than subsets.
"""

from __future__ import annotations

import enum
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import TooLarge
from .geometry import GeomSpec, make_geometry
from .sets import PointSet
from .verify import is_kakeya, is_nikodym

NIKODYM_PROOF_LIMIT = 5
KAKEYA_LIMIT = 9
_CLOCK_EVERY = 64


class Mode(enum.Enum):
    MIN_NIKODYM = "min-nikodym"
    MIN_KAKEYA = "min-kakeya"


class Symmetry(enum.Enum):
    NONE = "none"
    TRANSLATIONS = "translations"
    AFFINE = "affine"


@dataclass
class SearchResult:
    mode: Mode
    geom: GeomSpec
    optimum: int
    witness: PointSet
    nodes_explored: int
    proved_optimal: bool
    symmetry: Symmetry

    def summary(self) -> str:
        return (
            f"mode={self.mode.value} q={self.geom.q} n={self.geom.n} optimum={self.optimum} "
            f"proved={'true' if self.proved_optimal else 'false'} "
            f"nodes={self.nodes_explored} sym={self.symmetry.value}"
        )

    def report(self) -> str:
        g = self.geom
        lines = [f"geometry: {g!r}", f"mode: {self.mode.value}", f"symmetry: {self.symmetry.value}"]
        what = "Nikodym" if self.mode is Mode.MIN_NIKODYM else "Kakeya"
        status = "proved optimal" if self.proved_optimal else "best found, not proved"
        lines.append(f"minimum {what} set size: {self.optimum} ({status})")
        lines.append("witness: " + " ".join(str(g.coords(x)).replace(" ", "") for x in self.witness))
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


class _Timeout(Exception):
    pass


def _group(geom: GeomSpec, sym: Symmetry) -> list[list[int]]:
    """Inverse permutations of the non-identity group elements."""
    if sym is Symmetry.NONE:
        return []
    perms = geom.translations if sym is Symmetry.TRANSLATIONS else geom.affine_maps
    ident = list(range(geom.num_points))
    out = []
    for p in perms:
        if p == ident:
            continue
        inv = [0] * len(p)
        for i, j in enumerate(p):
            inv[j] = i
        out.append(inv)
    return out


class _ComplementSearch:
    """Depth-first branch and bound for the largest set with private lines.

    Points are decided in ascending index order, include before exclude.
    ``cnt[L]`` counts chosen points on line L, ``owner[L]`` is the XOR of
    them (the unique member when cnt is 1), and ``alive[y]`` counts lines
    through y with no other chosen point.
    """

    def __init__(self, geom: GeomSpec, sym: Symmetry, deadline: float | None = None):
        self.geom = geom
        self.N = geom.num_points
        self.point_lines = geom.point_lines
        self.cnt = [0] * geom.num_lines
        self.owner = [0] * geom.num_lines
        self.alive = [0] * self.N
        self.v = [0] * self.N
        self.size = 0
        self.group = _group(geom, sym)
        self.deadline = deadline
        self.nodes = 0
        self.best_size = -1
        self.best_bits = 0
        self.timed_out = False

    def can_add(self, x: int) -> bool:
        cnt, owner, alive = self.cnt, self.owner, self.alive
        own = 0
        for L in self.point_lines[x]:
            c = cnt[L]
            if c == 0:
                own += 1
            elif c == 1 and alive[owner[L]] == 1:
                return False
        return own > 0

    def add(self, x: int) -> None:
        cnt, owner, alive = self.cnt, self.owner, self.alive
        own = 0
        for L in self.point_lines[x]:
            c = cnt[L]
            if c == 0:
                own += 1
            elif c == 1:
                alive[owner[L]] -= 1
            cnt[L] = c + 1
            owner[L] ^= x
        alive[x] = own
        self.v[x] = 1
        self.size += 1

    def undo_add(self, x: int) -> None:
        cnt, owner, alive = self.cnt, self.owner, self.alive
        for L in self.point_lines[x]:
            c = cnt[L] - 1
            cnt[L] = c
            owner[L] ^= x
            if c == 1:
                alive[owner[L]] += 1
        alive[x] = 0
        self.v[x] = 0
        self.size -= 1

    def _lex_ok(self, i: int, pending: list) -> list | None:
        """Advance lex comparisons after deciding point i.

        Returns the elements still undecided, or None when some image of
        every completion is lexicographically larger (prune).
        """
        v = self.v
        keep = []
        for ginv, j in pending:
            while j <= i:
                src = ginv[j]
                if src > i:
                    break
                a, b = v[src], v[j]
                if a == b:
                    j += 1
                elif a > b:
                    return None
                else:
                    j = -1
                    break
            if j >= 0:
                keep.append((ginv, j))
        return keep

    def _upper(self, i: int) -> int:
        return self.size + sum(1 for z in range(i, self.N) if self.can_add(z))

    def _record(self) -> None:
        if self.size > self.best_size:
            self.best_size = self.size
            self.best_bits = sum(1 << x for x in range(self.N) if self.v[x])

    def dfs(self, i: int, pending: list) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise _Timeout
        if i == self.N:
            self._record()
            return
        if self._upper(i) <= self.best_size:
            return
        if self.can_add(i):
            self.add(i)
            keep = self._lex_ok(i, pending)
            if keep is not None:
                self.dfs(i + 1, keep)
            self.undo_add(i)
        keep = self._lex_ok(i, pending)
        if keep is not None:
            self.dfs(i + 1, keep)

    def run_from(self, prefix: tuple[int, ...], best_size: int = -1) -> None:
        """Search below a fixed assignment of points 0..len(prefix)-1."""
        self.best_size = best_size
        pending = [(g, 0) for g in self.group]
        for i, bit in enumerate(prefix):
            if bit:
                if not self.can_add(i):
                    return
                self.add(i)
            pending = self._lex_ok(i, pending)
            if pending is None:
                return
        try:
            self.dfs(len(prefix), pending)
        except _Timeout:
            self.timed_out = True


def _check_2d(geom: GeomSpec) -> None:
    if geom.n != 2:
        raise ValueError("extremal search is implemented for AG(2, q) only")


def _branch_task(args):
    p, k, sym_value, prefix, deadline = args
    geom = make_geometry(p, k, 2)
    s = _ComplementSearch(geom, Symmetry(sym_value), deadline)
    s.run_from(prefix)
    return s.best_size, s.best_bits, s.nodes, s.timed_out


def min_nikodym(
    geom: GeomSpec,
    symmetry: Symmetry | str = Symmetry.TRANSLATIONS,
    timeout: float | None = None,
    threads: int = 1,
    limit: int = NIKODYM_PROOF_LIMIT,
) -> SearchResult:
    """Smallest Nikodym set in AG(2, q), as q^2 minus the largest complement.

    Above ``limit`` a timeout is required; the result is then flagged as
    proved only if the search finishes in time.
    """
    _check_2d(geom)
    sym = Symmetry(symmetry)
    if geom.q > limit and timeout is None:
        raise TooLarge(f"q = {geom.q} exceeds the exhaustive limit {limit}; pass a timeout")
    deadline = None if timeout is None else time.monotonic() + timeout
    N = geom.num_points

    if threads <= 1:
        s = _ComplementSearch(geom, sym, deadline)
        s.run_from(())
        best_bits, nodes, timed_out = s.best_bits, s.nodes, s.timed_out
    else:
        depth = min(N, max(1, (threads - 1).bit_length() + 2))
        prefixes = list(itertools.product((1, 0), repeat=depth))
        tasks = [(geom.field.p, geom.field.k, sym.value, pre, deadline) for pre in prefixes]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_branch_task, tasks))
        nodes = sum(r[2] for r in results)
        timed_out = any(r[3] for r in results)
        best_size = max(r[0] for r in results)
        # deterministic merge: lexicographically least witness among the best
        candidates = [r[1] for r in results if r[0] == best_size]
        best_bits = min(candidates, key=lambda bits: sorted(PointSet(geom, bits).complement()))

    witness = PointSet(geom, best_bits).complement()
    return SearchResult(Mode.MIN_NIKODYM, geom, witness.size, witness, nodes, not timed_out, sym)


def _kakeya_lines_by_direction(geom: GeomSpec) -> list[list[int]]:
    per = geom.num_lines // geom.num_directions
    return [list(range(d * per, (d + 1) * per)) for d in range(geom.num_directions)]


def min_kakeya(
    geom: GeomSpec,
    symmetry: Symmetry | str = Symmetry.TRANSLATIONS,
    timeout: float | None = None,
    limit: int = KAKEYA_LIMIT,
) -> SearchResult:
    """Smallest Kakeya set in AG(2, q) over all one-line-per-direction choices.

    Any non-identity symmetry setting fixes the first direction's line to
    the one through the origin (every choice is a translate of one that is).
    """
    _check_2d(geom)
    sym = Symmetry(symmetry)
    q = geom.q
    if q > limit:
        raise TooLarge(f"q = {q} exceeds the Kakeya search limit {limit}")
    deadline = None if timeout is None else time.monotonic() + timeout
    masks = geom.line_masks
    by_dir = _kakeya_lines_by_direction(geom)
    if sym is not Symmetry.NONE:
        by_dir[0] = by_dir[0][:1]
    D = len(by_dir)
    # floor[c] = least number of points that D - c further lines must add
    # after c lines are chosen: each new line meets each earlier one at most once
    floor = [sum(max(0, q - j) for j in range(c, D)) for c in range(D + 1)]

    best = [q * q + 1, 0]
    nodes = 0
    timed_out = False

    def dfs(c: int, union: int) -> None:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
            raise _Timeout
        size = union.bit_count()
        if size + floor[c] >= best[0]:
            return
        if c == D:
            best[0], best[1] = size, union
            return
        options = sorted(by_dir[c], key=lambda lid: ((masks[lid] & ~union).bit_count(), lid))
        for lid in options:
            dfs(c + 1, union | masks[lid])

    try:
        dfs(0, 0)
    except _Timeout:
        timed_out = True
    if best[1] == 0:
        # timed out before any complete choice: fall back to the full plane
        best = [q * q, (1 << (q * q)) - 1]
    witness = PointSet(geom, best[1])
    return SearchResult(Mode.MIN_KAKEYA, geom, best[0], witness, nodes, not timed_out, sym)


def brute_force_oracle(geom: GeomSpec, mode: Mode | str) -> SearchResult:
    """Unpruned reference minimum, for certifying the optimized searches.

    Nikodym: subsets B by increasing size, first one passing is_nikodym
    (q^n <= 25).  Kakeya: subsets by increasing size when q^n <= 16, else
    every one-line-per-direction union (n = 2, q <= 5).
    """
    mode = Mode(mode)
    N = geom.num_points
    nodes = 0
    if mode is Mode.MIN_NIKODYM:
        if N > 25:
            raise TooLarge("brute-force Nikodym oracle needs q^n <= 25")
        check = is_nikodym
    else:
        if geom.q > 5:
            raise TooLarge("brute-force Kakeya oracle needs q <= 5")
        check = is_kakeya
        if N > 16:
            _check_2d(geom)
            best = None
            for choice in itertools.product(*_kakeya_lines_by_direction(geom)):
                nodes += 1
                bits = 0
                for lid in choice:
                    bits |= geom.line_masks[lid]
                if best is None or bits.bit_count() < best.bit_count():
                    best = bits
            witness = PointSet(geom, best)
            assert check(witness)
            return SearchResult(mode, geom, witness.size, witness, nodes, True, Symmetry.NONE)
    for size in range(N + 1):
        for pts in itertools.combinations(range(N), size):
            nodes += 1
            cand = PointSet.from_points(geom, pts)
            if check(cand):
                return SearchResult(mode, geom, size, cand, nodes, True, Symmetry.NONE)
    raise AssertionError("the full space always has both properties")
