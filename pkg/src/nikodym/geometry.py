"""Points, directions and lines of the affine space AG(n, q).

Points are ints: the point (c_0, ..., c_{n-1}) has index sum c_i q^i.
A direction is a nonzero vector whose first nonzero coordinate is 1;
direction ids follow the point index of that representative.  A line is
stored canonically as (direction id, least point index on the line) and
line ids follow that pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import DegeneratePair, TooLarge
from .gf import DEFAULT_LIMIT, FieldSpec, make_field

POINT_LIMIT = 2**20
ADD_TABLE_LIMIT = 4096


@dataclass(frozen=True)
class Line:
    id: int
    base: int
    direction: int


class GeomSpec:
    """AG(n, q) together with its materialized incidence tables.

    Build through :func:`make_geometry`, which caches instances.

    Attributes after construction:
      ``line_points[l]``  points of line l as base + t*rep, t = 0..q-1
      ``line_masks[l]``   the same as a bitmask over point indices
      ``point_lines[x]``  ids of lines through x, ascending
    """

    def __init__(self, field: FieldSpec, n: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        q = field.q
        if q**n > POINT_LIMIT:
            raise TooLarge(f"AG({n},{q}) has more than {POINT_LIMIT} points")
        self.field = field
        self.n = n
        self.q = q
        self.num_points = q**n
        self.num_directions = (q**n - 1) // (q - 1)
        self.num_lines = q ** (n - 1) * self.num_directions
        self._build()

    # -- coordinates ----------------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            x, r = divmod(x, self.q)
            out.append(r)
        return tuple(out)

    def index(self, coords) -> int:
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        v = 0
        for c in reversed(coords):
            v = v * self.q + c
        return v

    def points(self) -> range:
        return range(self.num_points)

    def vec_add(self, x: int, y: int) -> int:
        if self._add_points is not None:
            return self._add_points[x][y]
        F = self.field
        return self.index([F.add(a, b) for a, b in zip(self.coords(x), self.coords(y))])

    def vec_sub(self, x: int, y: int) -> int:
        F = self.field
        return self.index([F.sub(a, b) for a, b in zip(self.coords(x), self.coords(y))])

    def scale(self, c: int, x: int) -> int:
        F = self.field
        return self.index([F.mul(c, a) for a in self.coords(x)])

    def normalize(self, v: int) -> int:
        """Point index of the normalized representative of the nonzero vector v."""
        cs = self.coords(v)
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("the zero vector has no direction")
        return self.scale(self.field.inv(lead), v)

    # -- construction ---------------------------------------------------------

    def _build(self) -> None:
        F, q, N = self.field, self.q, self.num_points
        all_coords = [self.coords(x) for x in range(N)]
        self._add_points = None
        if N <= ADD_TABLE_LIMIT:
            self._add_points = [
                [self.index([F.add(a, b) for a, b in zip(cx, cy)]) for cy in all_coords]
                for cx in all_coords
            ]
        reps = [v for v in range(1, N) if next(c for c in all_coords[v] if c) == 1]
        assert len(reps) == self.num_directions
        self.direction_reps = reps
        self._dir_of_rep = {v: d for d, v in enumerate(reps)}

        line_points: list[list[int]] = []
        line_base: list[int] = []
        line_dir: list[int] = []
        # point_dir_line[x][d] = id of the line through x with direction d
        point_dir_line = [[0] * len(reps) for _ in range(N)]
        for d, rep in enumerate(reps):
            multiples = [self.scale(t, rep) for t in range(q)]
            covered = [False] * N
            for x in range(N):
                if covered[x]:
                    continue
                # x is the least index on its line: earlier points would have covered it
                pts = [self.vec_add(x, m) for m in multiples]
                lid = len(line_points)
                for y in pts:
                    covered[y] = True
                    point_dir_line[y][d] = lid
                line_points.append(pts)
                line_base.append(x)
                line_dir.append(d)
        assert len(line_points) == self.num_lines
        self.line_points = line_points
        self.line_masks = [sum(1 << y for y in pts) for pts in line_points]
        self._line_base = line_base
        self._line_dir = line_dir
        self._point_dir_line = point_dir_line
        self.point_lines = [sorted(row) for row in point_dir_line]

    # -- queries ----------------------------------------------------------------

    def line(self, lid: int) -> Line:
        return Line(lid, self._line_base[lid], self._line_dir[lid])

    def line_direction(self, lid: int) -> int:
        return self._line_dir[lid]

    def line_with(self, x: int, direction: int) -> int:
        """Id of the line through x with the given direction id."""
        return self._point_dir_line[x][direction]

    def direction_id(self, v: int) -> int:
        return self._dir_of_rep[self.normalize(v)]

    def __repr__(self) -> str:
        return f"AG({self.n},{self.q})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeomSpec):
            return NotImplemented
        return self.n == other.n and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.n, self.field.p, self.field.k))

    @cached_property
    def translations(self) -> list[list[int]]:
        """Point permutations x -> x + v for every v, v ascending."""
        return [[self.vec_add(v, x) for x in range(self.num_points)] for v in range(self.num_points)]

    @cached_property
    def affine_maps(self) -> list[list[int]]:
        """Point permutations x -> A x + v for A in GL(n, q), all v."""
        F, n, N = self.field, self.n, self.num_points
        scaled = [[self.scale(c, v) for v in range(N)] for c in range(self.q)]
        coords = [self.coords(x) for x in range(N)]
        shifts = self.translations
        out = []
        for images in itertools.product(range(1, N), repeat=n):
            # A e_i = images[i]; invertible iff images are independent
            if not _independent([coords[v] for v in images], F):
                continue
            lin = []
            for x in range(N):
                acc = 0
                for c, img in zip(coords[x], images):
                    if c:
                        acc = self.vec_add(acc, scaled[c][img])
                lin.append(acc)
            for v in range(N):
                shift = shifts[v]
                out.append([shift[y] for y in lin])
        return out


def _independent(vectors, F: FieldSpec) -> bool:
    rows = [list(v) for v in vectors]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, a) for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(rows)


@lru_cache(maxsize=None)
def make_geometry(p: int, k: int, n: int, limit: int = DEFAULT_LIMIT) -> GeomSpec:
    return GeomSpec(make_field(p, k, limit), n)


def line_points(geom: GeomSpec, line: Line | int) -> list[int]:
    """The q points base + t*rep, in increasing t order."""
    lid = line.id if isinstance(line, Line) else line
    return list(geom.line_points[lid])


def line_through(geom: GeomSpec, a: int, b: int) -> Line:
    if a == b:
        raise DegeneratePair(f"points {a} and {b} coincide")
    d = geom.direction_id(geom.vec_sub(b, a))
    return geom.line(geom.line_with(a, d))


def lines_through_point(geom: GeomSpec, x: int) -> list[Line]:
    return [geom.line(lid) for lid in geom.point_lines[x]]


def enumerate_lines(geom: GeomSpec) -> list[Line]:
    return [geom.line(lid) for lid in range(geom.num_lines)]


def enumerate_directions(geom: GeomSpec) -> list[tuple[int, ...]]:
    """Normalized direction representatives as coordinate tuples, by id."""
    return [geom.coords(v) for v in geom.direction_reps]
