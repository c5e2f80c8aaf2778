"""Point sets of AG(n, q) as bitsets, plus the text file format.

File format::

    p k n
    c_0 c_1 ... c_{n-1}     # one point per line, coordinate 0 first
    ...

Lines starting with ``#`` and blank lines are ignored.  The canonical
output lists points by ascending index with no comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DuplicatePoint, NikodymError, ParseError, RangeError, SpecMismatch
from .geometry import GeomSpec, make_geometry


@dataclass(frozen=True)
class PointSet:
    geom: GeomSpec
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.geom.num_points:
            raise ValueError("bitset has bits outside the point range")

    @classmethod
    def from_points(cls, geom: GeomSpec, points: Iterable[int]) -> "PointSet":
        bits = 0
        for x in points:
            if not 0 <= x < geom.num_points:
                raise IndexError(f"point index {x} out of range for {geom!r}")
            bits |= 1 << x
        return cls(geom, bits)

    @classmethod
    def full(cls, geom: GeomSpec) -> "PointSet":
        return cls(geom, (1 << geom.num_points) - 1)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def contains(self, x: int) -> bool:
        return x in self

    def _check(self, other: "PointSet") -> None:
        if self.geom != other.geom:
            raise SpecMismatch(f"{self.geom!r} vs {other.geom!r}")

    def complement(self) -> "PointSet":
        return PointSet(self.geom, ((1 << self.geom.num_points) - 1) ^ self.bits)

    def union(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.geom, self.bits | other.bits)

    def intersect(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.geom, self.bits & other.bits)

    def issubset(self, other: "PointSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    __or__ = union
    __and__ = intersect
    __invert__ = complement
    __le__ = issubset

    def insert(self, x: int) -> "PointSet":
        return PointSet(self.geom, self.bits | 1 << x)

    def remove(self, x: int) -> "PointSet":
        return PointSet(self.geom, self.bits & ~(1 << x))

    def __repr__(self) -> str:
        return f"PointSet({self.geom!r}, {sorted(self)})"


def read_pointset(text: str) -> PointSet:
    geom = None
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if geom is None:
            if len(nums) != 3 or min(nums) < 1:
                raise ParseError("header must be 'p k n' with positive integers", lineno)
            try:
                geom = make_geometry(*nums)
            except NikodymError as exc:
                raise ParseError(str(exc), lineno) from exc
            continue
        if len(nums) != geom.n:
            raise ParseError(f"expected {geom.n} coordinates, got {len(nums)}", lineno)
        if any(not 0 <= c < geom.q for c in nums):
            raise RangeError(f"coordinate outside 0..{geom.q - 1}", lineno)
        x = geom.index(nums)
        if x in seen:
            raise DuplicatePoint(f"point {tuple(nums)} listed twice", lineno)
        seen.add(x)
    if geom is None:
        raise ParseError("missing header", 1)
    return PointSet.from_points(geom, seen)


def write_pointset(s: PointSet) -> str:
    g = s.geom
    rows = [f"{g.field.p} {g.field.k} {g.n}"]
    rows += [" ".join(map(str, g.coords(x))) for x in s]
    return "\n".join(rows) + "\n"
