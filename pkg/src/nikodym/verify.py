"""Deciding the Nikodym and Kakeya properties, with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .sets import PointSet

# complement point index -> id of a line meeting the complement only there
WitnessMap = dict[int, int]


@dataclass
class NikodymCheck:
    holds: bool
    witnesses: WitnessMap = field(default_factory=dict)
    failure: int | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class KakeyaCheck:
    holds: bool
    lines: dict[int, int] = field(default_factory=dict)  # direction id -> line id
    failure: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def private_line(s_bits: int, x: int, geom) -> int | None:
    """Least line id through x whose intersection with the set s_bits is {x}."""
    target = 1 << x
    masks = geom.line_masks
    for lid in geom.point_lines[x]:
        if masks[lid] & s_bits == target:
            return lid
    return None


def is_nikodym(b: PointSet) -> NikodymCheck:
    geom = b.geom
    comp = b.complement()
    witnesses: WitnessMap = {}
    for x in comp:
        lid = private_line(comp.bits, x, geom)
        if lid is None:
            return NikodymCheck(False, witnesses, failure=x)
        witnesses[x] = lid
    return NikodymCheck(True, witnesses)


def is_kakeya(k: PointSet) -> KakeyaCheck:
    geom = k.geom
    per_dir = geom.num_lines // geom.num_directions
    found: dict[int, int] = {}
    for d in range(geom.num_directions):
        for lid in range(d * per_dir, (d + 1) * per_dir):
            m = geom.line_masks[lid]
            if m & k.bits == m:
                found[d] = lid
                break
        else:
            return KakeyaCheck(False, found, failure=d)
    return KakeyaCheck(True, found)


def verify_witnesses(b: PointSet, w: WitnessMap) -> bool:
    geom = b.geom
    comp = b.complement().bits
    if set(w) != set(b.complement()):
        return False
    for x, lid in w.items():
        if not 0 <= lid < geom.num_lines:
            return False
        if geom.line_masks[lid] & comp != 1 << x:
            return False
    return True


def write_witnesses(w: WitnessMap) -> str:
    return "".join(f"{x} {lid}\n" for x, lid in sorted(w.items()))


def read_witnesses(text: str) -> WitnessMap:
    out: WitnessMap = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x, lid = map(int, line.split())
        except ValueError:
            raise ParseError(f"expected 'x_index line_id', got {line!r}", lineno) from None
        out[x] = lid
    return out
