"""Bounds table and the stored exhaustive optima."""

from __future__ import annotations

import json
from importlib import resources

from .bound2d import nikodym_2d_lower_bound
from .gf import prime_power
from .polymethod import dvir_kakeya_bound, theorem1_bound

HEADER = "q,theorem1,dvir_kakeya,kakeya2d_exact,bound2d,exhaustive_min"


def load_optima() -> dict:
    """Exhaustive minima for AG(2, q), keyed by mode then str(q)."""
    text = resources.files("nikodym").joinpath("data/optima.json").read_text()
    return json.loads(text)


def kakeya2d_exact(q: int) -> int:
    """Minimum Kakeya set size in AG(2, q): q(q+1)/2, plus (q-1)/2 for odd q."""
    base = q * (q + 1) // 2
    return base if q % 2 == 0 else base + (q - 1) // 2


def prime_powers(qmax: int) -> list[int]:
    return [q for q in range(2, qmax + 1) if prime_power(q) is not None]


def bounds_rows(n: int, qmax: int) -> list[dict]:
    optima = load_optima()["min_nikodym"] if n == 2 else {}
    rows = []
    for q in prime_powers(qmax):
        rows.append({
            "q": q,
            "theorem1": theorem1_bound(n, q),
            "dvir_kakeya": dvir_kakeya_bound(n, q),
            "kakeya2d_exact": kakeya2d_exact(q) if n == 2 else None,
            "bound2d": nikodym_2d_lower_bound(q) if n == 2 else None,
            "exhaustive_min": optima.get(str(q)),
        })
    return rows


def bounds_csv(n: int, qmax: int) -> str:
    out = [HEADER]
    for row in bounds_rows(n, qmax):
        out.append(",".join("" if v is None else str(v) for v in row.values()))
    return "\n".join(out) + "\n"


def crossover(rows: list[dict]) -> int | None:
    """Least q from which bound2d stays strictly above theorem1 in ``rows``."""
    first = None
    for row in rows:
        if row["bound2d"] is not None and row["bound2d"] > row["theorem1"]:
            if first is None:
                first = row["q"]
        else:
            first = None
    return first
