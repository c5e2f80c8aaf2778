"""Exit criteria.  Each test carries ``acceptance(n)``; the terminal summary
prints one pass/fail line per criterion."""

import itertools
import math
import os
import random
import shutil
import subprocess
import time

import pytest

from conftest import FIELD_GRID, field, geom
from nikodym import cnf
from nikodym.bound2d import audit, nikodym_2d_lower_bound
from nikodym.polymethod import (
    MultiPoly,
    evaluate,
    monomial_count,
    restrict_to_line,
    theorem1_bound,
    vanishing_poly,
)
from nikodym.search import Mode, Symmetry, brute_force_oracle, min_kakeya, min_nikodym
from nikodym.sets import PointSet
from nikodym.tables import bounds_rows, load_optima
from nikodym.verify import is_kakeya, is_nikodym

acceptance = pytest.mark.acceptance


# -- 1. exhaustive consistency with the C(n+q-2, n) bound -----------------------

@acceptance(1)
@pytest.mark.parametrize("q,bound,budget", [(2, 1, 1.0), (3, 3, 1.0), (4, 6, 30.0)])
def test_theorem1_exhaustive(q, bound, budget):
    g = geom(q)
    start = time.perf_counter()
    oracle = brute_force_oracle(g, Mode.MIN_NIKODYM)
    fast = min_nikodym(g)
    elapsed = time.perf_counter() - start
    print(f"q={q}: oracle={oracle.optimum} search={fast.optimum} bound={bound} ({elapsed:.2f}s)")
    assert theorem1_bound(2, q) == bound
    assert oracle.optimum >= bound
    assert fast.optimum == oracle.optimum and fast.proved_optimal
    assert is_nikodym(fast.witness).holds
    assert load_optima()["min_nikodym"][str(q)] == oracle.optimum
    assert elapsed < budget


# -- 2. 2D Kakeya sharpness ----------------------------------------------------------

@acceptance(2)
def test_kakeya_sharpness():
    expected = {2: 3, 4: 10, 3: 7, 5: 17}
    start = time.perf_counter()
    for q, value in expected.items():
        formula = q * (q + 1) // 2 if q % 2 == 0 else q * (q + 1) // 2 + (q - 1) // 2
        assert formula == value
        r = min_kakeya(geom(q))
        assert r.optimum == value and r.proved_optimal
        assert is_kakeya(r.witness).holds
    elapsed = time.perf_counter() - start
    print(f"kakeya minima {expected} in {elapsed:.2f}s")
    assert elapsed < 5.0


# -- 3. instance audits of the 2D counting bound ----------------------------------------

@acceptance(3)
def test_theorem2_audits():
    corpus = []
    for q in FIELD_GRID:
        g = geom(q)
        corpus += [PointSet.full(g).remove(x) for x in range(g.num_points)]
    for q in [2, 3, 4, 5]:
        for sym in Symmetry:
            corpus.append(min_nikodym(geom(q), sym).witness)
    start = time.perf_counter()
    for b in corpus:
        res = is_nikodym(b)
        assert res.holds
        a = audit(b, res.witnesses)  # raises InternalContradiction on failure
        assert a.verdict and b.size >= nikodym_2d_lower_bound(b.geom.q)
    elapsed = time.perf_counter() - start
    print(f"{len(corpus)} audits in {elapsed:.2f}s")
    assert elapsed < 5.0


# -- 4. bound crossover ---------------------------------------------------------------------

@acceptance(4)
def test_bound_crossover():
    rows = {r["q"]: r for r in bounds_rows(2, 9)}
    assert rows[9]["theorem1"] == 36 < rows[9]["bound2d"] == 39
    for q in [2, 3, 4, 5]:
        assert rows[q]["theorem1"] >= rows[q]["bound2d"]
    for q in [7, 8, 9]:
        assert rows[q]["theorem1"] < rows[q]["bound2d"]
    for q in range(10, 200):
        assert math.comb(q, 2) < nikodym_2d_lower_bound(q)


# -- 5. polynomial-method properties ----------------------------------------------------------

POLY_GEOMS = [(q, 2) for q in FIELD_GRID] + [(2, 3), (3, 3), (4, 3), (3, 4), (2, 6)]


def _naive_eval(poly, x):
    F = poly.geom.field
    total = 0
    for m, c in zip(poly.monomials, poly.coeffs):
        term = c
        for coord, e in zip(poly.geom.coords(x), m):
            for _ in range(e):
                term = F.mul(term, coord)
        total = F.add(total, term)
    return total


_poly_clock = []


@acceptance(5)
@pytest.mark.parametrize("q,n", POLY_GEOMS)
def test_polynomial_properties(q, n):
    g = geom(q, n)
    rng = random.Random(1000 * q + n)
    start = time.perf_counter()
    # (a) vanishing polynomials below the monomial count
    for _ in range(200):
        d = rng.randrange(q)
        cap = min(monomial_count(n, d), g.num_points + 1)
        b = PointSet.from_points(g, rng.sample(range(g.num_points), rng.randrange(cap)))
        poly = vanishing_poly(b, d)
        assert poly is not None and not poly.is_zero()
        assert all(_naive_eval(poly, y) == 0 for y in b)
    # (b) restriction agrees with pointwise evaluation
    for _ in range(50):
        d = rng.randrange(q + 1)
        poly = MultiPoly(g, d, tuple(rng.randrange(q) for _ in range(monomial_count(n, d))))
        lid = rng.randrange(g.num_lines)
        h = restrict_to_line(poly, lid)
        assert h.degree <= d
        assert [h(t) for t in range(q)] == [_naive_eval(poly, x) for x in g.line_points[lid]]
    # (c) nothing nonzero of total degree <= q-2 vanishes everywhere
    if q**n <= 81:
        d = q - 2
        size = monomial_count(n, d)
        for _ in range(100):
            coeffs = [rng.randrange(q) if rng.random() < 0.5 else 0 for _ in range(size)]
            if not any(coeffs):
                coeffs[rng.randrange(size)] = rng.randrange(1, q)
            poly = MultiPoly(g, d, tuple(coeffs))
            assert any(evaluate(poly, x) for x in range(g.num_points))
    _poly_clock.append(time.perf_counter() - start)
    assert sum(_poly_clock) < 60.0


# -- 6. structural identities -------------------------------------------------------------------

STRUCT_GEOMS = [(q, 1) for q in FIELD_GRID] + [(q, 2) for q in FIELD_GRID] + [(2, 3), (3, 3), (4, 3)]


@acceptance(6)
def test_structural_identities():
    start = time.perf_counter()
    for q in FIELD_GRID:
        F = field(q)
        E = range(q)
        for a, b, c in itertools.product(E, repeat=3):
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        for a, b in itertools.product(E, repeat=2):
            assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
        for a in E:
            assert F.add(a, 0) == a and F.mul(a, 1) == a and F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
    for q, n in STRUCT_GEOMS:
        g = geom(q, n)
        assert g.num_lines == q ** (n - 1) * (q**n - 1) // (q - 1) == len(g.line_points)
        assert g.num_directions == (q**n - 1) // (q - 1) == len(g.direction_reps)
        masks = g.line_masks
        for a, b in itertools.combinations(range(g.num_points), 2):
            pair = 1 << a | 1 << b
            assert sum(1 for m in masks if m & pair == pair) == 1
    elapsed = time.perf_counter() - start
    print(f"structural identities in {elapsed:.2f}s")
    assert elapsed < 10.0


# -- 7. CNF cross-check with an external solver ------------------------------------------------------

def _solver():
    """Return solve(dimacs_text) -> assignment text or None (UNSAT), or None if unavailable."""
    exe = os.environ.get("NIKODYM_SAT_SOLVER")
    if exe:
        if shutil.which(exe) is None:
            return None

        def solve(text):
            proc = subprocess.run([exe], input=text, capture_output=True, text=True)
            if "UNSATISFIABLE" in proc.stdout:
                return None
            return proc.stdout

        return solve
    try:
        from pysat.formula import CNF
        from pysat.solvers import Solver
    except ImportError:
        return None

    def solve(text):
        with Solver(name="cadical153", bootstrap_with=CNF(from_string=text).clauses) as s:
            if not s.solve():
                return None
            return "v " + " ".join(map(str, s.get_model())) + " 0\n"

    return solve


@acceptance(7)
@pytest.mark.parametrize("q", [2, 3])
def test_cnf_cross_check(q):
    solve = _solver()
    if solve is None:
        pytest.skip("no SAT solver configured (set NIKODYM_SAT_SOLVER or install python-sat)")
    g = geom(q)
    nik = brute_force_oracle(g, Mode.MIN_NIKODYM).optimum
    kak = brute_force_oracle(g, Mode.MIN_KAKEYA).optimum
    largest_complement = q * q - nik
    for k in range(max(0, largest_complement - 2), largest_complement + 3):
        text = cnf.export_cnf(g, Mode.MIN_NIKODYM, k)
        answer = solve(text)
        assert (answer is not None) == (k <= largest_complement), k
        if answer is not None:
            s = cnf.decode_solution(text, answer)
            assert s.size >= k and is_nikodym(s.complement()).holds
    for k in range(kak - 2, kak + 3):
        text = cnf.export_cnf(g, Mode.MIN_KAKEYA, k)
        answer = solve(text)
        assert (answer is not None) == (k >= kak), k
        if answer is not None:
            kset = cnf.decode_solution(text, answer)
            assert kset.size <= k and is_kakeya(kset).holds
