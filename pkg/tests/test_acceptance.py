"""The eight acceptance criteria, one test each.

Every criterion prints a single ``criterion N: PASS|FAIL ...`` line (collected
into the pytest terminal summary; run this file directly to print them
without pytest).  Criteria compute everything first and assert at the end, so
a failure names every sub-check that missed.
"""

from __future__ import annotations

import hashlib
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import sympy

from extsym import catalog
from extsym.extensions import (
    Cochain2,
    central_extension,
    cocycle_conditions,
    cohomology2,
    d1_matrix,
    d2_matrix,
    differential1,
    differential2,
    extract_cocycle,
    is_full_extension,
)
from extsym.linalg import Matrix
from extsym.orbit import (
    DEFAULT_GRID,
    OrbitSampler,
    default_words,
    embed_nondegenerate,
    mean_curvature,
    minus_form,
    shape_operator,
    shape_operator_matrix,
)
from extsym.triples import find_inner_xi, is_full, validate, verify_isomorphism

sys.path.insert(0, os.path.dirname(__file__))
from properties import PROPERTIES, run_property  # noqa: E402
from strategies import extension_pool  # noqa: E402

F = Fraction
half = F(1, 2)
RESULTS: list[str] = []


class Outcome:
    """Named sub-checks of one criterion plus its wall time."""

    def __init__(self, number: int, title: str, budget: float | None = None):
        self.number, self.title, self.budget = number, title, budget
        self.checks: list[tuple[str, bool]] = []
        self.start = time.perf_counter()

    def check(self, name: str, ok) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    def finish(self) -> tuple[bool, str]:
        elapsed = time.perf_counter() - self.start
        if self.budget is not None:
            self.check(f"runtime {elapsed:.2f} s < {self.budget:g} s", elapsed < self.budget)
        failed = [n for n, ok in self.checks if not ok]
        ok = not failed
        line = f"criterion {self.number}: {'PASS' if ok else 'FAIL'} {self.title} ({len(self.checks) - len(failed)}/{len(self.checks)} checks"
        line += f"; failed: {'; '.join(failed)})" if failed else ")"
        return ok, line


# -- 1. CW-I -----------------------------------------------------------------


def criterion_1():
    o = Outcome(1, "catalog reproduction, cahen_wallach_1", 1.0)
    t = catalog.cahen_wallach_1()
    o.check("validation", validate(t).ok)
    h = mean_curvature(t)
    o.check("h = -2 sigma_X", h == t.vec(sigma_X=-2))
    o.check("A_h(Y) = -4 sigma_Y", shape_operator(t, h, t.vec(Y=1)) == t.vec(sigma_Y=-4))
    A = shape_operator_matrix(t, h)
    o.check("A_h^2 = 0", (A @ A).is_zero())
    o.check("full", is_full(t).full)
    o.check("xi = 1/2 X", find_inner_xi(t).xi == t.vec(X=half))
    return o.finish()


# -- 2. CW-II ----------------------------------------------------------------


def criterion_2():
    o = Outcome(2, "catalog reproduction, cahen_wallach_2", 1.0)
    t = catalog.cahen_wallach_2()
    o.check("validation", validate(t).ok)
    h = mean_curvature(t)
    o.check(f"h = -sigma_X (got {t.fmt(h)})", h == t.vec(sigma_X=-1))
    ahy = shape_operator(t, h, t.vec(Y=1))
    o.check(f"A_h(Y) = -2 sigma_Y (got {t.fmt(ahy)})", ahy == t.vec(sigma_Y=-2))
    o.check("A_h(b4) = 0", not any(shape_operator(t, h, t.vec(b4=1))))
    o.check("A_h(sigma_Y) = 0", not any(shape_operator(t, h, t.vec(sigma_Y=1))))
    o.check("full", is_full(t).full)
    o.check("no inner xi", not find_inner_xi(t).inner)
    return o.finish()


# -- 3. orbit parametrizations -------------------------------------------------

CW2_GRID_27 = (F(-1), half, F(1))


def criterion_3():
    o = Outcome(3, "orbit parametrizations", 5.0)
    par = catalog.parabola()
    pts = OrbitSampler(par).sample(default_words(1))
    ok = len(pts) == len(DEFAULT_GRID)
    for p in pts:
        u = F(p.word[0][1])
        ok &= p.exact and p.coords == (-u * u / 2, -u)
    o.check("parabola = -t^2/2 e2 - t e3 on the default grid", ok)
    fl = catalog.flat3()
    pts = OrbitSampler(fl).sample(default_words(3))
    ok = len(pts) == len(DEFAULT_GRID) ** 3
    for p in pts:
        a, b, c = (F(s) for _, s in p.word)
        ok &= p.exact and p.coords == (a, b, c, a * b, a * c)
    o.check(f"flat3 = (t, s, r, st, rt) at {len(pts)} default-grid points", ok)
    cw = catalog.cahen_wallach_2()
    grid = catalog.cw2_grid(CW2_GRID_27)
    got, expected = catalog.cw2_orbit_by_formula(cw, grid)
    dev = max(abs(a - b) for g, e in zip(got, expected) for a, b in zip(g, e))
    o.check(f"cahen_wallach_2 sinh/cosh form at {len(grid)} points, max deviation {dev:.1e} <= 1e-9",
            len(grid) == 27 and dev <= 1e-9)
    return o.finish()


# -- 4. flat3 reflections --------------------------------------------------------


def _f(a, b, c):
    return catalog.flat3_point(a, b, c)


def criterion_4():
    o = Outcome(4, "flat3 reflection fixtures")
    t = catalog.flat3()
    rng = random.Random(4)
    params = [tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)) for _ in range(5)]
    refl = [catalog.flat3_embedded_reflection(t, p) for p in params]
    o.check("differential matches the closed form entrywise at 5 random rational points",
            all(s.exact and s.linear == catalog.flat3_reflection_differential(*p) for s, p in zip(refl, params)))
    sampler = OrbitSampler(t)
    emb = embed_nondegenerate(minus_form(t))
    law = True
    for s, (a, b, c) in zip(refl, params):
        for x, y, z in params:
            q = emb.injection.apply(sampler.point([(0, x), (1, y), (2, z)]).coords)
            law &= s(q) == _f(2 * a - x, 2 * b - y, 2 * c - z)
    o.check("s_f(t,s,r) f(a,b,c) = f(2t-a, 2s-b, 2r-c) exactly", law)
    disp, lin = catalog.flat3_transvection(t, 1)
    o.check(f"(s1 s0 s2)^2 fixes sampled points (displacement {disp:.1e} <= 1e-9)", disp <= 1e-9)
    o.check(f"(s1 s0 s2)^2 linear part differs from Id ({lin:g} > 0.1)", lin > 0.1)
    return o.finish()


# -- 5. property suites ----------------------------------------------------------

TRIALS = 120


def criterion_5():
    o = Outcome(5, f"property suites ({TRIALS} trials each, exact)")
    pool = extension_pool(seed=5)
    o.check(f"pool of {len(pool)} triples includes extensions", len(pool) > len(catalog.NAMES))
    for name in PROPERTIES:
        n, failures = run_property(name, pool, TRIALS, seed=5)
        o.check(f"{name} ({n - len(failures)}/{n})", n >= 100 and not failures)
    return o.finish()


# -- 6. extension round trip -------------------------------------------------------


def criterion_6():
    o = Outcome(6, "extension round trip")
    for name in catalog.NAMES:
        t = catalog.build(name)
        if t.flavor != "weak":
            continue
        x = extract_cocycle(t)
        o.check(f"{name}: theta* omega = -omega, D omega = 0", cocycle_conditions(x.quotient, x.cocycle).ok)
        rebuilt = central_extension(x.quotient, x.cocycle)
        o.check(f"{name}: canonical map is an isomorphism", verify_isomorphism(x.canonical_map, rebuilt, t).ok)
        o.check(f"{name}: is_full_extension agrees with is_full",
                is_full_extension(x.quotient, x.cocycle) == is_full(rebuilt).full)
    return o.finish()


# -- 7. cohomology soundness -------------------------------------------------------


def criterion_7():
    o = Outcome(7, "cohomology soundness")
    algebras = [catalog.build(n).algebra for n in catalog.NAMES] + [catalog.flat3_base().algebra]
    rng = random.Random(7)
    ok = True
    for k in range(200):
        L = algebras[k % len(algebras)]
        r = 1 + k % 2
        sigma = Matrix([[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(L.dim)] for _ in range(r)])
        ok &= differential2(L, differential1(L, sigma)).is_zero()
    o.check("d^2 = 0 on 200 random 1-cochains", ok)
    for L in algebras:
        H = cohomology2(L, 1)
        n = L.dim
        z = n * (n - 1) // 2 - sympy.Matrix(d2_matrix(L, 1).rows).rank()
        b = sympy.Matrix(d1_matrix(L, 1).rows).rank()
        o.check(f"dim {n} algebra: dim H^2 = {H.dim} = {z} - {b}",
                (H.cocycles.dim, H.coboundaries.dim, H.dim) == (z, b, z - b))
    base = catalog.flat3_base()
    w = Cochain2.from_values(base.dim, 2, catalog.FLAT3_COCYCLE)
    H = cohomology2(base.algebra, 2, base.theta, base.d)
    coords = H.class_coordinates(w)
    o.check("flat3 cocycle is a nonzero class that is theta-odd and D-closed",
            H.is_cocycle(w) and any(coords)
            and H.theta_action.apply(coords) == tuple(-a for a in coords) and not any(H.d_action.apply(coords)))
    return o.finish()


# -- 8. determinism ------------------------------------------------------------------

DETERMINISM_COMMANDS = [
    ["catalog", "all", "--json"],
    *[["orbit", name] for name in catalog.NAMES],
    *[["invariants", name, "--json"] for name in catalog.NAMES],
]


def _run_outputs(workdir: str, hashseed: str) -> dict:
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    out = {}
    for name in catalog.NAMES:
        subprocess.run([sys.executable, "-m", "extsym.cli", "export", name, "--out",
                        os.path.join(workdir, f"{name}.json")], check=True, env=env)
    for cmd in DETERMINISM_COMMANDS:
        argv = [os.path.join(workdir, f"{a}.json") if a in catalog.NAMES and cmd[0] != "catalog" else a
                for a in cmd]
        res = subprocess.run([sys.executable, "-m", "extsym.cli", *argv], capture_output=True, env=env)
        out[" ".join(cmd)] = (res.returncode, len(res.stdout), hashlib.sha256(res.stdout).hexdigest())
    return out


def criterion_8(tmpdir: str):
    o = Outcome(8, "determinism")
    a = os.path.join(tmpdir, "a")
    b = os.path.join(tmpdir, "b")
    os.makedirs(a)
    os.makedirs(b)
    first, second = _run_outputs(a, "1"), _run_outputs(b, "2")
    for key in first:
        o.check(f"{key} identical across runs", first[key][1] > 0 and first[key] == second[key])
    return o.finish()


# -- pytest wrappers ---------------------------------------------------------------------


def _record(result):
    ok, line = result
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_cw1():
    _record(criterion_1())


def test_criterion_2_cw2():
    _record(criterion_2())


def test_criterion_3_orbits():
    _record(criterion_3())


def test_criterion_4_flat3_reflections():
    _record(criterion_4())


def test_criterion_5_properties():
    _record(criterion_5())


def test_criterion_6_extension_round_trip():
    _record(criterion_6())


def test_criterion_7_cohomology():
    _record(criterion_7())


def test_criterion_8_determinism(tmp_path):
    _record(criterion_8(str(tmp_path)))


if __name__ == "__main__":
    import tempfile

    status = 0
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7):
        ok, line = fn()
        print(line)
        status |= not ok
    with tempfile.TemporaryDirectory() as d:
        ok, line = criterion_8(d)
        print(line)
        status |= not ok
    sys.exit(status)
