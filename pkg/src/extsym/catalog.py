"""The four worked examples: parabola, flat 3-space, and two Cahen-Wallach spaces.

Basis conventions (fixtures below refer to them by label):

* ``parabola``: Heisenberg ``e1, e2, e3`` with ``[e1, e3] = e2``.
* ``flat3``: ``e1..e6, b1, b2``, the central extension of ``R^6`` by ``R^2``.
* ``cahen_wallach_1`` / ``cahen_wallach_2``: ``l* + a + l`` with ``l = sl(2, R)``
  on the basis ``H, X, Y`` (``[H,X] = 2Y, [H,Y] = 2X, [X,Y] = 2H``), ``l*``
  spanned by the dual basis ``sigma_H, sigma_X, sigma_Y``.  In the first
  example ``a`` is the adjoint module (``a_H, a_X, a_Y``); in the second it is
  two copies of the standard module written in the basis ``b1..b4``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .liealg import InnerProduct, LieAlgebra, adjoint, killing_form, metric_radical
from .linalg import Matrix, Subspace, format_scalar
from .expm import nilpotency_index
from .extensions import Cochain2, cocycle_conditions, cohomology2, restricted_classes
from .orbit import (
    OrbitSampler,
    check_extrinsic_symmetry,
    embed_nondegenerate,
    embedded_reflection,
    evaluate_vector_word,
    mean_curvature,
    minus_form,
    s0,
    shape_operator,
    shape_operator_matrix,
    signature,
)
from .quadext import MetricAlgebraWithInvolution, QuadExtData, attach_phi, build_dd
from .report import Report
from .triples import NONDEGENERATE, WEAK, ExtrinsicTriple, find_inner_xi, is_full

NAMES = ("parabola", "flat3", "cahen_wallach_1", "cahen_wallach_2")

half = Fraction(1, 2)


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(["e1", "e2", "e3"], {("e1", "e3"): {"e2": 1}})


def sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        ["H", "X", "Y"],
        {("H", "X"): {"Y": 2}, ("H", "Y"): {"X": 2}, ("X", "Y"): {"H": 2}},
    )


def parabola() -> ExtrinsicTriple:
    g = heisenberg()
    form = InnerProduct(Matrix.diagonal([1, 0, 1]))
    theta = Matrix.diagonal([1, -1, -1])
    # D e1 = e3, D e2 = 0, D e3 = -e1
    d = Matrix([[0, 0, -1], [0, 0, 0], [1, 0, 0]])
    return ExtrinsicTriple(g, form, theta, d, "parabola")


FLAT3_COCYCLE = {
    # omega = (s1^s5 + s2^s4) (x) b1 + (s1^s6 + s3^s4) (x) b2, 0-based indices
    (0, 4): (1, 0),
    (1, 3): (1, 0),
    (0, 5): (0, 1),
    (2, 3): (0, 1),
}


def flat3_base() -> ExtrinsicTriple:
    """Abelian ``R^6`` with the standard form; ``D e_i = -e_{i+3}``, ``D e_{i+3} = e_i``."""
    g = LieAlgebra.abelian(6, [f"e{i}" for i in range(1, 7)])
    form = InnerProduct(Matrix.identity(6))
    theta = Matrix.diagonal([1, 1, 1, -1, -1, -1])
    d = [[0] * 6 for _ in range(6)]
    for i in range(3):
        d[i + 3][i] = -1
        d[i][i + 3] = 1
    return ExtrinsicTriple(g, form, theta, Matrix(d), "flat3_base")


def flat3() -> ExtrinsicTriple:
    labels = [f"e{i}" for i in range(1, 7)] + ["b1", "b2"]
    brackets = {}
    for (i, j), (v1, v2) in FLAT3_COCYCLE.items():
        brackets[(i, j)] = {6: v1, 7: v2}
    g = LieAlgebra.from_brackets(labels, brackets)
    form = InnerProduct(Matrix.diagonal([1] * 6 + [0, 0]))
    theta = Matrix.diagonal([1, 1, 1, -1, -1, -1, -1, -1])
    base = flat3_base()
    d = [list(r) + [0, 0] for r in base.d.rows] + [[0] * 8, [0] * 8]
    return ExtrinsicTriple(g, form, theta, Matrix(d), "flat3")


def _sl2_theta() -> Matrix:
    return Matrix.diagonal([1, -1, -1])  # l+ = R H, l- = span{X, Y}


def cahen_wallach_1_dd() -> MetricAlgebraWithInvolution:
    l = sl2()
    rho = [adjoint(l, l.basis_vector(i)) for i in range(3)]
    q = QuadExtData(
        l=l,
        theta_l=_sl2_theta(),
        form_a=killing_form(l).gram,
        theta_a=-_sl2_theta(),
        rho=tuple(rho),
        a_labels=("a_H", "a_X", "a_Y"),
    )
    return build_dd(q)


def cahen_wallach_1() -> ExtrinsicTriple:
    dd = cahen_wallach_1_dd()
    xi = dd.algebra.vec(X=half)
    return attach_phi(dd, xi=xi, name="cahen_wallach_1")


# Two copies of the standard sl(2)-module, a_2 (x) R^2, in the basis
#   b1 = (a1e1 + a2e2)/sqrt2, b2 = (a1e2 - a2e1)/sqrt2,
#   b3 = (a2e2 - a1e1)/sqrt2, b4 = (a1e2 + a2e1)/sqrt2,
# with rho_2(H) = diag(1, -1), rho_2(X) = [[0, 1], [-1, 0]], rho_2(Y) = [[0, 1], [1, 0]],
# form J (x) J and theta P (x) P, J = [[0, -1], [1, 0]], P = diag(1, -1).
CW2_FORM_A = Matrix.diagonal([1, 1, -1, -1])
CW2_THETA_A = Matrix.diagonal([1, -1, 1, -1])
CW2_RHO = (
    Matrix([[0, 0, -1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0]]),  # H
    Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),  # X
    Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),  # Y
)
# D_a: b3 -> b4, b4 -> -b3; D_l: Y -> H, H -> -Y, X -> 0
CW2_D_A = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
CW2_D_L = Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])


def cahen_wallach_2_dd() -> MetricAlgebraWithInvolution:
    q = QuadExtData(
        l=sl2(),
        theta_l=_sl2_theta(),
        form_a=CW2_FORM_A,
        theta_a=CW2_THETA_A,
        rho=CW2_RHO,
        a_labels=("b1", "b2", "b3", "b4"),
    )
    return build_dd(q)


def cahen_wallach_2() -> ExtrinsicTriple:
    return attach_phi(cahen_wallach_2_dd(), d_l=CW2_D_L, d_a=CW2_D_A, name="cahen_wallach_2")


def cw2_parametrization(r, s, t) -> list:
    """Closed form of the CW-II orbit, ``exp(phi(rH + 2s b3 + t sigma_H))(0)``, in g- coordinates.

    Coordinates are ordered ``sigma_X, sigma_Y, b2, b4, X, Y``.  Evaluated
    with 50 digits so the cancellations near ``r = 0`` stay harmless; at
    ``r = 0`` the removable singularities are filled in by their limits.
    """
    with mpmath.workdps(50):
        r, s, t = (_mp(a) for a in (r, s, t))
        if r == 0:
            out = [2 * s * s, t, 0, -2 * s, 0, 0]
        else:
            ch, sh = mpmath.cosh(2 * r), mpmath.sinh(2 * r)
            a = 2 * s * s / r - t
            out = [a * sh + s * s / r**2 * (1 - ch), -a * ch + s * s / r**2 * sh,
                   s / r * (1 - ch), -s / r * sh, (ch - 1) / 2, sh / 2]
        return [float(x) for x in out]


def cw2_parameters(x) -> tuple[float, float, float]:
    """Invert :func:`cw2_parametrization` using the ``Y``, ``b4`` and ``sigma_Y`` coordinates."""
    with mpmath.workdps(50):
        sx, sy, b2, b4, X, Y = (_mp(a) for a in x)
        r = mpmath.asinh(2 * Y) / 2
        if r == 0:
            return 0.0, float(-b4 / 2), float(sy)
        sh, ch = mpmath.sinh(2 * r), mpmath.cosh(2 * r)
        s = -b4 * r / sh
        t = (sy + 2 * s * s / r * ch - s * s / r**2 * sh) / ch
        return float(r), float(s), float(t)


def _mp(a):
    if isinstance(a, Fraction):
        return mpmath.mpf(a.numerator) / a.denominator
    return mpmath.mpf(a)


# -- orbit verifiers: deviation of a point from the closed-form orbit ------


def _parabola_deviation(x) -> Fraction | float:
    # g- = span{e2, e3}; points are (-t^2/2, -t)
    return abs(x[0] + x[1] * x[1] / 2)


def _flat3_deviation(x) -> Fraction | float:
    # g- = span{e4, e5, e6, b1, b2}; points are (t, s, r, st, rt)
    return max(abs(x[3] - x[0] * x[1]), abs(x[4] - x[0] * x[2]))


def _cw2_deviation(x) -> float:
    expected = cw2_parametrization(*cw2_parameters(x))
    return max(abs(float(a) - b) for a, b in zip(x, expected))


VERIFIERS: dict[str, Callable] = {
    "parabola": _parabola_deviation,
    "flat3": _flat3_deviation,
    "cahen_wallach_2": _cw2_deviation,
}


BUILDERS: dict[str, Callable[[], ExtrinsicTriple]] = {
    "parabola": parabola,
    "flat3": flat3,
    "cahen_wallach_1": cahen_wallach_1,
    "cahen_wallach_2": cahen_wallach_2,
}


def build(name: str) -> ExtrinsicTriple:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}") from None


# -- fixtures --------------------------------------------------------------

#: where an expected value comes from
EXAMPLE = "worked example"  # stated in the worked example
IDENTITY = "identity"  # forced by the definitions
DERIVED = "derived"  # computed once by an independent route and frozen

ORBIT_TOLERANCE = 1e-9


class Vec(dict):
    """Expected vector given by basis label, e.g. ``Vec(sigma_X=-2)``; resolved against the triple."""

    def resolve(self, t: ExtrinsicTriple) -> tuple:
        return t.vec(**self)


@dataclass(frozen=True)
class Fixture:
    quantity: str
    expected: object
    compute: Callable[[ExtrinsicTriple], object] = field(repr=False)
    source: str = EXAMPLE
    tolerance: float | None = None  # None: exact equality

    def expected_value(self, t: ExtrinsicTriple):
        return self.expected.resolve(t) if isinstance(self.expected, Vec) else self.expected

    def evaluate(self, t: ExtrinsicTriple) -> tuple[bool, object, str]:
        got = self.compute(t)
        expected = self.expected_value(t)
        if self.tolerance is None:
            return got == expected, got, ""
        dev = _max_deviation(got, expected)
        return dev <= self.tolerance, got, f"max deviation {dev:.3e}"


def _max_deviation(a, b) -> float:
    fa = [float(x) for x in _flatten(a)]
    fb = [float(x) for x in _flatten(b)]
    if len(fa) != len(fb):
        return float("inf")
    return max((abs(x - y) for x, y in zip(fa, fb)), default=0.0)


def _flatten(a):
    if isinstance(a, (list, tuple)):
        for x in a:
            yield from _flatten(x)
    else:
        yield a


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], ExtrinsicTriple]
    fixtures: tuple


def _span(t: ExtrinsicTriple, *labels: str) -> Subspace:
    return Subspace.from_vectors([t.algebra.basis_vector(lab) for lab in labels], t.dim)


_SPACE_NAMES = {"g_plus": "g+", "g_minus": "g-", "g_pp": "g++", "g_pm": "g+-", "g_mp": "g-+", "g_mm": "g--"}


def _span_fixture(attr: str, *labels: str) -> Fixture:
    return Fixture(f"{_SPACE_NAMES[attr]} = span{{{', '.join(labels)}}}",
                   True, lambda t: getattr(t.decomposition, attr) == _span(t, *labels))


def _word_point(t: ExtrinsicTriple, word) -> tuple:
    return OrbitSampler(t).point(word).coords


def _a_h(label: str) -> Callable:
    return lambda t: shape_operator(t, mean_curvature(t), t.vec(**{label: 1}))


def _a_h_squared_zero(t: ExtrinsicTriple) -> bool:
    A = shape_operator_matrix(t, mean_curvature(t))
    return (A @ A).is_zero()


def _a_h_index(t: ExtrinsicTriple) -> int | None:
    return nilpotency_index(shape_operator_matrix(t, mean_curvature(t)))


def _ambient_signature(t: ExtrinsicTriple) -> tuple:
    return signature(embed_nondegenerate(minus_form(t)).ambient)


def _radical_dim(t: ExtrinsicTriple) -> int:
    return metric_radical(t.algebra, t.form).dim


def _inner_xi(t: ExtrinsicTriple):
    return find_inner_xi(t).xi


def _symmetry_exact(t: ExtrinsicTriple) -> bool:
    return check_extrinsic_symmetry(t).ok


def _full(t: ExtrinsicTriple) -> bool:
    return is_full(t).full


def cw2_grid(values=(Fraction(-1), Fraction(-1, 2), half, Fraction(1))) -> list[tuple]:
    return list(itertools.product(values, repeat=3))


def cw2_orbit_by_formula(t: ExtrinsicTriple, grid=None) -> tuple[list, list]:
    """Orbit points ``exp(phi(rH + 2s b3 + t sigma_H))(0)`` and the closed form at the same parameters."""
    grid = cw2_grid() if grid is None else grid
    got, expected = [], []
    for r, s, u in grid:
        X = t.vec(H=r, b3=2 * s, sigma_H=u)
        got.append([float(a) for a in evaluate_vector_word(t, [(X, 1)])])
        expected.append(cw2_parametrization(r, s, u))
    return got, expected


FLAT3_SAMPLE = ((Fraction(2), Fraction(3), Fraction(5)), (Fraction(-1, 2), Fraction(4, 3), Fraction(-7)))
PARABOLA_SAMPLE = (-2, -1, Fraction(-1, 2), 0, half, 1, 2)


def _parabola_fixtures() -> tuple:
    ts = [Fraction(a) for a in PARABOLA_SAMPLE]
    return (
        Fixture("flavor", WEAK, lambda t: t.flavor),
        Fixture("metric radical dimension", 1, _radical_dim),
        Fixture("orbit point at t = 1", (-half, Fraction(-1)), lambda t: _word_point(t, [(0, 1)])),
        Fixture("orbit points -t^2/2 e2 - t e3 on the default grid", [(-a * a / 2, -a) for a in ts],
                lambda t: [_word_point(t, [(0, a)]) for a in ts]),
        Fixture("ambient signature (negative, positive, zero)", (1, 2, 0), _ambient_signature),
        Fixture("s0 on g- (e2 -> e2, e3 -> -e3)", Matrix.diagonal([1, -1]),
                lambda t: s0(t).linear, DERIVED),
        Fixture("full", True, _full, DERIVED),
        Fixture("tau_D phi = phi tau_D on g+", True, _symmetry_exact, IDENTITY),
    )


def _flat3_fixtures() -> tuple:
    pts = FLAT3_SAMPLE
    return (
        Fixture("flavor", WEAK, lambda t: t.flavor),
        Fixture("metric radical dimension", 2, _radical_dim),
        Fixture("orbit points (t, s, r, st, rt)", [(a, b, c, a * b, a * c) for a, b, c in pts],
                lambda t: [_word_point(t, [(0, a), (1, b), (2, c)]) for a, b, c in pts]),
        Fixture("ambient signature (negative, positive, zero)", (2, 5, 0), _ambient_signature),
        Fixture("reflection differential at f(t, s, r)", [flat3_reflection_differential(*p) for p in pts],
                lambda t: [flat3_embedded_reflection(t, p).linear for p in pts]),
        Fixture("reflection law s_f(t,s,r) f(a,b,c) = f(2t-a, 2s-b, 2r-c)", True, _flat3_reflection_law),
        Fixture("full", True, _full, DERIVED),
        Fixture("cocycle class is theta-odd and D-closed", True, _flat3_cocycle_restricted),
        Fixture("transvection fixes the orbit", True, lambda t: flat3_transvection(t)[0] <= ORBIT_TOLERANCE),
        Fixture("transvection linear part is not the identity", True, lambda t: flat3_transvection(t)[1] > 0.1),
        Fixture("tau_D phi = phi tau_D on g+", True, _symmetry_exact, IDENTITY),
    )


def _cw1_fixtures() -> tuple:
    return (
        Fixture("flavor", NONDEGENERATE, lambda t: t.flavor),
        _span_fixture("g_pp", "a_X"),
        _span_fixture("g_pm", "sigma_H", "a_Y", "H"),
        _span_fixture("g_minus", "sigma_X", "sigma_Y", "a_H", "X", "Y"),
        _span_fixture("g_mm", "sigma_Y", "a_H", "Y"),
        Fixture("mean curvature h", Vec(sigma_X=-2), mean_curvature),
        Fixture("A_h(Y)", Vec(sigma_Y=-4), _a_h("Y")),
        Fixture("A_h(sigma_Y)", Vec(), _a_h("sigma_Y")),
        Fixture("A_h(a_H)", Vec(), _a_h("a_H")),
        Fixture("A_h^2 = 0", True, _a_h_squared_zero),
        Fixture("A_h nilpotency index", 2, _a_h_index),
        Fixture("full", True, _full),
        Fixture("inner xi", Vec(X=half), _inner_xi),
        Fixture("tau_D phi = phi tau_D on g+", True, _symmetry_exact, IDENTITY),
    )


def _cw2_fixtures() -> tuple:
    return (
        Fixture("flavor", NONDEGENERATE, lambda t: t.flavor),
        _span_fixture("g_pp", "b1"),
        _span_fixture("g_pm", "sigma_H", "b3", "H"),
        _span_fixture("g_mp", "sigma_X", "b2", "X"),
        _span_fixture("g_mm", "sigma_Y", "b4", "Y"),
        Fixture("[g+-, g--] = span{sigma_X, b2, X}", True,
                lambda t: is_full(t).bracket_span == _span(t, "sigma_X", "b2", "X")),
        Fixture("mean curvature h", Vec(sigma_X=-1), mean_curvature),
        Fixture("A_h(Y)", Vec(sigma_Y=-2), _a_h("Y")),
        Fixture("A_h(b4)", Vec(), _a_h("b4")),
        Fixture("A_h(sigma_Y)", Vec(), _a_h("sigma_Y")),
        Fixture("A_h^2 = 0", True, _a_h_squared_zero),
        Fixture("full", True, _full),
        Fixture("inner xi", None, _inner_xi),
        Fixture("orbit matches the sinh/cosh parametrization on {+-1, +-1/2}^3", 0.0,
                lambda t: _max_deviation(*cw2_orbit_by_formula(t)), EXAMPLE, ORBIT_TOLERANCE),
        Fixture("tau_D phi = phi tau_D on g+", True, _symmetry_exact, IDENTITY),
    )


@functools.cache
def entries() -> dict[str, CatalogEntry]:
    return {
        "parabola": CatalogEntry("parabola", parabola, _parabola_fixtures()),
        "flat3": CatalogEntry("flat3", flat3, _flat3_fixtures()),
        "cahen_wallach_1": CatalogEntry("cahen_wallach_1", cahen_wallach_1, _cw1_fixtures()),
        "cahen_wallach_2": CatalogEntry("cahen_wallach_2", cahen_wallach_2, _cw2_fixtures()),
    }


def _describe(t: ExtrinsicTriple, value, as_vector: bool = False) -> str:
    if as_vector and isinstance(value, tuple):
        return t.fmt(value)
    if isinstance(value, Matrix):
        return "[" + "; ".join(" ".join(format_scalar(a) for a in r) for r in value.rows) + "]"
    if isinstance(value, (list, tuple)):
        if len(value) > 4 and all(isinstance(a, (list, tuple, Matrix)) for a in value):
            return f"{len(value)} items"
        inner = ", ".join(_describe(t, a) for a in value)
        return f"[{inner}]" if isinstance(value, list) else f"({inner})"
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, float):
        return f"{value:.3e}"
    if value is None:
        return "none"
    return str(value)


def run_fixtures(name: str, t: ExtrinsicTriple | None = None) -> Report:
    """Evaluate every fixture of a catalog entry; failures are report rows, never exceptions."""
    entry = entries().get(name)
    if entry is None:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")
    t = t or entry.build()
    rep = Report(f"catalog fixtures: {name}")
    for f in entry.fixtures:
        try:
            ok, got, note = f.evaluate(t)
        except Exception as exc:  # a broken computation is a failed fixture
            rep.add(f.quantity, False, None, f"error: {exc}")
            continue
        vec = isinstance(f.expected, Vec) or (f.expected is None and got is not None)
        shown = _describe(t, got, vec)
        detail = f"expected {_describe(t, f.expected_value(t), vec)}, got {shown} ({f.source})"
        if note:
            detail += f"; {note}"
        rep.add(f.quantity, bool(ok), None if ok else shown, detail)
    return rep


# -- the flat3 reflections --------------------------------------------------


def flat3_reflection_differential(t, s, r) -> Matrix:
    """Differential of the reflection at ``f(t, s, r)`` in the 7-dimensional ambient space."""
    return Matrix([
        [-1, 0, 0, 0, 0, -2 * s, -2 * r],
        [0, -1, 0, 0, 0, -2 * t, 0],
        [0, 0, -1, 0, 0, 0, -2 * t],
        [-2 * s, -2 * t, 0, 1, 0, -2 * (s * s + t * t), -2 * r * s],
        [-2 * r, 0, -2 * t, 0, 1, -2 * r * s, -2 * (r * r + t * t)],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1],
    ])


def flat3_point(t, s, r) -> tuple:
    """``f(t, s, r) = (t, s, r, st, rt, 0, 0)`` in the 7-dimensional ambient space."""
    return tuple(Fraction(a) for a in (t, s, r, s * t, r * t, 0, 0))


def flat3_embedded_reflection(triple: ExtrinsicTriple, params):
    sampler = OrbitSampler(triple)
    emb = embed_nondegenerate(minus_form(triple))
    a, b, c = params
    p = sampler.point([(0, a), (1, b), (2, c)])
    return embedded_reflection(triple, emb, p, sampler)


def flat3_transvection(triple: ExtrinsicTriple, u=1, sample=None) -> tuple[float, float]:
    """``(s1 s0 s2)^2`` with ``s0, s1, s2`` the reflections at ``f(0,0,0), f(0,u,0), f(0,0,u)``.

    Returns the largest displacement of a sampled orbit point and the max-entry
    distance of the linear part from the identity.
    """
    u = Fraction(u)
    s0_ = flat3_embedded_reflection(triple, (0, 0, 0))
    s1_ = flat3_embedded_reflection(triple, (0, u, 0))
    s2_ = flat3_embedded_reflection(triple, (0, 0, u))
    g = s1_ @ s0_ @ s2_
    g = g @ g
    emb = embed_nondegenerate(minus_form(triple))
    grid = (-1, Fraction(-1, 2), 0, half, 2)
    sample = sample or [flat3_point(a, b, c) for a in grid for b in grid for c in grid]
    disp = max(max(abs(float(x - y)) for x, y in zip(g(p), p)) for p in sample)
    I = Matrix.identity(emb.ambient.dim)
    lin = max(abs(float(x)) for row in (g.linear - I).rows for x in row)
    return disp, lin


def _flat3_reflection_law(t: ExtrinsicTriple) -> bool:
    sampler = OrbitSampler(t)
    emb = embed_nondegenerate(minus_form(t))
    for a, b, c in FLAT3_SAMPLE:
        s = flat3_embedded_reflection(t, (a, b, c))
        for x, y, z in FLAT3_SAMPLE:
            p = emb.injection.apply(sampler.point([(0, x), (1, y), (2, z)]).coords)
            if s(p) != flat3_point(2 * a - x, 2 * b - y, 2 * c - z):
                return False
    return True


def _flat3_cocycle_restricted(t: ExtrinsicTriple) -> bool:
    base = flat3_base()
    w = Cochain2.from_values(6, 2, FLAT3_COCYCLE)
    if not cocycle_conditions(base, w).ok:
        return False
    H = cohomology2(base.algebra, 2, base.theta, base.d)
    reps = restricted_classes(base, 2, H)
    span = Subspace.from_vectors([c.to_vector() for c in reps] + list(H.coboundaries.basis), len(w.to_vector()))
    return span.contains(w.to_vector())
