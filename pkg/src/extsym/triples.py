"""(Weak) extrinsic symmetric triples ``(g, <,>, (D, theta))``.

A triple bundles a Lie algebra, an ad-invariant inner product, an isometric
involutive automorphism ``theta`` and an antisymmetric derivation ``D`` with
``D^3 = -D`` and ``D theta = -theta D``.  The two involutions ``theta`` and
``tau_D`` split ``g`` into four pieces; naming follows ``g_<theta sign><tau
sign>``, so ``g_pm`` is the +1 eigenspace of ``theta`` intersected with the
-1 eigenspace of ``tau_D``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .liealg import (
    InnerProduct,
    LieAlgebra,
    adjoint,
    bracket,
    centre,
    check_invariance,
    check_jacobi,
    format_vector,
    metric_radical,
    span_of_brackets,
)
from .linalg import Matrix, Subspace, solve_linear, unit_vector, vscale, vsub
from .report import Report

NONDEGENERATE = "nondegenerate"
WEAK = "weak"


class DecompositionError(ValueError):
    """``D`` does not split ``g`` into ``ker D`` and ``ker(D^2 + 1)``."""


class InvalidTripleError(ValueError):
    def __init__(self, report: Report):
        self.report = report
        names = ", ".join(c.name for c in report.failures)
        super().__init__(f"invalid extrinsic symmetric triple: {names}")


@dataclass(frozen=True)
class TripleDecomposition:
    g_plus: Subspace
    g_minus: Subspace
    g_up: Subspace
    g_down: Subspace
    g_pp: Subspace
    g_pm: Subspace
    g_mp: Subspace
    g_mm: Subspace

    def dims(self) -> dict:
        return {k: getattr(self, k).dim for k in
                ("g_plus", "g_minus", "g_up", "g_down", "g_pp", "g_pm", "g_mp", "g_mm")}


@dataclass(frozen=True, eq=False)
class ExtrinsicTriple:
    """Data of a candidate triple; nothing is validated on construction.

    ``theta`` and ``d`` are matrices in the algebra's basis (column ``j`` is
    the image of ``e_j``).  The decomposition and the flavor are computed
    lazily and cached.
    """

    algebra: LieAlgebra
    form: InnerProduct
    theta: Matrix
    d: Matrix
    name: str = ""

    def __post_init__(self):
        n = self.algebra.dim
        for what, m in (("theta", self.theta), ("D", self.d), ("Gram matrix", self.form.gram)):
            if m.shape != (n, n):
                raise ValueError(f"{what} has shape {m.shape}, expected {(n, n)}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> tuple:
        return self.algebra.basis_labels

    @cached_property
    def decomposition(self) -> TripleDecomposition:
        n = self.dim
        I = Matrix.identity(n)
        th, D = self.theta, self.d
        g_plus = (th - I).kernel()
        g_minus = (th + I).kernel()
        if not (g_plus + g_minus).is_full() or (g_plus.dim + g_minus.dim != n):
            raise DecompositionError("theta is not diagonalisable with eigenvalues +-1")
        g_up = D.kernel()
        g_down = (D @ D + I).kernel()
        if g_up.dim + g_down.dim != n:
            raise DecompositionError(
                f"dim ker D + dim ker(D^2+1) = {g_up.dim} + {g_down.dim} != {n}"
            )
        return TripleDecomposition(
            g_plus, g_minus, g_up, g_down,
            g_plus & g_up, g_plus & g_down, g_minus & g_up, g_minus & g_down,
        )

    @cached_property
    def flavor(self) -> str | None:
        """``"nondegenerate"``, ``"weak"``, or None if neither holds."""
        if self.form.is_nondegenerate():
            return NONDEGENERATE
        try:
            dec = self.decomposition
        except DecompositionError:
            return None
        S = dec.g_plus + dec.g_mm
        if S.dim and S.gram(self.form.gram).is_invertible():
            return WEAK
        if not S.dim:
            return WEAK
        return None

    def bracket(self, x, y) -> tuple:
        return bracket(self.algebra, x, y)

    def D(self, x) -> tuple:
        return self.d.apply(x)

    def vec(self, **coeffs) -> tuple:
        return self.algebra.vec(**coeffs)

    def fmt(self, v) -> str:
        return format_vector(v, self.labels)

    def with_d(self, d: Matrix) -> "ExtrinsicTriple":
        return ExtrinsicTriple(self.algebra, self.form, self.theta, d, self.name)


def decompose(t: ExtrinsicTriple) -> TripleDecomposition:
    return t.decomposition


def tau_D(t: ExtrinsicTriple) -> Matrix:
    """``+1`` on ``ker D`` and ``-1`` on ``ker(D^2+1)``, i.e. ``Id + 2 D^2``."""
    t.decomposition  # raises if D does not split
    return Matrix.identity(t.dim) + 2 * (t.d @ t.d)


def _basis_pairs(n: int):
    return itertools.combinations(range(n), 2)


def validate(t: ExtrinsicTriple) -> Report:
    """Check every axiom and report each one; never raises for bad data."""
    L, B, th, D = t.algebra, t.form, t.theta, t.d
    n = t.dim
    I = Matrix.identity(n)
    G = B.gram
    rep = Report(f"extrinsic symmetric triple {t.name}".rstrip())
    rep.extend(check_jacobi(L))
    rep.add("form symmetric", G.is_symmetric())
    rep.extend(check_invariance(L, B))

    th2 = th @ th
    rep.add("theta^2 = Id", th2 == I, th2)
    rep.add("theta automorphism", *_morphism_witness(L, th, t.labels))
    bad = th.T @ G @ th - G
    rep.add("theta isometric", bad.is_zero(), bad)

    rep.add("D derivation", *_derivation_witness(L, D, t.labels))
    anti = D.T @ G + G @ D
    rep.add("D antisymmetric", anti.is_zero(), anti,
            "" if anti.is_zero() else _first_nonzero(anti, t.labels, "<Dx,y>+<x,Dy>"))
    cube = D @ D @ D + D
    rep.add("D^3 = -D", cube.is_zero(), cube,
            "" if cube.is_zero() else _first_nonzero(cube, t.labels, "(D^3+D)"))
    anti_c = D @ th + th @ D
    rep.add("D theta = -theta D", anti_c.is_zero(), anti_c)

    try:
        dec = t.decomposition
        rep.add("ker D + ker(D^2+1) = g", True)
    except DecompositionError as exc:
        rep.add("ker D + ker(D^2+1) = g", False, None, str(exc))
        rep.add("[g+-, g+-] = g++", False, None, "decomposition unavailable")
        rep.add("non-degeneracy", False, None, "decomposition unavailable")
        return rep

    span = span_of_brackets(L, dec.g_pm, dec.g_pm)
    rep.add("[g+-, g+-] = g++", span == dec.g_pp, span,
            "" if span == dec.g_pp else f"dim span = {span.dim}, dim g++ = {dec.g_pp.dim}")

    flavor = t.flavor
    rep.add("non-degeneracy", flavor is not None, flavor,
            f"flavor {flavor}" if flavor else "form degenerate on g+ + g--")
    return rep


def _first_nonzero(M: Matrix, labels, what: str) -> str:
    for i, row in enumerate(M.rows):
        for j, a in enumerate(row):
            if a:
                return f"{what} nonzero at ({labels[i]}, {labels[j]}): {a}"
    return ""


def _morphism_witness(L: LieAlgebra, h: Matrix, labels) -> tuple:
    n = L.dim
    cols = h.columns()
    for i, j in _basis_pairs(n):
        lhs = h.apply(bracket(L, unit_vector(n, i), unit_vector(n, j)))
        rhs = bracket(L, cols[i], cols[j])
        if lhs != rhs:
            return False, (i, j), f"fails on ({labels[i]}, {labels[j]})"
    return True, None, ""


def _derivation_witness(L: LieAlgebra, D: Matrix, labels) -> tuple:
    n = L.dim
    cols = D.columns()
    for i, j in _basis_pairs(n):
        ei, ej = unit_vector(n, i), unit_vector(n, j)
        lhs = D.apply(bracket(L, ei, ej))
        rhs = tuple(a + b for a, b in zip(bracket(L, cols[i], ej), bracket(L, ei, cols[j])))
        if lhs != rhs:
            return False, (i, j), f"fails on ({labels[i]}, {labels[j]})"
    return True, None, ""


def require_valid(t: ExtrinsicTriple) -> ExtrinsicTriple:
    rep = validate(t)
    if not rep.ok:
        raise InvalidTripleError(rep)
    return t


@dataclass(frozen=True)
class Fullness:
    full: bool
    bracket_span: Subspace  # [g+-, g--]
    target: Subspace  # g-+


def is_full(t: ExtrinsicTriple) -> Fullness:
    """Both fullness criteria; they must agree on a valid triple."""
    dec = t.decomposition
    L = t.algebra
    span = span_of_brackets(L, dec.g_pm, dec.g_mm)
    first = span == dec.g_mp
    second = span_of_brackets(L, dec.g_down, dec.g_down) == dec.g_up
    if first != second:
        raise InvalidTripleError(Report("fullness", []))
    return Fullness(first, span, dec.g_mp)


@dataclass(frozen=True)
class InnerDerivation:
    xi: tuple | None  # canonical solution of ad(xi) = D
    solutions: Subspace  # the centre: xi + centre is the full solution set
    xi_minus: tuple | None  # a solution lying in g-, when one exists

    @property
    def inner(self) -> bool:
        return self.xi is not None


def find_inner_xi(t: ExtrinsicTriple) -> InnerDerivation:
    """Solve ``ad(xi) = D``."""
    L, D = t.algebra, t.d
    n = t.dim
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([L.c[i][j][k] for i in range(n)])
            rhs.append(D[k, j])
    xi = solve_linear(rows, rhs, n) if n else ()
    Z = centre(L)
    if xi is None:
        return InnerDerivation(None, Z, None)
    # theta ad(xi) theta = ad(theta xi) = -D, so the theta-odd part also solves
    xi_minus = vscale(Fraction(1, 2), vsub(xi, t.theta.apply(xi)))
    if adjoint(L, xi_minus) != D:
        xi_minus = None
    return InnerDerivation(xi, Z, xi_minus)


def verify_isomorphism(h: Matrix, t1: ExtrinsicTriple, t2: ExtrinsicTriple) -> Report:
    rep = Report("isomorphism of triples")
    if h.shape != (t2.dim, t1.dim):
        rep.add("dimensions", False, h.shape, f"map has shape {h.shape}")
        return rep
    rep.add("invertible", h.is_invertible())
    rep.add("algebra homomorphism", *_hom_witness(t1.algebra, t2.algebra, h))
    G1, G2 = t1.form.gram, t2.form.gram
    rep.add("<,>_1 = h^* <,>_2", h.T @ G2 @ h == G1)
    rep.add("D_2 h = h D_1", t2.d @ h == h @ t1.d)
    rep.add("theta_2 h = h theta_1", t2.theta @ h == h @ t1.theta)
    return rep


def _hom_witness(L1: LieAlgebra, L2: LieAlgebra, h: Matrix) -> tuple:
    n = L1.dim
    cols = h.columns()
    for i, j in _basis_pairs(n):
        lhs = h.apply(bracket(L1, unit_vector(n, i), unit_vector(n, j)))
        if lhs != bracket(L2, cols[i], cols[j]):
            return False, (i, j), f"fails on ({L1.basis_labels[i]}, {L1.basis_labels[j]})"
    return True, None, ""


def check_identities(t: ExtrinsicTriple) -> Report:
    """Consequences of the axioms, evaluated on basis vectors.

    These hold for every valid (weak) triple, so a failure here on a triple
    that passes :func:`validate` indicates a bug.
    """
    rep = Report("derived identities")
    dec = t.decomposition
    L, D, B = t.algebra, t.d, t.form
    br = t.bracket
    pm, mm, pp = dec.g_pm.basis, dec.g_mm.basis, dec.g_pp.basis

    rep.add("D: g+- -> g-- isometric",
            all(B(D.apply(u), D.apply(v)) == B(u, v) for u in pm for v in pm))
    rep.add("[Du, Dv] = [u, v] on g--",
            all(br(D.apply(u), D.apply(v)) == br(u, v) for u in mm for v in mm))
    rep.add("D[B, u] = [B, Du]",
            all(D.apply(br(b, u)) == br(b, D.apply(u)) for b in pp for u in mm))
    rep.add("[Du, v] = [Dv, u] on g--",
            all(br(D.apply(u), v) == br(D.apply(v), u) for u in mm for v in mm))
    rep.add("[g--, g--] in g++", span_of_brackets(L, dec.g_mm, dec.g_mm) <= dec.g_pp)
    rep.add("[g+-, g--] in g-+", span_of_brackets(L, dec.g_pm, dec.g_mm) <= dec.g_mp)
    tau = tau_D(t)
    rep.add("tau_D theta = theta tau_D", tau @ t.theta == t.theta @ tau)
    R = metric_radical(L, B)
    rep.add("radical central", R <= centre(L))
    rep.add("radical in g-+", R <= dec.g_mp)
    return rep
