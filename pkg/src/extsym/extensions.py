"""Chevalley-Eilenberg 2-cohomology with trivial coefficients and central extensions.

A weak triple whose metric radical ``R`` is non-zero is a central extension
of the non-degenerate triple on ``g/R`` by a 2-cocycle ``omega`` with values
in ``R``, subject to ``theta* omega = -omega`` and ``D omega = 0``.  This
module computes the relevant cohomology, builds extensions from cocycles,
and extracts cocycles from weak triples.

Cochain coordinates are ordered lexicographically over ``(i < j, fiber)``:
the coordinate of ``omega_f(e_i, e_j)`` sits at ``p * r + f`` where ``p`` is the
position of ``(i, j)`` among all pairs.

Conventions: ``(d sigma)(x, y) = -sigma([x, y])`` for 1-cochains and

    (d omega)(x, y, z) = -omega([x, y], z) + omega([x, z], y) - omega([y, z], x)

for 2-cochains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .liealg import (
    InnerProduct,
    LieAlgebra,
    bracket,
    centre,
    format_vector,
    metric_radical,
    quotient_by_central_ideal,
)
from .linalg import Matrix, Subspace, vector, zero_vector
from .report import Report
from .triples import ExtrinsicTriple, InvalidTripleError, is_full, validate


class ExtensionError(ValueError):
    """Preconditions of a central extension fail; ``report`` lists which."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__("; ".join(c.line() for c in report.failures) or report.title)


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


# -- cochains --------------------------------------------------------------


@dataclass(frozen=True)
class Cochain2:
    """Alternating bilinear map ``g0 x g0 -> R``; ``coeffs[f][i, j] = omega_f(e_i, e_j)``."""

    base_dim: int
    fiber_dim: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(c if isinstance(c, Matrix) else Matrix(c) for c in self.coeffs)
        if len(cs) != self.fiber_dim:
            raise ValueError(f"{len(cs)} coefficient matrices for fiber dimension {self.fiber_dim}")
        for c in cs:
            if c.shape != (self.base_dim, self.base_dim):
                raise ValueError(f"coefficient matrix of shape {c.shape}, expected base dimension {self.base_dim}")
            if not (c + c.T).is_zero():
                raise ValueError("coefficient matrix is not antisymmetric")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, n: int, r: int) -> "Cochain2":
        return cls(n, r, tuple(Matrix.zeros(n) for _ in range(r)))

    @classmethod
    def from_values(cls, n: int, r: int, values: dict) -> "Cochain2":
        """From ``{(i, j): fiber vector}``; each unordered pair may appear once."""
        m = [[[Fraction(0)] * n for _ in range(n)] for _ in range(r)]
        seen = set()
        for (i, j), val in values.items():
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad index pair ({i}, {j})")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"pair {key} given twice")
            seen.add(key)
            val = vector(val)
            if len(val) != r:
                raise ValueError(f"value of length {len(val)} for fiber dimension {r}")
            for f, a in enumerate(val):
                m[f][i][j] = a
                m[f][j][i] = -a
        return cls(n, r, tuple(Matrix(x) for x in m))

    @classmethod
    def from_vector(cls, n: int, r: int, v: Sequence) -> "Cochain2":
        v = vector(v)
        if len(v) != r * len(_pairs(n)):
            raise ValueError("cochain vector has the wrong length")
        values = {}
        for p, (i, j) in enumerate(_pairs(n)):
            values[(i, j)] = v[p * r:(p + 1) * r]
        return cls.from_values(n, r, values)

    def to_vector(self) -> tuple:
        out = []
        for i, j in _pairs(self.base_dim):
            out.extend(c[i, j] for c in self.coeffs)
        return tuple(out)

    def __call__(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(sum((a * c[i, j] * b for i, a in enumerate(x) if a for j, b in enumerate(y) if b),
                         Fraction(0)) for c in self.coeffs)

    def value(self, i: int, j: int) -> tuple:
        return tuple(c[i, j] for c in self.coeffs)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(self.base_dim, self.fiber_dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(self.base_dim, self.fiber_dim, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, s) -> "Cochain2":
        return Cochain2(self.base_dim, self.fiber_dim, tuple(c * s for c in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "Cochain2":
        return self * -1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def nonzero_values(self) -> list[tuple[int, int, tuple]]:
        """``(i, j, value)`` for ``i < j`` with ``omega(e_i, e_j) != 0``."""
        return [(i, j, self.value(i, j)) for i, j in _pairs(self.base_dim) if any(self.value(i, j))]

    def pullback(self, m: Matrix) -> "Cochain2":
        """``(x, y) -> omega(m x, m y)``."""
        return Cochain2(self.base_dim, self.fiber_dim, tuple(m.T @ c @ m for c in self.coeffs))

    def derivation_action(self, d: Matrix) -> "Cochain2":
        """``(x, y) -> omega(d x, y) + omega(x, d y)``."""
        return Cochain2(self.base_dim, self.fiber_dim, tuple(d.T @ c + c @ d for c in self.coeffs))

    def value_span(self) -> Subspace:
        return Subspace.from_vectors([v for _, _, v in self.nonzero_values()], self.fiber_dim)

    def format(self, base_labels: Sequence[str], fiber_labels: Sequence[str] | None = None) -> str:
        fiber_labels = fiber_labels or [f"z{k + 1}" for k in range(self.fiber_dim)]
        parts = [f"({base_labels[i]}, {base_labels[j]}) -> {format_vector(v, fiber_labels)}"
                 for i, j, v in self.nonzero_values()]
        return "; ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Cochain3:
    """Alternating trilinear map, stored on index triples ``i < j < k``."""

    base_dim: int
    fiber_dim: int
    values: dict

    def value(self, i: int, j: int, k: int) -> tuple:
        idx = (i, j, k)
        if len(set(idx)) < 3:
            return zero_vector(self.fiber_dim)
        order = sorted(range(3), key=lambda a: idx[a])
        # sign of the sorting permutation
        sign = 1
        perm = list(order)
        for a in range(3):
            for b in range(a + 1, 3):
                if perm[a] > perm[b]:
                    sign = -sign
        v = self.values.get(tuple(sorted(idx)), zero_vector(self.fiber_dim))
        return tuple(sign * a for a in v)

    def __call__(self, x: Sequence, y: Sequence, z: Sequence) -> tuple:
        acc = [Fraction(0)] * self.fiber_dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(z):
                    if c:
                        for f, w in enumerate(self.value(i, j, k)):
                            acc[f] += a * b * c * w
        return tuple(acc)

    def to_vector(self) -> tuple:
        out = []
        for ijk in itertools.combinations(range(self.base_dim), 3):
            out.extend(self.values.get(ijk, zero_vector(self.fiber_dim)))
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(a for v in self.values.values() for a in v)


def differential1(g0: LieAlgebra, sigma: Matrix) -> Cochain2:
    """``(d sigma)(x, y) = -sigma([x, y])`` for a linear map ``sigma: g0 -> R`` (an ``r x n`` matrix)."""
    n, r = g0.dim, sigma.nrows
    if sigma.ncols != n:
        raise ValueError("1-cochain has the wrong number of columns")
    values = {}
    for i, j in _pairs(n):
        values[(i, j)] = tuple(-a for a in sigma.apply(g0.c[i][j]))
    return Cochain2.from_values(n, r, values)


def differential2(g0: LieAlgebra, w: Cochain2) -> Cochain3:
    n, r = g0.dim, w.fiber_dim
    if w.base_dim != n:
        raise ValueError(f"cochain on dimension {w.base_dim}, algebra of dimension {n}")
    c = g0.c
    vals = {}
    for i, j, k in itertools.combinations(range(n), 3):
        out = [Fraction(0)] * r
        for f, m in enumerate(w.coeffs):
            s = Fraction(0)
            for p in range(n):
                s -= c[i][j][p] * m[p, k]
                s += c[i][k][p] * m[p, j]
                s -= c[j][k][p] * m[p, i]
            out[f] = s
        if any(out):
            vals[(i, j, k)] = tuple(out)
    return Cochain3(n, r, vals)


def d1_matrix(g0: LieAlgebra, r: int) -> Matrix:
    """Matrix of ``d: C^1 -> C^2``; ``C^1`` coordinates are ``sigma[f, i]`` at ``i * r + f``."""
    n = g0.dim
    cols = []
    for i in range(n):
        for f in range(r):
            sigma = [[0] * n for _ in range(r)]
            sigma[f][i] = 1
            cols.append(differential1(g0, Matrix(sigma)).to_vector())
    return Matrix.from_columns(cols, r * len(_pairs(n))) if cols else Matrix.zeros(r * len(_pairs(n)), 0)


def d2_matrix(g0: LieAlgebra, r: int) -> Matrix:
    n = g0.dim
    rows3 = r * len(list(itertools.combinations(range(n), 3)))
    dim2 = r * len(_pairs(n))
    cols = []
    for a in range(dim2):
        e = [0] * dim2
        e[a] = 1
        cols.append(differential2(g0, Cochain2.from_vector(n, r, e)).to_vector())
    return Matrix.from_columns(cols, rows3) if cols else Matrix.zeros(rows3, 0)


def _cochain_map_matrix(n: int, r: int, fn) -> Matrix:
    dim2 = r * len(_pairs(n))
    cols = []
    for a in range(dim2):
        e = [0] * dim2
        e[a] = 1
        cols.append(fn(Cochain2.from_vector(n, r, e)).to_vector())
    return Matrix.from_columns(cols, dim2) if cols else Matrix.zeros(0)


# -- cohomology ------------------------------------------------------------


@dataclass(frozen=True)
class CohomologySpace:
    """``H^2(g0, R)`` for trivial coefficients ``R = Q^r``.

    Class representatives are normalised: reduced modulo the RREF of ``B^2``
    and then put in RREF themselves, so every class has one canonical
    representative (:meth:`normalize`).
    """

    base_dim: int
    fiber_dim: int
    cocycles: Subspace  # Z^2, in cochain coordinates
    coboundaries: Subspace  # B^2
    classes: Subspace  # normalised representatives, a complement of B^2 in Z^2
    theta_action: Matrix | None = None  # on class coordinates
    d_action: Matrix | None = None

    @property
    def dim(self) -> int:
        return self.classes.dim

    @property
    def cocycle_basis(self) -> list[Cochain2]:
        return [Cochain2.from_vector(self.base_dim, self.fiber_dim, v) for v in self.cocycles.basis]

    @property
    def coboundary_basis(self) -> list[Cochain2]:
        return [Cochain2.from_vector(self.base_dim, self.fiber_dim, v) for v in self.coboundaries.basis]

    @property
    def class_reps(self) -> list[Cochain2]:
        return [Cochain2.from_vector(self.base_dim, self.fiber_dim, v) for v in self.classes.basis]

    def is_cocycle(self, w: Cochain2) -> bool:
        return self.cocycles.contains(w.to_vector())

    def is_coboundary(self, w: Cochain2) -> bool:
        return self.coboundaries.contains(w.to_vector())

    def normalize(self, w: Cochain2) -> Cochain2:
        """Canonical representative of the class of the cocycle ``w``."""
        if not self.is_cocycle(w):
            raise ValueError("cochain is not closed")
        return Cochain2.from_vector(self.base_dim, self.fiber_dim, self.coboundaries.reduce(w.to_vector()))

    def class_coordinates(self, w: Cochain2) -> tuple:
        return self.classes.coordinates(self.normalize(w).to_vector())

    def cohomologous(self, a: Cochain2, b: Cochain2) -> bool:
        return self.is_cocycle(a) and self.is_cocycle(b) and self.is_coboundary(a - b)

    def induced(self, fn) -> Matrix:
        """Matrix on class coordinates of a cochain map that preserves ``Z^2`` and ``B^2``."""
        n, r = self.base_dim, self.fiber_dim
        for v in self.coboundaries.basis:
            if not self.coboundaries.contains(fn(Cochain2.from_vector(n, r, v)).to_vector()):
                raise ArithmeticError("cochain map does not preserve coboundaries")
        cols = []
        for v in self.classes.basis:
            img = fn(Cochain2.from_vector(n, r, v))
            cols.append(self.class_coordinates(img))
        return Matrix.from_columns(cols, self.dim) if cols else Matrix.zeros(0)


def cohomology2(g0: LieAlgebra, fiber_dim: int, theta: Matrix | None = None,
                d: Matrix | None = None) -> CohomologySpace:
    """``Z^2``, ``B^2`` and normalised class representatives; optionally the induced ``theta``/``D`` actions."""
    n, r = g0.dim, fiber_dim
    dim2 = r * len(_pairs(n))
    if dim2 == 0:
        z = Subspace.zero(0)
        empty = Matrix.zeros(0)
        return CohomologySpace(n, r, z, z, z, empty if theta is not None else None, empty if d is not None else None)
    Z = d2_matrix(g0, r).kernel()
    B = d1_matrix(g0, r).image()
    reps = Subspace.from_vectors([B.reduce(v) for v in Z.basis], dim2)
    H = CohomologySpace(n, r, Z, B, reps)
    th_act = H.induced(lambda w: w.pullback(theta)) if theta is not None else None
    d_act = H.induced(lambda w: w.derivation_action(d)) if d is not None else None
    return CohomologySpace(n, r, Z, B, reps, th_act, d_act)


def restricted_classes(t0: ExtrinsicTriple, fiber_dim: int, H: "CohomologySpace | None" = None) -> list[Cochain2]:
    """Basis of ``{a in H^2 : theta* a = -a, D a = 0}`` as normalised representatives.

    Because ``theta`` is an automorphism and ``D`` a derivation, both actions
    preserve ``B^2``; :meth:`CohomologySpace.induced` checks this.
    """
    if H is None:
        H = cohomology2(t0.algebra, fiber_dim, t0.theta, t0.d)
    if H.dim == 0:
        return []
    k = H.dim
    rows = [list(r) for r in (H.theta_action + Matrix.identity(k)).rows] + [list(r) for r in H.d_action.rows]
    sol = Matrix(rows).kernel()
    out = []
    for c in sol.basis:
        v = [Fraction(0)] * len(H.classes.basis[0])
        for a, b in zip(c, H.classes.basis):
            if a:
                v = [x + a * y for x, y in zip(v, b)]
        out.append(Cochain2.from_vector(H.base_dim, fiber_dim, v))
    return out


def cocycle_conditions(t0: ExtrinsicTriple, w: Cochain2) -> Report:
    """``d omega = 0``, ``theta* omega = -omega`` and ``D omega = 0``, each as its own row."""
    rep = Report("cocycle conditions")
    ok_dim = w.base_dim == t0.dim
    rep.add("cochain dimension matches", ok_dim, None, "" if ok_dim else f"{w.base_dim} != {t0.dim}")
    if not ok_dim:
        return rep
    rep.add("d omega = 0", differential2(t0.algebra, w).is_zero())
    rep.add("theta* omega = -omega", (w.pullback(t0.theta) + w).is_zero())
    rep.add("D omega = 0", w.derivation_action(t0.d).is_zero())
    return rep


# -- extensions ------------------------------------------------------------


def _fiber_labels(base: Sequence[str], r: int, given: Sequence[str] | None) -> list[str]:
    if given is not None:
        if len(given) != r:
            raise ValueError(f"{len(given)} fiber labels for fiber dimension {r}")
        labels = list(given)
    else:
        labels, k = [], 1
        while len(labels) < r:
            if f"z{k}" not in base:
                labels.append(f"z{k}")
            k += 1
    if set(labels) & set(base) or len(set(labels)) != len(labels):
        raise ValueError("fiber labels clash with each other or with the base labels")
    return labels


def central_extension(t0: ExtrinsicTriple, w: Cochain2, fiber_labels: Sequence[str] | None = None,
                      name: str = "") -> ExtrinsicTriple:
    """The weak triple on ``g0 + R`` with bracket ``[x, y]_0 + omega(x, y)``.

    The form is ``<,>_0 + 0``, ``D`` is extended by zero and ``theta`` by
    ``-Id`` on ``R``.  Every failed precondition is listed in the raised
    :class:`ExtensionError`.
    """
    pre = Report("central extension preconditions")
    pre.extend(validate(t0), prefix="base: ")
    pre.extend(cocycle_conditions(t0, w))
    if not pre.ok:
        raise ExtensionError(pre)
    n, r = t0.dim, w.fiber_dim
    N = n + r
    c = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            row = c[i][j]
            for k, a in enumerate(t0.algebra.c[i][j]):
                row[k] = a
            for f, m in enumerate(w.coeffs):
                row[n + f] = m[i, j]
    labels = list(t0.labels) + _fiber_labels(t0.labels, r, fiber_labels)
    g = LieAlgebra(N, c, labels)

    def block(m: Matrix, fill) -> Matrix:
        rows = [list(row) + [0] * r for row in m.rows]
        rows += [[0] * n + [fill if a == b else 0 for b in range(r)] for a in range(r)]
        return Matrix(rows)

    t = ExtrinsicTriple(g, InnerProduct(block(t0.form.gram, 0)), block(t0.theta, -1), block(t0.d, 0),
                        name or (f"{t0.name}+omega" if t0.name else ""))
    rep = validate(t)
    if not rep.ok:  # cannot happen when the preconditions hold
        raise InvalidTripleError(rep)
    return t


def fiber_inclusion(n: int, r: int) -> Matrix:
    """``R -> g0 + R``."""
    return Matrix([[1 if i == n + f else 0 for f in range(r)] for i in range(n + r)])


def invariant_complement(t: ExtrinsicTriple, R: Subspace) -> Subspace:
    """A ``theta``- and ``D``-invariant complement of ``R`` (assumed inside ``g-+``).

    It is ``g+ + g-- + K`` where ``K`` consists of the ``g-+`` basis vectors
    reduced modulo ``R``.
    """
    dec = t.decomposition
    K = Subspace.from_vectors([R.reduce(b) for b in dec.g_mp.basis], t.dim)
    return dec.g_plus + dec.g_mm + K


@dataclass(frozen=True)
class CocycleExtraction:
    """Quotient triple, cocycle, and the maps relating them to the original triple."""

    quotient: ExtrinsicTriple
    cocycle: Cochain2
    section: Matrix  # g0 -> g
    projection: Matrix  # g -> g0
    ideal: Subspace  # the metric radical R

    @cached_property
    def canonical_map(self) -> Matrix:
        """``g0 + R -> g``, ``(x, z) -> s(x) + z`` with ``z`` in the RREF basis of ``R``."""
        cols = list(self.section.columns()) + list(self.ideal.basis)
        return Matrix.from_columns(cols, self.ideal.ambient_dim)

    def rebuild(self, fiber_labels: Sequence[str] | None = None) -> ExtrinsicTriple:
        return central_extension(self.quotient, self.cocycle, fiber_labels)


def extract_cocycle(t: ExtrinsicTriple, complement: Subspace | None = None) -> CocycleExtraction:
    """Split a weak triple into ``g/R`` and ``omega(X, Y) = [sX, sY] - s[X, Y]``.

    ``s`` is the section onto ``complement``; by default the
    ``theta``/``D``-invariant complement, for which ``omega`` satisfies the
    cocycle conditions exactly.  Other complements change ``omega`` by a
    coboundary.
    """
    L, B = t.algebra, t.form
    R = metric_radical(L, B)
    if not R.issubspace(centre(L)):
        raise ValueError("the metric radical is not central, so this is not a valid weak triple")
    if not R.issubspace(t.decomposition.g_mp):
        raise ValueError("the metric radical is not contained in g-+")
    if complement is None:
        complement = invariant_complement(t, R)
    q = quotient_by_central_ideal(L, B, R, complement)
    P, S = q.projection, q.section
    theta0 = P @ t.theta @ S if q.algebra.dim else Matrix.zeros(0)
    d0 = P @ t.d @ S if q.algebra.dim else Matrix.zeros(0)
    t0 = ExtrinsicTriple(q.algebra, q.form, theta0, d0, f"{t.name}/R" if t.name else "")
    m, r = q.algebra.dim, R.dim
    values = {}
    for i, j in _pairs(m):
        x, y = S.column(i), S.column(j)
        lhs = bracket(L, x, y)
        rhs = S.apply(q.algebra.c[i][j])
        values[(i, j)] = q.ideal_coordinates(tuple(a - b for a, b in zip(lhs, rhs)))
    w = Cochain2.from_values(m, r, values)
    return CocycleExtraction(t0, w, S, P, R)


def is_full_extension(t0: ExtrinsicTriple, w: Cochain2) -> bool:
    """``g0`` full and ``omega(g0, g0) = R``."""
    pre = cocycle_conditions(t0, w)
    if not pre.ok:
        raise ExtensionError(pre)
    return is_full(t0).full and w.value_span().is_full()
