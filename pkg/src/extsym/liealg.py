"""Lie algebras given by rational structure constants, and inner products on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import (
    Matrix,
    Subspace,
    as_scalar,
    format_scalar,
    unit_vector,
    vector,
    vlincomb,
    zero_vector,
)
from .report import Report


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional algebra with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Antisymmetry of ``c`` is enforced on construction; the Jacobi identity is
    not (use :func:`check_jacobi`).
    """

    dim: int
    basis_labels: tuple
    c: tuple = field(repr=False)

    def __init__(self, dim: int, c=None, basis_labels: Sequence[str] | None = None):
        if basis_labels is None:
            basis_labels = [f"e{i + 1}" for i in range(dim)]
        if len(basis_labels) != dim:
            raise DimensionError(f"{len(basis_labels)} labels for dimension {dim}")
        if c is None:
            c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        tensor = tuple(tuple(vector(c[i][j]) for j in range(dim)) for i in range(dim))
        for i in range(dim):
            if len(c[i]) != dim or any(len(c[i][j]) != dim for j in range(dim)):
                raise DimensionError("structure tensor has the wrong shape")
            for j in range(i, dim):
                if any(a + b for a, b in zip(tensor[i][j], tensor[j][i])):
                    raise ValueError(f"structure constants are not antisymmetric at ({i}, {j})")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_labels", tuple(basis_labels))
        object.__setattr__(self, "c", tensor)

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: dict) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` or ``{("X", "Y"): {"Z": coeff}}``; missing pairs are zero."""
        n = len(labels)
        index = {lab: i for i, lab in enumerate(labels)}

        def idx(a):
            return index[a] if isinstance(a, str) else a

        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (a, b), out in brackets.items():
            i, j = idx(a), idx(b)
            for k, coeff in out.items():
                v = as_scalar(coeff)
                c[i][j][idx(k)] += v
                c[j][i][idx(k)] -= v
        return cls(n, c, labels)

    @classmethod
    def abelian(cls, dim: int, labels: Sequence[str] | None = None) -> "LieAlgebra":
        return cls(dim, None, labels)

    @cached_property
    def nonzero(self) -> tuple:
        """Sparse view ``((i, j, k, c), ...)`` of the structure tensor."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, a in enumerate(self.c[i][j]):
                    if a:
                        out.append((i, j, k, a))
        return tuple(out)

    def basis_vector(self, i: int | str) -> tuple:
        if isinstance(i, str):
            i = self.basis_labels.index(i)
        return unit_vector(self.dim, i)

    def vec(self, **coeffs) -> tuple:
        """Vector from label keyword arguments, e.g. ``L.vec(X=Fraction(1, 2))``."""
        v = [Fraction(0)] * self.dim
        for lab, a in coeffs.items():
            v[self.basis_labels.index(lab)] += as_scalar(a)
        return tuple(v)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return bracket(self, x, y)

    def ad(self, x: Sequence) -> Matrix:
        return adjoint(self, x)

    def format_vector(self, v: Sequence) -> str:
        return format_vector(v, self.basis_labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.c == other.c and self.basis_labels == other.basis_labels

    def __hash__(self) -> int:
        return hash((self.basis_labels, self.c))


@dataclass(frozen=True)
class InnerProduct:
    """Symmetric, possibly degenerate, bilinear form given by its Gram matrix."""

    gram: Matrix

    def __post_init__(self):
        if not isinstance(self.gram, Matrix):
            object.__setattr__(self, "gram", Matrix(self.gram))
        n, m = self.gram.shape
        if n != m:
            raise DimensionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.gram[i, j] != self.gram[j, i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({j + 1}, {i + 1})")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((a * self.gram.rows[i][j] * y[j] for i, a in enumerate(x) if a for j in range(len(y)) if y[j]),
                   Fraction(0))

    def is_nondegenerate(self) -> bool:
        return self.gram.is_invertible()


def format_vector(v: Sequence, labels: Sequence[str]) -> str:
    terms = []
    for a, lab in zip(v, labels):
        if not a:
            continue
        a = Fraction(a)
        if a == 1:
            terms.append(lab)
        elif a == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{format_scalar(a)}*{lab}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


# -- operations ------------------------------------------------------------


def _check_len(L: LieAlgebra, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != L.dim:
            raise DimensionError(f"vector of length {len(v)} in a Lie algebra of dimension {L.dim}")


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    _check_len(L, x, y)
    out = [Fraction(0)] * L.dim
    for i, j, k, a in L.nonzero:
        xi = x[i]
        if xi:
            yj = y[j]
            if yj:
                out[k] += xi * yj * a
    return tuple(out)


def adjoint(L: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad x``: column ``j`` is ``[x, e_j]``."""
    _check_len(L, x)
    m = [[Fraction(0)] * L.dim for _ in range(L.dim)]
    for i, j, k, a in L.nonzero:
        if x[i]:
            m[k][j] += x[i] * a
    return Matrix(m)


def check_jacobi(L: LieAlgebra) -> Report:
    """Evaluate the cyclic sum on every basis triple ``i < j < k``."""
    rep = Report("Jacobi identity")
    n = L.dim
    bad = []
    for i, j, k in itertools.combinations(range(n), 3):
        ei, ej, ek = (unit_vector(n, t) for t in (i, j, k))
        w = [Fraction(0)] * n
        for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            t = bracket(L, bracket(L, a, b), c)
            for m, val in enumerate(t):
                w[m] += val
        if any(w):
            bad.append(((i, j, k), tuple(w)))
    detail = ""
    if bad:
        (i, j, k), w = bad[0]
        lab = L.basis_labels
        detail = f"{len(bad)} violation(s); first at ({lab[i]}, {lab[j]}, {lab[k]}) -> {format_vector(w, lab)}"
    rep.add("jacobi", not bad, bad, detail)
    return rep


def jacobi_violations(L: LieAlgebra) -> list:
    return check_jacobi(L)["jacobi"].witness


def check_invariance(L: LieAlgebra, B: InnerProduct) -> Report:
    """``<[e_i, e_j], e_k> + <e_j, [e_i, e_k]> = 0`` for all basis triples."""
    rep = Report("ad-invariance of the inner product")
    n = L.dim
    if B.dim != n:
        raise DimensionError("inner product and algebra dimensions differ")
    ads = [adjoint(L, unit_vector(n, i)) for i in range(n)]
    G = B.gram
    bad = []
    for i in range(n):
        # G @ ad_i + (G @ ad_i)^T must vanish
        M = G @ ads[i]
        for j in range(n):
            for k in range(n):
                val = M[k, j] + M[j, k]
                if val:
                    bad.append(((i, j, k), val))
    detail = ""
    if bad:
        (i, j, k), val = bad[0]
        lab = L.basis_labels
        detail = f"<[{lab[i]},{lab[j]}],{lab[k]}> + <{lab[j]},[{lab[i]},{lab[k]}]> = {format_scalar(val)}"
    rep.add("invariance", not bad, bad, detail)
    return rep


def killing_form(L: LieAlgebra) -> InnerProduct:
    n = L.dim
    ads = [adjoint(L, unit_vector(n, i)) for i in range(n)]
    return InnerProduct(Matrix([[(ads[i] @ ads[j]).trace() for j in range(n)] for i in range(n)]))


def metric_radical(L: LieAlgebra, B: InnerProduct) -> Subspace:
    return B.gram.kernel()


def centre(L: LieAlgebra) -> Subspace:
    """``{x : ad x = 0}``, the kernel of ``x -> ([x, e_j])_j``."""
    n = L.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([L.c[i][j][k] for i in range(n)])
    return Subspace.from_vectors(Matrix(rows).kernel().basis, n) if n else Subspace.zero(0)


def span_of_brackets(L: LieAlgebra, U: Subspace, W: Subspace) -> Subspace:
    return Subspace.from_vectors([bracket(L, u, w) for u in U.basis for w in W.basis], L.dim)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return span_of_brackets(L, S, Subspace.full(L.dim)).issubspace(S)


@dataclass(frozen=True)
class Quotient:
    """Result of :func:`quotient_by_central_ideal`.

    ``projection`` is ``dim g0 x dim g``; ``section`` is ``dim g x dim g0``
    and satisfies ``projection @ section = Id``.
    """

    algebra: LieAlgebra
    form: InnerProduct
    projection: Matrix
    section: Matrix
    ideal: Subspace
    complement: Subspace

    def ideal_coordinates(self, v: Sequence) -> tuple:
        """Coordinates in the ideal's basis of ``v - section(projection(v))``."""
        w = tuple(a - b for a, b in zip(v, self.section.apply(self.projection.apply(v))))
        return self.ideal.coordinates(w)


def quotient_by_central_ideal(
    L: LieAlgebra, B: InnerProduct, R: Subspace, complement: Subspace | None = None
) -> Quotient:
    """Quotient ``g / R`` realised on a complement of ``R``.

    By default the complement is spanned by the standard basis vectors at the
    non-pivot positions of ``R``'s RREF.  A different complement can be passed
    explicitly.  Quotient basis vectors that are standard basis vectors of
    ``g`` keep their labels; the others are called ``q1, q2, ...``.
    """
    n = L.dim
    if not R.issubspace(centre(L)):
        raise ValueError("ideal is not central")
    if not R.issubspace(metric_radical(L, B)):
        raise ValueError("ideal is not contained in the metric radical")
    if complement is None:
        complement = R.coordinate_complement()
    elif complement.dim + R.dim != n or not (complement + R).is_full():
        raise ValueError("complement does not complement the ideal")
    labels = []
    for i, b in enumerate(complement.basis):
        support = [j for j, a in enumerate(b) if a]
        labels.append(L.basis_labels[support[0]] if len(support) == 1 and b[support[0]] == 1 else f"q{i + 1}")
    m = complement.dim
    # change of basis to (complement, R)
    P = Matrix.from_columns(list(complement.basis) + list(R.basis), n) if n else Matrix.zeros(0)
    Pinv = P.inverse() if n else P
    projection = Matrix(Pinv.rows[:m]) if m else Matrix.zeros(0, n)
    section = Matrix.from_columns(list(complement.basis), n) if m else Matrix.zeros(n, 0)
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            c[a][b] = list(projection.apply(bracket(L, section.column(a), section.column(b))))
    Q = LieAlgebra(m, c, labels)
    form = InnerProduct(section.T @ B.gram @ section) if m else InnerProduct(Matrix.zeros(0))
    return Quotient(Q, form, projection, section, R, complement)


def direct_sum_vector(*parts: Sequence) -> tuple:
    out: list = []
    for p in parts:
        out.extend(p)
    return tuple(out)


def random_vector(rng, n: int, lo: int = -5, hi: int = 5, den: int = 3) -> tuple:
    """Random rational vector with small numerators/denominators."""
    return tuple(Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(n))


def random_element(rng, S: Subspace, **kw) -> tuple:
    if not S.basis:
        return zero_vector(S.ambient_dim)
    return vlincomb(random_vector(rng, S.dim, **kw), S.basis, S.ambient_dim)
