"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Vectors are plain
tuples of Fractions; :class:`Matrix` is an immutable row-major matrix that
acts on column vectors, so column ``j`` holds the image of the ``j``-th basis
vector.  :class:`Subspace` stores a basis in reduced row-echelon form, which
makes subspace equality the same thing as representation equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

__all__ = [
    "Scalar",
    "Vector",
    "Matrix",
    "Subspace",
    "LinearMap",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
    "vector",
    "zero_vector",
    "unit_vector",
    "vadd",
    "vsub",
    "vscale",
    "vneg",
    "vdot",
    "vlincomb",
    "is_zero_vector",
    "rref",
]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic; use Fraction or str")
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal into a Fraction."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        n, d = int(num), int(den)
        if d <= 0:
            raise ValueError(f"denominator must be a positive integer: {text!r}")
        return Fraction(n, d)
    return Fraction(int(s))


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- vectors ---------------------------------------------------------------


def vector(values: Iterable) -> tuple:
    return tuple(as_scalar(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> tuple:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> tuple:
    c = as_scalar(c)
    return tuple(c * a for a in x)


def vneg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def vdot(x: Sequence, y: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), Fraction(0))


def vlincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> tuple:
    """Return ``sum(c * v)``; ``n`` is required when ``vectors`` may be empty."""
    if n is None:
        n = len(vectors[0])
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(out)


def is_zero_vector(x: Sequence) -> bool:
    return not any(x)


# -- row reduction ---------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form of ``rows``.

    Returns the nonzero rows of the RREF and the list of pivot columns.
    """
    m = [[as_scalar(a) for a in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for col in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        if lead != 1:
            inv = 1 / lead
            m[r] = [a * inv for a in m[r]]
        prow = m[r]
        nz = [j for j in range(col, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][col]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(col)
        r += 1
    return m[:r], pivots


# -- matrices --------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix acting on column vectors."""

    rows: tuple
    width: int  # kept explicitly so that 0 x n matrices remember n

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        object.__setattr__(self, "rows", tuple(tuple(as_scalar(a) for a in r) for r in rows))
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        width = widths.pop() if widths else (ncols or 0)
        if ncols is not None and width != ncols:
            raise ValueError(f"rows have length {width}, expected {ncols}")
        object.__setattr__(self, "width", width)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "Matrix":
        n = m if n is None else n
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls([[] for _ in range(nrows or 0)], 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)], len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.width

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.width

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows)) if self.rows and self.ncols else Matrix.zeros(self.ncols, self.nrows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError(f"dimension mismatch: matrix has {self.ncols} columns, vector {len(v)}")
        return tuple(vdot(r, v) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.T.rows
            return Matrix([[vdot(r, c) for c in cols] for r in self.rows], other.ncols)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Matrix":
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def kernel(self) -> "Subspace":
        """Null space ``{v : M v = 0}``."""
        return Subspace.from_vectors(_nullspace(self.rows, self.ncols), self.ncols)

    def image(self) -> "Subspace":
        """Column space."""
        return Subspace.from_vectors(self.columns(), self.nrows)

    def inverse(self) -> "Matrix":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ValueError("matrix is singular")
        return Matrix([r[n:] for r in red])

    def is_invertible(self) -> bool:
        n, m = self.shape
        return n == m and self.rank() == n

    def solve(self, b: Sequence) -> tuple | None:
        """One solution of ``M x = b`` (free variables set to zero), or None."""
        return solve_linear(self.rows, b, self.ncols)

    def restrict(self, domain: "Subspace", target: "Subspace") -> "Matrix":
        """Matrix of this map from ``domain`` into ``target`` in their stored bases."""
        cols = [target.coordinates(self.apply(b)) for b in domain.basis]
        return Matrix.from_columns(cols, target.dim) if cols else Matrix.zeros(target.dim, 0)

    def to_float(self):
        import numpy as np

        return np.array([[float(a) for a in r] for r in self.rows], dtype=float)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(a) for a in r) for r in self.rows)
        return f"Matrix([{body}])"


LinearMap = Matrix


def _nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    red, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def solve_linear(rows: Sequence[Sequence], b: Sequence, ncols: int) -> tuple | None:
    aug = [list(r) + [as_scalar(bi)] for r, bi in zip(rows, b)]
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return tuple(x)


# -- subspaces -------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n stored by the RREF of a spanning set."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, piv = rref(vecs, ambient_dim) if vecs else ([], [])
        return cls(ambient_dim, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.from_vectors([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls.from_vectors([unit_vector(n, i) for i in sorted(indices)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        return is_zero_vector(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def reduce(self, v: Sequence) -> tuple:
        """Subtract the combination of basis rows that clears the pivot entries."""
        w = list(vector(v))
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                for j, a in enumerate(row):
                    if a:
                        w[j] -= c * a
        return tuple(w)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the stored basis; raises if ``v`` is not in the subspace."""
        v = vector(v)
        coords = tuple(v[p] for p in self.pivots)
        if vlincomb(coords, self.basis, self.ambient_dim) != v:
            raise ValueError("vector does not lie in the subspace")
        return coords

    def from_coordinates(self, coords: Sequence) -> tuple:
        return vlincomb(vector(coords), self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        # solve sum a_i u_i = sum b_j w_j
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        cols = list(self.basis) + [vneg(w) for w in other.basis]
        rel = Matrix.from_columns(cols).kernel()
        k = self.dim
        vecs = [vlincomb(r[:k], self.basis, self.ambient_dim) for r in rel.basis]
        return Subspace.from_vectors(vecs, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def coordinate_complement(self) -> "Subspace":
        """Span of the standard basis vectors at non-pivot positions."""
        piv = set(self.pivots)
        return Subspace.coordinate(self.ambient_dim, [j for j in range(self.ambient_dim) if j not in piv])

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.from_vectors([m.apply(b) for b in self.basis], m.nrows)

    def orthogonal(self, gram: Matrix) -> "Subspace":
        """``{x : <x, b> = 0 for all b}`` with respect to ``gram``."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        rows = [gram.apply(b) for b in self.basis]
        return Matrix(rows).kernel()

    def gram(self, gram: Matrix) -> Matrix:
        """Gram matrix of the stored basis."""
        gb = [gram.apply(b) for b in self.basis]
        return Matrix([[vdot(u, w) for w in gb] for u in self.basis])

    def __repr__(self) -> str:
        rows = ", ".join("(" + " ".join(format_scalar(a) for a in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}, [{rows}])"
