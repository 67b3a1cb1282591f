"""The extrinsic symmetric space ``M = G+(0)`` inside ``g-`` and its geometry.

Points of ``g-`` are written in *g- coordinates*: coordinates with respect to
the RREF basis of ``g-`` stored in the triple's decomposition.  Geometric
quantities (second fundamental form, shape operator, curvature, mean
curvature) take and return vectors in the coordinates of ``g`` itself.

Orbit points are produced from *words* ``[(a1, t1), (a2, t2), ...]`` meaning
``exp(t1 phi(X_a1)) exp(t2 phi(X_a2)) ... (0)``, where ``X_a`` runs over a
basis of ``g+`` (the RREF basis unless generators are given explicitly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .expm import TOLERANCE, expm_certified, expm_nilpotent, nilpotency_index
from .liealg import InnerProduct, adjoint, bracket
from .linalg import Matrix, Subspace, format_scalar, vector, vneg, vscale, zero_vector
from .report import Report
from .triples import ExtrinsicTriple, tau_D

# -- isometries ------------------------------------------------------------


@dataclass(frozen=True)
class InfinitesimalIsometry:
    """Element ``(A, v)`` of ``so(g-) + g-`` acting by ``x -> A x + v``."""

    linear: Matrix
    translation: tuple

    def homogeneous(self) -> Matrix:
        n = self.linear.nrows
        rows = [list(r) + [self.translation[i]] for i, r in enumerate(self.linear.rows)]
        rows.append([0] * (n + 1))
        return Matrix(rows)

    def bracket(self, other: "InfinitesimalIsometry") -> "InfinitesimalIsometry":
        A, a = self.linear, self.translation
        B, b = other.linear, other.translation
        lin = A @ B - B @ A
        tr = tuple(x - y for x, y in zip(A.apply(b), B.apply(a)))
        return InfinitesimalIsometry(lin, tr)

    def scaled(self, s) -> "InfinitesimalIsometry":
        return InfinitesimalIsometry(self.linear * s, vscale(s, self.translation))


@dataclass(frozen=True)
class AffineIsometry:
    """``x -> linear x + translation``.

    Exact isometries hold a :class:`Matrix` and a tuple of Fractions;
    approximate ones hold float64 numpy arrays and record their tolerance.
    """

    linear: object
    translation: object
    exact: bool = True
    tolerance: float = 0.0

    @classmethod
    def identity(cls, n: int) -> "AffineIsometry":
        return cls(Matrix.identity(n), zero_vector(n))

    @property
    def dim(self) -> int:
        return len(self.translation)

    def as_float(self) -> "AffineIsometry":
        if not self.exact:
            return self
        return AffineIsometry(
            self.linear.to_float() if self.dim else np.zeros((0, 0)),
            np.array([float(a) for a in self.translation], dtype=float),
            False,
            0.0,
        )

    def __call__(self, x):
        if self.exact and _is_exact(x):
            return tuple(a + b for a, b in zip(self.linear.apply(x), self.translation))
        f = self.as_float()
        return f.linear @ np.asarray([float(a) for a in x], dtype=float) + f.translation

    def __matmul__(self, other: "AffineIsometry") -> "AffineIsometry":
        """Composition ``self o other``."""
        if self.exact and other.exact:
            lin = self.linear @ other.linear
            tr = tuple(a + b for a, b in zip(self.linear.apply(other.translation), self.translation))
            return AffineIsometry(lin, tr)
        a, b = self.as_float(), other.as_float()
        return AffineIsometry(a.linear @ b.linear, a.linear @ b.translation + a.translation, False,
                              a.tolerance + b.tolerance)

    def inverse(self) -> "AffineIsometry":
        if self.exact:
            inv = self.linear.inverse()
            return AffineIsometry(inv, vneg(inv.apply(self.translation)))
        inv = np.linalg.inv(self.linear)
        return AffineIsometry(inv, -inv @ self.translation, False, self.tolerance)

    def linear_float(self) -> np.ndarray:
        return self.as_float().linear

    def translation_float(self) -> np.ndarray:
        return self.as_float().translation


def _is_exact(x) -> bool:
    return all(isinstance(a, (Fraction, int)) for a in x)


def _is_exact_scalar(s) -> bool:
    return isinstance(s, (Fraction, int)) and not isinstance(s, bool)


# -- coordinates on g- -----------------------------------------------------


def minus_space(t: ExtrinsicTriple) -> Subspace:
    return t.decomposition.g_minus


def to_minus(t: ExtrinsicTriple, v: Sequence) -> tuple:
    """g- coordinates of a vector of ``g`` lying in ``g-``."""
    return minus_space(t).coordinates(v)


def from_minus(t: ExtrinsicTriple, coords: Sequence) -> tuple:
    return minus_space(t).from_coordinates(coords)


def minus_form(t: ExtrinsicTriple) -> InnerProduct:
    """The restriction of the inner product to ``g-`` in g- coordinates."""
    return InnerProduct(minus_space(t).gram(t.form.gram))


def minus_labels(t: ExtrinsicTriple) -> list[str]:
    """Label of each g- basis vector (its leading basis label when it is a coordinate vector)."""
    S = minus_space(t)
    out = []
    for b, p in zip(S.basis, S.pivots):
        if sum(1 for a in b if a) == 1:
            out.append(t.labels[p])
        else:
            out.append(t.fmt(b))
    return out


def plus_generators(t: ExtrinsicTriple) -> tuple:
    return t.decomposition.g_plus.basis


# -- phi and exp -----------------------------------------------------------


def phi(t: ExtrinsicTriple, X: Sequence) -> InfinitesimalIsometry:
    """``phi(X) = ((ad X)|g-, -D X)`` in g- coordinates."""
    X = vector(X)
    dec = t.decomposition
    if not dec.g_plus.contains(X):
        raise ValueError("phi is only defined on g+")
    S = dec.g_minus
    lin = adjoint(t.algebra, X).restrict(S, S)
    tr = S.coordinates(vneg(t.d.apply(X)))
    return InfinitesimalIsometry(lin, tr)


def exp_isometry(inf: InfinitesimalIsometry, s=1) -> AffineIsometry:
    """``exp(s * inf)`` as an affine map.

    Exact when the homogeneous matrix is nilpotent and ``s`` is rational;
    otherwise float64 with entrywise error below ``1e-12``.
    """
    if isinstance(s, float) and not np.isfinite(s):
        raise ValueError("parameter must be finite")
    if not _is_exact_scalar(s) and not isinstance(s, float):
        s = float(s)
    N = inf.homogeneous()
    n = inf.linear.nrows
    k = nilpotency_index(N)
    if k is not None and _is_exact_scalar(s):
        E = expm_nilpotent(N * Fraction(s), k)
        return AffineIsometry(Matrix([r[:n] for r in E.rows[:n]]), tuple(E[i, n] for i in range(n)))
    if k is not None:
        E = _nilpotent_series_float(N, k, float(s))
        return AffineIsometry(E[:n, :n], E[:n, n], False, 0.0)
    E = expm_certified(N, Fraction(s) if _is_exact_scalar(s) else s)
    return AffineIsometry(E[:n, :n], E[:n, n], False, TOLERANCE)


def _nilpotent_series_float(N: Matrix, k: int, s: float) -> np.ndarray:
    Nf = N.to_float()
    out = np.eye(N.nrows)
    P = np.eye(N.nrows)
    fact = 1.0
    for j in range(1, k):
        P = P @ Nf
        fact *= j
        out = out + (s**j / fact) * P
    return out


# -- orbits ----------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPoint:
    coords: tuple  # g- coordinates, Fractions when exact else floats
    word: tuple  # ((generator index, parameter), ...)
    exact: bool = True

    def as_float(self) -> np.ndarray:
        return np.array([float(a) for a in self.coords], dtype=float)


class OrbitSampler:
    """Evaluates words for one triple, caching ``phi`` of each generator."""

    def __init__(self, t: ExtrinsicTriple, generators: Sequence[Sequence] | None = None):
        self.triple = t
        self.generators = tuple(vector(g) for g in (generators or plus_generators(t)))
        self._phis = [phi(t, g) for g in self.generators]
        self._exps: dict = {}
        self.n = t.decomposition.g_minus.dim

    def exp(self, a: int, s) -> AffineIsometry:
        """``exp(s phi(X_a))``, cached per ``(a, s)``."""
        key = (a, type(s).__name__, s)
        e = self._exps.get(key)
        if e is None:
            e = self._exps[key] = exp_isometry(self._phis[a], s)
        return e

    def element(self, word: Sequence) -> AffineIsometry:
        """The group element ``prod exp(t_a phi(X_a))`` of a word."""
        g = AffineIsometry.identity(self.n)
        for a, s in word:
            g = g @ self.exp(a, s)
        return g

    def point(self, word: Sequence) -> OrbitPoint:
        x = zero_vector(self.n)
        exact = True
        for a, s in reversed(list(word)):
            e = self.exp(a, s)
            x = e(x)
            exact = exact and e.exact
        if exact:
            coords = tuple(x)
        else:
            coords = tuple(float(a) for a in x)
        return OrbitPoint(coords, tuple((a, s) for a, s in word), exact)

    def sample(self, words: Iterable[Sequence]) -> list[OrbitPoint]:
        return [self.point(w) for w in words]


def orbit_sample(t: ExtrinsicTriple, words: Iterable[Sequence], generators=None) -> list[OrbitPoint]:
    return OrbitSampler(t, generators).sample(words)


def evaluate_vector_word(t: ExtrinsicTriple, word: Sequence) -> tuple:
    """Apply ``prod exp(s phi(Y))`` for a word of ``(Y in g+, s)`` pairs to 0."""
    x = zero_vector(t.decomposition.g_minus.dim)
    for Y, s in reversed(list(word)):
        x = exp_isometry(phi(t, Y), s)(x)
    return tuple(x)


DEFAULT_GRID = (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2)
MAX_POINTS = 10_000


def default_words(n_generators: int, grid: Sequence = DEFAULT_GRID, max_word_len: int | None = None,
                  max_points: int = MAX_POINTS) -> list[tuple]:
    """Words using generators ``0..k-1`` in order, every parameter from ``grid``.

    ``k = min(max_word_len, n_generators)``; a zero parameter drops that
    factor, so shorter words are covered too.  At most ``max_points`` words are
    produced, in lexicographic order of the parameter tuple.
    """
    import itertools

    k = n_generators if max_word_len is None else min(max_word_len, n_generators)
    words = []
    for params in itertools.product(grid, repeat=k):
        words.append(tuple((i, p) for i, p in enumerate(params)))
        if len(words) >= max_points:
            break
    return words


# -- tangent and normal spaces ---------------------------------------------


def tangent_space(t: ExtrinsicTriple) -> Subspace:
    """``T_0 M = D(g+) = g--`` (in g coordinates)."""
    dec = t.decomposition
    img = dec.g_plus.image(t.d)
    if img != dec.g_mm:
        raise ValueError("D(g+) differs from g--")
    return dec.g_mm


def normal_space(t: ExtrinsicTriple) -> Subspace:
    """``g- cap (g--)^perp``, which equals ``g-+`` for a valid triple."""
    dec = t.decomposition
    perp = dec.g_mm.orthogonal(t.form.gram) & dec.g_minus
    if perp != dec.g_mp:
        raise ValueError("normal space g- cap (g--)^perp differs from g-+")
    return dec.g_mp


def _require(S: Subspace, v: Sequence, what: str) -> tuple:
    v = vector(v)
    if not S.contains(v):
        raise ValueError(f"argument is not in {what}")
    return v


def second_fundamental_form(t: ExtrinsicTriple, u: Sequence, v: Sequence) -> tuple:
    """``alpha(u, v) = [Du, v]`` for ``u, v`` in ``g--``."""
    mm = t.decomposition.g_mm
    u, v = _require(mm, u, "g--"), _require(mm, v, "g--")
    return bracket(t.algebra, t.d.apply(u), v)


def shape_operator(t: ExtrinsicTriple, eta: Sequence, u: Sequence) -> tuple:
    """``A_eta u = -[Du, eta]`` for ``eta`` in ``g-+`` and ``u`` in ``g--``."""
    dec = t.decomposition
    eta = _require(dec.g_mp, eta, "g-+")
    u = _require(dec.g_mm, u, "g--")
    return vneg(bracket(t.algebra, t.d.apply(u), eta))


def shape_operator_matrix(t: ExtrinsicTriple, eta: Sequence) -> Matrix:
    """Matrix of ``A_eta`` on the stored basis of ``g--``."""
    mm = t.decomposition.g_mm
    cols = [mm.coordinates(shape_operator(t, eta, u)) for u in mm.basis]
    return Matrix.from_columns(cols, mm.dim) if cols else Matrix.zeros(0)


def mean_curvature(t: ExtrinsicTriple) -> tuple:
    """``h = (1/m) sum_ij G^ij alpha(u_i, u_j)`` over the stored basis of ``g--``."""
    mm = t.decomposition.g_mm
    m = mm.dim
    if m == 0:
        return zero_vector(t.dim)
    G = mm.gram(t.form.gram)
    if not G.is_invertible():
        raise ValueError("the tangent space is degenerate")
    Ginv = G.inverse()
    acc = zero_vector(t.dim)
    for i, u in enumerate(mm.basis):
        for j, v in enumerate(mm.basis):
            if Ginv[i, j]:
                acc = tuple(a + Ginv[i, j] * b for a, b in zip(acc, second_fundamental_form(t, u, v)))
    return vscale(Fraction(1, m), acc)


def curvature_tangent(t: ExtrinsicTriple, u, v, w) -> tuple:
    """``R^M(u, v) w = -[[Du, Dv], w]``."""
    mm = t.decomposition.g_mm
    u, v, w = (_require(mm, x, "g--") for x in (u, v, w))
    br = bracket(t.algebra, t.d.apply(u), t.d.apply(v))
    return vneg(bracket(t.algebra, br, w))


def curvature_normal(t: ExtrinsicTriple, u, v, eta) -> tuple:
    """``R^perp(u, v) eta = -[[Du, Dv], eta]``."""
    dec = t.decomposition
    u, v = (_require(dec.g_mm, x, "g--") for x in (u, v))
    eta = _require(dec.g_mp, eta, "g-+")
    br = bracket(t.algebra, t.d.apply(u), t.d.apply(v))
    return vneg(bracket(t.algebra, br, eta))


def image_of_alpha(t: ExtrinsicTriple) -> Subspace:
    mm = t.decomposition.g_mm
    return Subspace.from_vectors(
        [second_fundamental_form(t, u, v) for u in mm.basis for v in mm.basis], t.dim
    )


def is_full_geometric(t: ExtrinsicTriple) -> bool:
    """``im alpha + T_0 M`` fills ``g-``."""
    dec = t.decomposition
    return (image_of_alpha(t) + dec.g_mm) == dec.g_minus


# -- reflections -----------------------------------------------------------


def s0(t: ExtrinsicTriple) -> AffineIsometry:
    """Reflection at the normal space through 0: ``tau_D`` restricted to ``g-``."""
    S = t.decomposition.g_minus
    return AffineIsometry(tau_D(t).restrict(S, S), zero_vector(S.dim))


def reflection(t: ExtrinsicTriple, p: OrbitPoint | None = None, sampler: OrbitSampler | None = None) -> AffineIsometry:
    """``s_x = g s_0 g^-1`` where ``x = g(0)`` is given by the word of ``p``."""
    base = s0(t)
    if p is None or not p.word:
        return base
    sampler = sampler or OrbitSampler(t)
    g = sampler.element(p.word)
    return g @ base @ g.inverse()


def transform_word(t: ExtrinsicTriple, sampler: OrbitSampler, word: Sequence) -> list:
    tau = tau_D(t)
    return [(tau.apply(sampler.generators[a]), s) for a, s in word]


def check_extrinsic_symmetry(t: ExtrinsicTriple, sample: Sequence[OrbitPoint] = (),
                             sampler: OrbitSampler | None = None, tol: float = 1e-9) -> Report:
    rep = Report("extrinsic symmetry")
    dec = t.decomposition
    sref = s0(t)
    S = sref.linear
    tau = tau_D(t)
    ok = True
    for X in dec.g_plus.basis:
        a, b = phi(t, X), phi(t, tau.apply(X))
        # s0 (A x + v) = A' s0 x + v'
        ok &= (S @ a.linear == b.linear @ S) and (S.apply(a.translation) == b.translation)
    rep.add("tau_D phi(X) = phi(tau_D X) tau_D", ok)
    sampler = sampler or OrbitSampler(t)
    worst = 0.0
    all_exact = True
    for p in sample:
        lhs = sref(p.coords)
        moved = evaluate_vector_word(t, transform_word(t, sampler, p.word))
        if p.exact and _is_exact(moved) and _is_exact(lhs):
            if tuple(lhs) != tuple(moved):
                all_exact = False
                worst = max(worst, float("inf"))
        else:
            d = np.max(np.abs(np.asarray([float(x) for x in lhs]) - np.asarray([float(x) for x in moved])),
                       initial=0.0)
            worst = max(worst, float(d))
    rep.add("s0(x) = orbit point of the tau_D-transformed word", all_exact and worst <= tol, worst,
            f"max deviation {worst:.3e} over {len(sample)} points")
    return rep


# -- embeddings into non-degenerate spaces ----------------------------------


@dataclass(frozen=True)
class Embedding:
    ambient: InnerProduct
    injection: Matrix  # ambient_dim x dim


def embed_nondegenerate(V: InnerProduct) -> Embedding:
    """Add one hyperbolic partner per radical basis vector.

    The partner ``p_i`` of the radical vector ``r_i`` pairs to 1 with every
    vector whose coordinate at ``r_i``'s pivot is 1, and is null.
    """
    n = V.dim
    R = V.gram.kernel()
    k = R.dim
    N = n + k
    G = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            G[i][j] = V.gram[i, j]
    for i, p in enumerate(R.pivots):
        G[p][n + i] = G[n + i][p] = Fraction(1)
    ambient = InnerProduct(Matrix(G))
    if not ambient.is_nondegenerate():
        raise ArithmeticError("extended form is degenerate")
    inj = Matrix([[1 if i == j else 0 for j in range(n)] for i in range(N)])
    return Embedding(ambient, inj)


def signature(form: InnerProduct) -> tuple[int, int, int]:
    """``(negative, positive, zero)`` counts of the form's eigenvalues."""
    if form.dim == 0:
        return (0, 0, 0)
    rank = form.gram.rank()
    ev = np.linalg.eigvalsh(form.gram.to_float())
    neg = int(np.sum(ev < 0))
    pos = rank - neg
    return (neg, pos, form.dim - rank)


def orthogonal_reflection(form: InnerProduct, point: Sequence, tangent: Sequence[Sequence]) -> AffineIsometry:
    """Affine map fixing ``point`` with differential ``-Id`` on ``span(tangent)`` and ``+Id`` on its orthogonal.

    Requires ``span(tangent)`` to be non-degenerate.
    """
    G = form.gram
    n = G.nrows
    if not tangent:
        return AffineIsometry.identity(n)
    if _is_exact(point) and all(_is_exact(v) for v in tangent):
        T = Matrix.from_columns([vector(v) for v in tangent])
        gt = T.T @ G @ T
        P = T @ gt.inverse() @ T.T @ G
        S = Matrix.identity(n) - 2 * P
        x = vector(point)
        tr = tuple(a - b for a, b in zip(x, S.apply(x)))
        return AffineIsometry(S, tr)
    Gf = G.to_float()
    T = np.array([[float(a) for a in v] for v in tangent], dtype=float).T
    P = T @ np.linalg.inv(T.T @ Gf @ T) @ T.T @ Gf
    S = np.eye(n) - 2 * P
    x = np.array([float(a) for a in point], dtype=float)
    return AffineIsometry(S, x - S @ x, False, TOLERANCE)


def tangent_at(t: ExtrinsicTriple, sampler: OrbitSampler, word: Sequence) -> list:
    """Tangent vectors at ``g(0)`` in g- coordinates: the linear part of ``g`` applied to ``g--``."""
    g = sampler.element(word)
    mm = t.decomposition.g_mm
    vs = [to_minus(t, u) for u in mm.basis]
    if g.exact:
        return [g.linear.apply(v) for v in vs]
    return [tuple(g.linear @ np.array([float(a) for a in v])) for v in vs]


def embedded_reflection(t: ExtrinsicTriple, emb: Embedding, p: OrbitPoint,
                        sampler: OrbitSampler | None = None) -> AffineIsometry:
    """Reflection of the ambient space of ``emb`` at the normal space of ``M`` through ``p``."""
    sampler = sampler or OrbitSampler(t)
    tang = tangent_at(t, sampler, p.word)
    inj = emb.injection
    if p.exact and all(_is_exact(v) for v in tang):
        pts = inj.apply(p.coords)
        tv = [inj.apply(v) for v in tang]
    else:
        J = inj.to_float()
        pts = tuple(J @ np.asarray([float(a) for a in p.coords]))
        tv = [tuple(J @ np.asarray([float(a) for a in v])) for v in tang]
    return orthogonal_reflection(emb.ambient, pts, tv)


def format_coordinate(a) -> str:
    """Exact ``p/q`` for Fractions, 17 significant digits for floats."""
    if isinstance(a, Fraction):
        return format_scalar(a)
    return f"{float(a):.17g}"
