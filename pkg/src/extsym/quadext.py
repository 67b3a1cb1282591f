"""Light quadratic extension ``l* + a + l`` of a Lie algebra with involution.

Given ``(l, theta_l)`` and an orthogonal ``l``-module ``(a, <,>_a, theta_a,
rho)``, build the metric Lie algebra with involution on ``l* + a + l``:

* ``[L1, L2]`` is the bracket of ``l``, ``[L, A] = rho(L) A``,
* ``[L, Z] = ad*(L) Z = -Z o ad(L)``,
* ``[A1, A2]`` is the ``l*``-valued form ``L -> <rho(L) A1, A2>_a``,
* ``l*`` is an abelian ideal and ``[a, l*] = 0``.

``l`` and ``l*`` are isotropic and dually paired, ``a`` is orthogonal to both,
and ``theta = theta_l^* + theta_a + theta_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .liealg import InnerProduct, LieAlgebra, adjoint, check_invariance, check_jacobi
from .linalg import Matrix, unit_vector
from .report import Report
from .triples import ExtrinsicTriple, InvalidTripleError, validate


@dataclass(frozen=True)
class QuadExtData:
    l: LieAlgebra
    theta_l: Matrix
    form_a: Matrix
    theta_a: Matrix
    rho: tuple  # one a_dim x a_dim matrix per basis vector of l
    a_labels: tuple = field(default=())
    dual_prefix: str = "sigma_"

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(Matrix(r) if not isinstance(r, Matrix) else r for r in self.rho))
        for name in ("theta_l", "form_a", "theta_a"):
            m = getattr(self, name)
            if not isinstance(m, Matrix):
                object.__setattr__(self, name, Matrix(m))
        if not self.a_labels:
            object.__setattr__(self, "a_labels", tuple(f"a{i + 1}" for i in range(self.a_dim)))

    @property
    def a_dim(self) -> int:
        return self.form_a.nrows

    def rho_of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.a_dim)
        for c, r in zip(x, self.rho):
            if c:
                out = out + c * r
        return out


def check_data(q: QuadExtData) -> Report:
    rep = Report("quadratic extension data")
    l, n, m = q.l, q.l.dim, q.a_dim
    shapes_ok = (
        q.theta_l.shape == (n, n)
        and q.form_a.shape == (m, m)
        and q.theta_a.shape == (m, m)
        and len(q.rho) == n
        and all(r.shape == (m, m) for r in q.rho)
        and len(q.a_labels) == m
    )
    rep.add("shapes", shapes_ok)
    if not shapes_ok:
        return rep
    rep.extend(check_jacobi(l), prefix="l: ")
    I_l, I_a = Matrix.identity(n), Matrix.identity(m)
    rep.add("theta_l^2 = Id", q.theta_l @ q.theta_l == I_l)
    rep.add("theta_l automorphism", all(
        q.theta_l.apply(l.bracket(unit_vector(n, i), unit_vector(n, j)))
        == l.bracket(q.theta_l.column(i), q.theta_l.column(j))
        for i in range(n) for j in range(i + 1, n)))
    rep.add("form_a symmetric", q.form_a.is_symmetric())
    rep.add("form_a non-degenerate", q.form_a.is_invertible())
    rep.add("theta_a^2 = Id", q.theta_a @ q.theta_a == I_a)
    rep.add("theta_a isometric", q.theta_a.T @ q.form_a @ q.theta_a == q.form_a)
    hom_ok = True
    for i in range(n):
        for j in range(i + 1, n):
            lhs = q.rho_of(l.bracket(unit_vector(n, i), unit_vector(n, j)))
            if lhs != q.rho[i] @ q.rho[j] - q.rho[j] @ q.rho[i]:
                hom_ok = False
    rep.add("rho homomorphism", hom_ok)
    rep.add("rho orthogonal", all((r.T @ q.form_a + q.form_a @ r).is_zero() for r in q.rho))
    rep.add("theta_a rho(theta_l L) = rho(L) theta_a", all(
        q.theta_a @ q.rho_of(q.theta_l.column(i)) == q.rho[i] @ q.theta_a for i in range(n)))
    return rep


@dataclass(frozen=True)
class MetricAlgebraWithInvolution:
    algebra: LieAlgebra
    form: InnerProduct
    theta: Matrix
    data: QuadExtData

    def block_slices(self) -> tuple[slice, slice, slice]:
        n, m = self.data.l.dim, self.data.a_dim
        return slice(0, n), slice(n, n + m), slice(n + m, 2 * n + m)


def build_dd(q: QuadExtData) -> MetricAlgebraWithInvolution:
    rep = check_data(q)
    if not rep.ok:
        raise ValueError("invalid quadratic extension data: " + ", ".join(c.name for c in rep.failures))
    l, n, m = q.l, q.l.dim, q.a_dim
    N = 2 * n + m
    Z0, A0, L0 = 0, n, n + m  # block offsets
    c = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]

    def put(i, j, k, v):
        if v:
            c[i][j][k] += v
            c[j][i][k] -= v

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                put(L0 + i, L0 + j, L0 + k, l.c[i][j][k])
    for i in range(n):
        r = q.rho[i]
        for p in range(m):
            for s in range(m):
                put(L0 + i, A0 + p, A0 + s, r[s, p])
        # ad*(L_i) sigma_p = -sum_k c_l[i][k][p] sigma_k
        for p in range(n):
            for k in range(n):
                put(L0 + i, Z0 + p, Z0 + k, -l.c[i][k][p])
    G_a = q.form_a
    for p in range(m):
        for s in range(p + 1, m):
            for k in range(n):
                # <rho(L_k) A_p, A_s>
                val = sum((q.rho[k][r, p] * G_a[r, s] for r in range(m)), Fraction(0))
                put(A0 + p, A0 + s, Z0 + k, val)

    labels = [q.dual_prefix + lab for lab in l.basis_labels] + list(q.a_labels) + list(l.basis_labels)
    g = LieAlgebra(N, c, labels)

    gram = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n):
        gram[Z0 + i][L0 + i] = gram[L0 + i][Z0 + i] = Fraction(1)
    for p in range(m):
        for s in range(m):
            gram[A0 + p][A0 + s] = G_a[p, s]

    theta = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            theta[Z0 + i][Z0 + j] = q.theta_l[j, i]  # dual map
            theta[L0 + i][L0 + j] = q.theta_l[i, j]
    for p in range(m):
        for s in range(m):
            theta[A0 + p][A0 + s] = q.theta_a[p, s]
    return MetricAlgebraWithInvolution(g, InnerProduct(Matrix(gram)), Matrix(theta), q)


def check_dd(dd: MetricAlgebraWithInvolution) -> Report:
    """Cross-checks on a constructed ``dd``: Lie, invariant, theta compatible, block structure."""
    rep = Report("quadratic extension output")
    g, B, th = dd.algebra, dd.form, dd.theta
    rep.extend(check_jacobi(g))
    rep.extend(check_invariance(g, B))
    rep.add("form non-degenerate", B.is_nondegenerate())
    rep.add("theta^2 = Id", th @ th == Matrix.identity(g.dim))
    rep.add("theta isometric", th.T @ B.gram @ th == B.gram)
    N = g.dim
    rep.add("theta automorphism", all(
        th.apply(g.bracket(unit_vector(N, i), unit_vector(N, j))) == g.bracket(th.column(i), th.column(j))
        for i in range(N) for j in range(i + 1, N)))
    zs, as_, ls = dd.block_slices()
    zi = range(zs.start, zs.stop)
    ai = range(as_.start, as_.stop)
    e = lambda i: unit_vector(N, i)  # noqa: E731
    in_block = lambda v, idx: all(not a for k, a in enumerate(v) if k not in idx)  # noqa: E731
    rep.add("l* abelian ideal", all(not any(g.bracket(e(z), e(w))) for z in zi for w in zi)
            and all(in_block(g.bracket(e(z), e(x)), zi) for z in zi for x in range(N)))
    rep.add("[a, a] in l*", all(in_block(g.bracket(e(p), e(s)), zi) for p in ai for s in ai))
    q = dd.data
    n = q.l.dim
    ok = True
    for p in ai:
        for s in ai:
            br = g.bracket(e(p), e(s))
            for k in range(n):
                lhs = B(br, e(ls.start + k))
                rhs = sum((q.rho[k][r, p - as_.start] * q.form_a[r, s - as_.start]
                           for r in range(q.a_dim)), Fraction(0))
                ok &= lhs == rhs
    rep.add("<[A1, A2], L> = <rho(L) A1, A2>", ok)
    return rep


def lift_derivation(dd: MetricAlgebraWithInvolution, d_l: Matrix, d_a: Matrix) -> Matrix:
    """Block map ``-(D_l)^* + D_a + D_l`` on ``l* + a + l``."""
    q = dd.data
    n, m = q.l.dim, q.a_dim
    N = 2 * n + m
    d = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            d[i][j] = -d_l[j, i]
            d[n + m + i][n + m + j] = d_l[i, j]
    for p in range(m):
        for s in range(m):
            d[n + p][n + s] = d_a[p, s]
    return Matrix(d)


def attach_phi(
    dd: MetricAlgebraWithInvolution,
    *,
    xi: Sequence | None = None,
    d_l: Matrix | None = None,
    d_a: Matrix | None = None,
    d: Matrix | None = None,
    name: str = "",
) -> ExtrinsicTriple:
    """Attach ``D`` (as ``ad(xi)``, as block data, or as a full matrix) and validate."""
    given = sum(x is not None for x in (xi, d)) + (d_l is not None or d_a is not None)
    if given != 1:
        raise ValueError("give exactly one of xi, (d_l, d_a), d")
    if xi is not None:
        d = adjoint(dd.algebra, tuple(Fraction(a) for a in xi))
    elif d is None:
        q = dd.data
        d_l = Matrix.zeros(q.l.dim) if d_l is None else Matrix(d_l.rows)
        d_a = Matrix.zeros(q.a_dim) if d_a is None else Matrix(d_a.rows)
        d = lift_derivation(dd, d_l, d_a)
    t = ExtrinsicTriple(dd.algebra, dd.form, dd.theta, d, name)
    rep = validate(t)
    if not rep.ok:
        raise InvalidTripleError(rep)
    return t
