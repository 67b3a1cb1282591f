from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from extsym import catalog
from extsym.liealg import (
    DimensionError,
    InnerProduct,
    LieAlgebra,
    bracket,
    centre,
    check_invariance,
    check_jacobi,
    is_ideal,
    killing_form,
    metric_radical,
    quotient_by_central_ideal,
)
from extsym.linalg import Matrix, Subspace
from strategies import rationals, triple

F = Fraction


def sl2_ad_oracle():
    """ad matrices of H, X, Y written out by hand from [H,X]=2Y, [H,Y]=2X, [X,Y]=2H."""
    H = sympy.Matrix([[0, 0, 0], [0, 0, 2], [0, 2, 0]])
    X = sympy.Matrix([[0, 0, 2], [0, 0, 0], [-2, 0, 0]])
    Y = sympy.Matrix([[0, -2, 0], [-2, 0, 0], [0, 0, 0]])
    return [H, X, Y]


def test_sl2_killing_form_against_hand_oracle():
    ads = sl2_ad_oracle()
    oracle = [[(a * b).trace() for b in ads] for a in ads]
    assert oracle == [[8, 0, 0], [0, -8, 0], [0, 0, 8]]
    L = catalog.sl2()
    assert killing_form(L).gram == Matrix(oracle)
    for i, ad in enumerate(ads):
        assert L.ad(L.basis_vector(i)) == Matrix(ad.tolist())


def test_sl2_is_a_metric_lie_algebra():
    L = catalog.sl2()
    assert check_jacobi(L).ok
    assert check_invariance(L, killing_form(L)).ok
    assert centre(L).dim == 0


def test_heisenberg():
    L = catalog.heisenberg()
    assert check_jacobi(L).ok
    assert centre(L) == Subspace.coordinate(3, [1])
    assert is_ideal(L, centre(L))


def test_jacobi_violation_is_located():
    # [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 fails Jacobi
    L = LieAlgebra.from_brackets(["a", "b", "c"], {("a", "b"): {"c": 1}, ("b", "c"): {"a": 1}, ("a", "c"): {"a": 1}})
    rep = check_jacobi(L)
    assert not rep.ok
    assert "(a, b, c)" in rep["jacobi"].detail


def test_invariance_violation_is_reported():
    L = catalog.sl2()
    rep = check_invariance(L, InnerProduct(Matrix.identity(3)))
    assert not rep.ok and rep["invariance"].detail


def test_antisymmetry_enforced():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1] = [1, 0]
    with pytest.raises(ValueError):
        LieAlgebra(2, c)
    with pytest.raises(DimensionError):
        LieAlgebra(2, None, ["only-one"])


@given(st.sampled_from(catalog.NAMES), st.data())
def test_bracket_is_bilinear_and_antisymmetric(name, data):
    t = triple(name)
    n = t.dim
    x, y, z = (tuple(data.draw(st.lists(rationals, min_size=n, max_size=n))) for _ in range(3))
    a = data.draw(rationals)
    L = t.algebra
    assert bracket(L, x, y) == tuple(-v for v in bracket(L, y, x))
    lhs = bracket(L, tuple(p + a * q for p, q in zip(x, z)), y)
    rhs = tuple(p + a * q for p, q in zip(bracket(L, x, y), bracket(L, z, y)))
    assert lhs == rhs


def test_quotient_of_flat3_by_its_radical():
    t = catalog.flat3()
    R = metric_radical(t.algebra, t.form)
    q = quotient_by_central_ideal(t.algebra, t.form, R)
    assert q.algebra.dim == t.dim - R.dim
    assert q.projection @ q.section == Matrix.identity(q.algebra.dim)
    assert q.algebra.basis_labels == tuple(lab for lab in t.labels if lab not in ("b1", "b2"))
    assert check_jacobi(q.algebra).ok
    assert q.form.is_nondegenerate()


def test_quotient_labels_for_skew_complement():
    t = catalog.parabola()
    R = metric_radical(t.algebra, t.form)
    C = Subspace.from_vectors([(1, 1, 0), (0, 0, 1)], 3)
    q = quotient_by_central_ideal(t.algebra, t.form, R, C)
    assert q.algebra.basis_labels == ("q1", "e3")


def test_quotient_rejects_noncentral_ideal():
    L = catalog.sl2()
    with pytest.raises(ValueError):
        quotient_by_central_ideal(L, killing_form(L), Subspace.coordinate(3, [0]))
