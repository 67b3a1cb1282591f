from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from extsym import catalog
from extsym.expm import TOLERANCE, expm_certified, expm_nilpotent, nilpotency_index
from extsym.liealg import InnerProduct
from extsym.linalg import Matrix
from extsym.orbit import (
    OrbitSampler,
    default_words,
    embed_nondegenerate,
    exp_isometry,
    format_coordinate,
    mean_curvature,
    minus_form,
    normal_space,
    orthogonal_reflection,
    phi,
    reflection,
    s0,
    second_fundamental_form,
    shape_operator,
    shape_operator_matrix,
    signature,
    tangent_space,
    check_extrinsic_symmetry,
)
from strategies import elements, rationals, triple

F = Fraction
half = F(1, 2)


@given(st.sampled_from(catalog.NAMES), st.data())
def test_phi_is_a_homomorphism_into_isometries(name, data):
    t = triple(name)
    gp = t.decomposition.g_plus
    X, Y = data.draw(elements(gp)), data.draw(elements(gp))
    a, b = phi(t, X), phi(t, Y)
    c = phi(t, t.bracket(X, Y))
    assert a.bracket(b) == c
    G = minus_form(t).gram
    assert (a.linear.T @ G + G @ a.linear).is_zero()


def test_phi_rejects_g_minus():
    t = triple("parabola")
    with pytest.raises(ValueError):
        phi(t, t.vec(e2=1))


@given(rationals, rationals)
def test_exact_exponential_group_law(s, u):
    t = triple("flat3")
    inf = phi(t, t.decomposition.g_plus.basis[0])
    lhs = exp_isometry(inf, s) @ exp_isometry(inf, u)
    rhs = exp_isometry(inf, s + u)
    assert lhs.exact and lhs == rhs


def test_nilpotent_series_against_sympy():
    N = Matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert nilpotency_index(N) == 3
    ref = sympy.Matrix(N.rows).exp()
    assert expm_nilpotent(N, 3) == Matrix(ref.tolist())
    assert nilpotency_index(Matrix([[0, 1], [1, 0]])) is None


@settings(max_examples=30)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9), st.fractions(-2, 2, max_denominator=4))
def test_certified_exponential_against_mpmath(entries, s):
    N = Matrix([entries[0:3], entries[3:6], entries[6:9]])
    got = expm_certified(N, s)
    with mpmath.workdps(60):
        ref = mpmath.expm(mpmath.matrix(N.rows) * mpmath.mpf(s.numerator) / s.denominator)
        ref = np.array([[float(ref[i, j]) for j in range(3)] for i in range(3)])
    scale = max(1.0, float(np.max(np.abs(ref))))
    assert np.max(np.abs(got - ref)) <= TOLERANCE * scale


def test_cw1_orbit_is_floating_but_consistent():
    t = triple("cahen_wallach_1")
    sampler = OrbitSampler(t)
    p = sampler.point([(0, half), (3, F(1, 3))])
    assert not p.exact
    g = sampler.element([(0, half), (3, F(1, 3))])
    assert np.allclose(g(np.zeros(5)), p.coords, atol=1e-12)


def test_parabola_orbit_and_curvature_oracle():
    t = triple("parabola")
    sampler = OrbitSampler(t)
    for s in (F(-3), F(1, 3), F(5, 2)):
        assert sampler.point([(0, s)]).coords == (-s * s / 2, -s)
    # curve c(s) = (-s^2/2, -s): c'(0) = -e3, c''(0) = -e2, <e3, e3> = 1
    assert mean_curvature(t) == t.vec(e2=-1)


@pytest.mark.parametrize("name", catalog.NAMES)
def test_tangent_and_normal_spaces(name):
    t = triple(name)
    dec = t.decomposition
    assert tangent_space(t) == dec.g_mm
    assert normal_space(t) == dec.g_mp


@pytest.mark.parametrize("name", catalog.NAMES)
def test_mean_curvature_is_normal(name):
    t = triple(name)
    assert t.decomposition.g_mp.contains(mean_curvature(t))


@pytest.mark.parametrize("name", catalog.NAMES)
def test_shape_operator_matrix_columns(name):
    t = triple(name)
    h = mean_curvature(t)
    A = shape_operator_matrix(t, h)
    mm = t.decomposition.g_mm
    for j, u in enumerate(mm.basis):
        assert mm.from_coordinates(A.column(j)) == shape_operator(t, h, u)


def test_geometry_rejects_wrong_subspaces():
    t = triple("cahen_wallach_1")
    with pytest.raises(ValueError):
        second_fundamental_form(t, t.vec(H=1), t.vec(Y=1))
    with pytest.raises(ValueError):
        shape_operator(t, t.vec(Y=1), t.vec(Y=1))


@pytest.mark.parametrize("name", catalog.NAMES)
def test_reflection_at_a_point(name):
    t = triple(name)
    sampler = OrbitSampler(t)
    word = [(a, F(k + 1, 3)) for k, a in enumerate(range(len(sampler.generators)))][:2]
    p = sampler.point(word)
    s = reflection(t, p, sampler)
    back = s(p.coords)
    twice = s @ s
    if p.exact:
        assert back == p.coords
        assert twice.linear == Matrix.identity(len(p.coords))
    else:
        assert np.allclose(back, np.asarray(p.coords, dtype=float), atol=1e-9)
        assert np.allclose(twice.linear, np.eye(len(p.coords)), atol=1e-9)


@pytest.mark.parametrize("name", catalog.NAMES)
def test_extrinsic_symmetry_on_samples(name):
    t = triple(name)
    sampler = OrbitSampler(t)
    words = default_words(len(sampler.generators), (-1, half), max_points=16)
    rep = check_extrinsic_symmetry(t, sampler.sample(words), sampler)
    assert rep.ok, rep.text()


def test_s0_is_tau_D():
    t = triple("parabola")
    assert s0(t).linear == Matrix.diagonal([1, -1])


@pytest.mark.parametrize("name, sig", [("parabola", (1, 2, 0)), ("flat3", (2, 5, 0)),
                                       ("cahen_wallach_1", (2, 3, 0)), ("cahen_wallach_2", (3, 3, 0))])
def test_nondegenerate_embedding(name, sig):
    V = minus_form(triple(name))
    emb = embed_nondegenerate(V)
    assert emb.ambient.is_nondegenerate()
    J = emb.injection
    assert J.T @ emb.ambient.gram @ J == V.gram
    assert signature(emb.ambient) == sig


def test_orthogonal_reflection_exact_and_float():
    form = InnerProduct(Matrix.diagonal([1, -1, 1]))
    r = orthogonal_reflection(form, (1, 2, 3), [(1, 0, 0)])
    assert r((1, 2, 3)) == (1, 2, 3)
    assert r((0, 0, 0)) == (2, 0, 0)
    assert (r @ r).linear == Matrix.identity(3)
    rf = orthogonal_reflection(form, (1.0, 2.0, 3.0), [(1.0, 0.0, 0.0)])
    assert np.allclose(rf((0.0, 0.0, 0.0)), [2, 0, 0])


def test_default_words():
    assert len(default_words(2, (0, 1, 2))) == 9
    assert len(default_words(3, (0, 1), max_word_len=1)) == 2
    assert len(default_words(3, (0, 1, 2), max_points=5)) == 5


@pytest.mark.parametrize("value, text", [(F(-1, 3), "-1/3"), (F(4), "4"), (0.1, "0.10000000000000001")])
def test_format_coordinate(value, text):
    assert format_coordinate(value) == text
