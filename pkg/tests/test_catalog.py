from fractions import Fraction

import pytest
import sympy as sp

from extsym import catalog
from extsym.orbit import OrbitSampler, default_words, mean_curvature, minus_form, minus_labels
from strategies import triple

F = Fraction


@pytest.mark.parametrize("name", catalog.NAMES)
def test_catalog_fixtures(name):
    rep = catalog.run_fixtures(name, triple(name))
    assert rep.ok, rep.text()


def test_unknown_entry():
    with pytest.raises(KeyError):
        catalog.build("nope")


# -- CW-II mean curvature from the closed-form orbit, computed by sympy ------

r, s, t, eps = sp.symbols("r s t epsilon")


def _closed_form(r, s, t):
    ch, sh = sp.cosh(2 * r), sp.sinh(2 * r)
    a = 2 * s**2 / r - t
    return [a * sh + s**2 / r**2 * (1 - ch), -a * ch + s**2 / r**2 * sh,
            s / r * (1 - ch), -s / r * sh, (ch - 1) / 2, sh / 2]


def _gram(b4b4):
    # sigma_X, sigma_Y, b2, b4, X, Y: sigma pairs with its dual, b2 and b4 diagonal
    G = sp.zeros(6)
    G[0, 4] = G[4, 0] = G[1, 5] = G[5, 1] = G[2, 2] = 1
    G[3, 3] = b4b4
    return G


def _mean_curvature_oracle(G):
    """Trace of the normal part of the Hessian at the origin, over the tangent Gram matrix."""
    x = [sp.expand(sp.series(c.subs({r: eps * r, s: eps * s, t: eps * t}), eps, 0, 3).removeO())
         for c in _closed_form(r, s, t)]
    first = sp.Matrix([c.coeff(eps, 1) for c in x])
    second = sp.Matrix([c.coeff(eps, 2) for c in x])
    params = (r, s, t)
    T = sp.Matrix.hstack(*[first.diff(p) for p in params])
    ginv = (T.T * G * T).inv()
    P = T * ginv * T.T * G
    acc = sp.zeros(6, 1)
    for i, p in enumerate(params):
        for j, q in enumerate(params):
            hess = second.diff(p).diff(q)
            acc += ginv[i, j] * (hess - P * hess)
    return [sp.nsimplify(a) for a in acc / 3]


def test_cw2_gram_matches_oracle():
    tr = triple("cahen_wallach_2")
    assert minus_labels(tr) == ["sigma_X", "sigma_Y", "b2", "b4", "X", "Y"]
    assert sp.Matrix(minus_form(tr).gram.rows) == _gram(-1)


def test_cw2_mean_curvature_by_independent_oracle():
    h = _mean_curvature_oracle(_gram(-1))
    assert h == [F(-5, 3), 0, 0, 0, 0, 0]
    tr = triple("cahen_wallach_2")
    assert mean_curvature(tr) == tr.vec(sigma_X=F(-5, 3))


def test_cw2_stated_value_needs_the_wrong_signature():
    # with <b4, b4> = +1 the oracle returns -sigma_X, but g- is then not split 3/3
    assert _mean_curvature_oracle(_gram(1)) == [-1, 0, 0, 0, 0, 0]
    eig = _gram(1).eigenvals()
    assert (eig.get(-1, 0), eig.get(1, 0)) == (2, 4)


def test_cw2_parametrization_limit_and_inverse():
    assert catalog.cw2_parametrization(0, F(1, 2), 3) == [0.5, 3.0, 0.0, -1.0, 0.0, 0.0]
    for params in [(F(1, 3), F(-1, 2), 2), (-1, 1, F(1, 2)), (F(1, 1000), 1, -1)]:
        x = catalog.cw2_parametrization(*params)
        back = catalog.cw2_parameters(x)
        assert all(abs(a - float(b)) < 1e-12 for a, b in zip(back, params))


def test_cw2_product_words_lie_on_the_surface():
    tr = triple("cahen_wallach_2")
    sampler = OrbitSampler(tr)
    pts = sampler.sample(default_words(4, (-1, F(1, 2), 1)))
    dev = max(catalog.VERIFIERS["cahen_wallach_2"](p.coords) for p in pts)
    assert dev <= catalog.ORBIT_TOLERANCE


def test_verifiers_detect_points_off_the_orbit():
    assert catalog.VERIFIERS["parabola"]((F(1), F(1))) > 0
    assert catalog.VERIFIERS["flat3"]((1, 1, 1, 0, 1)) > 0
    x = catalog.cw2_parametrization(F(1, 2), 1, 1)
    x[2] += 1e-3
    assert catalog.VERIFIERS["cahen_wallach_2"](x) > 1e-4


def test_flat3_reflection_differential_matches_catalog_formula():
    tr = triple("flat3")
    p = (F(2, 3), F(-5, 4), F(7, 2))
    assert catalog.flat3_embedded_reflection(tr, p).linear == catalog.flat3_reflection_differential(*p)


def test_flat3_transvection():
    disp, lin = catalog.flat3_transvection(triple("flat3"))
    assert disp <= catalog.ORBIT_TOLERANCE
    assert lin > 0.1
