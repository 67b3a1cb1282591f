"""Hypothesis strategies and cached catalog data shared by the test modules."""

from __future__ import annotations

import functools

from hypothesis import strategies as st

from extsym import catalog
from extsym.extensions import Cochain2, central_extension, cohomology2, restricted_classes
from extsym.linalg import Subspace, vlincomb

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
small_ints = st.integers(min_value=-3, max_value=3)


@functools.cache
def triple(name: str):
    return catalog.build(name)


@functools.cache
def base_classes(name: str) -> tuple:
    """Restricted classes of a catalog triple with one-dimensional fiber."""
    return tuple(restricted_classes(triple(name), 1))


@functools.cache
def cohomology(name: str, fiber: int = 1):
    t = triple(name)
    return cohomology2(t.algebra, fiber, t.theta, t.d)


def elements(S: Subspace):
    """Random rational element of ``S``."""
    return st.lists(rationals, min_size=S.dim, max_size=S.dim).map(
        lambda cs: vlincomb(cs, S.basis, S.ambient_dim))


@st.composite
def extended_triples(draw, names=catalog.NAMES):
    """A catalog triple, or a central extension of one by a random restricted class."""
    name = draw(st.sampled_from(names))
    t0 = triple(name)
    classes = base_classes(name)
    if not classes or not draw(st.booleans()):
        return t0
    coeffs = draw(st.lists(small_ints, min_size=len(classes), max_size=len(classes)))
    w = Cochain2.zero(t0.dim, 1)
    for c, cls in zip(coeffs, classes):
        w = w + cls * c
    return _extension(name, tuple(coeffs), w)


_EXT_CACHE: dict = {}


def _extension(name, key, w):
    t = _EXT_CACHE.get((name, key))
    if t is None:
        t = _EXT_CACHE[(name, key)] = central_extension(triple(name), w)
    return t



def extension_pool(seed: int = 0, per_triple: int = 2) -> list:
    """Catalog triples plus central extensions of each by seeded random restricted classes."""
    import random

    rng = random.Random(seed)
    pool = [triple(n) for n in catalog.NAMES]
    for name in catalog.NAMES:
        classes = base_classes(name)
        for _ in range(per_triple if classes else 0):
            coeffs = tuple(rng.randint(-3, 3) for _ in classes)
            w = Cochain2.zero(triple(name).dim, 1)
            for c, cls in zip(coeffs, classes):
                w = w + cls * c
            pool.append(_extension(name, coeffs, w))
    return pool
