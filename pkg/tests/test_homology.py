from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvecx.arrangement import A, B
from curvecx.errors import NotNullHomologousError, PreconditionError
from curvecx.homology import (HomologyClass, bounding_chain, chain_euler_characteristic,
                              homology_class, intersection_form)
from curvecx.normal import basis_curve, canonicalize, minimal_position
from curvecx.triangulation import standard_triangulation

T2 = standard_triangulation(2)

classes = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(lambda v: HomologyClass(tuple(v)))


def test_basis_and_arithmetic():
    a1 = HomologyClass.basis(2, "a", 1)
    b2 = HomologyClass.basis(2, "b", 2)
    assert (a1 + b2).coords == (1, 0, 0, 1)
    assert (a1 - b2).coords == (1, 0, 0, -1)
    assert (-a1).coords == (-1, 0, 0, 0)
    assert (3 * a1).coords == (3, 0, 0, 0)
    assert HomologyClass.zero(2).is_zero()
    assert str(a1) == "(1,0,0,0)"


@settings(max_examples=200)
@given(classes, classes)
def test_form_is_antisymmetric(x, y):
    assert intersection_form(x, y) == -intersection_form(y, x)
    assert intersection_form(x, x) == 0


def test_form_on_basis():
    for k in (1, 2):
        for l in (1, 2):
            a, b = HomologyClass.basis(2, "a", k), HomologyClass.basis(2, "b", l)
            assert intersection_form(a, b) == (1 if k == l else 0)
            assert intersection_form(a, HomologyClass.basis(2, "a", l)) == 0


def test_curve_classes():
    for k in (1, 2):
        for letter in "ab":
            m = basis_curve(T2, letter, k)
            assert homology_class(m) == HomologyClass.basis(2, letter, k)
            assert homology_class(m.reversed()) == -HomologyClass.basis(2, letter, k)


def test_separating_curve_is_null():
    # a curve cutting the polygon into two halves of genus one
    m = canonicalize(T2, (0, 0, 2, 2, 0, 0, 0, 2, 2), [1])
    assert m.n_components == 1
    assert homology_class(m).is_zero()


def _expected(chain):
    out = {}
    for fam, kappa in ((A, -1), (B, 1)):
        for comp, s in enumerate(chain.signs[fam]):
            out[(fam, comp)] = kappa * s
    return out


def check_chain(m1, m2):
    arr = minimal_position(m1, m2)
    chain = bounding_chain(m1, m2)
    got = {c: chain.weights[l] - chain.weights[r] for c, (l, r) in chain.sides.items()}
    assert got == _expected(chain)
    assert min(chain.weights.values()) == 0
    # total Euler characteristic of all pieces is that of the surface
    assert sum(chain.chi.values()) == 2 - 2 * T2.genus
    # stack reordering only permutes curves; the regions touched stay the same
    before = Counter(r for lr in arr.loop_sides().values() for r in lr)
    after = Counter(r for lr in chain.sides.values() for r in lr)
    assert set(before) == set(after)
    return chain


def test_annulus_between_copies():
    a1 = basis_curve(T2, "a", 1)
    chain = check_chain(a1, a1)
    assert chain.levels == [0, 1]
    assert chain_euler_characteristic(chain, 1) == 0
    assert chain_euler_characteristic(chain, 0) == -2


def test_pairs_from_slice(slices):
    sl = slices(12)
    n = 0
    for i, j in sl.edges():
        for x, y in ((i, j), (j, i)):
            check_chain(sl.vertices[x], sl.vertices[y])
            n += 1
    assert n >= 70


def test_non_homologous_rejected():
    with pytest.raises(NotNullHomologousError):
        bounding_chain(basis_curve(T2, "a", 1), basis_curve(T2, "a", 2))
    a1 = basis_curve(T2, "a", 1)
    with pytest.raises(NotNullHomologousError):
        bounding_chain(a1, a1.reversed())


def test_intersecting_pair_rejected():
    m1 = canonicalize(T2, (0, 1, 0, 2, 1, 1, 0, 0, 2), (-1, 1, 1))
    m2 = canonicalize(T2, (0, 1, 2, 0, 1, 1, 0, 2, 2), (1, -1, 1))
    assert homology_class(m1) == homology_class(m2)
    with pytest.raises(PreconditionError):
        bounding_chain(m1, m2)
