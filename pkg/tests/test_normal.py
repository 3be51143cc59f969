import json
import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from curvecx.arrangement import build
from curvecx.errors import (EssentialnessError, InvalidNormalCoordinatesError,
                            MismatchedTriangulationError)
from curvecx.homology import homology_class, intersection_form
from curvecx.normal import (NormalMulticurve, algebraic_intersection, basis_curve, canonicalize,
                            from_components, geometric_intersection, minimal_position, trace,
                            validate)
from curvecx.triangulation import standard_triangulation, vertex_link_weights

from conftest import essential_weights
import oracles

T2 = standard_triangulation(2)


@st.composite
def multicurves(draw, bound=12):
    ws = essential_weights(bound)
    w = draw(st.sampled_from(ws))
    n = len(trace(T2, w))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    return canonicalize(T2, w, signs)


prop = settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_validate_errors():
    with pytest.raises(InvalidNormalCoordinatesError, match="parity"):
        validate(T2, [1, 0, 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(InvalidNormalCoordinatesError):
        validate(T2, [0] * 8)
    with pytest.raises(InvalidNormalCoordinatesError):
        validate(T2, [-1, 0, 0, 0, -1, 0, 0, 0, 0])
    with pytest.raises(InvalidNormalCoordinatesError):
        validate(T2, [4, 0, 0, 0, 0, 0, 0, 0, 0])  # triangle inequality


def test_vertex_link_rejected():
    with pytest.raises(EssentialnessError):
        canonicalize(T2, vertex_link_weights(T2), [1])


def test_orientation_count_checked():
    with pytest.raises(InvalidNormalCoordinatesError):
        canonicalize(T2, (0, 1, 0, 0, 1, 1, 0, 0, 0), [1, 1])


def test_basis_curves():
    g = 2
    for k in range(1, g + 1):
        a, b = basis_curve(T2, "a", k), basis_curve(T2, "b", k)
        assert a.n_components == b.n_components == 1
        assert geometric_intersection(a, b) == 1
        assert algebraic_intersection(a, b) == 1
        assert algebraic_intersection(b, a) == -1
    a1, b2 = basis_curve(T2, "a", 1), basis_curve(T2, "b", 2)
    assert geometric_intersection(a1, b2) == 0
    assert basis_curve(T2, "a", 1).weights == (0, 1, 0, 0, 1, 1, 0, 0, 0)
    assert basis_curve(T2, "b", 1).weights == (1, 0, 0, 0, 1, 0, 0, 0, 0)


def test_json_round_trip():
    m = canonicalize(T2, (0, 1, 2, 0, 1, 1, 0, 2, 2), (1, -1, 1))
    back = NormalMulticurve.from_json(json.loads(m.dumps()))
    assert back == m and back.key == m.key


def test_parallel_copies_sorted():
    w = (0, 3, 0, 0, 3, 3, 0, 0, 0)
    assert canonicalize(T2, w, (1, -1, 1)) == canonicalize(T2, w, (-1, 1, 1))
    assert canonicalize(T2, w, (1, 1, 1)).has_parallel_same_orientation
    assert not canonicalize(T2, (0, 2, 0, 0, 2, 2, 0, 0, 0), (-1, 1)).has_parallel_same_orientation


def test_from_components():
    a1 = basis_curve(T2, "a", 1)
    a2 = basis_curve(T2, "a", 2)
    m = from_components(T2, [(a1, 1), (a2, -1)])
    assert homology_class(m) == homology_class(a1) - homology_class(a2)


def test_mismatched_triangulations():
    with pytest.raises(MismatchedTriangulationError):
        geometric_intersection(basis_curve(T2, "a", 1),
                               basis_curve(standard_triangulation(3), "a", 1))


@prop
@given(multicurves(), multicurves())
def test_intersection_symmetric(x, y):
    assert geometric_intersection(x, y) == geometric_intersection(y, x)


@prop
@given(multicurves())
def test_self_intersection_zero(x):
    assert geometric_intersection(x, x) == 0
    assert algebraic_intersection(x, x) == 0


@prop
@given(multicurves(), multicurves())
def test_algebraic_bounded_and_antisymmetric(x, y):
    ai = algebraic_intersection(x, y)
    assert ai == -algebraic_intersection(y, x)
    assert abs(ai) <= geometric_intersection(x, y)
    # algebraic count only depends on homology
    assert ai == intersection_form(homology_class(x), homology_class(y))


@prop
@given(multicurves(), multicurves())
def test_no_bigons_after_reduction(x, y):
    arr = minimal_position(x, y)
    assert arr.bigons() == []
    assert arr.euler_check()


@prop
@given(multicurves(), multicurves())
def test_reversal_flips_sign_only(x, y):
    assert geometric_intersection(x.reversed(), y) == geometric_intersection(x, y)
    assert algebraic_intersection(x.reversed(), y) == -algebraic_intersection(x, y)


def test_matches_geodesic_oracle():
    ws = essential_weights(12)
    rng = random.Random(11)
    for _ in range(150):
        ms = [canonicalize(T2, w, [rng.choice((1, -1)) for _ in trace(T2, w)])
              for w in (rng.choice(ws), rng.choice(ws))]
        assert geometric_intersection(*ms) == oracles.geodesic_intersection(T2, *ms), ms


def test_marked_count_bounded_by_interleavings():
    # with the vertex as a puncture the reduced count is the least over
    # every placement of the points on the edges
    ws = essential_weights(6)
    rng = random.Random(5)
    for _ in range(25):
        ms = [canonicalize(T2, w, [1] * len(trace(T2, w))) for w in (rng.choice(ws), rng.choice(ws))]
        brute = oracles.min_crossings_over_interleavings(T2, *ms, build)
        assert geometric_intersection(*ms, marked=True) <= brute
        assert geometric_intersection(*ms) <= geometric_intersection(*ms, marked=True)


def test_canonicalize_idempotent_and_weight_faithful():
    ws = essential_weights(12)
    rng = random.Random(2)
    for _ in range(100):
        w = rng.choice(ws)
        m = canonicalize(T2, w, [rng.choice((1, -1)) for _ in trace(T2, w)])
        assert canonicalize(T2, m.weights, m.orientations) == m
        total = [0] * T2.n_edges
        for c in m.components:
            for e, x in enumerate(c.edge_weights(T2.n_edges, T2.faces)):
                total[e] += x
        assert tuple(total) == m.weights


def test_vertex_link_traces_to_one_component():
    assert validate(T2, vertex_link_weights(T2)) == (2,) * T2.n_edges
    assert len(trace(T2, vertex_link_weights(T2))) == 1
    assert trace(T2, [0] * T2.n_edges) == []


def test_parallel_double_traces_twice():
    comps = trace(T2, (0, 2, 0, 0, 2, 2, 0, 0, 0))
    assert len(comps) == 2 and comps[0].steps == comps[1].steps
    a1 = basis_curve(T2, "a", 1)
    double = canonicalize(T2, (0, 2, 0, 0, 2, 2, 0, 0, 0), (1, 1))
    assert homology_class(double) == homology_class(a1) * 2


@prop
@given(multicurves(bound=9), multicurves(bound=9))
def test_disjoint_iff_zero(x, y):
    arr = minimal_position(x, y)
    assert (arr.crossing_count == 0) == (geometric_intersection(x, y) == 0)
    if arr.crossing_count == 0:
        arr.loop_sides()  # only defined for crossing-free systems
