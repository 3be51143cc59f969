import random

import pytest

from curvecx import _kernels as py
from curvecx import kernels
from curvecx.normal import canonicalize, minimal_position, trace
from curvecx.triangulation import standard_triangulation

from conftest import essential_weights
from oracles import scan_weights

try:
    from curvecx import _ckernels as cy
except ImportError:
    cy = None

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


@pytest.mark.parametrize("g,bound", [(2, 6), (2, 8), (3, 4)])
def test_enumeration_matches_plain_scan(g, bound):
    t = standard_triangulation(g)
    assert py.enumerate_weights(kernels.flat_faces(t), t.n_edges, bound) == scan_weights(t, bound)


def test_enumeration_counts_frozen():
    t = standard_triangulation(2)
    faces = kernels.flat_faces(t)
    counts = [len(py.enumerate_weights(faces, t.n_edges, b)) for b in (0, 2, 4, 6, 12)]
    # reference values from the plain scan oracle
    assert counts == [1, 3, 10, 32, 383]


def test_corner_counts_reject_parity():
    t = standard_triangulation(2)
    w = [0] * t.n_edges
    w[0] = 1
    assert py.corner_counts(kernels.flat_faces(t), w) is None


def test_trace_visits_every_point_once():
    t = standard_triangulation(2)
    faces = kernels.flat_faces(t)
    for w in essential_weights(10):
        comps = py.trace_components(faces, w)
        # each passage leaves through one point; every point is left once
        assert sum(len(c) for c in comps) == sum(w)


def _recorded_inputs(n_pairs=60, seed=3):
    calls = {"cc": [], "fc": []}
    orig = kernels.chord_crossings, kernels.face_cycles

    def cc(*a):
        calls["cc"].append(a)
        return orig[0](*a)

    def fc(*a):
        calls["fc"].append(a)
        return orig[1](*a)

    t = standard_triangulation(2)
    ws = essential_weights(12)
    rng = random.Random(seed)
    kernels.chord_crossings, kernels.face_cycles = cc, fc
    try:
        for _ in range(n_pairs):
            ms = []
            for w in (rng.choice(ws), rng.choice(ws)):
                ms.append(canonicalize(t, w, [rng.choice((1, -1)) for _ in trace(t, w)]))
            minimal_position(*ms)
    finally:
        kernels.chord_crossings, kernels.face_cycles = orig
    return calls


@needs_compiled
def test_backends_agree_on_enumeration_and_tracing():
    for g, bound in ((2, 12), (3, 8)):
        t = standard_triangulation(g)
        faces = kernels.flat_faces(t)
        a = py.enumerate_weights(faces, t.n_edges, bound)
        assert cy.enumerate_weights(faces, t.n_edges, bound) == a
        for w in a:
            if any(w):
                assert cy.trace_components(faces, w) == py.trace_components(faces, w)


@needs_compiled
def test_backends_agree_on_arrangement_kernels():
    calls = _recorded_inputs()
    assert calls["cc"] and calls["fc"]
    for a in calls["cc"]:
        assert cy.chord_crossings(*a) == py.chord_crossings(*a)
    for a in calls["fc"]:
        assert cy.face_cycles(*a) == py.face_cycles(*a)


@needs_compiled
def test_compiled_trace_rejects_bad_weights():
    t = standard_triangulation(2)
    w = [1] + [0] * (t.n_edges - 1)
    with pytest.raises(ValueError):
        cy.trace_components(kernels.flat_faces(t), w)


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, CURVECX_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import curvecx.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
