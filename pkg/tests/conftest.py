import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from curvecx.hc import ComplexSlice  # noqa: E402
from curvecx.homology import HomologyClass  # noqa: E402
from curvecx.normal import trace, is_vertex_link  # noqa: E402
from curvecx import kernels  # noqa: E402
from curvecx.triangulation import standard_triangulation  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def tri2():
    return standard_triangulation(2)


@pytest.fixture(scope="session")
def alpha_a1():
    return HomologyClass.basis(2, "a", 1)


_slices = {}


def slice_at(bound, marked=False):
    key = (bound, marked)
    if key not in _slices:
        _slices[key] = ComplexSlice.build(standard_triangulation(2), HomologyClass.basis(2, "a", 1),
                                          bound, marked)
    return _slices[key]


@pytest.fixture(scope="session")
def slices():
    return slice_at


_curves = {}


def essential_weights(bound):
    """Nonzero normal vectors at genus 2 with no vertex-link component."""
    if bound not in _curves:
        tri = standard_triangulation(2)
        out = []
        for w in kernels.enumerate_weights(kernels.flat_faces(tri), tri.n_edges, bound):
            if any(w) and not any(is_vertex_link(tri, c) for c in trace(tri, w)):
                out.append(w)
        _curves[bound] = out
    return _curves[bound]


@pytest.fixture(scope="session")
def curves12():
    return essential_weights(12)


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    # keep runs reproducible unless a test sets its own value
    if "CURVECX_THREADS" not in os.environ:
        monkeypatch.setenv("CURVECX_THREADS", "1")


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
