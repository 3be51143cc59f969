"""Backend selection for the inner loops.

The compiled module ``curvecx._ckernels`` is used when it was built and
``CURVECX_PURE_PYTHON`` is unset; otherwise the pure-Python twins in
``curvecx._kernels`` are used. ``BACKEND`` names the active one.
"""
import os

from . import _kernels as python_backend

compiled_backend = None
if not os.environ.get("CURVECX_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

enumerate_weights = _active.enumerate_weights
trace_components = _active.trace_components
chord_crossings = _active.chord_crossings
face_cycles = _active.face_cycles
corner_counts = python_backend.corner_counts


def flat_faces(tri):
    return tuple(tuple(x for slot in face for x in slot) for face in tri.faces)
