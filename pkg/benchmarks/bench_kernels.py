"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--genus 2] [--weight-bound 14] [--repeat 3]

Inputs for the per-triangle kernels are recorded from a real slice build, so
both backends see exactly what the library feeds them. The end-to-end row
rebuilds the slice in a subprocess once per backend.
"""
import argparse
import os
import subprocess
import sys
import time

from curvecx import _kernels as py
from curvecx import kernels
from curvecx.hc import ComplexSlice
from curvecx.homology import HomologyClass
from curvecx.triangulation import standard_triangulation

try:
    from curvecx import _ckernels as cy
except ImportError:
    cy = None


def record(genus, bound):
    """Arguments of every chord_crossings / face_cycles call in one slice build."""
    calls = {"chord_crossings": [], "face_cycles": []}
    orig = kernels.chord_crossings, kernels.face_cycles

    def cc(*a):
        calls["chord_crossings"].append(a)
        return orig[0](*a)

    def fc(*a):
        calls["face_cycles"].append(a)
        return orig[1](*a)

    kernels.chord_crossings, kernels.face_cycles = cc, fc
    try:
        tri = standard_triangulation(genus)
        sl = ComplexSlice.build(tri, HomologyClass.basis(genus, "a", 1), bound)
        sl.edges()
    finally:
        kernels.chord_crossings, kernels.face_cycles = orig
    return tri, calls


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def end_to_end(genus, bound, pure):
    env = dict(os.environ)
    env.pop("CURVECX_PURE_PYTHON", None)
    if pure:
        env["CURVECX_PURE_PYTHON"] = "1"
    code = ("import time;from curvecx.hc import ComplexSlice;from curvecx.homology import HomologyClass;"
            "from curvecx.triangulation import standard_triangulation as st;t=time.perf_counter();"
            f"s=ComplexSlice.build(st({genus}),HomologyClass.basis({genus},'a',1),{bound});s.edges();"
            "print(time.perf_counter()-t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--weight-bound", type=int, default=14)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled kernels not built; nothing to compare")
        return 1
    tri, calls = record(args.genus, args.weight_bound)
    faces = kernels.flat_faces(tri)
    weights = py.enumerate_weights(faces, tri.n_edges, args.weight_bound)
    nonzero = [w for w in weights if any(w)]

    rows = [
        ("enumerate_weights", lambda m: m.enumerate_weights(faces, tri.n_edges, args.weight_bound)),
        ("trace_components", lambda m: [m.trace_components(faces, w) for w in nonzero]),
        ("chord_crossings", lambda m: [m.chord_crossings(*a) for a in calls["chord_crossings"]]),
        ("face_cycles", lambda m: [m.face_cycles(*a) for a in calls["face_cycles"]]),
    ]
    print(f"genus {args.genus}, weight bound {args.weight_bound}: {len(nonzero)} weight vectors, "
          f"{len(calls['face_cycles'])} triangle arrangements")
    print(f"{'kernel':<20}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, run in rows:
        assert run(py) == run(cy), f"{name}: backends disagree"
        tp = best_of(lambda: run(py), args.repeat)
        tc = best_of(lambda: run(cy), args.repeat)
        print(f"{name:<20}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")
    tp = end_to_end(args.genus, args.weight_bound, True)
    tc = end_to_end(args.genus, args.weight_bound, False)
    print(f"{'slice build':<20}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
