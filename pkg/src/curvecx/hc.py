"""Finite slices of the homology curve complex and distances in them.

Vertices are oriented multicurves in a fixed class ``alpha`` whose normal
coordinates have total weight at most a bound. Two vertices are adjacent when
they are different and can be made disjoint.

By default the surface is closed: multicurves that differ by sliding across
the triangulation's vertex are the same vertex, and each class is stored as
its representative of least ``(total weight, key)``. With ``marked=True`` the
vertex is a puncture and normal coordinates are taken at face value.
"""
from __future__ import annotations

import json
import os
from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import kernels
from .arrangement import A, LEFT
from .errors import PreconditionError, UnreachableError
from .homology import (HomologyClass, annulus_regions, component_class,
                       homology_class, stacks)
from .normal import (NormalMulticurve, canonicalize, is_vertex_link,
                     minimal_position, trace)
from .triangulation import Triangulation

SCHEMA = "curvecx/slice@1"
# below this many candidate neighbours a thread pool costs more than it saves
PARALLEL_MIN = 64


def thread_count() -> int:
    """Worker cap from ``CURVECX_THREADS`` (default 1)."""
    raw = os.environ.get("CURVECX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def is_isotopic(m1: NormalMulticurve, m2: NormalMulticurve) -> bool:
    """Whether two oriented multicurves are isotopic in the closed surface."""
    if m1 == m2:
        return True
    if m1.n_components != m2.n_components or homology_class(m1) != homology_class(m2):
        return False
    arr = minimal_position(m1, m2)
    if arr.crossing_count:
        return False
    loop_sides = arr.loop_sides()
    runs = stacks(arr, loop_sides, annulus_regions(arr, loop_sides))
    for run in runs:
        counts = defaultdict(int)
        for (fam, comp), entry in run:
            s = arr.signs[fam][comp]
            rel = s if entry == LEFT else -s
            counts[rel] += 1 if fam == A else -1
        if any(counts.values()):
            return False
    return True


def _oriented_invariant(m: NormalMulticurve) -> tuple:
    """Sorted oriented component classes; equal for isotopic multicurves."""
    return tuple(sorted(tuple(s * x for x in component_class(m.tri, c))
                        for c, s in zip(m.components, m.orientations)))


def candidates(tri: Triangulation, alpha: HomologyClass, weight_bound: int) -> list[NormalMulticurve]:
    """Every canonical normal multicurve of class ``alpha`` within the bound."""
    out = {}
    for w in kernels.enumerate_weights(kernels.flat_faces(tri), tri.n_edges, weight_bound):
        if not any(w):
            continue
        comps = trace(tri, w)
        if any(is_vertex_link(tri, c) for c in comps):
            continue
        classes = [component_class(tri, c) for c in comps]
        for signs in product((1, -1), repeat=len(comps)):
            total = [0] * len(alpha.coords)
            for s, cl in zip(signs, classes):
                for i, x in enumerate(cl):
                    total[i] += s * x
            if tuple(total) != alpha.coords:
                continue
            m = canonicalize(tri, w, signs)
            out[m.key] = m
    return sorted(out.values(), key=lambda m: m.sort_key)


def enumerate_vertices(tri: Triangulation, alpha: HomologyClass, weight_bound: int,
                       marked: bool = False) -> list[NormalMulticurve]:
    if alpha.is_zero():
        raise PreconditionError("alpha must be a nontrivial class")
    if alpha.genus != tri.genus:
        raise PreconditionError(f"alpha has genus {alpha.genus}, surface has genus {tri.genus}")
    if weight_bound < 0:
        raise PreconditionError("weight bound must be non-negative")
    cands = candidates(tri, alpha, weight_bound)
    if marked:
        return cands
    # keep the first (least) member of every isotopy class
    reps: dict[tuple, list[NormalMulticurve]] = defaultdict(list)
    out = []
    for m in cands:
        bucket = reps[_oriented_invariant(m)]
        if any(is_isotopic(r, m) for r in bucket):
            continue
        bucket.append(m)
        out.append(m)
    return out


@dataclass
class ComplexSlice:
    tri: Triangulation
    alpha: HomologyClass
    weight_bound: int
    vertices: list[NormalMulticurve]
    marked: bool = False
    _index: dict = field(default_factory=dict, repr=False)
    _adj: dict = field(default_factory=dict, repr=False)
    _disjoint: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {m.key: i for i, m in enumerate(self.vertices)}

    @classmethod
    def build(cls, tri: Triangulation, alpha: HomologyClass, weight_bound: int,
              marked: bool = False) -> "ComplexSlice":
        return cls(tri, alpha, weight_bound, enumerate_vertices(tri, alpha, weight_bound, marked), marked)

    def __len__(self):
        return len(self.vertices)

    def index(self, m: NormalMulticurve) -> int:
        """Position of ``m`` (or of its isotopy-class representative)."""
        i = self._index.get(m.key)
        if i is not None:
            return i
        if not self.marked and homology_class(m) == self.alpha:
            for j, v in enumerate(self.vertices):
                if v.n_components == m.n_components and is_isotopic(v, m):
                    self._index[m.key] = j
                    return j
        raise PreconditionError(f"{m!r} is not a vertex of this slice")

    def disjoint(self, i: int, j: int) -> bool:
        """Whether vertices ``i`` and ``j`` have disjoint representatives."""
        key = (i, j) if i <= j else (j, i)
        hit = self._disjoint.get(key)
        if hit is None:
            u, v = self.vertices[key[0]], self.vertices[key[1]]
            hit = minimal_position(u, v, self.marked).crossing_count == 0
            self._disjoint[key] = hit
        return hit

    def neighbours(self, i: int) -> list[int]:
        hit = self._adj.get(i)
        if hit is None:
            others = [j for j in range(len(self.vertices)) if j != i]
            workers = thread_count()
            if workers > 1 and len(others) > PARALLEL_MIN:
                with ThreadPoolExecutor(workers) as pool:
                    flags = list(pool.map(lambda j: self.disjoint(i, j), others))
            else:
                flags = [self.disjoint(i, j) for j in others]
            hit = [j for j, ok in zip(others, flags) if ok]
            self._adj[i] = hit
        return hit

    def adjacency_matrix(self):
        import numpy as np
        n = len(self.vertices)
        a = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in self.neighbours(i):
                a[i, j] = True
        return a

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self.vertices)) for j in self.neighbours(i) if i < j]

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "genus": self.tri.genus, "alpha": self.alpha.to_json(),
                "weight_bound": self.weight_bound, "marked": self.marked,
                "vertices": [m.to_json() for m in self.vertices],
                "edges": [list(e) for e in self.edges()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass
class DistanceResult:
    distance: int
    path: list[NormalMulticurve]
    weight_bound: int


def bfs_tree(sl: ComplexSlice, source: int) -> dict[int, int]:
    """Parent pointers of a breadth-first search from ``source``."""
    parent = {source: source}
    q = deque([source])
    while q:
        u = q.popleft()
        for v in sl.neighbours(u):
            if v not in parent:
                parent[v] = u
                q.append(v)
    return parent


def bfs_distances(sl: ComplexSlice, source: int) -> dict[int, int]:
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        for v in sl.neighbours(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def hc_distance(sl: ComplexSlice, u: NormalMulticurve, v: NormalMulticurve) -> DistanceResult:
    """Shortest path between two vertices; raises when none lies in the slice."""
    i, j = sl.index(u), sl.index(v)
    parent = {i: i}
    q = deque([i])
    while q and j not in parent:
        x = q.popleft()
        for y in sl.neighbours(x):
            if y not in parent:
                parent[y] = x
                q.append(y)
    if j not in parent:
        raise UnreachableError(
            f"no path within weight bound {sl.weight_bound}; searched {len(parent)} vertices",
            searched=len(parent))
    path = [j]
    while path[-1] != i:
        path.append(parent[path[-1]])
    path.reverse()
    return DistanceResult(len(path) - 1, [sl.vertices[k] for k in path], sl.weight_bound)
