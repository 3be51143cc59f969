"""One-vertex triangulations of closed oriented surfaces.

The surface of genus ``g`` is modelled as the ``4g``-gon with side word
``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1``, cut into triangles by the
diagonals from polygon vertex ``P0``. Every polygon vertex is glued to the
same point, so the triangulation has a single vertex.

Edge numbering is fixed: edge ``2k`` is the side ``a_{k+1}``, edge ``2k + 1``
is ``b_{k+1}``, and edge ``2g + (j - 2)`` is the diagonal from ``P0`` to
``Pj`` (``2 <= j <= 4g - 2``). Every edge carries a reference direction:
sides point along their letter, diagonals point away from ``P0``.

A face is a triple of *slots* ``(edge, dir)`` listed counterclockwise; ``dir``
is ``+1`` when the face traverses the edge along its reference direction,
so the face lies to the left of a ``+1`` slot.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from .errors import InvalidTriangulationError

Slot = tuple[int, int]

SCHEMA = "curvecx/triangulation@1"


def _side_letter(genus: int, i: int) -> Slot:
    """Edge and direction of polygon side ``i`` (from ``Pi`` to ``Pi+1``)."""
    k, r = divmod(i, 4)
    return (2 * k + (r % 2), 1 if r < 2 else -1)


@dataclass(frozen=True)
class Triangulation:
    genus: int
    edges: tuple[int, ...]
    faces: tuple[tuple[Slot, Slot, Slot], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))
        object.__setattr__(
            self, "faces",
            tuple(tuple((int(e), int(d)) for e, d in f) for f in self.faces))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def occurrences(self) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
        """For each edge, ``((face, slot) with dir +1, (face, slot) with dir -1)``."""
        plus: dict[int, tuple[int, int]] = {}
        minus: dict[int, tuple[int, int]] = {}
        for f, face in enumerate(self.faces):
            for k, (e, d) in enumerate(face):
                (plus if d == 1 else minus)[e] = (f, k)
        return tuple((plus[e], minus[e]) for e in self.edges)

    @cached_property
    def vertex_count(self) -> int:
        # ports: 2e is the tail of edge e, 2e + 1 its head
        parent = list(range(2 * self.n_edges))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for face in self.faces:
            for k in range(3):
                e0, d0 = face[k - 1]
                e1, d1 = face[k]
                end_prev = 2 * e0 + (1 if d0 == 1 else 0)
                start_here = 2 * e1 + (0 if d1 == 1 else 1)
                parent[find(end_prev)] = find(start_here)
        return len({find(x) for x in range(2 * self.n_edges)})

    @property
    def is_standard(self) -> bool:
        return self == standard_triangulation(self.genus)

    def check(self) -> list[str]:
        """Return a list of violated invariants (empty when valid)."""
        problems = []
        if self.genus < 2:
            problems.append(f"genus {self.genus} < 2")
        if sorted(self.edges) != list(range(len(self.edges))):
            problems.append("edge ids must be 0..E-1")
        count: dict[Slot, int] = {}
        for face in self.faces:
            if len(face) != 3:
                problems.append("every face needs three slots")
                return problems
            for e, d in face:
                if d not in (1, -1):
                    problems.append(f"bad direction {d} on edge {e}")
                count[(e, d)] = count.get((e, d), 0) + 1
        for e in self.edges:
            if count.get((e, 1), 0) != 1 or count.get((e, -1), 0) != 1:
                problems.append(
                    f"edge {e} must appear once with each direction "
                    f"(got +{count.get((e, 1), 0)}, -{count.get((e, -1), 0)})")
        if problems:
            return problems
        if euler_characteristic(self) != 2 - 2 * self.genus:
            problems.append(
                f"V - E + F = {euler_characteristic(self)} != {2 - 2 * self.genus}")
        return problems

    def slot_gluing(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Map each slot ``(face, k)`` to the slot it is glued to."""
        glue = {}
        for plus, minus in self.occurrences:
            glue[plus] = minus
            glue[minus] = plus
        return glue

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "genus": self.genus,
            "edges": list(self.edges),
            "faces": [[{"edge": e, "dir": d} for e, d in face] for face in self.faces],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Triangulation":
        if data.get("schema", SCHEMA) != SCHEMA:
            raise InvalidTriangulationError(f"unknown schema {data.get('schema')!r}")
        try:
            tri = cls(
                genus=int(data["genus"]),
                edges=tuple(data["edges"]),
                faces=tuple(tuple((s["edge"], s["dir"]) for s in face)
                            for face in data["faces"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidTriangulationError(f"malformed triangulation: {exc}") from exc
        problems = tri.check()
        if problems:
            raise InvalidTriangulationError("; ".join(problems))
        return tri

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    # -- data specific to the standard polygon model ------------------------

    @cached_property
    def polygon_sides(self) -> tuple[Slot, ...]:
        """``(edge, dir)`` of each of the ``4g`` polygon sides, in order."""
        return tuple(_side_letter(self.genus, i) for i in range(4 * self.genus))


def standard_triangulation(genus: int) -> Triangulation:
    """The one-vertex triangulation of the ``4g``-gon fanned from ``P0``."""
    if genus < 2:
        raise InvalidTriangulationError(f"genus must be at least 2, got {genus}")
    n = 4 * genus

    def diagonal(j: int) -> int:
        return 2 * genus + (j - 2)

    faces = []
    for j in range(1, n - 1):
        first = _side_letter(genus, 0) if j == 1 else (diagonal(j), 1)
        middle = _side_letter(genus, j)
        last = _side_letter(genus, n - 1) if j + 1 == n - 1 else (diagonal(j + 1), -1)
        faces.append((first, middle, last))
    return Triangulation(genus=genus, edges=tuple(range(6 * genus - 3)), faces=tuple(faces))


def euler_characteristic(tri: Triangulation) -> int:
    return tri.vertex_count - tri.n_edges + tri.n_faces


def vertex_link_weights(tri: Triangulation) -> tuple[int, ...]:
    """Normal coordinates of the curve encircling the vertex: 2 on every edge."""
    return (2,) * tri.n_edges


def polygon_chord_weights(tri: Triangulation, i: int, j: int) -> tuple[int, ...]:
    """Weights of the closed curve running straight across the polygon from the
    midpoint of side ``i`` to the midpoint of side ``j``.

    Sides ``i`` and ``j`` must carry the same edge. The curve crosses that edge
    once and each diagonal ``P0 Pm`` with ``i < m <= j``.
    """
    n = 4 * tri.genus
    i, j = sorted((i, j))
    sides = tri.polygon_sides
    if sides[i][0] != sides[j][0]:
        raise ValueError(f"sides {i} and {j} are not paired")
    w = [0] * tri.n_edges
    w[sides[i][0]] = 1
    for m in range(max(i + 1, 2), min(j, n - 2) + 1):
        w[2 * tri.genus + (m - 2)] = 1
    return tuple(w)
