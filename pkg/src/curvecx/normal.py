"""Oriented multicurves as normal curves in the standard triangulation.

A multicurve is stored by its normal coordinates (one weight per edge) plus
one orientation sign per traced component. Components are described by the
cyclic sequence of corner arcs they run through; a step is
``(face, corner, sense)``. Corner ``k`` of a face joins slot ``k`` to slot
``k + 1`` and ``sense`` is ``+1`` when the arc is run in that direction.

The canonical traced direction of a component is the one whose step sequence,
rotated to its lexicographically least form, is smaller. Orientation signs
are relative to that direction. Normal coordinates with these signs determine
a multicurve up to isotopy in the surface minus the triangulation's vertex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

from . import kernels
from .arrangement import Arrangement, CurveSystem, Passage, build
from .errors import (EssentialnessError, InvalidNormalCoordinatesError,
                     MismatchedTriangulationError)
from .triangulation import Triangulation, standard_triangulation

Step = tuple[int, int, int]

SCHEMA = "curvecx/multicurve@1"


def _least_rotation(seq: Sequence) -> tuple:
    n = len(seq)
    if n == 0:
        return ()
    doubled = list(seq) + list(seq)
    best = min(range(n), key=lambda i: doubled[i:i + n])
    return tuple(doubled[best:best + n])


@dataclass(frozen=True)
class Component:
    """One traced component, in canonical direction."""
    steps: tuple[Step, ...]
    passages: tuple[Passage, ...]

    @property
    def key(self) -> tuple:
        return (len(self.steps), self.steps)

    def edge_weights(self, n_edges: int, faces) -> list[int]:
        w = [0] * n_edges
        for p in self.passages:
            w[faces[p.face][p.slot_out][0]] += 1
        return w

    def render(self) -> str:
        return " ".join(f"f{f}c{c}{'+' if s > 0 else '-'}" for f, c, s in self.steps)


def validate(tri: Triangulation, weights: Sequence[int]) -> tuple[int, ...]:
    """Check the matching conditions; return the weights as a tuple."""
    if len(weights) != tri.n_edges:
        raise InvalidNormalCoordinatesError(
            f"expected {tri.n_edges} weights, got {len(weights)}")
    w = tuple(int(x) for x in weights)
    if any(x < 0 for x in w):
        raise InvalidNormalCoordinatesError("weights must be non-negative")
    for f, face in enumerate(tri.faces):
        a, b, c = (w[e] for e, _ in face)
        if (a + b + c) % 2:
            raise InvalidNormalCoordinatesError(
                f"parity violated in face {f}: weights {a}, {b}, {c} have odd sum")
        for k, n in enumerate(((a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2)):
            if n < 0:
                raise InvalidNormalCoordinatesError(
                    f"negative corner count {n} at corner {k} of face {f}")
    return w


def _canonical_component(raw) -> Component:
    fwd = [(f, c, s) for f, c, s, *_ in raw]
    rev = [(f, c, -s) for f, c, s in reversed(fwd)]
    cf, cr = _least_rotation(fwd), _least_rotation(rev)
    if cf <= cr:
        passages = tuple(Passage(f, ki, ti, ko, to) for f, _, _, ki, ti, ko, to in raw)
        return Component(cf, passages)
    passages = tuple(Passage(f, ko, to, ki, ti) for f, _, _, ki, ti, ko, to in reversed(raw))
    return Component(cr, passages)


def trace(tri: Triangulation, weights: Sequence[int]) -> list[Component]:
    """Components of a valid normal curve, sorted by ``(length, steps)``.

    Parallel copies keep the order in which tracing met them.
    """
    w = validate(tri, weights)
    raw = kernels.trace_components(kernels.flat_faces(tri), list(w))
    comps = [_canonical_component(r) for r in raw]
    order = sorted(range(len(comps)), key=lambda i: (comps[i].key, i))
    return [comps[i] for i in order]


def is_vertex_link(tri: Triangulation, comp: Component) -> bool:
    return all(x == 2 for x in comp.edge_weights(tri.n_edges, tri.faces))


@dataclass(frozen=True, eq=False)
class NormalMulticurve:
    """Canonical oriented multicurve.

    ``orientations[i]`` orients ``components[i]`` relative to its canonical
    traced direction. Within a block of parallel copies signs are sorted, so
    equal values describe the same oriented multicurve.
    """
    tri: Triangulation
    weights: tuple[int, ...]
    components: tuple[Component, ...]
    orientations: tuple[int, ...]

    @property
    def key(self) -> tuple:
        return (self.weights, tuple((c.steps, s) for c, s in zip(self.components, self.orientations)))

    def __eq__(self, other):
        if not isinstance(other, NormalMulticurve):
            return NotImplemented
        return self.tri == other.tri and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"NormalMulticurve(weights={list(self.weights)}, orientations={list(self.orientations)})"

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def sort_key(self) -> tuple:
        return (self.total_weight, self.key)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @cached_property
    def has_parallel_same_orientation(self) -> bool:
        """True when two components are parallel and equally oriented."""
        seen = set()
        for c, s in zip(self.components, self.orientations):
            if (c.steps, s) in seen:
                return True
            seen.add((c.steps, s))
        return False

    def reversed(self) -> "NormalMulticurve":
        return canonicalize(self.tri, self.weights, [-s for s in self.orientations])

    def curve_system(self) -> CurveSystem:
        return CurveSystem(self.weights, [list(c.passages) for c in self.components],
                           list(self.orientations))

    def to_json(self) -> dict[str, Any]:
        return {"schema": SCHEMA, "genus": self.tri.genus,
                "weights": list(self.weights), "orientations": list(self.orientations)}

    @classmethod
    def from_json(cls, data: dict[str, Any], tri: Triangulation | None = None) -> "NormalMulticurve":
        if tri is None:
            tri = standard_triangulation(int(data["genus"]))
        return canonicalize(tri, data["weights"], data.get("orientations", []))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def render(self) -> str:
        lines = [f"weights {list(self.weights)}"]
        for c, s in zip(self.components, self.orientations):
            lines.append(f"  {'+' if s > 0 else '-'} {c.render()}")
        return "\n".join(lines)


def canonicalize(tri: Triangulation, weights: Sequence[int],
                 orientations: Sequence[int]) -> NormalMulticurve:
    """Build the canonical multicurve; ``orientations`` follow :func:`trace` order."""
    comps = trace(tri, weights)
    signs = [int(s) for s in orientations]
    if len(signs) != len(comps):
        raise InvalidNormalCoordinatesError(
            f"{len(comps)} components but {len(signs)} orientation signs")
    if any(s not in (1, -1) for s in signs):
        raise InvalidNormalCoordinatesError("orientation signs must be +1 or -1")
    for i, c in enumerate(comps):
        if is_vertex_link(tri, c):
            raise EssentialnessError(f"component {i} is the vertex link and bounds a disc")
    # sort signs inside each block of parallel copies
    out_signs = list(signs)
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j].steps == comps[i].steps:
            j += 1
        out_signs[i:j] = sorted(signs[i:j])
        i = j
    return NormalMulticurve(tri, tuple(int(x) for x in weights), tuple(comps), tuple(out_signs))


def from_components(tri: Triangulation, parts: Sequence[tuple[NormalMulticurve, int]]) -> NormalMulticurve:
    """Disjoint union of normal multicurves whose sum of weights is normal and
    traces to the union of their components (they must be disjoint as drawn)."""
    weights = [0] * tri.n_edges
    wanted: dict[tuple, list[int]] = {}
    for m, sign in parts:
        for i, x in enumerate(m.weights):
            weights[i] += x
        for c, s in zip(m.components, m.orientations):
            wanted.setdefault(c.steps, []).append(s * sign)
    comps = trace(tri, weights)
    signs = []
    for c in comps:
        bucket = wanted.get(c.steps)
        if not bucket:
            raise InvalidNormalCoordinatesError("parts are not disjoint normal curves")
        signs.append(bucket.pop())
    return canonicalize(tri, weights, signs)


def _check_same(m1: NormalMulticurve, m2: NormalMulticurve):
    if m1.tri != m2.tri:
        raise MismatchedTriangulationError("multicurves live on different triangulations")


def superimpose(m1: NormalMulticurve, m2: NormalMulticurve, interleaving=None) -> Arrangement:
    _check_same(m1, m2)
    return build(m1.tri, m1.curve_system(), m2.curve_system(), interleaving)


def minimal_position(m1: NormalMulticurve, m2: NormalMulticurve, marked: bool = False) -> Arrangement:
    """Superimpose and remove bigons until none is left.

    With ``marked`` the triangulation vertex is a puncture and bigons around it
    are kept, giving minimal position in the surface minus the vertex.
    """
    arr = superimpose(m1, m2)
    arr.reduce(through_vertex=not marked)
    return arr


def geometric_intersection(m1: NormalMulticurve, m2: NormalMulticurve, marked: bool = False) -> int:
    return minimal_position(m1, m2, marked).crossing_count


def algebraic_intersection(m1: NormalMulticurve, m2: NormalMulticurve) -> int:
    """Signed count of crossings, ``+1`` where the tangents of ``m1`` and ``m2``
    form a positive frame."""
    return superimpose(m1, m2).algebraic_count()


def basis_curve(tri: Triangulation, letter: str, k: int) -> NormalMulticurve:
    """The oriented curve ``a_k`` or ``b_k`` (``k`` from 1) of the symplectic basis.

    ``a_k`` runs across the polygon between the two ``b_k`` sides and ``b_k``
    between the two ``a_k`` sides; orientations give classes ``e(a_k)`` and
    ``e(b_k)``.
    """
    from .homology import class_of_components  # local: homology imports this module
    from .triangulation import polygon_chord_weights

    if not 1 <= k <= tri.genus:
        raise ValueError(f"index {k} out of range for genus {tri.genus}")
    base = 4 * (k - 1)
    if letter == "a":
        w = polygon_chord_weights(tri, base + 1, base + 3)
        target = 2 * (k - 1)
    elif letter == "b":
        w = polygon_chord_weights(tri, base, base + 2)
        target = 2 * (k - 1) + 1
    else:
        raise ValueError(f"letter must be 'a' or 'b', got {letter!r}")
    m = canonicalize(tri, w, [1])
    cls = class_of_components(m)
    sign = cls[target]
    if abs(sign) != 1 or sum(abs(x) for x in cls) != 1:
        raise AssertionError(f"basis curve {letter}{k} has class {cls}")
    return m if sign == 1 else m.reversed()
