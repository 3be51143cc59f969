"""Superimposition of two curve systems and bigon removal.

Two normal multicurves ``a`` and ``b`` are drawn in the same triangulation.
On every edge the points of both curves are merged according to an
*interleaving*; inside each triangle every passage of a curve becomes a chord,
and an ``a`` chord crosses a ``b`` chord exactly when their endpoints
interleave on the triangle boundary.

The drawing is cut into *pieces* (faces of the chord arrangement inside each
triangle). Pieces glued across edge segments form the complementary
*regions* of ``a`` union ``b``; the Euler characteristic of a region is
``pieces - glued segments + [region holds the vertex]``.

What survives the triangle data is the curve graph: crossings, the cyclic
order of crossings along every component, and for every side of every curve
edge the region it faces. Bigon removal works on that graph alone.

Sides are ``+1`` (left of the traced direction) and ``-1`` (right).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import kernels

LEFT, RIGHT = 1, -1
A, B = 0, 1


@dataclass
class Passage:
    """One run of a component through a face, in traced direction."""
    face: int
    slot_in: int
    pos_in: int
    slot_out: int
    pos_out: int


@dataclass
class CurveSystem:
    """Geometry of one multicurve: weights plus per-component passages.

    ``signs`` orient the components relative to their traced direction.
    """
    weights: tuple[int, ...]
    passages: list[list[Passage]]
    signs: list[int]


def edge_key(fam: int, start, comp: int):
    """Curve edge identifier: the crossing it starts at, or the component when
    the component crosses nothing."""
    return (fam, start) if start is not None else (fam, ("loop", comp))


@dataclass
class Arrangement:
    genus: int
    # crossing id -> (a component, b component, sign of (a, b) tangent frame)
    crossings: dict = field(default_factory=dict)
    nxt: dict = field(default_factory=dict)
    prv: dict = field(default_factory=dict)
    comp_of: dict = field(default_factory=dict)
    # (edge key, side) -> region id (not necessarily a root)
    side_region: dict = field(default_factory=dict)
    parent: list = field(default_factory=list)
    chi: list = field(default_factory=list)
    has_vertex: list = field(default_factory=list)
    signs: tuple = ((), ())
    n_components: tuple = (0, 0)
    # (face, region at creation) for every piece of every triangle
    pieces: list = field(default_factory=list)

    # -- regions -------------------------------------------------------------

    def find(self, r: int) -> int:
        parent = self.parent
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    def new_region(self, chi: int, has_vertex: bool) -> int:
        self.parent.append(len(self.parent))
        self.chi.append(chi)
        self.has_vertex.append(has_vertex)
        return len(self.parent) - 1

    def glue(self, r1: int, r2: int) -> int:
        """Glue two regions along one boundary arc."""
        r1, r2 = self.find(r1), self.find(r2)
        if r1 == r2:
            self.chi[r1] -= 1
            return r1
        lo, hi = min(r1, r2), max(r1, r2)
        self.parent[hi] = lo
        self.chi[lo] = self.chi[lo] + self.chi[hi] - 1
        self.has_vertex[lo] = self.has_vertex[lo] or self.has_vertex[hi]
        return lo

    def region(self, key, side: int) -> int:
        return self.find(self.side_region[(key, side)])

    def regions(self) -> dict[int, list]:
        """Root region -> sorted list of the curve sides facing it."""
        out: dict[int, list] = {}
        for (key, side), r in self.side_region.items():
            out.setdefault(self.find(r), []).append((key, side))
        for sides in out.values():
            sides.sort(key=repr)
        return out

    def all_regions(self) -> list[int]:
        return sorted({self.find(r) for r in range(len(self.parent))})

    # -- counts --------------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def algebraic_count(self) -> int:
        sa, sb = self.signs
        return sum(sign * sa[ca] * sb[cb] for ca, cb, sign in self.crossings.values())

    def euler_check(self) -> bool:
        """Regions' Euler characteristics sum to chi(S) + #crossings."""
        total = sum(self.chi[r] for r in self.all_regions())
        return total == 2 - 2 * self.genus + self.crossing_count

    # -- bigons --------------------------------------------------------------

    def bigons(self, through_vertex: bool = True) -> list[tuple[int, list]]:
        """Disc regions bounded by one ``a`` edge and one ``b`` edge."""
        found = []
        for r, sides in sorted(self.regions().items()):
            if self.chi[r] != 1 or len(sides) != 2:
                continue
            if self.has_vertex[r] and not through_vertex:
                continue
            fams = sorted(key[0] for key, _ in sides)
            if fams != [A, B]:
                continue
            if any(isinstance(key[1], tuple) for key, _ in sides):
                continue
            found.append((r, sides))
        return found

    def remove_bigon(self, sides) -> None:
        """Isotope the ``a`` edge of a bigon across it, deleting two crossings.

        With ``D`` the bigon, ``X`` the region across its ``a`` edge, ``Y`` the
        region across its ``b`` edge and ``Z1``, ``Z2`` the regions in the
        corners opposite ``D`` at its two crossings: ``D`` merges into ``X``,
        and a thin strip left along ``b`` joins ``Z1`` to ``Z2``.
        """
        (ka, sa), (kb, sb) = sorted(sides, key=lambda s: s[0][0])
        p = ka[1]
        q = self.nxt[(A, p)]
        r0 = kb[1]
        r1 = self.nxt[(B, r0)]
        if {r0, r1} != {p, q} or p == q:
            raise AssertionError("region is not a bigon between two crossings")
        comp_a = self.comp_of[(A, p)]
        comp_b = self.comp_of[(B, p)]

        before_a, after_a = self.prv[(A, p)], self.nxt[(A, q)]
        before_b, after_b = self.prv[(B, r0)], self.nxt[(B, r1)]
        key_a_prev, key_a_next = (A, before_a), (A, q)
        key_b_prev, key_b_next = (B, before_b), (B, r1)

        D = self.region(ka, sa)
        X = self.region(ka, -sa)
        Y = self.region(kb, -sb)
        Z1 = self.region(key_a_prev, -sa)
        Z2 = self.region(key_a_next, -sa)
        assert self.region(key_a_prev, sa) == Y == self.region(key_a_next, sa)
        assert self.region(key_b_prev, sb) == X == self.region(key_b_next, sb)
        assert {self.region(key_b_prev, -sb), self.region(key_b_next, -sb)} == {Z1, Z2}

        a_loop = before_a == q
        b_loop = before_b in (p, q)
        new_a = edge_key(A, None if a_loop else before_a, comp_a)
        new_b = edge_key(B, None if b_loop else before_b, comp_b)

        for key in (ka, key_a_prev, key_a_next, kb, key_b_prev, key_b_next):
            self.side_region.pop((key, LEFT), None)
            self.side_region.pop((key, RIGHT), None)

        X2 = self.glue(X, D)
        Z = self.glue(self.glue(self.new_region(1, False), Z1), Z2)
        self.side_region[(new_a, sa)] = self.find(Y)
        self.side_region[(new_a, -sa)] = Z
        self.side_region[(new_b, sb)] = self.find(X2)
        self.side_region[(new_b, -sb)] = Z

        for fam, before, after, loop in ((A, before_a, after_a, a_loop),
                                         (B, before_b, after_b, b_loop)):
            if not loop:
                self.nxt[(fam, before)] = after
                self.prv[(fam, after)] = before
            for x in (p, q):
                del self.nxt[(fam, x)]
                del self.prv[(fam, x)]
                del self.comp_of[(fam, x)]
        del self.crossings[p]
        del self.crossings[q]

    def reduce(self, through_vertex: bool = True) -> int:
        """Remove bigons until none is left; returns the number removed."""
        removed = 0
        while True:
            found = self.bigons(through_vertex)
            if not found:
                return removed
            self.remove_bigon(found[0][1])
            removed += 1

    # -- disjoint systems ----------------------------------------------------

    def loop_sides(self) -> dict[tuple[int, int], tuple[int, int]]:
        """For a crossing-free arrangement: ``(fam, comp) -> (left, right)`` regions."""
        if self.crossings:
            raise ValueError("arrangement still has crossings")
        out = {}
        for fam in (A, B):
            for comp in range(self.n_components[fam]):
                key = edge_key(fam, None, comp)
                out[(fam, comp)] = (self.region(key, LEFT), self.region(key, RIGHT))
        return out


def default_interleaving(wa: Sequence[int], wb: Sequence[int]) -> list[list[int]]:
    """Per edge, the family label of each point along the reference direction:
    all ``a`` points first, then all ``b`` points."""
    return [[A] * x + [B] * y for x, y in zip(wa, wb)]


def build(tri, a: CurveSystem, b: CurveSystem,
          interleaving: Optional[Iterable[Sequence[int]]] = None) -> Arrangement:
    """Superimpose ``a`` and ``b`` and compute crossings and regions."""
    systems = (a, b)
    n_edges = tri.n_edges
    if interleaving is None:
        interleaving = default_interleaving(a.weights, b.weights)
    interleaving = [list(x) for x in interleaving]
    # global position along the reference direction of each (fam, edge, index)
    global_pos: list[list[list[int]]] = [[[] for _ in range(n_edges)] for _ in (A, B)]
    for e in range(n_edges):
        labels = interleaving[e]
        if labels.count(A) != a.weights[e] or labels.count(B) != b.weights[e]:
            raise ValueError(f"interleaving on edge {e} does not match the weights")
        for g, fam in enumerate(labels):
            global_pos[fam][e].append(g)
    total_w = [a.weights[e] + b.weights[e] for e in range(n_edges)]

    faces = tri.faces
    # perimeter layout of every face: node index of (slot, traversal position)
    slot_offset = []
    perim_size = []
    for face in faces:
        offs = []
        n = 0
        for e, _ in face:
            offs.append(n + 1)  # the corner node comes first
            n += 1 + total_w[e]
        slot_offset.append(offs)
        perim_size.append(n)

    def perim_node(f: int, fam: int, slot: int, fpos: int) -> int:
        e, d = faces[f][slot]
        w_fam = systems[fam].weights[e]
        idx = fpos if d == 1 else w_fam - 1 - fpos
        g = global_pos[fam][e][idx]
        t = g if d == 1 else total_w[e] - 1 - g
        return slot_offset[f][slot] + t

    # chords per face
    chords: list[list[tuple]] = [[] for _ in faces]  # (u, w, fam, comp, passage index)
    chord_id: dict[tuple[int, int, int], tuple[int, int]] = {}
    for fam, system in enumerate(systems):
        for comp, passages in enumerate(system.passages):
            for pi, p in enumerate(passages):
                u = perim_node(p.face, fam, p.slot_in, p.pos_in)
                w = perim_node(p.face, fam, p.slot_out, p.pos_out)
                chord_id[(fam, comp, pi)] = (p.face, len(chords[p.face]))
                chords[p.face].append((u, w, fam, comp, pi))

    arr = Arrangement(genus=tri.genus)
    arr.signs = (tuple(a.signs), tuple(b.signs))
    arr.n_components = (len(a.passages), len(b.passages))

    # crossings, and the order of crossings along every chord
    along: list[list[list[int]]] = []  # face -> chord -> crossing ids in chord direction
    local: list[tuple[int, list]] = []  # face -> (first global id, local crossings)
    next_x = 0
    for f, fchords in enumerate(chords):
        us = [c[0] for c in fchords]
        ws = [c[1] for c in fchords]
        fams = [c[2] for c in fchords]
        xs, al = kernels.chord_crossings(perim_size[f], us, ws, fams)
        for i, j, sign in xs:
            arr.crossings[next_x] = (fchords[i][3], fchords[j][3], sign)
            next_x += 1
        base = next_x - len(xs)
        along.append([[base + x for x in lst] for lst in al])
        local.append((base, xs, al))

    # events along each component, and the curve edge of every chord piece
    piece_edge: dict[tuple[int, int, int], object] = {}  # (face, chord, piece) -> edge key
    for fam, system in enumerate(systems):
        for comp, passages in enumerate(system.passages):
            events = []
            for pi in range(len(passages)):
                f, c = chord_id[(fam, comp, pi)]
                events.extend(along[f][c])
            n = len(events)
            for i, x in enumerate(events):
                arr.nxt[(fam, x)] = events[(i + 1) % n]
                arr.prv[(fam, x)] = events[i - 1]
                arr.comp_of[(fam, x)] = comp
            seen = 0
            for pi in range(len(passages)):
                f, c = chord_id[(fam, comp, pi)]
                xs = along[f][c]
                for r in range(len(xs) + 1):
                    if n == 0:
                        key = edge_key(fam, None, comp)
                    else:
                        k = (seen + r - 1) % n
                        key = edge_key(fam, events[k], comp)
                    piece_edge[(f, c, r)] = key
                seen += len(xs)

    # faces of each triangle, glued into regions
    seg_owner: dict[tuple[int, int], int] = {}
    for f, face in enumerate(faces):
        P = perim_size[f]
        fchords = chords[f]
        base, xs, al = local[f]
        corners = tuple(slot_offset[f][k] - 1 for k in range(3))
        cycles = kernels.face_cycles(P, corners, [c[0] for c in fchords],
                                     [c[1] for c in fchords], al, xs)
        for perim, sides in cycles:
            region = arr.new_region(0, False)
            arr.pieces.append((f, region))
            for c, r, side in sides:
                arr.side_region[(piece_edge[(f, c, r)], side)] = region
            for u in perim:
                if (u + 1) % P in corners:
                    arr.has_vertex[region] = True
                # segment on the slot that starts at or contains u
                k = 2 if u >= corners[2] else (1 if u >= corners[1] else 0)
                e, d = face[k]
                j = u - corners[k]
                seg = (e, j if d == 1 else total_w[e] - j)
                if seg in seg_owner:
                    region = arr.glue(region, seg_owner.pop(seg))
                else:
                    seg_owner[seg] = region
            arr.chi[arr.find(region)] += 1
    if seg_owner:
        raise AssertionError(f"unglued segments: {sorted(seg_owner)[:5]}")
    for r in range(len(arr.parent)):
        if arr.find(r) == r and arr.has_vertex[r]:
            arr.chi[r] += 1
    return arr
