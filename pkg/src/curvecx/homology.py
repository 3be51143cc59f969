"""Integral homology of oriented multicurves and bounding 2-chains.

Classes are written in the basis ``(a1, b1, ..., ag, bg)`` where ``a_k`` and
``b_k`` are the polygon-side loops. The coefficient of ``a_k`` is the signed
count of crossings with the ``b_k`` edge and the coefficient of ``b_k`` is
minus the count against the ``a_k`` edge, since ``i(a_k, b_k) = 1``.

A bounding chain for ``m2 - m1`` (disjoint, homologous) is an integer weight
on the complementary regions of ``m1`` union ``m2`` that jumps by one across
every curve: the region on the left of an ``m2`` curve is one higher than the
region on its right, and the other way round for ``m1``. Its boundary, with
regions oriented by the surface, is then exactly ``m2 - m1``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field


from .arrangement import A, B, LEFT, RIGHT, Arrangement
from .errors import (DegeneratePieceError, MismatchedTriangulationError,
                     NotNullHomologousError, PreconditionError)
from .normal import NormalMulticurve, minimal_position


@dataclass(frozen=True)
class HomologyClass:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if len(self.coords) % 2:
            raise ValueError("homology coordinates come in (a, b) pairs")

    @property
    def genus(self) -> int:
        return len(self.coords) // 2

    @classmethod
    def zero(cls, genus: int) -> "HomologyClass":
        return cls((0,) * (2 * genus))

    @classmethod
    def basis(cls, genus: int, letter: str, k: int) -> "HomologyClass":
        c = [0] * (2 * genus)
        c[2 * (k - 1) + (0 if letter == "a" else 1)] = 1
        return cls(tuple(c))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coords))

    def __mul__(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * x for x in self.coords))

    __rmul__ = __mul__

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def intersection_form(c1: HomologyClass, c2: HomologyClass) -> int:
    """Algebraic intersection of two classes, ``i(a_k, b_k) = 1``."""
    x, y = c1.coords, c2.coords
    return sum(x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k] for k in range(len(x) // 2))


def _edge_pairing(tri, comp) -> list[int]:
    """Signed crossings of one traced component with each side edge."""
    out = [0] * (2 * tri.genus)
    for p in comp.passages:
        e, d = tri.faces[p.face][p.slot_out]
        if e < 2 * tri.genus:
            out[e] += d
    return out


def component_class(tri, comp) -> tuple[int, ...]:
    """Class of a component in its traced direction."""
    pair = _edge_pairing(tri, comp)
    c = [0] * (2 * tri.genus)
    for k in range(tri.genus):
        c[2 * k] = pair[2 * k + 1]
        c[2 * k + 1] = -pair[2 * k]
    return tuple(c)


def class_of_components(m: NormalMulticurve) -> tuple[int, ...]:
    total = [0] * (2 * m.tri.genus)
    for comp, s in zip(m.components, m.orientations):
        for i, x in enumerate(component_class(m.tri, comp)):
            total[i] += s * x
    return tuple(total)


def homology_class(m: NormalMulticurve) -> HomologyClass:
    return HomologyClass(class_of_components(m))


# -- bounding chains ---------------------------------------------------------

@dataclass
class TwoChain:
    """Integer weights on the complementary regions of a disjoint pair.

    ``sides[(fam, comp)]`` gives the regions on the traced left and right of
    each curve (family ``0`` is ``m1``, ``1`` is ``m2``). ``face_weights``
    lists, per triangle, the weight of each piece of that triangle.
    """
    genus: int
    weights: dict[int, int]
    chi: dict[int, int]
    sides: dict[tuple[int, int], tuple[int, int]]
    signs: tuple[tuple[int, ...], tuple[int, ...]]
    face_weights: list[list[int]] = field(default_factory=list)

    @property
    def levels(self) -> list[int]:
        return sorted(set(self.weights.values()))

    @property
    def weight_range(self) -> tuple[int, int]:
        vals = self.weights.values()
        return (min(vals), max(vals))

    @property
    def is_simple(self) -> bool:
        lo, hi = self.weight_range
        return hi - lo <= 1

    def boundary(self) -> dict[tuple[int, int], int]:
        """Coefficient of every traced curve in the boundary of the chain."""
        return {key: self.weights[left] - self.weights[right]
                for key, (left, right) in self.sides.items()}

    def expected_boundary(self) -> dict[tuple[int, int], int]:
        """``m2 - m1`` written in the traced directions."""
        out = {}
        for fam, kappa in ((A, -1), (B, 1)):
            for comp, s in enumerate(self.signs[fam]):
                out[(fam, comp)] = kappa * s
        return out

    def regions_at(self, level: int) -> list[int]:
        return sorted(r for r, w in self.weights.items() if w == level)

    def to_json(self) -> dict:
        return {"schema": "curvecx/twochain@1", "face_weights": self.face_weights}


def _jump(fam: int, sign: int) -> int:
    """Weight on the traced left minus the traced right of one curve."""
    return sign if fam == B else -sign


def annulus_regions(arr: Arrangement, loop_sides) -> set[int]:
    """Regions that are annuli between two distinct curves."""
    touching = defaultdict(list)
    for curve, (left, right) in loop_sides.items():
        touching[left].append(curve)
        touching[right].append(curve)
    return {r for r, cs in touching.items()
            if arr.chi[r] == 0 and len(cs) == 2 and cs[0] != cs[1]}


def stacks(arr: Arrangement, loop_sides, annuli) -> list[list[tuple]]:
    """Maximal runs of parallel curves joined by annulus regions.

    Each run is a list ``[(curve, entry side), ...]`` ordered across the stack;
    annulus regions sit between consecutive entries.
    """
    by_region = defaultdict(list)
    for curve, (left, right) in loop_sides.items():
        by_region[left].append((curve, LEFT))
        by_region[right].append((curve, RIGHT))
    done = set()
    runs = []
    for curve in sorted(loop_sides):
        if curve in done:
            continue
        # walk to one end of the run
        cur, side = curve, LEFT
        seen = {curve}
        while True:
            reg = loop_sides[cur][0 if side == LEFT else 1]
            if reg not in annuli:
                break
            (other, oside), = [x for x in by_region[reg] if x[0] != cur]
            if other in seen:
                break  # the run closes up
            seen.add(other)
            cur, side = other, -oside
        # cur's ``side`` faces the outside; walk back in the other direction
        run = []
        entry = side
        while True:
            run.append((cur, entry))
            done.add(cur)
            exit_side = -entry
            reg = loop_sides[cur][0 if exit_side == LEFT else 1]
            if reg not in annuli:
                break
            (other, oside), = [x for x in by_region[reg] if x[0] != cur]
            if other in done:
                break
            cur, entry = other, oside
        runs.append(run)
    return runs


def _order_steps(steps: list[int], w_start: int, w_end: int, hi: int, flat: bool) -> list[int]:
    plus = steps.count(1)
    minus = steps.count(-1)
    if w_end > w_start or (w_end == w_start and (w_start < hi or flat)):
        first, second, n_first, n_second = 1, -1, plus, minus
    else:
        first, second, n_first, n_second = -1, 1, minus, plus
    out = []
    while n_first or n_second:
        if n_first:
            out.append(first)
            n_first -= 1
        if n_second:
            out.append(second)
            n_second -= 1
    return out


def _solve_weights(arr: Arrangement, loop_sides, jumps, annuli=frozenset()):
    """Propagate weights across curves; regions in ``annuli`` may be skipped."""
    adj = defaultdict(list)
    for curve, (left, right) in loop_sides.items():
        adj[right].append((left, jumps[curve]))
        adj[left].append((right, -jumps[curve]))
    regions = arr.all_regions()
    weight: dict[int, int] = {}
    start = regions[0]
    weight[start] = 0
    stack = [start]
    while stack:
        r = stack.pop()
        for s, d in adj[r]:
            if s not in weight:
                weight[s] = weight[r] + d
                stack.append(s)
            elif weight[s] != weight[r] + d:
                raise NotNullHomologousError("no integer chain has this boundary")
    if len(weight) != len(regions):
        raise AssertionError("complement of the curves is disconnected from itself")
    return weight


def bounding_chain(m1: NormalMulticurve, m2: NormalMulticurve, arrangement: Arrangement | None = None) -> TwoChain:
    """Chain with boundary ``m2 - m1`` for a disjoint homologous pair.

    Parallel curves are ordered inside their annular stacks so that the chain
    takes as few values as possible; in particular ``m - m`` bounds the
    annuli between the copies, at the upper level.
    """
    if m1.tri != m2.tri:
        raise MismatchedTriangulationError("multicurves live on different triangulations")
    if homology_class(m1) != homology_class(m2):
        raise NotNullHomologousError(
            f"classes differ: {homology_class(m2)} - {homology_class(m1)} != 0")
    arr = arrangement if arrangement is not None else minimal_position(m1, m2)
    if arr.crossing_count:
        raise PreconditionError(
            f"multicurves are not disjoint (intersection number {arr.crossing_count})")
    loop_sides = arr.loop_sides()
    signs = arr.signs
    jumps = {curve: _jump(curve[0], signs[curve[0]][curve[1]]) for curve in loop_sides}

    annuli = annulus_regions(arr, loop_sides)

    weight = _solve_weights(arr, loop_sides, jumps)
    runs = stacks(arr, loop_sides, annuli)
    outer = {r: w for r, w in weight.items() if r not in annuli}
    hi = max(outer.values()) if outer else 0
    flat = len(set(outer.values())) <= 1

    new_sides = dict(loop_sides)
    for run in runs:
        if len(run) < 2:
            continue
        first, entry = run[0]
        last, last_entry = run[-1]
        start_reg = loop_sides[first][0 if entry == LEFT else 1]
        end_reg = loop_sides[last][1 if last_entry == LEFT else 0]
        between = []
        for (c, e), (c2, _) in zip(run, run[1:]):
            between.append(loop_sides[c][1 if e == LEFT else 0])
        # jump met when crossing each curve from its entry side
        steps = {c: (-jumps[c] if e == LEFT else jumps[c]) for c, e in run}
        entry_of = dict(run)
        order = _order_steps(list(steps.values()), weight[start_reg], weight[end_reg], hi, flat)
        pool = {1: sorted(c for c in steps if steps[c] == 1),
                -1: sorted(c for c in steps if steps[c] == -1)}
        w = weight[start_reg]
        prev_reg = start_reg
        for i, st in enumerate(order):
            c = pool[st].pop(0)
            nxt_reg = between[i] if i < len(between) else end_reg
            w += st
            if i < len(between):
                weight[nxt_reg] = w
            # c now sits between prev_reg (entry side) and nxt_reg
            new_sides[c] = (prev_reg, nxt_reg) if entry_of[c] == LEFT else (nxt_reg, prev_reg)
            prev_reg = nxt_reg
        if w != weight[end_reg]:
            raise AssertionError("stack reordering changed the total jump")

    base = min(weight.values())
    weights = {r: w - base for r, w in weight.items()}
    chi = {r: arr.chi[r] for r in weights}
    face_weights: list[list[int]] = [[] for _ in range(len(m1.tri.faces))]
    for f, r in arr.pieces:
        face_weights[f].append(weights[arr.find(r)])
    chain = TwoChain(m1.tri.genus, weights, chi, new_sides, signs, face_weights)
    if chain.boundary() != chain.expected_boundary():
        raise AssertionError("bounding chain has the wrong boundary")
    return chain


def chain_euler_characteristic(chain: TwoChain, level: int) -> int:
    """Euler characteristic of the closed subsurface at ``level``.

    Regions at one level never share a curve, so the closure is their disjoint
    union. An unattained level gives the empty surface; use
    :func:`level_is_attained` to tell it apart.
    """
    return sum(chain.chi[r] for r in chain.regions_at(level))


def level_is_attained(chain: TwoChain, level: int) -> bool:
    return bool(chain.regions_at(level))


def require_level(chain: TwoChain, level: int) -> None:
    if not level_is_attained(chain, level):
        raise DegeneratePieceError(f"no region at level {level}")
