"""Surfaces in S x R assembled from paths in the complex.

A step ``gamma_{i-1} -> gamma_i`` between disjoint homologous multicurves is
*simple* when a bounding chain of ``gamma_i - gamma_{i-1}`` takes two
consecutive values. The regions at the upper value form a subsurface with
boundary ``gamma_i - gamma_{i-1}``; the regions at the lower value, with the
opposite orientation, have the same boundary. Either piece is placed at
height ``i - 1/2`` and joined to its neighbours by vertical annuli over the
curves. The result has boundary ``gamma_j - gamma_0``.

Only Euler characteristics, boundary counts and connectivity are tracked:
the genus of each connected component is ``(2 - chi - b) / 2``.
"""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import A
from .errors import (DegeneratePieceError, NonSimpleStepError, NotNullHomologousError,
                     PreconditionError, UnreachableError)
from .hc import ComplexSlice, bfs_distances, hc_distance
from .homology import (TwoChain, bounding_chain, chain_euler_characteristic,
                       homology_class, level_is_attained)
from .normal import NormalMulticurve, minimal_position

UPPER, LOWER = "upper", "lower"
PATH_SCHEMA = "curvecx/path@1"
REPORT_SCHEMA = "curvecx/surface@1"


@dataclass
class PathInHC:
    vertices: list[NormalMulticurve]

    def __len__(self):
        return len(self.vertices) - 1

    def to_json(self, choices: Optional["StepChoice"] = None) -> dict:
        out = {"schema": PATH_SCHEMA, "genus": self.vertices[0].tri.genus,
               "path": [m.to_json() for m in self.vertices]}
        if choices is not None:
            out["choices"] = list(choices.pieces)
        return out


@dataclass
class StepChoice:
    pieces: list[str]

    def __post_init__(self):
        for p in self.pieces:
            if p not in (UPPER, LOWER):
                raise ValueError(f"piece must be {UPPER!r} or {LOWER!r}, got {p!r}")


def load_path(data: dict, tri=None) -> tuple[PathInHC, StepChoice]:
    verts = [NormalMulticurve.from_json(m, tri) for m in data["path"]]
    choices = data.get("choices") or [UPPER] * (len(verts) - 1)
    return PathInHC(verts), StepChoice(list(choices))


@dataclass
class StepCheck:
    simple: bool
    chain: TwoChain
    weight_range: tuple[int, int]


def check_simple_step(g0: NormalMulticurve, g1: NormalMulticurve, marked: bool = False) -> StepCheck:
    """Bounding chain of ``g1 - g0`` and whether it spans two consecutive values."""
    if homology_class(g0) != homology_class(g1):
        raise NotNullHomologousError(
            f"step joins classes {homology_class(g0)} and {homology_class(g1)}")
    arr = minimal_position(g0, g1, marked)
    chain = bounding_chain(g0, g1, arr)
    return StepCheck(chain.is_simple, chain, chain.weight_range)


@dataclass
class SurfaceReport:
    chi: int
    boundary_components: int
    components: list[dict]
    piece_chi: list[int]
    simple: list[bool]

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def genus(self) -> list[int]:
        return [c["genus"] for c in self.components]

    @property
    def total_genus(self) -> int:
        return sum(self.genus)

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "chi": self.chi,
                "boundary_components": self.boundary_components,
                "connected_components": len(self.components),
                "components": self.components, "genus": self.genus,
                "total_genus": self.total_genus, "piece_chi": self.piece_chi,
                "simple": self.simple}

    def render(self) -> str:
        lines = [f"chi {self.chi}", f"boundary components {self.boundary_components}",
                 f"connected components {len(self.components)}"]
        for k, c in enumerate(self.components):
            lines.append(f"  component {k}: chi {c['chi']} boundary {c['boundary']} genus {c['genus']}")
        lines.append("piece chi " + " ".join(map(str, self.piece_chi)))
        return "\n".join(lines)


class _UF:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if repr(rx) > repr(ry):
                rx, ry = ry, rx
            self.parent[ry] = rx


def _piece_level(choice: str) -> int:
    return 1 if choice == UPPER else 0


def _assemble(chains: Sequence[TwoChain], choices: Sequence[str],
              n_start: int, n_end: int) -> SurfaceReport:
    uf = _UF()
    chi_of = {}
    piece_chi = []
    j = len(chains)
    for i, (chain, choice) in enumerate(zip(chains, choices), start=1):
        level = _piece_level(choice)
        if not level_is_attained(chain, level):
            raise DegeneratePieceError(f"step {i} has no region at level {level}")
        piece_chi.append(chain_euler_characteristic(chain, level))
        for r in chain.regions_at(level):
            node = ("r", i, r)
            uf.add(node)
            chi_of[node] = chain.chi[r]
        for (fam, comp), (left, right) in chain.sides.items():
            reg = left if chain.weights[left] == level else right
            if chain.weights[reg] != level:
                raise AssertionError("curve does not border the chosen piece")
            curve = ("c", i - 1 if fam == A else i, comp)
            uf.add(curve)
            uf.union(curve, ("r", i, reg))
    comps: dict = {}
    for node in uf.parent:
        root = uf.find(node)
        c = comps.setdefault(root, {"chi": 0, "boundary": 0})
        c["chi"] += chi_of.get(node, 0)
        if node[0] == "c" and (node[1] == 0 or node[1] == j):
            c["boundary"] += 1
    out = []
    for c in comps.values():
        twice = 2 - c["chi"] - c["boundary"]
        if twice < 0 or twice % 2:
            raise AssertionError(f"impossible component chi={c['chi']} b={c['boundary']}")
        out.append({"chi": c["chi"], "boundary": c["boundary"], "genus": twice // 2})
    out.sort(key=lambda c: (c["genus"], c["chi"], c["boundary"]))
    report = SurfaceReport(sum(piece_chi), n_start + n_end, out, piece_chi, [True] * j)
    if sum(c["boundary"] for c in out) != report.boundary_components:
        raise AssertionError("boundary bookkeeping mismatch")
    return report


def step_chains(path: PathInHC, marked: bool = False) -> list[TwoChain]:
    chains = []
    for i in range(1, len(path.vertices)):
        chk = check_simple_step(path.vertices[i - 1], path.vertices[i], marked)
        if not chk.simple:
            raise NonSimpleStepError(i, chk.weight_range)
        chains.append(chk.chain)
    return chains


def build_surface(path: PathInHC, choices: StepChoice, marked: bool = False) -> SurfaceReport:
    """Euler characteristic, boundary and genus bookkeeping of the surface of a path."""
    if len(path) < 1:
        raise PreconditionError("a path needs at least one step")
    if len(choices.pieces) != len(path):
        raise PreconditionError(f"{len(path)} steps but {len(choices.pieces)} choices")
    chains = step_chains(path, marked)
    return _assemble(chains, choices.pieces, path.vertices[0].n_components,
                     path.vertices[-1].n_components)


# -- search ------------------------------------------------------------------


@dataclass
class SearchResult:
    genus: Optional[int]
    path: Optional[PathInHC]
    choices: Optional[StepChoice]
    report: Optional[SurfaceReport]
    paths_examined: int = 0

    @property
    def found(self) -> bool:
        return self.genus is not None

    def to_json(self) -> dict:
        if not self.found:
            return {"found": False, "paths_examined": self.paths_examined}
        return {"found": True, "genus": self.genus, "length": len(self.path),
                "path": self.path.to_json(self.choices), "report": self.report.to_json(),
                "paths_examined": self.paths_examined}


class _ChainCache:
    def __init__(self, sl: ComplexSlice):
        self.sl = sl
        self.memo: dict = {}

    def get(self, i: int, j: int) -> Optional[TwoChain]:
        """Chain of the step ``i -> j``, or ``None`` when it is not simple."""
        key = (i, j)
        if key not in self.memo:
            chk = check_simple_step(self.sl.vertices[i], self.sl.vertices[j], self.sl.marked)
            self.memo[key] = chk.chain if chk.simple else None
        return self.memo[key]


def minimal_genus_search(m1: NormalMulticurve, m2: NormalMulticurve, sl: ComplexSlice,
                         max_len: int, connected: bool = True) -> SearchResult:
    """Least total genus over surfaces built from simple paths of length at most
    ``max_len`` from ``m1`` to ``m2`` in the slice.

    Paths visit distinct vertices, except the one-step path ``(m, m)`` when the
    endpoints agree. Only connected surfaces count unless ``connected`` is
    false, in which case the genus of a surface is the sum over its components. Ties go
    to the shorter path, then to the lexicographically first vertex sequence
    and choices.
    """
    if homology_class(m1) != homology_class(m2):
        raise NotNullHomologousError("endpoints lie in different classes")
    src, dst = sl.index(m1), sl.index(m2)
    cache = _ChainCache(sl)
    to_dst = bfs_distances(sl, dst)
    n_start = sl.vertices[src].n_components
    n_end = sl.vertices[dst].n_components
    best: list = [None]  # (genus, length, vertices, lower flags, report, choices)
    examined = [0]

    def consider(verts, chains):
        for mask in range(1 << len(chains)):
            choices = [UPPER if (mask >> k) & 1 == 0 else LOWER for k in range(len(chains))]
            rep = _assemble(chains, choices, n_start, n_end)
            if connected and not rep.connected:
                continue
            # upper pieces win ties
            key = (rep.total_genus, len(chains), tuple(verts),
                   tuple(c == LOWER for c in choices))
            if best[0] is None or key < best[0][:4]:
                best[0] = key + (rep, choices)

    def bound_ok(chains):
        if best[0] is None:
            return True
        # any completion has total genus at least this
        chi = sum(min(chain_euler_characteristic(c, 0), chain_euler_characteristic(c, 1))
                  for c in chains)
        return math.ceil((2 - chi - n_start - n_end) / 2) <= best[0][0]

    def dfs(verts, chains, on_path):
        x = verts[-1]
        if x == dst and chains:
            examined[0] += 1
            consider(verts, chains)
            return
        steps_left = max_len - len(chains)
        for y in sl.neighbours(x):
            if y in on_path or to_dst.get(y, math.inf) > steps_left - 1:
                continue
            ch = cache.get(x, y)
            if ch is None:
                continue
            chains.append(ch)
            if bound_ok(chains):
                verts.append(y)
                on_path.add(y)
                dfs(verts, chains, on_path)
                on_path.discard(y)
                verts.pop()
            chains.pop()

    if max_len >= 1:
        if src == dst:
            ch = cache.get(src, src)
            if ch is not None:
                examined[0] += 1
                consider([src, src], [ch])
        else:
            dfs([src], [], {src})
    if best[0] is None:
        return SearchResult(None, None, None, None, examined[0])
    genus, _, verts, _, rep, choices = best[0]
    return SearchResult(genus, PathInHC([sl.vertices[k] for k in verts]),
                        StepChoice(list(choices)), rep, examined[0])


# -- survey ------------------------------------------------------------------

CSV_HEADER = ["pair_id", "i", "j", "d", "g", "path_len", "censored"]


@dataclass
class SurveyRow:
    pair_id: int
    i: int
    j: int
    d: Optional[int]
    g: Optional[int]
    path_len: Optional[int]
    censored: bool


@dataclass
class SurveyReport:
    rows: list[SurveyRow]
    weight_bound: int
    max_len: int
    seed: int
    n_vertices: int

    @property
    def ratios(self) -> list[Fraction]:
        return [Fraction(r.d, r.g) for r in self.rows if not r.censored and r.g and r.g >= 1]

    @property
    def envelope(self) -> Optional[tuple[Fraction, Fraction]]:
        rs = self.ratios
        return (min(rs), max(rs)) if rs else None

    @property
    def genus_zero_pairs(self) -> list[int]:
        return [r.pair_id for r in self.rows if not r.censored and r.g == 0]

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.pair_id, r.i, r.j, "" if r.d is None else r.d,
                        "" if r.g is None else r.g,
                        "" if r.path_len is None else r.path_len, int(r.censored)])
        return buf.getvalue()

    def summary(self) -> dict:
        env = self.envelope
        return {"schema": "curvecx/survey@1", "weight_bound": self.weight_bound,
                "max_len": self.max_len, "seed": self.seed, "vertices": self.n_vertices,
                "pairs": len(self.rows),
                "censored": sum(r.censored for r in self.rows),
                "genus_zero_pairs": self.genus_zero_pairs,
                "ratio_min": None if env is None else str(env[0]),
                "ratio_max": None if env is None else str(env[1])}


def sample_pairs(n_vertices: int, n_pairs: Optional[int], seed: int) -> list[tuple[int, int]]:
    """Unordered vertex pairs ``i < j``; all of them, or a seeded sample."""
    pairs = [(i, j) for i in range(n_vertices) for j in range(i + 1, n_vertices)]
    if n_pairs is None or n_pairs >= len(pairs):
        return pairs
    return sorted(random.Random(seed).sample(pairs, n_pairs))


def corollary_survey(sl: ComplexSlice, max_len: int, n_pairs: Optional[int] = None,
                     seed: int = 0, connected: bool = True) -> SurveyReport:
    rows = []
    for pid, (i, j) in enumerate(sample_pairs(len(sl), n_pairs, seed)):
        u, v = sl.vertices[i], sl.vertices[j]
        try:
            d = hc_distance(sl, u, v).distance
        except UnreachableError:
            d = None
        res = minimal_genus_search(u, v, sl, max_len, connected)
        censored = d is None or not res.found
        row = SurveyRow(pid, i, j, d, res.genus, len(res.path) if res.found else None, censored)
        if d is not None and res.found and d > len(res.path):
            raise AssertionError(f"pair {pid}: distance {d} exceeds witness length {len(res.path)}")
        rows.append(row)
    return SurveyReport(rows, sl.weight_bound, max_len, seed, len(sl))
