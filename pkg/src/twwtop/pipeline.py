"""Two-epoch contraction sequence for G_{d,n}.

G_{d,n} is the dual graph of the d-skeleton of the second barycentric
subdivision of the 2d-dimensional honeycomb H^{2d,n}.  Each d-simplex
gets the smallest dimension among the cubes whose barycentre vertex has
the simplex in its closed star; the simplices owned by one cube form a
connected part.  Epoch one contracts every part to a single node, which
leaves an all-red trigraph living on the cubes of the honeycomb.  Placing
each cube at twice its barycentre turns that trigraph into a subtrigraph
of the red grid with diagonals, and epoch two is the folding strategy
there.
"""

from __future__ import annotations

import heapq
import logging
import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .complexes import Complex, barycentric_subdivision, dual_graph, honeycomb
from .errors import ClaimViolation, DisjointnessViolation, EmbeddingViolation, StructuralViolation
from .grids import GridSpec, contract_red_grid_subtrigraph, grid_graph, red_grid_bound, red_grid_mapping
from .trigraph import (ContractionSequence, ContractionState, Trigraph, apply_sequence,
                       is_subtrigraph)

log = logging.getLogger(__name__)

PART_ORDERS = ("lex", "reverse")


def h1(d: int) -> int:
    """Claimed bound on the number of d-simplices in one part."""
    return 4 ** d * math.factorial(2 * d) ** 2 * math.comb(2 * d, d)


def h2(d: int) -> int:
    """Claimed bound on the number of parts incident to one part."""
    return 9 ** d


def interior_incidences(d: int, i: int) -> int:
    """Parts incident to the part of an interior i-cube of H^{2d,n}."""
    top = 2 * d
    if i in (0, top):
        return 3 ** top - 1
    return 3 ** i + 3 ** (top - i) - 2


@dataclass
class Provenance:
    honeycomb: Complex
    first: Complex
    second: Complex  # d-skeleton of the second subdivision
    simplices: list  # G vertex id -> d-simplex key of `second`


@dataclass
class CubeColoring:
    colors: dict  # cube key -> colour

    @classmethod
    def by_dimension(cls, h: Complex) -> "CubeColoring":
        return cls({c: h.dim_of(c) for c in h.cells})


@dataclass
class SimplexColoring:
    color: list[int]  # G vertex id -> colour
    owner: list  # G vertex id -> owning cube key

    def parts(self) -> dict[tuple, list[int]]:
        out: dict[tuple, list[int]] = {}
        for v, (c, cube) in enumerate(zip(self.color, self.owner)):
            out.setdefault((c, cube), []).append(v)
        return out


@dataclass
class PipelineReport:
    d: int
    n: int
    sizes: dict
    epoch1_width: int
    epoch2_width: int
    total_width: int
    family_stats: dict
    verified: bool
    part_order: str = "lex"
    timings: dict = field(default_factory=dict)

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "d": self.d,
            "n": self.n,
            "part_order": self.part_order,
            "sizes": self.sizes,
            "epoch1_width": self.epoch1_width,
            "epoch2_width": self.epoch2_width,
            "total_width": self.total_width,
            "epoch2_bound": red_grid_bound(2 * self.d),
            "verified": self.verified,
            "family_stats": self.family_stats,
        }
        if with_timings:
            out["timings"] = self.timings
        return out


@dataclass
class PipelineRun:
    report: PipelineReport
    g: Trigraph
    g_star: Trigraph
    sequence: ContractionSequence
    epoch1: ContractionSequence
    epoch2: ContractionSequence
    coloring: SimplexColoring
    cube_map: dict
    coords: dict
    provenance: Provenance


def build_G(d: int, n: int, budget: Optional[int] = None) -> tuple[Trigraph, Provenance]:
    """G_{d,n} together with the complexes it was read off."""
    h = honeycomb(2 * d, n, budget)
    first = barycentric_subdivision(h, budget=budget)
    second = barycentric_subdivision(first, max_dim=d, budget=budget)
    dual = dual_graph(second, d)
    return dual.graph, Provenance(h, first, second, dual.cells)


def barycentre_vertices(prov: Provenance) -> dict:
    """ι: vertex of the second subdivision -> the cube whose barycentre it is."""
    h, first = prov.honeycomb, prov.first
    out = {}
    for cid, cube in enumerate(h.cells):
        out[(first.index[(cid,)],)] = cube
    return out


def color_simplices(x2: Complex, V: dict, cube_colors: CubeColoring,
                    simplices: Optional[list] = None) -> SimplexColoring:
    """Colour each d-simplex by the least colour of a V-vertex whose closed star holds it.

    `V` maps vertices of `x2` (as 1-tuples) to their cubes.  A simplex lies
    in the closed star of v exactly when adding v still gives a chain of
    the first subdivision, so the candidates are the barycentres of cubes
    appearing in the simplex's cells.
    """
    first = x2.parent
    if simplices is None:
        simplices = x2.cells_of_dim(x2.dim)
    colors = cube_colors.colors
    color, owner = [], []
    for sigma in simplices:
        candidates = set()
        for j in sigma:
            for cid in first.cells[j]:
                candidates.add(first.index[(cid,)])
        best, winners = None, []
        for j in sorted(candidates):
            v = (j,)
            if v not in V or not first.is_chain(sigma + v):
                continue
            cube = V[v]
            c = colors[cube]
            if best is None or c < best:
                best, winners = c, [cube]
            elif c == best:
                winners.append(cube)
        if best is None:
            raise StructuralViolation(f"simplex {sigma} lies in no barycentre star")
        if len(winners) > 1:
            raise DisjointnessViolation(f"simplex {sigma} claimed by cubes {sorted(winners)}")
        color.append(best)
        owner.append(winners[0])
    return SimplexColoring(color, owner)


def check_parts(g: Trigraph, coloring: SimplexColoring) -> dict[tuple, list[int]]:
    """Parts must cover V(g), be pairwise disjoint, and each induce a connected subgraph."""
    parts = coloring.parts()
    seen = set()
    for key, members in parts.items():
        if seen.intersection(members):
            raise DisjointnessViolation(f"part {key} overlaps another part")
        seen.update(members)
        inside = set(members)
        todo = deque([members[0]])
        reached = {members[0]}
        while todo:
            x = todo.popleft()
            for y in g.neighbors(x):
                if y in inside and y not in reached:
                    reached.add(y)
                    todo.append(y)
        if len(reached) != len(inside):
            raise StructuralViolation(f"part {key} is not connected")
    if seen != set(g.vertices):
        raise DisjointnessViolation("parts do not cover every vertex")
    return parts


def epoch_one(g: Trigraph, coloring: SimplexColoring, order: str = "lex"
              ) -> tuple[ContractionSequence, Trigraph, dict, int]:
    """Contract every part to one node; returns (sequence, G*, node -> cube, width)."""
    if order not in PART_ORDERS:
        raise ValueError(f"unknown part order {order!r}")
    parts = coloring.parts()
    keys = sorted(parts, reverse=(order == "reverse"))
    state = ContractionState(g)
    cube_map = {}
    for key in keys:
        live = sorted(parts[key])
        heapq.heapify(live)
        while len(live) > 1:
            a = heapq.heappop(live)
            b = heapq.heappop(live)
            heapq.heappush(live, state.contract(a, b))
        cube_map[live[0]] = key[1]
    g_star = state.snapshot()
    if g_star.black:
        raise StructuralViolation(f"black edge {min(g_star.black)} survives epoch one")
    return state.sequence(), g_star, cube_map, state.width()


def cube_coordinates(cube) -> tuple[int, ...]:
    """Twice the barycentre minus one: an integer point of [2n-1]^dim."""
    base, dirs = cube
    return tuple(2 * b - 1 + (1 if a in dirs else 0) for a, b in enumerate(base))


def embed_in_grid(g_star: Trigraph, cube_map: dict, n: int) -> dict:
    """Coordinates of G* in [2n-1]^{2d}, checked against red(D_{2n-1,2d})."""
    if set(cube_map) != set(g_star.vertices):
        raise EmbeddingViolation("cube map does not cover G*")
    coords = {v: cube_coordinates(c) for v, c in cube_map.items()}
    if len(set(coords.values())) != len(coords):
        raise EmbeddingViolation("two nodes share a grid point")
    side = 2 * n - 1
    dim = len(next(iter(coords.values())))
    for u, v in g_star.red | g_star.black:
        if max(abs(a - b) for a, b in zip(coords[u], coords[v])) > 1:
            raise EmbeddingViolation(f"edge {(u, v)} is not a grid-with-diagonals edge")
    host = grid_graph(GridSpec(side, dim, diagonals=True, all_red=True))
    if not is_subtrigraph(g_star, host, red_grid_mapping(coords, side)):
        raise EmbeddingViolation("G* is not a subtrigraph of the red grid with diagonals")
    return coords


def epoch_two(g_star: Trigraph, coords: dict, next_id: Optional[int] = None) -> ContractionSequence:
    return contract_red_grid_subtrigraph(g_star, coords, next_id=next_id)


def claim_statistics(d: int, n: int, g_star: Trigraph, cube_map: dict,
                     parts: dict[tuple, list[int]]) -> dict:
    """Part sizes and part incidences, compared with the claimed estimates.

    Disagreements are listed under ``"violations"`` rather than raised, so
    a run always produces its report.
    """
    dim = 2 * d
    sizes = {}
    for (i, _), members in parts.items():
        sizes[i] = max(sizes.get(i, 0), len(members))
    interior: dict[int, set] = {}
    boundary: dict[int, int] = {}
    max_inc = 0
    for v, cube in cube_map.items():
        base, dirs = cube
        i = len(dirs)
        inc = len(g_star.neighbors(v))
        max_inc = max(max_inc, inc)
        if all(1 < base[a] < n for a in range(dim) if a not in dirs):
            interior.setdefault(i, set()).add(inc)
        else:
            boundary[i] = max(boundary.get(i, 0), inc)
    stats = {
        "h1": h1(d),
        "h2": h2(d),
        "max_part_size": max(sizes.values()),
        "max_part_size_by_color": {str(i): sizes[i] for i in sorted(sizes)},
        "max_incidences": max_inc,
        "interior_incidences": {str(i): sorted(v) for i, v in sorted(interior.items())},
        "expected_interior_incidences": {str(i): interior_incidences(d, i) for i in range(dim + 1)},
        "boundary_max_incidences": {str(i): boundary[i] for i in sorted(boundary)},
    }
    violations = []
    if stats["max_part_size"] >= h1(d):
        violations.append(f"a part has {stats['max_part_size']} simplices, bound is {h1(d)}")
    if max_inc >= h2(d):
        violations.append(f"a part has {max_inc} incident parts, bound is {h2(d)}")
    for i, seen in interior.items():
        if seen != {interior_incidences(d, i)}:
            violations.append(f"interior {i}-cubes have incidences {sorted(seen)}, "
                              f"expected {interior_incidences(d, i)}")
    for i, worst in boundary.items():
        if i in interior and worst >= interior_incidences(d, i):
            violations.append(f"boundary {i}-cube has {worst} incidences, not fewer than interior")
    stats["violations"] = violations
    return stats


def run_pipeline(d: int, n: int, budget: Optional[int] = None, verify: bool = True,
                 order: str = "lex") -> PipelineRun:
    timings = {}
    t0 = time.perf_counter()
    g, prov = build_G(d, n, budget)
    timings["build"] = time.perf_counter() - t0
    log.info("G_{%d,%d}: %d vertices, %d edges", d, n, len(g), len(g.black))

    t = time.perf_counter()
    coloring = color_simplices(prov.second, barycentre_vertices(prov),
                               CubeColoring.by_dimension(prov.honeycomb), prov.simplices)
    parts = check_parts(g, coloring)
    timings["coloring"] = time.perf_counter() - t

    t = time.perf_counter()
    seq1, g_star, cube_map, w1 = epoch_one(g, coloring, order)
    timings["epoch1"] = time.perf_counter() - t

    t = time.perf_counter()
    coords = embed_in_grid(g_star, cube_map, n)
    next_id = max(g.next_id, max((s.merged for s in seq1), default=0) + 1)
    seq2 = epoch_two(g_star, coords, next_id)
    w2 = apply_sequence(g_star, seq2).width
    timings["epoch2"] = time.perf_counter() - t

    stats = claim_statistics(d, n, g_star, cube_map, parts)
    sequence = seq1 + seq2
    total = max(w1, w2)
    verified = False
    if verify:
        t = time.perf_counter()
        replayed = apply_sequence(g, sequence)
        if not (replayed.valid and replayed.remaining_vertices == 1 and replayed.width == total):
            raise StructuralViolation(f"replay disagrees: {replayed.error or replayed.width}")
        verified = True
        timings["verify"] = time.perf_counter() - t

    sizes = {
        "honeycomb_cells": len(prov.honeycomb),
        "first_subdivision_cells": len(prov.first),
        "second_subdivision_skeleton_cells": len(prov.second),
        "g_vertices": len(g),
        "g_edges": len(g.black) + len(g.red),
        "g_star_vertices": len(g_star),
        "g_star_edges": len(g_star.red) + len(g_star.black),
        "parts": len(parts),
        "epoch1_steps": len(seq1),
        "epoch2_steps": len(seq2),
    }
    report = PipelineReport(d, n, sizes, w1, w2, total, stats, verified, order, timings)
    return PipelineRun(report, g, g_star, sequence, seq1, seq2, coloring, cube_map, coords, prov)


def full_pipeline(d: int, n: int, budget: Optional[int] = None, verify: bool = True,
                  order: str = "lex") -> PipelineReport:
    return run_pipeline(d, n, budget, verify, order).report


def verify_claim_estimates(d: int, n: int, run: Optional[PipelineRun] = None) -> dict:
    if run is None:
        run = run_pipeline(d, n, verify=False)
    stats = claim_statistics(d, n, run.g_star, run.cube_map, run.coloring.parts())
    if stats["violations"]:
        raise ClaimViolation("; ".join(stats["violations"]))
    return stats
