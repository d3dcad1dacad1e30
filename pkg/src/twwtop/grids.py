"""Grid graphs P_n^d and D_{n,d}, and the slice-folding contraction strategy.

Folding works one axis at a time: slices 2k-1 and 2k along the active
axis are merged point by point (remaining coordinates in lexicographic
order), which halves that axis; once it has extent 1 the next axis is
folded.  Missing grid points are skipped, so the same routine contracts
any trigraph that comes with coordinates in [n]^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .config import cell_budget
from .errors import PreconditionError, SizeError, ValidationError
from .trigraph import ContractionSequence, ContractionState, Trigraph

Coord = tuple[int, ...]


@dataclass(frozen=True)
class GridSpec:
    n: int
    d: int
    diagonals: bool = False
    all_red: bool = False

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValidationError(f"grid needs n >= 1 and d >= 1, got n={self.n}, d={self.d}")


def grid_points(n: int, d: int) -> list[Coord]:
    """Points of [n]^d in lexicographic order; the index is the vertex id."""
    return list(itertools.product(range(1, n + 1), repeat=d))


def grid_graph(spec: GridSpec, budget: Optional[int] = None) -> Trigraph:
    n, d = spec.n, spec.d
    limit = cell_budget(budget)
    if n ** d > limit:
        raise SizeError(f"grid [{n}]^{d} has {n ** d} vertices, budget is {limit}")
    points = grid_points(n, d)
    ids = {p: i for i, p in enumerate(points)}
    if spec.diagonals:
        offsets = [o for o in itertools.product((-1, 0, 1), repeat=d) if any(o)]
    else:
        offsets = []
        for a in range(d):
            for s in (-1, 1):
                o = [0] * d
                o[a] = s
                offsets.append(tuple(o))
    edges = set()
    for p, i in ids.items():
        for o in offsets:
            q = tuple(x + y for x, y in zip(p, o))
            j = ids.get(q)
            if j is not None and i < j:
                edges.add((i, j))
    if spec.all_red:
        return Trigraph._trusted(ids.values(), (), edges, len(points))
    return Trigraph._trusted(ids.values(), edges, (), len(points))


def grid_coordinates(spec: GridSpec) -> dict[int, Coord]:
    return dict(enumerate(grid_points(spec.n, spec.d)))


def fold(state: ContractionState, coords: Mapping[int, Coord]) -> None:
    """Contract every vertex of `state` listed in `coords` by slice folding.

    Coordinates are 1-based.  The caller's state records the steps.
    """
    if not coords:
        return
    d = len(next(iter(coords.values())))
    at = {tuple(c[a] - 1 for a in range(d)): v for v, c in coords.items()}
    if len(at) != len(coords):
        raise PreconditionError("coordinates are not injective")
    extent = [max(p[a] for p in at) + 1 for a in range(d)]
    for axis in range(d):
        while extent[axis] > 1:
            others = [range(extent[a]) for a in range(d) if a != axis]
            half = (extent[axis] + 1) // 2
            folded = {}
            for k in range(half):
                for rest in itertools.product(*others):
                    lo = rest[:axis] + (2 * k,) + rest[axis:]
                    hi = rest[:axis] + (2 * k + 1,) + rest[axis:]
                    u, v = at.get(lo), at.get(hi)
                    target = rest[:axis] + (k,) + rest[axis:]
                    if u is not None and v is not None:
                        folded[target] = state.contract(u, v)
                    elif u is not None or v is not None:
                        folded[target] = u if u is not None else v
            at = folded
            extent[axis] = half


def contract_grid(spec: GridSpec) -> ContractionSequence:
    """Folding sequence for the plain grid P_n^d."""
    if spec.diagonals or spec.all_red:
        raise PreconditionError("contract_grid expects the plain black grid P_n^d")
    return fold_grid(spec)


def fold_grid(spec: GridSpec) -> ContractionSequence:
    g = grid_graph(spec)
    state = ContractionState(g)
    fold(state, grid_coordinates(spec))
    return state.sequence()


def check_red_grid_embedding(h: Trigraph, coords: Mapping[int, Coord]) -> None:
    if set(coords) != set(h.vertices):
        raise PreconditionError("coordinates must cover exactly the vertices of h")
    if h.black:
        raise PreconditionError(f"black edge {min(h.black)}; expected an all-red trigraph")
    if len(set(map(tuple, coords.values()))) != len(coords):
        raise PreconditionError("coordinates are not injective")
    for u, v in h.red:
        cu, cv = coords[u], coords[v]
        if max(abs(a - b) for a, b in zip(cu, cv)) > 1:
            raise PreconditionError(f"edge {(u, v)} spans Chebyshev distance > 1")


def contract_red_grid_subtrigraph(h: Trigraph, coords: Mapping[int, Coord],
                                  next_id: Optional[int] = None) -> ContractionSequence:
    """Folding sequence for a subtrigraph of the red grid with diagonals."""
    check_red_grid_embedding(h, coords)
    state = ContractionState(h, next_id=next_id)
    fold(state, coords)
    return state.sequence()


def red_grid_bound(d: int) -> int:
    return 2 * (3 ** d - 1)


def grid_bound(d: int) -> int:
    return 3 * d


def grid_ids(n: int, d: int) -> dict[Coord, int]:
    return {p: i for i, p in enumerate(grid_points(n, d))}


def red_grid_mapping(coords: Mapping[int, Coord], n: int) -> dict[int, int]:
    """Vertex -> id in ``grid_graph(GridSpec(n, d, True, True))``."""
    d = len(next(iter(coords.values())))
    ids = grid_ids(n, d)
    return {v: ids[tuple(c)] for v, c in coords.items()}

