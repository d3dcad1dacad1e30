"""Subdivided regular graphs and the thickening triangulation built on them.

Each node v of a (d+1)-regular graph becomes a d-simplex; each arc {u, v}
becomes a stacked prism of d d-simplices glued between a facet of σ_u and
a facet of σ_v.  The dual graph of the result is the d-subdivision of the
graph, which `verify_claim_dual` checks with an explicit bijection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .complexes import Complex, dual_graph
from .errors import (InfeasibleSpec, NotRegularError, NotSimpleError, ValidationError,
                     VerificationFailed)
from .trigraph import Trigraph, edge

MAX_PAIRING_TRIES = 200_000


@dataclass(frozen=True)
class RegularGraphSpec:
    k: int
    m: int
    seed: int = 0


def random_regular_graph(spec: RegularGraphSpec) -> Trigraph:
    """Uniform simple k-regular graph on vertices 0..m-1 via the pairing model.

    Pairings with loops or repeated pairs are rejected and redrawn.
    """
    k, m = spec.k, spec.m
    if k < 0 or m < 1 or k >= m or (k * m) % 2:
        raise InfeasibleSpec(f"no simple {k}-regular graph on {m} vertices")
    rng = random.Random(spec.seed)
    points = [v for v in range(m) for _ in range(k)]
    for _ in range(MAX_PAIRING_TRIES):
        rng.shuffle(points)
        edges = set()
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = edge(u, v)
            if u == v or e in edges:
                break
            edges.add(e)
        else:
            return Trigraph(range(m), edges)
    raise InfeasibleSpec(f"pairing model found no simple graph in {MAX_PAIRING_TRIES} tries")


def subdivision_layout(g: Trigraph, s: int) -> dict[tuple[int, int], list[int]]:
    """Ids of the s internal vertices placed on each edge, listed from the smaller endpoint."""
    start = g.next_id
    layout = {}
    for idx, e in enumerate(sorted(g.black)):
        layout[e] = [start + idx * s + j for j in range(s)]
    return layout


def subdivide_edges(g: Trigraph, s: int) -> Trigraph:
    if g.red:
        raise ValidationError("subdivision expects an all-black graph")
    if s < 0:
        raise ValidationError(f"negative subdivision count {s}")
    if s == 0:
        return g
    layout = subdivision_layout(g, s)
    vertices = set(g.vertices)
    edges = []
    for (u, v), inner in layout.items():
        vertices.update(inner)
        path = [u, *inner, v]
        edges.extend(zip(path, path[1:]))
    return Trigraph(vertices, edges)


@dataclass
class PrismComplex:
    complex: Complex
    simplices: list[tuple[int, ...]]  # stacked order, bottom first
    bottom: tuple[int, ...]
    top: tuple[int, ...]

    @staticmethod
    def token(i: int, level: int, d: int) -> int:
        """Token of the prism vertex (v_i, level), i = 1..d."""
        return (i - 1) + level * d


def prism_simplices(bottom: list[int], top: list[int]) -> list[tuple[int, ...]]:
    """Staircase triangulation of bottom × [0,1]; bottom[i] is glued under top[i].

    The i-th simplex holds the first i top vertices and the last d-i+1
    bottom vertices, so consecutive simplices differ in one vertex.
    """
    d = len(bottom)
    return [tuple(sorted(top[:i] + bottom[i - 1:])) for i in range(1, d + 1)]


def prism_triangulation(d: int) -> PrismComplex:
    if d < 2:
        raise ValidationError(f"prism triangulation needs d >= 2, got {d}")
    bottom = [PrismComplex.token(i, 0, d) for i in range(1, d + 1)]
    top = [PrismComplex.token(i, 1, d) for i in range(1, d + 1)]
    simplices = prism_simplices(bottom, top)
    return PrismComplex(Complex.from_simplices(simplices), simplices, tuple(bottom), tuple(top))


def _check_regular(g: Trigraph, degree: int) -> None:
    if g.red:
        raise NotSimpleError("graph has red edges")
    for v in g.vertices:
        if len(g.black_neighbors(v)) != degree:
            raise NotRegularError(f"vertex {v} has degree {len(g.black_neighbors(v))}, "
                                  f"expected {degree}")


def _thicken(g: Trigraph, d: int) -> tuple[list[tuple[int, ...]], dict]:
    """Top simplices of the thickening and where each came from."""
    if d < 3:
        raise ValidationError(f"thickening needs d >= 3, got {d}")
    _check_regular(g, d + 1)
    order = sorted(g.vertices)
    rank = {v: i for i, v in enumerate(order)}
    node_simplex = {v: tuple(rank[v] * (d + 1) + j for j in range(d + 1)) for v in order}

    def facet(v, w):
        # facet of σ_v opposite its j-th vertex, j = position of w among v's neighbours
        j = sorted(g.black_neighbors(v)).index(w)
        tokens = node_simplex[v]
        return [t for i, t in enumerate(tokens) if i != j]

    tops = []
    origin = {}
    for v in order:
        tops.append(node_simplex[v])
        origin[node_simplex[v]] = ("node", v)
    for u, v in sorted(g.black):
        for i, s in enumerate(prism_simplices(facet(u, v), facet(v, u)), start=1):
            if s in origin:
                raise VerificationFailed("two prisms produced the same simplex", s)
            tops.append(s)
            origin[s] = ("arc", (u, v), i)
    return tops, origin


def thickening_triangulation(g: Trigraph, d: int) -> Complex:
    tops, _ = _thicken(g, d)
    return Complex.from_simplices(tops)


def verify_claim_dual(t: Complex, g: Trigraph, d: int) -> tuple[bool, dict]:
    """Check that Γ(t) equals subd_d(g) under the provenance bijection.

    Returns ``(True, mapping)`` where mapping sends each top simplex of `t`
    to a vertex of ``subdivide_edges(g, d)``.
    """
    tops, origin = _thicken(g, d)
    layout = subdivision_layout(g, d)
    mapping = {}
    for s in t.cells_of_dim(d):
        where = origin.get(s)
        if where is None:
            raise VerificationFailed(f"simplex {s} has no provenance", s)
        if where[0] == "node":
            mapping[s] = where[1]
        else:
            _, e, i = where
            mapping[s] = layout[e][i - 1]
    if len(mapping) != len(tops):
        missing = sorted(set(tops) - set(mapping))
        raise VerificationFailed("top simplex missing from the complex", missing[0])
    dual = dual_graph(t, d)
    image = {edge(mapping[dual.cells[a]], mapping[dual.cells[b]]) for a, b in dual.graph.black}
    expected = subdivide_edges(g, d)
    if image != set(expected.black):
        extra = sorted(image - expected.black)
        lost = sorted(expected.black - image)
        raise VerificationFailed(f"dual graph differs: extra {extra[:3]}, missing {lost[:3]}")
    return True, mapping


def facet_multiplicities(t: Complex) -> dict:
    """(d-1)-simplex -> number of d-simplices containing it."""
    d = t.dim
    counts = {}
    for s in t.cells_of_dim(d):
        for f in t.facets(s):
            counts[f] = counts.get(f, 0) + 1
    return counts


def is_pseudomanifold(t: Complex) -> bool:
    return all(c <= 2 for c in facet_multiplicities(t).values())


def regular_graph(k: int, m: int, seed: Optional[int] = 0) -> Trigraph:
    return random_regular_graph(RegularGraphSpec(k, m, seed or 0))
