"""Exact twin-width of small trigraphs by exhaustive search.

The search asks "is tww <= k?" for increasing k.  A state whose maximum
red degree exceeds k is dead; a state with at most k+1 vertices is always
finishable.  Failed states are memoized under a colour-aware canonical
form, so isomorphic states reached along different paths are searched
once.  Contracting a pair of twins is always safe (the result is an
induced subtrigraph), so twins are merged eagerly.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, ValidationError
from .trigraph import ContractionSequence, ContractionStep, Trigraph

NONE, BLACK, RED = 0, 1, 2

DEFAULT_MAX_VERTICES = 12
DEFAULT_MAX_NODES = 10_000_000
DEFAULT_MAX_SECONDS = 60.0
_LEAF_CAP = 2000

Adj = dict[int, dict[int, int]]


@dataclass
class SolveResult:
    value: int
    witness: ContractionSequence
    nodes_explored: int = 0
    time: float = 0.0
    lower_bound: int = field(default=0, repr=False)


def to_adj(g: Trigraph) -> Adj:
    adj = {v: {} for v in g.vertices}
    for u, v in g.black:
        adj[u][v] = BLACK
        adj[v][u] = BLACK
    for u, v in g.red:
        adj[u][v] = RED
        adj[v][u] = RED
    return adj


def contract_adj(adj: Adj, u: int, v: int, w: int) -> Adj:
    au, av = adj[u], adj[v]
    out = {}
    merged = {}
    for x, nbrs in adj.items():
        if x == u or x == v:
            continue
        cu = au.get(x, NONE)
        cv = av.get(x, NONE)
        row = {y: c for y, c in nbrs.items() if y != u and y != v}
        if cu or cv:
            c = BLACK if cu == BLACK and cv == BLACK else RED
            row[w] = c
            merged[x] = c
        out[x] = row
    out[w] = merged
    return out


def max_red(adj: Adj) -> int:
    best = 0
    for nbrs in adj.values():
        r = sum(1 for c in nbrs.values() if c == RED)
        if r > best:
            best = r
    return best


def _refine(adj: Adj, colour: dict[int, int]) -> dict[int, int]:
    while True:
        sig = {v: (colour[v], tuple(sorted((colour[u], c) for u, c in adj[v].items())))
               for v in adj}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in adj}
        if len(ranks) == len(set(colour.values())):
            return new
        colour = new


def canonical_form(adj: Adj) -> tuple:
    """Isomorphism-invariant encoding of a 2-edge-coloured graph.

    Colour refinement, then individualization of each vertex of the first
    smallest non-trivial cell; the lexicographically least adjacency
    encoding over all leaves is the form.  Symmetric graphs that would
    need more than a few thousand leaves fall back to a labelled encoding,
    which keeps memoization sound at the cost of sharing.
    """
    n = len(adj)
    if n == 0:
        return (0,)
    init = {v: 0 for v in adj}
    best = None
    leaves = 0

    def encode(order):
        return tuple(adj[order[i]].get(order[j], NONE)
                     for i in range(n) for j in range(i + 1, n))

    def search(colour):
        nonlocal best, leaves
        colour = _refine(adj, colour)
        cells = {}
        for v, c in colour.items():
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            leaves += 1
            if leaves > _LEAF_CAP:
                raise OverflowError
            order = sorted(adj, key=colour.__getitem__)
            code = encode(order)
            if best is None or code < best:
                best = code
            return
        target = min((c for c, vs in cells.items() if len(vs) > 1),
                     key=lambda c: (len(cells[c]), c))
        for v in sorted(cells[target]):
            trial = {x: 2 * c + 1 for x, c in colour.items()}
            trial[v] = 2 * target
            search(trial)

    try:
        search(init)
    except OverflowError:
        order = sorted(adj)
        return ("labelled", tuple(order), encode(order))
    return (n, best)


def find_twins(adj: Adj) -> Optional[tuple[int, int]]:
    verts = sorted(adj)
    for u, v in itertools.combinations(verts, 2):
        au, av = adj[u], adj[v]
        if len(au) - (v in au) != len(av) - (u in av):
            continue
        if all(av.get(x) == c for x, c in au.items() if x != v) and \
                all(au.get(x) == c for x, c in av.items() if x != u):
            return u, v
    return None


class _Search:
    def __init__(self, max_nodes, max_seconds):
        self.nodes = 0
        self.max_nodes = max_nodes
        self.deadline = time.monotonic() + max_seconds
        self.failed: dict[tuple, int] = {}  # canonical form -> largest k known infeasible

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted")
        if self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")

    def finish(self, adj: Adj, next_id: int) -> list[tuple[int, int, int]]:
        live = sorted(adj)
        steps = []
        while len(live) > 1:
            a, b = live[0], live[1]
            steps.append((a, b, next_id))
            live = live[2:] + [next_id]
            next_id += 1
        return steps

    def feasible(self, adj: Adj, k: int, next_id: int) -> Optional[list]:
        self.tick()
        if len(adj) <= k + 1:
            return self.finish(adj, next_id)
        key = canonical_form(adj)
        if self.failed.get(key, -1) >= k:
            return None
        twins = find_twins(adj)
        if twins is not None:
            u, v = twins
            rest = self.feasible(contract_adj(adj, u, v, next_id), k, next_id + 1)
            if rest is None:
                self.failed[key] = max(k, self.failed.get(key, -1))
                return None
            return [(u, v, next_id)] + rest
        options = []
        for u, v in itertools.combinations(sorted(adj), 2):
            child = contract_adj(adj, u, v, next_id)
            r = max_red(child)
            if r <= k:
                reds = sum(1 for nb in child.values() for c in nb.values() if c == RED)
                options.append((r, reds, u, v, child))
        options.sort(key=lambda o: o[:4])
        for _, _, u, v, child in options:
            rest = self.feasible(child, k, next_id + 1)
            if rest is not None:
                return [(u, v, next_id)] + rest
        self.failed[key] = max(k, self.failed.get(key, -1))
        return None


def greedy_sequence(g: Trigraph) -> tuple[int, list[tuple[int, int, int]]]:
    """Upper bound: always take the contraction with the smallest resulting red degree."""
    adj = to_adj(g)
    width = max_red(adj)
    next_id = g.next_id
    steps = []
    while len(adj) > 1:
        best = None
        for u, v in itertools.combinations(sorted(adj), 2):
            child = contract_adj(adj, u, v, next_id)
            r = max_red(child)
            if best is None or r < best[0]:
                best = (r, u, v, child)
        r, u, v, adj = best
        steps.append((u, v, next_id))
        next_id += 1
        width = max(width, r)
    return width, steps


def _sequence(steps) -> ContractionSequence:
    return ContractionSequence([ContractionStep(u, v, w) for u, v, w in steps])


def exact_tww(g: Trigraph, upper_hint: Optional[int] = None,
              max_nodes: int = DEFAULT_MAX_NODES, max_seconds: float = DEFAULT_MAX_SECONDS,
              max_vertices: int = DEFAULT_MAX_VERTICES) -> SolveResult:
    """Twin-width of `g` with an optimal witness sequence.

    Raises BudgetExceeded (carrying the greedy upper bound and its witness)
    when the node or time budget runs out before optimality is proven.
    """
    if len(g) > max_vertices:
        raise ValidationError(f"{len(g)} vertices exceeds the exact-solver cap {max_vertices}")
    start = time.monotonic()
    adj = to_adj(g)
    lower = max_red(adj)
    if len(adj) <= 1:
        return SolveResult(0, ContractionSequence(), 0, 0.0, 0)
    upper, greedy_steps = greedy_sequence(g)
    ceiling = upper if upper_hint is None else min(upper, upper_hint + 1)
    search = _Search(max_nodes, max_seconds)
    k = lower
    try:
        while k < ceiling:
            steps = search.feasible(adj, k, g.next_id)
            if steps is not None:
                return SolveResult(k, _sequence(steps), search.nodes,
                                   time.monotonic() - start, lower)
            k += 1
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), upper, _sequence(greedy_steps), search.nodes) from None
    if upper_hint is not None and upper_hint < upper:
        raise BudgetExceeded(f"no sequence of width <= {upper_hint}; best known {upper}",
                             upper, _sequence(greedy_steps), search.nodes)
    return SolveResult(upper, _sequence(greedy_steps), search.nodes,
                       time.monotonic() - start, lower)
