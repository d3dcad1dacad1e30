"""Trigraphs, contractions and contraction sequences.

A trigraph is a vertex set with two disjoint sets of unordered pairs, the
black and the red edges.  `Trigraph` is an immutable value; long replays
go through `ContractionState`, which mutates adjacency sets in place and
keeps a histogram of red degrees so the running maximum is O(1).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    DanglingEndpointError,
    NonInjectiveMapError,
    OverlapError,
    SameVertexError,
    SelfLoopError,
    UnknownVertexError,
    ValidationError,
)

Pair = tuple[int, int]


def edge(u: int, v: int) -> Pair:
    """Canonical unordered pair, smaller id first."""
    return (u, v) if u < v else (v, u)


def _normalize_pairs(pairs: Iterable) -> frozenset[Pair]:
    out = set()
    for p in pairs:
        u, v = p
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        out.add(edge(int(u), int(v)))
    return frozenset(out)


class Trigraph:
    """Immutable trigraph (V, E, R).

    `next_id` is the smallest id guaranteed unused in this trigraph's
    lineage; contractions draw fresh vertex ids from it.
    """

    __slots__ = ("vertices", "black", "red", "next_id", "_black_adj", "_red_adj")

    def __init__(self, vertices: Iterable[int], black: Iterable = (), red: Iterable = (),
                 next_id: Optional[int] = None):
        verts = frozenset(int(v) for v in vertices)
        b = _normalize_pairs(black)
        r = _normalize_pairs(red)
        common = b & r
        if common:
            raise OverlapError(f"pair {min(common)} is both black and red")
        for u, v in b | r:
            if u not in verts or v not in verts:
                raise DanglingEndpointError(f"edge {(u, v)} has an endpoint outside the vertex set")
        self.vertices = verts
        self.black = b
        self.red = r
        floor = max(verts) + 1 if verts else 0
        self.next_id = floor if next_id is None else max(int(next_id), floor)
        self._black_adj = None
        self._red_adj = None

    @classmethod
    def _trusted(cls, vertices, black, red, next_id):
        # Skips validation; callers guarantee canonical, disjoint pairs.
        g = cls.__new__(cls)
        g.vertices = frozenset(vertices)
        g.black = frozenset(black)
        g.red = frozenset(red)
        g.next_id = next_id
        g._black_adj = None
        g._red_adj = None
        return g

    def _build_adj(self):
        badj = {v: set() for v in self.vertices}
        radj = {v: set() for v in self.vertices}
        for u, v in self.black:
            badj[u].add(v)
            badj[v].add(u)
        for u, v in self.red:
            radj[u].add(v)
            radj[v].add(u)
        self._black_adj = badj
        self._red_adj = radj

    def black_neighbors(self, v: int) -> set[int]:
        if self._black_adj is None:
            self._build_adj()
        self._require(v)
        return self._black_adj[v]

    def red_neighbors(self, v: int) -> set[int]:
        if self._red_adj is None:
            self._build_adj()
        self._require(v)
        return self._red_adj[v]

    def neighbors(self, v: int) -> set[int]:
        return self.black_neighbors(v) | self.red_neighbors(v)

    def _require(self, v):
        if v not in self.vertices:
            raise UnknownVertexError(v)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Trigraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.black == other.black
                and self.red == other.red)

    def __hash__(self):
        return hash((self.vertices, self.black, self.red))

    def __repr__(self):
        return (f"Trigraph(|V|={len(self.vertices)}, |E|={len(self.black)}, "
                f"|R|={len(self.red)})")

    def red_degree(self, v: int) -> int:
        return len(self.red_neighbors(v))

    def max_red_degree(self) -> int:
        if not self.red:
            return 0
        counts = Counter()
        for u, v in self.red:
            counts[u] += 1
            counts[v] += 1
        return max(counts.values())

    def contract(self, u: int, v: int, merged: Optional[int] = None) -> tuple["Trigraph", int]:
        state = ContractionState(self)
        w = state.contract(u, v, merged)
        return state.snapshot(), w


def new_trigraph(vertices, black=(), red=()) -> Trigraph:
    return Trigraph(vertices, black, red)


def contract(g: Trigraph, u: int, v: int) -> tuple[Trigraph, int]:
    return g.contract(u, v)


def red_degree(g: Trigraph, v: int) -> int:
    return g.red_degree(v)


def max_red_degree(g: Trigraph) -> int:
    return g.max_red_degree()


def induced_subtrigraph(g: Trigraph, s: Iterable[int]) -> Trigraph:
    keep = frozenset(s)
    missing = keep - g.vertices
    if missing:
        raise UnknownVertexError(min(missing))
    black = [e for e in g.black if e[0] in keep and e[1] in keep]
    red = [e for e in g.red if e[0] in keep and e[1] in keep]
    return Trigraph._trusted(keep, black, red, g.next_id)


def red_closure(g: Trigraph) -> Trigraph:
    """red(G): every edge recoloured red."""
    return Trigraph._trusted(g.vertices, (), g.black | g.red, g.next_id)


def is_subtrigraph(h: Trigraph, g: Trigraph, mapping: Mapping[int, int]) -> bool:
    """True iff `mapping` carries h onto a subtrigraph of g, colour by colour."""
    missing = h.vertices - set(mapping)
    if missing:
        raise UnknownVertexError(f"mapping is not total: {min(missing)} unmapped")
    images = [mapping[v] for v in h.vertices]
    if len(set(images)) != len(images):
        raise NonInjectiveMapError("vertex mapping is not injective")
    if any(x not in g.vertices for x in images):
        return False
    for u, v in h.black:
        if edge(mapping[u], mapping[v]) not in g.black:
            return False
    for u, v in h.red:
        if edge(mapping[u], mapping[v]) not in g.red:
            return False
    return True


@dataclass(frozen=True)
class ContractionStep:
    left: int
    right: int
    merged: int


@dataclass(frozen=True)
class ContractionSequence:
    steps: tuple[ContractionStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[ContractionStep]:
        return iter(self.steps)

    def __add__(self, other: "ContractionSequence") -> "ContractionSequence":
        return ContractionSequence(self.steps + other.steps)


@dataclass
class WidthReport:
    valid: bool
    width: int
    per_step_max_red: list[int] = field(default_factory=list)
    step_count: int = 0
    remaining_vertices: int = 0
    error: Optional[str] = None

    @property
    def full(self) -> bool:
        return self.valid and self.remaining_vertices <= 1


class ContractionState:
    """Mutable trigraph for replaying long sequences.

    Every contraction is appended to `steps`, and `per_step_max_red`
    records the maximum red degree of the initial trigraph and after each
    step, so `max(per_step_max_red)` is the width of the recorded sequence.
    """

    def __init__(self, g: Trigraph, next_id: Optional[int] = None):
        self.black: dict[int, set[int]] = {v: set() for v in g.vertices}
        self.red: dict[int, set[int]] = {v: set() for v in g.vertices}
        for u, v in g.black:
            self.black[u].add(v)
            self.black[v].add(u)
        for u, v in g.red:
            self.red[u].add(v)
            self.red[v].add(u)
        self.next_id = g.next_id if next_id is None else max(next_id, g.next_id)
        self.used: set[int] = set(g.vertices)
        self._hist = Counter(len(s) for s in self.red.values())
        self._max = max(self._hist) if self._hist else 0
        self.steps: list[ContractionStep] = []
        self.per_step_max_red: list[int] = [self._max]

    def __len__(self):
        return len(self.black)

    def __contains__(self, v):
        return v in self.black

    @property
    def vertices(self):
        return self.black.keys()

    def max_red_degree(self) -> int:
        return self._max

    def red_degree(self, v: int) -> int:
        return len(self.red[v])

    def width(self) -> int:
        return max(self.per_step_max_red)

    def _drop(self, k):
        self._hist[k] -= 1

    def _add(self, k):
        self._hist[k] += 1
        if k > self._max:
            self._max = k

    def contract(self, u: int, v: int, merged: Optional[int] = None) -> int:
        black, red = self.black, self.red
        if u == v:
            raise SameVertexError(f"cannot contract {u} with itself")
        if u not in black:
            raise UnknownVertexError(u)
        if v not in black:
            raise UnknownVertexError(v)
        if merged is None:
            merged = self.next_id
        elif merged in self.used:
            raise ValidationError(f"merged id {merged} is not fresh")
        bu, ru = black.pop(u), red.pop(u)
        bv, rv = black.pop(v), red.pop(v)
        self._drop(len(ru))
        self._drop(len(rv))
        pair = (u, v)
        new_black = (bu & bv).difference(pair)
        touched = (bu | ru | bv | rv).difference(pair)
        new_red = touched - new_black
        for x in touched:
            bx, rx = black[x], red[x]
            before = len(rx)
            bx.discard(u)
            bx.discard(v)
            rx.discard(u)
            rx.discard(v)
            if x in new_black:
                bx.add(merged)
            else:
                rx.add(merged)
            after = len(rx)
            if after != before:
                self._drop(before)
                self._add(after)
        black[merged] = new_black
        red[merged] = new_red
        self._add(len(new_red))
        hist = self._hist
        while self._max > 0 and hist[self._max] <= 0:
            self._max -= 1
        self.used.add(merged)
        self.next_id = max(self.next_id, merged + 1)
        self.steps.append(ContractionStep(u, v, merged))
        self.per_step_max_red.append(self._max)
        return merged

    def sequence(self) -> ContractionSequence:
        return ContractionSequence(self.steps)

    def snapshot(self) -> Trigraph:
        black = [(x, y) for x, ys in self.black.items() for y in ys if x < y]
        red = [(x, y) for x, ys in self.red.items() for y in ys if x < y]
        return Trigraph._trusted(self.black.keys(), black, red, self.next_id)


def apply_sequence(g: Trigraph, s: ContractionSequence | Iterable[ContractionStep]) -> WidthReport:
    """Replay `s` on `g` from scratch and measure its width.

    Ill-formed steps do not raise: the report comes back with
    ``valid=False`` and the width of the valid prefix.
    """
    state = ContractionState(g)
    count = 0
    for count, step in enumerate(s, start=1):
        try:
            state.contract(step.left, step.right, step.merged)
        except ValidationError as exc:
            return WidthReport(False, state.width(), list(state.per_step_max_red),
                               count - 1, len(state), f"step {count - 1}: {exc!r}")
    return WidthReport(True, state.width(), list(state.per_step_max_red), count, len(state))


def replay(g: Trigraph, s: Iterable[ContractionStep]) -> Trigraph:
    """Trigraph reached after applying every step of `s` (raises on bad steps)."""
    state = ContractionState(g)
    for step in s:
        state.contract(step.left, step.right, step.merged)
    return state.snapshot()


def complete_sequence(state: ContractionState) -> None:
    """Contract whatever is left in `state` down to one vertex, smallest ids first."""
    live = deque(sorted(state.vertices))
    while len(live) > 1:
        a = live.popleft()
        b = live.popleft()
        live.append(state.contract(a, b))
