"""Abstract simplicial and cubical complexes.

Simplicial cells are sorted tuples of integer ground-set tokens.  Cubical
cells are ``(base, dirs)`` pairs: the unit cube ``base + sum_{a in dirs}
[0,1] e_a``.  Every complex interns its cells to dense ids in canonical
order (dimension first, then key), and a barycentric subdivision uses
those ids as its ground set, keeping a `parent` link so a chain of chains
can always be decoded back to cubes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .config import cell_budget
from .errors import DimensionError, NotPureError, SizeError, UnknownCellError, ValidationError
from .trigraph import Trigraph

SIMPLICIAL = "simplicial"
CUBICAL = "cubical"


def cell_dim(kind: str, key) -> int:
    if kind == SIMPLICIAL:
        return len(key) - 1
    return len(key[1])


def simplex_faces(key: tuple) -> list[tuple]:
    """All nonempty proper faces of a simplex."""
    out = []
    for r in range(1, len(key)):
        out.extend(itertools.combinations(key, r))
    return out


def cube_faces(key) -> list:
    """All proper faces of a cube: fix each direction in T to either end."""
    base, dirs = key
    out = []
    for r in range(1, len(dirs) + 1):
        for fixed in itertools.combinations(dirs, r):
            rest = tuple(a for a in dirs if a not in fixed)
            for ends in itertools.product((0, 1), repeat=r):
                b = list(base)
                for a, e in zip(fixed, ends):
                    b[a] += e
                out.append((tuple(b), rest))
    return out


def cube_facets(key) -> list:
    base, dirs = key
    out = []
    for a in dirs:
        rest = tuple(x for x in dirs if x != a)
        out.append((base, rest))
        b = list(base)
        b[a] += 1
        out.append((tuple(b), rest))
    return out


def _sort_key(kind):
    if kind == SIMPLICIAL:
        return lambda k: (len(k), k)
    return lambda k: (len(k[1]), k)


class Complex:
    """Finite cell complex closed under taking faces."""

    def __init__(self, kind: str, cells: Iterable, parent: Optional["Complex"] = None,
                 check: bool = True):
        if kind not in (SIMPLICIAL, CUBICAL):
            raise ValidationError(f"unknown complex kind {kind!r}")
        self.kind = kind
        if kind == SIMPLICIAL:
            keys = {tuple(sorted(c)) for c in cells}
            if () in keys:
                raise ValidationError("the empty simplex is not stored")
        else:
            keys = {(tuple(b), tuple(sorted(d))) for b, d in cells}
        self.cells: tuple = tuple(sorted(keys, key=_sort_key(kind)))
        self.index: dict = {c: i for i, c in enumerate(self.cells)}
        self.parent = parent
        self._vertex_cells = None
        if check:
            for c in self.cells:
                for f in self.faces(c):
                    if f not in self.index:
                        raise ValidationError(f"not downward closed: face {f} of {c} missing")

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "Complex":
        """Simplicial complex generated by the given simplices and all their faces."""
        keys = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s or s in keys:
                continue
            keys.add(s)
            keys.update(simplex_faces(s))
        return cls(SIMPLICIAL, keys, check=False)

    @classmethod
    def from_cubes(cls, cubes: Iterable) -> "Complex":
        keys = set()
        for b, d in cubes:
            k = (tuple(b), tuple(sorted(d)))
            keys.add(k)
            keys.update(cube_faces(k))
        return cls(CUBICAL, keys, check=False)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, key):
        return key in self.index

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.kind == other.kind and self.cells == other.cells

    def __repr__(self):
        return f"Complex({self.kind}, dim={self.dim}, f={self.f_vector()})"

    @property
    def dim(self) -> int:
        if not self.cells:
            return -1
        return self.dim_of(self.cells[-1])

    def dim_of(self, key) -> int:
        return cell_dim(self.kind, key)

    def id_of(self, key) -> int:
        try:
            return self.index[key]
        except KeyError:
            raise UnknownCellError(key) from None

    def cells_of_dim(self, i: int) -> list:
        return [c for c in self.cells if self.dim_of(c) == i]

    def faces(self, key) -> list:
        if self.kind == SIMPLICIAL:
            return simplex_faces(key)
        return cube_faces(key)

    def facets(self, key) -> list:
        if self.kind == SIMPLICIAL:
            if len(key) == 1:
                return []
            return list(itertools.combinations(key, len(key) - 1))
        return cube_facets(key)

    def vertices_of(self, key) -> list:
        if self.kind == SIMPLICIAL:
            return [(t,) for t in key]
        base, dirs = key
        return [f for f in cube_faces(key) if not f[1]] if dirs else [key]

    def is_face(self, a, b) -> bool:
        """a is a face of b (not necessarily proper)."""
        if self.kind == SIMPLICIAL:
            return set(a) <= set(b)
        (ba, da), (bb, db) = a, b
        if not set(da) <= set(db):
            return False
        for axis in range(len(bb)):
            if axis in db:
                if axis in da:
                    if ba[axis] != bb[axis]:
                        return False
                elif ba[axis] not in (bb[axis], bb[axis] + 1):
                    return False
            elif ba[axis] != bb[axis]:
                return False
        return True

    def is_chain(self, ids: Iterable[int]) -> bool:
        """Whether the cells with these ids are totally ordered by the face relation."""
        keys = sorted((self.cells[i] for i in set(ids)), key=self.dim_of)
        for a, b in zip(keys, keys[1:]):
            if self.dim_of(a) == self.dim_of(b) or not self.is_face(a, b):
                return False
        return True

    def maximal_cells(self) -> list:
        covered = set()
        for c in self.cells:
            covered.update(self.facets(c))
        return [c for c in self.cells if c not in covered]

    def f_vector(self) -> list[int]:
        f = [0] * (self.dim + 1)
        for c in self.cells:
            f[self.dim_of(c)] += 1
        return f

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * fi for i, fi in enumerate(self.f_vector()))

    def is_pure(self) -> bool:
        top = self.dim
        return all(self.dim_of(c) == top for c in self.maximal_cells())

    def _cells_by_vertex(self):
        if self._vertex_cells is None:
            table = {}
            for c in self.cells:
                for v in self.vertices_of(c):
                    table.setdefault(v, []).append(c)
            self._vertex_cells = table
        return self._vertex_cells

    def decode(self, key, depth: int = 1):
        """Replace ground-set ids by the parent's cells, `depth` levels deep."""
        if depth == 0 or self.parent is None:
            return key
        return tuple(self.parent.decode(self.parent.cells[i], depth - 1) for i in key)


def _check_budget(count, budget, what):
    limit = cell_budget(budget)
    if count > limit:
        raise SizeError(f"{what} needs {count} cells, budget is {limit}")


def honeycomb(d: int, n: int, budget: Optional[int] = None) -> Complex:
    """The cubical decomposition of [1, n]^d into (n-1)^d unit cubes."""
    if d < 1 or n < 2:
        raise ValidationError(f"honeycomb needs d >= 1 and n >= 2, got d={d}, n={n}")
    _check_budget((2 * n - 1) ** d, budget, f"honeycomb({d},{n})")
    cells = []
    for mask in range(1 << d):
        dirs = tuple(a for a in range(d) if mask >> a & 1)
        ranges = [range(1, n) if a in dirs else range(1, n + 1) for a in range(d)]
        for base in itertools.product(*ranges):
            cells.append((base, dirs))
    return Complex(CUBICAL, cells, check=False)


def simplex(k: int) -> Complex:
    """The full k-simplex on tokens 0..k."""
    return Complex.from_simplices([range(k + 1)])


def cube(k: int) -> Complex:
    """A single k-cube with all its faces."""
    return honeycomb(k, 2)


def barycentric_subdivision(x: Complex, max_dim: Optional[int] = None,
                            budget: Optional[int] = None) -> Complex:
    """Simplicial complex of chains of x's face poset.

    With `max_dim` only chains of at most ``max_dim + 1`` cells are built,
    i.e. the `max_dim`-skeleton of the subdivision, without materializing
    the rest.
    """
    limit = cell_budget(budget)
    index = x.index
    below = [[index[f] for f in x.faces(c)] for c in x.cells]
    longest = x.dim + 1 if max_dim is None else max_dim + 1
    out = []

    def extend(chain):
        out.append(tuple(reversed(chain)))
        if len(out) > limit:
            raise SizeError(f"barycentric subdivision exceeds the cell budget {limit}")
        if len(chain) < longest:
            for f in below[chain[-1]]:
                chain.append(f)
                extend(chain)
                chain.pop()

    for top in range(len(x.cells)):
        extend([top])
    return Complex(SIMPLICIAL, out, parent=x, check=False)


def iterated_subdivision(x: Complex, iterations: int, max_dim: Optional[int] = None,
                         budget: Optional[int] = None) -> Complex:
    for i in range(iterations):
        last = i == iterations - 1
        x = barycentric_subdivision(x, max_dim if last else None, budget)
    return x


def skeleton(x: Complex, i: int) -> Complex:
    if i < 0 or i > x.dim:
        raise DimensionError(f"skeleton index {i} outside 0..{x.dim}")
    if i == x.dim:
        return x
    keep = [c for c in x.cells if x.dim_of(c) <= i]
    sk = Complex(x.kind, keep, parent=x.parent, check=False)
    return sk


def is_pure(x: Complex) -> bool:
    return x.is_pure()


def f_vector(x: Complex) -> list[int]:
    return x.f_vector()


def euler_characteristic(x: Complex) -> int:
    return x.euler_characteristic()


def closed_star(x: Complex, v) -> set:
    """All faces of all cells containing the vertex v."""
    if v not in x.index or x.dim_of(v) != 0:
        raise UnknownCellError(v)
    star = set()
    for c in x._cells_by_vertex().get(v, ()):
        star.add(c)
        star.update(x.faces(c))
    return star


@dataclass
class DualGraph:
    graph: Trigraph
    cells: list  # vertex id -> i-cell key

    def vertex_of(self, key) -> int:
        return self.cells.index(key)


def dual_graph(x: Complex, i: int) -> DualGraph:
    """Γ(X_i): one vertex per i-cell, edges between i-cells sharing an (i-1)-face."""
    if i < 1 or i > x.dim:
        raise DimensionError(f"dual graph needs 1 <= i <= {x.dim}, got {i}")
    tops = x.cells_of_dim(i)
    covered = set()
    for c in tops:
        covered.update(x.faces(c))
    for c in x.cells:
        if x.dim_of(c) < i and c not in covered:
            raise NotPureError(f"cell {c} lies in no {i}-cell")
    by_facet = {}
    for vid, c in enumerate(tops):
        for f in x.facets(c):
            by_facet.setdefault(f, []).append(vid)
    edges = set()
    for group in by_facet.values():
        for a, b in itertools.combinations(group, 2):
            edges.add((a, b))
    g = Trigraph._trusted(range(len(tops)), edges, (), len(tops))
    return DualGraph(g, tops)


def face_count_conventions(max_k: int = 4) -> list[dict]:
    """Face counts measured by enumeration, one row per k.

    ``simplex_faces[l]`` is the number of l-faces of the k-simplex (k+1
    vertices); ``sd_simplex_top`` and ``sd_cube_top`` count the top
    simplices of the barycentric subdivision of the k-simplex and k-cube.
    """
    rows = []
    for k in range(1, max_k + 1):
        s = simplex(k)
        rows.append({
            "k": k,
            "simplex_faces": s.f_vector(),
            "sd_simplex_top": barycentric_subdivision(s).f_vector()[k],
            "sd_cube_top": barycentric_subdivision(cube(k)).f_vector()[k],
            "formula_simplex_faces": [math.comb(k + 1, l + 1) for l in range(k + 1)],
            "formula_sd_simplex_top": math.factorial(k + 1),
            "formula_sd_cube_top": 2 ** k * math.factorial(k),
        })
    return rows
