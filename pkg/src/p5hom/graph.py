"""Undirected simple graphs with bitmask adjacency.

Vertices are the integers 1..n.  A vertex set travels in one of two
interchangeable forms: a frozenset of ids at API boundaries, or an int
bitmask with bit v set for vertex v inside the solvers (bit 0 is never
used).  All solver stages only ever delete vertices, never single edges,
so "the current graph" is always the original graph induced on a mask and
vertex ids stay stable through the whole pipeline.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import NamedTuple

__all__ = [
    "Graph",
    "InducedSubgraph",
    "connected_components",
    "enumerate_connected_subsets",
    "enumerate_independent_subsets",
    "find_induced_p5",
    "induced_subgraph",
    "is_module",
    "iter_mask",
    "mask_from",
    "masked_components",
    "neighborhood_mask",
    "set_from_mask",
]


def mask_from(vertices: Iterable[int]) -> int:
    """Bitmask with bit v set for every vertex v in the iterable."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_mask(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_mask(mask))


class Graph:
    """Immutable undirected simple graph on vertices 1..n.

    Duplicate edges are tolerated (adjacency is a set); self-loops are
    rejected.  Neighborhoods are stored as bitmasks so that intersection,
    union and difference of neighborhoods are single int operations.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative int, got {n!r}")
        adj = [0] * (n + 1)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        """Mask of all vertices."""
        return (1 << (self.n + 1)) - 2 if self.n else 0

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def adjacency_masks(self) -> tuple[int, ...]:
        """The whole adjacency table (index 0 unused), for hot loops."""
        return self._adj

    def closed_mask(self, v: int) -> int:
        return self._adj[v] | (1 << v)

    def neighbors(self, v: int) -> frozenset[int]:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")
        return set_from_mask(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise ValueError(f"edge query ({u}, {v}) out of range 1..{self.n}")
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v."""
        out = []
        for u in self.vertices:
            rest = self._adj[u] & (-1 << (u + 1))
            for v in iter_mask(rest):
                out.append((u, v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(self._adj[v].bit_count() for v in self.vertices) // 2

    # -- convenience constructors ----------------------------------------

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(v, v + 1) for v in range(1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls(n, [(v, v + 1) for v in range(1, n)] + [(n, 1)])

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class InducedSubgraph(NamedTuple):
    """An induced subgraph plus the vertex bijection in both directions.

    to_sub maps original id -> subgraph id; to_parent is indexed by the
    subgraph id (entry 0 unused).  Subgraph ids follow the sorted order of
    the selected vertices.
    """

    graph: Graph
    to_sub: dict[int, int]
    to_parent: tuple[int, ...]


def induced_subgraph(g: Graph, s: Iterable[int]) -> InducedSubgraph:
    verts = sorted(set(s))
    for v in verts:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
    to_sub = {v: i + 1 for i, v in enumerate(verts)}
    smask = mask_from(verts)
    edges = []
    for v in verts:
        rest = g.adjacency_mask(v) & smask & (-1 << (v + 1))
        for u in iter_mask(rest):
            edges.append((to_sub[v], to_sub[u]))
    return InducedSubgraph(Graph(len(verts), edges), to_sub, tuple([0] + verts))


def neighborhood_mask(g: Graph, mask: int) -> int:
    """Union of the open neighborhoods of the vertices in mask."""
    adj = g._adj
    out = 0
    for v in iter_mask(mask):
        out |= adj[v]
    return out


def masked_components(g: Graph, vmask: int) -> list[int]:
    """Connected components of g induced on vmask, as masks.

    Ordered by smallest contained vertex.
    """
    adj = g._adj
    comps = []
    rem = vmask
    while rem:
        comp = 0
        frontier = rem & -rem
        while frontier:
            comp |= frontier
            grow = 0
            for v in iter_mask(frontier):
                grow |= adj[v]
            frontier = grow & rem & ~comp
        comps.append(comp)
        rem &= ~comp
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Connected components as frozensets, ordered by smallest vertex."""
    return [set_from_mask(m) for m in masked_components(g, g.full_mask)]


def is_module(g: Graph, s: Iterable[int]) -> bool:
    """True iff every vertex of s has the same neighborhood outside s."""
    verts = sorted(set(s))
    if not verts:
        raise ValueError("module test on an empty vertex set")
    for v in verts:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
    smask = mask_from(verts)
    outside = g.adjacency_mask(verts[0]) & ~smask
    return all(g.adjacency_mask(v) & ~smask == outside for v in verts[1:])


def find_induced_p5(g: Graph) -> tuple[int, int, int, int, int] | None:
    """First induced 5-vertex path, as an ordered tuple, or None.

    Walks every induced path on 3 vertices b-c-d and asks whether it
    extends on both ends: an endpoint a adjacent to b but to neither c
    nor d, and an endpoint e adjacent to d but to none of a, b, c.
    Deterministic: all loops ascend, so the answer is stable.
    """
    adj = g._adj
    for c in g.vertices:
        nc = adj[c]
        ncc = nc | (1 << c)
        for b in iter_mask(nc):
            higher = nc & (-1 << (b + 1))
            for d in iter_mask(higher):
                if adj[b] >> d & 1:
                    continue
                a_cands = adj[b] & ~ncc & ~(adj[d] | (1 << d))
                if not a_cands:
                    continue
                e_base = adj[d] & ~ncc & ~(adj[b] | (1 << b))
                if not e_base:
                    continue
                for a in iter_mask(a_cands):
                    rest = e_base & ~(adj[a] | (1 << a))
                    if rest:
                        e = (rest & -rest).bit_length() - 1
                        return (a, b, c, d, e)
    return None


def enumerate_connected_subsets(
    g: Graph, lo: int, hi: int
) -> Iterator[frozenset[int]]:
    """All vertex sets of size lo..hi inducing a connected subgraph.

    Yields each set exactly once, in lexicographic order of the sorted
    vertex tuple.  Requires 1 <= lo <= hi.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    adj = g._adj
    found: list[int] = []

    def grow(smask: int, size: int, ext: int, nbrs: int, above: int) -> None:
        if size >= lo:
            found.append(smask)
        if size == hi:
            return
        while ext:
            wbit = ext & -ext
            ext ^= wbit
            w = wbit.bit_length() - 1
            fresh = adj[w] & above & ~(smask | nbrs)
            grow(smask | wbit, size + 1, ext | fresh, nbrs | adj[w], above)

    for v in g.vertices:
        above = -1 << (v + 1)
        grow(1 << v, 1, adj[v] & above, adj[v], above)
    found.sort(key=lambda m: tuple(iter_mask(m)))
    for m in found:
        yield set_from_mask(m)


def enumerate_independent_subsets(
    g: Graph, pool: Iterable[int], maxsize: int
) -> Iterator[frozenset[int]]:
    """All independent subsets of pool with size <= maxsize, including the
    empty set, in lexicographic order of the sorted vertex tuple."""
    if maxsize < 0:
        raise ValueError(f"maxsize must be >= 0, got {maxsize}")
    verts = sorted(set(pool))
    for v in verts:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
    adj = g._adj
    chosen: list[int] = []

    def rec(start: int, forbidden: int) -> Iterator[frozenset[int]]:
        yield frozenset(chosen)
        if len(chosen) == maxsize:
            return
        for idx in range(start, len(verts)):
            v = verts[idx]
            if forbidden >> v & 1:
                continue
            chosen.append(v)
            yield from rec(idx + 1, forbidden | adj[v])
            chosen.pop()

    yield from rec(0, 0)
