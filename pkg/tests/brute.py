"""Exhaustive reference implementations for the test suite.

Everything here enumerates without pruning so it stays independent of the
branch-and-bound / guessing machinery under test.  Usable only at desk
scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from p5hom.graph import Graph
from p5hom.pattern import Instance, PatternGraph


def brute_mwis(n: int, edges: list[tuple[int, int]],
               weights: dict[int, Fraction]) -> Fraction:
    """Best independent-set weight by trying every vertex subset."""
    verts = list(range(1, n + 1))
    eset = {frozenset(e) for e in edges}
    best = Fraction(0)
    for r in range(n + 1):
        for sub in itertools.combinations(verts, r):
            if any(frozenset(p) in eset for p in itertools.combinations(sub, 2)):
                continue
            w = sum((weights[v] for v in sub), Fraction(0))
            if w > best:
                best = w
    return best


def brute_mwis_subsets(n: int, edges: list[tuple[int, int]],
                       weights: dict[int, Fraction]) -> Fraction:
    """Best independent-set weight by enumerating all 2^n subsets as masks.

    Same answer as brute_mwis but tolerable up to n = 16: a subset is
    independent iff dropping its lowest vertex leaves an independent set
    with no edge back to that vertex.
    """
    adj = [0] * n  # bit v-1 stands for vertex v
    for u, v in edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    size = 1 << n
    indep = bytearray(size)
    indep[0] = 1
    wsum = [Fraction(0)] * size
    best = Fraction(0)
    for m in range(1, size):
        low = m & -m
        rest = m ^ low
        v = low.bit_length() - 1
        if indep[rest] and not (adj[v] & rest):
            indep[m] = 1
            w = wsum[rest] + weights[v + 1]
            wsum[m] = w
            if w > best:
                best = w
    return best


def brute_mplhc(inst: Instance) -> Fraction:
    """Best partial-list-homomorphism weight by trying every subset and
    every coloring of it."""
    verts = list(inst.g.vertices)
    best = Fraction(0)
    for r in range(len(verts) + 1):
        for sub in itertools.combinations(verts, r):
            w = sum((inst.wt[v] for v in sub), Fraction(0))
            if w <= best:
                continue
            pools = [sorted(inst.lists[v]) for v in sub]
            if any(not p for p in pools):
                continue
            for colors in itertools.product(*pools):
                assign = dict(zip(sub, colors))
                ok = True
                for u, v in itertools.combinations(sub, 2):
                    if inst.g.has_edge(u, v) and not inst.h.has_edge(assign[u], assign[v]):
                        ok = False
                        break
                if ok:
                    best = w
                    break
    return best


def brute_has_induced_p5(g: Graph) -> bool:
    """Check every 5-vertex subset for an induced path.

    A 5-vertex graph is a path iff it has exactly 4 edges, maximum degree
    2, and is connected (a connected 4-edge graph on 5 vertices is a tree,
    and a tree with maximum degree 2 is a path).
    """
    for combo in itertools.combinations(g.vertices, 5):
        deg = dict.fromkeys(combo, 0)
        m = 0
        for u, v in itertools.combinations(combo, 2):
            if g.has_edge(u, v):
                m += 1
                deg[u] += 1
                deg[v] += 1
        if m != 4 or max(deg.values()) > 2:
            continue
        seen = {combo[0]}
        stack = [combo[0]]
        inside = set(combo)
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in inside and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == 5:
            return True
    return False


def brute_connected_subsets(g: Graph, lo: int, hi: int) -> set[frozenset[int]]:
    """All connected vertex subsets with lo <= size <= hi, by filtering
    every subset."""
    out: set[frozenset[int]] = set()
    verts = list(g.vertices)
    for r in range(lo, hi + 1):
        for sub in itertools.combinations(verts, r):
            seen = {sub[0]}
            stack = [sub[0]]
            inside = set(sub)
            while stack:
                u = stack.pop()
                for w in g.neighbors(u):
                    if w in inside and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == r:
                out.add(frozenset(sub))
    return out


def brute_has_connected_optimum(inst: Instance, opt: Fraction) -> bool:
    """Does some solution of weight opt induce a connected subgraph?

    The empty solution counts when the optimum is zero.  The dominating-
    set solver promises exactness only on instances where this holds.
    """
    if opt == 0:
        return True
    g = inst.g
    for sub in brute_connected_subsets(g, 1, g.n):
        if sum((inst.wt[v] for v in sub), Fraction(0)) != opt:
            continue
        order = sorted(sub)
        pools = [sorted(inst.lists[v]) for v in order]
        if any(not p for p in pools):
            continue
        inner = [(u, v) for u, v in g.edges() if u in sub and v in sub]
        for colors in itertools.product(*pools):
            assign = dict(zip(order, colors))
            if all(inst.h.has_edge(assign[u], assign[v]) for u, v in inner):
                return True
    return False


def brute_exists_hom(g: Graph, h: PatternGraph,
                     lists: dict[int, frozenset[int]]) -> bool:
    """Does a full list homomorphism exist?  Tries every coloring."""
    verts = list(g.vertices)
    pools = [sorted(lists[v]) for v in verts]
    if any(not p for p in pools):
        return False
    for colors in itertools.product(*pools):
        assign = dict(zip(verts, colors))
        if all(h.has_edge(assign[u], assign[v]) for u, v in g.edges()):
            return True
    return False
