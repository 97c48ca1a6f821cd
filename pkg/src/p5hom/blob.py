"""Blob-graph reduction: from a component family to one MWIS call.

Two vertex sets touch when they share a vertex or an edge joins them.
The blob graph has one vertex per family member, weighted by the
member's total weight, with edges between touching members.  A maximum
weight independent set of the blob graph selects pairwise non-touching
members whose union is the final answer; each selected member is colored
independently by its own list homomorphism, which cannot conflict with
the others because non-touching sets share neither vertices nor edges.

For P5-free inputs the blob graph is itself P5-free; the test suite
probes that as an invariant but the solver does not rely on it (the MWIS
stage is exact on arbitrary graphs).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .family import Family, build_family
from .graph import Graph, induced_subgraph, mask_from, neighborhood_mask
from .mwis import WeightedGraph, solve_mwis
from .pattern import Instance, Solution, exists_list_hom, verify_solution
from .connected import SolveResult

__all__ = ["BlobGraph", "build_blob_graph", "solve_full", "touches"]

ZERO = Fraction(0)


def touches(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff the two vertex sets intersect or an edge joins them."""
    amask = mask_from(a)
    bmask = mask_from(b)
    if (amask | bmask) & ~g.full_mask:
        raise ValueError("vertex set out of range")
    if amask & bmask:
        return True
    return bool(neighborhood_mask(g, amask) & bmask)


@dataclass(frozen=True)
class BlobGraph:
    """One vertex per family member (1-based, family order), weighted by
    the member's weight sum, adjacent iff the members touch."""

    graph: Graph
    weights: tuple[Fraction, ...]  # indexed by blob vertex, entry 0 unused
    members: tuple[frozenset[int], ...]


def build_blob_graph(inst: Instance, fam: Family) -> BlobGraph:
    members = fam.members
    m = len(members)
    masks = [mask_from(s) for s in members]
    reach = [mask | neighborhood_mask(inst.g, mask) for mask in masks]
    edges = []
    for i in range(m):
        ri = reach[i]
        for j in range(i + 1, m):
            if ri & masks[j]:
                edges.append((i + 1, j + 1))
    weights = [ZERO] + [inst.weight_of(s) for s in members]
    return BlobGraph(Graph(m, edges), tuple(weights), members)


def solve_full(
    inst: Instance, budget: int | None = None, jobs: int = 1
) -> SolveResult:
    """Full pipeline: family, blob graph, MWIS, per-member coloring.

    Raises NotP5FreeError on inputs with an induced 5-vertex path.  The
    returned solution is always verified feasible; with an uncapped
    budget and a complete pattern it is exact at the scales the test
    suite probes (the differential suite measures any gap for other
    patterns).
    """
    fam = build_family(inst, budget=budget, jobs=jobs)
    blob = build_blob_graph(inst, fam)
    picked, blob_weight = solve_mwis(
        WeightedGraph(blob.graph, {v: blob.weights[v] for v in blob.graph.vertices})
    )
    coloring: dict[int, int] = {}
    for bv in sorted(picked):
        member = blob.members[bv - 1]
        sub = induced_subgraph(inst.g, member)
        hom = exists_list_hom(
            sub.graph, inst.h, {sub.to_sub[v]: inst.lists[v] for v in member}
        )
        if hom is None:
            raise RuntimeError(
                f"internal error: family member {sorted(member)} admits no list homomorphism"
            )
        coloring.update({sub.to_parent[nv]: c for nv, c in hom.items()})
    sol = Solution.from_assignment(inst, coloring)
    if sol.weight != blob_weight:
        raise RuntimeError(
            f"internal error: assembled weight {sol.weight} != blob MWIS weight {blob_weight}"
        )
    violation = verify_solution(inst, sol)
    if violation is not None:
        raise RuntimeError(f"internal error: pipeline produced invalid solution ({violation})")
    return SolveResult(sol, fam.exhaustive)
