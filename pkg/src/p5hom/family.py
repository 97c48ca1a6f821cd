"""Component family construction.

Builds, for a P5-free instance, a polynomial bag of connected vertex
sets (each admitting a list homomorphism) guaranteed to contain every
connected component of some maximum-weight solution.  Seeding starts
with all single vertices carrying a nonempty list.  Then, for every
nonempty color subset W with at least two colors (lists restricted to W;
one-color components are already covered by the singletons), the builder
guesses a connected dominator set D of |W| or |W|+1 vertices and a
surjective coloring h of D onto W, prunes vertices adjacent to every
color class, prunes components of G - N[D] that are not modules, guesses
a second set D' of at most |W|+1 vertices, closes N[D u D'] downward
until nothing inside keeps a neighbor outside, and hands the closed
region to the connected-case solver.  The connected components of every
answer enter the family.

All pruning works on vertex-mask views over the original graph, so
members come out in original vertex ids directly.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from .connected import ConnectedSolver
from .graph import (
    Graph,
    enumerate_connected_subsets,
    find_induced_p5,
    iter_mask,
    mask_from,
    masked_components,
    set_from_mask,
)
from .pattern import Instance

__all__ = [
    "Family",
    "FamilyProvenance",
    "NotP5FreeError",
    "build_family",
    "core_region",
    "prune_common_neighbors",
    "prune_non_module_components",
]


class NotP5FreeError(Exception):
    """The input graph contains an induced 5-vertex path."""

    def __init__(self, witness: tuple[int, int, int, int, int]) -> None:
        super().__init__(f"input graph is not P5-free; induced path {witness}")
        self.witness = witness


@dataclass(frozen=True)
class FamilyProvenance:
    """Which guess produced a member: the color subset, the dominators,
    their coloring, and the second guessed set."""

    colors: tuple[int, ...]
    dominators: tuple[int, ...]
    coloring: tuple[int, ...]
    second: tuple[int, ...]


@dataclass(frozen=True)
class Family:
    """Deduplicated members (sorted by size, then lexicographically) with
    per-member provenance ("singleton" or the producing guess)."""

    members: tuple[frozenset[int], ...]
    provenance: Mapping[frozenset[int], FamilyProvenance | str]
    exhaustive: bool


def _prune_common_mask(
    adj: Sequence[int], vmask: int, class_masks: Sequence[int]
) -> int:
    """Delete, smallest id first and one at a time, any vertex adjacent to
    at least one live member of every color class."""
    while True:
        victim = 0
        alive = [cm & vmask for cm in class_masks]
        if any(a == 0 for a in alive):
            break
        for v in iter_mask(vmask):
            av = adj[v]
            if all(av & a for a in alive):
                victim = 1 << v
                break
        if not victim:
            break
        vmask ^= victim
    return vmask


def prune_common_neighbors(
    g: Graph,
    dominators: Iterable[int],
    coloring: Mapping[int, int],
    within: Iterable[int] | None = None,
) -> frozenset[int]:
    """Surviving vertices after deleting common neighbors of all classes.

    coloring maps each dominator to its class; every class must be
    nonempty.  Deletion repeats until no vertex (the dominators included)
    is adjacent to a live member of every class.
    """
    doms = sorted(set(dominators))
    if not doms:
        raise ValueError("dominator set must be nonempty")
    if set(coloring) != set(doms):
        raise ValueError("coloring must be defined exactly on the dominators")
    classes: dict[int, int] = {}
    for d in doms:
        if not 1 <= d <= g.n:
            raise ValueError(f"dominator {d} out of range 1..{g.n}")
        classes[coloring[d]] = classes.get(coloring[d], 0) | (1 << d)
    if not classes:
        raise ValueError("coloring has no classes")
    vmask = g.full_mask if within is None else mask_from(within)
    out = _prune_common_mask(g.adjacency_masks(), vmask, list(classes.values()))
    return set_from_mask(out)


def _prune_non_modules_mask(g: Graph, vmask: int, dmask: int) -> int:
    """Delete every component of the graph minus N[D] that is not a module
    of the current graph, repeating until all such components are modules."""
    adj = g.adjacency_masks()
    while True:
        nd = dmask & vmask
        for d in iter_mask(dmask & vmask):
            nd |= adj[d]
        outside = vmask & ~nd
        bad = 0
        for comp in masked_components(g, outside):
            first = comp & -comp
            ref = adj[first.bit_length() - 1] & vmask & ~comp
            for v in iter_mask(comp ^ first):
                if adj[v] & vmask & ~comp != ref:
                    bad |= comp
                    break
        if not bad:
            return vmask
        vmask &= ~bad


def prune_non_module_components(
    g: Graph, dominators: Iterable[int], within: Iterable[int] | None = None
) -> frozenset[int]:
    """Surviving vertices after deleting non-module components of G - N[D]."""
    dmask = mask_from(dominators)
    if not dmask:
        raise ValueError("dominator set must be nonempty")
    vmask = g.full_mask if within is None else mask_from(within)
    return set_from_mask(_prune_non_modules_mask(g, vmask, dmask))


def _core_region_mask(adj: Sequence[int], vmask: int, seed: int) -> tuple[int, int]:
    """Close the seed region downward: repeatedly delete (from the graph
    and the region) the smallest region vertex with a neighbor outside."""
    core = seed & vmask
    while True:
        for v in iter_mask(core):
            if adj[v] & vmask & ~core:
                bit = 1 << v
                core ^= bit
                vmask ^= bit
                break
        else:
            return vmask, core


def core_region(
    g: Graph,
    dominators: Iterable[int],
    second: Iterable[int],
    within: Iterable[int] | None = None,
) -> tuple[frozenset[int], frozenset[int]]:
    """(surviving vertices, closed region) for the seed N[D u D'].

    The seed is the closed neighborhood of D u D' in the current graph;
    any seed vertex with a neighbor outside the region is deleted from
    both, smallest first, until the region has no outgoing edges (so it is
    a union of whole components of what remains).
    """
    vmask = g.full_mask if within is None else mask_from(within)
    both = mask_from(dominators) | mask_from(second)
    if both & ~vmask:
        raise ValueError("dominators and second set must lie inside the current graph")
    adj = g.adjacency_masks()
    seed = both
    for v in iter_mask(both):
        seed |= adj[v]
    seed &= vmask
    out_vmask, core = _core_region_mask(adj, vmask, seed)
    return set_from_mask(out_vmask), set_from_mask(core)


def _surjections(doms: tuple[int, ...], colors: tuple[int, ...]):
    """All colorings of doms using every color at least once."""
    want = set(colors)
    for combo in product(colors, repeat=len(doms)):
        if set(combo) == want:
            yield combo


def _family_chunk(args) -> tuple[list[tuple[int, FamilyProvenance]], bool]:
    """Process a chunk of (color-subset, dominator-set) tasks.

    Returns discovered members as (mask, provenance) in deterministic
    order, plus whether the search stayed exhaustive.  Runs in a worker
    process under build_family(jobs > 1), so it keeps its own solver and
    memo table.
    """
    inst, tasks, budget = args
    g = inst.g
    adj = g.adjacency_masks()
    full = g.full_mask
    base_lists = inst.lists_masks
    solver = ConnectedSolver(g, inst.h, inst.wt_tuple, budget=budget)
    found: list[tuple[int, FamilyProvenance]] = []
    for wmask, doms in tasks:
        colors = tuple(iter_mask(wmask))
        kprime = len(colors)
        lists_w = tuple(lv & wmask for lv in base_lists)
        dmask = mask_from(doms)
        for h in _surjections(doms, colors):
            classes: dict[int, int] = {}
            for d, c in zip(doms, h):
                classes[c] = classes.get(c, 0) | (1 << d)
            v1 = _prune_common_mask(adj, full, list(classes.values()))
            v2 = _prune_non_modules_mask(g, v1, dmask)
            if dmask & ~v2:
                continue  # a dominator was pruned; the region step needs D intact
            closed_d = dmask
            for d in doms:
                closed_d |= adj[d]
            closed_d &= v2
            seen: set[int] = set()
            verts2 = list(iter_mask(v2))
            for size in range(0, kprime + 2):
                for second in combinations(verts2, size):
                    seed = closed_d
                    for v in second:
                        seed |= adj[v] | (1 << v)
                    seed &= v2
                    if seed in seen:
                        continue
                    seen.add(seed)
                    _, core = _core_region_mask(adj, v2, seed)
                    if not core:
                        continue
                    _, assignment = solver.solve_masked(core, lists_w)
                    if not assignment:
                        continue
                    chosen = mask_from(v for v, _ in assignment)
                    prov = FamilyProvenance(colors, doms, h, second)
                    for comp in masked_components(g, chosen):
                        found.append((comp, prov))
    return found, solver.exhaustive


def build_family(
    inst: Instance, budget: int | None = None, jobs: int = 1
) -> Family:
    """Build the component family for a P5-free instance.

    Raises NotP5FreeError (with a witness path) otherwise.  jobs > 1
    distributes the deterministic (color subset, dominator set) task list
    over worker processes; members are merged in task order, so the result
    is identical to a serial run.
    """
    witness = find_induced_p5(inst.g)
    if witness is not None:
        raise NotP5FreeError(witness)
    members: dict[int, FamilyProvenance | str] = {}
    for v in inst.g.vertices:
        if inst.lists[v]:
            members.setdefault(1 << v, "singleton")

    k = inst.h.k
    all_colors = list(range(1, k + 1))
    tasks: list[tuple[int, tuple[int, ...]]] = []
    for size_w in range(2, k + 1):
        if inst.g.n < size_w:
            break
        hi = min(size_w + 1, inst.g.n)
        for wcolors in combinations(all_colors, size_w):
            wmask = 0
            for c in wcolors:
                wmask |= 1 << c
            for dset in enumerate_connected_subsets(inst.g, size_w, hi):
                tasks.append((wmask, tuple(sorted(dset))))

    if not tasks:
        chunks: list[tuple[list[tuple[int, FamilyProvenance]], bool]] = []
    elif jobs <= 1 or len(tasks) <= 1:
        chunks = [_family_chunk((inst, tasks, budget))]
    else:
        step = (len(tasks) + jobs - 1) // jobs
        parts = [tasks[i : i + step] for i in range(0, len(tasks), step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_family_chunk, [(inst, p, budget) for p in parts]))
    exhaustive = all(flag for _, flag in chunks) if chunks else True
    for found, _ in chunks:
        for mask, prov in found:
            members.setdefault(mask, prov)

    ordered = sorted(members, key=lambda m: (m.bit_count(), tuple(iter_mask(m))))
    member_sets = tuple(set_from_mask(m) for m in ordered)
    provenance = {set_from_mask(m): members[m] for m in ordered}
    return Family(member_sets, provenance, exhaustive)
