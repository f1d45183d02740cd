"""Class-head assignment over the density landscape.

Every node carries a sorted list of head ids. A node inherits heads from
its surplombant in-neighbours (strictly denser ones, or under the
"dominates" mode the one that out-ranks its whole 1-neighbourhood):
rule A copies the most surplombant neighbour's heads, rule B unions the
heads of all of them. A node with no surplombant becomes a head itself —
unless an equal-density in-neighbour also tops its own surroundings, in
which case the oldest node of the tie takes the head role for all of them
(this is what folds exact duplicates into a single class).

Changes propagate downhill through a worklist processed by decreasing
density until the labelling reaches its fixed point, which is unique for
a given graph and density landscape.
"""

from __future__ import annotations

from enum import Enum

from .errors import NonTerminationError
from .graph import NeighborGraph


class NodeCategory(str, Enum):
    NOYAU_MEMBER = "noyau_member"
    NODULE = "nodule"
    ISOLE = "isole"
    MULTIVALENT = "multivalent"


def surplombants(
    graph: NeighborGraph, densities: list[float], v: int, mode: str = "strict"
) -> list[int]:
    """In-neighbours of v that overhang it, most overhanging first.

    Ordered by descending density, ties by ascending arrival index (the
    older node wins).
    """
    if mode == "strict":
        found = [u for u in graph.in_links[v] if densities[u] > densities[v]]
    else:
        neighborhood = graph.neighborhood(v, 1)
        found = [
            u
            for u in graph.in_links[v]
            if densities[u] > densities[v]
            and all(densities[u] > densities[w] for w in neighborhood if w != u)
        ]
    found.sort(key=lambda u: (-densities[u], u))
    return found


def _has_surplombant(graph: NeighborGraph, densities: list[float], v: int, mode: str) -> bool:
    return bool(surplombants(graph, densities, v, mode))


def apply_rule(
    graph: NeighborGraph,
    densities: list[float],
    lcc: list[list[int]],
    v: int,
    rule: str = "B",
    mode: str = "strict",
) -> list[int]:
    """Head list v should carry given the current state (does not mutate)."""
    over = surplombants(graph, densities, v, mode)
    if over:
        if rule == "A":
            return list(lcc[over[0]])
        union: set[int] = set()
        for u in over:
            union.update(lcc[u])
        return sorted(union)
    # Local peak. Equal-density in-neighbours that are themselves peaks
    # share one class, headed by the oldest of them.
    peak = v
    for u in graph.in_links[v]:
        if (
            densities[u] == densities[v]
            and u < peak
            and not _has_surplombant(graph, densities, u, mode)
        ):
            peak = u
    return [peak]


def propagate(
    graph: NeighborGraph,
    densities: list[float],
    lcc: list[list[int]],
    seed: set[int],
    rule: str = "B",
    mode: str = "strict",
) -> set[int]:
    """Re-derive heads from seed until stable; returns the nodes whose heads changed.

    Each pass processes its worklist by decreasing density (ties by
    ascending arrival index); when a node's heads change, the nodes it
    overhangs (strictly less dense out-neighbours) join the next pass.
    """
    n = len(lcc)
    bound = max(16, n * n)
    changed: set[int] = set()
    worklist = set(seed)
    passes = 0
    while worklist:
        passes += 1
        if passes > bound:
            raise NonTerminationError(f"label propagation still unstable after {passes} passes")
        next_wave: set[int] = set()
        for v in sorted(worklist, key=lambda u: (-densities[u], u)):
            heads = apply_rule(graph, densities, lcc, v, rule, mode)
            if heads != lcc[v]:
                lcc[v] = heads
                changed.add(v)
                next_wave.update(
                    w for w in graph.out_links[v] if densities[w] < densities[v]
                )
        worklist = next_wave
    return changed


def propagation_seed(
    graph: NeighborGraph, new_node: int, perturbed: set[int], density_changed: set[int]
) -> set[int]:
    """Nodes whose rule inputs may have moved after an insertion.

    A node's rule reads densities across its 1-neighbourhood (both link
    directions under the "dominates" criterion) and, for the equal-density
    peak tie, its in-neighbours' own peak status — second-order density
    information. Seeding the bidirectional 2-neighbourhood of every
    link-touched or density-changed node covers all of that; head-value
    changes then ripple further through propagate's worklist.
    """
    core = {new_node} | perturbed | density_changed
    seed = set(core)
    for u in core:
        seed |= graph.neighborhood(u, 2)
    return seed


def categorize_all(lcc: list[list[int]]) -> list[NodeCategory]:
    """Category of every node under a stable labelling."""
    strict_counts: dict[int, int] = {}
    referenced: set[int] = set()
    for v, heads in enumerate(lcc):
        if len(heads) == 1:
            strict_counts[heads[0]] = strict_counts.get(heads[0], 0) + 1
        for h in heads:
            if h != v:
                referenced.add(h)

    categories: list[NodeCategory] = []
    for v, heads in enumerate(lcc):
        if len(heads) >= 2:
            categories.append(NodeCategory.MULTIVALENT)
        elif heads == [v]:
            if strict_counts.get(v, 0) >= 2:
                categories.append(NodeCategory.NOYAU_MEMBER)
            elif v in referenced:
                categories.append(NodeCategory.NODULE)
            else:
                categories.append(NodeCategory.ISOLE)
        else:
            categories.append(NodeCategory.NOYAU_MEMBER)
    return categories


def strict_members(lcc: list[list[int]]) -> dict[int, list[int]]:
    """head -> sorted nodes having exactly that head (the head included)."""
    members: dict[int, list[int]] = {}
    for v, heads in enumerate(lcc):
        if len(heads) == 1:
            members.setdefault(heads[0], []).append(v)
    for nodes in members.values():
        nodes.sort()
    return members


def head_set(lcc: list[list[int]]) -> set[int]:
    """Every node id appearing in some head list."""
    heads: set[int] = set()
    for entry in lcc:
        heads.update(entry)
    return heads
