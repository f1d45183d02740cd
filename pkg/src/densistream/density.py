"""Per-node density over the K-NN graph.

The density of a node is the sum of the similarities of all directed links
whose two endpoints lie inside the node's 1-neighbourhood (the node itself
plus its in- and out-neighbours). A reciprocal pair of links counts twice.
The alternative "coefficient" mode divides by the n(n-1) possible directed
links. Sums use math.fsum, so a recomputation from scratch reproduces the
incremental value bit for bit.
"""

from __future__ import annotations

import math

from .graph import NeighborGraph, PerturbationSet


def node_density(graph: NeighborGraph, v: int, mode: str = "sum") -> float:
    neighborhood = graph.neighborhood(v, 1)
    total = math.fsum(
        sim
        for a in neighborhood
        for b, sim in graph.out_links[a].items()
        if b in neighborhood
    )
    if mode == "sum":
        return total
    n = len(neighborhood)
    if n < 2:
        return 0.0
    return total / (n * (n - 1))


def update_densities(
    graph: NeighborGraph,
    densities: list[float],
    perturbed: PerturbationSet,
    mode: str = "sum",
) -> set[int]:
    """Recompute densities for the perturbed nodes and their 1-neighbourhoods.

    Mutates densities in place and returns the nodes whose value changed
    (bitwise comparison). Density changes cannot occur outside the
    1-neighbourhoods of link-touched nodes, so everything else is left
    untouched.
    """
    recompute: set[int] = set()
    for u in perturbed:
        recompute |= graph.neighborhood(u, 1)
    changed: set[int] = set()
    for v in recompute:
        value = node_density(graph, v, mode)
        if value != densities[v]:
            densities[v] = value
            changed.add(v)
    return changed
