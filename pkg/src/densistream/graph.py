"""Incrementally maintained directed valued graph of K nearest neighbours.

Each node keeps the links to every neighbour whose similarity is strictly
above the threshold and at least the K-th largest admissible similarity
(ties at the cutoff are all kept, so out-degree may exceed K). in_links is
maintained as the exact transpose of out_links. Inserting a node can only
add links toward it and drop links it displaced; the set of nodes touched
by any link change (the perturbation set) is returned to the caller, which
uses it to localise density updates.
"""

from __future__ import annotations

from typing import Iterable, Literal, Mapping

from .errors import UnknownNodeError

PerturbationSet = set[int]


def tied_knn(candidates: Mapping[int, float], k: int) -> set[int]:
    """Nodes whose similarity reaches the K-th largest value among candidates.

    All candidates are assumed admissible (above threshold). With fewer than
    k candidates everyone is kept; equality at the cutoff is exact float
    equality, which is reproducible because similarities come from an
    exactly rounded summation.
    """
    if len(candidates) <= k:
        return set(candidates)
    values = sorted(candidates.values(), reverse=True)
    cutoff = values[k - 1]
    return {node for node, sim in candidates.items() if sim >= cutoff}


class NeighborGraph:
    """Directed valued K-NN adjacency with incremental insertion."""

    def __init__(self, k: int, sim_threshold: float):
        self.k = k
        self.sim_threshold = sim_threshold
        self.out_links: list[dict[int, float]] = []
        self.in_links: list[dict[int, float]] = []

    def __len__(self) -> int:
        return len(self.out_links)

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self.out_links):
            raise UnknownNodeError(f"node {v} not in graph of size {len(self.out_links)}")

    def _add_link(self, u: int, v: int, sim: float) -> None:
        self.out_links[u][v] = sim
        self.in_links[v][u] = sim

    def _drop_link(self, u: int, v: int) -> None:
        del self.out_links[u][v]
        del self.in_links[v][u]

    def insert(self, sims: Mapping[int, float]) -> PerturbationSet:
        """Insert the next node given its similarities to all prior nodes.

        sims maps every existing node to its similarity with the newcomer
        (symmetric, computed once by the caller). Returns the set of nodes
        whose out- or in-link set changed; empty when the newcomer stays
        below the threshold everywhere.
        """
        new = len(self.out_links)
        self.out_links.append({})
        self.in_links.append({})

        admissible = {u: s for u, s in sims.items() if u != new and s > self.sim_threshold}
        touched: PerturbationSet = set()

        for v in tied_knn(admissible, self.k):
            self._add_link(new, v, admissible[v])
            touched.update((new, v))

        # A prior node's tied K-NN can only shrink toward its current links
        # plus the newcomer: adding a candidate never lowers the cutoff.
        for u, sim_u in admissible.items():
            candidates = dict(self.out_links[u])
            candidates[new] = sim_u
            keep = tied_knn(candidates, self.k)
            if new not in keep:
                continue
            for w in [w for w in self.out_links[u] if w not in keep]:
                self._drop_link(u, w)
                touched.update((u, w))
            self._add_link(u, new, sim_u)
            touched.update((u, new))
        return touched

    def neighborhood(self, v: int, depth: Literal[1, 2] = 1) -> set[int]:
        """{v} plus its in/out neighbours; depth 2 unions the members' 1-neighbourhoods."""
        self._check(v)
        first = {v} | self.out_links[v].keys() | self.in_links[v].keys()
        if depth == 1:
            return first
        if depth != 2:
            raise ValueError(f"depth must be 1 or 2, got {depth}")
        second = set(first)
        for u in first:
            second |= self.out_links[u].keys() | self.in_links[u].keys()
        return second

    @classmethod
    def from_links(
        cls, n: int, links: Iterable[tuple[int, int, float]], k: int = 3, sim_threshold: float = 0.1
    ) -> "NeighborGraph":
        """Build a graph with an explicit link set (tests, snapshot loading)."""
        graph = cls(k, sim_threshold)
        graph.out_links = [{} for _ in range(n)]
        graph.in_links = [{} for _ in range(n)]
        for u, v, sim in links:
            graph._add_link(u, v, sim)
        return graph

    def link_triples(self) -> list[tuple[int, int, float]]:
        """All directed links as (source, target, similarity), sorted."""
        return [
            (u, v, sim)
            for u, targets in enumerate(self.out_links)
            for v, sim in sorted(targets.items())
        ]
