"""Noyau graph, connected components, and the expert curation session.

Multivalent documents of a chosen valence act as undirected edges between
the heads they name; connected components of that graph are the candidate
human-scale classes. The session records the expert's merges (labelled
groups of noyaux inside one component) and per-component validation
status, journals every action, and exports the curated classification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING

from . import labeling
from .errors import CurationError

if TYPE_CHECKING:
    from .engine import Engine

STATUSES = ("pending", "validated", "invalidated")


class UnionFind:
    """Disjoint sets over dense ids with path compression."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class NoyauGraph:
    """Heads as vertices; valence-filtered multivalent documents as edges."""

    valence: int
    heads: list[int]  # ascending arrival index
    strict_members: dict[int, list[int]]  # head -> strict member nodes
    edges: dict[tuple[int, int], list[int]]  # (a, b) a < b -> supporting docs
    doc_heads: list[list[int]]  # lcc snapshot the graph was built from


@dataclass
class Component:
    index: int
    heads: list[int]
    documents: set[int]
    doc_count: int


def build_noyau_graph(
    head_lists: list[list[int]], valence: int, min_mode: bool = False
) -> NoyauGraph:
    """Connect heads through documents carrying exactly `valence` heads.

    min_mode relaxes the filter to `at least valence` heads; each
    qualifying document contributes a clique on its head list.
    """
    if valence < 2:
        raise ValueError(f"valence must be >= 2, got {valence}")
    lcc = [list(entry) for entry in head_lists]
    heads = sorted(labeling.head_set(lcc))
    members = labeling.strict_members(lcc)
    edges: dict[tuple[int, int], list[int]] = {}
    for v, doc_heads in enumerate(lcc):
        n_heads = len(doc_heads)
        if n_heads < 2:
            continue
        if n_heads != valence and not (min_mode and n_heads >= valence):
            continue
        for i, a in enumerate(doc_heads):
            for b in doc_heads[i + 1 :]:
                edges.setdefault((min(a, b), max(a, b)), []).append(v)
    return NoyauGraph(
        valence=valence,
        heads=heads,
        strict_members={h: members.get(h, [h]) for h in heads},
        edges=edges,
        doc_heads=lcc,
    )


def connected_components(graph: NoyauGraph) -> list[Component]:
    """Components ordered by descending document count, ties by smallest head.

    A component's documents are the strict members of its noyaux plus the
    multivalent documents supporting its edges, each counted once.
    """
    index_of = {h: i for i, h in enumerate(graph.heads)}
    uf = UnionFind(len(graph.heads))
    for a, b in graph.edges:
        uf.union(index_of[a], index_of[b])

    grouped: dict[int, list[int]] = {}
    for h in graph.heads:
        grouped.setdefault(uf.find(index_of[h]), []).append(h)

    components = []
    for heads in grouped.values():
        head_set = set(heads)
        documents: set[int] = set()
        for h in heads:
            documents.update(graph.strict_members[h])
        for (a, b), docs in graph.edges.items():
            if a in head_set:
                documents.update(docs)
        components.append((sorted(heads), documents))

    components.sort(key=lambda c: (-len(c[1]), c[0][0]))
    return [
        Component(index=i, heads=heads, documents=docs, doc_count=len(docs))
        for i, (heads, docs) in enumerate(components)
    ]


def size_distribution(lcc: list[list[int]]) -> dict[int, int]:
    """Histogram noyau size -> count; size counts the head and its strict members."""
    histogram: dict[int, int] = {}
    members = labeling.strict_members(lcc)
    for head in labeling.head_set(lcc):
        size = len(members.get(head, [head]))
        histogram[size] = histogram.get(size, 0) + 1
    return dict(sorted(histogram.items()))


@dataclass
class ManualGroup:
    label: str
    heads: set[int]


class CurationSession:
    """Mutable expert session over one noyau graph.

    Every mutation is appended to an in-memory journal (and mirrored to a
    journal file by the service layer) so a session can be replayed.
    """

    def __init__(self, graph: NoyauGraph):
        self.graph = graph
        self.components = connected_components(graph)
        self.statuses: list[str] = ["pending"] * len(self.components)
        self.groups: list[ManualGroup] = []
        self.journal: list[dict] = []
        self._component_of_head = {
            h: comp.index for comp in self.components for h in comp.heads
        }

    def component_of(self, head: int) -> int:
        try:
            return self._component_of_head[head]
        except KeyError:
            raise CurationError(f"node {head} is not a noyau") from None

    def merge(self, noyau_ids: list[int], label: str) -> ManualGroup:
        """Group noyaux of one component under a label; overlapping groups fuse."""
        label = label.strip()
        if not label:
            raise CurationError("merge label must be nonempty")
        if len(noyau_ids) < 1:
            raise CurationError("merge needs at least one noyau")
        components = {self.component_of(h) for h in noyau_ids}
        if len(components) != 1:
            raise CurationError(f"merge spans components {sorted(components)}")
        target = components.pop()
        if self.statuses[target] == "invalidated":
            raise CurationError(f"component {target} is invalidated")

        merged = set(noyau_ids)
        keep: list[ManualGroup] = []
        for group in self.groups:
            if group.heads & merged:
                merged |= group.heads
            else:
                keep.append(group)
        if any(g.label == label for g in keep):
            raise CurationError(f"label {label!r} already used by another group")
        group = ManualGroup(label=label, heads=merged)
        keep.append(group)
        self.groups = keep
        self.journal.append(
            {"action": "merge", "noyau_ids": sorted(noyau_ids), "label": label}
        )
        return group

    def set_status(self, component_index: int, status: str) -> None:
        if status not in STATUSES:
            raise CurationError(f"status must be one of {STATUSES}, got {status!r}")
        if not 0 <= component_index < len(self.components):
            raise CurationError(f"unknown component {component_index}")
        self.statuses[component_index] = status
        self.journal.append(
            {"action": "set_status", "component": component_index, "status": status}
        )

    def group_documents(self, group: ManualGroup) -> list[int]:
        """Strict members of the group's noyaux plus multivalents fully inside it."""
        docs: set[int] = set()
        for h in group.heads:
            docs.update(self.graph.strict_members[h])
        for v, heads in enumerate(self.graph.doc_heads):
            if len(heads) >= 2 and set(heads) <= group.heads:
                docs.add(v)
        return sorted(docs)

    def export(self, engine: "Engine", validated_only: bool = False) -> list[dict]:
        """Curated classification: [{label, doc_ids}], skipping invalidated components."""
        out = []
        for group in self.groups:
            if not group.label.strip():
                raise CurationError("unlabeled group cannot be exported")
            component = self.component_of(min(group.heads))
            status = self.statuses[component]
            if status == "invalidated":
                continue
            if validated_only and status != "validated":
                continue
            out.append(
                {
                    "label": group.label,
                    "doc_ids": [engine.documents[v].doc_id for v in self.group_documents(group)],
                }
            )
        out.sort(key=lambda g: g["label"])
        return out


def write_classification(path: str, classification: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(classification, handle, ensure_ascii=False, indent=1)
        handle.write("\n")


def load_classification(path: str) -> dict[str, set[str]]:
    """Read an exported classification as label -> set of doc_ids."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    return {entry["label"]: set(entry["doc_ids"]) for entry in raw}
