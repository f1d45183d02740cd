"""Streaming engine: one mutating entry point (ingest) over the shared state.

ingest composes the three incremental stages — K-NN graph insertion,
density recomputation over the perturbed region, and label propagation —
and reports what moved. All queries read the resulting consistent state;
a lock serialises writers so the engine can be shared between threads.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import labeling
from .config import Config
from .density import update_densities
from .errors import DuplicateDocumentError
from .graph import NeighborGraph
from .labeling import NodeCategory
from .vectors import (
    DescriptorRegistry,
    DocumentVector,
    NormalizedVector,
    normalize,
    similarity,
)


@dataclass
class IngestReport:
    """What one insertion did to the landscape."""

    doc_id: str
    node: int
    ll_size: int
    density_changed: int
    label_changed: list[str] = field(default_factory=list)
    new_heads: list[str] = field(default_factory=list)
    vanished_heads: list[str] = field(default_factory=list)

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "doc_id": self.doc_id,
                "node": self.node,
                "ll_size": self.ll_size,
                "density_changed": self.density_changed,
                "label_changed": self.label_changed,
                "new_heads": self.new_heads,
                "vanished_heads": self.vanished_heads,
            },
            ensure_ascii=False,
        )


class Engine:
    """Incremental density-peak clustering over a document stream."""

    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        self.registry = DescriptorRegistry()
        self.documents: list[DocumentVector] = []
        self.vectors: list[NormalizedVector] = []
        self.graph = NeighborGraph(self.config.k, self.config.sim_threshold)
        self.densities: list[float] = []
        self.lcc: list[list[int]] = []
        self._doc_index: dict[str, int] = {}
        self._write_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.documents)

    # -- ingestion ---------------------------------------------------------

    def ingest(self, doc_id: str, term_counts: Mapping[str, int]) -> IngestReport:
        with self._write_lock:
            return self._ingest_locked(doc_id, term_counts)

    def _ingest_locked(self, doc_id: str, term_counts: Mapping[str, int]) -> IngestReport:
        if doc_id in self._doc_index:
            raise DuplicateDocumentError(f"doc_id {doc_id!r} already ingested")
        for term, count in term_counts.items():
            if int(count) <= 0:
                raise ValueError(f"document {doc_id!r}: count for {term!r} must be positive")
        node = len(self.documents)
        counts = {self.registry.intern(term): int(c) for term, c in term_counts.items()}
        doc = DocumentVector.build(doc_id, node, counts)
        vec = normalize(doc)

        sims = {u: similarity(vec, self.vectors[u]) for u in range(node)}

        self.documents.append(doc)
        self.vectors.append(vec)
        self._doc_index[doc_id] = node
        self.densities.append(0.0)
        self.lcc.append([])

        heads_before = labeling.head_set(self.lcc)

        perturbed = self.graph.insert(sims)
        density_changed = update_densities(
            self.graph, self.densities, perturbed, self.config.density
        )
        seed = labeling.propagation_seed(self.graph, node, perturbed, density_changed)
        label_changed = labeling.propagate(
            self.graph,
            self.densities,
            self.lcc,
            seed,
            self.config.rule,
            self.config.surplombant,
        )

        heads_after = labeling.head_set(self.lcc)
        return IngestReport(
            doc_id=doc_id,
            node=node,
            ll_size=len(perturbed),
            density_changed=len(density_changed),
            label_changed=sorted(self.documents[v].doc_id for v in label_changed),
            new_heads=sorted(self.documents[h].doc_id for h in heads_after - heads_before),
            vanished_heads=sorted(self.documents[h].doc_id for h in heads_before - heads_after),
        )

    def ingest_all(self, records: Iterable[tuple[str, Mapping[str, int]]]) -> list[IngestReport]:
        return [self.ingest(doc_id, counts) for doc_id, counts in records]

    # -- queries -----------------------------------------------------------

    def node_of(self, doc_id: str) -> int:
        return self._doc_index[doc_id]

    def doc_id(self, node: int) -> str:
        return self.documents[node].doc_id

    def heads_of(self, doc_id: str) -> list[str]:
        return [self.documents[h].doc_id for h in self.lcc[self._doc_index[doc_id]]]

    def density_of(self, doc_id: str) -> float:
        return self.densities[self._doc_index[doc_id]]

    def categories(self) -> list[NodeCategory]:
        return labeling.categorize_all(self.lcc)

    def head_doc_ids(self) -> set[str]:
        return {self.documents[h].doc_id for h in labeling.head_set(self.lcc)}

    def strict_members(self) -> dict[int, list[int]]:
        return labeling.strict_members(self.lcc)

    def fingerprint(self) -> dict:
        """Order-comparison view keyed by doc_id: heads, density, category.

        Two runs over permutations of the same corpus must produce equal
        fingerprints (densities compared bitwise through float equality).
        """
        cats = self.categories()
        per_doc = {
            doc.doc_id: {
                "heads": tuple(sorted(self.documents[h].doc_id for h in self.lcc[v])),
                "density": self.densities[v],
                "category": cats[v].value,
            }
            for v, doc in enumerate(self.documents)
        }
        return {"heads": frozenset(self.head_doc_ids()), "docs": per_doc}
