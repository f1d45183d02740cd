"""Byte-stable engine persistence.

The snapshot is a single JSON document with nodes in ascending arrival
order, out-links in ascending target order, and every float rendered as a
17-significant-digit decimal string (exact round trip). Saving, loading
and saving again yields an identical byte sequence, and a stream resumed
from a snapshot continues bit-identically to an uninterrupted run.
"""

from __future__ import annotations

import json

from .config import Config
from .engine import Engine
from .graph import NeighborGraph
from .vectors import DescriptorRegistry, DocumentVector, normalize

FORMAT = "densistream-snapshot-v1"


def _f(x: float) -> str:
    return format(x, ".17g")


def to_document(engine: Engine) -> dict:
    return {
        "format": FORMAT,
        "config": engine.config.to_dict(),
        "descriptors": engine.registry.names,
        "documents": [
            {"doc_id": doc.doc_id, "counts": [[i, c] for i, c in sorted(doc.counts.items())]}
            for doc in engine.documents
        ],
        "links": [
            [[v, _f(sim)] for v, sim in sorted(targets.items())]
            for targets in engine.graph.out_links
        ],
        "densities": [_f(d) for d in engine.densities],
        "heads": [list(entry) for entry in engine.lcc],
    }


def dumps(engine: Engine) -> str:
    return json.dumps(to_document(engine), ensure_ascii=False, separators=(",", ":")) + "\n"


def save(engine: Engine, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(engine))


def from_document(doc: dict) -> Engine:
    if doc.get("format") != FORMAT:
        raise ValueError(f"unsupported snapshot format: {doc.get('format')!r}")
    engine = Engine(Config.from_dict(doc["config"]))
    engine.registry = DescriptorRegistry(doc["descriptors"])
    for arrival, record in enumerate(doc["documents"]):
        counts = {int(i): int(c) for i, c in record["counts"]}
        document = DocumentVector.build(record["doc_id"], arrival, counts)
        engine.documents.append(document)
        engine.vectors.append(normalize(document))
        engine._doc_index[document.doc_id] = arrival
    n = len(engine.documents)
    links = [
        (u, int(v), float(sim))
        for u, targets in enumerate(doc["links"])
        for v, sim in targets
    ]
    engine.graph = NeighborGraph.from_links(
        n, links, engine.config.k, engine.config.sim_threshold
    )
    engine.densities = [float(d) for d in doc["densities"]]
    engine.lcc = [[int(h) for h in entry] for entry in doc["heads"]]
    return engine


def load(path: str) -> Engine:
    with open(path, encoding="utf-8") as handle:
        return from_document(json.load(handle))
