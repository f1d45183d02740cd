"""Salient descriptors of a class and the class report rendering.

A descriptor's weight in a class accumulates its share of every
intra-class link (both directions of a reciprocal pair), each share being
the product of the two endpoints' normalized components scaled by the
geometric mean of their densities. Weights are normalised to sum to 1 over
the class; links toward other classes are ignored entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import UnknownNodeError

if TYPE_CHECKING:
    from .engine import Engine


@dataclass(frozen=True)
class ClassMember:
    node: int
    doc_id: str
    density: float
    heads_count: int


@dataclass(frozen=True)
class ClassProfile:
    head: int
    head_doc_id: str
    members: list[ClassMember]  # descending density
    terms: list[tuple[str, float]]  # descending contribution


def per_mille(value: float) -> int:
    """Per-mille display value, rounded half away from zero."""
    return int(math.floor(value * 1000.0 + 0.5))


def class_members(engine: "Engine", head: int) -> list[ClassMember]:
    """All nodes naming head, by descending density then arrival order."""
    members = [
        ClassMember(v, engine.documents[v].doc_id, engine.densities[v], len(heads))
        for v, heads in enumerate(engine.lcc)
        if head in heads
    ]
    members.sort(key=lambda m: (-m.density, m.node))
    return members


def intra_class_links(engine: "Engine", head: int) -> list[tuple[int, int]]:
    """Directed links whose both endpoints belong to the class of head."""
    if not 0 <= head < len(engine.lcc):
        raise UnknownNodeError(f"node {head} not in engine of size {len(engine.lcc)}")
    if engine.lcc[head] != [head]:
        raise UnknownNodeError(f"node {head} is not a class head")
    in_class = {v for v, heads in enumerate(engine.lcc) if head in heads}
    return sorted(
        (t, t2)
        for t in in_class
        for t2 in engine.graph.out_links[t]
        if t2 in in_class
    )


def term_contributions(engine: "Engine", head: int) -> ClassProfile:
    """Per-descriptor relative contributions to the class's internal links.

    A class without intra-class links gets an empty term list (nothing to
    normalise). A zero-density endpoint simply contributes nothing through
    that link.
    """
    links = intra_class_links(engine, head)
    weights: dict[int, float] = {}
    contributions: dict[int, list[float]] = {}
    for t, t2 in links:
        scale = math.sqrt(engine.densities[t] * engine.densities[t2])
        a = engine.vectors[t].components
        b = engine.vectors[t2].components
        if len(a) > len(b):
            a, b = b, a
        for desc in a:
            if desc in b:
                contributions.setdefault(desc, []).append(scale * a[desc] * b[desc])
    numerators = {desc: math.fsum(parts) for desc, parts in contributions.items()}
    total = math.fsum(numerators.values())
    if total > 0.0:
        weights = {desc: num / total for desc, num in numerators.items()}
    terms = [
        (engine.registry.name_of(desc), weight)
        for desc, weight in sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
    return ClassProfile(
        head=head,
        head_doc_id=engine.documents[head].doc_id,
        members=class_members(engine, head),
        terms=terms,
    )


def render_class_report(profile: ClassProfile) -> str:
    """Plain-text class report: members grouped by head count, terms in per-mille."""
    lines = [f"Class {profile.head_doc_id} (node {profile.head})"]
    groups = [
        ("Noyau members:", [m for m in profile.members if m.heads_count == 1]),
        ("Bivalent documents:", [m for m in profile.members if m.heads_count == 2]),
        ("Trivalent and more:", [m for m in profile.members if m.heads_count >= 3]),
    ]
    for title, members in groups:
        if title != "Noyau members:" and not members:
            continue
        lines.append(title)
        for m in members:
            lines.append(f"  {m.heads_count}  {m.doc_id}  {m.density:.7f}")
    lines.append("Illustrative terms:")
    for term, weight in profile.terms:
        lines.append(f"  {per_mille(weight):4d}  {term}")
    return "\n".join(lines) + "\n"
