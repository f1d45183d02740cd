"""Recall/precision of a predicted grouping against a reference classification.

Each reference class is matched to the predicted group with the largest
intersection (ties: larger group, then smallest group id). Recall is the
matched fraction of the class; precision the matched fraction of the
group. Predicted groups are first restricted to the reference's document
universe, so documents the expert discarded never count against precision;
reference documents missing from the prediction lower recall.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class ClassScore:
    label: str
    size: int
    matched_group: str | None
    found: int
    recall: float
    precision: float


@dataclass(frozen=True)
class EvaluationReport:
    classes: list[ClassScore]  # descending precision
    curve: list[tuple[int, float, float]]  # (cumulative docs, recall, precision)


def evaluate(
    reference: Mapping[str, set[str]], predicted: Mapping[str, set[str]]
) -> EvaluationReport:
    if not reference:
        raise ValueError("reference classification is empty")
    universe: set[str] = set()
    for docs in reference.values():
        universe |= docs
    groups = {gid: docs & universe for gid, docs in predicted.items()}

    scores = []
    for label in sorted(reference):
        ref_docs = reference[label]
        best: tuple[int, int, str] | None = None  # (-overlap, -group size, id)
        for gid in sorted(groups):
            overlap = len(ref_docs & groups[gid])
            if overlap == 0:
                continue
            key = (-overlap, -len(groups[gid]), gid)
            if best is None or key < best:
                best = key
        if best is None:
            scores.append(ClassScore(label, len(ref_docs), None, 0, 0.0, 0.0))
            continue
        gid = best[2]
        found = -best[0]
        scores.append(
            ClassScore(
                label=label,
                size=len(ref_docs),
                matched_group=gid,
                found=found,
                recall=found / len(ref_docs),
                precision=found / len(groups[gid]) if groups[gid] else 0.0,
            )
        )

    scores.sort(key=lambda s: (-s.precision, s.label))
    curve = []
    cumulative = 0
    for score in scores:
        cumulative += score.size
        curve.append((cumulative, score.recall, score.precision))
    return EvaluationReport(classes=scores, curve=curve)


def curve_csv(report: EvaluationReport) -> str:
    lines = ["cum_docs,recall,precision"]
    for cumulative, recall, precision in report.curve:
        lines.append(f"{cumulative},{recall:.6f},{precision:.6f}")
    return "\n".join(lines) + "\n"
