"""Sparse descriptor vectors and distributional similarity.

Documents are bags of positive descriptor counts. They are mapped onto the
unit sphere by the square-root profile transform y_i = sqrt(x_i / sum(x)),
so the cosine between two transformed vectors is a distributional
similarity (disjoint supports give 0, identical relative profiles give 1)
and sqrt(2*(1-cos)) is the matching spherical distance.

All dot products are accumulated with math.fsum: the result is the exactly
rounded sum of the addends and therefore independent of enumeration order,
which is what makes downstream quantities bit-reproducible across corpus
permutations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import CorpusFormatError, EmptyDocumentError


@dataclass(frozen=True)
class DocumentVector:
    """Raw sparse counts of one document plus its arrival position."""

    doc_id: str
    arrival_index: int
    counts: dict[int, int]  # descriptor id -> strictly positive count
    total: int

    @classmethod
    def build(cls, doc_id: str, arrival_index: int, counts: Mapping[int, int]) -> "DocumentVector":
        if not counts:
            raise EmptyDocumentError(f"document {doc_id!r} has no descriptors")
        for desc, value in counts.items():
            if value <= 0:
                raise ValueError(f"document {doc_id!r}: count for descriptor {desc} must be positive")
        return cls(doc_id, arrival_index, dict(counts), sum(counts.values()))


@dataclass(frozen=True)
class NormalizedVector:
    """Unit-norm square-root profile of a document, same support as its source."""

    components: dict[int, float]


class DescriptorRegistry:
    """Growing bijection descriptor string <-> dense integer id.

    Ids are assigned in first-seen order and never reused; the registry only
    grows (new descriptors may appear at any point of the stream).
    """

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name.strip() in self._ids

    @property
    def names(self) -> list[str]:
        return list(self._names)

    def intern(self, name: str) -> int:
        """Return the id for name, assigning the next id on first sight.

        Descriptor strings are compared byte-exact after trimming surrounding
        whitespace; no case folding or stemming.
        """
        key = name.strip()
        if not key:
            raise ValueError("descriptor string is empty")
        existing = self._ids.get(key)
        if existing is not None:
            return existing
        new_id = len(self._names)
        self._names.append(key)
        self._ids[key] = new_id
        return new_id

    def id_of(self, name: str) -> int:
        return self._ids[name.strip()]

    def name_of(self, desc_id: int) -> str:
        return self._names[desc_id]


def normalize(doc: DocumentVector) -> NormalizedVector:
    """Project a document onto the unit sphere: y_i = sqrt(x_i / total)."""
    if not doc.counts:
        raise EmptyDocumentError(f"document {doc.doc_id!r} has no descriptors")
    total = doc.total
    return NormalizedVector({i: math.sqrt(c / total) for i, c in doc.counts.items()})


def similarity(u: NormalizedVector, v: NormalizedVector) -> float:
    """Cosine of two unit vectors: exactly rounded dot product, clamped to [0, 1].

    Iterates the smaller support; fsum makes the value independent of the
    iteration order.
    """
    a, b = u.components, v.components
    if len(a) > len(b):
        a, b = b, a
    s = math.fsum(a[i] * b[i] for i in a if i in b)
    if s <= 0.0:
        return 0.0
    return min(s, 1.0)


def hellinger_distance(u: NormalizedVector, v: NormalizedVector) -> float:
    """Spherical profile distance: sqrt(2 * (1 - similarity))."""
    return math.sqrt(max(0.0, 2.0 * (1.0 - similarity(u, v))))


def parse_corpus_line(line: str, lineno: int) -> tuple[str, dict[str, int]]:
    """Parse one `doc_id<TAB>term=count<TAB>...` record.

    Counts must be positive integers; a duplicate term within the line or a
    document without terms is an error.
    """
    fields = line.rstrip("\n").split("\t")
    doc_id = fields[0].strip()
    if not doc_id:
        raise CorpusFormatError(lineno, "missing doc_id")
    if len(fields) < 2:
        raise CorpusFormatError(lineno, f"document {doc_id!r} has no descriptors")
    counts: dict[str, int] = {}
    for field in fields[1:]:
        if not field.strip():
            raise CorpusFormatError(lineno, "empty field")
        term, sep, raw = field.partition("=")
        term = term.strip()
        if not sep or not term:
            raise CorpusFormatError(lineno, f"expected term=count, got {field!r}")
        try:
            count = int(raw.strip())
        except ValueError:
            raise CorpusFormatError(lineno, f"count for {term!r} is not an integer: {raw!r}") from None
        if count <= 0:
            raise CorpusFormatError(lineno, f"count for {term!r} must be positive, got {count}")
        if term in counts:
            raise CorpusFormatError(lineno, f"duplicate term {term!r}")
        counts[term] = count
    return doc_id, counts


def read_corpus(path: str) -> Iterator[tuple[str, dict[str, int]]]:
    """Yield (doc_id, term counts) records; blank lines are skipped."""
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            yield parse_corpus_line(line, lineno)
