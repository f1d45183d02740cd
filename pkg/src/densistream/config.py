"""Engine configuration knobs and their defaults."""

from __future__ import annotations

from dataclasses import dataclass

RULES = ("A", "B")
DENSITY_MODES = ("sum", "coefficient")
SURPLOMBANT_MODES = ("strict", "dominates")


@dataclass(frozen=True)
class Config:
    """Clustering parameters.

    k: number of nearest neighbours kept per node (ties at the cutoff are
       always included, so a node's out-degree may exceed k).
    sim_threshold: links require similarity strictly above this value.
    rule: "A" single-head inheritance, "B" multi-head union inheritance.
    density: "sum" of link similarities inside the 1-neighbourhood, or the
       "coefficient" variant normalised by n(n-1).
    surplombant: "strict" = any strictly denser in-neighbour; "dominates" =
       the in-neighbour must also out-rank the whole 1-neighbourhood.
    """

    k: int = 3
    sim_threshold: float = 0.1
    rule: str = "B"
    density: str = "sum"
    surplombant: str = "strict"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not (0.0 <= self.sim_threshold < 1.0):
            raise ValueError(f"sim_threshold must be in [0, 1), got {self.sim_threshold}")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")
        if self.density not in DENSITY_MODES:
            raise ValueError(f"density must be one of {DENSITY_MODES}, got {self.density!r}")
        if self.surplombant not in SURPLOMBANT_MODES:
            raise ValueError(
                f"surplombant must be one of {SURPLOMBANT_MODES}, got {self.surplombant!r}"
            )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "sim_threshold": self.sim_threshold,
            "rule": self.rule,
            "density": self.density,
            "surplombant": self.surplombant,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        return cls(
            k=int(d.get("k", 3)),
            sim_threshold=float(d.get("sim_threshold", 0.1)),
            rule=str(d.get("rule", "B")),
            density=str(d.get("density", "sum")),
            surplombant=str(d.get("surplombant", "strict")),
        )
