"""Problem instance bundles shared by the solvers, oracles, and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import MultiDiGraph, MultiGraph
from .matroid import LinearMatroid, OracleMatroid


@dataclass(frozen=True)
class StCutInstance:
    """Independent vertex (s,t)-cut instance.

    Solutions are vertex sets of size ``k`` disjoint from Q, independent
    in the matroid, whose removal disconnects t from s.  Vertices in Q
    (always including s and t) carry no matroid columns.
    """
    graph: MultiGraph | MultiDiGraph
    matroid: LinearMatroid
    s: str
    t: str
    Q: frozenset[str]
    k: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "Q", frozenset(self.Q) | {self.s, self.t})


@dataclass(frozen=True)
class MwcInstance:
    """Independent multiway cut instance with terminal set T inside Q."""
    graph: MultiGraph
    matroid: LinearMatroid
    T: frozenset[str]
    Q: frozenset[str]
    k: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "T", frozenset(self.T))
        object.__setattr__(self, "Q", frozenset(self.Q) | self.T)


@dataclass(frozen=True)
class HittingInstance:
    """Independent FVS / OCT instance: hit all cycles or all odd cycles."""
    graph: MultiGraph
    matroid: LinearMatroid | OracleMatroid
    k: int
