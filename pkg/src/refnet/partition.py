"""Node-to-community assignments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import PartitionMismatch


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to a community id in ``0..k-1``.

    ``q`` holds the modularity score once one has been computed for a
    specific graph; it is ``None`` otherwise.
    """

    assignment: Mapping[str, int]
    q: float | None = field(default=None, compare=False)

    def __post_init__(self):
        assignment = dict(self.assignment)
        if not assignment:
            raise PartitionMismatch("partition must assign at least one node")
        ids = set(assignment.values())
        if ids != set(range(len(ids))):
            raise PartitionMismatch(
                f"community ids must be contiguous 0..k-1, got {sorted(ids)}"
            )
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_labels(cls, nodes: Iterable[str], labels: Iterable, q=None) -> "Partition":
        """Build a partition from arbitrary hashable labels.

        Ids are renumbered in order of first appearance along ``nodes``, so
        community 0 always holds the first node.
        """
        renumber: dict = {}
        assignment = {}
        for node, label in zip(nodes, labels, strict=True):
            assignment[node] = renumber.setdefault(label, len(renumber))
        return cls(assignment, q)

    @classmethod
    def from_communities(cls, nodes: Iterable[str], communities: Iterable[Iterable[str]], q=None):
        lookup = {}
        for cid, members in enumerate(communities):
            for node in members:
                lookup[node] = cid
        nodes = list(nodes)
        missing = [n for n in nodes if n not in lookup]
        if missing or len(lookup) != len(nodes):
            raise PartitionMismatch("communities do not cover the node set exactly")
        return cls.from_labels(nodes, (lookup[n] for n in nodes), q)

    @property
    def num_communities(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> list[list[str]]:
        """Members of each community, in node order."""
        groups: list[list[str]] = [[] for _ in range(self.num_communities)]
        for node, cid in self.assignment.items():
            groups[cid].append(node)
        return groups

    def with_q(self, q: float) -> "Partition":
        return Partition(self.assignment, q)

    def __getitem__(self, node: str) -> int:
        return self.assignment[node]

    def __len__(self) -> int:
        return len(self.assignment)
