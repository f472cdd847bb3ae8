"""Threshold the relevancy scores into a graph and split it into groups."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ValidationError
from .similarity import RelevancyScore


@dataclass(frozen=True)
class RelevancyGraph:
    nodes: frozenset[str]
    edges: dict[tuple[str, str], float]
    threshold: float


@dataclass
class Group:
    id: int
    member_ids: tuple[str, ...]
    tags: "TagAssignment | None" = field(default=None)

    def __len__(self):
        return len(self.member_ids)


class UnionFind:
    """Disjoint sets over hashable items, union by size with path halving."""

    def __init__(self, items: Iterable = ()):
        self.parent = {}
        self.size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def components(self) -> list[list]:
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def build_graph(scores: Iterable[RelevancyScore], all_ids: Iterable[str], threshold: float) -> RelevancyGraph:
    """Keep edges with ``score >= threshold``.

    ``all_ids`` are the comments that have a vector; a vector-less comment
    produces no scores and must not be passed here.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold must lie in [0, 1], got {threshold}")
    nodes = frozenset(all_ids)
    edges = {}
    for a, b, score in scores:
        if a == b:
            raise ValidationError(f"self-pair {a!r} in scores")
        if a not in nodes or b not in nodes:
            raise ValidationError(f"score ({a!r}, {b!r}) references an id outside the node set")
        if score >= threshold:
            edges[(a, b) if a < b else (b, a)] = score
    return RelevancyGraph(nodes, edges, threshold)


def connected_components(graph: RelevancyGraph) -> list[Group]:
    """Groups ordered by descending size, ties by smallest member id."""
    uf = UnionFind(sorted(graph.nodes))
    for a, b in graph.edges:
        uf.union(a, b)
    comps = [sorted(c) for c in uf.components()]
    comps.sort(key=lambda c: (-len(c), c[0]))
    return [Group(i, tuple(c)) for i, c in enumerate(comps)]


def write_edges_csv(graph: RelevancyGraph, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a", "b", "score"])
        for (a, b), s in sorted(graph.edges.items()):
            w.writerow([a, b, f"{s:.6f}"])


def write_groups_json(groups: list[Group], path) -> None:
    data = [{"id": g.id, "members": list(g.member_ids)} for g in groups]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
