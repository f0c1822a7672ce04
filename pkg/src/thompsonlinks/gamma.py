"""The signed plane graph attached to a tree pair.

Vertices sit on a horizontal line at positions ``0..n-1``; vertex ``i`` is the
region just left of leaf ``i``.  The plus-tree contributes arcs above the line
(positive edges), the minus-tree arcs below it (negative edges).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .thompson import Tree, TreePair

ABOVE = "above"
BELOW = "below"

Edge = tuple[int, int, str]


def gamma_half(t: Tree) -> list[tuple[int, int]]:
    """One edge per caret: from the caret's leftmost gap to the gap before its right child."""
    edges: list[tuple[int, int]] = []

    def walk(node: Tree, first: int) -> int:
        if not node:
            return 1
        k = walk(node[0], first)
        m = walk(node[1], first + k)
        edges.append((first, first + k))
        return k + m

    walk(t, 0)
    edges.sort()
    return edges


@dataclass(frozen=True)
class SignedPlaneGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for u, v, side in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {(u, v, side)} for {self.n} vertices")
            if side not in (ABOVE, BELOW):
                raise ValueError(f"bad side {side!r}")

    def side(self, side: str) -> list[tuple[int, int]]:
        return [(u, v) for u, v, s in self.edges if s == side]

    @property
    def plain_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v, s] for u, v, s in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "SignedPlaneGraph":
        return cls(data["n"], _ordered((int(u), int(v), s) for u, v, s in data["edges"]))


def _ordered(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    return tuple(sorted(edges, key=lambda e: (e[2], e[0], e[1])))


def gamma_graph(p: TreePair) -> SignedPlaneGraph:
    edges = [(u, v, ABOVE) for u, v in gamma_half(p.plus)]
    edges += [(u, v, BELOW) for u, v in gamma_half(p.minus)]
    return SignedPlaneGraph(p.leaves, _ordered(edges))


def is_laminar(arcs: Iterable[tuple[int, int]]) -> bool:
    arcs = list(arcs)
    for u, v in arcs:
        for a, b in arcs:
            if u < a < v < b:
                return False
    return True


def is_spanning_tree(n: int, arcs: list[tuple[int, int]]) -> bool:
    if len(arcs) != n - 1:
        return False
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in arcs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def rotation(g: SignedPlaneGraph, x: int) -> list[tuple[int, int]]:
    """Counterclockwise order of edge-ends at vertex ``x``, starting just above east.

    Items are ``(edge index, endpoint)``.  Arcs leaving to the right depart
    flatter when shorter; arcs arriving from the left arrive steeper when longer.
    """
    up_right, up_left, down_left, down_right = [], [], [], []
    for idx, (u, v, side) in enumerate(g.edges):
        if side == ABOVE:
            if u == x:
                up_right.append((v, idx))
            elif v == x:
                up_left.append((u, idx))
        else:
            if v == x:
                down_left.append((u, idx))
            elif u == x:
                down_right.append((v, idx))
    order = (
        [(idx, x) for _, idx in sorted(up_right)]
        + [(idx, x) for _, idx in sorted(up_left)]
        + [(idx, x) for _, idx in sorted(down_left, reverse=True)]
        + [(idx, x) for _, idx in sorted(down_right, reverse=True)]
    )
    return order


def degree_sequence(g: SignedPlaneGraph) -> list[int]:
    deg = [0] * g.n
    for u, v, _ in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg
