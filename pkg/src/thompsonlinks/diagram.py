"""Unoriented link diagrams obtained as medial links of signed plane graphs.

Each edge of the graph carries one crossing at its midpoint.  In the local
frame where the edge runs west to east, the four arc-ends of the crossing are
stored counterclockwise from the south-west: ``SW, SE, NE, NW``.  A crossing
of kind ``"slash"`` has the SW-NE strand on top, ``"back"`` the NW-SE strand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gamma import ABOVE, SignedPlaneGraph, gamma_graph, rotation
from .thompson import TreePair, reduce_pair
from .unionfind import UnionFind

SW, SE, NE, NW = 0, 1, 2, 3

SLASH = "slash"
BACK = "back"

# Kind of crossing put on positive (upper-tree) edges; negative edges get the other one.
# Fixed once by the trefoil value of (x1 x0^-1)^2, <L> = 1 - A^4 + A^-8.
ABOVE_KIND = SLASH


def _other(kind: str) -> str:
    return BACK if kind == SLASH else SLASH


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    kind: str

    def over_slots(self) -> tuple[int, int]:
        return (SW, NE) if self.kind == SLASH else (SE, NW)

    def under_slots(self) -> tuple[int, int]:
        return (SE, NW) if self.kind == SLASH else (SW, NE)

    def smoothings(self) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
        """Slot pairings of the A- and B-smoothings.

        The A-smoothing opens a channel between the two regions swept when
        the over-strand is turned counterclockwise.
        """
        west_east = ((SW, NW), (SE, NE))  # joins the north and south regions
        south_north = ((SW, SE), (NE, NW))  # joins the west and east regions
        if self.kind == SLASH:
            return west_east, south_north
        return south_north, west_east


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    @property
    def arcs(self) -> list[int]:
        return sorted({a for c in self.crossings for a in c.arcs})

    def check(self) -> None:
        seen: dict[int, int] = {}
        for c in self.crossings:
            for a in c.arcs:
                seen[a] = seen.get(a, 0) + 1
        bad = {a: k for a, k in seen.items() if k != 2}
        if bad:
            raise ValueError(f"arcs not used exactly twice: {bad}")

    def to_json(self) -> dict:
        return {
            "crossings": [{"type": c.kind, "arcs": list(c.arcs)} for c in self.crossings],
            "free_loops": self.free_loops,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinkDiagram":
        crossings = tuple(
            Crossing(tuple(int(a) for a in c["arcs"]), c["type"]) for c in data["crossings"]
        )
        for c in crossings:
            if c.kind not in (SLASH, BACK) or len(c.arcs) != 4:
                raise ValueError(f"bad crossing {c}")
        d = cls(crossings, int(data.get("free_loops", 0)))
        d.check()
        return d


@dataclass(frozen=True)
class Corner:
    """An arc of the medial link, running through the corner between two edge-ends."""

    vertex: int
    first: int  # edge index; the corner lies counterclockwise after it
    second: int
    arc: int


def _slot(edge: tuple[int, int, str], x: int, left: bool) -> int:
    # left/right of the edge as seen travelling away from x
    u, _, _ = edge
    if x == u:
        return NW if left else SW
    return SE if left else NE


def medial_structure(g: SignedPlaneGraph) -> tuple[list[list[int]], list[Corner]]:
    slots = [[-1] * 4 for _ in g.edges]
    corners: list[Corner] = []
    arc = 0
    for x in range(g.n):
        rot = rotation(g, x)
        k = len(rot)
        for i in range(k):
            e1, _ = rot[i]
            e2, _ = rot[(i + 1) % k]
            slots[e1][_slot(g.edges[e1], x, True)] = arc
            slots[e2][_slot(g.edges[e2], x, False)] = arc
            corners.append(Corner(x, e1, e2, arc))
            arc += 1
    return slots, corners


def medial_link(g: SignedPlaneGraph) -> LinkDiagram:
    slots, _ = medial_structure(g)
    above = ABOVE_KIND
    crossings = tuple(
        Crossing(tuple(s), above if side == ABOVE else _other(above))
        for s, (_, _, side) in zip(slots, g.edges)
    )
    touched = {u for u, _, _ in g.edges} | {v for _, v, _ in g.edges}
    free = g.n - len(touched)
    return LinkDiagram(crossings, free)


@lru_cache(maxsize=4096)
def link_of(p: TreePair, reduce: bool = True) -> LinkDiagram:
    if reduce:
        p = reduce_pair(p)
    return medial_link(gamma_graph(p))


def mirror(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(
        tuple(Crossing(c.arcs, _other(c.kind)) for c in d.crossings), d.free_loops
    )


def component_count(d: LinkDiagram) -> int:
    uf = UnionFind()
    for c in d.crossings:
        for a in c.arcs:
            uf.add(a)
        uf.union(c.arcs[SW], c.arcs[NE])
        uf.union(c.arcs[SE], c.arcs[NW])
    return len(uf) + d.free_loops
