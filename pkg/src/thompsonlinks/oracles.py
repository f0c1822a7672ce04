"""Brute-force partition functions and Gram vectors.

These re-derive every invariant from spin or colour configurations, without
touching the deletion-contraction, state-sum or Smith-form code paths.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .diagram import BACK, ABOVE_KIND, LinkDiagram, medial_link, medial_structure
from .gamma import ABOVE, SignedPlaneGraph, gamma_graph, gamma_half
from .invariants import GraphLike, as_multigraph, chromatic
from .thompson import Tree, TreePair, leaf_count

SPIN_CAP = 10**7
ROOT_TOL = 1e-9


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise ValueError(f"{what}: {size} configurations exceeds cap {cap}")


def spin_configurations(n: int, q: int, cap: int = SPIN_CAP) -> np.ndarray:
    """All ``q**n`` spin assignments as rows, lexicographic order."""
    _check_cap(q**n, cap, "spin configurations")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int16)
    grids = np.indices((q,) * n, dtype=np.int16)
    return grids.reshape(n, -1).T


def _agreements(configs: np.ndarray, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    count = np.zeros(len(configs), dtype=np.int64)
    for u, v in edges:
        count += configs[:, u] == configs[:, v]
    return count


# --- chromatic -------------------------------------------------------------------


def chromatic_vector(t: Tree, q: int, cap: int = SPIN_CAP) -> np.ndarray:
    """Indicator of the proper q-colourings of the upper half-graph of ``t``."""
    n = leaf_count(t)
    configs = spin_configurations(n, q, cap)
    ok = np.ones(len(configs), dtype=bool)
    for u, v in gamma_half(t):
        ok &= configs[:, u] != configs[:, v]
    return ok.astype(np.int64)


# --- Potts -----------------------------------------------------------------------


def potts_partition(g: GraphLike, q: int, k: float, cap: int = SPIN_CAP) -> float:
    """``sum_sigma exp(-K * #edges with unequal spins)``."""
    n, edges = as_multigraph(g)
    configs = spin_configurations(n, q, cap)
    unequal = len(edges) - _agreements(configs, edges)
    values, counts = np.unique(unequal, return_counts=True)
    return math.fsum(int(c) * math.exp(-k * int(m)) for m, c in zip(values, counts))


def potts_from_tutte(g: GraphLike, q: int, k: float) -> float:
    """``Q (y-1)^(|V|-1) y^(-|E|) T(x, y)`` at ``y = e^K``, ``x = (y+Q-1)/(y-1)``."""
    from .invariants import potts_point, tutte

    n, edges = as_multigraph(g)
    x, y = potts_point(q, k)
    return q * (y - 1) ** (n - 1) * y ** (-len(edges)) * tutte((n, edges))(x, y)


def chromatic_limit_check(g: GraphLike, q: int, ks: Sequence[float]) -> list[dict]:
    """Residuals ``|e^(K|E|) Z(G; Q, K) - Chr(G, Q)|`` along a list of couplings."""
    n, edges = as_multigraph(g)
    target = chromatic((n, edges), q)
    rows = []
    for k in ks:
        scaled = math.exp(k * len(edges)) * potts_partition((n, edges), q, k)
        rows.append(
            {"K": k, "scaled": scaled, "chromatic": target, "residual": abs(scaled - target)}
        )
    return rows


# --- Kauffman bracket ----------------------------------------------------------------


def is_bracket_root(a: complex, q: int, tol: float = ROOT_TOL) -> bool:
    return abs(a**4 + math.sqrt(q) * a**2 + 1) <= tol


def _plus_weights(a: complex) -> tuple[complex, complex]:
    # (equal spins, different spins)
    return -(a**3), a**-1


def _top_uses_plus_weight() -> bool:
    # the -A^3 / A^-1 weight sits on edges whose crossing has the NW-SE strand over
    return ABOVE_KIND == BACK


def kauffman_partition(g: SignedPlaneGraph, q: int, a: complex, cap: int = SPIN_CAP) -> complex:
    """``(1/sqrt Q)^(|V|+1) sum_sigma prod w(sigma_i, sigma_j)`` over the signed edges."""
    if not is_bracket_root(a, q):
        raise ValueError(f"A={a} is not a root of A^4 + sqrt(Q) A^2 + 1")
    configs = spin_configurations(g.n, q, cap)
    top = g.side(ABOVE)
    bottom = [(u, v) for u, v, s in g.edges if s != ABOVE]
    eq_top = _agreements(configs, top)
    eq_bottom = _agreements(configs, bottom)
    weq, wne = _plus_weights(a)
    if not _top_uses_plus_weight():
        weq, wne = 1 / weq, 1 / wne
    pairs, counts = np.unique(np.stack([eq_top, eq_bottom], axis=1), axis=0, return_counts=True)
    total = 0j
    for (et, eb), c in zip(pairs, counts):
        et, eb = int(et), int(eb)
        term = weq**et * wne ** (len(top) - et) * weq**-eb * wne ** -(len(bottom) - eb)
        total += int(c) * term
    return total / math.sqrt(q) ** (g.n + 1)


def kauffman_vector(t: Tree, q: int, a: complex, cap: int = SPIN_CAP) -> np.ndarray:
    """Entry at sigma: product of the upper-edge weights of ``t``.

    With ``|A| = 1`` the lower copy of a tree carries the complex-conjugate
    weights, so ``(1/sqrt Q)^(n+1) <v_s, v_t>`` is the bracket of ``L(s, t)``.
    """
    if not is_bracket_root(a, q):
        raise ValueError(f"A={a} is not a root of A^4 + sqrt(Q) A^2 + 1")
    if abs(abs(a) - 1) > ROOT_TOL:
        raise ValueError("the Hermitian pairing needs |A| = 1, i.e. Q <= 4")
    n = leaf_count(t)
    configs = spin_configurations(n, q, cap)
    eq = _agreements(configs, gamma_half(t))
    weq, wne = _plus_weights(a)
    if not _top_uses_plus_weight():
        weq, wne = 1 / weq, 1 / wne
    m = n - 1
    return np.array([weq**e * wne ** (m - e) for e in range(m + 1)], dtype=complex)[eq]


def vector_pairing(u: np.ndarray, v: np.ndarray) -> complex:
    """``<u, v>``, linear in the first slot."""
    return complex(np.vdot(v, u))


def kauffman_gram(trees: Sequence[Tree], q: int, a: complex) -> np.ndarray:
    n = leaf_count(trees[0])
    vecs = np.array([kauffman_vector(t, q, a) for t in trees])
    return (vecs @ vecs.conj().T) / math.sqrt(q) ** (n + 1)


# --- Fox colourings -------------------------------------------------------------------


def _crossing_tensor(q: int) -> np.ndarray:
    """w[sw, se, ne, nw] for a crossing whose over strand is (SW, NE); 1 or 0."""
    w = np.zeros((q,) * 4, dtype=np.int64)
    for over in range(q):
        for u1 in range(q):
            u2 = (2 * over - u1) % q
            w[over, u1, over, u2] = 1
    return w


def _tensor_for(crossing, q: int, base: np.ndarray) -> np.ndarray:
    # base has (SW, NE) over; for the other kind rotate the slots by one
    return base if crossing.kind != BACK else np.transpose(base, (1, 2, 3, 0))


def _contract(crossings, q: int, outputs: Sequence[int]) -> np.ndarray:
    base = _crossing_tensor(q)
    labels: dict[int, int] = {}
    for c in crossings:
        for a in c.arcs:
            labels.setdefault(a, len(labels))
    for a in outputs:
        labels.setdefault(a, len(labels))
    if len(labels) > 52:
        raise ValueError("too many arcs for a single contraction")
    operands: list = []
    for c in crossings:
        operands.append(_tensor_for(c, q, base))
        operands.append([labels[a] for a in c.arcs])
    operands.append([labels[a] for a in outputs])
    if not crossings:
        return np.ones((q,) * len(outputs), dtype=np.int64)
    return np.einsum(*operands, optimize="greedy")


def colouring_partition(d: LinkDiagram, q: int) -> int:
    """``sum_tau prod_x w(...)`` over all Z_q labellings of the diagram's arcs."""
    if q < 1:
        raise ValueError("q must be positive")
    arcs = len({a for c in d.crossings for a in c.arcs})
    if q**arcs >= 2**62:
        raise ValueError("state count would overflow 64-bit accumulation")
    total = int(_contract(d.crossings, q, [])) if d.crossings else 1
    return total * q**d.free_loops


def colouring_partition_enumerated(d: LinkDiagram, q: int, cap: int = SPIN_CAP) -> int:
    """The same sum by explicit enumeration of every state (small diagrams only)."""
    arcs = sorted({a for c in d.crossings for a in c.arcs})
    index = {a: i for i, a in enumerate(arcs)}
    configs = spin_configurations(len(arcs), q, cap)
    ok = np.ones(len(configs), dtype=bool)
    for c in d.crossings:
        s, t = c.over_slots()
        u1, u2 = c.under_slots()
        over1 = configs[:, index[c.arcs[s]]].astype(np.int64)
        over2 = configs[:, index[c.arcs[t]]].astype(np.int64)
        under = configs[:, index[c.arcs[u1]]].astype(np.int64) + configs[:, index[c.arcs[u2]]]
        ok &= (over1 == over2) & ((over1 + over2 - under) % q == 0)
    return int(ok.sum()) * q**d.free_loops


def semilink_boundary(g: SignedPlaneGraph) -> tuple[list[int], list[int]]:
    """Upper-half crossings and boundary arcs (left to right) of a medial link.

    The horizontal line cuts the link at two points per vertex: in the corner
    through the west ray and the corner through the east ray.
    """
    from .gamma import rotation

    slots, corners = medial_structure(g)
    by_vertex: dict[int, list] = {}
    for c in corners:
        by_vertex.setdefault(c.vertex, []).append(c)
    boundary = []
    for x in range(g.n):
        rot = [e for e, _ in rotation(g, x)]
        ups = sum(1 for e in rot if g.edges[e][2] == ABOVE)
        cs = by_vertex[x]
        # corner i runs from rot[i] to rot[i+1]
        west = cs[ups - 1]
        east = cs[len(rot) - 1]
        boundary += [west.arc, east.arc]
    upper = [i for i, e in enumerate(g.edges) if e[2] == ABOVE]
    return upper, boundary


def fox_semilink_vector(t: Tree, q: int, cap: int = SPIN_CAP) -> np.ndarray:
    """Colouring weights of the upper semi-link of ``t``, indexed by boundary colours.

    Flattened in lexicographic order of the ``2n`` boundary colours, left to right.
    """
    n = leaf_count(t)
    _check_cap(q ** (2 * n), cap, "boundary colourings")
    if n == 1:
        # crossingless arc joining the two boundary points
        return np.eye(q, dtype=np.int64).reshape(-1)
    g = gamma_graph(TreePair(t, t))
    upper, boundary = semilink_boundary(g)
    d = medial_link(g)
    crossings = [d.crossings[i] for i in upper]
    return _contract(crossings, q, boundary).reshape(-1)


def fox_pairing(s: Tree, t: Tree, q: int) -> int:
    return int(np.dot(fox_semilink_vector(s, q), fox_semilink_vector(t, q)))
