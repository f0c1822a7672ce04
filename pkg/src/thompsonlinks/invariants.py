"""Chromatic counts, Tutte polynomials, the Kauffman bracket and Fox colourings,
plus their normalized versions as functions on F."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .diagram import Crossing, LinkDiagram, link_of
from .gamma import SignedPlaneGraph, gamma_graph
from .polynomials import LOOP, TUTTE_ONE, LaurentPoly, TuttePoly, divide_by_loop
from .thompson import TreePair, reduce_pair
from .unionfind import UnionFind

DEFAULT_BRACKET_CAP = 26

Multigraph = tuple[int, tuple[tuple[int, int], ...]]
GraphLike = Union[SignedPlaneGraph, Multigraph]


def as_multigraph(g: GraphLike) -> Multigraph:
    if isinstance(g, SignedPlaneGraph):
        return g.n, tuple(g.plain_edges)
    n, edges = g
    return n, tuple((int(u), int(v)) for u, v in edges)


def _canonical(n: int, edges: Sequence[tuple[int, int]]) -> Multigraph:
    """Relabel vertices by (degree, first appearance) and sort the edge multiset.

    Not an isomorphism invariant, only a stable memo key; equal keys mean equal graphs.
    """
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    order = sorted(range(n), key=lambda i: (deg[i], i))
    relabel = {old: new for new, old in enumerate(order)}
    out = sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges)
    return n, tuple(out)


# --- chromatic -------------------------------------------------------------


def chromatic(g: GraphLike, q: int) -> int:
    """Number of proper q-colourings, by deletion-contraction."""
    if q < 0:
        raise ValueError("number of colours must be nonnegative")
    n, edges = as_multigraph(g)
    if any(u == v for u, v in edges):
        return 0
    simple = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return _chromatic_simple(n, tuple(simple), q)


def _chromatic_simple(n: int, edges: tuple[tuple[int, int], ...], q: int) -> int:
    return _chromatic_memo(_canonical(n, edges), q)


@lru_cache(maxsize=200_000)
def _chromatic_memo(key: Multigraph, q: int) -> int:
    n, edges = key
    if not edges:
        return q**n
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    # a pendant vertex contributes (q - 1) and can be removed
    for x in range(n):
        if deg[x] == 1:
            rest = [e for e in edges if x not in e]
            return (q - 1) * _chromatic_simple(*_drop_vertex(n, rest, x), q)
    u, v = edges[-1]
    deleted = edges[:-1]
    contracted = _contract_simple(n, deleted, u, v)
    return _chromatic_simple(n, deleted, q) - _chromatic_simple(*contracted, q)


def _drop_vertex(n: int, edges, x: int) -> Multigraph:
    relabel = lambda i: i - 1 if i > x else i  # noqa: E731
    return n - 1, tuple((relabel(a), relabel(b)) for a, b in edges)


def _contract_simple(n: int, edges, u: int, v: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    # merge v into u, drop v, collapse parallels (no loops arise from a simple graph minus uv)
    def lab(i: int) -> int:
        i = u if i == v else i
        return i - 1 if i > v else i

    merged = {tuple(sorted((lab(a), lab(b)))) for a, b in edges}
    return n - 1, tuple(sorted(merged))


# --- Tutte -----------------------------------------------------------------


def tutte(g: GraphLike) -> TuttePoly:
    """Tutte polynomial by deletion-contraction with bridge/loop shortcuts."""
    n, edges = as_multigraph(g)
    return _tutte_memo(_canonical(n, edges))


def _components(n: int, edges) -> int:
    uf = UnionFind(range(n))
    for u, v in edges:
        uf.union(u, v)
    return len(uf)


def _bridges(n: int, edges) -> set[int]:
    """Indices of bridge edges (multigraph aware)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if u != v:
            adj[u].append((v, i))
            adj[v].append((u, i))
    disc = [-1] * n
    low = [0] * n
    out: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for y, eid in it:
                if eid == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, eid, iter(adj[y])))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        out.add(via)
    return out


def _contract(n: int, edges, u: int, v: int) -> Multigraph:
    def lab(i: int) -> int:
        i = u if i == v else i
        return i - 1 if i > v else i

    return n - 1, tuple((lab(a), lab(b)) for a, b in edges)


@lru_cache(maxsize=200_000)
def _tutte_memo(key: Multigraph) -> TuttePoly:
    n, edges = key
    loops = sum(1 for u, v in edges if u == v)
    edges = tuple(e for e in edges if e[0] != e[1])
    if loops:
        return _tutte_memo(_canonical(n, edges)).times_monomial(0, loops)
    if not edges:
        return TUTTE_ONE
    bridges = _bridges(n, edges)
    if bridges:
        # contracting bridges keeps the remaining bridges bridges
        m = n
        rest = list(edges)
        for idx in sorted(bridges, reverse=True):
            u, v = rest.pop(idx)
            m, rest = _contract(m, rest, min(u, v), max(u, v))
            rest = list(rest)
            # later (smaller) indices are unaffected by the pop
        return _tutte_memo(_canonical(m, rest)).times_monomial(len(bridges), 0)
    # pick an edge in the largest parallel class
    counts: dict[tuple[int, int], int] = {}
    for u, v in edges:
        counts[(u, v)] = counts.get((u, v), 0) + 1
    (u, v), mult = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
    others = tuple(e for e in edges if e != (u, v))
    contracted = _tutte_memo(_canonical(*_contract(n, others, u, v)))
    if mult == 1:
        return _tutte_memo(_canonical(n, others)) + contracted
    # peel copies one at a time: T(G) = T(G with one copy) + (y + ... + y^(mult-1)) T(G/e)
    single = _tutte_memo(_canonical(n, others + ((u, v),)))
    geometric = TuttePoly({(0, j): 1 for j in range(1, mult)})
    return single + geometric * contracted


def tutte_rank_nullity(g: GraphLike) -> TuttePoly:
    """Subset expansion; exponential in |E|, used as a cross-check."""
    n, edges = as_multigraph(g)
    c_all = _components(n, edges)
    out: dict[tuple[int, int], int] = {}
    for mask in range(1 << len(edges)):
        sub = [e for i, e in enumerate(edges) if mask >> i & 1]
        c = _components(n, sub)
        i, j = c - c_all, c + len(sub) - n
        # (x-1)^i (y-1)^j expanded
        for a in range(i + 1):
            for b in range(j + 1):
                coeff = math.comb(i, a) * math.comb(j, b) * (-1) ** (i - a + j - b)
                out[(a, b)] = out.get((a, b), 0) + coeff
    return TuttePoly(out)


def chromatic_from_tutte(g: GraphLike, q: int) -> int:
    n, edges = as_multigraph(g)
    c = _components(n, edges)
    return (-1) ** (n - c) * q**c * tutte(g)(1 - q, 0)


# --- Kauffman bracket ------------------------------------------------------------


def _order_crossings(d: LinkDiagram) -> list[int]:
    """Greedy order keeping the set of half-processed arcs small."""
    m = len(d.crossings)
    if m == 0:
        return []
    where: dict[int, list[int]] = {}
    for i, c in enumerate(d.crossings):
        for a in c.arcs:
            where.setdefault(a, []).append(i)
    done: set[int] = set()
    open_arcs: set[int] = set()
    order = []
    remaining = set(range(m))
    while remaining:
        best, best_score = None, None
        for i in remaining:
            arcs = d.crossings[i].arcs
            closes = sum(1 for a in arcs if a in open_arcs) + sum(
                1 for a in set(arcs) if arcs.count(a) == 2
            )
            score = (-closes, i)
            if best_score is None or score < best_score:
                best, best_score = i, score
        order.append(best)
        remaining.discard(best)
        done.add(best)
        for a in d.crossings[best].arcs:
            if all(j in done for j in where[a]):
                open_arcs.discard(a)
            else:
                open_arcs.add(a)
    return order


def bracket(d: LinkDiagram, cap: int = DEFAULT_BRACKET_CAP) -> LaurentPoly:
    """Kauffman bracket, normalized so the crossingless unknot has value 1.

    Sums all ``2^c`` states, but sweeps crossings one at a time and merges states
    that agree on how the still-open arcs are paired up.  Each entry of the table
    is keyed by that pairing and stores ``{(A-exponent, closed loops): count}``.
    """
    c = len(d.crossings)
    if c > cap:
        raise ValueError(f"{c} crossings exceeds bracket cap {cap}")
    table: dict[frozenset, dict[tuple[int, int], int]] = {frozenset(): {(0, 0): 1}}
    seen: set[int] = set()
    for idx in _order_crossings(d):
        crossing = d.crossings[idx]
        a_pairs, b_pairs = crossing.smoothings()
        first_visit = {a for a in crossing.arcs if a not in seen}
        new_table: dict[frozenset, dict[tuple[int, int], int]] = {}
        for key, poly in table.items():
            partner = dict(key)
            for pairs, weight in ((a_pairs, 1), (b_pairs, -1)):
                p = dict(partner)
                fresh = set(first_visit)
                loops = 0
                for s, t in pairs:
                    loops += _join(p, fresh, crossing.arcs[s], crossing.arcs[t])
                new_key = frozenset(p.items())
                bucket = new_table.setdefault(new_key, {})
                for (e, l), coeff in poly.items():
                    k2 = (e + weight, l + loops)
                    bucket[k2] = bucket.get(k2, 0) + coeff
        table = new_table
        seen.update(crossing.arcs)
    (final,) = table.values() if table else ({(0, 0): 1},)
    out = LaurentPoly()
    loop_powers: dict[int, LaurentPoly] = {}
    for (e, loops), coeff in final.items():
        k = loops + d.free_loops - 1
        if k not in loop_powers:
            loop_powers[k] = LOOP**k if k >= 0 else None
        if loop_powers[k] is None:
            raise AssertionError("crossingless diagram without loops")
        out = out + loop_powers[k].shift(e) * coeff
    if c == 0 and d.free_loops == 0:
        raise ValueError("empty diagram")
    return out


def _join(partner: dict[int, int], fresh: set[int], a: int, b: int) -> int:
    """Connect the ends of arcs ``a`` and ``b`` meeting at the current crossing.

    ``partner`` pairs open arcs whose far ends are joined through processed
    crossings; a fresh arc is its own far end.  Returns the number of loops closed.
    """
    if a == b:
        fresh.discard(a)
        return 1
    ends = []
    for x in (a, b):
        if x in fresh:
            fresh.discard(x)
            ends.append(x)
        else:
            ends.append(partner.pop(x))
    u, v = ends
    if u == b and v == a:
        return 1
    partner[u] = v
    partner[v] = u
    return 0


def bracket_state_sum(d: LinkDiagram, cap: int = 20) -> LaurentPoly:
    """Plain enumeration of all 2^c smoothings (reference implementation)."""
    c = len(d.crossings)
    if c > cap:
        raise ValueError(f"{c} crossings exceeds cap {cap}")
    if c == 0:
        return LOOP ** (d.free_loops - 1)
    counts: dict[tuple[int, int], int] = {}
    choices = [x.smoothings() for x in d.crossings]
    for state in itertools.product((0, 1), repeat=c):
        uf = UnionFind()
        for crossing, pick, smooth in zip(d.crossings, state, choices):
            for s, t in smooth[pick]:
                uf.union(crossing.arcs[s], crossing.arcs[t])
        loops = len(uf)
        a_count = c - sum(state)
        key = (a_count - sum(state), loops)
        counts[key] = counts.get(key, 0) + 1
    out = LaurentPoly()
    for (e, loops), coeff in counts.items():
        out = out + (LOOP ** (loops + d.free_loops - 1)).shift(e) * coeff
    return out


def bracket_skein(d: LinkDiagram) -> LaurentPoly:
    """Memoized recursion on the skein relation (reference implementation)."""
    if not d.crossings:
        return LOOP ** (d.free_loops - 1)
    crossings = tuple((c.arcs, c.kind) for c in d.crossings)
    inner = _skein(_relabel(crossings))
    return divide_by_loop(inner) * LOOP**d.free_loops


def _relabel(crossings):
    names: dict[int, int] = {}
    out = []
    for arcs, kind in crossings:
        out.append((tuple(names.setdefault(a, len(names)) for a in arcs), kind))
    return tuple(out)


@lru_cache(maxsize=100_000)
def _skein(crossings) -> LaurentPoly:
    # state weights carry d^loops rather than d^(loops - 1); the caller divides once
    if not crossings:
        return LaurentPoly({0: 1})
    (arcs, kind), rest = crossings[0], crossings[1:]
    a_pairs, b_pairs = Crossing(arcs, kind).smoothings()
    total = LaurentPoly()
    for pairs, weight in ((a_pairs, 1), (b_pairs, -1)):
        sub = [list(x[0]) for x in rest]
        loops = 0
        mapping: dict[int, int] = {}
        for s, t in pairs:
            x, y = arcs[s], arcs[t]
            x, y = mapping.get(x, x), mapping.get(y, y)
            if x == y:
                loops += 1
                continue
            # rename y -> x everywhere downstream
            for k in list(mapping):
                if mapping[k] == y:
                    mapping[k] = x
            mapping[y] = x
        sub = tuple(
            (tuple(mapping.get(a, a) for a in arcs2), x[1]) for arcs2, x in zip(sub, rest)
        )
        total = total + (_skein(_relabel(sub)) * LOOP**loops).shift(weight)
    return total


# --- Fox colourings --------------------------------------------------------------


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of an integer matrix."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # bring the smallest nonzero entry of the remaining block to (r, r)
        while True:
            pivot = None
            for i in range(r, rows):
                for j in range(r, cols):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return diag
            i, j = pivot
            m[r], m[i] = m[i], m[r]
            for row in m:
                row[r], row[j] = row[j], row[r]
            p = m[r][r]
            done = True
            for i in range(r + 1, rows):
                f = m[i][r] // p
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                if m[i][r]:
                    done = False
            for j in range(r + 1, cols):
                f = m[r][j] // p
                if f:
                    for row in m:
                        row[j] -= f * row[r]
                if m[r][j]:
                    done = False
            if not done:
                continue
            # divisibility: p must divide the whole remaining block
            bad = next(
                ((i, j) for i in range(r + 1, rows) for j in range(r + 1, cols) if m[i][j] % p),
                None,
            )
            if bad is None:
                break
            m[r] = [a + b for a, b in zip(m[r], m[bad[0]])]
        diag.append(abs(m[r][r]))
        r += 1
    return diag


def fox_arcs(d: LinkDiagram) -> tuple[dict[int, int], int]:
    """Map diagram arcs to Fox arcs (over-strand segments); returns (map, count)."""
    uf = UnionFind()
    for c in d.crossings:
        for a in c.arcs:
            uf.add(a)
        s, t = c.over_slots()
        uf.union(c.arcs[s], c.arcs[t])
    roots = {}
    mapping = {}
    for a in sorted({a for c in d.crossings for a in c.arcs}):
        r = uf.find(a)
        mapping[a] = roots.setdefault(r, len(roots))
    return mapping, len(roots)


def colouring_matrix(d: LinkDiagram) -> list[list[int]]:
    mapping, k = fox_arcs(d)
    rows = []
    for c in d.crossings:
        row = [0] * k
        s, _ = c.over_slots()
        row[mapping[c.arcs[s]]] += 2
        for u in c.under_slots():
            row[mapping[c.arcs[u]]] -= 1
        rows.append(row)
    return rows


def col_count(d: LinkDiagram, q: int) -> int:
    """Number of Fox q-colourings of the diagram (q odd)."""
    if q < 1 or q % 2 == 0:
        raise ValueError("Fox colourings need an odd positive q")
    _, k = fox_arcs(d)
    diag = smith_diagonal(colouring_matrix(d)) if d.crossings else []
    count = q ** (k - len(diag))
    for e in diag:
        count *= math.gcd(e, q)
    return count * q**d.free_loops


# --- normalized functions on F -----------------------------------------------------


def chr_fn(g: TreePair, q: int, reduce: bool = True) -> Fraction:
    if q < 2:
        raise ValueError("chromatic function needs q >= 2")
    p = _rep(g, reduce)
    return Fraction(chromatic(gamma_graph(p), q), (q - 1) ** (p.leaves - 1))


def potts_point(q: float, k: float) -> tuple[float, float]:
    if k == 0:
        raise ValueError("Potts point needs K != 0")
    y = math.exp(k)
    return (y + q - 1) / (y - 1), y


def tutte_fn(g: TreePair, x, y, reduce: bool = True):
    if x + y == 0:
        raise ValueError("x + y must be nonzero")
    p = _rep(g, reduce)
    value = tutte_of_pair(p)(x, y)
    return value / (x + y) ** (p.leaves - 1)


@lru_cache(maxsize=65536)
def tutte_of_pair(p: TreePair) -> TuttePoly:
    return tutte(gamma_graph(p))


@lru_cache(maxsize=65536)
def bracket_of_pair(p: TreePair) -> LaurentPoly:
    return bracket(link_of(p, reduce=False))


def loop_value(a: complex) -> complex:
    return -(a**2) - a**-2


def bracket_fn(g: TreePair, a: complex, reduce: bool = True) -> complex:
    d = loop_value(a)
    if abs(d) < 1e-12:
        raise ValueError("loop value -A^2 - A^-2 vanishes")
    p = _rep(g, reduce)
    return complex(bracket_of_pair(p)(a)) / d**p.leaves


@lru_cache(maxsize=65536)
def col_count_of_pair(p: TreePair, q: int) -> int:
    return col_count(link_of(p, reduce=False), q)


def colq_fn(g: TreePair, q: int, reduce: bool = True) -> Fraction:
    if q < 1 or q % 2 == 0:
        raise ValueError("Fox colourings need an odd positive q")
    p = _rep(g, reduce)
    return Fraction(col_count_of_pair(p, q), q**p.leaves)


def _rep(g: TreePair, reduce: bool) -> TreePair:
    return reduce_pair(g) if reduce else g


def is_trivial_certificate(poly: LaurentPoly, components: int) -> tuple[bool, int | None]:
    """Is ``poly == +-A^(3m) d^(components-1)``?  Returns (ok, m)."""
    base = LOOP ** (components - 1)
    shift = poly.max_degree() - base.max_degree() if not poly.is_zero() else 0
    for sign in (1, -1):
        if poly == base.shift(shift) * sign and shift % 3 == 0:
            return True, shift // 3
    return False, None
