"""Elements of Thompson's group F as pairs of rooted planar binary trees.

Trees are nested tuples: ``LEAF == ()`` and a caret is ``(left, right)``.
A :class:`TreePair` ``(plus, minus)`` is the piecewise-linear map sending the
dyadic subdivision of ``plus`` (domain) onto that of ``minus`` (range).
Words and products act on the right: ``multiply(a, b)`` applies ``a`` first,
so ``apply(multiply(a, b), t) == apply(b, apply(a, t))``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Union

Tree = tuple
Word = list[tuple[int, int]]

LEAF: Tree = ()

DEFAULT_ENUMERATION_CAP = 6


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def caret(left: Tree = LEAF, right: Tree = LEAF) -> Tree:
    return (left, right)


def is_leaf(t: Tree) -> bool:
    return not t


@lru_cache(maxsize=None)
def leaf_count(t: Tree) -> int:
    if not t:
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def tree_to_text(t: Tree) -> str:
    if not t:
        return "l"
    return f"({tree_to_text(t[0])} {tree_to_text(t[1])})"


def tree_from_text(text: str) -> Tree:
    tokens = re.findall(r"[()]|l", text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise ValueError(f"unexpected characters in tree text {text!r}")
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("truncated tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "l":
            return LEAF
        if tok != "(":
            raise ValueError(f"unexpected {tok!r} in tree text")
        left = parse()
        right = parse()
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("caret must have exactly two children")
        pos += 1
        return (left, right)

    t = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in tree text")
    return t


def right_vine(n: int) -> Tree:
    t = LEAF
    for _ in range(n - 1):
        t = (LEAF, t)
    return t


def left_vine(n: int) -> Tree:
    t = LEAF
    for _ in range(n - 1):
        t = (t, LEAF)
    return t


@dataclass(frozen=True)
class TreePair:
    plus: Tree
    minus: Tree

    def __post_init__(self):
        if leaf_count(self.plus) != leaf_count(self.minus):
            raise ValueError(
                f"unmatched pair: {leaf_count(self.plus)} vs {leaf_count(self.minus)} leaves"
            )

    @property
    def leaves(self) -> int:
        return leaf_count(self.plus)

    def to_text(self) -> str:
        return f"{tree_to_text(self.plus)} / {tree_to_text(self.minus)}"

    def to_json(self) -> dict:
        return {
            "plus": tree_to_text(self.plus),
            "minus": tree_to_text(self.minus),
            "leaves": self.leaves,
        }

    def __repr__(self) -> str:
        return f"TreePair({self.to_text()})"


IDENTITY = TreePair(LEAF, LEAF)


# --- words -----------------------------------------------------------------

def parse_word(text: str) -> Word:
    """Parse ``x0 x1^-1 x_3^2`` style input into ``[(index, exponent), ...]``."""
    word: Word = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "x":
            raise WordParseError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
        if pos < n and text[pos] == "_":
            pos += 1
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise WordParseError("missing generator index", pos)
        index = int(text[start:pos])
        exponent = 1
        if pos < n and text[pos] == "^":
            pos += 1
            sign = 1
            if pos < n and text[pos] == "-":
                sign = -1
                pos += 1
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise WordParseError("missing exponent", pos)
            exponent = sign * int(text[start:pos])
            if exponent == 0:
                raise WordParseError("exponent must be nonzero", start)
        word.append((index, exponent))
    return word


def word_to_text(word: Word) -> str:
    parts = []
    for index, exponent in word:
        parts.append(f"x{index}" if exponent == 1 else f"x{index}^{exponent}")
    return " ".join(parts)


# --- tree surgery ------------------------------------------------------------


def refine(a: Tree, b: Tree) -> Tree:
    """Least common refinement (union of the dyadic subdivisions)."""
    if not a:
        return b
    if not b:
        return a
    return (refine(a[0], b[0]), refine(a[1], b[1]))


def _hanging_subtrees(t: Tree, finer: Tree) -> list[Tree]:
    # finer must refine t; returns what hangs below each leaf of t
    if not t:
        return [finer]
    if not finer:
        raise ValueError("tree is not a refinement")
    return _hanging_subtrees(t[0], finer[0]) + _hanging_subtrees(t[1], finer[1])


def _graft(t: Tree, subtrees: Sequence[Tree]) -> Tree:
    it = iter(subtrees)

    def walk(node: Tree) -> Tree:
        if not node:
            return next(it)
        return (walk(node[0]), walk(node[1]))

    return walk(t)


def expand_pair(p: TreePair, minus: Tree) -> TreePair:
    """Rewrite ``p`` so that its minus-tree is ``minus`` (a refinement of p.minus)."""
    hanging = _hanging_subtrees(p.minus, minus)
    return TreePair(_graft(p.plus, hanging), minus)


def _carets(t: Tree) -> set[int]:
    # leaf indices i such that leaves i, i+1 form a caret
    found: set[int] = set()

    def walk(node: Tree, offset: int) -> int:
        if not node:
            return 1
        if not node[0] and not node[1]:
            found.add(offset)
            return 2
        k = walk(node[0], offset)
        return k + walk(node[1], offset + k)

    walk(t, 0)
    return found


def _collapse_caret(t: Tree, i: int) -> Tree:
    def walk(node: Tree, offset: int) -> tuple[Tree, int]:
        if not node:
            return node, 1
        if offset == i and not node[0] and not node[1]:
            return LEAF, 2
        left, k = walk(node[0], offset)
        right, m = walk(node[1], offset + k)
        return (left, right), k + m

    return walk(t, 0)[0]


def _expand_leaf(t: Tree, i: int) -> Tree:
    def walk(node: Tree, offset: int) -> tuple[Tree, int]:
        if not node:
            return ((LEAF, LEAF) if offset == i else LEAF), 1
        left, k = walk(node[0], offset)
        right, m = walk(node[1], offset + k)
        return (left, right), k + m

    return walk(t, 0)[0]


def opposing_carets(p: TreePair) -> list[int]:
    return sorted(_carets(p.plus) & _carets(p.minus))


def reduce_pair(p: TreePair) -> TreePair:
    """Cancel opposing carets, leftmost first, until none remain."""
    plus, minus = p.plus, p.minus
    while True:
        common = _carets(plus) & _carets(minus)
        if not common:
            return TreePair(plus, minus)
        i = min(common)
        plus, minus = _collapse_caret(plus, i), _collapse_caret(minus, i)


def is_reduced(p: TreePair) -> bool:
    return not (_carets(p.plus) & _carets(p.minus))


def pad_with_caret(p: TreePair, i: int) -> TreePair:
    if not 0 <= i < p.leaves:
        raise IndexError(f"leaf index {i} out of range for {p.leaves} leaves")
    return TreePair(_expand_leaf(p.plus, i), _expand_leaf(p.minus, i))


def pad_to(p: TreePair, minus: Tree) -> TreePair:
    return expand_pair(p, refine(p.minus, minus))


# --- group operations ----------------------------------------------------------


def invert(p: TreePair) -> TreePair:
    return TreePair(p.minus, p.plus)


def multiply(a: TreePair, b: TreePair, reduce: bool = True) -> TreePair:
    """Product ``a b``: first ``a``, then ``b``."""
    common = refine(a.minus, b.plus)
    a2 = expand_pair(a, common)
    b2 = expand_pair(invert(b), common)  # (b.minus', common)
    out = TreePair(a2.plus, b2.plus)
    return reduce_pair(out) if reduce else out


X0 = TreePair(plus=((LEAF, LEAF), LEAF), minus=(LEAF, (LEAF, LEAF)))
X1 = TreePair(
    plus=(LEAF, ((LEAF, LEAF), LEAF)),
    minus=(LEAF, (LEAF, (LEAF, LEAF))),
)


def power(p: TreePair, k: int) -> TreePair:
    base = p if k >= 0 else invert(p)
    out = IDENTITY
    for _ in range(abs(k)):
        out = multiply(out, base)
    return out


@lru_cache(maxsize=None)
def generator_pair(k: int) -> TreePair:
    """Reduced pair of x_k, with x_k = x0^(1-k) x1 x0^(k-1) for k >= 2."""
    if k < 0:
        raise ValueError("generator index must be nonnegative")
    if k == 0:
        return X0
    if k == 1:
        return X1
    return word_to_pair([(0, 1 - k), (1, 1), (0, k - 1)])


def word_to_pair(word: Union[Word, str]) -> TreePair:
    if isinstance(word, str):
        word = parse_word(word)
    out = IDENTITY
    for index, exponent in word:
        out = multiply(out, power(generator_pair(index), exponent))
    return out


def common_form(elements: Sequence[TreePair]) -> tuple[list[Tree], Tree]:
    """Rewrite all elements over one shared minus-tree.

    Returns the plus-trees and the common minus-tree; the i-th element is
    ``TreePair(tops[i], bottom)`` and ``g_i g_j^-1 == TreePair(tops[i], tops[j])``.
    """
    if not elements:
        raise ValueError("need at least one element")
    bottom = elements[0].minus
    for g in elements[1:]:
        bottom = refine(bottom, g.minus)
    tops = [expand_pair(g, bottom).plus for g in elements]
    return tops, bottom


# --- action on [0, 1] ------------------------------------------------------------


def dyadic(numerator: int, exponent: int) -> Fraction:
    value = Fraction(numerator, 2**exponent)
    if not 0 <= value <= 1:
        raise ValueError(f"{value} is outside [0, 1]")
    return value


def intervals(t: Tree) -> list[tuple[Fraction, Fraction]]:
    """Standard dyadic intervals attached to the leaves, left to right."""
    out: list[tuple[Fraction, Fraction]] = []

    def walk(node: Tree, lo: Fraction, width: Fraction) -> None:
        if not node:
            out.append((lo, lo + width))
            return
        half = width / 2
        walk(node[0], lo, half)
        walk(node[1], lo + half, half)

    walk(t, Fraction(0), Fraction(1))
    return out


def apply(p: TreePair, t: Fraction) -> Fraction:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"{t} is outside [0, 1]")
    for (a, b), (c, d) in zip(intervals(p.plus), intervals(p.minus)):
        if a <= t <= b:
            return c + (t - a) * (d - c) / (b - a)
    raise AssertionError("unreachable: intervals cover [0, 1]")


# --- enumeration and sampling ------------------------------------------------------


@lru_cache(maxsize=None)
def trees_with_leaves(n: int) -> tuple[Tree, ...]:
    if n < 1:
        raise ValueError("trees have at least one leaf")
    if n == 1:
        return (LEAF,)
    out = []
    for k in range(1, n):
        for left in trees_with_leaves(k):
            for right in trees_with_leaves(n - k):
                out.append((left, right))
    return tuple(out)


def enumerate_reduced_pairs(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[TreePair]:
    if n < 1:
        raise ValueError("leaf count must be positive")
    if n > cap:
        raise ValueError(f"leaf count {n} exceeds enumeration cap {cap}")
    trees = trees_with_leaves(n)
    out = []
    for plus in trees:
        for minus in trees:
            p = TreePair(plus, minus)
            if is_reduced(p):
                out.append(p)
    return out


def iter_reduced_pairs(max_leaves: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[TreePair]:
    for n in range(1, max_leaves + 1):
        yield from enumerate_reduced_pairs(n, cap)


def random_tree(n: int, rng: random.Random) -> Tree:
    """Uniform binary tree with ``n`` leaves (Remy's growth process)."""
    # node i: children[i] is None for a leaf, else [left, right]
    children: list = [None]
    parent = [-1]
    for _ in range(n - 1):
        target = rng.randrange(len(children))
        new_leaf = len(children)
        new_node = new_leaf + 1
        children.extend([None, None])
        parent.extend([new_node, parent[target]])
        pair = [target, new_leaf] if rng.random() < 0.5 else [new_leaf, target]
        children[new_node] = pair
        up = parent[target]
        if up >= 0:
            kids = children[up]
            kids[kids.index(target)] = new_node
        parent[target] = new_node

    root = parent.index(-1)

    def build(i: int) -> Tree:
        kids = children[i]
        if kids is None:
            return LEAF
        return (build(kids[0]), build(kids[1]))

    return build(root)


def random_element(max_leaves: int, rng: random.Random) -> TreePair:
    n = rng.randint(1, max_leaves)
    return reduce_pair(TreePair(random_tree(n, rng), random_tree(n, rng)))


def random_word(length: int, rng: random.Random, max_index: int = 1) -> Word:
    return [(rng.randint(0, max_index), rng.choice((-1, 1))) for _ in range(length)]
