"""Integer Laurent polynomials in A and bivariate Tutte polynomials."""

from __future__ import annotations

from typing import Mapping, Union

Number = Union[int, float, complex]


class LaurentPoly:
    """Finite sum ``sum c_k A^k`` with integer coefficients; immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls({0: other})
        return NotImplemented

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({e * k: c ** -k})
        out = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute_inverse(self) -> "LaurentPoly":
        """A -> A^-1."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __call__(self, a: Number) -> Number:
        return sum(c * a**k for k, c in self._terms.items()) if self._terms else 0

    def to_json(self) -> dict:
        return {"terms": {str(k): c for k, c in self.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        return cls({int(k): int(c) for k, c in data["terms"].items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            mono = "" if k == 0 else ("A" if k == 1 else f"A^{k}")
            if not mono:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}{mono}")
        text = " ".join(parts)
        return text[1:] if text.startswith("+") else text


A = LaurentPoly.monomial(1)
ONE = LaurentPoly.monomial(0)
# loop value -A^2 - A^-2
LOOP = LaurentPoly({2: -1, -2: -1})


def divide_by_loop(p: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``p / (-A^2 - A^-2)``; raises if it does not divide."""
    # p A^2 = q (-A^4 - 1); long division from the top degree down
    rem = p.shift(2).terms
    if not rem:
        return LaurentPoly()
    floor = min(rem)
    out: dict[int, int] = {}
    while rem:
        top = max(rem)
        k = top - 4
        if k < floor:
            raise ValueError("not divisible by the loop value")
        c = rem.pop(top)
        out[k] = -c
        rem[k] = rem.get(k, 0) - c
        if not rem[k]:
            del rem[k]
    return LaurentPoly(out)


class TuttePoly:
    """``sum c_ij x^i y^j``; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {(int(i), int(j)): int(c) for (i, j), c in (terms or {}).items() if c}

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def __add__(self, other: "TuttePoly") -> "TuttePoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TuttePoly(out)

    def __mul__(self, other: "TuttePoly") -> "TuttePoly":
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return TuttePoly(out)

    def times_monomial(self, i: int, j: int) -> "TuttePoly":
        return TuttePoly({(a + i, b + j): c for (a, b), c in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, TuttePoly) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self._terms.items())

    def to_json(self) -> dict:
        return {"terms": [[i, j, c] for (i, j), c in sorted(self._terms.items())]}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                p for p in (("x" if i == 1 else f"x^{i}") if i else "", ("y" if j == 1 else f"y^{j}") if j else "") if p
            )
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)


TUTTE_ONE = TuttePoly({(0, 0): 1})
