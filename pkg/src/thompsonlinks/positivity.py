"""Gram matrices ``(phi(g_i g_j^-1))`` and positive-semidefiniteness checks."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .invariants import bracket_fn, chr_fn, colq_fn, potts_point, tutte_fn
from .thompson import TreePair, common_form, word_to_pair, random_element

KINDS = ("chromatic", "tutte_potts", "bracket", "colourings")
PSD = "PSD"
NOT_PSD = "NOT_PSD"
NOT_SELF_ADJOINT = "NOT_SELF_ADJOINT"
DEFAULT_TOL = 1e-9

# x0^-1, x1^-1, x1 x0^-1, x0 x1^-1: the tuple that separates Q <= 4 from Q >= 5
WITNESS_WORDS = ("x0^-1", "x1^-1", "x1 x0^-1", "x0 x1^-1")


@dataclass(frozen=True)
class InvariantSpec:
    kind: str
    q: int = 2
    k: float | None = None
    root: int = 1
    x: Fraction | float | None = None
    y: Fraction | float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "chromatic" and self.q < 2:
            raise ValueError("chromatic needs Q >= 2")
        if self.kind == "tutte_potts":
            if self.x is not None or self.y is not None:
                if self.x is None or self.y is None:
                    raise ValueError("give both x and y, or neither")
                if self.x + self.y == 0:
                    raise ValueError("x + y must be nonzero")
            else:
                if self.q < 2:
                    raise ValueError("tutte_potts needs Q >= 2")
                if not self.k:
                    raise ValueError("tutte_potts needs K != 0")
        if self.kind == "bracket":
            if self.q < 2:
                raise ValueError("bracket needs Q >= 2")
            if self.root not in (1, 2, 3, 4):
                raise ValueError("root selector must be in 1..4")
        if self.kind == "colourings" and (self.q < 1 or self.q % 2 == 0):
            raise ValueError("colourings need an odd Q >= 1")

    @property
    def exact(self) -> bool:
        if self.kind in ("chromatic", "colourings"):
            return True
        return self.kind == "tutte_potts" and isinstance(self.x, Fraction) and isinstance(self.y, Fraction)

    def point(self) -> tuple[Any, Any]:
        if self.x is not None:
            return self.x, self.y
        return potts_point(self.q, self.k)

    def params(self) -> dict:
        if self.kind == "bracket":
            return {"Q": self.q, "root": self.root, "A": _pair(roots_for_Q(self.q)[self.root - 1])}
        if self.kind == "tutte_potts":
            if self.x is not None:
                return {"x": str(self.x), "y": str(self.y)}
            return {"Q": self.q, "K": self.k}
        return {"Q": self.q}

    def evaluate(self, g: TreePair, reduce: bool = True):
        """The normalized invariant ``phi(g)``."""
        if self.kind == "chromatic":
            return chr_fn(g, self.q, reduce)
        if self.kind == "colourings":
            return colq_fn(g, self.q, reduce)
        if self.kind == "tutte_potts":
            x, y = self.point()
            return tutte_fn(g, x, y, reduce)
        return bracket_fn(g, roots_for_Q(self.q)[self.root - 1], reduce)


def roots_for_Q(q: int) -> list[complex]:
    """Solutions of ``A^4 + sqrt(Q) A^2 + 1 = 0``, ordered by argument in ``[0, 2pi)``."""
    if q < 2:
        raise ValueError("Q must be at least 2")
    s = math.sqrt(q)
    disc = cmath.sqrt(q - 4)
    roots = []
    for a2 in ((-s + disc) / 2, (-s - disc) / 2):
        r = cmath.sqrt(a2)
        roots += [r, -r]

    def key(z: complex) -> tuple[float, float]:
        arg = cmath.phase(z) % (2 * math.pi)
        if arg > 2 * math.pi - 1e-12:
            arg = 0.0
        return (round(arg, 12), abs(z))

    return sorted(roots, key=key)


def gram_matrix(elements: Sequence[TreePair], spec: InvariantSpec) -> tuple[list[list[Any]], int]:
    """Matrix of ``phi(g_i g_j^-1)`` and the shared leaf count.

    Each entry is evaluated on the unreduced pair ``(T_i, T_j)`` of plus-trees
    from the common form.
    """
    tops, bottom = common_form(list(elements))
    n = len(tops) and TreePair(tops[0], bottom).leaves
    rows = [[spec.evaluate(TreePair(ti, tj), reduce=False) for tj in tops] for ti in tops]
    return rows, n


# --- PSD -------------------------------------------------------------------------------


@dataclass
class GramReport:
    matrix: list[list[Any]]
    self_adjoint: bool
    max_asym: float
    verdict: str
    min_eigenvalue: float
    tolerance: float
    witness: list[int] = field(default_factory=list)
    kind: str | None = None
    params: dict = field(default_factory=dict)
    n: int | None = None
    seed: int | None = None

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for row in self.matrix for v in row)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "n": self.n,
            "matrix": [[_pair(v) for v in row] for row in self.matrix],
            "self_adjoint": self.self_adjoint,
            "max_asym": self.max_asym,
            "verdict": self.verdict,
            "min_eigenvalue": self.min_eigenvalue,
            "witness": self.witness,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }
        if self.exact:
            out["exact"] = [[str(Fraction(v)) for v in row] for row in self.matrix]
        return out


def _pair(v) -> list[float]:
    z = complex(v)
    return [z.real, z.imag]


def _as_array(m: Sequence[Sequence[Any]]) -> np.ndarray:
    return np.array([[complex(v) for v in row] for row in m], dtype=complex)


def _exact_psd(m: list[list[Fraction]]) -> list[int] | None:
    """Symmetric pivoting on a rational matrix.

    Returns ``None`` when PSD, otherwise indices of a principal submatrix
    that is not PSD.
    """
    idx = list(range(len(m)))
    a = [[Fraction(v) for v in row] for row in m]
    pivots: list[int] = []
    while idx:
        size = len(idx)
        for k in range(size):
            if a[k][k] < 0:
                return sorted(pivots + [idx[k]])
        k = next((k for k in range(size) if a[k][k] > 0), None)
        if k is None:
            # zero diagonal: every row must vanish
            for i in range(size):
                for j in range(size):
                    if a[i][j] != 0:
                        return sorted(pivots + [idx[i], idx[j]])
            return None
        d = a[k][k]
        col = [a[i][k] for i in range(size)]
        a = [
            [a[i][j] - col[i] * col[j] / d for j in range(size) if j != k]
            for i in range(size)
            if i != k
        ]
        pivots.append(idx.pop(k))
    return None


def psd_check(m: Sequence[Sequence[Any]], tol: float = DEFAULT_TOL) -> GramReport:
    rows = [list(r) for r in m]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    arr = _as_array(rows)
    scale = 1.0 + (float(np.abs(arr).max()) if arr.size else 0.0)
    asym = float(np.abs(arr - arr.conj().T).max()) if arr.size else 0.0
    exact = all(isinstance(v, (int, Fraction)) for r in rows for v in r)
    herm = (arr + arr.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(herm).min()) if arr.size else 0.0
    report = GramReport(rows, True, asym, PSD, min_eig, tol)
    if exact:
        n = len(rows)
        bad = [(i, j) for i in range(n) for j in range(n) if Fraction(rows[i][j]) != Fraction(rows[j][i])]
        if bad:
            report.self_adjoint = False
            report.verdict = NOT_SELF_ADJOINT
            report.witness = list(bad[0])
            return report
        witness = _exact_psd(rows)
        if witness is not None:
            report.verdict = NOT_PSD
            report.witness = witness
        return report
    if asym > tol * scale:
        i, j = np.unravel_index(np.argmax(np.abs(arr - arr.conj().T)), arr.shape)
        report.self_adjoint = False
        report.verdict = NOT_SELF_ADJOINT
        report.witness = [int(i), int(j)]
        return report
    if min_eig < -tol * scale:
        report.verdict = NOT_PSD
    return report


def gram_report(
    elements: Sequence[TreePair], spec: InvariantSpec, tol: float = DEFAULT_TOL, seed: int | None = None
) -> GramReport:
    matrix, n = gram_matrix(elements, spec)
    report = psd_check(matrix, tol)
    report.kind = spec.kind
    report.params = spec.params()
    report.n = n
    report.seed = seed
    return report


def witness_elements() -> list[TreePair]:
    return [word_to_pair(w) for w in WITNESS_WORDS]


def positivity_sweep(
    r: int, n: int, spec: InvariantSpec, trials: int, seed: int = 0, tol: float = DEFAULT_TOL
) -> dict:
    """Random ``r``-tuples of elements with at most ``n`` leaves; tallies verdicts."""
    rng = random.Random(seed)
    tally = {PSD: 0, NOT_PSD: 0, NOT_SELF_ADJOINT: 0}
    worst = math.inf
    failures = []
    reports = []
    for t in range(trials):
        if t == 0 and spec.kind == "bracket" and spec.q >= 5:
            elements = witness_elements()
        else:
            elements = [random_element(n, rng) for _ in range(r)]
        report = gram_report(elements, spec, tol, seed)
        reports.append(report)
        tally[report.verdict] += 1
        worst = min(worst, report.min_eigenvalue)
        if report.verdict != PSD and len(failures) < 5:
            failures.append({"trial": t, "elements": [g.to_text() for g in elements], "report": report.to_json()})
    return {
        "kind": spec.kind,
        "params": spec.params(),
        "r": r,
        "n": n,
        "trials": trials,
        "seed": seed,
        "verdicts": tally,
        "min_eigenvalue": worst,
        "failures": failures,
        "reports": reports,
    }
