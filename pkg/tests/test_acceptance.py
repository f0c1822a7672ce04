"""Acceptance suite: thirteen end-to-end criteria at their stated tolerances.

Each test records one PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary.  Running this file directly prints the same lines.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from itertools import permutations

import numpy as np

from thompsonlinks import oracles
from thompsonlinks.cli import findex_scan
from thompsonlinks.diagram import link_of
from thompsonlinks.gamma import gamma_graph
from thompsonlinks.invariants import (
    bracket,
    bracket_fn,
    chr_fn,
    chromatic,
    col_count,
    colq_fn,
    potts_point,
    tutte,
    tutte_fn,
)
from thompsonlinks.polynomials import A
from thompsonlinks.positivity import (
    NOT_SELF_ADJOINT,
    PSD,
    InvariantSpec,
    gram_matrix,
    gram_report,
    positivity_sweep,
    psd_check,
    roots_for_Q,
    witness_elements,
)
from thompsonlinks.thompson import (
    TreePair,
    apply,
    generator_pair,
    invert,
    iter_reduced_pairs,
    multiply,
    pad_with_caret,
    random_element,
    random_word,
    reduce_pair,
    trees_with_leaves,
    word_to_pair,
)

RESULTS: dict[int, str] = {}

OMEGA = word_to_pair("x1 x0^-1")
OMEGA2 = multiply(OMEGA, OMEGA)
HOPF_WORD = word_to_pair("x0^-1 x1 x0^-1")
TREFOIL = 1 - A**4 + A**-8


def record(number: int, title: str, ok: bool, started: float, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title} ({time.perf_counter() - started:.2f}s)"
    if detail:
        line += f" - {detail}"
    RESULTS[number] = line
    assert ok, line


def all_tree_pairs(max_leaves: int):
    for n in range(1, max_leaves + 1):
        trees = trees_with_leaves(n)
        for s in trees:
            for t in trees:
                yield TreePair(s, t)


# 1 ---------------------------------------------------------------------------------------


def test_01_chromatic_gram_example():
    t0 = time.perf_counter()
    target = [[108, 84, 72, 48], [84, 108, 72, 72], [72, 72, 108, 48], [48, 72, 48, 108]]
    trees = trees_with_leaves(4)
    table = {(i, j): chromatic(gamma_graph(TreePair(s, t)), 4) for i, s in enumerate(trees) for j, t in enumerate(trees)}
    hits = []
    for tup in permutations(range(len(trees)), 4):
        m = [[Fraction(table[i, j], 27) for j in tup] for i in tup]
        if m == [[Fraction(v, 27) for v in row] for row in target]:
            hits.append(tup)
    # the same matrix through the gram machinery, exactly
    ok = bool(hits)
    if ok:
        els = [TreePair(trees[i], trees[hits[0][0]]) for i in hits[0]]
        m, n = gram_matrix(els, InvariantSpec("chromatic", q=4))
        ok = n == 4 and m == [[Fraction(v, 27) for v in row] for row in target]
    record(1, "chromatic Gram example at Q=4", ok, t0, f"{len(hits)} matching tuples")


# 2, 3 --------------------------------------------------------------------------------------


def test_02_trefoil():
    t0 = time.perf_counter()
    value = bracket(link_of(OMEGA2))
    record(2, "trefoil bracket of omega^2", value == TREFOIL, t0, repr(value))


def test_03_hopf():
    t0 = time.perf_counter()
    value = bracket(link_of(HOPF_WORD))
    record(3, "Hopf bracket of x0^-1 x1 x0^-1", value == -(A**4) - A**-4, t0, repr(value))


# 4, 5 --------------------------------------------------------------------------------------


def test_04_bracket_gram_matrices():
    t0 = time.perf_counter()
    q2 = np.array([[4, 1, 2, 0], [1, 4, 1, 2], [2, 1, 4, 1j], [0, 2, -1j, 4]]) / 2**2.5
    q4 = np.array([[16, 1, 4, -2], [1, 16, 1, 4], [4, 1, 16, 1], [-2, 4, 1, 16]]) / 2**5
    els = witness_elements()
    errs, eigs = [], []
    for q, expected in ((2, q2), (4, q4)):
        assert abs(roots_for_Q(q)[0] - (np.exp(3j * np.pi / 8) if q == 2 else 1j)) < 1e-12
        m, _ = gram_matrix(els, InvariantSpec("bracket", q=q, root=1))
        errs.append(float(np.abs(np.array(m) - expected).max()))
        report = psd_check(m, 1e-9)
        eigs.append(report.min_eigenvalue)
        if report.verdict != PSD:
            eigs.append(-math.inf)
    ok = max(errs) <= 1e-9 and min(eigs) >= -1e-9
    record(4, "bracket Gram matrices at Q=2 and Q=4", ok, t0, f"max err {max(errs):.1e}, min eig {min(eigs):.4f}")


def test_05_q5_not_self_adjoint():
    t0 = time.perf_counter()
    q = 5
    a = roots_for_Q(q)[0]
    report = gram_report(witness_elements(), InvariantSpec("bracket", q=q, root=1))
    d = -(a**2) - a**-2
    n = report.n
    e34 = complex(report.matrix[2][3]) * d**n
    e43 = complex(report.matrix[3][2]) * d**n
    ok = (
        abs(e34 - (a**-8 - a**4 + 1)) < 1e-9 * max(1, abs(e34))
        and abs(e43 - (a**8 - a**-4 + 1)) < 1e-9 * max(1, abs(e43))
        and report.verdict == NOT_SELF_ADJOINT
        and report.max_asym > 1e-6
    )
    record(5, "Q=5 Gram matrix not self-adjoint", ok, t0, f"max asymmetry {report.max_asym:.4f}")


# 6 -------------------------------------------------------------------------------------------


def test_06_root_lemma():
    t0 = time.perf_counter()
    e = lambda k, m: complex(np.exp(1j * np.pi * k / m))  # noqa: E731
    cases = {
        2: [e(3, 8), -e(3, 8), e(-3, 8), -e(-3, 8)],
        3: [e(5, 12), -e(5, 12), e(-5, 12), -e(-5, 12)],
        4: [1j, 1j, -1j, -1j],
    }
    ok = True
    for q, expected in cases.items():
        got = roots_for_Q(q)
        for r in expected:
            ok &= min(abs(r - g) for g in got) < 1e-12
        for g in got:
            ok &= abs(g**4 + math.sqrt(q) * g**2 + 1) < 1e-12
    for q in range(5, 11):
        for g in roots_for_Q(q):
            ok &= abs(g.real) < 1e-12 and abs(abs(g) - 1) > 1e-6
    record(6, "roots of A^4 + sqrt(Q) A^2 + 1", ok, t0)


# 7, 8 -----------------------------------------------------------------------------------------


def test_07_potts_tutte_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for p in iter_reduced_pairs(5):
        g = gamma_graph(p)
        poly = tutte(g)
        for q in (2, 3, 4):
            for k in (-2.0, -0.5, 0.7, 1.3):
                z = oracles.potts_partition(g, q, k)
                x, y = potts_point(q, k)
                rhs = q * (y - 1) ** (g.n - 1) * y ** (-len(g.edges)) * poly(x, y)
                worst = max(worst, abs(z - rhs) / abs(z))
    record(7, "Potts sum equals Tutte specialization", worst <= 1e-9, t0, f"max rel err {worst:.1e}")


def test_08_chromatic_limit():
    t0 = time.perf_counter()
    ok = True
    worst = 0.0
    for p in iter_reduced_pairs(5):
        g = gamma_graph(p)
        rows = oracles.chromatic_limit_check(g, 3, [-5.0, -10.0, -20.0, -30.0])
        res = [r["residual"] for r in rows]
        chr3 = rows[0]["chromatic"]
        rel = res[-1] / max(1, chr3)
        worst = max(worst, rel)
        ok &= rel < 1e-6
        ok &= all(a >= b for a, b in zip(res, res[1:]))
    record(8, "K -> -inf limit of the Potts sum", ok, t0, f"worst rel residual {worst:.1e}")


# 9 --------------------------------------------------------------------------------------------


def test_09_oracle_equivalences():
    t0 = time.perf_counter()
    failures = []
    trees4 = trees_with_leaves(4)
    vecs = {t: oracles.chromatic_vector(t, 4) for t in trees4}
    values = set()
    for s in trees4:
        for t in trees4:
            v = int(vecs[s] @ vecs[t])
            values.add(v)
            if v != chromatic(gamma_graph(TreePair(s, t)), 4):
                failures.append(("chromatic", s, t))
    if not {84, 72, 48} <= values:
        failures.append(("chromatic values", sorted(values)))
    for p in all_tree_pairs(5):
        g = gamma_graph(p)
        poly = bracket(link_of(p, reduce=False))
        for q in (2, 3, 4):
            a = roots_for_Q(q)[0]
            if abs(oracles.kauffman_partition(g, q, a) - poly(a)) > 1e-9:
                failures.append(("bracket", p, q))
    for p in all_tree_pairs(4):
        d = link_of(p, reduce=False)
        for q in (3, 5):
            if oracles.colouring_partition(d, q) != col_count(d, q):
                failures.append(("colourings", p, q))
    trees3 = trees_with_leaves(3)
    for s in trees3:
        for t in trees3:
            if oracles.fox_pairing(s, t, 3) != col_count(link_of(TreePair(s, t), reduce=False), 3):
                failures.append(("semilink", s, t))
    record(9, "oracle equivalence suite", not failures, t0, f"{len(failures)} mismatches")


# 10 -------------------------------------------------------------------------------------------


def test_10_well_definedness():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    a = roots_for_Q(2)[0]
    x, y = potts_point(3, 1.0)
    bad = 0
    for _ in range(200):
        g = random_element(7, rng)
        base = (chr_fn(g, 4), tutte_fn(g, x, y), bracket_fn(g, a), colq_fn(g, 3))
        for _ in range(3):
            p = pad_with_caret(g, rng.randrange(g.leaves))
            got = (
                chr_fn(p, 4, reduce=False),
                tutte_fn(p, x, y, reduce=False),
                bracket_fn(p, a, reduce=False),
                colq_fn(p, 3, reduce=False),
            )
            bad += got[0] != base[0] or got[3] != base[3]
            bad += abs(got[1] - base[1]) > 1e-12 * max(1, abs(base[1]))
            bad += abs(got[2] - base[2]) > 1e-12
    record(10, "normalized functions ignore caret padding", bad == 0, t0, f"{bad} violations")


# 11 -------------------------------------------------------------------------------------------


def test_11_positivity_sweeps():
    t0 = time.perf_counter()
    specs = [InvariantSpec("chromatic", q=q) for q in (2, 3, 4)]
    specs += [InvariantSpec("tutte_potts", q=3, k=1.0)]
    specs += [InvariantSpec("bracket", q=q, root=1) for q in (2, 3, 4)]
    specs += [InvariantSpec("colourings", q=q) for q in (3, 5)]
    not_psd = []
    necessary = 0
    for i, spec in enumerate(specs):
        summary = positivity_sweep(4, 6, spec, 100, seed=100 + i, tol=1e-9)
        if summary["verdicts"][PSD] != 100:
            not_psd.append((spec.kind, spec.q))
        for report in summary["reports"]:
            m = np.array([[complex(v) for v in row] for row in report.matrix])
            diag = np.diag(m)
            necessary += int(np.any(np.abs(diag.imag) > 1e-12) or np.any(diag.real <= 0))
            necessary += int(np.any(np.abs(m) > diag.real.max() + 1e-12))
            necessary += int(np.abs(m - m.conj().T).max() > 1e-12)
    ok = not not_psd and necessary == 0
    record(11, "positivity sweeps at positive-type parameters", ok, t0, f"non-PSD kinds {not_psd}, {necessary} necessary-condition violations")


# 12 -------------------------------------------------------------------------------------------


def test_12_findex():
    t0 = time.perf_counter()
    four = findex_scan(4)
    five = findex_scan(5)
    omega2 = reduce_pair(OMEGA2).to_json()
    trefoil = any(f["pair"] == omega2 and f["bracket"] == TREFOIL.to_json() for f in five["failures"])
    ok = four["nontrivial"] == 0 and trefoil
    record(12, "F-index scan", ok, t0, f"<=4 leaves: {four['nontrivial']} nontrivial of {four['checked']}; <=5 leaves: {five['nontrivial']} nontrivial")


# 13 -------------------------------------------------------------------------------------------


def test_13_group_theory():
    t0 = time.perf_counter()
    x = generator_pair
    ok = multiply(x(2), x(1)) == multiply(x(1), x(3)) and multiply(x(3), x(1)) == multiply(x(1), x(4))
    rng = random.Random(13)
    for _ in range(500):
        a = word_to_pair(random_word(rng.randint(0, 6), rng, max_index=3))
        b = word_to_pair(random_word(rng.randint(0, 6), rng, max_index=3))
        t = Fraction(rng.randrange(2**8 + 1), 2**8)
        # products act on the right
        ok &= apply(multiply(a, b), t) == apply(b, apply(a, t))
    a_root = roots_for_Q(2)[0]
    for _ in range(100):
        g = random_element(7, rng)
        ok &= abs(bracket_fn(invert(g), a_root) - bracket_fn(g, 1 / a_root)) < 1e-12
    record(13, "group laws, action and mirror property", ok, t0)


if __name__ == "__main__":
    import sys

    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            pass
    for key in sorted(RESULTS):
        print(RESULTS[key])
    sys.exit(0 if all(line.startswith("[PASS]") for line in RESULTS.values()) and len(RESULTS) == 13 else 1)
