"""Acceptance criteria: exact equality everywhere, each under its runtime budget.

Each test prints a pass/fail line into the ``acceptance criteria`` section
of the pytest terminal summary.
"""

from __future__ import annotations

from collections import Counter

from suslin_clifford.clifford import phi_blocks
from suslin_clifford.matrix import Matrix
from suslin_clifford.ring import ring_make
from suslin_clifford.suslin import build_suslin_bases, generalized_suslin, generalized_suslin_bar, represent
from suslin_clifford.verify import run_suite, symbolic_element, symbolic_names

SYMBOLIC_RANKS = [0, 1, 2, 3]


def _all_pass(reports, expected: int) -> None:
    assert len(reports) == expected, f"expected {expected} reports, got {len(reports)}"
    failed = [r for r in reports if not r.passed]
    assert not failed, f"{failed[0].theorem} failed at n={failed[0].n}: {failed[0].counterexample}"


def test_criterion_1_square_law(criterion):
    def body():
        _all_pass(run_suite("square-law", "int", SYMBOLIC_RANKS, "symbolic"), 4)
        _all_pass(run_suite("square-law", "int", [4, 5], "randomized", trials=200), 400)
        return "symbolic n=0..3, 200 random at n=4 and n=5"

    criterion.run(1, "Clifford square law", 30, body)


def test_criterion_2_block_formula(criterion):
    def body():
        _all_pass(run_suite("block-formula", "int", SYMBOLIC_RANKS, "symbolic"), 4)
        return "symbolic n=0..3"

    criterion.run(2, "block formula vs Φ blocks", 10, body)


def _rank_one_goldens() -> None:
    ring = ring_make("poly:" + ",".join(symbolic_names(1)))
    x = symbolic_element(ring, 1)
    p, a, f, b = x.p[0], x.a, x.f[0], x.b
    b1, b0 = build_suslin_bases(1)
    s_gold = Matrix(ring, [[b, f], [-p, a]])
    sbar_gold = Matrix(ring, [[a, -f], [p, b]])
    act = phi_blocks(x)
    assert represent(generalized_suslin(x), b1, b1) == s_gold
    assert represent(generalized_suslin_bar(x), b1, b1) == sbar_gold
    assert represent(act.phi10, b1, b0) == s_gold
    assert represent(act.phi01, b0, b1) == sbar_gold


def test_criterion_3_justification_and_basis_phi(criterion):
    def body():
        _rank_one_goldens()
        _all_pass(run_suite("justification,basis-phi", "int", SYMBOLIC_RANKS, "symbolic"), 8)
        return "symbolic n=0..3 plus the rank-1 golden matrices"

    criterion.run(3, "Justification and Basis-Phi", 30, body)


def test_criterion_4_lemmas(criterion):
    def body():
        _all_pass(run_suite("lemma-a,lemma-b,lemma-c,lemma-d,lemma-e,lemma-h", "int", SYMBOLIC_RANKS, "symbolic"), 24)
        _all_pass(run_suite("lemma-f", "int", [1, 2, 3], "symbolic"), 3)
        _all_pass(run_suite("lemma-f", "int", [4], "randomized", trials=50), 50)
        invertible = Counter()
        for ring in ("int", "mod:97"):
            reports = run_suite("lemma-g", ring, [1, 2, 3], "randomized", trials=100)
            _all_pass(reports, 300)
            invertible.update(r.details["invertible"] for r in reports)
        assert invertible[True] > 0 and invertible[False] > 0, invertible
        return f"g: {invertible[True]} invertible, {invertible[False]} not"

    criterion.run(4, "lemmas a)-h)", 60, body)


def _key_sampling(theorem: str) -> str:
    _all_pass(run_suite(theorem, "int", [0, 1, 2], "symbolic"), 3)
    summary = []
    for ring in ("int", "mod:97"):
        reports = run_suite(theorem, ring, [3], "randomized", trials=200)
        _all_pass(reports, 200)
        classes = Counter(r.details["q_class"] for r in reports)
        zero = classes["q-zero"]
        nonunit = classes["q-zero"] + classes["q-nonunit"]
        assert zero >= 20, f"{ring}: only {zero} cases with q = 0"
        assert nonunit >= 20, f"{ring}: only {nonunit} cases with q a non-unit"
        if ring == "int":
            assert classes["q-nonunit"] >= 20, f"only {classes['q-nonunit']} nonzero non-unit q"
        summary.append(f"{ring}: q=0 {zero}, non-unit {nonunit}")
    return "; ".join(summary)


def test_criterion_5_key_lemma(criterion):
    criterion.run(5, "generalized Key Lemma", 60, lambda: _key_sampling("key-lemma"))


def test_criterion_6_key_corollary(criterion):
    criterion.run(6, "Key Corollary", 60, lambda: _key_sampling("key-corollary"))


def test_criterion_7_exterior_kernel(criterion):
    def body():
        # rank n here is m - 1, so m runs over 1..5
        _all_pass(run_suite("exterior", "int", [0, 1, 2, 3, 4], "randomized", trials=1000), 5000)
        return "1000 cases at each m = 1..5"

    criterion.run(7, "exterior algebra kernel", 30, body)


def test_criterion_8_projective(criterion):
    def body():
        _all_pass(run_suite("projective", "int", [1, 2, 3], "randomized", trials=50), 150)
        return "50 idempotents at each ambient rank 1..3"

    criterion.run(8, "projective case", 30, body)


def test_criterion_9_oracles(criterion):
    def body():
        # det-oracle at rank n uses (n+1)x(n+1) matrices
        _all_pass(run_suite("det-oracle", "int", [0, 1, 2, 3, 4], "randomized", trials=200), 1000)
        _all_pass(run_suite("basis-completeness", "int", range(7), "randomized"), 7)
        return "det at sizes 1..5 (200 each), bases n=0..6"

    criterion.run(9, "oracle cross-checks", 20, body)
