from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suslin_clifford.clifford import HyperbolicElement, clifford_endo, phi_blocks
from suslin_clifford.exterior import OrderedBasis
from suslin_clifford.matrix import Matrix
from suslin_clifford.ring import ring_make
from suslin_clifford.suslin import (
    basis_is_complete,
    basis_to_text,
    build_suslin_bases,
    generalized_suslin,
    generalized_suslin_bar,
    represent,
    suslin_bar,
    suslin_bar_of,
    suslin_matrix,
    suslin_of,
)
from suslin_clifford.verify import det_cofactor, symbolic_element, symbolic_names

Z = ring_make("int")
R1 = ring_make("poly:" + ",".join(symbolic_names(1)))


def test_base_cases():
    assert suslin_matrix([5], [7]).matrix == Matrix(Z, [[5]])
    assert suslin_bar([5], [7]).matrix == Matrix(Z, [[7]])


def test_s2_golden():
    ring = ring_make("poly:a,b,f,p")
    a, b, f, p = ring.variables()
    assert suslin_matrix([b, f], [a, p], ring).matrix == Matrix(ring, [[b, f], [-p, a]])
    assert suslin_bar([b, f], [a, p], ring).matrix == Matrix(ring, [[a, -f], [p, b]])


def test_s3_determinant_by_cofactor():
    s = suslin_matrix([1, 2, 3], [4, 5, 6])
    assert s.matrix.shape == (4, 4)
    assert det_cofactor(s.matrix) == Z(1024)
    assert 32 ** 2 == 1024


def test_s_times_sbar_symbolic():
    ring = ring_make("poly:a1,a2,b1,b2")
    a1, a2, b1, b2 = ring.variables()
    s = suslin_matrix([a1, a2], [b1, b2], ring).matrix
    sb = suslin_bar([a1, a2], [b1, b2], ring).matrix
    q = a1 * b1 + a2 * b2
    assert s @ sb == Matrix.scalar(ring, 2, q)
    assert sb @ s == Matrix.scalar(ring, 2, q)


def test_row_errors():
    with pytest.raises(ValueError):
        suslin_matrix([], [])
    with pytest.raises(ValueError):
        suslin_matrix([1, 2], [3])


def test_sizes():
    for n in range(1, 6):
        assert suslin_matrix(list(range(n)), list(range(n))).matrix.shape == (1 << (n - 1),) * 2


def test_generalized_rank_zero():
    x = HyperbolicElement.make(Z, [], 5, [], 7)
    assert generalized_suslin(x).matrix == Matrix(Z, [[7]])
    assert generalized_suslin_bar(x).matrix == Matrix(Z, [[5]])


def test_generalized_of_x0_is_identity():
    for n in range(4):
        x0 = HyperbolicElement.x0(Z, n)
        assert generalized_suslin(x0).matrix.is_identity()
        assert generalized_suslin_bar(x0).matrix.is_identity()


def test_rank_one_in_split_basis():
    x = symbolic_element(R1, 1)
    p, a, f, b = x.p[0], x.a, x.f[0], x.b
    b1, _ = build_suslin_bases(1)
    assert represent(generalized_suslin(x), b1, b1) == Matrix(R1, [[b, f], [-p, a]])
    assert represent(generalized_suslin_bar(x), b1, b1) == Matrix(R1, [[a, -f], [p, b]])


def test_bases_small_ranks():
    b1, b0 = build_suslin_bases(0)
    assert basis_to_text(b1) == ["e1"] and basis_to_text(b0) == ["1"]
    b1, b0 = build_suslin_bases(1)
    assert basis_to_text(b1) == ["e2", "e1"]
    assert basis_to_text(b0) == ["1", "−e1∧e2"]
    b1, b0 = build_suslin_bases(2)
    assert basis_to_text(b1) == ["e3", "e1∧e2∧e3", "e1", "e2"]
    assert basis_to_text(b0) == ["1", "e1∧e2", "−e1∧e3", "−e2∧e3"]


@pytest.mark.parametrize("n", range(7))
def test_bases_complete(n):
    b1, b0 = build_suslin_bases(n)
    assert basis_is_complete(b1, 1) and basis_is_complete(b0, 0)
    assert len(b1) == len(b0) == 1 << n


def test_b0_is_x0_image_of_b1():
    for n in range(4):
        b1, b0 = build_suslin_bases(n)
        act = clifford_endo(HyperbolicElement.x0(Z, n))
        assert [act(u) for u in b1.multivectors(Z)] == b0.multivectors(Z)


def test_represent_lexicographic_is_identity_operation():
    x = HyperbolicElement.make(Z, [1, 2], 3, [4, 5], 6)
    gm = phi_blocks(x).phi10
    assert represent(gm, gm.source, gm.target) == gm.matrix


def test_represent_rejects_foreign_basis():
    x = HyperbolicElement.make(Z, [1], 3, [4], 6)
    gm = phi_blocks(x).phi10
    with pytest.raises(ValueError):
        represent(gm, OrderedBasis.lexicographic(2, 0), gm.target)
    with pytest.raises(ValueError):
        represent(gm, gm.source, OrderedBasis(2, (0,), (1,)))


def _coordinates(u, basis):
    # signed-monomial basis: coordinate of basis element i is sign_i * coefficient at mask_i
    return [u.coefficient(m) * s for m, s in zip(basis.masks, basis.signs)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_justification_through_multivectors(n, data):
    # apply x0 after x directly to multivectors, bypassing matrices and represent
    c = st.integers(-9, 9)
    x = HyperbolicElement.make(Z, [data.draw(c) for _ in range(n)], data.draw(c), [data.draw(c) for _ in range(n)], data.draw(c))
    act, act0 = clifford_endo(x), clifford_endo(HyperbolicElement.x0(Z, n))
    b1, _ = build_suslin_bases(n)
    cols = [_coordinates(act0(act(u)), b1) for u in b1.multivectors(Z)]
    got = Matrix(Z, [list(r) for r in zip(*cols)])
    assert got == suslin_of(x).matrix
    cols = [_coordinates(act(act0(u)), b1) for u in b1.multivectors(Z)]
    assert Matrix(Z, [list(r) for r in zip(*cols)]) == suslin_bar_of(x).matrix


def test_symbolic_specializes_to_integers():
    n = 2
    ring = ring_make("poly:" + ",".join(symbolic_names(n)))
    x = symbolic_element(ring, n)
    values = dict(zip(symbolic_names(n), [1, -2, 3, 4, 0, -5]))
    sym = suslin_of(x).matrix.map(lambda s: s.evaluate(values, Z), Z)
    num = HyperbolicElement.make(Z, [1, -2], 3, [4, 0], -5)
    assert sym == suslin_of(num).matrix
