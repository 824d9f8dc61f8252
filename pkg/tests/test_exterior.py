from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suslin_clifford.exterior import (
    Multivector,
    OrderedBasis,
    canonical_split,
    contract,
    exterior_power_map,
    indices_of,
    lambda_full_map,
    lambda_parity_map,
    left_mul,
    mask_of,
    parity_masks,
    wedge,
)
from suslin_clifford.matrix import Matrix
from suslin_clifford.ring import RingMismatchError, ring_make
from suslin_clifford.verify import det_cofactor

Z = ring_make("int")


def mono(m, idx, c=1):
    return Multivector.monomial(Z, m, idx, c)


# --- independent oracles -------------------------------------------------


def inversion_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def wedge_oracle(u, v):
    out = Multivector.zero(Z, u.rank)
    for su, cu in u.items():
        for sv, cv in v.items():
            if su & sv:
                continue
            seq = list(indices_of(su)) + list(indices_of(sv))
            out = out + Multivector(Z, u.rank, {su | sv: cu * cv * inversion_sign(seq)})
    return out


def contract_oracle(g, u):
    # d_g(v1∧...∧vk) = Σ_j (−1)^{j+1} g(v_j) v1∧..v̂_j..∧vk
    out = Multivector.zero(Z, u.rank)
    for s, c in u.items():
        idx = indices_of(s)
        for j, i in enumerate(idx):
            rest = idx[:j] + idx[j + 1 :]
            sign = 1 if j % 2 == 0 else -1
            out = out + Multivector(Z, u.rank, {mask_of(rest): c * g[i - 1] * sign})
    return out


def minor(phi, rows, cols):
    return det_cofactor(phi.submatrix([r - 1 for r in rows], [c - 1 for c in cols]))


# --- examples --------------------------------------------------------------


def test_monomial_sorting_sign():
    assert mono(3, [2, 1]) == -mono(3, [1, 2])
    assert mono(3, [3, 1, 2]) == mono(3, [1, 2, 3])
    assert mono(3, [1, 1]).is_zero()


def test_wedge_examples():
    e1, e2, e3 = (mono(3, [i]) for i in (1, 2, 3))
    assert wedge(e2, e1) == -mono(3, [1, 2])
    assert wedge(e1, e1).is_zero()
    assert wedge(wedge(e3, e1), e2) == mono(3, [1, 2, 3])
    assert (e1 ^ e2) == wedge(e1, e2)


def test_left_mul_examples():
    assert left_mul([0, 1, 0], mono(3, [1, 3])) == -mono(3, [1, 2, 3])
    assert left_mul([1, 0, 0], mono(3, [1])).is_zero()
    assert left_mul([2, 3], Multivector.scalar(Z, 2)) == Multivector.vector(Z, [2, 3])


def test_contract_examples():
    assert contract([0, 1], mono(2, [1, 2])) == -mono(2, [1])
    assert contract([1, 0], mono(2, [1, 2])) == mono(2, [2])
    assert contract([5, 7], Multivector.scalar(Z, 2)).is_zero()
    assert contract([5, 7], Multivector.vector(Z, [1, 1])) == Multivector.scalar(Z, 2, 12)


def test_dimension_and_ring_checks():
    with pytest.raises(ValueError):
        left_mul([1, 2], mono(3, [1]))
    with pytest.raises(RingMismatchError):
        mono(2, [1]) + Multivector.monomial(ring_make("mod:7"), 2, [1])


def test_parity_masks_increasing():
    assert parity_masks(3, 1) == (0b001, 0b010, 0b100, 0b111)
    assert parity_masks(3, 0) == (0b000, 0b011, 0b101, 0b110)
    assert parity_masks(0, 0) == (0,)
    assert parity_masks(0, 1) == ()


def test_canonical_split_examples():
    odd = canonical_split(2, 1)
    # Λ_1(R^2) = Λ_0(R)∧e2 ⊕ Λ_1(R): [e2, e1]
    assert odd.basis().masks == (0b10, 0b01)
    assert odd.basis().signs == (1, 1)
    even = canonical_split(2, 0)
    assert even.basis().masks == (0b00, 0b11)
    three = canonical_split(3, 1)
    assert three.basis().masks == (0b100, 0b111, 0b001, 0b010)
    with pytest.raises(ValueError):
        canonical_split(0, 1)


def test_exterior_power_examples():
    phi = Matrix.diagonal(Z, [2, 3])
    assert exterior_power_map(phi, 2).matrix == Matrix(Z, [[6]])
    assert exterior_power_map(phi, 1).matrix == phi
    assert exterior_power_map(phi, 0).matrix == Matrix(Z, [[1]])
    with pytest.raises(ValueError):
        exterior_power_map(phi, 3)


def test_top_power_is_determinant():
    phi = Matrix(Z, [[1, 2, 0], [3, -1, 4], [2, 2, 5]])
    assert exterior_power_map(phi, 3).matrix == Matrix(Z, [[det_cofactor(phi)]])


def test_parity_map_is_block_of_full_map():
    phi = Matrix(Z, [[1, 2, 0], [3, -1, 4], [2, 2, 5]])
    full = lambda_full_map(phi).matrix
    for parity in (0, 1):
        idx = list(parity_masks(3, parity))
        assert lambda_parity_map(phi, parity).matrix == full.submatrix(idx, idx)


def test_multivector_text_round_trip():
    u = mono(3, [1, 3], 3) + Multivector.scalar(Z, 3, -1)
    assert u.to_text() == "+3·e{1,3} −1·e{}"
    assert Multivector.from_text(Z, 3, u.to_text()) == u
    assert Multivector.from_json(Z, 3, u.to_json()) == u


def test_ordered_basis_validation():
    b = OrderedBasis.lexicographic(2, 1)
    assert b.masks == (0b01, 0b10)
    with pytest.raises(ValueError):
        OrderedBasis(2, (0b01, 0b01), (1, 1))
    with pytest.raises(ValueError):
        OrderedBasis.from_multivectors([mono(2, [1]) + mono(2, [2])])
    assert OrderedBasis.from_json(2, b.to_json()) == b


# --- properties ------------------------------------------------------------

coeff = st.integers(-9, 9)


@st.composite
def multivectors(draw, m, degree=None):
    masks = [s for s in range(1 << m) if degree is None or s.bit_count() == degree]
    return Multivector(Z, m, {s: draw(coeff) for s in masks})


@st.composite
def rank_and_pair(draw):
    m = draw(st.integers(1, 4))
    return m, draw(multivectors(m)), draw(multivectors(m))


@settings(max_examples=150, deadline=None)
@given(rank_and_pair())
def test_wedge_matches_inversion_oracle(data):
    _, u, v = data
    assert wedge(u, v) == wedge_oracle(u, v)


@settings(max_examples=150, deadline=None)
@given(rank_and_pair(), st.lists(coeff, min_size=4, max_size=4))
def test_contract_matches_sum_oracle(data, g):
    m, u, _ = data
    assert contract(g[:m], u) == contract_oracle(g[:m], u)


@settings(max_examples=150, deadline=None)
@given(rank_and_pair(), st.lists(coeff, min_size=4, max_size=4))
def test_left_mul_is_wedge_with_vector(data, w):
    m, u, _ = data
    assert left_mul(w[:m], u) == wedge(Multivector.vector(Z, w[:m]), u)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.data())
def test_wedge_associative(m, data):
    u, v, w = (data.draw(multivectors(m)) for _ in range(3))
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_exterior_power_entries_are_minors(m, data):
    phi = Matrix(Z, [[data.draw(coeff) for _ in range(m)] for _ in range(m)])
    k = data.draw(st.integers(0, m))
    got = exterior_power_map(phi, k).matrix
    subsets = list(combinations(range(1, m + 1), k))
    for i, rows in enumerate(subsets):
        for j, cols in enumerate(subsets):
            assert got[i, j] == minor(phi, rows, cols)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_lambda_functorial(m, data):
    phi = Matrix(Z, [[data.draw(coeff) for _ in range(m)] for _ in range(m)])
    psi = Matrix(Z, [[data.draw(coeff) for _ in range(m)] for _ in range(m)])
    assert lambda_full_map(phi @ psi).matrix == lambda_full_map(phi).matrix @ lambda_full_map(psi).matrix
