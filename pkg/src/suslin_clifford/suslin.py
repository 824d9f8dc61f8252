"""Suslin matrices, generalized Suslin endomorphisms and their adapted bases."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .clifford import HyperbolicElement, phi_blocks
from .exterior import GradedMatrix, Multivector, OrderedBasis, contract, indices_of, left_mul, parity_masks
from .matrix import Matrix, block_matrix
from .ring import Ring, ring_make

__all__ = [
    "SuslinMatrix",
    "suslin_matrix",
    "suslin_bar",
    "suslin_of",
    "suslin_bar_of",
    "generalized_suslin",
    "generalized_suslin_bar",
    "build_suslin_bases",
    "represent",
    "basis_is_complete",
    "basis_to_text",
    "OrderedBasis",
]


@dataclass(frozen=True)
class SuslinMatrix:
    n: int
    flavor: str
    matrix: Matrix

    def to_json(self) -> dict:
        return {"n": self.n, "flavor": self.flavor, "entries": self.matrix.to_json()}


def _suslin_rec(ring: Ring, a: Sequence, b: Sequence) -> Matrix:
    n = len(a)
    if n == 1:
        return Matrix(ring, [[a[0]]])
    half = 1 << (n - 2)
    upper = _suslin_rec(ring, a[1:], b[1:])
    lower = _suslin_rec(ring, b[1:], a[1:]).transpose()
    return block_matrix(
        ring,
        [
            [Matrix.scalar(ring, half, a[0]), upper],
            [-lower, Matrix.scalar(ring, half, b[0])],
        ],
    )


def _check_rows(ring: Ring, a: Sequence, b: Sequence) -> tuple[list, list]:
    if len(a) != len(b):
        raise ValueError(f"row lengths differ: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("Suslin matrices need rows of length n >= 1")
    return [ring(x) for x in a], [ring(x) for x in b]


def suslin_matrix(a: Sequence, b: Sequence, ring: Ring | None = None) -> SuslinMatrix:
    """S_n(a, b) by the block recursion [[a1·Id, S(a', b')], [-S(b', a')^t, b1·Id]]."""
    ring = ring or _infer_ring(a, b)
    a, b = _check_rows(ring, a, b)
    return SuslinMatrix(len(a), "plain", _suslin_rec(ring, a, b))


def suslin_bar(a: Sequence, b: Sequence, ring: Ring | None = None) -> SuslinMatrix:
    """S̄_n(a, b) = [[b1·Id, -S(a', b')], [S(b', a')^t, a1·Id]]."""
    ring = ring or _infer_ring(a, b)
    a, b = _check_rows(ring, a, b)
    n = len(a)
    if n == 1:
        return SuslinMatrix(1, "bar", Matrix(ring, [[b[0]]]))
    half = 1 << (n - 2)
    upper = _suslin_rec(ring, a[1:], b[1:])
    lower = _suslin_rec(ring, b[1:], a[1:]).transpose()
    mat = block_matrix(
        ring,
        [
            [Matrix.scalar(ring, half, b[0]), -upper],
            [lower, Matrix.scalar(ring, half, a[0])],
        ],
    )
    return SuslinMatrix(n, "bar", mat)


def _infer_ring(a: Sequence, b: Sequence) -> Ring:
    for v in list(a) + list(b):
        if hasattr(v, "ring"):
            return v.ring
    return ring_make("int")


def suslin_of(x: HyperbolicElement) -> SuslinMatrix:
    """S_{n+1}(b, f, a, p): first row (b, f_1..f_n), second row (a, p_1..p_n)."""
    return suslin_matrix((x.b,) + x.f, (x.a,) + x.p, x.ring)


def suslin_bar_of(x: HyperbolicElement) -> SuslinMatrix:
    return suslin_bar((x.b,) + x.f, (x.a,) + x.p, x.ring)


def generalized_suslin(x: HyperbolicElement) -> GradedMatrix:
    """S(x) = Φ_{0,1}(x0) ∘ Φ_{1,0}(x) on Λ_1(R^{n+1})."""
    return phi_blocks(HyperbolicElement.x0(x.ring, x.n)).phi01 @ phi_blocks(x).phi10


def generalized_suslin_bar(x: HyperbolicElement) -> GradedMatrix:
    """S̄(x) = Φ_{0,1}(x) ∘ Φ_{1,0}(x0)."""
    return phi_blocks(x).phi01 @ phi_blocks(HyperbolicElement.x0(x.ring, x.n)).phi10


@lru_cache(maxsize=None)
def build_suslin_bases(n: int) -> tuple[OrderedBasis, OrderedBasis]:
    """Ordered bases (B1, B0) of Λ_1(R^{n+1}) and Λ_0(R^{n+1}).

    The recursion of S_{n+1} peels off the pair (b, a) first and then
    (f_1, p_1), (f_2, p_2), ..., so the distinguished rank-one summand is
    e_{n+1} at the top level and e_1, e_2, ... at the inner levels.  Bases are
    therefore grown by adjoining e_n, e_{n-1}, ..., e_1 and finally e_{n+1}.
    Each step wedges the new coordinate c on the right of the previous B0,
    followed by the previous B1; B0 is the image of B1 under the odd-to-even
    block of l_{e_c} + d_{e_c*}, i.e. of x0 for that level.
    """
    if n < 0:
        raise ValueError("rank must be non-negative")
    ring = ring_make("int")
    m = n + 1
    order = list(range(n, 0, -1)) + [m]
    first = order[0]
    b1: list[Multivector] = [Multivector.monomial(ring, m, [first])]
    b0 = [_x0_action(ring, m, first, beta) for beta in b1]
    for c in order[1:]:
        new = Multivector.monomial(ring, m, [c])
        b1 = [beta ^ new for beta in b0] + b1
        b0 = [_x0_action(ring, m, c, beta) for beta in b1]
    return (
        OrderedBasis.from_multivectors(b1, f"B1[n={n}]"),
        OrderedBasis.from_multivectors(b0, f"B0[n={n}]"),
    )


def _x0_action(ring: Ring, m: int, c: int, u: Multivector) -> Multivector:
    unit = [ring.one if i == c - 1 else ring.zero for i in range(m)]
    return left_mul(unit, u) + contract(unit, u)


def represent(gm: GradedMatrix, src: OrderedBasis, dst: OrderedBasis) -> Matrix:
    """Rewrite ``gm`` with respect to signed monomial bases ``src`` and ``dst``.

    Both must be signed rearrangements of the bases ``gm`` is written in, so
    the change of basis is a signed permutation and needs no division.
    """
    if not src.same_span(gm.source):
        raise ValueError(f"source basis {src.label or src.to_text()} does not match the matrix's source")
    if not dst.same_span(gm.target):
        raise ValueError(f"target basis {dst.label or dst.to_text()} does not match the matrix's target")
    M = gm.matrix
    cols = [(gm.source.index(m), s * gm.source.sign(m)) for m, s in zip(src.masks, src.signs)]
    rows = [(gm.target.index(m), t * gm.target.sign(m)) for m, t in zip(dst.masks, dst.signs)]
    out = []
    for i, ti in rows:
        row = M.row(i)
        out.append(tuple(row[j] if ti * sj > 0 else -row[j] for j, sj in cols))
    return Matrix._raw(M.ring, tuple(out), len(rows), len(cols))


def basis_is_complete(basis: OrderedBasis, parity: int) -> bool:
    """Signed monomials with distinct supports covering every mask of the parity class."""
    return len(basis) == len(parity_masks(basis.rank, parity)) and basis.covers_parity(parity)


def basis_to_text(basis: OrderedBasis) -> list[str]:
    out = []
    for m, s in zip(basis.masks, basis.signs):
        body = "∧".join(f"e{i}" for i in indices_of(m)) or "1"
        out.append(("−" if s < 0 else "") + body)
    return out
