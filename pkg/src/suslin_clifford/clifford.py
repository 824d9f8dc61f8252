"""Hyperbolic space H(P⊕R) and its Clifford action on Λ(P⊕R).

For ``P = R^n`` the module ``P⊕R`` is ``R^{n+1}`` with the summand R as the
last coordinate, so ``x = (p, a, f, b)`` acts on Λ(R^{n+1}) by
``l_{(p, a)} + d_{(f, b)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .exterior import (
    GradedMatrix,
    Multivector,
    OrderedBasis,
    canonical_split,
    clifford_operator_matrix,
    contract,
    lambda_full_map,
    left_mul,
    parity_masks,
)
from .matrix import Matrix, block_matrix
from .ring import Ring, RingMismatchError, Scalar

__all__ = [
    "SignConventionError",
    "HyperbolicElement",
    "IdempotentModule",
    "CliffordAction",
    "hyperbolic_q",
    "clifford_endo",
    "clifford_matrix",
    "phi_blocks",
    "phi_block_formula",
    "clifford_endo_projective",
    "projector_matrix",
]


class SignConventionError(RuntimeError):
    """An odd element produced a nonzero grading-preserving block."""


@dataclass(frozen=True)
class HyperbolicElement:
    """x = (p, a, f, b) with p a column vector and f a row functional of length n."""

    ring: Ring
    p: tuple[Scalar, ...]
    a: Scalar
    f: tuple[Scalar, ...]
    b: Scalar

    def __post_init__(self) -> None:
        r = self.ring
        object.__setattr__(self, "p", tuple(r(x) for x in self.p))
        object.__setattr__(self, "f", tuple(r(x) for x in self.f))
        object.__setattr__(self, "a", r(self.a))
        object.__setattr__(self, "b", r(self.b))
        if len(self.p) != len(self.f):
            raise ValueError(f"p has length {len(self.p)} but f has length {len(self.f)}")

    @classmethod
    def make(cls, ring: Ring, p: Sequence, a, f: Sequence, b) -> HyperbolicElement:
        return cls(ring, tuple(p), a, tuple(f), b)

    @classmethod
    def x0(cls, ring: Ring, n: int) -> HyperbolicElement:
        """The element (0, 1, 0, 1)."""
        z = (ring.zero,) * n
        return cls(ring, z, ring.one, z, ring.one)

    @classmethod
    def zero(cls, ring: Ring, n: int) -> HyperbolicElement:
        z = (ring.zero,) * n
        return cls(ring, z, ring.zero, z, ring.zero)

    @classmethod
    def from_vectors(cls, ring: Ring, vector: Sequence, functional: Sequence) -> HyperbolicElement:
        """Inverse of (:attr:`vector`, :attr:`functional`): last coordinates are a and b."""
        if not vector or len(vector) != len(functional):
            raise ValueError("vector and functional must have the same positive length")
        return cls(ring, tuple(vector[:-1]), vector[-1], tuple(functional[:-1]), functional[-1])

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def vector(self) -> tuple[Scalar, ...]:
        """(p, a) in R^{n+1}."""
        return self.p + (self.a,)

    @property
    def functional(self) -> tuple[Scalar, ...]:
        """(f, b) on R^{n+1}."""
        return self.f + (self.b,)

    def q(self) -> Scalar:
        return hyperbolic_q(self)

    def _check(self, other: HyperbolicElement) -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"element over {other.ring} combined with {self.ring}")
        if other.n != self.n:
            raise ValueError(f"rank mismatch {self.n} vs {other.n}")

    def __add__(self, other: HyperbolicElement) -> HyperbolicElement:
        self._check(other)
        return HyperbolicElement(
            self.ring,
            tuple(x + y for x, y in zip(self.p, other.p)),
            self.a + other.a,
            tuple(x + y for x, y in zip(self.f, other.f)),
            self.b + other.b,
        )

    def __neg__(self) -> HyperbolicElement:
        return self.scale(-1)

    def __sub__(self, other: HyperbolicElement) -> HyperbolicElement:
        return self + (-other)

    def scale(self, r) -> HyperbolicElement:
        r = self.ring(r)
        return HyperbolicElement(
            self.ring, tuple(r * x for x in self.p), r * self.a, tuple(r * x for x in self.f), r * self.b
        )

    def vector_part(self) -> HyperbolicElement:
        """(p, a, 0, 0)."""
        z = (self.ring.zero,) * self.n
        return HyperbolicElement(self.ring, self.p, self.a, z, self.ring.zero)

    def functional_part(self) -> HyperbolicElement:
        """(0, 0, f, b)."""
        z = (self.ring.zero,) * self.n
        return HyperbolicElement(self.ring, z, self.ring.zero, self.f, self.b)

    def transform(self, phi: Matrix, phi_inv: Matrix) -> HyperbolicElement:
        """(φ^{-1}(p, a), (f, b)∘φ)."""
        if phi.shape != (self.n + 1, self.n + 1) or phi_inv.shape != phi.shape:
            raise ValueError(f"φ must act on R^{self.n + 1}")
        return HyperbolicElement.from_vectors(self.ring, phi_inv.apply(self.vector), phi.apply_left(self.functional))

    def to_json(self) -> dict:
        return {"p": [str(x) for x in self.p], "a": str(self.a), "f": [str(x) for x in self.f], "b": str(self.b)}

    @classmethod
    def from_json(cls, ring: Ring, data: Mapping) -> HyperbolicElement:
        return cls(
            ring,
            tuple(ring(str(x)) for x in data["p"]),
            ring(str(data["a"])),
            tuple(ring(str(x)) for x in data["f"]),
            ring(str(data["b"])),
        )

    def __str__(self) -> str:
        p = ", ".join(map(str, self.p))
        f = ", ".join(map(str, self.f))
        return f"(p=({p}), a={self.a}, f=({f}), b={self.b})"


def hyperbolic_q(x: HyperbolicElement) -> Scalar:
    """q(p, a, f, b) = f(p) + ab."""
    total = x.a * x.b
    for fi, pi in zip(x.f, x.p):
        total = total + fi * pi
    return total


def clifford_endo(x: HyperbolicElement) -> Callable[[Multivector], Multivector]:
    """u ↦ l_{(p, a)}(u) + d_{(f, b)}(u) on Λ(R^{n+1})."""
    vec, fun = x.vector, x.functional

    def act(u: Multivector) -> Multivector:
        if u.ring != x.ring:
            raise RingMismatchError(f"multivector over {u.ring} acted on by an element over {x.ring}")
        return left_mul(vec, u) + contract(fun, u)

    return act


def clifford_matrix(x: HyperbolicElement) -> GradedMatrix:
    """Full matrix of the action on Λ(R^{n+1}) in increasing mask order."""
    basis = OrderedBasis.full(x.n + 1)
    return GradedMatrix(clifford_operator_matrix(x.ring, x.vector, x.functional), basis, basis)


@dataclass(frozen=True)
class CliffordAction:
    phi10: GradedMatrix
    phi01: GradedMatrix

    def full(self) -> GradedMatrix:
        """Reassemble the off-diagonal endomorphism on the even-then-odd basis."""
        even, odd = self.phi10.target, self.phi10.source
        ring = self.phi10.ring
        mat = block_matrix(
            ring,
            [
                [Matrix.zeros(ring, len(even), len(even)), self.phi10.matrix],
                [self.phi01.matrix, Matrix.zeros(ring, len(odd), len(odd))],
            ],
        )
        basis = OrderedBasis(even.rank, even.masks + odd.masks, even.signs + odd.signs, "even+odd")
        return GradedMatrix(mat, basis, basis)


def _parity_blocks(full: Matrix, m: int) -> dict[tuple[int, int], Matrix]:
    idx = {i: parity_masks(m, i) for i in (0, 1)}
    # (src, dst) -> block mapping Λ_src into Λ_dst
    return {(s, d): full.submatrix(idx[d], idx[s]) for s in (0, 1) for d in (0, 1)}


def phi_blocks(x: HyperbolicElement) -> CliffordAction:
    m = x.n + 1
    full = clifford_operator_matrix(x.ring, x.vector, x.functional)
    blocks = _parity_blocks(full, m)
    if not (blocks[0, 0].is_zero() and blocks[1, 1].is_zero()):
        raise SignConventionError(f"Φ({x}) has a nonzero grading-preserving block")
    even, odd = OrderedBasis.lexicographic(m, 0), OrderedBasis.lexicographic(m, 1)
    return CliffordAction(GradedMatrix(blocks[1, 0], odd, even), GradedMatrix(blocks[0, 1], even, odd))


def phi_block_formula(x: HyperbolicElement, which: str | int) -> GradedMatrix:
    """Φ_{1,0}(x) or Φ_{0,1}(x) assembled blockwise over Λ_0(P) ⊕ Λ_1(P).

    Both source and target are the canonical split bases of Λ(R^{n+1}), so
    the result is comparable with :func:`phi_blocks` after a change of basis.
    """
    which = str(which)
    if which not in ("10", "01"):
        raise ValueError("which must be '10' or '01'")
    ring, n = x.ring, x.n
    inner = _parity_blocks(clifford_operator_matrix(ring, x.p, x.f), n)
    # l_p + d_f restricted to Λ_1(P) -> Λ_0(P) and Λ_0(P) -> Λ_1(P)
    odd_to_even, even_to_odd = inner[1, 0], inner[0, 1]
    d0, d1 = len(parity_masks(n, 0)), len(parity_masks(n, 1))
    if which == "10":
        diag0, diag1 = Matrix.scalar(ring, d0, x.b), Matrix.scalar(ring, d1, -x.a)
        src, dst = canonical_split(n + 1, 1), canonical_split(n + 1, 0)
    else:
        diag0, diag1 = Matrix.scalar(ring, d0, x.a), Matrix.scalar(ring, d1, -x.b)
        src, dst = canonical_split(n + 1, 0), canonical_split(n + 1, 1)
    mat = block_matrix(ring, [[diag0, odd_to_even], [even_to_odd, diag1]])
    return GradedMatrix(mat, src.basis(), dst.basis())


@dataclass(frozen=True)
class IdempotentModule:
    """Projective module P = image of an idempotent e on R^m."""

    e: Matrix

    def __post_init__(self) -> None:
        if not self.e.is_square():
            raise ValueError("idempotent must be square")
        if self.e @ self.e != self.e:
            raise ValueError("matrix is not idempotent")

    @property
    def ring(self) -> Ring:
        return self.e.ring

    @property
    def m(self) -> int:
        return self.e.rows

    def contains(self, p: Sequence) -> bool:
        return self.e.apply(p) == tuple(self.ring(v) for v in p)

    def dual_contains(self, f: Sequence) -> bool:
        return self.e.apply_left(f) == tuple(self.ring(v) for v in f)

    def extended(self) -> Matrix:
        """e ⊕ 1 on R^{m+1}."""
        ring = self.ring
        return block_matrix(
            ring,
            [[self.e, Matrix.zeros(ring, self.m, 1)], [Matrix.zeros(ring, 1, self.m), Matrix.identity(ring, 1)]],
        )


def projector_matrix(P: IdempotentModule) -> GradedMatrix:
    """Λ(e⊕1), the idempotent cutting Λ(P⊕R) out of Λ(R^{m+1})."""
    return lambda_full_map(P.extended())


def clifford_endo_projective(P: IdempotentModule, x: HyperbolicElement) -> GradedMatrix:
    """Action of x ∈ H(P⊕R) on the ambient Λ(R^{m+1}); it commutes with :func:`projector_matrix`."""
    if x.ring != P.ring:
        raise RingMismatchError(f"element over {x.ring} for a module over {P.ring}")
    if x.n != P.m:
        raise ValueError(f"element of rank {x.n} for ambient rank {P.m}")
    if not P.contains(x.p):
        raise ValueError("p is not in the image of e")
    if not P.dual_contains(x.f):
        raise ValueError("f does not factor through e")
    return clifford_matrix(x)
