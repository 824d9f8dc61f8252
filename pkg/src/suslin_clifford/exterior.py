"""Exterior algebra of a free module R^m.

Monomials are bitmasks: coordinate ``i`` (1-based) is bit ``i - 1`` and a
mask stands for the wedge of its coordinates in ascending order.  Every sign
is a crossing count, so no permutation is ever sorted explicitly.

The Z/2-grading is the popcount parity of the mask.  The default basis of
each parity class lists its masks by increasing integer value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .matrix import Matrix
from .ring import Ring, RingMismatchError, Scalar

__all__ = [
    "Multivector",
    "OrderedBasis",
    "GradedMatrix",
    "SplitInfo",
    "mask_of",
    "indices_of",
    "parity_masks",
    "wedge",
    "left_mul",
    "contract",
    "canonical_split",
    "exterior_power_map",
    "lambda_parity_map",
    "lambda_full_map",
    "clifford_operator_matrix",
]


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"coordinates are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def parity_masks(m: int, parity: int) -> tuple[int, ...]:
    """Masks of ``{1..m}`` with popcount of the given parity, increasing."""
    return tuple(s for s in range(1 << m) if s.bit_count() & 1 == parity)


@lru_cache(maxsize=1 << 16)
def _wedge_sign(mu: int, mv: int) -> int:
    # parity of #{(i, j): i in mu, j in mv, i > j}
    c = 0
    while mv:
        low = mv & -mv
        c += (mu & ~((low << 1) - 1)).bit_count()
        mv ^= low
    return -1 if c & 1 else 1


class Multivector:
    """Element of Λ(R^m) as a sparse ``{mask: Scalar}`` map without zero entries."""

    __slots__ = ("ring", "rank", "_t")

    def __init__(self, ring: Ring, rank: int, terms: Mapping[int, object] | None = None):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        top = 1 << rank
        t: dict[int, Scalar] = {}
        for mask, c in (terms or {}).items():
            if not 0 <= mask < top:
                raise ValueError(f"mask {mask:#b} outside Λ(R^{rank})")
            c = ring(c)
            if not c.is_zero():
                t[mask] = c
        self.ring = ring
        self.rank = rank
        self._t = t

    @classmethod
    def _raw(cls, ring: Ring, rank: int, t: dict[int, Scalar]) -> Multivector:
        mv = cls.__new__(cls)
        mv.ring, mv.rank, mv._t = ring, rank, t
        return mv

    @classmethod
    def zero(cls, ring: Ring, rank: int) -> Multivector:
        return cls._raw(ring, rank, {})

    @classmethod
    def scalar(cls, ring: Ring, rank: int, s=1) -> Multivector:
        return cls(ring, rank, {0: s})

    @classmethod
    def monomial(cls, ring: Ring, rank: int, indices: Sequence[int], coeff=1) -> Multivector:
        """``coeff * e_{i1} ∧ ... ∧ e_{ik}`` in the given (not necessarily sorted) order."""
        mask = 0
        sign = 1
        for i in indices:
            bit = mask_of([i])
            if mask & bit:
                return cls.zero(ring, rank)
            sign *= _wedge_sign(mask, bit)
            mask |= bit
        c = ring(coeff)
        return cls(ring, rank, {mask: c if sign > 0 else -c})

    @classmethod
    def vector(cls, ring: Ring, coords: Sequence) -> Multivector:
        return cls(ring, len(coords), {1 << i: c for i, c in enumerate(coords)})

    def terms(self) -> dict[int, Scalar]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def coefficient(self, mask: int) -> Scalar:
        return self._t.get(mask, self.ring.zero)

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def _check(self, other: Multivector) -> None:
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"multivector over {other.ring} combined with {self.ring}")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: Λ(R^{self.rank}) vs Λ(R^{other.rank})")

    def __add__(self, other: Multivector) -> Multivector:
        self._check(other)
        out = dict(self._t)
        for mask, c in other._t.items():
            s = out[mask] + c if mask in out else c
            if s.is_zero():
                out.pop(mask, None)
            else:
                out[mask] = s
        return Multivector._raw(self.ring, self.rank, out)

    def __neg__(self) -> Multivector:
        return Multivector._raw(self.ring, self.rank, {k: -c for k, c in self._t.items()})

    def __sub__(self, other: Multivector) -> Multivector:
        return self + (-other)

    def scale(self, s) -> Multivector:
        s = self.ring(s)
        out = {}
        for k, c in self._t.items():
            v = s * c
            if not v.is_zero():
                out[k] = v
        return Multivector._raw(self.ring, self.rank, out)

    def __mul__(self, s) -> Multivector:
        if isinstance(s, Multivector):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __xor__(self, other: Multivector) -> Multivector:
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.ring, self.rank, frozenset(self._t.items())))

    def grade(self, k: int) -> Multivector:
        return Multivector._raw(self.ring, self.rank, {m: c for m, c in self._t.items() if m.bit_count() == k})

    def parity_part(self, parity: int) -> Multivector:
        return Multivector._raw(
            self.ring, self.rank, {m: c for m, c in self._t.items() if m.bit_count() & 1 == parity}
        )

    def parity(self) -> int | None:
        """Common popcount parity of all terms; ``None`` for zero or mixed elements."""
        ps = {m.bit_count() & 1 for m in self._t}
        return ps.pop() if len(ps) == 1 else None

    def degree(self) -> int | None:
        ds = {m.bit_count() for m in self._t}
        return ds.pop() if len(ds) == 1 else None

    def signed_monomial(self) -> tuple[int, int] | None:
        """``(mask, ±1)`` when this is ± a single monomial, else ``None``."""
        if len(self._t) != 1:
            return None
        (mask, c), = self._t.items()
        if c == 1:
            return mask, 1
        if c == -1:
            return mask, -1
        return None

    def to_text(self) -> str:
        """Terms by decreasing degree, then increasing mask."""
        if not self._t:
            return "0"
        parts = []
        for mask, c in sorted(self.items(), key=lambda mc: (-mc[0].bit_count(), mc[0])):
            s = str(c)
            blade = "e{" + ",".join(map(str, indices_of(mask))) + "}"
            compound = any(op in s.lstrip("-") for op in (" + ", " - "))
            if compound:
                parts.append(f"+({s})·{blade}")
            elif s.startswith("-"):
                parts.append(f"−{s[1:]}·{blade}")
            else:
                parts.append(f"+{s}·{blade}")
        return " ".join(parts)

    @classmethod
    def from_text(cls, ring: Ring, rank: int, text: str) -> Multivector:
        """Inverse of :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return cls.zero(ring, rank)
        out = cls.zero(ring, rank)
        pos = 0
        term_re = re.compile(r"\s*([+\-−])\s*(\((?:[^()]|\([^()]*\))*\)|[^·*\s]+)\s*[·*]\s*e\{([0-9,\s]*)\}")
        while pos < len(text):
            m = term_re.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse multivector text at {text[pos:]!r}")
            sign, coeff, idx = m.groups()
            c = ring.parse(coeff)
            if sign in "-−":
                c = -c
            indices = [int(i) for i in idx.split(",") if i.strip()]
            out = out + cls.monomial(ring, rank, indices, c)
            pos = m.end()
        return out

    def to_json(self) -> list[dict]:
        return [{"mask": list(indices_of(mask)), "coeff": str(c)} for mask, c in self.items()]

    @classmethod
    def from_json(cls, ring: Ring, rank: int, data: Sequence[Mapping]) -> Multivector:
        out = cls.zero(ring, rank)
        for term in data:
            out = out + cls.monomial(ring, rank, term["mask"], ring(str(term["coeff"])))
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Multivector(R^{self.rank}: {self.to_text()})"


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    out: dict[int, Scalar] = {}
    for mu, cu in u._t.items():
        for mv, cv in v._t.items():
            if mu & mv:
                continue
            c = cu * cv
            if _wedge_sign(mu, mv) < 0:
                c = -c
            k = mu | mv
            out[k] = out[k] + c if k in out else c
    return Multivector._raw(u.ring, u.rank, {k: c for k, c in out.items() if not c.is_zero()})


def _coerce_vector(ring: Ring, w: Sequence, rank: int, what: str) -> list[Scalar]:
    if len(w) != rank:
        raise ValueError(f"{what} of length {len(w)} on Λ(R^{rank})")
    return [ring(x) for x in w]


def left_mul(w: Sequence, u: Multivector) -> Multivector:
    """The operator l_w: u ↦ (Σ w_i e_i) ∧ u."""
    ws = _coerce_vector(u.ring, w, u.rank, "vector")
    out: dict[int, Scalar] = {}
    for i, wi in enumerate(ws):
        if wi.is_zero():
            continue
        bit = 1 << i
        below = bit - 1
        for mask, c in u._t.items():
            if mask & bit:
                continue
            t = wi * c
            if (mask & below).bit_count() & 1:
                t = -t
            k = mask | bit
            out[k] = out[k] + t if k in out else t
    return Multivector._raw(u.ring, u.rank, {k: c for k, c in out.items() if not c.is_zero()})


def contract(f: Sequence, u: Multivector) -> Multivector:
    """The operator d_f: e_{i1}∧...∧e_{ir} ↦ Σ_k (-1)^{k+1} f(e_{ik}) · (e_{ik} omitted)."""
    fs = _coerce_vector(u.ring, f, u.rank, "functional")
    out: dict[int, Scalar] = {}
    for i, fi in enumerate(fs):
        if fi.is_zero():
            continue
        bit = 1 << i
        below = bit - 1
        for mask, c in u._t.items():
            if not mask & bit:
                continue
            t = fi * c
            if (mask & below).bit_count() & 1:
                t = -t
            k = mask ^ bit
            out[k] = out[k] + t if k in out else t
    return Multivector._raw(u.ring, u.rank, {k: c for k, c in out.items() if not c.is_zero()})


@dataclass(frozen=True)
class OrderedBasis:
    """Ordered basis of signed monomials ``signs[i] * e_{masks[i]}`` in Λ(R^rank)."""

    rank: int
    masks: tuple[int, ...]
    signs: tuple[int, ...]
    label: str = field(default="", compare=False)
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "masks", tuple(self.masks))
        object.__setattr__(self, "signs", tuple(self.signs))
        if len(self.masks) != len(self.signs):
            raise ValueError("masks and signs differ in length")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("basis signs must be +1 or -1")
        if len(set(self.masks)) != len(self.masks):
            raise ValueError("basis elements must have distinct supports")
        top = 1 << self.rank
        if any(not 0 <= m < top for m in self.masks):
            raise ValueError(f"basis mask outside Λ(R^{self.rank})")
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(self.masks)})

    @classmethod
    def lexicographic(cls, rank: int, parity: int) -> OrderedBasis:
        ms = parity_masks(rank, parity)
        return cls(rank, ms, (1,) * len(ms), f"lex{parity}")

    @classmethod
    def full(cls, rank: int) -> OrderedBasis:
        ms = tuple(range(1 << rank))
        return cls(rank, ms, (1,) * len(ms), "lex")

    @classmethod
    def degree(cls, rank: int, k: int) -> OrderedBasis:
        """Λ^k(R^rank) with subsets in lexicographic order of their index tuples."""
        ms = tuple(mask_of(c) for c in combinations(range(1, rank + 1), k))
        return cls(rank, ms, (1,) * len(ms), f"deg{k}")

    @classmethod
    def from_multivectors(cls, elements: Sequence[Multivector], label: str = "") -> OrderedBasis:
        if not elements:
            raise ValueError("cannot infer the rank of an empty basis")
        rank = elements[0].rank
        masks, signs = [], []
        for e in elements:
            if e.rank != rank:
                raise ValueError("basis elements of different ranks")
            sm = e.signed_monomial()
            if sm is None:
                raise ValueError(f"{e} is not a signed monomial")
            masks.append(sm[0])
            signs.append(sm[1])
        return cls(rank, tuple(masks), tuple(signs), label)

    def __len__(self) -> int:
        return len(self.masks)

    def index(self, mask: int) -> int:
        return self._index[mask]

    def sign(self, mask: int) -> int:
        return self.signs[self._index[mask]]

    @property
    def parity(self) -> int | None:
        ps = {m.bit_count() & 1 for m in self.masks}
        return ps.pop() if len(ps) == 1 else None

    def covers(self, masks: Iterable[int]) -> bool:
        return set(masks) == set(self.masks)

    def covers_parity(self, parity: int) -> bool:
        return self.covers(parity_masks(self.rank, parity))

    def same_span(self, other: OrderedBasis) -> bool:
        return self.rank == other.rank and set(self.masks) == set(other.masks)

    def multivectors(self, ring: Ring) -> list[Multivector]:
        return [Multivector(ring, self.rank, {m: s}) for m, s in zip(self.masks, self.signs)]

    def element_text(self, i: int) -> str:
        blade = "e{" + ",".join(map(str, indices_of(self.masks[i]))) + "}"
        return ("−" if self.signs[i] < 0 else "+") + blade

    def to_text(self) -> str:
        return "[" + ", ".join(self.element_text(i) for i in range(len(self))) + "]"

    def to_json(self) -> list[dict]:
        return [{"mask": list(indices_of(m)), "sign": s} for m, s in zip(self.masks, self.signs)]

    @classmethod
    def from_json(cls, rank: int, data: Sequence[Mapping], label: str = "") -> OrderedBasis:
        return cls(rank, tuple(mask_of(d["mask"]) for d in data), tuple(int(d["sign"]) for d in data), label)


_PARITY_NAMES = {0: "even", 1: "odd", None: "mixed"}


@dataclass(frozen=True)
class GradedMatrix:
    """A matrix together with the ordered bases of its source (columns) and target (rows)."""

    matrix: Matrix
    source: OrderedBasis
    target: OrderedBasis

    def __post_init__(self) -> None:
        if self.matrix.shape != (len(self.target), len(self.source)):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match bases "
                f"({len(self.target)} x {len(self.source)})"
            )

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def parity_tag(self) -> str:
        return f"{_PARITY_NAMES[self.source.parity]}->{_PARITY_NAMES[self.target.parity]}"

    def _same_bases(self, other: GradedMatrix) -> None:
        if other.source != self.source or other.target != self.target:
            raise ValueError("graded matrices are written in different bases")

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        if other.target != self.source:
            raise ValueError(f"cannot compose: {other.target.label or 'basis'} is not {self.source.label or 'basis'}")
        return GradedMatrix(self.matrix @ other.matrix, other.source, self.target)

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        self._same_bases(other)
        return GradedMatrix(self.matrix + other.matrix, self.source, self.target)

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        self._same_bases(other)
        return GradedMatrix(self.matrix - other.matrix, self.source, self.target)

    def __neg__(self) -> GradedMatrix:
        return GradedMatrix(-self.matrix, self.source, self.target)

    def scale(self, s) -> GradedMatrix:
        return GradedMatrix(self.matrix.scale(s), self.source, self.target)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.matrix == other.matrix and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash((self.matrix, self.source, self.target))

    def apply(self, u: Multivector) -> Multivector:
        """Apply to a multivector supported on the source basis."""
        coords = []
        for m, s in zip(self.source.masks, self.source.signs):
            c = u.coefficient(m)
            coords.append(c if s > 0 else -c)
        extra = set(u.terms()) - set(self.source.masks)
        if extra:
            raise ValueError("multivector has terms outside the source basis")
        out = self.matrix.apply(coords)
        return Multivector(self.ring, self.target.rank, {m: (c if s > 0 else -c) for m, s, c in zip(self.target.masks, self.target.signs, out)})

    def to_json(self) -> dict:
        return {
            "parity": self.parity_tag,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "entries": self.matrix.to_json(),
        }


@dataclass(frozen=True)
class SplitInfo:
    """Λ_parity(P⊕R) ≅ Λ_0(P) ⊕ Λ_1(P) along the last coordinate of R^rank.

    ``p_part`` holds masks without the last coordinate (forms on P),
    ``tensor_part`` masks containing it, read as ω⊗e_rank ↔ ω∧e_rank.  The
    extraction sign of every tensor-part monomial is +1 because e_rank is the
    largest coordinate and sits rightmost.
    """

    rank: int
    parity: int
    p_part: tuple[int, ...]
    tensor_part: tuple[int, ...]
    signs: Mapping[int, int]

    def omega(self, mask: int) -> int:
        """Form on P underlying a tensor-part mask."""
        return mask & ~(1 << (self.rank - 1))

    @property
    def from_even(self) -> tuple[int, ...]:
        """Masks coming from Λ_0(P), ordered by the underlying form."""
        return self.tensor_part if self.parity == 1 else self.p_part

    @property
    def from_odd(self) -> tuple[int, ...]:
        return self.p_part if self.parity == 1 else self.tensor_part

    def basis(self) -> OrderedBasis:
        """Λ_0(P)-block first, then the Λ_1(P)-block."""
        ms = self.from_even + self.from_odd
        return OrderedBasis(self.rank, ms, tuple(self.signs[m] for m in ms), f"split{self.parity}")


def canonical_split(m: int, parity: int) -> SplitInfo:
    if m < 1:
        raise ValueError("the canonical split needs a rank-1 summand R, so m >= 1")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    top = 1 << (m - 1)
    # ω ranges over Λ(R^{m-1}) in increasing mask order, which keeps both blocks lexicographic in ω
    p_part = tuple(w for w in range(top) if w.bit_count() & 1 == parity)
    tensor_part = tuple(w | top for w in range(top) if w.bit_count() & 1 != parity)
    signs = {mask: _wedge_sign(mask & ~top, top) if mask & top else 1 for mask in p_part + tensor_part}
    return SplitInfo(m, parity, p_part, tensor_part, signs)


def _check_linear_map(phi: Matrix) -> int:
    if not isinstance(phi, Matrix) or not phi.is_square():
        raise ValueError("a linear map on R^m must be a square matrix")
    return phi.rows


def _lambda_columns(phi: Matrix, masks: Sequence[int]) -> dict[int, Multivector]:
    m = phi.rows
    images = [Multivector.vector(phi.ring, phi.column(j)) for j in range(m)]
    cache: dict[int, Multivector] = {0: Multivector.scalar(phi.ring, m)}

    def image(mask: int) -> Multivector:
        if mask not in cache:
            top = mask.bit_length() - 1
            # e_S = e_{S minus top} ∧ e_top
            cache[mask] = wedge(image(mask ^ (1 << top)), images[top])
        return cache[mask]

    return {s: image(s) for s in masks}


def _lambda_on(phi: Matrix, src: OrderedBasis, dst: OrderedBasis) -> Matrix:
    cols = _lambda_columns(phi, src.masks)
    z = phi.ring.zero
    entries = [[z] * len(src) for _ in range(len(dst))]
    for j, s in enumerate(src.masks):
        for t, c in cols[s].terms().items():
            i = dst._index.get(t)
            if i is None:
                raise ValueError("Λ(φ) leaves the target span")
            entries[i][j] = c
    return Matrix._raw(phi.ring, tuple(tuple(r) for r in entries), len(dst), len(src))


def exterior_power_map(phi: Matrix, k: int) -> GradedMatrix:
    """Λ^k(φ): entry (T, S) is the minor of φ on rows T and columns S."""
    m = _check_linear_map(phi)
    if not 0 <= k <= m:
        raise ValueError(f"degree {k} out of range for Λ(R^{m})")
    basis = OrderedBasis.degree(m, k)
    return GradedMatrix(_lambda_on(phi, basis, basis), basis, basis)


def lambda_parity_map(phi: Matrix, parity: int) -> GradedMatrix:
    """Λ_0(φ) or Λ_1(φ) on the lexicographic parity basis."""
    m = _check_linear_map(phi)
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    basis = OrderedBasis.lexicographic(m, parity)
    return GradedMatrix(_lambda_on(phi, basis, basis), basis, basis)


def lambda_full_map(phi: Matrix) -> GradedMatrix:
    """Λ(φ) on all of Λ(R^m) in increasing mask order."""
    m = _check_linear_map(phi)
    basis = OrderedBasis.full(m)
    return GradedMatrix(_lambda_on(phi, basis, basis), basis, basis)


def clifford_operator_matrix(ring: Ring, w: Sequence, g: Sequence) -> Matrix:
    """Matrix of l_w + d_g on Λ(R^m) in increasing mask order (m = len(w))."""
    m = len(w)
    if len(g) != m:
        raise ValueError("vector and functional have different lengths")
    size = 1 << m
    z = ring.zero
    entries = [[z] * size for _ in range(size)]
    for s in range(size):
        e = Multivector._raw(ring, m, {s: ring.one})
        img = left_mul(w, e) + contract(g, e)
        for t, c in img.terms().items():
            entries[t][s] = c
    return Matrix._raw(ring, tuple(tuple(r) for r in entries), size, size)
