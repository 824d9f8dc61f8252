"""Verification harness for the Clifford/Suslin identities.

Every check compares two exactly computed sides.  In symbolic mode the inputs
are independent indeterminates over the integers, so a pass at rank ``n``
holds over every commutative ring by specialization.  Randomized mode draws
small integers from a seeded generator and maps them into the requested ring.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .clifford import (
    HyperbolicElement,
    IdempotentModule,
    SignConventionError,
    clifford_endo_projective,
    clifford_matrix,
    hyperbolic_q,
    phi_block_formula,
    phi_blocks,
    projector_matrix,
)
from .exterior import (
    Multivector,
    OrderedBasis,
    contract,
    lambda_parity_map,
    parity_masks,
    wedge,
)
from .matrix import Matrix
from .ring import Ring, RingDescriptor, Scalar, ring_make
from .suslin import (
    basis_is_complete,
    build_suslin_bases,
    generalized_suslin,
    generalized_suslin_bar,
    represent,
    suslin_bar_of,
    suslin_of,
)

__all__ = [
    "UsageError",
    "SLSample",
    "VerificationReport",
    "THEOREMS",
    "SAMPLE_BOUND",
    "DEFAULT_SEED",
    "det_division_free",
    "det_cofactor",
    "transvection",
    "sl_from_factors",
    "random_sl",
    "random_idempotent",
    "sample_element",
    "symbolic_element",
    "symbolic_names",
    "q_category",
    "resolve_theorems",
    "check_key_lemma",
    "check_key_corollary",
    "run_suite",
]

SAMPLE_BOUND = 9
DEFAULT_SEED = 20240229


class UsageError(ValueError):
    """Bad theorem id or a rank outside a theorem's stated range."""


def det_division_free(M: Matrix) -> Scalar:
    """Determinant by Berkowitz's algorithm; only ring additions and products."""
    if not M.is_square():
        raise ValueError(f"determinant of a non-square {M.shape} matrix")
    n = M.rows
    ring = M.ring
    if n == 0:
        return ring.one
    rows = M.tolist()
    one, zero = ring.one, ring.zero
    # coefficients of det(tI - A) for the trailing principal submatrices, leading 1 first
    poly = [one, -rows[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k - 1
        a = rows[k][k]
        r = rows[k][k + 1 :]
        col = [rows[i][k] for i in range(k + 1, n)]
        sub = [row[k + 1 :] for row in rows[k + 1 :]]
        toeplitz = [one, -a]
        for j in range(size):
            acc = zero
            for x, y in zip(r, col):
                acc = acc + x * y
            toeplitz.append(-acc)
            if j + 1 < size:
                nxt = []
                for srow in sub:
                    s = zero
                    for x, y in zip(srow, col):
                        s = s + x * y
                    nxt.append(s)
                col = nxt
        new = []
        for i in range(size + 2):
            acc = zero
            for j in range(max(0, i - len(toeplitz) + 1), min(i, len(poly) - 1) + 1):
                acc = acc + toeplitz[i - j] * poly[j]
            new.append(acc)
        poly = new
    det = poly[n]
    return det if n % 2 == 0 else -det


def det_cofactor(M: Matrix) -> Scalar:
    """Laplace expansion along the first row; exponential, meant as an oracle for small sizes."""
    if not M.is_square():
        raise ValueError(f"determinant of a non-square {M.shape} matrix")
    rows = M.tolist()

    def expand(rs: list[list[Scalar]]) -> Scalar:
        if not rs:
            return M.ring.one
        if len(rs) == 1:
            return rs[0][0]
        total = M.ring.zero
        for j, x in enumerate(rs[0]):
            if x.is_zero():
                continue
            minor = [row[:j] + row[j + 1 :] for row in rs[1:]]
            term = x * expand(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return expand(rows)


@dataclass(frozen=True)
class SLSample:
    """Product of elementary transvections E_{ij}(λ) (1-based, i ≠ j) with its exact inverse."""

    dim: int
    factors: tuple[tuple[int, int, Scalar], ...]
    matrix: Matrix
    inverse: Matrix

    def to_json(self) -> dict:
        return {"dim": self.dim, "factors": [[i, j, str(l)] for i, j, l in self.factors]}

    @classmethod
    def from_json(cls, ring: Ring, data: dict) -> SLSample:
        return sl_from_factors(ring, data["dim"], [(i, j, ring(str(l))) for i, j, l in data["factors"]])


def transvection(ring: Ring, dim: int, i: int, j: int, lam) -> Matrix:
    """Identity plus λ in row i, column j."""
    if i == j or not (1 <= i <= dim and 1 <= j <= dim):
        raise ValueError(f"invalid transvection indices ({i}, {j}) in dimension {dim}")
    lam = ring(lam)
    return Matrix.from_function(
        ring, dim, dim, lambda r, c: lam if (r, c) == (i - 1, j - 1) else (ring.one if r == c else ring.zero)
    )


def sl_from_factors(ring: Ring, dim: int, factors: Sequence[tuple[int, int, object]]) -> SLSample:
    mat = Matrix.identity(ring, dim)
    inv = Matrix.identity(ring, dim)
    fs = []
    for i, j, lam in factors:
        lam = ring(lam)
        fs.append((i, j, lam))
        mat = mat @ transvection(ring, dim, i, j, lam)
        inv = transvection(ring, dim, i, j, -lam) @ inv
    return SLSample(dim, tuple(fs), mat, inv)


def _rng(seed: Union[int, str, random.Random, None]) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(DEFAULT_SEED if seed is None else seed)


def _small(rng: random.Random, nonzero: bool = False) -> int:
    while True:
        v = rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)
        if v or not nonzero:
            return v


def random_sl(dim: int, num_factors: int, seed=None, ring: Ring | None = None) -> SLSample:
    if dim < 2:
        raise ValueError("SL samples need dimension >= 2")
    ring = ring or ring_make("int")
    rng = _rng(seed)
    factors = []
    for _ in range(num_factors):
        i, j = rng.sample(range(1, dim + 1), 2)
        factors.append((i, j, ring.from_integer(_small(rng, nonzero=True))))
    return sl_from_factors(ring, dim, factors)


def random_idempotent(ring: Ring, m: int, seed=None) -> Matrix:
    """U·D·U^{-1} with U a random SL sample and D a random 0/1 diagonal."""
    rng = _rng(seed)
    diag = Matrix.diagonal(ring, [rng.randint(0, 1) for _ in range(m)])
    if m < 2:
        return diag
    u = random_sl(m, 2 * m, rng, ring)
    return u.matrix @ diag @ u.inverse


def symbolic_names(n: int, tag: int = 0) -> list[str]:
    p, a, f, b = ("p", "a", "f", "b") if tag == 0 else ("P", "A", "F", "B")
    return [f"{p}{i}" for i in range(1, n + 1)] + [a] + [f"{f}{i}" for i in range(1, n + 1)] + [b]


def symbolic_element(ring: Ring, n: int, tag: int = 0) -> HyperbolicElement:
    """x with every slot an indeterminate of ``ring`` (names from :func:`symbolic_names`)."""
    names = symbolic_names(n, tag)
    v = [ring.variable(s) for s in names]
    return HyperbolicElement(ring, tuple(v[:n]), v[n], tuple(v[n + 1 : 2 * n + 1]), v[2 * n + 1])


Q_KINDS = ("generic", "q-zero", "q-nonunit", "q-unit")


def sample_element(rng: random.Random, ring: Ring, n: int, kind: str = "generic") -> HyperbolicElement:
    """Random x; ``kind`` forces q(x) = 0, a non-unit, or a unit.

    Over Z/m a forced non-unit is any q sharing a factor with m (zero for a
    prime modulus); over the integers it is nonzero with |q| > 1.
    """
    p = [_small(rng) for _ in range(n)]
    f = [_small(rng) for _ in range(n)]
    a, b = _small(rng), _small(rng)
    if kind != "generic":
        if kind == "q-zero":
            target = 0
        elif kind == "q-unit":
            target = rng.choice((1, -1))
        elif kind == "q-nonunit":
            target = _nonunit_target(rng, ring)
        else:
            raise ValueError(f"unknown sample kind {kind!r}")
        if n == 0:
            # q = ab
            if target == 0:
                a = 0
            else:
                a, b = target, 1
        else:
            p[0] = 1
            f[0] = target - a * b - sum(fi * pi for fi, pi in zip(f[1:], p[1:]))
    return HyperbolicElement(ring, tuple(map(ring, p)), ring(a), tuple(map(ring, f)), ring(b))


def _nonunit_target(rng: random.Random, ring: Ring) -> int:
    if ring.kind == "mod":
        m = ring.modulus
        choices = [v for v in range(m) if not ring(v).is_unit()]
        return rng.choice(choices)
    v = rng.randint(2, SAMPLE_BOUND)
    return v if rng.random() < 0.5 else -v


def q_category(q: Scalar) -> str:
    if q.is_zero():
        return "q-zero"
    return "q-unit" if q.is_unit() else "q-nonunit"


@dataclass
class VerificationReport:
    theorem: str
    ring: str
    n: int
    mode: str
    status: str
    trials: int | None = None
    seed: int | None = None
    trial: int | None = None
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)
    claim: str | None = None
    experimental: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "theorem": self.theorem,
            "ring": self.ring,
            "n": self.n,
            "mode": self.mode,
            "status": self.status,
        }
        if self.mode == "randomized":
            out.update(trials=self.trials, seed=self.seed, trial=self.trial)
        if self.details:
            out["details"] = self.details
        if self.claim:
            out["claim"] = self.claim
        if self.experimental:
            out["experimental"] = True
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class _Outcome:
    ok: bool
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)


def _compare(label: str, lhs: Matrix, rhs: Matrix, context: dict) -> _Outcome:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return _Outcome(True)
    blob = dict(context)
    blob.update(check=label, first_difference=list(diff), lhs=lhs.to_json(), rhs=rhs.to_json())
    return _Outcome(False, blob)


def _all(outcomes: Iterable[_Outcome]) -> _Outcome:
    details: dict = {}
    for o in outcomes:
        details.update(o.details)
        if not o.ok:
            o.details = {**details, **o.details}
            return o
    return _Outcome(True, details=details)


def check_key_lemma(x: HyperbolicElement, phi: SLSample) -> VerificationReport:
    """Φ_{1,0}(φ^{-1}(p, a), (f, b)∘φ) = Λ_0(φ^{-1}) Φ_{1,0}(x) Λ_1(φ)."""
    start = time.perf_counter()
    out = _key_lemma(x, phi)
    return _single_report("key-lemma", x, out, start)


def check_key_corollary(x: HyperbolicElement, phi: SLSample) -> VerificationReport:
    """S_{n+1} of the transformed data equals B_φ^{-1} S_{n+1}(b, f, a, p) A_φ."""
    start = time.perf_counter()
    out = _key_corollary(x, phi)
    return _single_report("key-corollary", x, out, start)


def _single_report(theorem: str, x: HyperbolicElement, out: _Outcome, start: float) -> VerificationReport:
    return VerificationReport(
        theorem=theorem,
        ring=str(x.ring.descriptor),
        n=x.n,
        mode="single",
        status="pass" if out.ok else "fail",
        counterexample=out.counterexample,
        details=out.details,
        elapsed=time.perf_counter() - start,
    )


def _check_sl(x: HyperbolicElement, phi: SLSample) -> None:
    if phi.dim != x.n + 1:
        raise ValueError(f"φ acts on R^{phi.dim} but x lives in H(R^{x.n} ⊕ R)")
    if phi.matrix.ring != x.ring:
        raise ValueError("φ and x are over different rings")


def _context(x: HyperbolicElement, phi: SLSample | None = None, **extra) -> dict:
    ctx = {"x": x.to_json()}
    if phi is not None:
        ctx["phi"] = phi.to_json()
    ctx.update(extra)
    return ctx


def _key_lemma(x: HyperbolicElement, phi: SLSample) -> _Outcome:
    _check_sl(x, phi)
    y = x.transform(phi.matrix, phi.inverse)
    lhs = phi_blocks(y).phi10
    rhs = lambda_parity_map(phi.inverse, 0) @ phi_blocks(x).phi10 @ lambda_parity_map(phi.matrix, 1)
    return _compare("key-lemma", lhs.matrix, rhs.matrix, _context(x, phi))


def _key_corollary(x: HyperbolicElement, phi: SLSample) -> _Outcome:
    _check_sl(x, phi)
    b1, b0 = build_suslin_bases(x.n)
    y = x.transform(phi.matrix, phi.inverse)
    a_phi = represent(lambda_parity_map(phi.matrix, 1), b1, b1)
    b_phi = represent(lambda_parity_map(phi.matrix, 0), b0, b0)
    b_phi_inv = represent(lambda_parity_map(phi.inverse, 0), b0, b0)
    ctx = _context(x, phi)
    ident = Matrix.identity(x.ring, len(b0))
    return _all(
        [
            _compare("B_phi^-1 is inverse to B_phi", b_phi @ b_phi_inv, ident, ctx),
            _compare("key-corollary", suslin_of(y).matrix, b_phi_inv @ suslin_of(x).matrix @ a_phi, ctx),
        ]
    )


# --- theorem bodies -------------------------------------------------------


class _Source:
    """Supplies inputs to a theorem body: indeterminates or seeded random integers."""

    symbolic: bool

    def __init__(self, ring: Ring, rng: random.Random | None, trial: int = 0):
        self.ring = ring
        self.rng = rng
        self.symbolic = rng is None
        self.trial = trial
        self.details: dict = {}

    def scalar(self, name: str) -> Scalar:
        if self.symbolic:
            return self.ring.variable(name)
        return self.ring(_small(self.rng))

    def vector(self, name: str, m: int) -> list[Scalar]:
        return [self.scalar(f"{name}{i}") for i in range(1, m + 1)]

    def matrix(self, name: str, m: int) -> Matrix:
        return Matrix(self.ring, [[self.scalar(f"{name}{i}_{j}") for j in range(1, m + 1)] for i in range(1, m + 1)])

    def element(self, n: int, tag: int = 0) -> HyperbolicElement:
        if self.symbolic:
            return symbolic_element(self.ring, n, tag)
        return sample_element(self.rng, self.ring, n)

    def stratified_element(self, n: int) -> HyperbolicElement:
        if self.symbolic:
            return symbolic_element(self.ring, n)
        kind = Q_KINDS[self.trial % len(Q_KINDS)]
        x = sample_element(self.rng, self.ring, n, kind)
        self.details["q_class"] = q_category(x.q())
        return x

    def sl_samples(self, dim: int) -> list[SLSample]:
        if dim < 2:
            return [sl_from_factors(self.ring, dim, [])]
        if self.symbolic:
            t = self.ring.variable("t")
            return [sl_from_factors(self.ring, dim, [(i, j, t)]) for i in range(1, dim + 1) for j in range(1, dim + 1) if i != j]
        return [random_sl(dim, 2 * dim, self.rng, self.ring)]

    def multivector(self, name: str, m: int, degree: int | None = None) -> Multivector:
        masks = range(1 << m) if degree is None else [s for s in range(1 << m) if s.bit_count() == degree]
        if self.symbolic:
            return Multivector(self.ring, m, {s: self.ring.variable(f"{name}{s}") for s in masks})
        return Multivector(self.ring, m, {s: self.ring(_small(self.rng)) for s in masks})

    def degree(self, m: int) -> int:
        return self.rng.randint(0, m)


def _names_exterior(n: int) -> list[str]:
    m = n + 1
    names = [f"u{s}" for s in range(1 << m)] + [f"v{s}" for s in range(1 << m)] + [f"g{i}" for i in range(1, m + 1)]
    if m <= 3:
        names += [f"{c}{i}_{j}" for c in ("X", "Y") for i in range(1, m + 1) for j in range(1, m + 1)]
    return names


def _thm_square_law(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    M = clifford_matrix(x).matrix
    q = hyperbolic_q(x)
    return _compare("(l+d)^2 = q Id", M @ M, Matrix.scalar(x.ring, M.rows, q), _context(x))


def _thm_phi_blocks(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    ctx = _context(x)
    try:
        act = phi_blocks(x)
    except SignConventionError as exc:
        return _Outcome(False, {**ctx, "check": "odd", "error": str(exc)})
    q = hyperbolic_q(x)
    d = len(act.phi10.target)
    return _all(
        [
            _compare("Phi10 Phi01 = q Id", (act.phi10 @ act.phi01).matrix, Matrix.scalar(x.ring, d, q), ctx),
            _compare("Phi01 Phi10 = q Id", (act.phi01 @ act.phi10).matrix, Matrix.scalar(x.ring, d, q), ctx),
        ]
    )


def _thm_block_formula(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    act = phi_blocks(x)
    ctx = _context(x)
    outs = []
    for which, gm in (("10", act.phi10), ("01", act.phi01)):
        formula = phi_block_formula(x, which)
        outs.append(_compare(f"Phi{which} block formula", represent(gm, formula.source, formula.target), formula.matrix, ctx))
    return _all(outs)


def _thm_justification(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    b1, _ = build_suslin_bases(n)
    ctx = _context(x)
    return _all(
        [
            _compare("[S(x)]_B1 = S_{n+1}(b,f,a,p)", represent(generalized_suslin(x), b1, b1), suslin_of(x).matrix, ctx),
            _compare("[S̄(x)]_B1 = S̄_{n+1}(b,f,a,p)", represent(generalized_suslin_bar(x), b1, b1), suslin_bar_of(x).matrix, ctx),
        ]
    )


def _thm_basis_phi(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    b1, b0 = build_suslin_bases(n)
    act = phi_blocks(x)
    ctx = _context(x)
    return _all(
        [
            _compare("[Phi10(x)]_{B1,B0} = S_{n+1}", represent(act.phi10, b1, b0), suslin_of(x).matrix, ctx),
            _compare("[Phi01(x)]_{B0,B1} = S̄_{n+1}", represent(act.phi01, b0, b1), suslin_bar_of(x).matrix, ctx),
        ]
    )


def _thm_lemma_a(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    s, sb = generalized_suslin(x).matrix, generalized_suslin_bar(x).matrix
    qi = Matrix.scalar(x.ring, s.rows, hyperbolic_q(x))
    ctx = _context(x)
    return _all([_compare("S S̄ = q Id", s @ sb, qi, ctx), _compare("S̄ S = q Id", sb @ s, qi, ctx)])


def _S(x: HyperbolicElement) -> Matrix:
    return generalized_suslin(x).matrix


def _thm_lemma_b(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    return _compare("S(x) = S(0,0,f,b) + S(p,a,0,0)", _S(x), _S(x.functional_part()) + _S(x.vector_part()), _context(x))


def _thm_lemma_c(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    r = src.scalar("r")
    return _compare("S(r x) = r S(x)", _S(x.scale(r)), _S(x).scale(r), _context(x, r=str(r)))


def _thm_lemma_d(src: _Source, n: int) -> _Outcome:
    x1, x2 = src.element(n, 0).vector_part(), src.element(n, 1).vector_part()
    return _compare("additivity in (p, a)", _S(x1) + _S(x2), _S(x1 + x2), _context(x1, y=x2.to_json()))


def _thm_lemma_e(src: _Source, n: int) -> _Outcome:
    x1, x2 = src.element(n, 0).functional_part(), src.element(n, 1).functional_part()
    return _compare("additivity in (f, b)", _S(x1) + _S(x2), _S(x1 + x2), _context(x1, y=x2.to_json()))


def _thm_lemma_f(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    d = det_division_free(_S(x))
    expected = hyperbolic_q(x) ** (1 << (n - 1))
    if d == expected:
        return _Outcome(True)
    return _Outcome(False, _context(x, check="det S(x) = q^(2^(n-1))", det=str(d), expected=str(expected)))


def _thm_lemma_g(src: _Source, n: int) -> _Outcome:
    x = src.stratified_element(n)
    s, sb = _S(x), generalized_suslin_bar(x).matrix
    q = hyperbolic_q(x)
    d = det_division_free(s)
    ctx = _context(x, q=str(q), det=str(d))
    if d.is_unit() != q.is_unit():
        return _Outcome(False, {**ctx, "check": "det S(x) unit iff q(x) unit"})
    if not q.is_unit():
        return _Outcome(True, details={"invertible": False})
    inv = sb.scale(q.inverse())
    ident = Matrix.identity(x.ring, s.rows)
    out = _all([_compare("S · q^-1 S̄ = Id", s @ inv, ident, ctx), _compare("q^-1 S̄ · S = Id", inv @ s, ident, ctx)])
    out.details["invertible"] = True
    return out


def _thm_lemma_h(src: _Source, n: int) -> _Outcome:
    x = src.element(n)
    swapped = HyperbolicElement(x.ring, tuple(-v for v in x.p), x.b, tuple(-v for v in x.f), x.a)
    return _compare("S̄(x) = S(-p, b, -f, a)", generalized_suslin_bar(x).matrix, _S(swapped), _context(x))


def _thm_key_lemma(src: _Source, n: int) -> _Outcome:
    x = src.stratified_element(n)
    return _all(_key_lemma(x, phi) for phi in src.sl_samples(n + 1))


def _thm_key_corollary(src: _Source, n: int) -> _Outcome:
    x = src.stratified_element(n)
    return _all(_key_corollary(x, phi) for phi in src.sl_samples(n + 1))


def _thm_exterior(src: _Source, n: int) -> _Outcome:
    m = n + 1
    ring = src.ring
    g = src.vector("g", m)
    outs = []
    if src.symbolic:
        pairs = [(k, l) for k in range(m + 1) for l in range(m + 1)]
    else:
        pairs = [(src.degree(m), src.degree(m))]
    for k, l in pairs:
        u, v = src.multivector("u", m, k), src.multivector("v", m, l)
        ctx = {"m": m, "u": u.to_json(), "v": v.to_json(), "g": [str(c) for c in g]}
        uv, vu = wedge(u, v), wedge(v, u)
        if uv != (vu if (k * l) % 2 == 0 else -vu):
            return _Outcome(False, {**ctx, "check": "graded anticommutativity"})
        lhs = contract(g, uv)
        du = wedge(contract(g, u), v)
        dv = wedge(u, contract(g, v))
        if lhs != (du + dv if k % 2 == 0 else du - dv):
            return _Outcome(False, {**ctx, "check": "derivation law"})
    w = src.multivector("u", m)
    if not contract(g, contract(g, w)).is_zero():
        return _Outcome(False, {"m": m, "u": w.to_json(), "g": [str(c) for c in g], "check": "d^2 = 0"})
    if src.symbolic and m > 3:
        return _all(outs)
    phi, psi = src.matrix("X", m), src.matrix("Y", m)
    ctx = {"m": m, "phi": phi.to_json(), "psi": psi.to_json()}
    for parity in (0, 1):
        lp, lq = lambda_parity_map(phi, parity), lambda_parity_map(psi, parity)
        outs.append(_compare(f"Λ{parity}(φψ) = Λ{parity}(φ)Λ{parity}(ψ)", lambda_parity_map(phi @ psi, parity).matrix, (lp @ lq).matrix, ctx))
        ident = lambda_parity_map(Matrix.identity(ring, m), parity).matrix
        outs.append(_compare(f"Λ{parity}(id) = id", ident, Matrix.identity(ring, ident.rows), ctx))
    return _all(outs)


def _thm_projective(src: _Source, n: int) -> _Outcome:
    ring = src.ring
    rng = src.rng if src.rng is not None else random.Random(f"projective:{n}")
    e = random_idempotent(ring, n, rng)
    P = IdempotentModule(e)
    p = e.apply(src.vector("v", n))
    f = e.apply_left(src.vector("w", n))
    x = HyperbolicElement(ring, p, src.scalar("a"), f, src.scalar("b"))
    M = clifford_endo_projective(P, x).matrix
    proj = projector_matrix(P).matrix
    ctx = _context(x, e=e.to_json())
    q = hyperbolic_q(x)
    return _all(
        [
            _compare("Λ(e⊕1) idempotent", proj @ proj, proj, ctx),
            _compare("[Φ(x), Λ(e⊕1)] = 0", M @ proj, proj @ M, ctx),
            _compare("Φ(x)^2 = q on Λ(P⊕R)", M @ M @ proj, proj.scale(q), ctx),
        ]
    )


def _thm_det_oracle(src: _Source, n: int) -> _Outcome:
    M = src.matrix("m", n + 1)
    d1, d2 = det_division_free(M), det_cofactor(M)
    if d1 == d2:
        return _Outcome(True)
    return _Outcome(False, {"check": "Berkowitz = cofactor", "matrix": M.to_json(), "berkowitz": str(d1), "cofactor": str(d2)})


def _thm_basis_completeness(src: _Source, n: int) -> _Outcome:
    b1, b0 = build_suslin_bases(n)
    ring = ring_make("int")
    act = phi_blocks(HyperbolicElement.x0(ring, n)).phi10
    transported = [act.apply(b) for b in b1.multivectors(ring)]
    ok = (
        basis_is_complete(b1, 1)
        and basis_is_complete(b0, 0)
        and len(b1) == 1 << n
        and transported == b0.multivectors(ring)
    )
    if ok:
        return _Outcome(True)
    return _Outcome(False, {"check": "basis completeness", "B1": b1.to_json(), "B0": b0.to_json()})


@dataclass(frozen=True)
class _Theorem:
    body: Callable[[_Source, int], _Outcome]
    names: Callable[[int], list[str]]
    min_rank: int = 0
    randomized: bool = True


def _element_names(n: int) -> list[str]:
    return symbolic_names(n)


THEOREMS: dict[str, _Theorem] = {
    "square-law": _Theorem(_thm_square_law, _element_names),
    "phi-blocks": _Theorem(_thm_phi_blocks, _element_names),
    "block-formula": _Theorem(_thm_block_formula, _element_names),
    "justification": _Theorem(_thm_justification, _element_names),
    "basis-phi": _Theorem(_thm_basis_phi, _element_names),
    "lemma-a": _Theorem(_thm_lemma_a, _element_names),
    "lemma-b": _Theorem(_thm_lemma_b, _element_names),
    "lemma-c": _Theorem(_thm_lemma_c, lambda n: symbolic_names(n) + ["r"]),
    "lemma-d": _Theorem(_thm_lemma_d, lambda n: symbolic_names(n) + symbolic_names(n, 1)),
    "lemma-e": _Theorem(_thm_lemma_e, lambda n: symbolic_names(n) + symbolic_names(n, 1)),
    "lemma-f": _Theorem(_thm_lemma_f, _element_names, min_rank=1),
    "lemma-g": _Theorem(_thm_lemma_g, _element_names, min_rank=1),
    "lemma-h": _Theorem(_thm_lemma_h, _element_names),
    "key-lemma": _Theorem(_thm_key_lemma, lambda n: symbolic_names(n) + ["t"]),
    "key-corollary": _Theorem(_thm_key_corollary, lambda n: symbolic_names(n) + ["t"]),
    "exterior": _Theorem(_thm_exterior, _names_exterior),
    "projective": _Theorem(
        _thm_projective,
        lambda n: [f"v{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)] + ["a", "b"],
    ),
    "det-oracle": _Theorem(_thm_det_oracle, lambda n: [f"m{i}_{j}" for i in range(1, n + 2) for j in range(1, n + 2)]),
    "basis-completeness": _Theorem(_thm_basis_completeness, lambda n: [], randomized=False),
}

_RESTRICTIONS = {
    "lemma-f": "det S(x) = q(x)^(2^(n-1)) has exponent 1/2 at n = 0 (S(x) = (b), q = ab); only n >= 1 is checked",
    "lemma-g": "at n = 0 S(x) = (b) is invertible iff b is a unit, not iff q = ab is; only n >= 1 is checked",
}


def resolve_theorems(ids: Union[str, Sequence[str]]) -> list[str]:
    if isinstance(ids, str):
        ids = [s for s in ids.split(",") if s]
    out: list[str] = []
    for t in ids:
        if t == "all":
            out.extend(k for k in THEOREMS if k not in out)
        elif t == "lemmas":
            out.extend(k for k in THEOREMS if k.startswith("lemma-") and k not in out)
        elif t in THEOREMS:
            if t not in out:
                out.append(t)
        else:
            raise UsageError(f"unknown theorem id {t!r}; known: all, lemmas, {', '.join(THEOREMS)}")
    return out


def _gl_sample(rng: random.Random, ring: Ring, dim: int) -> SLSample:
    base = random_sl(dim, 2 * dim, rng, ring) if dim >= 2 else sl_from_factors(ring, dim, [])
    units = [v for v in range(-SAMPLE_BOUND, SAMPLE_BOUND + 1) if ring(v).is_unit()]
    u = ring(rng.choice(units))
    d = Matrix.diagonal(ring, [u] + [1] * (dim - 1))
    dinv = Matrix.diagonal(ring, [u.inverse()] + [1] * (dim - 1))
    return SLSample(dim, base.factors, d @ base.matrix, base.inverse @ dinv)


def run_suite(
    theorems: Union[str, Sequence[str]],
    ring: Union[RingDescriptor, str, Ring] = "int",
    ranks: Iterable[int] = (0, 1, 2),
    mode: str = "symbolic",
    trials: int = 1,
    seed: int = DEFAULT_SEED,
    gl: bool = False,
    strict_ranks: bool = True,
    on_report: Callable[[VerificationReport], None] | None = None,
) -> list[VerificationReport]:
    """Run each theorem at each rank and return one report per case.

    Symbolic mode yields one report per (theorem, rank), computed over the
    integers in fresh indeterminates.  Randomized mode yields one report per
    trial.  A rank below a theorem's minimum raises :class:`UsageError` when
    that theorem was named explicitly and ``strict_ranks`` is set; otherwise
    (e.g. via ``all``) the rank is skipped.  ``gl`` composes each
    sample with a unit diagonal matrix; such reports are marked experimental.
    """
    ids = resolve_theorems(theorems)
    raw = theorems.split(",") if isinstance(theorems, str) else list(theorems)
    named = set(resolve_theorems([t for t in raw if t not in ("all", "lemmas")]))
    if isinstance(ring, Ring):
        requested = ring
    else:
        requested = ring_make(ring)
    if mode not in ("symbolic", "randomized"):
        raise UsageError(f"unknown mode {mode!r}")
    if mode == "randomized" and trials < 1:
        raise UsageError("randomized mode needs trials >= 1")
    ranks = list(ranks)
    if any(n < 0 for n in ranks):
        raise UsageError("ranks must be non-negative")
    reports: list[VerificationReport] = []

    def emit(r: VerificationReport) -> None:
        reports.append(r)
        if on_report is not None:
            on_report(r)

    for tid in ids:
        thm = THEOREMS[tid]
        for n in ranks:
            if n < thm.min_rank:
                if strict_ranks and tid in named:
                    raise UsageError(f"{tid} is restricted to n >= {thm.min_rank}: {_RESTRICTIONS[tid]}")
                continue
            if mode == "symbolic":
                emit(_run_symbolic(tid, thm, requested, n))
            else:
                count = trials if thm.randomized else 1
                rng = random.Random(f"{seed}:{tid}:{n}:{requested.descriptor}")
                for trial in range(count):
                    emit(_run_trial(tid, thm, requested, n, rng, trial, trials, seed, gl))
    return reports


def _run_symbolic(tid: str, thm: _Theorem, requested: Ring, n: int) -> VerificationReport:
    start = time.perf_counter()
    names = thm.names(n)
    ring = ring_make(RingDescriptor.polynomial(names))
    out = thm.body(_Source(ring, None), n)
    claim = None
    if out.ok:
        claim = (
            f"holds identically in Z[{','.join(names)}] at n = {n}, hence over every commutative ring"
            if names
            else f"holds at n = {n} (no free parameters)"
        )
    return VerificationReport(
        theorem=tid,
        ring=str(requested.descriptor),
        n=n,
        mode="symbolic",
        status="pass" if out.ok else "fail",
        counterexample=out.counterexample,
        details=out.details,
        claim=claim,
        elapsed=time.perf_counter() - start,
    )


def _run_trial(
    tid: str, thm: _Theorem, ring: Ring, n: int, rng: random.Random, trial: int, trials: int, seed: int, gl: bool
) -> VerificationReport:
    start = time.perf_counter()
    src = _Source(ring, rng, trial)
    if gl and tid in ("key-lemma", "key-corollary"):
        src.sl_samples = lambda dim: [_gl_sample(rng, ring, dim)]  # type: ignore[method-assign]
    out = thm.body(src, n)
    details = {**src.details, **out.details}
    return VerificationReport(
        theorem=tid,
        ring=str(ring.descriptor),
        n=n,
        mode="randomized",
        status="pass" if out.ok else "fail",
        trials=trials,
        seed=seed,
        trial=trial,
        counterexample=out.counterexample,
        details=details,
        experimental=gl and tid in ("key-lemma", "key-corollary"),
        elapsed=time.perf_counter() - start,
    )
