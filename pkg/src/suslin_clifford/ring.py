"""Exact commutative-ring scalars.

Three backends share one small interface: arbitrary-precision integers,
integers modulo ``m`` and multivariate polynomials with integer coefficients.
Scalars are immutable.  Arithmetic between scalars of different rings raises
:class:`RingMismatchError`; plain Python ``int`` operands are promoted into
the ring of the other operand.

Polynomial monomials are packed into a single ``int`` with one 16-bit field
per variable, the first declared variable in the most significant field, so
that integer comparison of packed monomials is lexicographic order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "RingError",
    "RingMismatchError",
    "RingDescriptor",
    "Ring",
    "Scalar",
    "IntScalar",
    "ModScalar",
    "PolyScalar",
    "ring_make",
    "scalar_is_unit",
]

_FIELD = 16
_FIELD_MASK = (1 << _FIELD) - 1
_MAX_DEGREE = _FIELD_MASK

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class RingError(ValueError):
    """Invalid ring descriptor or malformed scalar text."""


class RingMismatchError(TypeError):
    """Two scalars from different rings were combined."""


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    modulus: int | None = None
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "int":
            if self.modulus is not None or self.variables:
                raise RingError("integer ring takes no modulus or variables")
        elif self.kind == "mod":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise RingError(f"modulus must be an integer >= 2, got {self.modulus!r}")
            if self.variables:
                raise RingError("modular ring takes no variables")
        elif self.kind == "poly":
            if self.modulus is not None:
                raise RingError("polynomial ring takes no modulus")
            object.__setattr__(self, "variables", tuple(self.variables))
            if len(set(self.variables)) != len(self.variables):
                raise RingError(f"duplicate variable names in {self.variables!r}")
            for name in self.variables:
                if not _NAME_RE.match(name):
                    raise RingError(f"invalid variable name {name!r}")
        else:
            raise RingError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> RingDescriptor:
        return cls("int")

    @classmethod
    def modular(cls, m: int) -> RingDescriptor:
        return cls("mod", modulus=m)

    @classmethod
    def polynomial(cls, variables: Iterable[str]) -> RingDescriptor:
        return cls("poly", variables=tuple(variables))

    @classmethod
    def parse(cls, text: str) -> RingDescriptor:
        """Parse ``int``, ``mod:97`` or ``poly:p1,a,f1,b``."""
        text = text.strip()
        if text in ("int", "ZZ", "integers"):
            return cls.integers()
        head, sep, tail = text.partition(":")
        if head == "mod" and sep:
            try:
                m = int(tail)
            except ValueError:
                raise RingError(f"bad modulus in {text!r}") from None
            return cls.modular(m)
        if head == "poly":
            names = [v.strip() for v in tail.split(",") if v.strip()] if sep else []
            return cls.polynomial(names)
        raise RingError(f"cannot parse ring descriptor {text!r}")

    def __str__(self) -> str:
        if self.kind == "int":
            return "int"
        if self.kind == "mod":
            return f"mod:{self.modulus}"
        return "poly:" + ",".join(self.variables) if self.variables else "poly"


class Ring:
    """Handle for constructing scalars of one ring.  Obtain via :func:`ring_make`."""

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        if descriptor.kind == "poly":
            self._index = {name: i for i, name in enumerate(descriptor.variables)}
            self.nvars = len(descriptor.variables)
        else:
            self._index = {}
            self.nvars = 0
        self.zero = self.from_integer(0)
        self.one = self.from_integer(1)

    @property
    def kind(self) -> str:
        return self.descriptor.kind

    @property
    def modulus(self) -> int | None:
        return self.descriptor.modulus

    def __repr__(self) -> str:
        return f"Ring({self.descriptor})"

    def __str__(self) -> str:
        return str(self.descriptor)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.descriptor == self.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def from_integer(self, n: int) -> Scalar:
        n = int(n)
        kind = self.descriptor.kind
        if kind == "int":
            return IntScalar(self, n)
        if kind == "mod":
            return ModScalar(self, n % self.descriptor.modulus)
        return PolyScalar(self, {0: n} if n else {}, 0)

    def variable(self, name: str) -> Scalar:
        if self.descriptor.kind != "poly":
            raise RingError(f"ring {self} has no variables")
        try:
            i = self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r} in {self}") from None
        return PolyScalar(self, {1 << (_FIELD * (self.nvars - 1 - i)): 1}, 1)

    def variables(self) -> tuple[Scalar, ...]:
        return tuple(self.variable(v) for v in self.descriptor.variables)

    def __call__(self, value: Union[int, str, Scalar]) -> Scalar:
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatchError(f"scalar of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return self.from_integer(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a scalar of {self}")

    def parse(self, text: str) -> Scalar:
        """Parse a scalar expression: integers, variables, ``+ - * ^`` and parentheses."""
        return _Parser(self, text).parse()


@lru_cache(maxsize=None)
def _ring_for(descriptor: RingDescriptor) -> Ring:
    return Ring(descriptor)


def ring_make(descriptor: Union[RingDescriptor, str]) -> Ring:
    """Return the (cached) ring handle for ``descriptor``."""
    if isinstance(descriptor, str):
        descriptor = RingDescriptor.parse(descriptor)
    return _ring_for(descriptor)


class Scalar:
    """Base class of ring elements.  Subclasses store a canonical ``_v``."""

    __slots__ = ("ring", "_v")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"cannot combine {self.ring} with {other.ring}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_integer(other)
        return None

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> str:
        return str(self)


class IntScalar(Scalar):
    __slots__ = ()

    def __init__(self, ring: Ring, v: int):
        self.ring = ring
        self._v = v

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntScalar(self.ring, self._v + o._v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntScalar(self.ring, self._v * o._v)

    def __neg__(self):
        return IntScalar(self.ring, -self._v)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._v == other
        if isinstance(other, IntScalar) and other.ring == self.ring:
            return self._v == other._v
        if isinstance(other, Scalar):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self._v))

    def __int__(self):
        return self._v

    def __str__(self) -> str:
        return str(self._v)

    def is_zero(self) -> bool:
        return self._v == 0

    def is_unit(self) -> bool:
        return abs(self._v) == 1

    def inverse(self) -> Scalar:
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit of the integers")
        return self


class ModScalar(Scalar):
    __slots__ = ()

    def __init__(self, ring: Ring, v: int):
        self.ring = ring
        self._v = v

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModScalar(self.ring, (self._v + o._v) % self.ring.descriptor.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModScalar(self.ring, (self._v * o._v) % self.ring.descriptor.modulus)

    def __neg__(self):
        return ModScalar(self.ring, (-self._v) % self.ring.descriptor.modulus)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._v == other % self.ring.descriptor.modulus
        if isinstance(other, ModScalar) and other.ring == self.ring:
            return self._v == other._v
        if isinstance(other, Scalar):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self._v))

    def __int__(self):
        return self._v

    def __str__(self) -> str:
        return str(self._v)

    def is_zero(self) -> bool:
        return self._v == 0

    def is_unit(self) -> bool:
        return math.gcd(self._v, self.ring.descriptor.modulus) == 1

    def inverse(self) -> Scalar:
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit mod {self.ring.descriptor.modulus}")
        return ModScalar(self.ring, pow(self._v, -1, self.ring.descriptor.modulus))


class PolyScalar(Scalar):
    """Polynomial over the integers; ``_v`` maps packed monomials to nonzero ints.

    ``_deg`` is an upper bound on the total degree, used to guard the packed
    exponent fields against carries.
    """

    __slots__ = ("_deg",)

    def __init__(self, ring: Ring, terms: dict[int, int], deg: int):
        self.ring = ring
        self._v = terms
        self._deg = deg

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._v:
            return self
        if not self._v:
            return o
        a, b = (self._v, o._v) if len(self._v) >= len(o._v) else (o._v, self._v)
        out = dict(a)
        for mono, c in b.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                del out[mono]
        return PolyScalar(self.ring, out, max(self._deg, o._deg))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._v or not o._v:
            return self.ring.zero
        deg = self._deg + o._deg
        if deg > _MAX_DEGREE:
            raise OverflowError("polynomial degree exceeds the packed exponent range")
        out: dict[int, int] = {}
        get = out.get
        for m1, c1 in self._v.items():
            for m2, c2 in o._v.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return PolyScalar(self.ring, {m: c for m, c in out.items() if c}, deg)

    def __neg__(self):
        return PolyScalar(self.ring, {m: -c for m, c in self._v.items()}, self._deg)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._v == ({0: other} if other else {})
        if isinstance(other, PolyScalar) and other.ring == self.ring:
            return self._v == other._v
        if isinstance(other, Scalar):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, frozenset(self._v.items())))

    def __int__(self):
        if not self.is_constant():
            raise TypeError(f"non-constant polynomial {self} has no integer value")
        return self._v.get(0, 0)

    def is_zero(self) -> bool:
        return not self._v

    def is_constant(self) -> bool:
        return not self._v or (len(self._v) == 1 and 0 in self._v)

    def is_unit(self) -> bool:
        return self.is_constant() and self._v.get(0, 0) in (1, -1)

    def inverse(self) -> Scalar:
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit of {self.ring}")
        return self

    def exponents(self, mono: int) -> tuple[int, ...]:
        nv = self.ring.nvars
        return tuple((mono >> (_FIELD * (nv - 1 - i))) & _FIELD_MASK for i in range(nv))

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield ``(exponents, coefficient)`` in graded lexicographic order, largest first."""
        keyed = [(sum(self.exponents(m)), m, c) for m, c in self._v.items()]
        keyed.sort(reverse=True)
        for _, m, c in keyed:
            yield self.exponents(m), c

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms()), default=-1)

    def evaluate(self, values: Mapping[str, Union[Scalar, int]], target: Ring) -> Scalar:
        """Specialize every variable to a value in ``target``."""
        names = self.ring.descriptor.variables
        missing = [v for v in names if v not in values]
        if missing:
            raise RingError(f"no value given for {missing}")
        vals = [target(values[v]) for v in names]
        total = target.zero
        for exps, c in self.terms():
            t = target.from_integer(c)
            for v, e in zip(vals, exps):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def __str__(self) -> str:
        if not self._v:
            return "0"
        names = self.ring.descriptor.variables
        parts = []
        for exps, c in self.terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def scalar_is_unit(s: Scalar) -> bool:
    return s.is_unit()


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()·−]))")


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, str]]:
        out = []
        i = 0
        stripped = text.rstrip()
        while i < len(stripped):
            m = _TOKEN_RE.match(stripped, i)
            if not m or m.end() == i:
                raise RingError(f"unexpected character in {text!r} at offset {i}")
            num, name, op = m.groups()
            if num is not None:
                out.append(("num", num))
            elif name is not None:
                out.append(("name", name))
            else:
                op = {"·": "*", "−": "-", "**": "^"}.get(op, op)
                out.append(("op", op))
            i = m.end()
        return out

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        tok = self._peek()
        if tok is None:
            raise RingError(f"unexpected end of expression {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise RingError("empty scalar expression")
        value = self._expr()
        if self._peek() is not None:
            raise RingError(f"trailing input in {self.text!r}")
        return value

    def _expr(self) -> Scalar:
        value = self._term()
        while (tok := self._peek()) is not None and tok in (("op", "+"), ("op", "-")):
            self.pos += 1
            rhs = self._term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def _term(self) -> Scalar:
        value = self._unary()
        while self._peek() == ("op", "*"):
            self.pos += 1
            value = value * self._unary()
        return value

    def _unary(self) -> Scalar:
        tok = self._peek()
        if tok == ("op", "-"):
            self.pos += 1
            return -self._unary()
        if tok == ("op", "+"):
            self.pos += 1
            return self._unary()
        return self._power()

    def _power(self) -> Scalar:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self.pos += 1
            kind, text = self._take()
            if kind != "num":
                raise RingError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(text)
        return base

    def _atom(self) -> Scalar:
        kind, text = self._take()
        if kind == "num":
            return self.ring.from_integer(int(text))
        if kind == "name":
            return self.ring.variable(text)
        if text == "(":
            value = self._expr()
            if self._take() != ("op", ")"):
                raise RingError(f"unbalanced parentheses in {self.text!r}")
            return value
        raise RingError(f"unexpected {text!r} in {self.text!r}")
