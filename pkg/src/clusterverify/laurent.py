"""Exact sparse Laurent polynomials over the integers.

Values are immutable.  Terms are kept in a dict keyed by a packed exponent
vector (see :mod:`clusterverify._kernels_py`), so lexicographic order on
exponent vectors is plain integer order on keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from . import kernels

WIDTH = 32
_HALF = 1 << (WIDTH - 1)
_MASK = (1 << WIDTH) - 1


class DimensionError(ValueError):
    """Operands live in Laurent rings with different variable counts."""


class DivisionFailure(ArithmeticError):
    """A division that is not exact in the Laurent ring.

    ``remainder`` is the polynomial left when leading-term elimination
    stopped; it is nonzero.
    """

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) is not divisible by ({divisor}); remainder {remainder}")


@lru_cache(maxsize=None)
def _bias(n: int) -> int:
    key = 0
    for _ in range(n):
        key = (key << WIDTH) | _HALF
    return key


def pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if not -_HALF <= e < _HALF:
            raise OverflowError(f"exponent {e} outside the supported range")
        key = (key << WIDTH) | (e + _HALF)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = (key & _MASK) - _HALF
        key >>= WIDTH
    return tuple(out)


class LaurentPoly:
    """An element of Z[x1^±1, ..., xn^±1]."""

    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], int] | None = None):
        self.n = n
        t = {}
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise DimensionError(f"exponent vector {tuple(exps)} has length != {n}")
            if c:
                k = pack(exps)
                s = t.get(k, 0) + int(c)
                if s:
                    t[k] = s
                else:
                    del t[k]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, n: int, t: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = t
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: int) -> "LaurentPoly":
        return cls._raw(n, {_bias(n): int(c)} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls._raw(len(exps), {pack(exps): int(coeff)} if coeff else {})

    @classmethod
    def variable(cls, n: int, i: int) -> "LaurentPoly":
        """The coordinate variable x_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls.monomial(e)

    # inspection

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(exponent vector, coefficient) pairs in canonical lexicographic order."""
        return [(unpack(k, self.n), self._t[k]) for k in sorted(self._t)]

    def coefficients(self) -> list[int]:
        return [self._t[k] for k in sorted(self._t)]

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def min_exponents(self) -> tuple[int, ...]:
        if not self._t:
            raise ValueError("the zero polynomial has no exponents")
        return tuple(kernels.bounds(self._t, self.n, WIDTH)[0])

    def max_exponents(self) -> tuple[int, ...]:
        if not self._t:
            raise ValueError("the zero polynomial has no exponents")
        return tuple(kernels.bounds(self._t, self.n, WIDTH)[1])

    def is_polynomial(self) -> bool:
        return not self._t or min(self.min_exponents()) >= 0

    def evaluate(self, point: Sequence[int]) -> int:
        """Integer evaluation; negative powers are allowed only at +-1."""
        total = 0
        for exps, c in self.terms():
            for x, e in zip(point, exps):
                if e < 0 and x not in (1, -1):
                    raise ValueError("negative power evaluated away from a unit")
                c *= x ** abs(e)
            total += c
        return total

    # arithmetic

    def _check(self, other: "LaurentPoly") -> None:
        if other.n != self.n:
            raise DimensionError(f"mismatched variable counts {self.n} and {other.n}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.n, kernels.add(self._t, other._t))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.n, kernels.sub(self._t, other._t))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return LaurentPoly._raw(self.n, {k: -c for k, c in self._t.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.n, kernels.mul(self._t, other._t, _bias(self.n)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._t.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            exps = unpack(k, self.n)
            return LaurentPoly.monomial([-x * -e for x in exps], c ** (-e))
        result = LaurentPoly.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monic monomial x^exps."""
        if len(exps) != self.n:
            raise DimensionError("shift vector has the wrong length")
        return LaurentPoly._raw(self.n, kernels.shift(self._t, pack(exps), _bias(self.n)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return exact_div(self, other)

    # equality, hashing, ordering

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Total order used to sort clusters: term count, then canonical terms."""
        return (len(self._t), tuple((k, self._t[k]) for k in sorted(self._t)))

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.sort_key() < other.sort_key()

    # text

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly(n={self.n}, {render(self)!r})"


def _render_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def render(p: LaurentPoly) -> str:
    """Canonical text, terms in lexicographic exponent order, e.g. ``1 + x1*x2^-1``."""
    if not p:
        return "0"
    out = []
    for idx, (exps, c) in enumerate(p.terms()):
        mono = _render_monomial(exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM = re.compile(r"^(?:(\d+)(?:\*|$))?(.*)$")
_FACTOR = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def parse(text: str, n: int) -> LaurentPoly:
    """Inverse of :func:`render`."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero(n)
    tokens = s.replace(" - ", " + -").split(" + ")
    terms: dict[tuple[int, ...], int] = {}
    for tok in tokens:
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        if not tok:
            raise ValueError(f"malformed polynomial text {text!r}")
        m = _TERM.match(tok)
        coeff = int(m.group(1)) if m.group(1) else 1
        rest = m.group(2)
        exps = [0] * n
        if rest:
            for factor in rest.split("*"):
                fm = _FACTOR.match(factor)
                if not fm:
                    raise ValueError(f"malformed factor {factor!r} in {text!r}")
                i = int(fm.group(1)) - 1
                if not 0 <= i < n:
                    raise ValueError(f"variable x{i + 1} out of range in {text!r}")
                exps[i] += int(fm.group(2)) if fm.group(2) else 1
        elif not m.group(1):
            raise ValueError(f"malformed term {tok!r} in {text!r}")
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentPoly(n, terms)


def arithmetic(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if a.n != b.n:
        raise DimensionError(f"mismatched variable counts {a.n} and {b.n}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """The quotient q with q*b == a, or raise :class:`DivisionFailure`."""
    if a.n != b.n:
        raise DimensionError(f"mismatched variable counts {a.n} and {b.n}")
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = kernels.divexact(a._t, b._t, a.n, WIDTH, _bias(a.n))
    if r:
        raise DivisionFailure(a, b, LaurentPoly._raw(a.n, r))
    return LaurentPoly._raw(a.n, q)


@dataclass(frozen=True)
class ReducedForm:
    numerator: LaurentPoly
    denom_vector: tuple[int, ...]

    def reconstruct(self) -> LaurentPoly:
        return self.numerator.shift([-d for d in self.denom_vector])


def reduced_form(u: LaurentPoly) -> ReducedForm:
    """Write u = f / x^d with f a polynomial not divisible by any x_i.

    ``d`` is the negated per-variable minimum exponent, so an initial
    variable x_i gets d = -e_i.
    """
    if not u:
        raise ValueError("the zero polynomial has no reduced form")
    d = tuple(-m for m in u.min_exponents())
    return ReducedForm(u.shift(d), d)


def denominator_vector(u: LaurentPoly) -> tuple[int, ...]:
    return tuple(-m for m in u.min_exponents())


def positivity_check(f: LaurentPoly) -> bool:
    """True iff f(1,..,1,0,1,..,1) > 0 for every position of the zero."""
    if f and min(f.min_exponents()) < 0:
        raise ValueError("positivity is defined for polynomials only")
    n = f.n
    values = [0] * n
    terms = f.terms()
    for i in range(n):
        values[i] = sum(c for exps, c in terms if exps[i] == 0)
    return all(v > 0 for v in values)


def monomial_of_dimvector(d: Sequence[int]) -> LaurentPoly:
    if any(x < 0 for x in d):
        raise ValueError(f"dimension vector {tuple(d)} has a negative entry")
    return LaurentPoly.monomial(list(d))


def variables(n: int) -> list[LaurentPoly]:
    return [LaurentPoly.variable(n, i) for i in range(n)]
