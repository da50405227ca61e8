"""Exact coefficient ring Q[q^(+-1/2), gam^(+-1/2)] and truncated series in z^-1.

A :class:`Scalar` is a two-variable Laurent polynomial with rational
coefficients.  Exponents are stored as integers counting half steps, so the
key ``(3, -2)`` stands for ``q^(3/2) * gam^(-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Optional, Union

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    # integral coefficients stay plain ints; Fraction arithmetic is far slower
    if type(c) is int:
        return c
    if type(c) is not Fraction:
        c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Scalar:
    """Immutable Laurent polynomial in ``q^(1/2)`` and ``gam^(1/2)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[tuple[int, int], Number]] = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = _norm(c)
        self._terms = clean
        self._hash: Optional[int] = None

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Scalar":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Number = 1, q_half: int = 0, gam_half: int = 0) -> "Scalar":
        return cls({(q_half, gam_half): c})

    @classmethod
    def coerce(cls, value: "Scalar | Number") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], Fraction]) -> "Scalar":
        # caller guarantees no zero coefficients
        s = cls.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    # inspection
    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Terms in canonical ascending ``(q_half, gam_half)`` order."""
        return sorted(self._terms.items())

    def coefficient(self, q_half: int = 0, gam_half: int = 0) -> Fraction:
        return Fraction(self._terms.get((q_half, gam_half), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic
    def __add__(self, other: "Scalar | Number") -> "Scalar":
        other = Scalar.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = _norm(v)
            else:
                out.pop(key, None)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Scalar | Number") -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: "Scalar | Number") -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: "Scalar | Number") -> "Scalar":
        if type(other) is not Scalar and isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar._raw({k: _norm(c * other) for k, c in self._terms.items()})
        if type(other) is not Scalar:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            ((a2, b2), c2), = other._terms.items()
            return Scalar._raw({(a + a2, b + b2): _norm(c * c2) for (a, b), c in self._terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return Scalar._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            if not self.is_monomial():
                raise ArithmeticError("negative power of a non-monomial Laurent polynomial")
            ((a, b), c), = self._terms.items()
            return Scalar.monomial(Fraction(1) / c ** (-n), a * n, b * n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, q_half: int = 0, gam_half: int = 0) -> "Scalar":
        """Multiply by ``q^(q_half/2) gam^(gam_half/2)``."""
        if not q_half and not gam_half:
            return self
        return Scalar._raw({(a + q_half, b + gam_half): c for (a, b), c in self._terms.items()})

    def exact_div(self, divisor: "Scalar | Number") -> "Scalar":
        """Exact quotient; raises ``ArithmeticError`` if the division leaves a remainder.

        The divisor must be of the form ``gam^(b/2) * f(q)``; the dividend is
        split into slices of equal ``gam`` degree and each slice is divided as a
        univariate Laurent polynomial.
        """
        divisor = Scalar.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        gams = {b for (_, b) in divisor._terms}
        if len(gams) != 1:
            raise ArithmeticError("exact_div supports divisors gam^k * f(q) only")
        (g0,) = gams
        dpoly = {a: c for (a, _), c in divisor._terms.items()}
        slices: dict[int, dict[int, Fraction]] = {}
        for (a, b), c in self._terms.items():
            slices.setdefault(b, {})[a] = c
        out: dict[tuple[int, int], Fraction] = {}
        for b, poly in slices.items():
            quot = _laurent_divide(poly, dpoly)
            for a, c in quot.items():
                out[(a, b - g0)] = c
        return Scalar(out)

    # specialization
    def evaluate(self, q: Number, gam: Number = 1) -> Fraction:
        """Value at rational ``q`` and ``gam``; half-integer exponents are rejected."""
        q = Fraction(q)
        gam = Fraction(gam)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            if a % 2 or (b % 2 and gam != 1):
                raise ValueError("cannot evaluate a half-integer exponent at a rational point")
            total += c * q ** (a // 2) * (gam ** (b // 2) if gam != 1 else 1)
        return total

    def at_gamma_one(self) -> "Scalar":
        if all(b == 0 for (_, b) in self._terms):
            return self
        out: dict[tuple[int, int], Fraction] = {}
        for (a, _), c in self._terms.items():
            out[(a, 0)] = out.get((a, 0), 0) + c
        return Scalar(out)

    def at_q_one(self) -> "Scalar":
        out: dict[tuple[int, int], Fraction] = {}
        for (_, b), c in self._terms.items():
            out[(0, b)] = out.get((0, b), 0) + c
        return Scalar(out)

    # rendering
    def render(self) -> str:
        """Canonical text, e.g. ``-q^(-2) + 1/2*q^(3/2)*gam^(-1)``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, ((a, b), c) in enumerate(self.items()):
            body = _render_term(abs(c), a, b)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"q": a, "gam": b, "c": _render_fraction(c)} for (a, b), c in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Scalar":
        return cls({(t["q"], t["gam"]): Fraction(t["c"]) for t in data["terms"]})

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"

    def __str__(self) -> str:
        return self.render()


def _render_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _render_exponent(half: int) -> str:
    if half % 2 == 0:
        return f"({half // 2})"
    return f"({half}/2)"


def _render_term(c: Fraction, a: int, b: int) -> str:
    factors: list[str] = []
    if c != 1 or (a == 0 and b == 0):
        factors.append(_render_fraction(c))
    if a:
        factors.append("q" if a == 2 else "q^" + _render_exponent(a))
    if b:
        factors.append("gam" if b == 2 else "gam^" + _render_exponent(b))
    return "*".join(factors)


def _laurent_divide(num: dict[int, Fraction], den: dict[int, Fraction]) -> dict[int, Fraction]:
    rem = dict(num)
    dmax = max(den)
    dmin = min(den)
    lead = den[dmax]
    quot: dict[int, Fraction] = {}
    while rem:
        top = max(rem)
        if top - dmax < min(num) - dmin:
            raise ArithmeticError("Laurent division is not exact")
        qexp = top - dmax
        qc = Fraction(rem[top]) / lead
        quot[qexp] = qc
        for e, c in den.items():
            k = qexp + e
            v = rem.get(k, 0) - qc * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quot


ZERO = Scalar()
ONE = Scalar.const(1)
Q = Scalar.monomial(1, 2, 0)
Q_INV = Scalar.monomial(1, -2, 0)
GAM = Scalar.monomial(1, 0, 2)


def qpow(e: int) -> Scalar:
    """``q^e`` for integer ``e``."""
    return Scalar.monomial(1, 2 * e, 0)


def gampow(e: int) -> Scalar:
    """``gam^e`` for integer ``e``."""
    return Scalar.monomial(1, 0, 2 * e)


T = Q - Q_INV  # q - q^-1


@lru_cache(maxsize=None)
def q_integer(n: int) -> Scalar:
    """Quantum integer ``[n] = (q^n - q^-n)/(q - q^-1)``."""
    if n < 0:
        return -q_integer(-n)
    return Scalar({(2 * (n - 1 - 2 * i), 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def g_coeff(p: int, variant: str = "plain") -> Scalar:
    """Taylor coefficient ``g(p)`` of ``(q^2 t - 1)/(t - q^2)``; ``bar`` swaps ``q`` and ``q^-1``."""
    if p < 0:
        raise ValueError(f"g_coeff needs p >= 0, got {p}")
    if variant not in ("plain", "bar"):
        raise ValueError(f"unknown variant {variant!r}")
    s = 1 if variant == "plain" else -1
    if p == 0:
        return qpow(-2 * s)
    return (ONE - qpow(4 * s)) * qpow(-s * (2 * p + 2))


def a_weight(k: int) -> Scalar:
    """``[2k]/k``, the structure constant of ``[a(k), x(l)]``."""
    if k == 0:
        raise ValueError("a(0) is not a generator")
    return q_integer(2 * k) * Fraction(1, k)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``sum_j c_j z^-j`` kept exactly through ``z^-order``."""

    order: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        padded = tuple(self.coeffs[: self.order + 1]) + (ZERO,) * (self.order + 1 - len(self.coeffs))
        object.__setattr__(self, "coeffs", tuple(Scalar.coerce(c) for c in padded))

    @classmethod
    def from_list(cls, coeffs: Iterable["Scalar | Number"], order: int) -> "TruncatedSeries":
        return cls(order, tuple(Scalar.coerce(c) for c in coeffs))

    def __getitem__(self, j: int) -> Scalar:
        return self.coeffs[j] if 0 <= j <= self.order else ZERO

    def _check(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected TruncatedSeries")
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._check(other)
        return TruncatedSeries(n, tuple(self[j] + other[j] for j in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._check(other)
        return TruncatedSeries(n, tuple(self[j] - other[j] for j in range(n + 1)))

    def __mul__(self, other: "TruncatedSeries | Scalar | Number") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Scalar.coerce(other)
            return TruncatedSeries(self.order, tuple(x * c for x in self.coeffs))
        n = self._check(other)
        out = []
        for j in range(n + 1):
            acc = ZERO
            for i in range(j + 1):
                if self[i] and other[j - i]:
                    acc = acc + self[i] * other[j - i]
            out.append(acc)
        return TruncatedSeries(n, tuple(out))

    __rmul__ = __mul__


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """``exp(s)`` truncated at ``s.order``; ``s`` must have zero constant term."""
    if s[0]:
        raise ValueError("series_exp needs a zero constant term")
    n = s.order
    result = TruncatedSeries(n, (ONE,))
    power = TruncatedSeries(n, (ONE,))
    for j in range(1, n + 1):
        power = power * s
        result = result + power * Fraction(1, factorial(j))
    return result


@dataclass(frozen=True)
class IdentityReport:
    equal: bool
    first_mismatch: Optional[int]
    lhs: TruncatedSeries
    rhs: TruncatedSeries

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "firstMismatch": self.first_mismatch,
            "lhs": [c.render() for c in self.lhs.coeffs],
            "rhs": [c.render() for c in self.rhs.coeffs],
        }


def check_identity_18(order: int) -> IdentityReport:
    """Compare ``exp(t * sum_k -[2k]/k z^-k)`` with ``1 + (1-q^4) sum_r q^-2r z^-r`` through ``order``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    s = TruncatedSeries(order, (ZERO,) + tuple(-T * a_weight(k) for k in range(1, order + 1)))
    lhs = series_exp(s)
    rhs = TruncatedSeries(
        order, (ONE,) + tuple((ONE - qpow(4)) * qpow(-2 * r) for r in range(1, order + 1))
    )
    mismatch = next((j for j in range(order + 1) if lhs[j] != rhs[j]), None)
    return IdentityReport(mismatch is None, mismatch, lhs, rhs)


def g_series(order: int, variant: str = "plain") -> TruncatedSeries:
    return TruncatedSeries(order, tuple(g_coeff(p, variant) for p in range(order + 1)))
