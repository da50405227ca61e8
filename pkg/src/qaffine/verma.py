"""Reduced imaginary Verma module at level zero (gam = 1).

A vector is ``P * v`` with ``P`` in the x^- algebra and ``v`` the highest
weight vector.  The ideal kills ``x^+(s) v`` and ``a(k) v``; ``K v = q^lam v``.
Every operator is evaluated by commuting it rightwards through the payload
until it reaches ``v``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Optional, Sequence

from .linalg import bareiss_rank, nullspace, symbolic_rank
from .nqminus import (
    UNIT,
    ZERO_ELEMENT,
    Element,
    Monomial,
    basis_enum,
    left_multiply,
    normal_form,
    random_element,
    sum_elements,
)
from .report import CheckReport
from .scalar import T, Scalar, a_weight, g_coeff, q_integer, qpow

DEFAULT_POINTS = (Fraction(7, 5), Fraction(11, 3))


@dataclass(frozen=True)
class VermaVector:
    """``payload * v_lambda``; payload coefficients are specialized to gam = 1."""

    payload: Element
    lambda_h: int

    def __post_init__(self):
        if any(b for _, c in self.payload.items() for (_, b) in c._terms):
            object.__setattr__(self, "payload", self.payload.map_coefficients(Scalar.at_gamma_one))

    @classmethod
    def highest(cls, lambda_h: int) -> "VermaVector":
        return cls(UNIT, lambda_h)

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def __bool__(self) -> bool:
        return not self.payload.is_zero()

    def __add__(self, other: "VermaVector") -> "VermaVector":
        _same(self, other)
        return VermaVector(self.payload + other.payload, self.lambda_h)

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        _same(self, other)
        return VermaVector(self.payload - other.payload, self.lambda_h)

    def scale(self, c: "Scalar | int | Fraction") -> "VermaVector":
        return VermaVector(self.payload.scale(c), self.lambda_h)

    def render(self) -> str:
        if self.payload.is_zero():
            return "0"
        body = self.payload.render()
        (mono, c), *rest = self.payload.items()
        if rest or (not mono and len(c) > 1):
            body = f"({body})"
        return f"{body}*v"

    def to_json(self) -> dict:
        return {"lambdaH": self.lambda_h, "payload": self.payload.to_json()}


def _same(a: VermaVector, b: VermaVector) -> None:
    if a.lambda_h != b.lambda_h:
        raise ValueError("vectors belong to different highest weights")


def _by_monomial(v: VermaVector, fn) -> VermaVector:
    out = sum_elements(fn(mono).scale(c) for mono, c in v.payload.items())
    return VermaVector(out, v.lambda_h)


# a(k) -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _a_mono(k: int, mono: Monomial) -> Element:
    parts = []
    w = -a_weight(k)
    for i in range(len(mono)):
        word = mono[:i] + (mono[i] + k,) + mono[i + 1:]
        parts.append(normal_form(word).scale(w))
    return sum_elements(parts)


def act_a(k: int, v: VermaVector) -> VermaVector:
    if k == 0:
        raise ValueError("a(0) is not a generator")
    return _by_monomial(v, lambda mono: _a_mono(k, mono))


def act_K(v: VermaVector, power: int = 1) -> VermaVector:
    if power not in (1, -1):
        raise ValueError("K power must be +-1")
    return _by_monomial(v, lambda mono: Element.monomial(mono, qpow(power * (v.lambda_h - 2 * len(mono)))))


def act_x(n: int, v: VermaVector) -> VermaVector:
    return VermaVector(left_multiply(n, v.payload), v.lambda_h)


# psi(j), phi(j) ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_mono(j: int, mono: Monomial, lam: int) -> Element:
    if j < 0:
        return ZERO_ELEMENT
    if not mono:
        return Element.unit(qpow(lam)) if j == 0 else ZERO_ELEMENT
    n, rest = mono[0], mono[1:]
    parts = []
    for r in range(j + 1):
        inner = _psi_mono(j - r, rest, lam)
        if inner:
            parts.append(left_multiply(n + r, inner).scale(g_coeff(r, "plain")))
    return sum_elements(parts)


@lru_cache(maxsize=None)
def _phi_mono(j: int, mono: Monomial, lam: int) -> Element:
    if j > 0:
        return ZERO_ELEMENT
    if not mono:
        return Element.unit(qpow(-lam)) if j == 0 else ZERO_ELEMENT
    n, rest = mono[0], mono[1:]
    parts = []
    for r in range(-j + 1):
        inner = _phi_mono(j + r, rest, lam)
        if inner:
            parts.append(left_multiply(n - r, inner).scale(g_coeff(r, "bar")))
    return sum_elements(parts)


def act_psi(j: int, v: VermaVector) -> VermaVector:
    return _by_monomial(v, lambda mono: _psi_mono(j, mono, v.lambda_h))


def act_phi(j: int, v: VermaVector) -> VermaVector:
    return _by_monomial(v, lambda mono: _phi_mono(j, mono, v.lambda_h))


# x^+(s) ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _xplus_mono(s: int, mono: Monomial, lam: int) -> Element:
    if not mono:
        return ZERO_ELEMENT
    n, rest = mono[0], mono[1:]
    moved = left_multiply(n, _xplus_mono(s, rest, lam))
    diff = _psi_mono(s + n, rest, lam) - _phi_mono(s + n, rest, lam)
    return moved + diff.map_coefficients(lambda c: c.exact_div(T))


def act_xplus(s: int, v: VermaVector) -> VermaVector:
    return _by_monomial(v, lambda mono: _xplus_mono(s, mono, v.lambda_h))


OPS = {"xplus": act_xplus, "a": act_a, "psi": act_psi, "phi": act_phi, "x": act_x}


def act(op: str, idx: Optional[int], v: VermaVector) -> VermaVector:
    if op == "K":
        return act_K(v)
    if op not in OPS:
        raise ValueError(f"unknown operator {op!r}")
    if idx is None:
        raise ValueError(f"operator {op} needs an index")
    return OPS[op](idx, v)


# second path for psi and phi --------------------------------------------------


def compositions(j: int) -> list[tuple[int, ...]]:
    """Ordered compositions of ``j`` into positive parts."""
    if j == 0:
        return [()]
    return [(first,) + rest for first in range(1, j + 1) for rest in compositions(j - first)]


def _exp_series(j: int, v: VermaVector, sign: int) -> VermaVector:
    """``sum_n (sign*t)^n/n! sum_{c1+..+cn=j} a(sign*c1)...a(sign*cn) v``.

    ``F(j, n)``, the sum over compositions of ``j`` into ``n`` parts, obeys
    ``F(j, n) = sum_c a(sign*c) F(j-c, n-1)``; tabulating it avoids expanding
    all ``2^(j-1)`` compositions one by one.
    """
    table: dict[tuple[int, int], VermaVector] = {(0, 0): v}
    zero = VermaVector(ZERO_ELEMENT, v.lambda_h)
    for n in range(1, j + 1):
        for i in range(n, j + 1):
            acc = zero
            for c in range(1, i - n + 2):
                prev = table.get((i - c, n - 1))
                if prev is not None and prev:
                    acc = acc + act_a(sign * c, prev)
            table[(i, n)] = acc
    total = zero
    for n in range(1, j + 1):
        total = total + table[(j, n)].scale((T * sign) ** n * Fraction(1, factorial(n)))
    return total


def psi_expansion_oracle(j: int, v: VermaVector) -> VermaVector:
    """``psi(j) = K * sum_n t^n/n! sum_{c1+..+cn=j} a(c1)...a(cn)`` with ``t = q - q^-1``."""
    if j <= 0:
        raise ValueError("the expansion oracle needs j >= 1")
    return act_K(_exp_series(j, v, 1))


def phi_expansion_oracle(j: int, v: VermaVector) -> VermaVector:
    """``phi(-j) = K^-1 * sum_n (-t)^n/n! sum_{c1+..+cn=j} a(-c1)...a(-cn)``."""
    if j <= 0:
        raise ValueError("the expansion oracle needs j >= 1")
    return act_K(_exp_series(j, v, -1), -1)


def check_dual_path(js=range(1, 7), max_len: int = 2, window=(-2, 2), lambdas=(0, 1, 2)) -> CheckReport:
    report = CheckReport("psi-dual-path")
    monos = [()] + [m for n in range(1, max_len + 1) for m in product(range(window[0], window[1] + 1), repeat=n) if list(m) == sorted(m)]
    for lam in lambdas:
        for mono in monos:
            v = VermaVector(Element.monomial(mono), lam)
            for j in js:
                report.cases += 1
                a, b = act_psi(j, v), psi_expansion_oracle(j, v)
                if a != b:
                    report.fail(f"psi({j}) on {v.render()} lam={lam}", a.render(), b.render())
                report.cases += 1
                a, b = act_phi(-j, v), phi_expansion_oracle(j, v)
                if a != b:
                    report.fail(f"phi({-j}) on {v.render()} lam={lam}", a.render(), b.render())
    return report


# Drinfeld relations as operator identities --------------------------------------


def check_drinfeld(samples: int = 60, seed: int = 42, len_max: int = 2, window=(-2, 2), idx_window=(-3, 3)) -> CheckReport:
    """Level-zero relations checked on random vectors."""
    rng = random.Random(seed)
    report = CheckReport("drinfeld")
    lo, hi = idx_window
    nonzero = [k for k in range(lo, hi + 1) if k]

    def record(case: str, lhs: VermaVector, rhs: VermaVector) -> None:
        report.cases += 1
        if lhs != rhs:
            report.fail(case, lhs.render(), rhs.render())

    for _ in range(samples):
        lam = rng.randint(-2, 2)
        v = VermaVector(random_element(rng, len_max, window, gamma=False), lam)
        k, l = rng.choice(nonzero), rng.choice(nonzero)
        i, j = rng.randint(lo, hi), rng.randint(lo, hi)
        record(f"[a({k}),a({l})] on {v.render()}", act_a(k, act_a(l, v)), act_a(l, act_a(k, v)))
        record(
            f"[a({k}),x({j})] on {v.render()}",
            act_a(k, act_x(j, v)) - act_x(j, act_a(k, v)),
            act_x(k + j, v).scale(-a_weight(k)),
        )
        diff = act_psi(i + j, v) - act_phi(i + j, v)
        record(
            f"[x+({i}),x({j})] on {v.render()}",
            act_xplus(i, act_x(j, v)) - act_x(j, act_xplus(i, v)),
            VermaVector(diff.payload.map_coefficients(lambda c: c.exact_div(T)), lam),
        )
        record(
            f"K x({j}) K^-1 on {v.render()}",
            act_K(act_x(j, act_K(v, -1))),
            act_x(j, v).scale(qpow(-2)),
        )
        record(f"[psi({i}),psi({j})] on {v.render()}", act_psi(i, act_psi(j, v)), act_psi(j, act_psi(i, v)))
        record(f"[psi({i}),phi({j})] on {v.render()}", act_psi(i, act_phi(j, v)), act_phi(j, act_psi(i, v)))
        # x^+ quadratic relation
        q2 = qpow(2)
        lhs = act_xplus(i + 1, act_xplus(j, v)) - act_xplus(j, act_xplus(i + 1, v)).scale(q2)
        rhs = act_xplus(i, act_xplus(j + 1, v)).scale(q2) - act_xplus(j + 1, act_xplus(i, v))
        record(f"x+ relation ({i},{j}) on {v.render()}", lhs, rhs)
    return report


def check_ideal(lambdas=(-2, -1, 0, 1, 2), idx_window=(-5, 5)) -> CheckReport:
    report = CheckReport("ideal")
    for lam in lambdas:
        v = VermaVector.highest(lam)
        for s in range(idx_window[0], idx_window[1] + 1):
            report.cases += 1
            if act_xplus(s, v):
                report.fail(f"x+({s}) v lam={lam}", act_xplus(s, v).render(), "0")
            if s:
                report.cases += 1
                if act_a(s, v):
                    report.fail(f"a({s}) v lam={lam}", act_a(s, v).render(), "0")
        report.cases += 1
        if act_K(v) != v.scale(qpow(lam)):
            report.fail(f"K v lam={lam}", act_K(v).render(), v.scale(qpow(lam)).render())
    return report


def check_xplus_length_one(modes=range(-3, 4), lambdas=(0, 1, 2)) -> CheckReport:
    report = CheckReport("xplus-length-one")
    for lam in lambdas:
        for m in modes:
            report.cases += 1
            got = act_xplus(-m, VermaVector(Element.monomial((m,)), lam))
            want = VermaVector(Element.unit(q_integer(lam)), lam)
            if got != want:
                report.fail(f"x+({-m}) x({m}) v lam={lam}", got.render(), want.render())
    return report


# singular vectors ---------------------------------------------------------------


def constraint_range(length: int, window: tuple[int, int]) -> tuple[int, int]:
    lo, hi = window
    span = hi - lo
    return -hi - length * span - 2, -lo + length * span + 2


def _system(lam: int, basis: list[Monomial], s_values: Sequence[int]) -> list[list[Scalar]]:
    rows: list[list[Scalar]] = []
    for s in s_values:
        images = [_xplus_mono(s, b, lam) for b in basis]
        targets = sorted({m for img in images for m in img.monomials()})
        for t in targets:
            rows.append([img.coefficient(t) for img in images])
    return rows


@dataclass
class SingularReport:
    lambda_h: int
    length: int
    delta_sum: int
    window: tuple[int, int]
    basis: list[Monomial]
    s_range: tuple[int, int]
    kernel_dims: list[tuple[Fraction, int]] = field(default_factory=list)
    symbolic_kernel_dim: Optional[int] = None
    stationary: bool = True
    kernel_basis: list[list[Fraction]] = field(default_factory=list)
    certified: list[Monomial] = field(default_factory=list)

    @property
    def kernel_dim(self) -> int:
        if self.symbolic_kernel_dim is not None:
            return self.symbolic_kernel_dim
        return min(d for _, d in self.kernel_dims)

    def to_json(self) -> dict:
        return {
            "schemaVersion": 1,
            "lambdaH": self.lambda_h,
            "length": self.length,
            "deltaSum": self.delta_sum,
            "window": list(self.window),
            "basis": [list(b) for b in self.basis],
            "sRange": list(self.s_range),
            "kernelDim": self.kernel_dim,
            "kernelDimAtPoints": [{"q": str(p), "kernelDim": d} for p, d in self.kernel_dims],
            "symbolicKernelDim": self.symbolic_kernel_dim,
            "stationary": self.stationary,
            "kernelBasis": [[str(c) for c in v] for v in self.kernel_basis],
            "certifiedVectors": [list(m) for m in self.certified],
        }


def certify_monomial(lam: int, mono: Monomial) -> bool:
    """Exact check that ``x^+(s) mono v = 0`` for every integer ``s``.

    Only length one is supported: there ``x^+(s) x(m) v`` is a multiple of
    ``psi(s+m) v - phi(s+m) v``, which vanishes unless ``s = -m``.
    """
    if len(mono) != 1:
        return False
    return not _xplus_mono(-mono[0], mono, lam)


def singular_probe(
    lambda_h: int,
    length: int,
    delta_sum: int,
    window: tuple[int, int],
    points: Sequence[Fraction] = DEFAULT_POINTS,
    symbolic_max_length: int = 2,
) -> SingularReport:
    if length < 1:
        raise ValueError("singular probe needs length >= 1")
    basis = basis_enum(length, delta_sum, window)
    s_lo, s_hi = constraint_range(length, window)
    report = SingularReport(lambda_h, length, delta_sum, window, basis, (s_lo, s_hi))
    if not basis:
        report.kernel_dims = [(Fraction(p), 0) for p in points]
        return report
    rows = _system(lambda_h, basis, range(s_lo, s_hi + 1))
    extra = _system(lambda_h, basis, range(s_hi + 1, s_hi + 4)) + _system(lambda_h, basis, range(s_lo - 3, s_lo))
    for p in points:
        p = Fraction(p)
        num = [[c.evaluate(p) for c in row] for row in rows]
        rank = bareiss_rank(num) if num else 0
        report.kernel_dims.append((p, len(basis) - rank))
        if extra:
            full = num + [[c.evaluate(p) for c in row] for row in extra]
            report.stationary &= bareiss_rank(full) == rank
    if length <= symbolic_max_length:
        report.symbolic_kernel_dim = len(basis) - (symbolic_rank(rows) if rows else 0)
    first = Fraction(points[0])
    report.kernel_basis = nullspace([[c.evaluate(first) for c in row] for row in rows], len(basis)) if rows else [
        [Fraction(int(i == j)) for i in range(len(basis))] for j in range(len(basis))
    ]
    for vec in report.kernel_basis:
        support = [i for i, c in enumerate(vec) if c]
        if len(support) == 1 and certify_monomial(lambda_h, basis[support[0]]):
            report.certified.append(basis[support[0]])
    return report


# large-s scan for length-two vectors ----------------------------------------------


@dataclass
class ScanReport:
    A: list[Fraction]
    l_from: int
    m: int
    lambda_h: int
    s_values: list[int]
    threshold: int
    threshold_met: bool
    images: list[tuple[int, VermaVector]] = field(default_factory=list)
    weights: list[Scalar] = field(default_factory=list)
    s_independent: bool = False
    constraint_value: Optional[Scalar] = None

    @property
    def vanishes(self) -> bool:
        return all(not img for _, img in self.images)

    def to_json(self) -> dict:
        return {
            "schemaVersion": 1,
            "A": [str(a) for a in self.A],
            "lFrom": self.l_from,
            "m": self.m,
            "lambdaH": self.lambda_h,
            "sValues": self.s_values,
            "threshold": self.threshold,
            "thresholdMet": self.threshold_met,
            "weights": [w.render() for w in self.weights],
            "sIndependent": self.s_independent,
            "constraint": None if self.constraint_value is None else self.constraint_value.render(),
            "vanishes": self.vanishes,
            "images": [{"s": s, "value": img.render()} for s, img in self.images],
        }


def lemma62_scan(
    A: Sequence[Fraction | int],
    m: int,
    s_values: Sequence[int],
    lambda_h: int = 0,
    l_from: int = 0,
) -> ScanReport:
    """Evaluate ``x^+(s) sum_l A_l x(l) x(m-l) v`` for large ``s``.

    For ``s`` past the threshold each ``x(l) x(m-l) v`` maps to a multiple
    ``w_l(s) x(s+m) v``.  The weights are reported normalized by ``w_{l_from}``;
    when the ratios do not depend on ``s`` the single linear constraint on
    ``A`` is ``sum_l (w_l / w_{l_from}) A_l = 0``.
    """
    A = [Fraction(a) for a in A]
    ls = list(range(l_from, l_from + len(A)))
    modes = [mm for l in ls for mm in (l, m - l)]
    threshold = 1 - min(modes) if modes else 0
    s_values = list(s_values)
    report = ScanReport(A, l_from, m, lambda_h, s_values, threshold, all(s >= threshold for s in s_values))
    vec = sum_elements(normal_form((l, m - l)).scale(a) for l, a in zip(ls, A))
    for s in s_values:
        report.images.append((s, act_xplus(s, VermaVector(vec, lambda_h))))
    if not report.threshold_met or not ls:
        return report
    ratios_per_s = []
    for s in s_values:
        w = [act_xplus(s, VermaVector(normal_form((l, m - l)), lambda_h)).payload.coefficient((s + m,)) for l in ls]
        try:
            ratios_per_s.append([wl.exact_div(w[0]) for wl in w])
        except (ArithmeticError, ZeroDivisionError):
            return report
    report.weights = ratios_per_s[0]
    report.s_independent = all(r == ratios_per_s[0] for r in ratios_per_s)
    total = Scalar()
    for w, a in zip(report.weights, A):
        total = total + w * a
    report.constraint_value = total
    return report
