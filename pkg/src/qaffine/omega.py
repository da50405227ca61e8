"""Componentwise Omega_psi(k) and Omega_phi(k) acting on the x^- algebra.

Both operators are evaluated from their pass-through recursions on a normal
monomial ``x(m) * P``:

    Omega_psi(k) x(m) P = d(k,-m) gam^k P + sum_r gbar(r) gam^r x(m+r) Omega_psi(k-r) P
    Omega_phi(k) x(m) P = d(k,-m) gam^m P + sum_r g(r)    gam^r x(m-r) Omega_phi(k+r) P

with ``Omega(k) 1 = 0``.  Induction on the length gives the vanishing bounds
``Omega_psi(k) M = 0`` for ``k < -max(M)`` and ``Omega_phi(k) M = 0`` for
``k > -min(M)``, which also cut the r-sums off.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .nqminus import (
    UNIT,
    ZERO_ELEMENT,
    Element,
    Monomial,
    left_multiply,
    random_element,
    sum_elements,
)
from .report import CheckReport
from .scalar import ONE, ZERO, Scalar, g_coeff, gampow, qpow

PSI = "psi"
PHI = "phi"


@lru_cache(maxsize=None)
def _psi_mono(k: int, mono: Monomial) -> Element:
    if not mono or k < -mono[-1]:
        return ZERO_ELEMENT
    m, rest = mono[0], mono[1:]
    parts = []
    if k == -m:
        parts.append(Element.monomial(rest, gampow(k)))
    if rest:
        for r in range(0, k + rest[-1] + 1):
            inner = _psi_mono(k - r, rest)
            if inner:
                parts.append(left_multiply(m + r, inner).scale(g_coeff(r, "bar") * gampow(r)))
    return sum_elements(parts)


@lru_cache(maxsize=None)
def _phi_mono(k: int, mono: Monomial) -> Element:
    if not mono or k > -mono[0]:
        return ZERO_ELEMENT
    m, rest = mono[0], mono[1:]
    parts = []
    if k == -m:
        parts.append(Element.monomial(rest, gampow(m)))
    if rest:
        for r in range(0, -rest[0] - k + 1):
            inner = _phi_mono(k + r, rest)
            if inner:
                parts.append(left_multiply(m - r, inner).scale(g_coeff(r, "plain") * gampow(r)))
    return sum_elements(parts)


def _linear(fn: Callable[[int, Monomial], Element], k: int, e: Element) -> Element:
    return sum_elements(fn(k, mono).scale(c) for mono, c in e.items())


@lru_cache(maxsize=1 << 16)
def omega_psi(k: int, e: Element) -> Element:
    return _linear(_psi_mono, k, e)


@lru_cache(maxsize=1 << 16)
def omega_phi(k: int, e: Element) -> Element:
    return _linear(_phi_mono, k, e)


def omega(kind: str, k: int, e: Element) -> Element:
    if kind == PSI:
        return omega_psi(k, e)
    if kind == PHI:
        return omega_phi(k, e)
    raise ValueError(f"unknown Omega kind {kind!r}")


@lru_cache(maxsize=None)
def omega_bruteforce(kind: str, k: int, mono: Monomial, rcap: int) -> Element:
    """Recursion with every r in ``[0, rcap]`` and no vanishing shortcut.

    Only ``Omega(k) 1 = 0`` terminates the recursion, so this evaluates the
    operator without assuming the vanishing bounds.
    """
    if not mono:
        return ZERO_ELEMENT
    m, rest = mono[0], mono[1:]
    parts = []
    if k == -m:
        parts.append(Element.monomial(rest, gampow(k if kind == PSI else m)))
    if rest:
        for r in range(rcap + 1):
            if kind == PSI:
                inner = omega_bruteforce(kind, k - r, rest, rcap)
                if inner:
                    parts.append(left_multiply(m + r, inner).scale(g_coeff(r, "bar") * gampow(r)))
            else:
                inner = omega_bruteforce(kind, k + r, rest, rcap)
                if inner:
                    parts.append(left_multiply(m - r, inner).scale(g_coeff(r, "plain") * gampow(r)))
    return sum_elements(parts)


def support_scan(kind: str, mono: Monomial, lo: int, hi: int) -> list[int]:
    """Indices ``s`` in ``[lo, hi]`` with ``Omega(s) mono != 0``."""
    e = Element.monomial(mono)
    return [s for s in range(lo, hi + 1) if omega(kind, s, e)]


# relation checks ------------------------------------------------------------

RELATIONS = ("eq26", "eq27", "eq28", "eq29", "eq30", "eq38")


@dataclass
class SampleSpec:
    samples: int = 200
    seed: int = 42
    len_max: int = 3
    mode_window: tuple[int, int] = (-3, 3)
    idx_window: tuple[int, int] = (-4, 4)


def _pass_through_rhs(kind: str, k: int, n: int, e: Element) -> Element:
    """Right side of the single-generator exchange relation with ``x(n)``."""
    if e.is_zero():
        return ZERO_ELEMENT
    parts = []
    if k == -n:
        parts.append(e.scale(gampow(k if kind == PSI else n)))
    if kind == PSI:
        top = e.max_mode()
        rmax = -1 if top is None else k + top
        for r in range(0, rmax + 1):
            parts.append(left_multiply(n + r, omega_psi(k - r, e)).scale(g_coeff(r, "bar") * gampow(r)))
    else:
        bottom = e.min_mode()
        rmax = -1 if bottom is None else -bottom - k
        for r in range(0, rmax + 1):
            parts.append(left_multiply(n - r, omega_phi(k + r, e)).scale(g_coeff(r, "plain") * gampow(r)))
    return sum_elements(parts)


def relation_sides(rel: str, i: int, j: int, e: Element) -> tuple[Element, Element]:
    """Both sides of a component relation at indices ``(i, j)`` applied to ``e``."""
    P, F = omega_psi, omega_phi
    q2 = qpow(2)
    g2 = gampow(2)
    if rel == "eq26":
        return P(i, left_multiply(j, e)), _pass_through_rhs(PSI, i, j, e)
    if rel == "eq27":
        return F(i, left_multiply(j, e)), _pass_through_rhs(PHI, i, j, e)
    if rel in ("eq28", "eq29"):
        O = P if rel == "eq28" else F
        k, l = i, j
        lhs = O(k + 1, O(l, e)).scale(q2) - O(k, O(l + 1, e))
        rhs = O(l, O(k + 1, e)) - O(l + 1, O(k, e)).scale(q2)
        return lhs, rhs
    if rel == "eq30":
        k, l = i, j
        lhs = F(k + 1, P(l, e)).scale(q2 * g2) - F(k, P(l + 1, e))
        rhs = P(l, F(k + 1, e)).scale(g2) - P(l + 1, F(k, e)).scale(q2)
        return lhs, rhs
    if rel == "eq38":
        k, m = i, j
        lhs = P(k, F(m, e))
        top = e.max_mode()
        parts = []
        if top is not None:
            for r in range(0, k + top + 1):
                parts.append(F(r + m, P(k - r, e)).scale(g_coeff(r, "plain") * gampow(2 * r)))
        return lhs, sum_elements(parts)
    raise ValueError(f"unknown relation {rel!r}")


def check_omega_relation(rel: str, spec: Optional[SampleSpec] = None) -> CheckReport:
    """Evaluate a component relation over the index window on random elements."""
    spec = spec or SampleSpec()
    rng = random.Random(spec.seed)
    report = CheckReport(rel)
    lo, hi = spec.idx_window
    for _ in range(spec.samples):
        e = random_element(rng, spec.len_max, spec.mode_window)
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                lhs, rhs = relation_sides(rel, i, j, e)
                report.cases += 1
                if lhs != rhs:
                    report.failures.append(
                        {"case": f"{rel}[{i},{j}] on {e.render()}", "lhs": lhs.render(), "rhs": rhs.render()}
                    )
    return report


def check_vanishing_bounds(
    len_max: int = 3, window: tuple[int, int] = (-3, 3), margin: int = 4
) -> CheckReport:
    """Exhaustive vanishing-bound check using the unshortcut recursion as the oracle."""
    from .nqminus import basis_enum

    report = CheckReport("vanishing")
    lo, hi = window
    span = hi - lo
    for n in range(1, len_max + 1):
        for m in range(n * lo, n * hi + 1):
            for mono in basis_enum(n, m, window):
                rcap = span * n + margin
                top, bottom = mono[-1], mono[0]
                psi_out = [s for s in range(-top - margin, -top)]
                phi_out = [s for s in range(-bottom + 1, -bottom + margin + 1)]
                for s in psi_out:
                    report.cases += 1
                    v = omega_bruteforce(PSI, s, mono, rcap)
                    if v or omega_psi(s, Element.monomial(mono)):
                        report.failures.append({"case": f"psi({s}) {mono}", "lhs": v.render(), "rhs": "0"})
                for s in phi_out:
                    report.cases += 1
                    v = omega_bruteforce(PHI, s, mono, rcap)
                    if v or omega_phi(s, Element.monomial(mono)):
                        report.failures.append({"case": f"phi({s}) {mono}", "lhs": v.render(), "rhs": "0"})
                # inside the bound the shortcut engine must agree with the oracle
                for s in (-top, -top + 1):
                    report.cases += 1
                    if omega_bruteforce(PSI, s, mono, rcap) != omega_psi(s, Element.monomial(mono)):
                        report.failures.append({"case": f"psi({s}) {mono} engine/oracle", "lhs": "", "rhs": ""})
                for s in (-bottom, -bottom - 1):
                    report.cases += 1
                    if omega_bruteforce(PHI, s, mono, rcap) != omega_phi(s, Element.monomial(mono)):
                        report.failures.append({"case": f"phi({s}) {mono} engine/oracle", "lhs": "", "rhs": ""})
                # the bound is attained: Omega_psi(-max) and Omega_phi(-min) are not both zero
                report.cases += 1
                e = Element.monomial(mono)
                if not omega_psi(-top, e) and not any(omega_psi(s, e) for s in range(-top, -top + span * n + 2)):
                    report.failures.append({"case": f"psi never nonzero on {mono}", "lhs": "0", "rhs": "!=0"})
    return report
