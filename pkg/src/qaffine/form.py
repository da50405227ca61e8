"""Symmetric bilinear form on the x^- algebra and Gram matrices on weight windows.

The form is fixed by ``(1, 1) = 1`` and the adjunction
``(x(m) a, b) = (a, Omega_psi(-m) b)``; gam is treated as a scalar, so it
moves freely across the form.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .linalg import bareiss_rank, cofactor_det
from .nqminus import Element, Monomial, basis_enum, left_multiply, random_element, random_homogeneous
from .omega import _psi_mono, omega_psi
from .report import CheckReport
from .scalar import ONE, ZERO, Scalar, gampow

DEFAULT_POINTS = (Fraction(7, 5), Fraction(11, 3))
SYMBOLIC_DET_MAX = 6


@lru_cache(maxsize=None)
def pair_monomials(a: Monomial, b: Monomial) -> Scalar:
    if len(a) != len(b):
        return ZERO
    if not a:
        return ONE
    total = ZERO
    for mono, c in _psi_mono(-a[0], b).items():
        total = total + c * pair_monomials(a[1:], mono)
    return total


def pair(a: Element, b: Element) -> Scalar:
    total = ZERO
    for ma, ca in a.items():
        for mb, cb in b.items():
            v = pair_monomials(ma, mb)
            if v:
                total = total + ca * cb * v
    return total


@dataclass
class GramMatrix:
    basis: list[Monomial]
    entries: list[list[Scalar]]

    @property
    def size(self) -> int:
        return len(self.basis)

    def evaluate(self, q: Fraction, gam: Fraction = Fraction(1)) -> list[list[Fraction]]:
        return [[v.evaluate(q, gam) for v in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "schemaVersion": 1,
            "basis": [list(m) for m in self.basis],
            "entries": [[v.to_json() for v in row] for row in self.entries],
        }

    def render(self) -> str:
        lines = ["basis: " + ", ".join("(" + ",".join(map(str, m)) + ")" for m in self.basis)]
        for i, row in enumerate(self.entries):
            lines.append(f"[{i}] " + " | ".join(v.render() for v in row))
        return "\n".join(lines)


def gram(length: int, delta_sum: int, window: tuple[int, int]) -> GramMatrix:
    basis = basis_enum(length, delta_sum, window)
    entries = [[pair_monomials(a, b) for b in basis] for a in basis]
    return GramMatrix(basis, entries)


@dataclass
class RankReport:
    size: int
    symbolic_det: Optional[Scalar]
    ranks: list[tuple[Fraction, int]] = field(default_factory=list)

    @property
    def symbolic_det_nonzero(self) -> Optional[bool]:
        return None if self.symbolic_det is None else bool(self.symbolic_det)

    @property
    def full_rank(self) -> bool:
        return all(r == self.size for _, r in self.ranks)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "symbolicDetNonzero": self.symbolic_det_nonzero,
            "symbolicDet": None if self.symbolic_det is None else self.symbolic_det.render(),
            "symbolicSkipped": self.symbolic_det is None,
            "ranks": [{"q": str(p), "rank": r} for p, r in self.ranks],
        }


def gram_rank_report(g: GramMatrix, points: Sequence[Fraction] = DEFAULT_POINTS) -> RankReport:
    """Symbolic determinant for small blocks plus exact ranks at sample points (gam = 1)."""
    for p in points:
        if Fraction(p) in (0, 1, -1):
            raise ValueError(f"sample point {p} is degenerate")
    det = cofactor_det(g.entries) if g.size <= SYMBOLIC_DET_MAX else None
    ranks = [(Fraction(p), bareiss_rank(g.evaluate(Fraction(p)))) for p in points]
    return RankReport(g.size, det, ranks)


# property checks -------------------------------------------------------------


def check_symmetry(samples: int = 200, seed: int = 42, len_max: int = 3, window=(-3, 3)) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("form-symmetry")
    for _ in range(samples):
        n = rng.randint(0, len_max)
        a = random_homogeneous(rng, n, window)
        # b shares a's weight half of the time so the check is not vacuous
        if rng.random() < 0.5 and n:
            m = sum(next(iter(a.monomials())))
            basis = basis_enum(n, m, window)
            b = Element({rng.choice(basis): 1, rng.choice(basis): gampow(1)})
        else:
            b = random_element(rng, len_max, window)
        report.cases += 1
        lhs, rhs = pair(a, b), pair(b, a)
        if lhs != rhs:
            report.fail(f"({a.render()}, {b.render()})", lhs.render(), rhs.render())
    return report


def check_adjointness(samples: int = 200, seed: int = 42, len_max: int = 3, window=(-3, 3)) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("form-adjointness")
    lo, hi = window
    for _ in range(samples):
        m = rng.randint(lo, hi)
        a = random_element(rng, len_max - 1, window)
        b = random_element(rng, len_max, window)
        report.cases += 1
        lhs, rhs = pair(left_multiply(m, a), b), pair(a, omega_psi(-m, b))
        if lhs != rhs:
            report.fail(f"m={m} a={a.render()} b={b.render()}", lhs.render(), rhs.render())
    return report


def check_orthogonality(samples: int = 200, seed: int = 42, len_max: int = 3, window=(-3, 3)) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("form-orthogonality")
    done = 0
    while done < samples:
        a = random_homogeneous(rng, rng.randint(0, len_max), window)
        b = random_homogeneous(rng, rng.randint(0, len_max), window)
        if a.weights() == b.weights():
            continue
        done += 1
        report.cases += 1
        v = pair(a, b)
        if v:
            report.fail(f"({a.render()}, {b.render()})", v.render(), "0")
    return report


def check_length_one(window=(-3, 3)) -> CheckReport:
    report = CheckReport("form-length-one")
    for n in range(window[0], window[1] + 1):
        for m in range(window[0], window[1] + 1):
            report.cases += 1
            expected = gampow(-n) if n == m else ZERO
            v = pair(Element.monomial((n,)), Element.monomial((m,)))
            if v != expected:
                report.fail(f"(x({n}), x({m}))", v.render(), expected.render())
    return report

