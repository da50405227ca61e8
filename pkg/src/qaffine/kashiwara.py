"""Words in x(n), Omega_psi(k) and gam^(+-1/2), and their action on the x^- algebra.

Elements of the Kashiwara algebra are kept as free linear combinations of
words.  Nothing is reduced at the word level: two words are compared only
through what they do to the x^- algebra.
"""
from __future__ import annotations

import random
from typing import Mapping, Optional, Sequence

from .nqminus import UNIT, Element, left_multiply, random_element, sum_elements
from .omega import omega_psi
from .report import CheckReport
from .scalar import ONE, ZERO, Number, Scalar, gampow, qpow

# generators: ("x", n) for x^-(n), ("W", k) for Omega_psi(k), ("g", +-1) for gam^(+-1/2)
Gen = tuple[str, int]
Word = tuple[Gen, ...]


def xm(n: int) -> Gen:
    return ("x", n)


def wpsi(k: int) -> Gen:
    return ("W", k)


def gam_half(sign: int) -> Gen:
    if sign not in (1, -1):
        raise ValueError("gam generator exponent must be +-1/2")
    return ("g", sign)


def render_gen(g: Gen) -> str:
    kind, n = g
    if kind == "x":
        return f"xm({n})"
    if kind == "W":
        return f"Wpsi({n})"
    return f"gam({n}/2)"


class KElement:
    """Linear combination of generator words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, "Scalar | Number"]] = None):
        clean: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            c = Scalar.coerce(c)
            v = clean.get(tuple(w), ZERO) + c
            if v:
                clean[tuple(w)] = v
            else:
                clean.pop(tuple(w), None)
        self._terms = clean

    @classmethod
    def word(cls, *gens: Gen, c: "Scalar | Number" = 1) -> "KElement":
        return cls({tuple(gens): c})

    @classmethod
    def scalar(cls, c: "Scalar | Number") -> "KElement":
        return cls({(): c})

    def items(self) -> list[tuple[Word, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "KElement") -> "KElement":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, ZERO) + c
        return KElement(out)

    def __neg__(self) -> "KElement":
        return KElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "KElement") -> "KElement":
        return self + (-other)

    def scale(self, c: "Scalar | Number") -> "KElement":
        c = Scalar.coerce(c)
        return KElement({w: v * c for w, v in self._terms.items()})

    def __mul__(self, other: "KElement | Scalar | Number") -> "KElement":
        if not isinstance(other, KElement):
            return self.scale(other)
        out: dict[Word, Scalar] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return KElement(out)

    def __rmul__(self, other: "Scalar | Number") -> "KElement":
        return self.scale(other)

    def has_omega(self) -> bool:
        return any(g[0] == "W" for w in self._terms for g in w)

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.items()):
            word = "*".join(render_gen(g) for g in w)
            negative = False
            if c.is_monomial():
                (_, lead), = c.items()
                negative = lead < 0
                body = (-c).render() if negative else c.render()
                if word:
                    body = word if body == "1" else f"{body}*{word}"
            else:
                # the scalar term sorts first, so it never needs brackets
                body = f"({c.render()})*{word}" if word else c.render()
            if i == 0:
                out.append(("-" if negative else "") + body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "schemaVersion": 1,
            "terms": [
                {"word": [render_gen(g) for g in w], "coeff": c.to_json()} for w, c in self.items()
            ],
        }

    def __repr__(self) -> str:
        return f"KElement({self.render()!r})"

    __str__ = render


def _act_gen(g: Gen, e: Element) -> Element:
    kind, n = g
    if kind == "x":
        return left_multiply(n, e)
    if kind == "W":
        return omega_psi(n, e)
    return e.scale(Scalar.monomial(1, 0, n))


def act_word(word: Sequence[Gen], e: Element) -> Element:
    for g in reversed(word):
        if e.is_zero():
            break
        e = _act_gen(g, e)
    return e


def k_act(w: KElement, e: Element) -> Element:
    """Apply ``w`` to ``e``; each word acts right to left."""
    return sum_elements(act_word(word, e).scale(c) for word, c in w._terms.items())


def _bar_gen(g: Gen) -> Gen:
    kind, n = g
    if kind == "x":
        return ("W", -n)
    if kind == "W":
        return ("x", -n)
    return g


def alpha_bar(w: KElement) -> KElement:
    """Anti-automorphism swapping ``x(m)`` and ``Omega_psi(-m)``; reverses words."""
    return KElement({tuple(_bar_gen(g) for g in reversed(word)): c for word, c in w._terms.items()})


# defining relations ---------------------------------------------------------


def mixed_relation(m: int, n: int, literal: bool = False) -> KElement:
    """``LHS - RHS`` of the exchange relation between ``Omega_psi`` and ``x``.

    The constant term is ``(q^2 - 1) gam^(m+1)`` on ``m = -n-1``.  With
    ``literal=True`` it is ``q^2 gam - 1`` instead; the two agree at ``gam = 1``.
    """
    q2, gm = qpow(2), gampow(1)
    lhs = KElement.word(wpsi(m), xm(n + 1), c=q2 * gm) - KElement.word(wpsi(m + 1), xm(n))
    rhs = KElement.word(xm(n + 1), wpsi(m), c=gm) - KElement.word(xm(n), wpsi(m + 1), c=q2)
    if m == -n - 1:
        const = q2 * gm - ONE if literal else (q2 - ONE) * gampow(m + 1)
        rhs = rhs + KElement.scalar(const)
    return lhs - rhs


def omega_omega_relation(k: int, l: int) -> KElement:
    q2 = qpow(2)
    return (
        KElement.word(wpsi(k + 1), wpsi(l), c=q2)
        - KElement.word(wpsi(l), wpsi(k + 1))
        - KElement.word(wpsi(k), wpsi(l + 1))
        + KElement.word(wpsi(l + 1), wpsi(k), c=q2)
    )


def x_x_relation(k: int, l: int) -> KElement:
    qm2 = qpow(-2)
    return (
        KElement.word(xm(k + 1), xm(l))
        - KElement.word(xm(l), xm(k + 1), c=qm2)
        - KElement.word(xm(k), xm(l + 1), c=qm2)
        + KElement.word(xm(l + 1), xm(k))
    )


def random_kword(rng: random.Random, max_len: int, window: tuple[int, int], gamma: bool = True) -> Word:
    kinds = ("x", "W", "g") if gamma else ("x", "W")
    out = []
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice(kinds)
        if kind == "g":
            out.append(("g", rng.choice((1, -1))))
        else:
            out.append((kind, rng.randint(window[0], window[1])))
    return tuple(out)


def check_defining_relations(
    samples: int = 200,
    seed: int = 42,
    len_max: int = 3,
    mode_window: tuple[int, int] = (-3, 3),
    idx_window: tuple[int, int] = (-4, 4),
    pairs_per_sample: int = 6,
) -> dict[str, CheckReport]:
    """Apply each defining relation to random elements; every result must vanish."""
    rng = random.Random(seed)
    reports = {name: CheckReport(name) for name in ("mixed", "eq35", "eq36")}
    builders = {"mixed": mixed_relation, "eq35": omega_omega_relation, "eq36": x_x_relation}
    lo, hi = idx_window
    for _ in range(samples):
        e = random_element(rng, len_max, mode_window)
        pairs = [(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(pairs_per_sample)]
        n0 = rng.randint(lo, hi)
        pairs.append((-n0 - 1, n0))  # exercises the constant term
        for name, build in builders.items():
            for i, j in pairs:
                reports[name].cases += 1
                out = k_act(build(i, j), e)
                if out:
                    reports[name].fail(f"{name}({i},{j}) on {e.render()}", out.render(), "0")
    return reports


def check_alpha_bar(samples: int = 200, seed: int = 42, max_len: int = 4, window: tuple[int, int] = (-4, 4)) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("alpha_bar")
    for _ in range(samples):
        w1 = KElement.word(*random_kword(rng, max_len, window), c=qpow(rng.randint(-2, 2)))
        w2 = KElement.word(*random_kword(rng, max_len, window)) + KElement.word(*random_kword(rng, max_len, window), c=2)
        report.cases += 2
        if alpha_bar(alpha_bar(w1)) != w1:
            report.fail(f"involution {w1.render()}", alpha_bar(alpha_bar(w1)).render(), w1.render())
        if alpha_bar(w1 * w2) != alpha_bar(w2) * alpha_bar(w1):
            report.fail(f"anti-hom {w1.render()} | {w2.render()}", alpha_bar(w1 * w2).render(), (alpha_bar(w2) * alpha_bar(w1)).render())
    return report


def quotient_check(
    samples: int = 100, seed: int = 42, max_len: int = 3, window: tuple[int, int] = (-3, 3)
) -> CheckReport:
    """``k_act(w, 1)`` is unchanged by adding elements of the left ideal generated by Omega_psi."""
    rng = random.Random(seed)
    report = CheckReport("quotient")
    for _ in range(samples):
        w = KElement.word(*random_kword(rng, max_len, window))
        u = KElement.word(*random_kword(rng, max_len, window), c=rng.choice((1, -2, 3)))
        k = rng.randint(window[0] - 1, window[1] + 1)
        w2 = w + u * KElement.word(wpsi(k))
        report.cases += 1
        a, b = k_act(w, UNIT), k_act(w2, UNIT)
        if a != b:
            report.fail(f"{w.render()} vs {w2.render()}", a.render(), b.render())
    return report
