"""The algebra generated by the modes x(n) = x^-(n), in PBW normal form.

Monomials are tuples of integer modes.  A monomial is normal when its modes
are nondecreasing; every :class:`Element` is keyed by normal monomials only.

Products are reduced with the quadratic relation

    x(a) x(b) = q^-2 x(b) x(a) + q^-2 x(a-1) x(b+1) - x(b+1) x(a-1)    (a > b)

which collapses to the plain swap ``x(b+1) x(b) = q^-2 x(b) x(b+1)`` when
``a = b + 1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .report import CheckReport
from .scalar import ONE, ZERO, Number, Scalar, qpow

Monomial = tuple[int, ...]

_QM2 = qpow(-2)


def is_normal(modes: Sequence[int]) -> bool:
    return all(modes[i] <= modes[i + 1] for i in range(len(modes) - 1))


class Element:
    """Finite linear combination of normal monomials with :class:`Scalar` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, "Scalar | Number"]] = None):
        clean: dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if not is_normal(mono):
                    raise ValueError(f"monomial {mono} is not in normal form; use normal_form()")
                c = Scalar.coerce(c)
                if c:
                    clean[mono] = clean.get(mono, ZERO) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Scalar]) -> "Element":
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def unit(cls, c: "Scalar | Number" = 1) -> "Element":
        return cls({(): c})

    @classmethod
    def monomial(cls, modes: Sequence[int], c: "Scalar | Number" = 1) -> "Element":
        """Element for a normal monomial; use :func:`normal_form` for arbitrary words."""
        return cls({tuple(modes): c})

    def items(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in canonical order: by length, then lexicographically by modes."""
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coefficient(self, modes: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(modes), ZERO)

    def __iter__(self) -> Iterator[tuple[Monomial, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Scalar)):
            other = Element.unit(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, c in other._terms.items():
            v = out.get(mono, ZERO) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c: "Scalar | Number") -> "Element":
        c = Scalar.coerce(c)
        if not c:
            return ZERO_ELEMENT
        out = {}
        for m, v in self._terms.items():
            w = v * c
            if w:
                out[m] = w
        return Element._raw(out)

    def __mul__(self, other: "Element | Scalar | Number") -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: "Scalar | Number") -> "Element":
        return self.scale(other)

    def map_coefficients(self, fn) -> "Element":
        out: dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            v = fn(c)
            if v:
                out[m] = out.get(m, ZERO) + v
        return Element({m: c for m, c in out.items() if c})

    def weights(self) -> set["Weight"]:
        return {weight_of(m) for m in self._terms}

    def max_mode(self) -> Optional[int]:
        modes = [m[-1] for m in self._terms if m]
        return max(modes) if modes else None

    def min_mode(self) -> Optional[int]:
        modes = [m[0] for m in self._terms if m]
        return min(modes) if modes else None

    def render(self) -> str:
        """Canonical text accepted back by the expression parser."""
        if not self._terms:
            return "0"
        out: list[str] = []
        for i, (mono, c) in enumerate(self.items()):
            word = "*".join(f"xm({n})" for n in mono)
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
            "terms": [{"modes": list(m), "coeff": c.to_json()} for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Element":
        return cls({tuple(t["modes"]): Scalar.from_json(t["coeff"]) for t in data["terms"]})

    def __repr__(self) -> str:
        return f"Element({self.render()!r})"

    __str__ = render


ZERO_ELEMENT = Element()
UNIT = Element.unit()


def x(n: int) -> Element:
    return Element.monomial((n,))


@dataclass(frozen=True, order=True)
class Weight:
    """Weight ``-length*alpha + delta_sum*delta`` of a monomial."""

    length: int
    delta_sum: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.length + other.length, self.delta_sum + other.delta_sum)


def weight_of(modes: Sequence[int]) -> Weight:
    return Weight(len(modes), sum(modes))


def _accumulate(out: dict[Monomial, Scalar], mono: Monomial, c: Scalar) -> None:
    v = out.get(mono, ZERO) + c
    if v:
        out[mono] = v
    else:
        out.pop(mono, None)


@lru_cache(maxsize=None)
def _lmul(a: int, mono: Monomial) -> tuple[tuple[Monomial, Scalar], ...]:
    """Normal form of ``x(a) * mono`` for a normal monomial ``mono``."""
    if not mono or a <= mono[0]:
        return (((a,) + mono, ONE),)
    b, rest = mono[0], mono[1:]
    out: dict[Monomial, Scalar] = {}
    # q^-2 x(b) [x(a) rest]; every mode of x(a)*rest is >= b
    for m, c in _lmul(a, rest):
        _accumulate(out, (b,) + m, c * _QM2)
    if a != b + 1:
        for m, c in _lmul(b + 1, rest):
            for m2, c2 in _lmul(a - 1, m):
                _accumulate(out, m2, c * c2 * _QM2)
        for m, c in _lmul(a - 1, rest):
            for m2, c2 in _lmul(b + 1, m):
                _accumulate(out, m2, -(c * c2))
    return tuple(out.items())


@lru_cache(maxsize=1 << 16)
def left_multiply(n: int, e: Element) -> Element:
    """``x(n) * e``."""
    out: dict[Monomial, Scalar] = {}
    for mono, c in e._terms.items():
        for m, c2 in _lmul(n, mono):
            _accumulate(out, m, c * c2)
    return Element._raw(out)


def left_multiply_word(word: Sequence[int], e: Element) -> Element:
    for n in reversed(word):
        e = left_multiply(n, e)
    return e


def normal_form(word: Sequence[int]) -> Element:
    """PBW normal form of the word ``x(w_1) ... x(w_k)``."""
    return left_multiply_word(tuple(word), UNIT)


def multiply(a: Element, b: Element) -> Element:
    out: dict[Monomial, Scalar] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            for m, c in left_multiply_word(ma, Element._raw({mb: ONE}))._terms.items():
                _accumulate(out, m, ca * cb * c)
    return Element._raw(out)


def rewrite_once(word: Monomial, i: int) -> list[tuple[Monomial, Scalar]]:
    """Apply the quadratic relation to the inverted adjacent pair at position ``i``."""
    a, b = word[i], word[i + 1]
    if a <= b:
        raise ValueError(f"pair at {i} is not inverted")
    pre, post = word[:i], word[i + 2 :]
    if a == b + 1:
        return [(pre + (b, a) + post, _QM2)]
    return [
        (pre + (b, a) + post, _QM2),
        (pre + (a - 1, b + 1) + post, _QM2),
        (pre + (b + 1, a - 1) + post, -ONE),
    ]


def normal_form_by_rewriting(
    word: Sequence[int], rng: Optional[random.Random] = None
) -> Element:
    """Reduce a word by whole-word rewriting, choosing inverted pairs at random.

    Without ``rng`` the leftmost inverted pair is always chosen.  This is an
    independent reduction path used to test confluence of :func:`normal_form`.
    """
    pending: dict[Monomial, Scalar] = {tuple(word): ONE}
    done: dict[Monomial, Scalar] = {}
    while pending:
        w = min(pending) if rng is None else rng.choice(sorted(pending))
        c = pending.pop(w)
        inversions = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not inversions:
            _accumulate(done, w, c)
            continue
        i = inversions[0] if rng is None else rng.choice(inversions)
        for w2, c2 in rewrite_once(w, i):
            _accumulate(pending, w2, c * c2)
    return Element._raw(done)


def basis_enum(length: int, delta_sum: int, window: tuple[int, int]) -> list[Monomial]:
    """Nondecreasing ``length``-tuples in ``[lo, hi]`` with sum ``delta_sum``, lexicographic."""
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    if length < 0:
        raise ValueError("length must be non-negative")
    out: list[Monomial] = []

    def rec(prefix: list[int], start: int, remaining: int, left: int) -> None:
        if left == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for v in range(start, hi + 1):
            if v * left > remaining:
                break
            if v + hi * (left - 1) < remaining:
                continue
            prefix.append(v)
            rec(prefix, v, remaining - v, left - 1)
            prefix.pop()

    rec([], lo, delta_sum, length)
    return out


def random_word(rng: random.Random, max_len: int, window: tuple[int, int]) -> Monomial:
    n = rng.randint(0, max_len)
    return tuple(rng.randint(window[0], window[1]) for _ in range(n))


def random_scalar(rng: random.Random, gamma: bool = True) -> Scalar:
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    return Scalar.monomial(c, 2 * rng.randint(-2, 2), 2 * rng.randint(-1, 1) if gamma else 0)


def random_element(
    rng: random.Random,
    max_len: int,
    window: tuple[int, int],
    n_terms: int = 3,
    gamma: bool = True,
) -> Element:
    """Random combination of normal forms of random words."""
    e = ZERO_ELEMENT
    for _ in range(rng.randint(1, n_terms)):
        e = e + normal_form(random_word(rng, max_len, window)).scale(random_scalar(rng, gamma))
    return e


def random_homogeneous(
    rng: random.Random, length: int, window: tuple[int, int], n_terms: int = 3
) -> Element:
    """Random element supported on a single weight ``(length, m)``."""
    first = tuple(rng.randint(window[0], window[1]) for _ in range(length))
    m = sum(first)
    basis = basis_enum(length, m, window)
    e = ZERO_ELEMENT
    for _ in range(rng.randint(1, n_terms)):
        e = e + Element.monomial(rng.choice(basis), random_scalar(rng))
    return e


def sum_elements(items: Iterable[Element]) -> Element:
    out: dict[Monomial, Scalar] = {}
    for e in items:
        for m, c in e._terms.items():
            _accumulate(out, m, c)
    return Element._raw(out)


# property checks -------------------------------------------------------------


def check_confluence(samples: int = 500, seed: int = 42, max_len: int = 5, window=(-3, 3)) -> CheckReport:
    """Leftmost and random-pair rewriting agree with :func:`normal_form`."""
    rng = random.Random(seed)
    report = CheckReport("pbw-confluence")
    for _ in range(samples):
        w = random_word(rng, max_len, window)
        report.cases += 1
        a = normal_form_by_rewriting(w)
        b = normal_form_by_rewriting(w, rng)
        c = normal_form(w)
        if not (a == b == c):
            report.fail(f"word {list(w)}", a.render(), b.render())
    return report


def check_idempotence(samples: int = 500, seed: int = 42, max_len: int = 5, window=(-3, 3)) -> CheckReport:
    """Re-normalizing a normal form through the parser changes nothing."""
    from .parse import parse_element

    rng = random.Random(seed)
    report = CheckReport("pbw-idempotence")
    for _ in range(samples):
        w = random_word(rng, max_len, window)
        report.cases += 1
        e = normal_form(w)
        again = parse_element(e.render())
        if again != e:
            report.fail(f"word {list(w)}", again.render(), e.render())
    return report


def check_associativity(samples: int = 200, seed: int = 42, max_len: int = 2, window=(-3, 3)) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("pbw-associativity")
    for _ in range(samples):
        a, b, c = (random_homogeneous(rng, rng.randint(0, max_len), window) for _ in range(3))
        report.cases += 1
        lhs, rhs = multiply(a, multiply(b, c)), multiply(multiply(a, b), c)
        if lhs != rhs:
            report.fail(f"{a.render()} | {b.render()} | {c.render()}", lhs.render(), rhs.render())
    return report
