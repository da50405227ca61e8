import random

import pytest

from qaffine.nqminus import UNIT, ZERO_ELEMENT, Element, Weight, basis_enum, random_homogeneous, x
from qaffine.omega import (
    PHI,
    PSI,
    SampleSpec,
    check_omega_relation,
    check_vanishing_bounds,
    omega,
    omega_bruteforce,
    omega_phi,
    omega_psi,
    relation_sides,
    support_scan,
)
from qaffine.scalar import ONE, gampow, qpow


@pytest.mark.parametrize("kind", [PSI, PHI])
@pytest.mark.parametrize("k", [-3, 0, 4])
def test_annihilates_unit(kind, k):
    assert omega(kind, k, UNIT) == ZERO_ELEMENT


def test_psi_examples():
    assert omega_psi(-3, x(3)) == Element.unit(gampow(-3))
    assert omega_psi(0, Element.monomial((-1, 1))) == x(0).scale(qpow(4) - ONE)


def test_phi_examples():
    for m in range(-3, 4):
        assert omega_phi(-m, x(m)) == Element.unit(gampow(m))
    assert omega_phi(1, Element.monomial((-1, 1))) == x(1).scale(gampow(-1))


def test_unknown_kind():
    with pytest.raises(ValueError):
        omega("chi", 0, x(0))


def test_engine_matches_unshortcut_recursion():
    # the oracle sums every r up to a cap with no vanishing shortcut
    for n in (1, 2, 3):
        for mono in basis_enum(n, 0, (-2, 2)) + basis_enum(n, 1, (-2, 2)):
            e = Element.monomial(mono)
            for s in range(-8, 9):
                assert omega_psi(s, e) == omega_bruteforce(PSI, s, mono, 16)
                assert omega_phi(s, e) == omega_bruteforce(PHI, s, mono, 16)


def test_grading():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 3)
        e = random_homogeneous(rng, n, (-3, 3))
        (w,) = e.weights()
        k = rng.randint(-4, 4)
        for out in (omega_psi(k, e), omega_phi(k, e)):
            assert out.weights() <= {Weight(w.length - 1, w.delta_sum + k)}


def test_vanishing_bounds_small():
    r = check_vanishing_bounds(len_max=2, window=(-2, 2))
    assert r.passed and r.cases > 0


def test_support_is_bounded():
    mono = (-1, 0, 2)
    psi = support_scan(PSI, mono, -20, 20)
    phi = support_scan(PHI, mono, -20, 20)
    assert psi and min(psi) >= -2
    assert phi and max(phi) <= 1


@pytest.mark.parametrize("rel", ["eq26", "eq27", "eq28", "eq29", "eq30", "eq38"])
def test_relations_small_sample(rel):
    r = check_omega_relation(rel, SampleSpec(samples=15, seed=7))
    assert r.passed, r.failures[:1]


def test_relation_examples():
    e = Element.monomial((0, 0))
    lhs, rhs = relation_sides("eq28", 0, 0, e)
    assert lhs == rhs
    lhs, rhs = relation_sides("eq26", 2, -2, UNIT)
    assert lhs == rhs == Element.unit(gampow(2))
    with pytest.raises(ValueError):
        relation_sides("eq99", 0, 0, e)
