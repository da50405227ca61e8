"""Acceptance criteria 1-11; conftest prints one PASS/FAIL line per criterion."""
import os
import shlex
import subprocess
import sys
from itertools import product

import pytest

from qaffine import form, kashiwara, nqminus, omega, verma
from qaffine.cli import main
from qaffine.nqminus import Element
from qaffine.scalar import ONE, ZERO, check_identity_18, gampow, q_integer, qpow
from qaffine.verma import VermaVector

from test_cli import GOLDEN, _manifest

POINTS = (7, 5), (11, 3)


def _ok(report):
    assert report.passed, report.failures[:3]
    assert report.cases > 0


def test_criterion_01_generating_identity():
    res = check_identity_18(12)
    assert res.equal
    for r in range(1, 13):
        assert res.lhs[r] == (ONE - qpow(4)) * qpow(-2 * r)


def test_criterion_02_pbw():
    rep = nqminus.check_confluence(500, 42, 5, (-3, 3))
    _ok(rep)
    assert rep.cases >= 500
    _ok(nqminus.check_idempotence(500, 42, 5, (-3, 3)))
    _ok(nqminus.check_associativity(200, 42))


def test_criterion_03_vanishing_bounds():
    _ok(omega.check_vanishing_bounds(3, (-3, 3)))


@pytest.mark.parametrize("rel", ["eq26", "eq27", "eq28", "eq29", "eq30"])
def test_criterion_04_omega_relations(rel):
    spec = omega.SampleSpec(samples=200, seed=42, len_max=3, mode_window=(-3, 3), idx_window=(-4, 4))
    _ok(omega.check_omega_relation(rel, spec))


def test_criterion_05_kashiwara():
    reports = kashiwara.check_defining_relations(200, 42, 3, (-3, 3), (-4, 4))
    assert set(reports) == {"mixed", "eq35", "eq36"}
    for rep in reports.values():
        _ok(rep)
    _ok(kashiwara.check_alpha_bar(200, 42, 4))


def test_criterion_06_form():
    _ok(form.check_symmetry(200, 42))
    _ok(form.check_adjointness(200, 42))
    _ok(form.check_orthogonality(200, 42))
    for n, m in product(range(-3, 4), repeat=2):
        want = gampow(-n) if n == m else ZERO
        assert form.pair(Element.monomial((n,)), Element.monomial((m,))) == want


def test_criterion_07_gram():
    from fractions import Fraction

    for n in range(-2, 3):
        g = form.gram(1, n, (-2, 2))
        assert g.entries == [[gampow(-n)]] and g.entries[0][0]
    g = form.gram(2, 0, (-2, 2))
    assert g.basis == [(-2, 2), (-1, 1), (0, 0)]
    r = form.gram_rank_report(g, [Fraction(*p) for p in POINTS])
    assert r.symbolic_det_nonzero
    assert [rank for _, rank in r.ranks] == [3, 3]


def test_criterion_08_verma_dichotomy():
    for m in range(-3, 4):
        assert verma.certify_monomial(0, (m,))
    for m in (-1, 0, 1):
        r = verma.singular_probe(0, 1, m, (-2, 2))
        assert r.certified == [(m,)] and r.kernel_dim == 1
    for lam, n, m in product((1, 2), (1, 2), (-1, 0, 1)):
        r = verma.singular_probe(lam, n, m, (-2, 2))
        assert r.kernel_dim == 0, (lam, n, m)
    for lam, m in product((0, 1, 2), range(-3, 4)):
        v = VermaVector(Element.monomial((m,)), lam)
        assert verma.act_xplus(-m, v) == VermaVector(Element.unit(q_integer(lam)), lam)


def test_criterion_09_dual_path():
    rep = verma.check_dual_path(range(1, 7), 2, (-2, 2))
    _ok(rep)


@pytest.mark.parametrize(
    "A,m,l_from,lam",
    [((1, -1), 1, 0, 0), ((1, 2, -3), 2, 0, 1), ((2, -1, 1, 5), 0, -2, 2), ((3, 1), -1, 1, 0)],
)
def test_criterion_10_large_s_scan(A, m, l_from, lam):
    start = 1 - min(l_from, m - l_from - len(A) + 1) + 2
    r = verma.lemma62_scan(list(A), m, range(start, start + 5), lam, l_from)
    assert r.threshold_met and len(r.images) == 5
    assert r.s_independent
    # regression lock on the engine-derived pattern: weights q^(-2i)
    assert r.weights == [qpow(-2 * i) for i in range(len(A))]


def _suite_bytes():
    cmd = [sys.executable, "-m", "qaffine", "suite", "all", "--seed", "42", "--format", "json"]
    procs = []
    for hashseed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        env.pop("QAFFINE_SUITE_BUDGET", None)
        procs.append(subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE, env=env))
    return [(p.wait(timeout=300), p.stdout.read()) for p in procs]


def test_criterion_11_suite_determinism():
    (s1, out1), (s2, out2) = _suite_bytes()
    assert s1 == s2 == 0
    assert out1 == out2 and out1


@pytest.mark.parametrize("name,argv", _manifest())
def test_criterion_11_golden(capsys, name, argv):
    assert main(shlex.split(argv)) == 0
    assert capsys.readouterr().out == (GOLDEN / f"{name}.out").read_text()
