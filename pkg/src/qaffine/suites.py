"""Named verification batteries shared by the CLI and the test-suite."""
from __future__ import annotations

import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import form, kashiwara, nqminus, omega, verma
from .nqminus import Element
from .report import CheckReport
from .scalar import ONE, T, ZERO, check_identity_18, g_coeff, g_series, gampow, q_integer, qpow

SUITE_NAMES = ("identity18", "relations", "omega", "form", "verma")
BUDGET_ENV = "QAFFINE_SUITE_BUDGET"
DEFAULT_BUDGET = 120.0


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    samples: int = 200
    words: int = 500
    len_max: int = 3
    mode_window: tuple[int, int] = (-3, 3)
    idx_window: tuple[int, int] = (-4, 4)
    points: tuple[Fraction, ...] = (Fraction(7, 5), Fraction(11, 3))
    identity_order: int = 12


# identity18 -----------------------------------------------------------------


def _identity18(cfg: RunConfig) -> list[CheckReport]:
    rep = CheckReport("identity18")
    n = cfg.identity_order
    for order in range(1, n + 1):
        rep.cases += 1
        res = check_identity_18(order)
        if not res.equal:
            j = res.first_mismatch
            rep.fail(f"order {order} coefficient {j}", res.lhs[j].render(), res.rhs[j].render())
    res = check_identity_18(n)
    for r in range(1, n + 1):
        rep.cases += 1
        want = (ONE - qpow(4)) * qpow(-2 * r)
        if res.lhs[r] != want:
            rep.fail(f"z^-{r} coefficient", res.lhs[r].render(), want.render())

    inv = CheckReport("g-series-inverse")
    prod = g_series(n, "plain") * g_series(n, "bar")
    for j in range(n + 1):
        inv.cases += 1
        want = ONE if j == 0 else ZERO
        if prod[j] != want:
            inv.fail(f"g*gbar coefficient {j}", prod[j].render(), want.render())

    qint = CheckReport("q-integers")
    for k in range(-n, n + 1):
        qint.cases += 1
        if q_integer(k) * T != qpow(k) - qpow(-k):
            qint.fail(f"[{k}]*(q-q^-1)", (q_integer(k) * T).render(), (qpow(k) - qpow(-k)).render())
    return [rep, inv, qint]


# relations ---------------------------------------------------------------------


def _relations(cfg: RunConfig) -> list[CheckReport]:
    out = [
        nqminus.check_confluence(cfg.words, cfg.seed, 5, cfg.mode_window),
        nqminus.check_idempotence(cfg.words, cfg.seed, 5, cfg.mode_window),
        nqminus.check_associativity(cfg.samples, cfg.seed, 2, cfg.mode_window),
    ]
    defining = kashiwara.check_defining_relations(
        cfg.samples, cfg.seed, cfg.len_max, cfg.mode_window, cfg.idx_window
    )
    out.extend(defining[k] for k in ("mixed", "eq35", "eq36"))
    out.append(kashiwara.check_alpha_bar(cfg.samples, cfg.seed, 4, cfg.idx_window))
    out.append(kashiwara.quotient_check(100, cfg.seed, 3, cfg.mode_window))
    return out


# omega ------------------------------------------------------------------------


def _omega(cfg: RunConfig) -> list[CheckReport]:
    out = [omega.check_vanishing_bounds(cfg.len_max, cfg.mode_window)]
    spec = omega.SampleSpec(cfg.samples, cfg.seed, cfg.len_max, cfg.mode_window, cfg.idx_window)
    for rel in omega.RELATIONS:
        out.append(omega.check_omega_relation(rel, spec))
    return out


# form -------------------------------------------------------------------------


def gram_probes(cfg: RunConfig) -> CheckReport:
    rep = CheckReport("gram-probes")
    lo, hi = cfg.mode_window
    for n in range(lo, hi + 1):
        rep.cases += 1
        g = form.gram(1, n, cfg.mode_window)
        if g.basis != [(n,)] or g.entries != [[gampow(-n)]]:
            rep.fail(f"gram(1,{n})", g.render(), f"[{gampow(-n).render()}]")
    g = form.gram(2, 0, (-2, 2))
    r = form.gram_rank_report(g, cfg.points)
    rep.cases += 1
    if not r.symbolic_det_nonzero:
        rep.fail("gram(2,0,[-2,2]) determinant", str(r.symbolic_det), "nonzero")
    for p, rank in r.ranks:
        rep.cases += 1
        if rank != 3:
            rep.fail(f"gram(2,0,[-2,2]) rank at q={p}", rank, 3)
    return rep


def _form(cfg: RunConfig) -> list[CheckReport]:
    return [
        form.check_symmetry(cfg.samples, cfg.seed, cfg.len_max, cfg.mode_window),
        form.check_adjointness(cfg.samples, cfg.seed, cfg.len_max, cfg.mode_window),
        form.check_orthogonality(cfg.samples, cfg.seed, cfg.len_max, cfg.mode_window),
        form.check_length_one(cfg.mode_window),
        gram_probes(cfg),
    ]


# verma ------------------------------------------------------------------------


def singular_dichotomy(cfg: RunConfig) -> CheckReport:
    rep = CheckReport("singular-dichotomy")
    window = (-2, 2)
    for m in range(window[0], window[1] + 1):
        rep.cases += 1
        r = verma.singular_probe(0, 1, m, window, cfg.points)
        if r.kernel_dim != 1 or r.certified != [(m,)]:
            rep.fail(f"lam=0 n=1 m={m}", f"dim={r.kernel_dim} certified={r.certified}", f"dim=1 certified={[(m,)]}")
    for lam in (1, 2):
        for n in (1, 2):
            for m in (-1, 0, 1):
                rep.cases += 1
                r = verma.singular_probe(lam, n, m, window, cfg.points)
                if r.kernel_dim != 0 or not r.stationary:
                    rep.fail(f"lam={lam} n={n} m={m}", f"dim={r.kernel_dim} stationary={r.stationary}", "dim=0")
    return rep


def large_s_checks(cfg: RunConfig) -> CheckReport:
    """Large-s scans: one s-independent constraint with weights q^(-2(l - l_from))."""
    rep = CheckReport("large-s-scan")
    cases = [((1, -1), 1, 0, 0), ((1, 2, -3), 2, 0, 1), ((2, -1, 1, 5), 0, -2, 2)]
    for A, m, l_from, lam in cases:
        rep.cases += 1
        r = verma.lemma62_scan(A, m, range(4, 9), lam, l_from)
        want = [qpow(-2 * i) for i in range(len(A))]
        if not (r.threshold_met and r.s_independent and r.weights == want):
            rep.fail(f"A={A} m={m} l_from={l_from}", [w.render() for w in r.weights], [w.render() for w in want])
    # single monomial: x+(s) x(l) x(m-l) v = g(s+l) q^lam / t * x(s+m) v
    for lam in (0, 1, 2):
        for l, m in ((0, 1), (-1, 2), (1, 1)):
            r = verma.lemma62_scan([1], m, range(4, 9), lam, l)
            for s, img in r.images:
                rep.cases += 1
                want = (g_coeff(s + l) * qpow(lam)).exact_div(T)
                got = img.payload.coefficient((s + m,))
                if got != want or len(img.payload) != 1:
                    rep.fail(f"single l={l} m={m} s={s} lam={lam}", img.render(), want.render())
    rep.cases += 1
    below = verma.lemma62_scan([1, -1], 1, range(-2, 3))
    if below.threshold_met:
        rep.fail("threshold guard", "met", "not met")
    return rep


def _verma(cfg: RunConfig) -> list[CheckReport]:
    return [
        verma.check_ideal(),
        verma.check_xplus_length_one(),
        verma.check_dual_path(),
        verma.check_drinfeld(60, cfg.seed),
        singular_dichotomy(cfg),
        large_s_checks(cfg),
    ]


RUNNERS: dict[str, Callable[[RunConfig], list[CheckReport]]] = {
    "identity18": _identity18,
    "relations": _relations,
    "omega": _omega,
    "form": _form,
    "verma": _verma,
}


# driver -----------------------------------------------------------------------


def run_checks(name: str, cfg: RunConfig = RunConfig()) -> list[CheckReport]:
    if name == "all":
        return [rep for n in SUITE_NAMES for rep in RUNNERS[n](cfg)]
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return RUNNERS[name](cfg)


def suite_report(name: str, reports: list[CheckReport], cfg: RunConfig) -> dict:
    return {
        "schemaVersion": 1,
        "suite": name,
        "seed": cfg.seed,
        "cases": sum(r.cases for r in reports),
        "passed": all(r.passed for r in reports),
        "checks": [{"name": r.name, "cases": r.cases, "passed": r.passed} for r in reports],
        "failures": [f for r in reports for f in r.failures],
    }


def budget_seconds() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError:
        print(f"warning: ignoring non-numeric {BUDGET_ENV}={raw!r}", file=sys.stderr)
        return DEFAULT_BUDGET


def run_suite(name: str, cfg: RunConfig = RunConfig()) -> tuple[int, dict]:
    """Run a battery; returns ``(exit_status, report)`` with status 0 on pass and 3 on failure.

    Elapsed time is compared against the budget and reported on stderr only,
    so the JSON report stays byte-identical between runs.
    """
    start = time.perf_counter()
    reports = run_checks(name, cfg)
    elapsed = time.perf_counter() - start
    budget = budget_seconds()
    if elapsed > budget:
        print(f"warning: suite {name} took {elapsed:.1f}s, budget {budget:.0f}s", file=sys.stderr)
    report = suite_report(name, reports, cfg)
    return (0 if report["passed"] else 3), report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
