"""Command-line front end: ``qaffine <command> [options]``."""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import form, kashiwara, omega, suites, verma
from .nqminus import Element, multiply, normal_form
from .parse import DomainError, ParseError, parse_element, parse_int_list, parse_window, parse_word
from .scalar import check_identity_18

# options whose value may legitimately start with '-', e.g. --window -2..2
_VALUE_OPTS = {
    "--window", "--mode-window", "--idx-window", "--k", "--idx", "--lambda-h", "--dsum", "--m",
    "--s-from", "--s-to", "--A", "--l-from", "--word", "--expr", "--a", "--b", "--seed",
}
_NEG = re.compile(r"^-\d")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and _NEG.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _window(text: str) -> tuple[int, int]:
    try:
        return parse_window(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _points(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad evaluation points {text!r}") from exc


def _word_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"word must be comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=42)

    p = argparse.ArgumentParser(prog="qaffine", description="Exact computations in the x^- algebra of quantum affine sl(2).")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normal-form", parents=[common], help="PBW normal form of a word or expression")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", type=_word_list, help="comma-separated modes, e.g. 1,0")
    g.add_argument("--expr")

    s = sub.add_parser("multiply", parents=[common], help="product of two elements")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("omega", parents=[common], help="apply Omega_psi(k) or Omega_phi(k)")
    s.add_argument("--kind", choices=(omega.PSI, omega.PHI), required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--expr", required=True)

    s = sub.add_parser("kact", parents=[common], help="act with a Kashiwara word on an element")
    s.add_argument("--word", required=True)
    s.add_argument("--expr", default="1")

    s = sub.add_parser("alphabar", parents=[common], help="apply the anti-automorphism to a word")
    s.add_argument("--word", required=True)

    s = sub.add_parser("pair", parents=[common], help="value of the bilinear form")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix on a weight window")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--dsum", type=int, required=True)
    s.add_argument("--window", type=_window, required=True)
    s.add_argument("--rank", action="store_true", help="also report determinant and ranks")
    s.add_argument("--points", type=_points, default=form.DEFAULT_POINTS)

    s = sub.add_parser("verma", help="reduced Verma module at level zero")
    vsub = s.add_subparsers(dest="verma_command", required=True)
    a = vsub.add_parser("act", parents=[common])
    a.add_argument("--op", choices=("xplus", "a", "psi", "phi", "K", "x"), required=True)
    a.add_argument("--idx", type=int)
    a.add_argument("--lambda-h", type=int, required=True)
    a.add_argument("--expr", default="1")
    a = vsub.add_parser("singular", parents=[common])
    a.add_argument("--lambda-h", type=int, required=True)
    a.add_argument("--length", type=int, required=True)
    a.add_argument("--dsum", type=int, required=True)
    a.add_argument("--window", type=_window, required=True)
    a.add_argument("--points", type=_points, default=verma.DEFAULT_POINTS)
    a = vsub.add_parser("lemma62", parents=[common])
    a.add_argument("--A", required=True, help="comma-separated coefficients A_l")
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--s-from", type=int, required=True)
    a.add_argument("--s-to", type=int, required=True)
    a.add_argument("--lambda-h", type=int, default=0)
    a.add_argument("--l-from", type=int, default=0)

    s = sub.add_parser("check", help="run a single verification")
    csub = s.add_subparsers(dest="check_command", required=True)
    a = csub.add_parser("relations", parents=[common])
    a.add_argument("--suite", choices=("omega", "kashiwara"), default="omega")
    a.add_argument("--rel", default="eq28", help="omega: eq26..eq30, eq38, vanishing; kashiwara: mixed, eq35, eq36, alphabar, quotient")
    a.add_argument("--samples", type=int, default=200)
    a.add_argument("--len-max", "--max-len", dest="len_max", type=int, default=3)
    a.add_argument("--mode-window", type=_window, default=(-3, 3))
    a.add_argument("--idx-window", type=_window, default=(-4, 4))
    a = csub.add_parser("identity18", parents=[common])
    a.add_argument("--order", type=int, default=12)

    s = sub.add_parser("suite", parents=[common], help="run an acceptance battery")
    s.add_argument("name", choices=suites.SUITE_NAMES + ("all",))
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--len-max", "--max-len", dest="len_max", type=int, default=3)
    s.add_argument("--mode-window", type=_window, default=(-3, 3))
    s.add_argument("--idx-window", type=_window, default=(-4, 4))
    return p


# command bodies return (json-able payload, text, exit status) -----------------


def _element_out(e: Element) -> tuple[dict, str, int]:
    return e.to_json(), e.render(), 0


def _cmd_normal_form(args) -> tuple[dict, str, int]:
    e = normal_form(args.word) if args.word is not None else parse_element(args.expr)
    return _element_out(e)


def _cmd_multiply(args):
    return _element_out(multiply(parse_element(args.a), parse_element(args.b)))


def _cmd_omega(args):
    return _element_out(omega.omega(args.kind, args.k, parse_element(args.expr)))


def _cmd_kact(args):
    return _element_out(kashiwara.k_act(parse_word(args.word), parse_element(args.expr)))


def _cmd_alphabar(args):
    w = kashiwara.alpha_bar(parse_word(args.word))
    return w.to_json(), w.render(), 0


def _cmd_pair(args):
    v = form.pair(parse_element(args.a), parse_element(args.b))
    return {"schemaVersion": 1, "value": v.to_json()}, v.render(), 0


def _cmd_gram(args):
    g = form.gram(args.length, args.dsum, args.window)
    payload = g.to_json()
    text = g.render()
    if args.rank:
        r = form.gram_rank_report(g, args.points)
        payload["rank"] = r.to_json()
        det = "skipped" if r.symbolic_det is None else r.symbolic_det.render()
        text += f"\ndet: {det}\n" + "\n".join(f"rank at q={p}: {k}" for p, k in r.ranks)
    return payload, text, 0


def _cmd_verma(args):
    if args.verma_command == "act":
        v = verma.VermaVector(parse_element(args.expr), args.lambda_h)
        try:
            out = verma.act(args.op, args.idx, v)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
        return out.to_json(), out.render(), 0
    if args.verma_command == "singular":
        if args.length < 1:
            raise DomainError("--length must be at least 1")
        r = verma.singular_probe(args.lambda_h, args.length, args.dsum, args.window, args.points)
        lines = [
            f"basis: {len(r.basis)} monomials, s in [{r.s_range[0]}, {r.s_range[1]}]",
            f"kernelDim: {r.kernel_dim}",
            "at points: " + ", ".join(f"q={p}: {d}" for p, d in r.kernel_dims),
            f"symbolic: {r.symbolic_kernel_dim if r.symbolic_kernel_dim is not None else 'skipped'}",
            f"stationary: {str(r.stationary).lower()}",
            "certified: " + (", ".join("(" + ",".join(map(str, m)) + ")" for m in r.certified) or "none"),
        ]
        return r.to_json(), "\n".join(lines), 0
    A = parse_int_list(args.A)
    if args.s_from > args.s_to:
        raise DomainError("--s-from must not exceed --s-to")
    r = verma.lemma62_scan(A, args.m, range(args.s_from, args.s_to + 1), args.lambda_h, args.l_from)
    lines = [f"threshold: s >= {r.threshold} ({'met' if r.threshold_met else 'threshold not met'})"]
    for s, img in r.images:
        lines.append(f"s={s}: {img.render()}")
    if r.weights:
        lines.append("weights: " + ", ".join(w.render() for w in r.weights))
        lines.append(f"s-independent: {str(r.s_independent).lower()}")
        lines.append(f"constraint value: {r.constraint_value.render()}")
    return r.to_json(), "\n".join(lines), 0


def _cmd_check(args):
    if args.check_command == "identity18":
        if args.order < 1:
            raise DomainError("--order must be at least 1")
        r = check_identity_18(args.order)
        text = "equal" if r.equal else f"mismatch at z^-{r.first_mismatch}"
        return {"schemaVersion": 1, **r.to_json()}, text, 0 if r.equal else 3
    if args.suite == "omega":
        spec = omega.SampleSpec(args.samples, args.seed, args.len_max, args.mode_window, args.idx_window)
        if args.rel == "vanishing":
            rep = omega.check_vanishing_bounds(args.len_max, args.mode_window)
        elif args.rel in omega.RELATIONS:
            rep = omega.check_omega_relation(args.rel, spec)
        else:
            raise DomainError(f"unknown omega relation {args.rel!r}")
    else:
        if args.rel in ("mixed", "eq35", "eq36"):
            rep = kashiwara.check_defining_relations(
                args.samples, args.seed, args.len_max, args.mode_window, args.idx_window
            )[args.rel]
        elif args.rel == "alphabar":
            rep = kashiwara.check_alpha_bar(args.samples, args.seed, 4, args.idx_window)
        elif args.rel == "quotient":
            rep = kashiwara.quotient_check(args.samples, args.seed, args.len_max, args.mode_window)
        else:
            raise DomainError(f"unknown kashiwara relation {args.rel!r}")
    text = f"{rep.name}: {'pass' if rep.passed else 'FAIL'} ({rep.cases} cases)"
    for f in rep.failures[:3]:
        text += f"\n  {f['case']}: {f['lhs']} != {f['rhs']}"
    return {"schemaVersion": 1, **rep.to_json()}, text, 0 if rep.passed else 3


def _cmd_suite(args):
    cfg = suites.RunConfig(
        seed=args.seed,
        samples=args.samples,
        len_max=args.len_max,
        mode_window=args.mode_window,
        idx_window=args.idx_window,
    )
    status, report = suites.run_suite(args.name, cfg)
    lines = [f"suite {report['suite']}: {'pass' if report['passed'] else 'FAIL'} ({report['cases']} cases)"]
    for c in report["checks"]:
        lines.append(f"  {'PASS' if c['passed'] else 'FAIL'} {c['name']} ({c['cases']})")
    for f in report["failures"][:5]:
        lines.append(f"  {f['case']}: {f['lhs']} != {f['rhs']}")
    return report, "\n".join(lines), status


COMMANDS = {
    "normal-form": _cmd_normal_form,
    "multiply": _cmd_multiply,
    "omega": _cmd_omega,
    "kact": _cmd_kact,
    "alphabar": _cmd_alphabar,
    "pair": _cmd_pair,
    "gram": _cmd_gram,
    "verma": _cmd_verma,
    "check": _cmd_check,
    "suite": _cmd_suite,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        payload, text, status = COMMANDS[args.command](args)
    except (ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
