"""Command-line frontend.

    tamegamma compute    --input doc.json --factor gamma [--fiber SPEC] [--json]
    tamegamma verify     --suite thm61 --trials 200 --seed 42 [--qmax 9 --dimmax 6 --workers 4]
    tamegamma specialize --input fam.json --fiber "mod 73" --factor gamma

A fiber is either the label of a fiber in the document or ``RING:gen=value,...``.
Exit codes: 0 success, 1 failed verification, 2 bad input, 3 mathematical
precondition failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import matrices as mx
from .documents import RepDocument, dumps, load, parse_fiber_spec
from .errors import LevelUnsupported, MathError, SyntaxParseError, WildUnsupported
from .factors import (
    AdditiveCharacter,
    epsilon0_monomial,
    epsilon0_reduce_mod_ell,
    epsilon_monomial,
    epsilon_wd,
    gamma_field,
    l_factor,
    level_twist,
    wd_det_factor,
    with_roots,
)
from .family import Fiber, FamilyPresentation, check_lift, gamma_of_family, verify_interpolation
from .homs import identity_hom
from .suites import SUITES, SuiteConfig, run_suite
from .weil import WDRep, artin_conductor, inertia_invariants, swan, underlying

FACTORS = ("l", "epsilon", "epsilon0", "gamma", "swan", "artin")


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _presentation(doc: RepDocument) -> FamilyPresentation:
    return doc.presentation or FamilyPresentation(underlying(doc.rep), identity_hom(doc.ring))


def _fiber(doc: RepDocument, text: str) -> Fiber:
    for fb in doc.fibers:
        if fb.label == text:
            return fb
    source = doc.presentation.target if doc.presentation else doc.ring
    return parse_fiber_spec(text, source)


def _psi(doc: RepDocument, a):
    """(a with roots adjoined, psi at the document's level)."""
    a, psi = with_roots(a, doc.psi)
    return a, AdditiveCharacter(psi.zeta_p, psi.p, doc.level)


def _require_tame(doc: RepDocument):
    if doc.filtration is not None and swan(doc.filtration, doc.rep.dim):
        raise WildUnsupported("epsilon and gamma need tamely ramified input (the filtration has positive Swan conductor)")


def _fiber_rep(doc: RepDocument, fb: Fiber):
    """The document's representation pushed to the fiber field (N carried along)."""
    a = doc.rep
    if doc.presentation is not None and doc.presentation.f.source is not doc.presentation.f.target:
        a = doc.presentation.rep
    return a.base_change(fb.hom)


def _epsilon0_char_ell(doc: RepDocument, fb: Fiber):
    """Level-zero epsilon_0 at a characteristic-ell fiber, reduced from the lift."""
    pres = _presentation(doc)
    check_lift(pres, fb)
    lift_rep = pres.rep0.base_change(fb.lift)
    return epsilon0_reduce_mod_ell(lift_rep, fb.red)


def _constant_factor(doc: RepDocument, factor: str, fb: Fiber | None):
    """(constant, exponent) for epsilon / epsilon0."""
    _require_tame(doc)
    if fb is not None and fb.hom.target.characteristic:
        a = _fiber_rep(doc, fb)
        r = underlying(a)
        e0 = _epsilon0_char_ell(doc, fb)
        const = e0 * level_twist(r, AdditiveCharacter(r.ring.root_of_unity(r.field.p), r.field.p, doc.level))
        if factor == "epsilon0":
            return const, r.dim * (doc.level + 1)
        basis, _ = inertia_invariants(r)
        if basis:
            const = const * mx.det(mx.mat_neg(mx.restrict(r.phi, basis))).inverse()
        exp = artin_conductor(r) + r.dim * doc.level
        if isinstance(a, WDRep):
            c2, e2 = wd_det_factor(a)
            const, exp = const * c2, exp + e2
        return const, exp
    a = doc.rep if fb is None else _fiber_rep(doc, fb)
    if fb is not None:
        a, psi = with_roots(a)
        psi = AdditiveCharacter(psi.zeta_p, psi.p, doc.level)
    else:
        a, psi = _psi(doc, a)
    if factor == "epsilon0":
        return epsilon0_monomial(a, psi)
    return epsilon_wd(a, psi) if isinstance(a, WDRep) else epsilon_monomial(a, psi)


def _gamma(doc: RepDocument, fb: Fiber | None) -> str:
    _require_tame(doc)
    if fb is not None:
        rec = verify_interpolation(_presentation(doc), [fb], doc.psi)[0]
        return rec["specialized"]
    if doc.ring.is_field and not doc.is_family:
        a, psi = _psi(doc, doc.rep)
        return str(gamma_field(a, psi))
    res, _, _ = gamma_of_family(_presentation(doc), _level_psi(doc))
    return str(res.gamma)


def _level_psi(doc: RepDocument):
    if doc.psi is not None or doc.level == 0:
        return doc.psi
    _, psi = with_roots(underlying(doc.rep))
    if psi.ring is not doc.ring:
        # psi is attached on the enlarged chart by the family path; only the level travels
        raise LevelUnsupported("a nonzero level needs an explicit zeta_p in the chart ring")
    return AdditiveCharacter(psi.zeta_p, psi.p, doc.level)


def cmd_compute(args) -> int:
    doc = load(args.input)
    fb = _fiber(doc, args.fiber) if args.fiber else None
    factor = args.factor
    payload = {"factor": factor, "input": args.input}
    if fb is not None:
        payload["fiber"] = fb.label
    if factor in ("swan", "artin"):
        s = swan(doc.filtration, doc.rep.dim)
        value = s if factor == "swan" else artin_conductor(doc.rep, s)
        payload["value"] = str(value)
        _emit(args, payload, [str(value)])
    elif factor == "l":
        a = doc.rep if fb is None else _fiber_rep(doc, fb)
        payload["value"] = str(l_factor(a))
        _emit(args, payload, [payload["value"]])
    elif factor in ("epsilon", "epsilon0"):
        c, e = _constant_factor(doc, factor, fb)
        payload.update(value=str(c), exponent=e)
        _emit(args, payload, [str(c), f"exponent: {e}"])
    else:
        payload["value"] = _gamma(doc, fb)
        _emit(args, payload, [payload["value"]])
    return 0


def cmd_specialize(args) -> int:
    if args.factor != "gamma":
        raise SyntaxParseError("specialize only supports --factor gamma")
    doc = load(args.input)
    fb = _fiber(doc, args.fiber)
    _require_tame(doc)
    rec = verify_interpolation(_presentation(doc), [fb], doc.psi)[0]
    verdict = "equal" if rec["pass"] else "different"
    payload = {"fiber": rec["fiber"], "kind": rec["kind"], "specialized": rec["specialized"],
               "fiber_gamma": rec["fiber_gamma"], "verdict": verdict, "descent": rec["descent"]}
    _emit(args, payload, [f"specialized: {rec['specialized']}", f"fiber:       {rec['fiber_gamma']}",
                          f"verdict: {verdict}"])
    return 0


def cmd_verify(args) -> int:
    cfg = SuiteConfig(qmax=args.qmax, dimmax=args.dimmax)
    trials = args.trials if args.trials is not None else (0 if args.suite == "interpolation" else 20)
    recs = run_suite(args.suite, trials, args.seed, cfg, args.workers)
    failed = [r for r in recs if not r["pass"]]
    if args.json:
        for r in recs:
            print(dumps(r))
    else:
        for r in failed:
            print(f"FAIL case {r['case']}: {dumps(r.get('counterexample', {}))}")
        print(f"{args.suite}: {len(recs) - len(failed)}/{len(recs)} pass (seed {args.seed})")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tamegamma", description="Local factors of tame Weil representations.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute one local factor of a document")
    c.add_argument("--input", required=True)
    c.add_argument("--factor", required=True, choices=FACTORS)
    c.add_argument("--fiber", help="fiber label or RING:gen=value,...")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a seeded property suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--trials", type=int, help="number of cases (interpolation: all fixtures by default)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--qmax", type=int, default=9)
    v.add_argument("--dimmax", type=int, default=6)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("specialize", help="compare f(gamma_R) with a fiber's own gamma")
    s.add_argument("--input", required=True)
    s.add_argument("--fiber", required=True)
    s.add_argument("--factor", default="gamma", choices=("gamma",))
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_specialize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (SyntaxParseError, KeyError, TypeError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
