"""Randomized property suites behind ``tamegamma verify``.

Each trial draws from its own ``random.Random`` seeded by (suite, seed, index),
so results do not depend on scheduling and reruns are byte-identical.
"""
from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import matrices as mx
from .documents import from_dict, rep_to_dict
from .factors import gamma_field, gauss_sum, lemma45_check
from .family import FamilyPresentation, gamma_of_family, t_operator, thm61_check, verify_interpolation
from .generators import (
    GenConfig,
    Q_CHOICES,
    field_for,
    random_character_data,
    random_extension,
    random_tame,
    random_unit,
    random_wd,
    sp_twist,
)
from .homs import identity_hom, make_hom
from .laurent import SFraction, substitute
from .rings import Cyclotomic, FiniteField, make_ring, normalize_cyclotomic_index
from .weil import LocalFieldData, frobenius_semisimplify, induct_unramified, inertia_invariants, mk_tame

SUITES = ("thm61", "consistency", "multiplicativity", "inductivity", "interpolation", "lemma45", "gauss")


@dataclass(frozen=True)
class SuiteConfig:
    qmax: int = 9
    dimmax: int = 6

    def gen(self) -> GenConfig:
        return GenConfig(qmax=self.qmax, dimmax=self.dimmax)


def trial_rng(suite: str, seed: int, i: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{i}")


def gamma_family_constant(r):
    """gamma_R of r viewed as the constant family over its own ring."""
    return gamma_of_family(FamilyPresentation(r, identity_hom(r.ring)))[0].gamma


def _record(suite, i, ok, doc=None, **detail):
    rec = {"suite": suite, "case": i, "pass": bool(ok), **detail}
    if not ok and doc is not None:
        rec["counterexample"] = doc
    return rec


# ---------------------------------------------------------------------------
# trials


def trial_thm61(i, seed, cfg: SuiteConfig):
    rng = trial_rng("thm61", seed, i)
    r = random_tame(rng, cfg.gen())
    k = inertia_invariants(r)[1]
    det_ok = mx.det(t_operator(r)) == r.ring(r.q) ** k
    ratio_ok = thm61_check(r)
    return _record("thm61", i, det_ok and ratio_ok, rep_to_dict(r),
                   q=r.q, dim=r.dim, inertia_dim=k, det_form=det_ok, ratio_form=ratio_ok)


def trial_consistency(i, seed, cfg: SuiteConfig):
    rng = trial_rng("consistency", seed, i)
    if i % 3 == 2:
        w = random_wd(rng, cfg.gen(), dimmax=min(cfg.dimmax, 5))
        lhs = gamma_family_constant(w.rep)
        rhs = gamma_field(w)
        return _record("consistency", i, lhs == rhs, rep_to_dict(w), kind="wd", dim=w.dim, q=w.q)
    r = random_tame(rng, cfg.gen())
    lhs = gamma_family_constant(r)
    rhs = gamma_field(r)
    return _record("consistency", i, lhs == rhs, rep_to_dict(r), kind="tame", dim=r.dim, q=r.q)


def trial_multiplicativity(i, seed, cfg: SuiteConfig):
    rng = trial_rng("multiplicativity", seed, i)
    ext, a, b = random_extension(rng, cfg.gen())
    ok = gamma_family_constant(ext) == gamma_family_constant(a) * gamma_family_constant(b)
    split = all(x.is_zero() for row in ext.phi[:a.dim] for x in row[a.dim:])
    return _record("multiplicativity", i, ok, rep_to_dict(ext), dim=ext.dim, q=ext.q, split=split)


def _subst_power(fr: SFraction, d: int) -> SFraction:
    one = fr.base.one
    return SFraction(substitute(fr.num, one, d), substitute(fr.den, one, d))


def trial_inductivity(i, seed, cfg: SuiteConfig):
    """gamma(Ind xi) / gamma(Ind 1) = gamma_E(xi) / gamma_E(1), with X_E = X^d."""
    rng = trial_rng("inductivity", seed, i)
    q = rng.choice([x for x in Q_CHOICES if x <= cfg.qmax])
    d = rng.randint(1, 4)
    while q ** d > 1000:
        d -= 1
    F, m, k = random_character_data(rng, q, d)
    K = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(m, F.p))))
    zeta = K.root_of_unity(m) ** k
    u = random_unit(rng, K, K.descriptor.m)
    FE = LocalFieldData(F.p, F.f * d)
    ind = induct_unramified([[u]], [[zeta]], d, F)
    ind1 = induct_unramified([[K.one]], [[K.one]], d, F)
    xi = mk_tame(K, [[u]], [[zeta]], FE)
    one = mk_tame(K, [[K.one]], [[K.one]], FE)
    lhs = gamma_family_constant(ind) * _subst_power(gamma_family_constant(one), d)
    rhs = _subst_power(gamma_family_constant(xi), d) * gamma_family_constant(ind1)
    return _record("inductivity", i, lhs == rhs, rep_to_dict(ind), q=q, d=d, order=m)


def trial_lemma45(i, seed, cfg: SuiteConfig):
    rng = trial_rng("lemma45", seed, i)
    if i % 4 == 0:
        # Sp(n) twisted by an unramified character, n <= 4
        q = rng.choice([x for x in Q_CHOICES if x <= cfg.qmax])
        w = sp_twist(rng.randint(1, 4), q, rng.choice([1, 2, 3, -1, 5]))
    else:
        w = random_wd(rng, cfg.gen(), dimmax=min(cfg.dimmax, 5))
    w = frobenius_semisimplify(w)
    return _record("lemma45", i, lemma45_check(w), rep_to_dict(w), dim=w.dim, q=w.q)


def _brute_norm(p: int, r: int, j: int) -> bool:
    """g * conj(g) = p^r via the double sum over F_{p^r}^x, using field arithmetic."""
    Fq = make_ring(FiniteField(p, r))
    Q = p ** r
    g = Fq.root_of_unity(Q - 1)
    elems, x = [], Fq.one
    for _ in range(Q - 1):
        elems.append(x)
        x = x * g
    log = {e.data: k for k, e in enumerate(elems)}

    def tr(y):
        acc, z = Fq.zero, y
        for _ in range(r):
            acc = acc + z
            z = z ** p
        return int(acc.data[0])

    traces = [tr(e) for e in elems]
    counts = {}
    for a in range(Q - 1):
        for b in range(Q - 1):
            diff = elems[a] - elems[b]
            t = 0 if diff.is_zero() else traces[log[diff.data]]
            key = ((b - a) * j % (Q - 1), t)
            counts[key] = counts.get(key, 0) + 1
    K = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(p, Q - 1))))
    zq, zp = K.root_of_unity(Q - 1), K.root_of_unity(p)
    total = K.zero
    for (e, t), c in counts.items():
        total = total + zq ** e * zp ** t * c
    return total == Q


def trial_gauss(i, seed, cfg: SuiteConfig):
    rng = trial_rng("gauss", seed, i)
    options = [(q, d) for q in (2, 3, 4, 5, 7, 8, 9) for d in (1, 2, 3, 4) if q ** d <= 81 and q <= max(cfg.qmax, 2)]
    q, d = rng.choice(options)
    F = field_for(q)
    Q = q ** d
    j = rng.randrange(1, Q - 1) if Q > 2 else 0
    g = gauss_sum(j, F, d)
    K = g.ring
    conj = make_hom(K, K, {f"z{K.descriptor.m}": K.root_of_unity(K.descriptor.m) ** -1})
    norm_ok = (g * conj(g) == Q) if j % (Q - 1) else (g == -1)
    brute_ok = _brute_norm(F.p, F.f * d, j) if j % (Q - 1) else True
    return _record("gauss", i, norm_ok and brute_ok, q=q, d=d, j=j, value=str(g))


def fixture_names() -> list[str]:
    return sorted(p.name for p in resources.files("tamegamma.fixtures").iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    return json.loads(resources.files("tamegamma.fixtures").joinpath(name).read_text())


def trial_interpolation(i, seed, cfg: SuiteConfig):
    names = fixture_names()
    name = names[i % len(names)]
    doc = from_dict(load_fixture(name))
    recs = verify_interpolation(doc.presentation, doc.fibers, case=name)
    ok = all(r["pass"] for r in recs)
    return _record("interpolation", i, ok, doc.raw, fixture=name, fibers=recs)


TRIALS = {
    "thm61": trial_thm61,
    "consistency": trial_consistency,
    "multiplicativity": trial_multiplicativity,
    "inductivity": trial_inductivity,
    "interpolation": trial_interpolation,
    "lemma45": trial_lemma45,
    "gauss": trial_gauss,
}


def _run_one(args):
    suite, i, seed, cfg = args
    return TRIALS[suite](i, seed, cfg)


def run_suite(suite: str, trials: int, seed: int = 0, cfg: SuiteConfig | None = None,
              workers: int = 1) -> list[dict]:
    """Records ordered by case id."""
    cfg = cfg or SuiteConfig()
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "interpolation" and trials <= 0:
        trials = len(fixture_names())
    jobs = [(suite, i, seed, cfg) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]
