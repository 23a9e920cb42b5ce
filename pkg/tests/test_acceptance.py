"""Acceptance criteria 1-9, each with its runtime budget.

Run with pytest (a summary block lists one line per criterion) or directly:
    python3 tests/test_acceptance.py
"""
import itertools
import math
import time
from collections import Counter
from pathlib import Path

from tamegamma.documents import load
from tamegamma.errors import NonIntegralSwan
from tamegamma.factors import AdditiveCharacter, epsilon_character, gamma_field, gauss_sum, monomial
from tamegamma.family import det_t
from tamegamma.generators import field_for
from tamegamma.laurent import SFraction, laurent_poly
from tamegamma.rings import Cyclotomic, make_ring, normalize_cyclotomic_index
from tamegamma.suites import SuiteConfig, run_suite
from tamegamma.syntax import parse_matrix, parse_ring
from tamegamma.weil import LocalFieldData, TameCharacter, mk_tame, swan, unramified_character

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
CFG = SuiteConfig(qmax=9, dimmax=6)


class Criterion:
    def __init__(self, number, budget=None):
        self.number, self.budget = number, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False

    def line(self, ok, detail):
        within = self.budget is None or self.elapsed < self.budget
        verdict = "PASS" if ok and within else "FAIL"
        budget = f" (budget {self.budget:.0f} s)" if self.budget else ""
        return f"criterion {self.number}: {verdict}  {detail}  [{self.elapsed:.1f} s{budget}]", ok and within


# -- 1 and 2: det(T) and the ratio identity on 200 random tame representations --------------------

_tame_records = {}


def tame_records():
    if not _tame_records:
        t0 = time.perf_counter()
        _tame_records["recs"] = run_suite("thm61", 200, seed=42, cfg=CFG)
        _tame_records["elapsed"] = time.perf_counter() - t0
    return _tame_records["recs"], _tame_records["elapsed"]


def criterion_1():
    c = Criterion(1, 60)
    with c:
        recs, elapsed = tame_records()
    c.elapsed = elapsed
    ok = sum(r["det_form"] for r in recs)
    qs = sorted({r["q"] for r in recs})
    return c.line(ok == len(recs) >= 200 and max(r["dim"] for r in recs) <= 6,
                  f"det(T) = q^dim(inv): {ok}/{len(recs)}, q in {qs}")


def criterion_2():
    c = Criterion(2, 60)
    with c:
        recs, elapsed = tame_records()
    c.elapsed = elapsed
    ok = sum(r["ratio_form"] for r in recs)
    return c.line(ok == len(recs) >= 200, f"char_rev ratio = L(qX)/L(X): {ok}/{len(recs)}")


# -- 3: family path against the field path ------------------------------------------------------------


def criterion_3():
    with Criterion(3, 60) as c:
        recs = run_suite("consistency", 100, seed=7, cfg=CFG)
    ok = sum(r["pass"] for r in recs)
    wd = sum(r["kind"] == "wd" for r in recs)
    return c.line(ok == len(recs) >= 100 and wd > 0, f"gamma_family = gamma_field: {ok}/{len(recs)} ({wd} with N != 0)")


# -- 4: specialization over the bundled fixtures -----------------------------------------------------------


def criterion_4():
    with Criterion(4, 120) as c:
        recs = run_suite("interpolation", 0)
    fibers = [f for r in recs for f in r["fibers"]]
    ok = sum(f["pass"] for f in fibers)
    ell = sum(f["kind"] != "char0" and f["pass"] for f in fibers)
    every = all(len(r["fibers"]) >= 3 for r in recs)
    good = len(recs) >= 20 and every and ok == len(fibers) and ell >= 5
    return c.line(good, f"{len(recs)} families, {ok}/{len(fibers)} fibers equal, {ell} in characteristic ell")


# -- 5: multiplicativity and inductivity ---------------------------------------------------------------------


def criterion_5():
    with Criterion(5, 60) as c:
        mult = run_suite("multiplicativity", 100, seed=11, cfg=CFG)
        ind = run_suite("inductivity", 50, seed=11, cfg=CFG)
    m_ok, i_ok = sum(r["pass"] for r in mult), sum(r["pass"] for r in ind)
    nonsplit = sum(not r["split"] for r in mult)
    good = m_ok == len(mult) >= 100 and i_ok == len(ind) >= 50 and max(r["d"] for r in ind) <= 4
    return c.line(good, f"extensions {m_ok}/{len(mult)} ({nonsplit} non-split), induced {i_ok}/{len(ind)}")


# -- 6: the Weil-Deligne determinant identity --------------------------------------------------------------------


def criterion_6():
    with Criterion(6, 30) as c:
        recs = run_suite("lemma45", 60, seed=5, cfg=CFG)
    ok = sum(r["pass"] for r in recs)
    return c.line(ok == len(recs) and max(r["dim"] for r in recs) <= 5,
                  f"WD determinant identity: {ok}/{len(recs)} (every fourth is Sp(n) twisted, n <= 4)")


# -- 7: closed forms ------------------------------------------------------------------------------------------------


def _unramified_closed_form(R, q, a):
    return SFraction(laurent_poly(R, [0, -q * a, q * a * a]), laurent_poly(R, [1, -q * a]))


def criterion_7():
    checks = []
    with Criterion(7) as c:
        Q = parse_ring("Q")
        for q, alpha in itertools.product((3, 5, 7, 9), (1, 2, -3, "1/2")):
            g = gamma_field(unramified_character(Q, alpha, field_for(q)))
            checks.append(g == _unramified_closed_form(g.base, q, g.base(alpha)))
        F3 = LocalFieldData(3)
        for u in (1, 5, "2/7"):
            K = parse_ring("Cyclotomic(3)")
            a = mk_tame(K, [[K(u)]], [[K(-1)]], F3)
            psi = AdditiveCharacter.standard(K, 3)
            eps = epsilon_character(TameCharacter(K, 1, K(u), K(-1)), psi, F3)
            checks.append(eps == K(u) * gauss_sum(1, F3, ring=K))
            checks.append(gamma_field(a, psi) == monomial(eps, 1))
        K8 = parse_ring("Cyclotomic(8)")
        ind = mk_tame(K8, parse_matrix([["0", "z8"], ["1", "0"]], K8), parse_matrix([["z8", "0"], ["0", "z8^3"]], K8), F3)
        K3 = parse_ring("Cyclotomic(3)")
        dets = (det_t(unramified_character(Q, 2, F3)), det_t(mk_tame(K3, [[K3(1)]], [[K3(-1)]], F3)), det_t(ind))
        checks.append(tuple(dets) == (3, 1, 1))
    return c.line(all(checks), f"{sum(checks)}/{len(checks)} closed forms, det_t = {', '.join(map(str, dets))}")


# -- 8: Swan conductors -----------------------------------------------------------------------------------------------


def criterion_8():
    with Criterion(8, 5) as c:
        tame = load(INPUTS / "unramified_q3.json")
        half = load(INPUTS / "swan_half.json")
        third = load(INPUTS / "swan_third.json")
        results = [swan(tame.filtration, tame.rep.dim) == 0, swan(half.filtration, half.rep.dim) == 1]
        try:
            swan(third.filtration, third.rep.dim)
            results.append(False)
        except NonIntegralSwan:
            results.append(True)
    return c.line(all(results), "tame 0, jump 1/2 gives 1, jump 1/3 raises NonIntegralSwan")


# -- 9: Gauss sums against an independent brute force ---------------------------------------------------------------


class BruteField:
    """F_{p^r} as tuples modulo the first monic irreducible found by search."""

    def __init__(self, p, r):
        self.p, self.r = p, r
        self.mod = next(m for m in itertools.product(range(p), repeat=r) if self._irreducible(m))
        self.elements = list(itertools.product(range(p), repeat=r))
        self.zero = (0,) * r
        self.one = (1,) + (0,) * (r - 1)

    def _mul_raw(self, a, b, mod):
        r, p = len(mod), self.p
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, r - 1, -1):
            c = prod[k]
            if c:
                # x^r = -(mod_0 + mod_1 x + ... + mod_{r-1} x^{r-1})
                for i in range(r):
                    prod[k - r + i] = (prod[k - r + i] - c * mod[i]) % p
        return tuple(prod[:r])

    def _irreducible(self, mod):
        r = len(mod)
        if r == 1:
            return True
        # the quotient is a field iff every nonzero element has an inverse
        elems = [e for e in itertools.product(range(self.p), repeat=r) if any(e)]
        one = (1,) + (0,) * (r - 1)
        for a in elems:
            if not any(self._mul_raw(a, b, mod) == one for b in elems):
                return False
        return True

    def mul(self, a, b):
        return self._mul_raw(a, b, self.mod)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def frob(self, a):
        out = self.one
        for _ in range(self.p):
            out = self.mul(out, a)
        return out

    def trace(self, a):
        acc, y = self.zero, a
        for _ in range(self.r):
            acc = tuple((u + v) % self.p for u, v in zip(acc, y))
            y = self.frob(y)
        assert all(v == 0 for v in acc[1:])
        return acc[0]

    def generator(self):
        Q = self.p ** self.r
        for g in self.elements:
            if not any(g):
                continue
            x, seen = self.one, 0
            while True:
                x = self.mul(x, g)
                seen += 1
                if x == self.one:
                    break
            if seen == Q - 1:
                return g


_brute_cache = {}


def brute_gauss(p, r):
    """(norm check per j, values per j) from the double and single sums."""
    if (p, r) in _brute_cache:
        return _brute_cache[(p, r)]
    F = BruteField(p, r)
    Q = p ** r
    g = F.generator()
    powers = [F.one]
    for _ in range(Q - 2):
        powers.append(F.mul(powers[-1], g))
    log = {x: k for k, x in enumerate(powers)}
    tr = [F.trace(x) for x in powers]
    K = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(p, Q - 1))))
    zq, zp = K.root_of_unity(Q - 1), K.root_of_unity(p)
    zq_pow = [zq ** k for k in range(Q - 1)]
    zp_pow = [zp ** t for t in range(p)]
    pair = Counter()
    for a in range(Q - 1):
        for b in range(Q - 1):
            diff = F.sub(powers[a], powers[b])
            t = tr[log[diff]] if any(diff) else 0
            pair[((a - b) % (Q - 1), t)] += 1
    norms, values = {}, {}
    for j in range(1, Q - 1):
        total = K.zero
        for (e, t), n in pair.items():
            total = total + zq_pow[e * j % (Q - 1)] * zp_pow[t] * n
        norms[j] = total == Q
        single = K.zero
        for k in range(Q - 1):
            single = single + zq_pow[-k * j % (Q - 1)] * zp_pow[tr[k]]
        values[j] = single
    _brute_cache[(p, r)] = (norms, values, K)
    return _brute_cache[(p, r)]


def criterion_9():
    with Criterion(9, 30) as c:
        cases = [(q, d) for q in (2, 3, 4, 5, 7, 8, 9) for d in range(1, 7) if q ** d <= 81]
        n_chars, all_ok = 0, True
        for q, d in cases:
            F = field_for(q)
            norms, values, K = brute_gauss(F.p, F.f * d)
            n_chars += len(norms)
            ours = [gauss_sum(j, F, d) for j in range(1, q ** d - 1)]
            same_ring = all(v.ring is K for v in ours)
            multiset = Counter(str(v) for v in ours) == Counter(str(v) for v in values.values())
            all_ok = all_ok and all(norms.values()) and same_ring and multiset
    return c.line(all_ok, f"{len(cases)} (q, d) pairs, {n_chars} nontrivial characters: g conj(g) = q^d and value multisets agree")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


def _check(fn, report):
    line, ok = fn()
    report(line)
    print(line)
    assert ok, line


def test_criterion_1(report):
    _check(criterion_1, report)


def test_criterion_2(report):
    _check(criterion_2, report)


def test_criterion_3(report):
    _check(criterion_3, report)


def test_criterion_4(report):
    _check(criterion_4, report)


def test_criterion_5(report):
    _check(criterion_5, report)


def test_criterion_6(report):
    _check(criterion_6, report)


def test_criterion_7(report):
    _check(criterion_7, report)


def test_criterion_8(report):
    _check(criterion_8, report)


def test_criterion_9(report):
    _check(criterion_9, report)


if __name__ == "__main__":
    failures = 0
    for fn in CRITERIA:
        line, ok = fn()
        print(line, flush=True)
        failures += not ok
    raise SystemExit(1 if failures else 0)
