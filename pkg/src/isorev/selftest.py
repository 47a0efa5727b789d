"""Scaled-down property suites, runnable from the command line."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import matlin as ml
from .classify import classify
from .isometry import GroupTag, compose, is_involution
from .normalform import normalize
from .oracle import (non_self_dual_angles, planted_element, random_group_element, search_normal_form,
                     self_dual_angles, sp_angles)
from .reverser import conj_tol, inv_tol, involution_factors, verify_witness


@dataclass
class Suite:
    name: str
    passed: int = 0
    failed: int = 0
    notes: list[str] = field(default_factory=list)

    def check(self, ok: bool, note: str = ""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if note and len(self.notes) < 5:
                self.notes.append(note)


def _witness_ok(verdict, n: int) -> bool:
    if verdict.witness is None:
        return not verdict.reversible
    w = verify_witness(verdict.normal_form.element, verdict.witness)
    ok = w.residual_conj <= conj_tol(n)
    if verdict.strongly_reversible:
        ok = ok and verdict.witness_is_involution and w.residual_inv <= inv_tol(n)
    return ok


def _factor_ok(verdict, n: int) -> bool:
    g = verdict.normal_form.element
    h1, h2 = involution_factors(g, verdict.witness)
    return (is_involution(h1, inv_tol(n)) and is_involution(h2, conj_tol(n))
            and compose(h1, h2).distance(g) <= conj_tol(n))


def su_signatures(n_max: int):
    """Every SU block signature ``(pairs, s, t, v_nonzero)`` with ``1 <= n <= n_max``."""
    for pairs, s, t in itertools.product(range(4), (0, 2), range(4)):
        n = 2 * pairs + s + t
        if 1 <= n <= n_max:
            for vnz in ((False, True) if t else (False,)):
                yield pairs, s, t, vnz


def run(n_max: int = 5, trials: int = 200, seed: int = 0, search_trials: int = 2000) -> list[Suite]:
    rng = np.random.default_rng(seed)
    seeds = iter(range(seed * 1_000_003, seed * 1_000_003 + 10**9))
    suites = {k: Suite(k) for k in ("sp-totality", "sp-parity", "u-self-dual", "su-linear",
                                    "su-affine-tree", "normal-form", "factorization",
                                    "oracle-agreement")}

    def record(verdict, n):
        if verdict.strongly_reversible:
            suites["factorization"].check(_factor_ok(verdict, n), str(verdict.normal_form.tag))

    for _ in range(trials):
        for n in range(1, n_max + 1):
            # Sp: reversible always, strong iff parity
            g = random_group_element(GroupTag("sp", True, n), next(seeds))
            v = classify(g)
            suites["sp-totality"].check(v.reversible and _witness_ok(v, n), f"sp n={n}")
            for parity in (True, False):
                g = planted_element(GroupTag("sp", True, n), sp_angles(n, rng, parity), seed=next(seeds))
                v = classify(g)
                suites["sp-parity"].check(v.strongly_reversible == parity and _witness_ok(v, n),
                                          f"sp n={n} parity={parity}")
                record(v, n)
            # U
            for sd in (True, False):
                ang = self_dual_angles(n, rng) if sd else non_self_dual_angles(n, rng)
                g = planted_element(GroupTag("u", True, n), ang, seed=next(seeds))
                v = classify(g)
                suites["u-self-dual"].check(
                    v.reversible == v.strongly_reversible == sd and _witness_ok(v, n), f"u n={n}")
                record(v, n)
            # SU linear
            if n >= 2:
                ang = self_dual_angles(n, rng, special=True)
                v = classify(planted_element(GroupTag("su", False, n), ang, seed=next(seeds)))
                sp = v.normal_form.spectrum
                expect = not (n % 4 == 2 and sp.s == 0 and sp.t == 0)
                suites["su-linear"].check(v.reversible and v.strongly_reversible == expect
                                          and _witness_ok(v, n), f"su n={n}")
                record(v, n)
            # normal form round trip
            for fam in ("sp", "u", "su"):
                g = random_group_element(GroupTag(fam, True, n), next(seeds))
                nf = normalize(g)
                ok = nf.round_trip_residual() <= 1e-8 * n
                if nf.t == 0:
                    ok = ok and ml.maxnorm(nf.v) == 0.0
                suites["normal-form"].check(ok, f"{fam} n={n}")
        # SU affine: every signature once per trial
        for pairs, s, t, vnz in su_signatures(n_max):
            n = 2 * pairs + s + t
            ang = self_dual_angles(n, rng, s=s, t=t, special=True)
            fixed = rng.standard_normal(t) + 1j * rng.standard_normal(t) if vnz else None
            g = planted_element(GroupTag("su", True, n), ang, fixed, seed=next(seeds))
            v = classify(g)
            suites["su-affine-tree"].check(_witness_ok(v, n), f"signature {(pairs, s, t, vnz)}")
            record(v, n)
            found = search_normal_form(v.normal_form, trials=search_trials,
                                       seed=next(seeds)) is not None
            cert = v.obstruction is not None
            suites["oracle-agreement"].check(
                (found == v.strongly_reversible) and (cert != found),
                f"signature {(pairs, s, t, vnz)}: verdict {v.strongly_reversible}, search {found}")
    return list(suites.values())


def report(suites: list[Suite], elapsed: float) -> dict:
    return {
        "suites": {s.name: {"passed": s.passed, "failed": s.failed, "notes": s.notes} for s in suites},
        "all_passed": all(s.failed == 0 for s in suites),
        "runtime_s": round(elapsed, 3),
    }


def main(n_max: int = 5, trials: int = 200, seed: int = 0) -> dict:
    t0 = time.perf_counter()
    suites = run(n_max, trials, seed)
    return report(suites, time.perf_counter() - t0)
