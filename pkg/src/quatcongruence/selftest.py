"""Randomized invariance checks behind the ``selftest`` command."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import TAGS
from .congruence import Tolerance, congruent, match_residual, random_triple, randomize, witness
from .hermspace import HermitianSpace
from .invariants import profile

DIMENSIONS = (2, 3, 5)


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    worst: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases} cases, worst {self.worst:.3g}{self.detail}"


def worst_profile_deviation(space, tri_a, tri_b, tol: Tolerance) -> tuple[float, bool]:
    """Largest relative invariant deviation, and whether all stayed within tolerance."""
    va = profile(space, *tri_a).comparable()
    vb = profile(space, *tri_b).comparable()
    if set(va) != set(vb):
        return float("inf"), False
    worst, ok = 0.0, True
    for k in va:
        a, b = va[k], vb[k]
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1.0))
        ok = ok and tol.close(a, b)
    return worst, ok


def invariance_check(tag: str, iters: int, rng: np.random.Generator,
                     tol: Tolerance | None = None, dims=DIMENSIONS) -> CheckResult:
    tol = Tolerance() if tol is None else tol
    worst, ok = 0.0, True
    for k in range(iters):
        space = HermitianSpace(dims[k % len(dims)])
        tri = random_triple(space, tag, rng)
        moved, _ = randomize(space, tri, rng)
        w, good = worst_profile_deviation(space, tri, moved, tol)
        worst = max(worst, w)
        ok = ok and good
    return CheckResult(f"invariance[{tag}]", ok, iters, worst)


def witness_check(tag: str, iters: int, rng: np.random.Generator, dims=DIMENSIONS) -> CheckResult:
    worst, ok = 0.0, True
    for k in range(iters):
        space = HermitianSpace(dims[k % len(dims)])
        tri = random_triple(space, tag, rng)
        moved, _ = randomize(space, tri, rng)
        verdict = bool(congruent(space, tri, moved))
        g = witness(space, tri, moved)
        res = max(g.residual, match_residual(space, g, tri, moved))
        worst = max(worst, res)
        ok = ok and verdict and g.residual <= 1e-9 and res <= 1e-8
    return CheckResult(f"witness[{tag}]", ok, iters, worst)


def run(seed: int = 0, iters: int = 20, tol: Tolerance | None = None) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for tag in TAGS:
        results.append(invariance_check(tag, iters, rng, tol))
        results.append(witness_check(tag, iters, rng))
    return results
