"""Congruence of ordered triples under U(n,1; H), witnesses, and random isometries.

Two ordered triples are compared by first requiring the same sequence of
point signs, then comparing the invariants of their configuration class.
When a class has an orthogonal pair (non-generic) the invariant list no
longer pins the configuration down, and the decision falls back to comparing
canonical Gram normal forms, which is always complete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classes import CANONICAL_SIGNS, TripleClass, classify_triple, projective_residual  # noqa: F401
from .errors import DegenerateError, NotCongruentError
from .gram import complex_normal_form, frobenius, nf_close
from .hermspace import (
    HermitianSpace,
    Sign,
    lift,
    random_rescale,
    random_unit_quaternion,
    random_vector,
)
from .invariants import InvariantProfile, profile
from .quaternion import J, qabs2, qadjoint, qconj, qinv, qmatmul, qmatvec, qmul, qsolve, scale_left

ISO, NEG, POS = Sign.ISOTROPIC, Sign.NEGATIVE, Sign.POSITIVE

ISOMETRY_TOL = 1e-9


@dataclass(frozen=True)
class Tolerance:
    abs: float = 1e-9
    rel: float = 1e-7

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= max(self.abs, self.rel * max(abs(a), abs(b)))


#: classes whose normal forms are sign flips of printed ones
EXTRAPOLATED = ("ideal+two-positive", "ideal+negative+positive")


def _identity(m: int) -> np.ndarray:
    eye = np.zeros((m, m, 4))
    eye[np.arange(m), np.arange(m), 0] = 1.0
    return eye


def form_matrix(space: HermitianSpace) -> np.ndarray:
    jm = _identity(space.dim)
    jm[-1, -1, 0] = -1.0
    return jm


def unitarity_residual(space: HermitianSpace, g: np.ndarray) -> float:
    """``|g* J g - J|_F / |J|_F`` with the quaternionic Frobenius norm."""
    jm = form_matrix(space)
    r = qmatmul(qmatmul(qadjoint(g), jm), g) - jm
    return frobenius(r) / frobenius(jm)


@dataclass(frozen=True, eq=False)
class Isometry:
    matrix: np.ndarray
    space: HermitianSpace

    def apply(self, v) -> np.ndarray:
        return qmatvec(self.matrix, self.space.vector(lift(v)))

    def __call__(self, v) -> np.ndarray:
        return self.apply(v)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(qmatmul(self.matrix, other.matrix), self.space)

    @property
    def residual(self) -> float:
        return unitarity_residual(self.space, self.matrix)

    def to_json(self) -> dict:
        return {"n": self.space.n, "matrix": self.matrix.tolist(), "residual": self.residual}


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_isometry(space: HermitianSpace, seed=None, spread: float = 1.5) -> Isometry:
    """Random element of U(n,1; H), deterministic per seed.

    The last column is a random unit negative vector at distance up to
    ``spread`` from the origin; the remaining columns are random vectors
    orthonormalized in its (positive definite) orthogonal complement.
    """
    rng = _rng(seed)
    n = space.n
    while True:
        s = rng.uniform(0.0, spread)
        direction = rng.normal(size=(n, 4))
        direction /= np.linalg.norm(direction)
        neg = np.vstack([direction * math.sinh(s), random_unit_quaternion(rng)[None, :] * math.cosh(s)])
        cols = []
        ok = True
        for _ in range(n):
            x = rng.normal(size=(n + 1, 4))
            for c, sign in [(neg, -1.0)] + [(c, 1.0) for c in cols]:
                x = x - qmul(c, space.herm_array(c, x) * sign)
            nx = space.norm2(x)
            if nx <= 1e-6 * float(qabs2(x).sum()):
                ok = False
                break
            cols.append(x / math.sqrt(nx))
        if not ok:
            continue
        g = np.stack(cols + [neg], axis=1)
        iso = Isometry(g, space)
        if iso.residual <= 1e-10:
            return iso


def _ordered_lifts(space, triple, cls):
    return cls.reorder([space.vector(lift(p)) for p in triple])


@dataclass
class CongruenceReport:
    verdict: bool
    triple_class: str | None
    invariants_a: InvariantProfile | None
    invariants_b: InvariantProfile | None
    diffs: dict[str, float] = field(default_factory=dict)
    method: str = "invariants"
    flags: list[str] = field(default_factory=list)
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {
            "class": self.triple_class,
            "invariants_a": None if self.invariants_a is None else self.invariants_a.to_json(),
            "invariants_b": None if self.invariants_b is None else self.invariants_b.to_json(),
            "diffs": dict(self.diffs),
            "verdict": self.verdict,
            "method": self.method,
            "flags": list(self.flags),
            "reason": self.reason,
        }


def congruent(space: HermitianSpace, triple_a, triple_b, tol: Tolerance | None = None,
              raw_sigma: bool = False) -> CongruenceReport:
    """Decide whether an isometry carries ``triple_a`` onto ``triple_b`` in order."""
    tol = Tolerance() if tol is None else tol
    ca = classify_triple(space, *triple_a)
    cb = classify_triple(space, *triple_b)
    if ca.signs != cb.signs:
        return CongruenceReport(
            False, None, None, None,
            reason=f"sign sequences differ: {[s.value for s in ca.signs]} vs {[s.value for s in cb.signs]}",
        )
    if ca.tag == "positive" and not (ca.regular and cb.regular):
        raise DegenerateError("positive triples with a degenerate span are not classified by invariants")
    pa = profile(space, *triple_a, raw_sigma=raw_sigma, cls=ca)
    pb = profile(space, *triple_b, raw_sigma=raw_sigma, cls=cb)
    report = CongruenceReport(False, ca.tag, pa, pb)
    if ca.tag in EXTRAPOLATED:
        report.flags.append("extrapolated-pattern")
    for f in pa.flags + pb.flags:
        if f == "positive-definite-span" and f not in report.flags:
            report.flags.append(f)

    va, vb = pa.comparable(), pb.comparable()
    for key in va:
        if key in vb:
            report.diffs[key] = va[key] - vb[key]
    same_keys = set(va) == set(vb)
    inv_ok = same_keys and all(tol.close(va[k], vb[k]) for k in va)

    if ca.generic and cb.generic:
        report.verdict = inv_ok
        if not inv_ok:
            report.reason = "invariants differ" if same_keys else "invariant sets differ"
        return report

    # non-generic: compare canonical normal forms
    report.method = "normal-form"
    na = complex_normal_form(space, _ordered_lifts(space, triple_a, ca), ca)
    nb = complex_normal_form(space, _ordered_lifts(space, triple_b, cb), cb)
    scale = max(frobenius(na.matrix), frobenius(nb.matrix), 1.0)
    report.diffs["normal_form"] = min(
        frobenius(na.matrix - nb.matrix), frobenius(na.matrix - qconj(nb.matrix))
    ) / scale
    report.verdict = nf_close(na.matrix, nb.matrix, max(tol.abs, tol.rel))
    if not report.verdict:
        report.reason = "normal forms differ"
    return report


def orthonormalize(space: HermitianSpace, vectors, count: int, tol: float = 1e-8) -> list[np.ndarray]:
    """Indefinite Gram-Schmidt with pivoting.

    Returns ``count`` mutually form-orthogonal vectors with ``<c,c> = +-1``
    spanning the same (non-degenerate) space as ``vectors``.  At each step the
    candidate with the largest normalized ``|<x,x>|`` is taken; when all are
    nearly isotropic, two candidates are combined into a non-isotropic one.
    """
    cand = [np.array(v, dtype=float) for v in vectors]
    out: list[np.ndarray] = []
    while len(out) < count:
        units = []
        for v in cand:
            nv = math.sqrt(float(qabs2(v).sum()))
            if nv > tol:
                units.append(v / nv)
        if not units:
            raise DegenerateError("ran out of directions while completing a basis")
        ratios = [abs(space.norm2(u)) for u in units]
        k = int(np.argmax(ratios))
        if ratios[k] >= 1e-3:
            z = units[k]
        else:
            best, pair = -1.0, None
            for a in range(len(units)):
                for b in range(a + 1, len(units)):
                    m = math.sqrt(float(qabs2(space.herm_array(units[a], units[b]))))
                    if m > best:
                        best, pair = m, (a, b)
            if pair is None or best <= tol:
                raise DegenerateError("complement is degenerate")
            a, b = pair
            h = space.herm_array(units[a], units[b])
            mu = qconj(h) / math.sqrt(float(qabs2(h)))
            z = units[a] + qmul(units[b], mu)
        nz = space.norm2(z)
        c = z / math.sqrt(abs(nz))
        s = 1.0 if nz > 0 else -1.0
        out.append(c)
        cand = [u - qmul(c, space.herm_array(c, u) * s) for u in units]
    return out


def _complete_basis(space: HermitianSpace, lifts) -> tuple[list[int], list[np.ndarray]]:
    idx = space.independent_subset(lifts)
    basis = [lifts[i] for i in idx]
    g = space.gram(basis)
    comps = []
    for k in range(space.dim):
        e = np.zeros((space.dim, 4))
        e[k, 0] = 1.0
        rhs = np.stack([space.herm_array(b, e) for b in basis])[:, None, :]
        c = qsolve(g, rhs)[:, 0, :]
        comps.append(e - qmul(np.stack(basis), c[:, None, :]).sum(axis=0))
    extra = orthonormalize(space, comps, space.dim - len(basis))
    extra.sort(key=lambda v: -space.norm2(v))
    return idx, extra


def witness(space: HermitianSpace, triple_a, triple_b) -> Isometry:
    """An isometry ``g`` with ``pi(g v_i) = pi(v'_i)`` for the three points."""
    ca = classify_triple(space, *triple_a)
    cb = classify_triple(space, *triple_b)
    if ca.signs != cb.signs:
        raise NotCongruentError("sign sequences differ")
    if not (ca.regular and cb.regular):
        raise DegenerateError("witness construction needs regular spans")
    la = _ordered_lifts(space, triple_a, ca)
    lb = _ordered_lifts(space, triple_b, cb)
    na = complex_normal_form(space, la, ca)
    nb = complex_normal_form(space, lb, cb)
    ua = [qmul(v, s.to_array()) for v, s in zip(la, na.scalings)]
    ub = [qmul(v, s.to_array()) for v, s in zip(lb, nb.scalings)]
    scale = max(frobenius(na.matrix), frobenius(nb.matrix), 1.0)
    prefix = None
    if frobenius(na.matrix - nb.matrix) <= 1e-8 * scale:
        pass
    elif frobenius(qconj(na.matrix) - nb.matrix) <= 1e-8 * scale:
        # v -> j v j^-1 conjugates a complex Gram; projectively it is left
        # multiplication by j, which is itself an isometry
        jq = J.to_array()
        ua = [qmul(qmul(jq, u), qconj(jq)) for u in ua]
        prefix = scale_left(J, _identity(space.dim))
    else:
        raise NotCongruentError("normal forms differ")

    idx, comp_a = _complete_basis(space, ua)
    idx_b = space.independent_subset(ub)
    if idx_b != idx:
        raise DegenerateError("the two triples have different linear dependencies")
    _, comp_b = _complete_basis(space, ub)
    if [space.norm2(c) > 0 for c in comp_a] != [space.norm2(c) > 0 for c in comp_b]:
        raise DegenerateError("complements have different signatures")
    ma = np.stack([ua[i] for i in idx] + comp_a, axis=1)
    mb = np.stack([ub[i] for i in idx] + comp_b, axis=1)
    g = qmatmul(mb, qinv(ma))
    if prefix is not None:
        g = qmatmul(g, prefix)
    iso = Isometry(g, space)
    if iso.residual > ISOMETRY_TOL:
        raise DegenerateError(f"witness fails the isometry check (residual {iso.residual:.3g})")
    return iso


def match_residual(space: HermitianSpace, g: Isometry, triple_a, triple_b) -> float:
    """Largest projective mismatch between ``g`` applied to ``triple_a`` and ``triple_b``."""
    return max(projective_residual(g.apply(a), space.vector(lift(b))) for a, b in zip(triple_a, triple_b))


def random_triple(space: HermitianSpace, tag: str, seed=None) -> list[np.ndarray]:
    """Random lifts of a triple of the given class, listed in canonical order."""
    rng = _rng(seed)
    return [random_vector(space, s, rng) for s in CANONICAL_SIGNS[tag]]


def randomize(space: HermitianSpace, triple, seed=None) -> tuple[list[np.ndarray], Isometry]:
    """Image of a triple under a random isometry, with fresh random lifts."""
    rng = _rng(seed)
    g = random_isometry(space, rng)
    return random_rescale([g.apply(v) for v in triple], rng), g
