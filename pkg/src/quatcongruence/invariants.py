"""Numerical invariants of point pairs and triples.

All functions accept lifts (arrays, coordinate lists, or ProjectivePoints) and
are independent of the chosen lifts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classes import TripleClass, classify_triple
from .errors import DegenerateError, DomainError, SignError
from .hermspace import HermitianSpace, Sign, lift
from .quaternion import ComplexRep, Quaternion, complex_rep, qabs2, qmul, to_complex_matrix

ISO, NEG, POS = Sign.ISOTROPIC, Sign.NEGATIVE, Sign.POSITIVE

ANGLE_SLACK = 1e-9


def _lifts(space, points):
    return [space.vector(lift(p)) for p in points]


def _require(space, vs, allowed, what):
    for k, v in enumerate(vs):
        s = space.classify(v)
        if s not in allowed:
            raise SignError(f"{what}: point {k + 1} is {s.value}")


def _triple_product_gram(g: np.ndarray) -> Quaternion:
    return Quaternion.from_array(qmul(qmul(g[0, 1], g[1, 2]), g[2, 0]))


def triple_product(space: HermitianSpace, v1, v2, v3) -> Quaternion:
    """``<v1,v2><v2,v3><v3,v1>``, multiplied left to right."""
    return _triple_product_gram(space.gram(_lifts(space, (v1, v2, v3))))


def cartan(space: HermitianSpace, p1, p2, p3) -> float:
    """Quaternionic Cartan invariant ``arccos(-Re H / |H|)`` of an isotropic/negative triple.

    Evaluated as ``atan2(|Im H|, -Re H)``, which agrees with the arccos form
    and keeps full precision near 0 and pi/2.
    """
    vs = _lifts(space, (p1, p2, p3))
    _require(space, vs, (ISO, NEG), "Cartan invariant needs isotropic or negative points")
    h = _triple_product_gram(space.gram(vs))
    if abs(h) == 0.0:
        raise DegenerateError("triple product vanishes")
    value = math.atan2(h.imag_abs(), -h.real)
    if value > math.pi / 2 + ANGLE_SLACK:
        raise DomainError(f"Cartan value {value!r} exceeds pi/2; the triple product has Re H > 0")
    return value


def _negative_normalized_h(space, vs) -> tuple[Quaternion, float]:
    g = space.gram(vs)
    diag = g[0, 0, 0] * g[1, 1, 0] * g[2, 2, 0]
    return _triple_product_gram(g), float(diag)


def sigma_star(space: HermitianSpace, p1, p2, p3, raw: bool = False) -> float:
    """``-Re H`` on lifts normalized to ``<w,w> = -1``; non-negative.

    ``raw=True`` returns ``-Re(H / (<v1,v1><v2,v2><v3,v3>))`` instead, which
    is the same quantity with the opposite sign.
    """
    vs = _lifts(space, (p1, p2, p3))
    _require(space, vs, (NEG,), "sigma* needs negative points")
    h, diag = _negative_normalized_h(space, vs)
    if raw:
        return -h.real / diag
    return -h.real / abs(diag)


def tau_star(space: HermitianSpace, p1, p2, p3) -> ComplexRep:
    vs = _lifts(space, (p1, p2, p3))
    _require(space, vs, (NEG,), "tau* needs negative points")
    h, _ = _negative_normalized_h(space, vs)
    return complex_rep(h / abs(h))


def d_invariant(space: HermitianSpace, q1, q2) -> float:
    """``<v1,v2><v2,v1> / (<v1,v1><v2,v2>)`` for two non-isotropic points."""
    v1, v2 = _lifts(space, (q1, q2))
    _require(space, (v1, v2), (NEG, POS), "d-invariant needs non-isotropic points")
    h = space.herm(v1, v2)
    return h.norm2() / (space.norm2(v1) * space.norm2(v2))


@dataclass(frozen=True)
class PairGeometry:
    kind: str  # "concurrent", "asymptotic" or "ultra-parallel"
    d: float
    angle: float | None = None
    distance: float | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "d": self.d, "angle": self.angle, "distance": self.distance}


def pair_geometry_from_d(d: float, tol: float = 1e-9) -> PairGeometry:
    if d < 1.0 - tol:
        return PairGeometry("concurrent", d, angle=math.acos(math.sqrt(max(d, 0.0))))
    if d <= 1.0 + tol:
        return PairGeometry("asymptotic", d)
    return PairGeometry("ultra-parallel", d, distance=math.acosh(math.sqrt(d)))


def pair_geometry(space: HermitianSpace, q1, q2, tol: float = 1e-9) -> PairGeometry:
    """Relative position of the hyperplanes polar to two positive points."""
    v1, v2 = _lifts(space, (q1, q2))
    _require(space, (v1, v2), (POS,), "pair geometry needs positive points")
    return pair_geometry_from_d(d_invariant(space, v1, v2), tol)


def angular_A(space: HermitianSpace, q1, q2, q3) -> float:
    """Argument in [0, pi] of the canonical complex form of ``H / |H|``."""
    vs = _lifts(space, (q1, q2, q3))
    _require(space, vs, (POS,), "angular invariant needs positive points")
    h = _triple_product_gram(space.gram(vs))
    if abs(h) <= 1e-12 * math.prod(space.norm2(v) for v in vs):
        raise DegenerateError("angular invariant needs a generic triple (no orthogonal pair)")
    return math.atan2(h.imag_abs(), h.real)


def eta_quaternion(space: HermitianSpace, p1, p2, p3) -> Quaternion:
    """``<v1,v3><v3,v2><v1,v2>^-1 <v3,v3>^-1`` before canonicalization."""
    vs = _lifts(space, (p1, p2, p3))
    g = space.gram(vs)
    g12 = Quaternion.from_array(g[0, 1])
    g33 = float(g[2, 2, 0])
    n = [math.sqrt(float(qabs2(v).sum())) for v in vs]
    if abs(g12) <= 1e-12 * n[0] * n[1]:
        raise DegenerateError("eta is undefined when the first two points are orthogonal")
    if abs(g33) <= 1e-12 * n[2] * n[2]:
        raise DegenerateError("eta needs a non-isotropic third point")
    return Quaternion.from_array(g[0, 2]) * Quaternion.from_array(g[2, 1]) * g12.inverse() / g33


def eta(space: HermitianSpace, p1, p2, p3) -> ComplexRep:
    return complex_rep(eta_quaternion(space, p1, p2, p3))


def mixed_distance(space: HermitianSpace, p, q) -> float:
    """``<v,w><w,v> / (<v,v><w,w>)`` for a negative ``p`` and a positive ``q``; at most 0."""
    v, w = _lifts(space, (p, q))
    if space.classify(v) is not NEG or space.classify(w) is not POS:
        raise SignError("mixed distance needs a negative point and a positive point")
    return space.herm(v, w).norm2() / (space.norm2(v) * space.norm2(w))


def polar_hyperplane_basis(space: HermitianSpace, q) -> list[np.ndarray]:
    """A basis of the form-orthogonal complement of a positive point."""
    w = space.vector(lift(q))
    if space.classify(w) is not POS:
        raise SignError("polar hyperplanes belong to positive points")
    basis = []
    for k in range(space.dim):
        e = np.zeros((space.dim, 4))
        e[k, 0] = 1.0
        coef = space.herm(w, e) / space.norm2(w)
        basis.append(e - qmul(w, coef.to_array()))
    idx = space.independent_subset(basis)
    return [basis[i] for i in idx]


def distance_to_polar(space: HermitianSpace, p, q) -> float:
    """Distance from a negative point to the hyperplane polar to a positive point."""
    return space.distance_to_span(p, polar_hyperplane_basis(space, q))


@dataclass
class InvariantProfile:
    triple_class: TripleClass
    cartan: float | None = None
    sigma_star: float | None = None
    tau_star: ComplexRep | None = None
    side_lengths: list[float] | None = None
    d_invariants: list[float] | None = None
    angular_A: float | None = None
    eta: ComplexRep | None = None
    eta_quaternion: Quaternion | None = None
    mixed_distances: list[float] | None = None
    flags: list[str] = field(default_factory=list)

    # scalar fields compared by the congruence test (complex ones split into parts)
    def comparable(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for name in ("cartan", "sigma_star", "angular_A"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        for name in ("tau_star", "eta"):
            val = getattr(self, name)
            if val is not None:
                out[f"{name}.re"] = val.re
                out[f"{name}.im"] = val.im
        for name in ("side_lengths", "d_invariants", "mixed_distances"):
            val = getattr(self, name)
            if val is not None:
                for k, x in enumerate(val):
                    out[f"{name}[{k}]"] = x
        return out

    def to_json(self) -> dict:
        def rep(x):
            return None if x is None else x.to_list()

        return {
            "class": self.triple_class.to_json(),
            "cartan": self.cartan,
            "sigma_star": self.sigma_star,
            "tau_star": rep(self.tau_star),
            "side_lengths": self.side_lengths,
            "d_invariants": self.d_invariants,
            "angular_A": self.angular_A,
            "eta": rep(self.eta),
            "eta_quaternion": rep(self.eta_quaternion),
            "mixed_distances": self.mixed_distances,
            "flags": list(self.flags),
        }


def profile(space: HermitianSpace, p1, p2, p3, raw_sigma: bool = False,
            cls: TripleClass | None = None) -> InvariantProfile:
    """Invariants attached to the triple's configuration class.

    The triple is reordered canonically for its class before evaluation; the
    reordering is recorded in ``triple_class.order``.
    """
    vs = _lifts(space, (p1, p2, p3))
    cls = classify_triple(space, *vs) if cls is None else cls
    a, b, c = cls.reorder(vs)
    prof = InvariantProfile(cls)
    tag = cls.tag
    if not cls.generic:
        prof.flags.append("non-generic")

    if tag == "ideal":
        prof.cartan = cartan(space, a, b, c)
    elif tag == "negative":
        prof.side_lengths = [
            space.bergman_distance(a, b),
            space.bergman_distance(a, c),
            space.bergman_distance(b, c),
        ]
        prof.sigma_star = sigma_star(space, a, b, c, raw=raw_sigma)
        prof.tau_star = tau_star(space, a, b, c)
        if raw_sigma:
            prof.flags.append("raw-sigma")
    elif tag == "positive":
        prof.d_invariants = [
            d_invariant(space, a, b),
            d_invariant(space, a, c),
            d_invariant(space, b, c),
        ]
        if cls.generic:
            prof.angular_A = angular_A(space, a, b, c)
        if not cls.regular:
            prof.flags.append("non-regular")
        elif _positive_definite_span(space, (a, b, c)):
            prof.flags.append("positive-definite-span")
    else:
        try:
            q = eta_quaternion(space, a, b, c)
            prof.eta_quaternion = q
            prof.eta = complex_rep(q)
        except DegenerateError:
            prof.flags.append("eta-undefined")
        if tag in ("ideal+two-negative", "ideal+two-positive"):
            prof.d_invariants = [d_invariant(space, b, c)]
        elif tag == "ideal+negative+positive":
            prof.mixed_distances = [mixed_distance(space, b, c)]
        elif tag == "negative+two-positive":
            prof.mixed_distances = [mixed_distance(space, a, b), mixed_distance(space, a, c)]
        elif tag == "positive+two-negative":
            prof.mixed_distances = [mixed_distance(space, b, a), mixed_distance(space, c, a)]
        if tag in ("ideal+two-positive", "ideal+negative+positive"):
            prof.flags.append("extrapolated-pattern")
    return prof


def _positive_definite_span(space, vs) -> bool:
    g = space.gram(vs)
    w = np.linalg.eigvalsh(to_complex_matrix(g))
    scale = max(abs(w).max(), 1e-300)
    return bool(w.min() > 1e-9 * scale)
