"""Moduli of regular generic triples of quaternionic hyperplanes.

A triple of polar (positive) points in normal form has Gram

    [[1,  r1,            r2          ],
     [r1, 1,             r3 e^{i a}  ],
     [r2, r3 e^{-i a},   1           ]]

with ``r1 = sqrt d12``, ``r2 = sqrt d13``, ``r3 = sqrt d23`` and ``a`` the
angular invariant.  The tuple is realizable by a regular triple exactly when
this matrix has signature (2, 1), i.e. negative determinant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, InputError
from .gram import realize_gram
from .hermspace import HermitianSpace, ProjectivePoint
from .invariants import angular_A, d_invariant

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class ModuliPoint:
    r1: float
    r2: float
    r3: float
    alpha: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.alpha)

    def to_json(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "r3": self.r3, "alpha": self.alpha,
                "det": det_normalized(self)}


def det_normalized(m: ModuliPoint) -> float:
    """Determinant of the normalized Gram, ``1 - (r1^2 + r2^2 + r3^2) + 2 r1 r2 r3 cos a``."""
    return 1.0 - (m.r1 ** 2 + m.r2 ** 2 + m.r3 ** 2) + 2.0 * m.r1 * m.r2 * m.r3 * math.cos(m.alpha)


def normalized_gram(m: ModuliPoint) -> np.ndarray:
    z = m.r3 * complex(math.cos(m.alpha), math.sin(m.alpha))
    return np.array(
        [[1.0, m.r1, m.r2], [m.r1, 1.0, z], [m.r2, z.conjugate(), 1.0]], dtype=complex
    )


def member(m: ModuliPoint) -> bool:
    return (
        m.r1 > 0 and m.r2 > 0 and m.r3 > 0
        and 0.0 < m.alpha <= math.pi
        and det_normalized(m) <= 0.0
    )


def realize(space: HermitianSpace, m: ModuliPoint, tol: float = BOUNDARY_TOL) -> list[ProjectivePoint]:
    """Three positive points whose d-invariants and angular invariant are ``m``."""
    if not member(m):
        raise DegenerateError(f"{m} is not in the moduli set")
    det = det_normalized(m)
    if det >= -tol:
        raise DegenerateError(f"boundary point (det = {det:.3g}) has no regular realization")
    g = normalized_gram(m)
    w = np.linalg.eigvalsh(g)
    if (w < 0).sum() != 1:
        raise DegenerateError(f"normalized Gram has eigenvalues {w}, not signature (2, 1)")
    return [space.point(v) for v in realize_gram(space, g)]


def invariants_of(space: HermitianSpace, q1, q2, q3) -> ModuliPoint:
    """Inverse of :func:`realize` on regular generic positive triples."""
    return ModuliPoint(
        math.sqrt(d_invariant(space, q1, q2)),
        math.sqrt(d_invariant(space, q1, q3)),
        math.sqrt(d_invariant(space, q2, q3)),
        angular_A(space, q1, q2, q3),
    )


def sample_with_rate(count: int, seed=None, box: float = 3.0) -> tuple[list[ModuliPoint], float]:
    """Rejection sampling from ``(0, box]^3 x (0, pi]``; returns points and acceptance rate."""
    if count < 0:
        raise InputError("count must be non-negative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    out: list[ModuliPoint] = []
    tried = 0
    while len(out) < count:
        r = box - rng.uniform(0.0, box, size=3)
        a = math.pi - rng.uniform(0.0, math.pi)
        tried += 1
        m = ModuliPoint(float(r[0]), float(r[1]), float(r[2]), a)
        if member(m):
            out.append(m)
    return out, (len(out) / tried if tried else float("nan"))


def sample(count: int, seed=None, box: float = 3.0) -> list[ModuliPoint]:
    return sample_with_rate(count, seed, box)[0]


@dataclass(frozen=True)
class MembershipSlice:
    r1: float
    r2: float
    r3: np.ndarray
    alpha: np.ndarray
    det: np.ndarray  # shape (len(alpha), len(r3))

    @property
    def member(self) -> np.ndarray:
        return self.det <= 0.0


def membership_slice(r1: float, r2: float, r3_max: float = 3.0, resolution: int = 200) -> MembershipSlice:
    """Determinant on a grid of ``(r3, alpha)`` at fixed ``(r1, r2)``."""
    if r1 <= 0 or r2 <= 0:
        raise InputError("r1 and r2 must be positive")
    if resolution < 2:
        raise InputError("resolution must be at least 2")
    r3 = np.linspace(r3_max / resolution, r3_max, resolution)
    alpha = np.linspace(math.pi / resolution, math.pi, resolution)
    rr, aa = np.meshgrid(r3, alpha)
    det = 1.0 - (r1 ** 2 + r2 ** 2 + rr ** 2) + 2.0 * r1 * r2 * rr * np.cos(aa)
    return MembershipSlice(r1, r2, r3, alpha, det)
