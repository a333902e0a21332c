"""The right quaternionic space H^{n,1} with its signature-(n,1) Hermitian form.

Vectors are float arrays of shape (n+1, 4); the form is
``<v, w> = sum_{i<=n} conj(v_i) w_i - conj(v_{n+1}) w_{n+1}``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, DimensionError, SignError
from .quaternion import (
    Quaternion,
    qabs2,
    qconj,
    qmul,
    qrank,
    qsingular_values,
    qsolve,
    scale_right,
)


class Sign(str, enum.Enum):
    NEGATIVE = "negative"
    ISOTROPIC = "isotropic"
    POSITIVE = "positive"

    @property
    def value_int(self) -> int:
        return {"negative": -1, "isotropic": 0, "positive": 1}[self.value]


def as_hvector(coords, dim: int | None = None) -> np.ndarray:
    """Coerce coordinates into a (dim, 4) array.

    Each coordinate may be a Quaternion, a real or complex number, or a
    4-sequence ``[a0, a1, a2, a3]``.
    """
    if isinstance(coords, ProjectivePoint):
        v = coords.rep
    elif isinstance(coords, np.ndarray) and coords.ndim == 2 and coords.shape[1] == 4:
        v = coords.astype(float, copy=False)
    else:
        v = np.array([Quaternion.coerce(c).to_array() for c in coords], dtype=float)
        v = v.reshape(-1, 4)
    if dim is not None and v.shape[0] != dim:
        raise DimensionError(f"expected {dim} coordinates, got {v.shape[0]}")
    return v


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    rep: np.ndarray
    sign: Sign

    def __repr__(self) -> str:
        return f"ProjectivePoint(sign={self.sign.value}, rep={self.rep.tolist()})"


def lift(p) -> np.ndarray:
    return p.rep if isinstance(p, ProjectivePoint) else as_hvector(p)


@dataclass(frozen=True)
class HermitianSpace:
    n: int = 2
    eps_isotropy: float = 1e-9
    _j: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DimensionError(f"n must be a positive integer, got {self.n}")
        j = np.ones(self.n + 1)
        j[-1] = -1.0
        object.__setattr__(self, "_j", j)

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def form(self) -> np.ndarray:
        """Diagonal of J = diag(1, ..., 1, -1)."""
        return self._j.copy()

    def vector(self, coords) -> np.ndarray:
        return as_hvector(coords, self.dim)

    def _pair(self, v, w) -> tuple[np.ndarray, np.ndarray]:
        v, w = lift(v), lift(w)
        if v.shape != (self.dim, 4) or w.shape != (self.dim, 4):
            raise DimensionError(
                f"vectors must have {self.dim} coordinates, got {v.shape[0]} and {w.shape[0]}"
            )
        return v, w

    def herm_array(self, v, w) -> np.ndarray:
        v, w = self._pair(v, w)
        return (qmul(qconj(v), w) * self._j[:, None]).sum(axis=0)

    def herm(self, v, w) -> Quaternion:
        return Quaternion.from_array(self.herm_array(v, w))

    def norm2(self, v) -> float:
        """The real number <v, v>."""
        v = lift(v)
        return float(np.dot(qabs2(v), self._j))

    def gram(self, vectors) -> np.ndarray:
        """(m, m, 4) array of pairwise products <v_i, v_j>."""
        vs = np.stack([lift(v) for v in vectors])
        if vs.shape[1:] != (self.dim, 4):
            raise DimensionError(f"vectors must have {self.dim} coordinates")
        prods = qmul(qconj(vs)[:, None, :, :], vs[None, :, :, :])
        g = (prods * self._j[None, None, :, None]).sum(axis=2)
        # diagonal entries are real by construction
        idx = np.arange(len(vs))
        g[idx, idx, 1:] = 0.0
        return g

    def classify(self, v, eps: float | None = None) -> Sign:
        v = lift(v)
        if v.shape != (self.dim, 4):
            raise DimensionError(f"vector must have {self.dim} coordinates")
        e2 = float(qabs2(v).sum())
        if e2 == 0.0:
            raise DegenerateError("the zero vector does not define a projective point")
        eps = self.eps_isotropy if eps is None else eps
        q = self.norm2(v) / e2
        if abs(q) <= eps:
            return Sign.ISOTROPIC
        return Sign.NEGATIVE if q < 0 else Sign.POSITIVE

    def point(self, v, eps: float | None = None) -> ProjectivePoint:
        v = self.vector(lift(v))
        return ProjectivePoint(v, self.classify(v, eps))

    def bergman_distance(self, p, q) -> float:
        """Distance between two negative points.

        Equal to arccosh(|<v,w>| / sqrt(<v,v><w,w>)); evaluated through the
        component of ``v`` orthogonal to ``w`` so that nearby points do not
        lose precision.
        """
        v, w = self._pair(p, q)
        for x in (v, w):
            if self.classify(x) is not Sign.NEGATIVE:
                raise SignError("Bergman distance needs two negative points")
        ww = self.norm2(w)
        coef = Quaternion.from_array(self.herm_array(w, v)) / ww
        x = v - scale_right(w, coef)
        s = -self.norm2(x) / self.norm2(v)
        return math.asinh(math.sqrt(max(s, 0.0)))

    def project_onto_span(self, v, basis) -> np.ndarray:
        """Form-orthogonal projection of ``v`` onto the right span of ``basis``."""
        v = self.vector(lift(v))
        b = np.stack([self.vector(lift(x)) for x in basis])
        g = self.gram(b)
        s = qsingular_values(g)
        if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
            raise DegenerateError("basis spans a degenerate subspace")
        rhs = np.stack([self.herm_array(x, v) for x in b])[:, None, :]
        c = qsolve(g, rhs)[:, 0, :]
        return qmul(b, c[:, None, :]).sum(axis=0)

    def distance_to_span(self, p, basis) -> float:
        """Distance from a negative point to the totally geodesic span of ``basis``."""
        v = self.vector(lift(p))
        if self.classify(v) is not Sign.NEGATIVE:
            raise SignError("distance to a subspace needs a negative point")
        r = v - self.project_onto_span(v, basis)
        s = -self.norm2(r) / self.norm2(v)
        return math.asinh(math.sqrt(max(s, 0.0)))

    def independent_subset(self, vectors, tol: float = 1e-9) -> list[int]:
        """Indices of a greedily chosen right-linearly independent subset."""
        vs = [lift(v) for v in vectors]
        if vs and qrank(np.stack(vs), tol) == len(vs):
            return list(range(len(vs)))
        chosen: list[int] = []
        for k, v in enumerate(vs):
            trial = np.stack([vs[i] for i in chosen] + [v])
            if qrank(trial, tol) == len(chosen) + 1:
                chosen.append(k)
        return chosen

    def regular(self, vectors, eps: float = 1e-9) -> bool:
        """Whether the right span of ``vectors`` is non-degenerate for the form.

        The Gram matrix of an independent spanning subset is tested through the
        singular values of its complex adjoint.
        """
        vs = [lift(v) for v in vectors]
        idx = self.independent_subset(vs)
        if not idx:
            return False
        sub = [vs[i] / math.sqrt(float(qabs2(vs[i]).sum())) for i in idx]
        s = qsingular_values(self.gram(sub))
        return bool(s[-1] > eps * s[0])


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)


def random_nonzero_quaternion(rng: np.random.Generator) -> np.ndarray:
    return random_unit_quaternion(rng) * math.exp(rng.uniform(-1.0, 1.0))


def random_vector(space: HermitianSpace, sign: Sign | str, rng: np.random.Generator,
                  spread: float = 2.0) -> np.ndarray:
    """Random lift of a point of the requested sign, with a random right scaling."""
    sign = Sign(sign)
    n = space.n
    direction = rng.normal(size=(n, 4))
    direction /= np.linalg.norm(direction)
    t = random_unit_quaternion(rng)
    s = rng.uniform(0.0, spread)
    if sign is Sign.NEGATIVE:
        head, tail = math.sinh(s), math.cosh(s)
    elif sign is Sign.POSITIVE:
        head, tail = math.cosh(s), math.sinh(s)
    else:
        head = tail = 1.0
    v = np.vstack([direction * head, (t * tail)[None, :]])
    return qmul(v, random_nonzero_quaternion(rng))


def random_rescale(vectors, rng: np.random.Generator) -> list[np.ndarray]:
    """Right-multiply each lift by an independent random nonzero quaternion."""
    return [qmul(lift(v), random_nonzero_quaternion(rng)) for v in vectors]
