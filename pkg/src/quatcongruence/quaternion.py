"""Quaternion scalars, similarity classes, and array kernels.

Conventions: ``a = a0 + a1 i + a2 j + a3 k`` with ``i^2 = j^2 = k^2 = -1`` and
``ij = k, jk = i, ki = j``.  Quaternionic vectors and matrices are stored as
float arrays whose last axis holds the four coefficients.

Matrix algebra goes through the complex adjoint ``chi``: writing a quaternion
matrix as ``A = Z + W j`` with complex ``Z, W``,

    chi(A) = [[Z, W], [-conj(W), conj(Z)]]

which is multiplicative and satisfies ``chi(A*) = chi(A)^H``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Quaternion:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        a0, a1, a2, a3 = (float(x) for x in arr)
        return cls(a0, a1, a2, a3)

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        """Accept a Quaternion, a real or complex number, or a 4-sequence."""
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, (Real, np.floating, np.integer)):
            return cls(float(x))
        if isinstance(x, (complex, np.complexfloating)):
            return cls(float(x.real), float(x.imag))
        return cls.from_array(x)

    def to_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3])

    def to_list(self) -> list[float]:
        return [self.a0, self.a1, self.a2, self.a3]

    @property
    def real(self) -> float:
        return self.a0

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.a1, self.a2, self.a3)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm2(self) -> float:
        return self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def imag_abs(self) -> float:
        return math.sqrt(self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3)

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        return Quaternion(self.a0 / n2, -self.a1 / n2, -self.a2 / n2, -self.a3 / n2)

    def unit(self) -> "Quaternion":
        return self / abs(self)

    def is_close(self, other, tol: float = DEFAULT_TOL) -> bool:
        o = Quaternion.coerce(other)
        return abs(self - o) <= tol

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __add__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2, self.a3 + o.a3)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.a0 - o.a0, self.a1 - o.a1, self.a2 - o.a2, self.a3 - o.a3)

    def __rsub__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) - self

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (Real, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
        o = Quaternion.coerce(other)
        a0, a1, a2, a3 = self.a0, self.a1, self.a2, self.a3
        b0, b1, b2, b3 = o.a0, o.a1, o.a2, o.a3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other) -> "Quaternion":
        # reals commute; anything else is coerced and multiplied on the left
        return Quaternion.coerce(other) * self

    def __truediv__(self, other) -> "Quaternion":
        """Right division ``a / b = a b^-1``."""
        if isinstance(other, (Real, np.floating, np.integer)):
            return self * (1.0 / float(other))
        return self * Quaternion.coerce(other).inverse()

    def __repr__(self) -> str:
        return f"Quaternion({self.a0!r}, {self.a1!r}, {self.a2!r}, {self.a3!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class ComplexRep:
    """Canonical complex member ``re + im*i`` (``im >= 0``) of a similarity class."""

    re: float
    im: float

    def __post_init__(self):
        if self.im < 0:
            raise ValueError(f"canonical representative needs im >= 0, got {self.im}")

    @property
    def arg(self) -> float:
        return math.atan2(self.im, self.re)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.re, self.im)

    def to_list(self) -> list[float]:
        return [self.re, self.im]


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion.coerce(a) * Quaternion.coerce(b)


def similar(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Similarity test: equal real parts and equal moduli."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    a, b = Quaternion.coerce(a), Quaternion.coerce(b)
    return abs(a.real - b.real) <= tol and abs(abs(a) - abs(b)) <= tol


def complex_rep(a) -> ComplexRep:
    a = Quaternion.coerce(a)
    return ComplexRep(a.real, a.imag_abs())


def conjugator_to_complex(a) -> Quaternion:
    """Unit ``lam`` with ``lam^-1 a lam == complex_rep(a)``.

    Built as the rotation carrying ``i`` onto the unit imaginary direction of
    ``a``.  Directions in the half-space ``a1 < 0`` are first carried onto ``-i``
    and then flipped with ``j`` (``j^-1 (-i) j = i``), which keeps the formula
    away from its singular direction.
    """
    a = Quaternion.coerce(a)
    s = a.imag_abs()
    if s == 0.0:
        return ONE
    u1, u2, u3 = a.a1 / s, a.a2 / s, a.a3 / s
    if u1 >= 0.0:
        return Quaternion(1.0 + u1, 0.0, -u3, u2).unit()
    mu = Quaternion(1.0 - u1, 0.0, u3, -u2).unit()
    return mu * J


# ---------------------------------------------------------------------------
# array kernels

def as_qarray(x) -> np.ndarray:
    """Float array with a trailing axis of length 4."""
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (4,):
        raise ValueError(f"expected trailing axis of length 4, got shape {arr.shape}")
    return arr


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting Hamilton product over the last axis."""
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qabs2(a: np.ndarray) -> np.ndarray:
    return np.sum(np.asarray(a) ** 2, axis=-1)


def qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of quaternion matrices of shapes (m, k, 4) and (k, l, 4)."""
    return qmul(a[:, :, None, :], b[None, :, :, :]).sum(axis=1)


def qmatvec(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return qmul(a, v[None, :, :]).sum(axis=1)


def qadjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a (m, k, 4) quaternion matrix."""
    return qconj(np.swapaxes(a, 0, 1))


def scale_right(v: np.ndarray, lam) -> np.ndarray:
    """Right scalar multiplication ``v * lam`` applied coordinatewise."""
    return qmul(v, Quaternion.coerce(lam).to_array())


def scale_left(lam, v: np.ndarray) -> np.ndarray:
    return qmul(Quaternion.coerce(lam).to_array(), v)


def to_complex_matrix(a: np.ndarray) -> np.ndarray:
    """Complex adjoint of a (m, k, 4) quaternion matrix, shape (2m, 2k)."""
    z = a[..., 0] + 1j * a[..., 1]
    w = a[..., 2] + 1j * a[..., 3]
    return np.block([[z, w], [-w.conj(), z.conj()]])


def from_complex_matrix(m: np.ndarray) -> np.ndarray:
    """Inverse of :func:`to_complex_matrix` (reads the top block row)."""
    rows, cols = m.shape[0] // 2, m.shape[1] // 2
    z = m[:rows, :cols]
    w = m[:rows, cols:]
    return np.stack([z.real, z.imag, w.real, w.imag], axis=-1)


def qsolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a x = b`` for quaternion matrices (b of shape (m, l, 4))."""
    x = np.linalg.solve(to_complex_matrix(a), to_complex_matrix(b))
    return from_complex_matrix(x)


def qinv(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    eye = np.zeros((n, n, 4))
    eye[np.arange(n), np.arange(n), 0] = 1.0
    return qsolve(a, eye)


def qsingular_values(a: np.ndarray) -> np.ndarray:
    """Singular values of a quaternion matrix (each listed once)."""
    s = np.linalg.svd(to_complex_matrix(a), compute_uv=False)
    return s[::2]


def qrank(columns: np.ndarray, tol: float = 1e-9) -> int:
    """Right-rank of a list of quaternion vectors given as shape (m, N, 4)."""
    if len(columns) == 0:
        return 0
    norms = np.sqrt(qabs2(columns).sum(axis=1))
    if np.any(norms == 0):
        columns = columns[norms > 0]
        norms = norms[norms > 0]
        if len(columns) == 0:
            return 0
    unit = columns / norms[:, None, None]
    s = qsingular_values(np.swapaxes(unit, 0, 1))
    return int(np.sum(s > tol * s[0]))
