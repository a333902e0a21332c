"""Gram matrices of point triples and their normal forms under ``G -> D* G D``.

Gram matrices are (m, m, 4) quaternion arrays.  A diagonal rescaling
``D = diag(l_1, ..., l_m)`` acts by ``g_ij -> conj(l_i) g_ij l_j``.

The canonical form of a triple Gram is reached in three moves:

1. non-isotropic points are scaled to ``g_ii = +-1``;
2. phases are fixed along a spanning tree of the non-zero off-diagonal
   entries, making each tree entry real and positive;
3. isotropic points (whose modulus is still free) are scaled by positive
   reals so that the leading tree entries become 1, and a last common unit
   scaling brings the remaining cycle entry to a complex number with
   non-negative imaginary part.

After step 3 the only freedom left is the stabilizer of that complex number,
which does not touch any entry, so the form is unique in its class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classes import (
    CANONICAL_SIGNS,
    TripleClass,
    canonical_order,
    check_distinct,
    classify_triple,
    nf_kind,
    orthogonal_pairs,
    tag_for_signs,
)
from .errors import DegenerateError, DimensionError, DomainError, SignError
from .hermspace import HermitianSpace, Sign, lift
from .quaternion import (
    ONE,
    Quaternion,
    conjugator_to_complex,
    qabs2,
    qconj,
    qmul,
)

ISO, NEG, POS = Sign.ISOTROPIC, Sign.NEGATIVE, Sign.POSITIVE

KINDS = (
    "ideal",
    "negative",
    "positive-generic",
    "complex-positive",
    "mixed-4",
    "mixed-5",
    "mixed-6",
    "mixed-7",
)

PATTERN_TOL = 1e-9

_DEFAULT_PRIORITY = ((0, 1), (0, 2), (1, 2))
_PRIORITY = {"mixed-5": ((0, 1), (1, 2), (0, 2))}


def _allowed_signs(kind: str) -> list[tuple[Sign, Sign, Sign]]:
    if kind in ("positive-generic", "complex-positive"):
        return [(POS, POS, POS)]
    return [s for tag, s in CANONICAL_SIGNS.items() if nf_kind(tag) == kind]


def gram_of(space: HermitianSpace, vectors) -> np.ndarray:
    return space.gram(vectors)


def rescale(g: np.ndarray, scalings) -> np.ndarray:
    """``D* G D`` for ``D = diag(scalings)``."""
    lam = np.array([Quaternion.coerce(s).to_array() for s in scalings])
    out = qmul(qmul(qconj(lam)[:, None, :], g), lam[None, :, :])
    idx = np.arange(len(lam))
    out[idx, idx, 1:] = 0.0
    return out


def frobenius(g: np.ndarray) -> float:
    return float(np.sqrt(qabs2(g).sum()))


def is_hermitian(g: np.ndarray, tol: float = 1e-12) -> bool:
    scale = max(frobenius(g), 1.0)
    return bool(np.abs(g - qconj(np.swapaxes(g, 0, 1))).max() <= tol * scale)


def complex_part_defect(g: np.ndarray) -> float:
    """Largest j/k component of any entry, relative to the matrix scale."""
    scale = frobenius(g)
    if scale == 0.0:
        return 0.0
    return float(np.abs(g[..., 2:]).max() / scale)


def to_complex(g: np.ndarray) -> np.ndarray:
    """Complex matrix from a Gram whose entries lie in C(i)."""
    return g[..., 0] + 1j * g[..., 1]


def from_complex(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    out = np.zeros(c.shape + (4,))
    out[..., 0] = c.real
    out[..., 1] = c.imag
    return out


def infer_signs(g: np.ndarray, eps: float = 1e-9) -> tuple[Sign, ...]:
    """Signs of the diagonal, with isotropy judged against each row's size."""
    out = []
    for i in range(g.shape[0]):
        row = math.sqrt(float(qabs2(g[i]).max()))
        d = g[i, i, 0]
        if row == 0.0 or abs(d) <= eps * row:
            out.append(ISO)
        else:
            out.append(NEG if d < 0 else POS)
    return tuple(out)


def infer_zero_mask(g: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    m = g.shape[0]
    rowmax = np.sqrt(qabs2(g).max(axis=1))
    mags = np.sqrt(qabs2(g))
    mask = mags <= tol * np.sqrt(np.outer(rowmax, rowmax))
    mask[np.arange(m), np.arange(m)] = False
    return mask


@dataclass(frozen=True, eq=False)
class NormalForm:
    kind: str
    matrix: np.ndarray
    scalings: list = field(default_factory=list)
    signs: tuple = ()

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_array(self.matrix[i, j])

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": self.matrix.tolist(),
            "scalings": [Quaternion.coerce(s).to_list() for s in self.scalings],
            "signs": [Sign(s).value for s in self.signs],
        }


def _entry(g, lam, i, j) -> np.ndarray:
    return qmul(qmul(qconj(lam[i]), g[i, j]), lam[j])


def canonical_form(g: np.ndarray, kind: str, signs=None, zero_mask=None) -> NormalForm:
    """Canonical representative of the ``D* G D`` class of a 3x3 Gram matrix."""
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3, 4):
        raise DimensionError(f"expected a 3x3 quaternionic Gram matrix, got shape {g.shape}")
    if kind not in KINDS:
        raise ValueError(f"unknown normal form kind {kind!r}")
    signs = infer_signs(g) if signs is None else tuple(Sign(s) for s in signs)
    if signs not in _allowed_signs(kind):
        raise SignError(
            f"signs {[s.value for s in signs]} do not match normal form kind {kind!r}"
        )
    zero = infer_zero_mask(g) if zero_mask is None else np.asarray(zero_mask, dtype=bool)
    priority = _PRIORITY.get(kind, _DEFAULT_PRIORITY)

    lam = np.zeros((3, 4))
    lam[:, 0] = 1.0
    for i, s in enumerate(signs):
        if s is not ISO:
            lam[i, 0] = 1.0 / math.sqrt(abs(g[i, i, 0]))

    # phases along a spanning forest of the non-zero entries
    visited: list[int] = []
    tree: list[tuple[int, int]] = []
    while len(visited) < 3:
        grown = False
        for a, b in priority:
            if zero[a, b] or ((a in visited) == (b in visited)):
                continue
            old, new = (a, b) if a in visited else (b, a)
            cur = _entry(g, lam, old, new)
            lam[new] = qmul(lam[new], qconj(cur) / math.sqrt(float(qabs2(cur))))
            visited.append(new)
            tree.append((a, b))
            grown = True
            break
        if not grown:
            root = next(k for k in range(3) if k not in visited)
            visited.append(root)

    # positive real scalings of isotropic points
    iso = [i for i, s in enumerate(signs) if s is ISO]
    if iso:
        rows, rhs = [], []
        for a, b in priority:
            if len(rows) == len(iso):
                break
            if zero[a, b]:
                continue
            row = np.zeros(len(iso))
            for e in (a, b):
                if e in iso:
                    row[iso.index(e)] += 1.0
            if not row.any():
                continue
            trial = np.array(rows + [row])
            if np.linalg.matrix_rank(trial) == len(trial):
                rows.append(row)
                mag = math.sqrt(float(qabs2(_entry(g, lam, a, b))))
                rhs.append(-math.log(mag))
        if rows:
            logt = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)[0]
            for k, i in enumerate(iso):
                lam[i] *= math.exp(logt[k])

    # common unit scaling turning the cycle entry into canonical complex form
    cycle = [e for e in priority if e not in tree and not zero[e]]
    if cycle:
        a, b = cycle[0]
        mu = conjugator_to_complex(Quaternion.from_array(_entry(g, lam, a, b))).to_array()
        lam = qmul(lam, mu)

    scalings = [Quaternion.from_array(x) for x in lam]
    return NormalForm(kind, rescale(g, scalings), scalings, signs)


def normalize_negative(g: np.ndarray) -> NormalForm:
    g = np.asarray(g, dtype=float)
    if not np.all(g[np.arange(3), np.arange(3), 0] < 0):
        raise SignError("normalize_negative needs a negative diagonal")
    return canonical_form(g, "negative", (NEG, NEG, NEG))


def normalize_positive_generic(g: np.ndarray) -> NormalForm:
    g = np.asarray(g, dtype=float)
    if not np.all(g[np.arange(3), np.arange(3), 0] > 0):
        raise SignError("normalize_positive_generic needs a positive diagonal")
    if infer_zero_mask(g).any():
        raise DegenerateError("positive triple is not generic (an orthogonal pair)")
    return canonical_form(g, "positive-generic", (POS, POS, POS), np.zeros((3, 3), bool))


def pattern_holds(nf: NormalForm, tol: float = PATTERN_TOL, generic: bool = True) -> bool:
    """Entry pattern of the normal form kind, on a unit-Frobenius scale.

    With ``generic=False`` only the kind-independent checks are made: complex
    entries with non-negative i-part above the diagonal, and diagonal entries in {-1, 0, 1}.
    """
    m = nf.matrix
    t = tol * max(frobenius(m), 1.0)

    def close(q, target):
        return bool(math.sqrt(float(qabs2(q - np.array(target, dtype=float)))) <= t)

    if not is_hermitian(m, tol):
        return False
    upper = m[np.triu_indices(3, 1)]
    if np.abs(m[..., 2:]).max() > t or upper[:, 1].min() < -t:
        return False
    target_diag = {ISO: 0.0, NEG: -1.0, POS: 1.0}
    for i, s in enumerate(nf.signs):
        if abs(m[i, i, 0] - target_diag[Sign(s)]) > t:
            return False
    if not generic:
        return True

    def real_pos(q):
        return abs(q[1]) <= t and q[0] > t

    if nf.kind == "ideal":
        return (close(m[0, 1], [1, 0, 0, 0]) and close(m[0, 2], [1, 0, 0, 0])
                and abs(math.sqrt(float(qabs2(m[1, 2]))) - 1.0) <= t)
    if nf.kind == "mixed-4":
        return close(m[0, 1], [1, 0, 0, 0]) and close(m[0, 2], [1, 0, 0, 0])
    if nf.kind == "mixed-5":
        return close(m[0, 1], [1, 0, 0, 0]) and real_pos(m[1, 2])
    return real_pos(m[0, 1]) and real_pos(m[0, 2])


def equivalent(g1: np.ndarray, g2: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether ``g2 = D* g1 D`` for some invertible diagonal ``D`` (3x3 Grams)."""
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    if g1.shape != (3, 3, 4) or g2.shape != (3, 3, 4):
        raise DimensionError("equivalence is decided for 3x3 Gram matrices")
    s1, s2 = infer_signs(g1), infer_signs(g2)
    if s1 != s2:
        return False
    z1, z2 = infer_zero_mask(g1), infer_zero_mask(g2)
    if not np.array_equal(z1, z2):
        return False
    order = list(canonical_order(s1))
    kind = nf_kind(tag_for_signs(s1))
    perm = np.ix_(order, order)
    signs = tuple(s1[k] for k in order)
    n1 = canonical_form(g1[perm], kind, signs, z1[perm])
    n2 = canonical_form(g2[perm], kind, signs, z2[perm])
    return nf_close(n1.matrix, n2.matrix, tol)


def nf_close(m1: np.ndarray, m2: np.ndarray, tol: float = 1e-9) -> bool:
    """Entrywise comparison up to entrywise conjugation, on the matrices' scale."""
    scale = max(frobenius(m1), frobenius(m2), 1.0)
    d = min(frobenius(m1 - m2), frobenius(m1 - qconj(m2)))
    return bool(d <= tol * scale)


def _complexify_scalings(space: HermitianSpace, vs) -> list[np.ndarray]:
    g = space.gram(vs)
    pairs = orthogonal_pairs(space, vs)
    if not pairs:
        h = qmul(qmul(g[0, 1], g[1, 2]), g[2, 0])
        l1 = conjugator_to_complex(Quaternion.from_array(h)).to_array()
        w1 = qmul(vs[0], l1)
        l2 = space.herm_array(vs[1], w1)
        l3 = space.herm_array(vs[2], w1)
        return [l1, l2, l3]
    a, b = pairs[0]
    c = 3 - a - b
    lam = [None, None, None]
    lam[c] = ONE.to_array()
    for x in (a, b):
        y = space.herm_array(vs[x], vs[c])
        if (x, c) in pairs or (c, x) in pairs:
            # orthogonal to the third point as well; any scaling keeps zeros
            y = ONE.to_array()
        lam[x] = y
    return lam


def complexify(space: HermitianSpace, vectors) -> list[np.ndarray]:
    """Right-rescaled lifts whose pairwise products all lie in C(i)."""
    vs = [space.vector(lift(v)) for v in vectors]
    if len(vs) != 3:
        raise DimensionError("complexify works on triples")
    check_distinct(vs)
    lam = _complexify_scalings(space, vs)
    ws = [qmul(v, l) for v, l in zip(vs, lam)]
    defect = complex_part_defect(space.gram(ws))
    if defect > 1e-8:
        raise DegenerateError(f"complexification left quaternionic entries (defect {defect:.3g})")
    return ws


def complex_normal_form(space: HermitianSpace, vectors, cls: TripleClass | None = None) -> NormalForm:
    """Normal form of a triple given in the canonical order of its class.

    The lifts are complexified first; the returned scalings are the composite
    of the complexifying and normalizing rescalings, so that
    ``rescale(gram_of(vectors), nf.scalings) == nf.matrix``.
    """
    vs = [space.vector(lift(v)) for v in vectors]
    cls = classify_triple(space, *vs) if cls is None else cls
    signs = tuple(space.classify(v) for v in vs)
    if signs != cls.canonical_signs:
        raise SignError(
            f"point signs {[s.value for s in signs]} do not match class {cls.tag!r} in canonical order"
        )
    lam1 = _complexify_scalings(space, vs)
    ws = [qmul(v, l) for v, l in zip(vs, lam1)]
    gw = space.gram(ws)
    zero = np.zeros((3, 3), dtype=bool)
    for a, b in orthogonal_pairs(space, vs):
        zero[a, b] = zero[b, a] = True
    nf = canonical_form(gw, cls.kind, signs, zero)
    total = [Quaternion.from_array(qmul(l1, l2.to_array())) for l1, l2 in zip(lam1, nf.scalings)]
    return NormalForm(nf.kind, rescale(space.gram(vs), total), total, signs)


def realize_gram(space: HermitianSpace, g, tol: float = 1e-12) -> list[np.ndarray]:
    """Complex lifts in C^{2,1} (embedded in H^{n,1}) with the given complex Gram.

    Uses ``G = U diag(w) U^H``: the lift coordinates are the rows of
    ``sqrt|w| U^H``, with the negative eigen-direction placed in the last slot.
    """
    c = np.asarray(g)
    if c.ndim == 3:
        if complex_part_defect(c) > 1e-12:
            raise DomainError("Gram matrix has quaternionic entries; complexify first")
        c = to_complex(c)
    c = 0.5 * (c + c.conj().T)
    w, u = np.linalg.eigh(c)
    scale = max(abs(w).max(), 1.0)
    neg = [k for k in range(len(w)) if w[k] < -tol * scale]
    pos = [k for k in range(len(w)) if w[k] > tol * scale]
    if len(neg) > 1 or len(pos) > space.n:
        raise DegenerateError(
            f"Gram of signature ({len(pos)}, {len(neg)}) does not fit in H^({space.n},1)"
        )
    coords = np.zeros((space.dim, c.shape[0]), dtype=complex)
    for slot, k in enumerate(pos):
        coords[slot] = math.sqrt(w[k]) * u[:, k].conj()
    for k in neg:
        coords[-1] = math.sqrt(-w[k]) * u[:, k].conj()
    return [from_complex(coords[:, col]) for col in range(c.shape[0])]

