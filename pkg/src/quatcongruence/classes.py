"""Configuration classes of ordered point triples.

A triple is tagged by the multiset of its point signs.  Each tag comes with a
canonical ordering of the three points (for instance, in a triple with two
isotropic points the odd point is moved to the last slot).  Normal forms and
invariant profiles are always computed on the canonically ordered triple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError
from .hermspace import HermitianSpace, Sign, lift
from .quaternion import qabs2, qconj, qmul

ISO, NEG, POS = Sign.ISOTROPIC, Sign.NEGATIVE, Sign.POSITIVE

# tag -> (case label, sign ranking used for the canonical order, normal-form kind)
_CLASS_TABLE = {
    "ideal": ("1", [ISO], "ideal"),
    "negative": ("2", [NEG], "negative"),
    "positive": ("3", [POS], "complex-positive"),
    "two-ideal+negative": ("4a", [ISO, NEG], "mixed-4"),
    "two-ideal+positive": ("4b", [ISO, POS], "mixed-4"),
    "ideal+two-negative": ("5a", [ISO, NEG], "mixed-5"),
    "ideal+two-positive": ("5b", [ISO, POS], "mixed-5"),
    "ideal+negative+positive": ("5c", [ISO, NEG, POS], "mixed-5"),
    "negative+two-positive": ("6", [NEG, POS], "mixed-6"),
    "positive+two-negative": ("7", [POS, NEG], "mixed-7"),
}

TAGS = tuple(_CLASS_TABLE)

# counts of (isotropic, negative, positive) -> tag
_BY_COUNTS = {
    (3, 0, 0): "ideal",
    (0, 3, 0): "negative",
    (0, 0, 3): "positive",
    (2, 1, 0): "two-ideal+negative",
    (2, 0, 1): "two-ideal+positive",
    (1, 2, 0): "ideal+two-negative",
    (1, 0, 2): "ideal+two-positive",
    (1, 1, 1): "ideal+negative+positive",
    (0, 1, 2): "negative+two-positive",
    (0, 2, 1): "positive+two-negative",
}

# sign pattern (in canonical order) for each tag
CANONICAL_SIGNS = {
    "ideal": (ISO, ISO, ISO),
    "negative": (NEG, NEG, NEG),
    "positive": (POS, POS, POS),
    "two-ideal+negative": (ISO, ISO, NEG),
    "two-ideal+positive": (ISO, ISO, POS),
    "ideal+two-negative": (ISO, NEG, NEG),
    "ideal+two-positive": (ISO, POS, POS),
    "ideal+negative+positive": (ISO, NEG, POS),
    "negative+two-positive": (NEG, POS, POS),
    "positive+two-negative": (POS, NEG, NEG),
}

GENERIC_TOL = 1e-9
COINCIDENT_TOL = 1e-9


def tag_for_signs(signs) -> str:
    signs = [Sign(s) for s in signs]
    counts = (signs.count(ISO), signs.count(NEG), signs.count(POS))
    return _BY_COUNTS[counts]


def canonical_order(signs) -> tuple[int, int, int]:
    """Stable permutation bringing ``signs`` into the canonical order of its class."""
    signs = [Sign(s) for s in signs]
    ranking = _CLASS_TABLE[tag_for_signs(signs)][1]
    return tuple(sorted(range(3), key=lambda k: ranking.index(signs[k])))


def nf_kind(tag: str) -> str:
    return _CLASS_TABLE[tag][2]


@dataclass(frozen=True)
class TripleClass:
    tag: str
    signs: tuple[Sign, Sign, Sign]
    order: tuple[int, int, int]
    generic: bool
    regular: bool

    @property
    def case(self) -> str:
        return _CLASS_TABLE[self.tag][0]

    @property
    def kind(self) -> str:
        return _CLASS_TABLE[self.tag][2]

    @property
    def canonical_signs(self) -> tuple[Sign, Sign, Sign]:
        return CANONICAL_SIGNS[self.tag]

    def reorder(self, items):
        return [items[k] for k in self.order]

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "case": self.case,
            "signs": [s.value for s in self.signs],
            "order": list(self.order),
            "generic": self.generic,
            "regular": self.regular,
        }


def projective_residual(x, y) -> float:
    """Distance between ``x/|x|`` and the closest right multiple of ``y/|y|``."""
    x = lift(x)
    y = lift(y)
    xh = x / math.sqrt(float(qabs2(x).sum()))
    yh = y / math.sqrt(float(qabs2(y).sum()))
    lam = qmul(qconj(yh), xh).sum(axis=0)
    return float(np.sqrt(qabs2(xh - qmul(yh, lam)).sum()))


def check_distinct(vectors, tol: float = COINCIDENT_TOL) -> None:
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            if projective_residual(vectors[a], vectors[b]) <= tol:
                raise CoincidentPointsError(f"points {a + 1} and {b + 1} coincide")


def orthogonal_pairs(space: HermitianSpace, vectors, tol: float = GENERIC_TOL) -> list[tuple[int, int]]:
    """Index pairs whose lifts are form-orthogonal, relative to their Euclidean sizes."""
    vs = [lift(v) for v in vectors]
    g = space.gram(vs)
    norms = [math.sqrt(float(qabs2(v).sum())) for v in vs]
    out = []
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if math.sqrt(float(qabs2(g[a, b]))) <= tol * norms[a] * norms[b]:
                out.append((a, b))
    return out


def classify_triple(space: HermitianSpace, p1, p2, p3) -> TripleClass:
    vs = [space.vector(lift(p)) for p in (p1, p2, p3)]
    check_distinct(vs)
    signs = tuple(space.classify(v) for v in vs)
    tag = tag_for_signs(signs)
    return TripleClass(
        tag=tag,
        signs=signs,
        order=canonical_order(signs),
        generic=not orthogonal_pairs(space, vs),
        regular=space.regular(vs),
    )
