import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcongruence.errors import DegenerateError, InputError
from quatcongruence.hermspace import HermitianSpace, Sign
from quatcongruence.invariants import d_invariant
from quatcongruence.moduli import (
    ModuliPoint,
    det_normalized,
    invariants_of,
    member,
    membership_slice,
    normalized_gram,
    realize,
    sample,
    sample_with_rate,
)


def test_det_examples():
    assert det_normalized(ModuliPoint(1, 1, 1, math.pi)) == pytest.approx(-4.0, abs=1e-15)
    assert det_normalized(ModuliPoint(1e-9, 1e-9, 1e-9, 1.0)) == pytest.approx(1.0)


@settings(max_examples=300, deadline=None)
@given(
    r=st.lists(st.floats(1e-3, 3.0), min_size=3, max_size=3),
    alpha=st.floats(1e-6, math.pi),
)
def test_det_matches_direct_determinant(r, alpha):
    m = ModuliPoint(*r, alpha)
    direct = np.linalg.det(normalized_gram(m))
    assert abs(direct.imag) < 1e-12
    assert abs(direct.real - det_normalized(m)) < 1e-12 * max(1.0, abs(direct))


def test_member_examples():
    assert member(ModuliPoint(1, 1, 1, math.pi))
    assert not member(ModuliPoint(0.1, 0.1, 0.1, math.pi / 2))
    assert not member(ModuliPoint(1, 1, 1, 0.0))
    assert not member(ModuliPoint(-1, 1, 1, math.pi))
    # det = 0 exactly: r1 = r2 = r3 = 1/2, cos a = -1 gives 1 - 3/4 - 1/4 = 0
    boundary = ModuliPoint(0.5, 0.5, 0.5, math.pi)
    assert det_normalized(boundary) == 0.0
    assert member(boundary)
    with pytest.raises(DegenerateError):
        realize(HermitianSpace(2), boundary)


def test_realize_asymptotic_example(h2):
    pts = realize(h2, ModuliPoint(1, 1, 1, math.pi))
    assert all(p.sign is Sign.POSITIVE for p in pts)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        assert d_invariant(h2, pts[a], pts[b]) == pytest.approx(1.0, abs=1e-12)


def test_realize_rejects_non_members(h2):
    with pytest.raises(DegenerateError):
        realize(h2, ModuliPoint(0.1, 0.1, 0.1, math.pi / 2))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_round_trip(n):
    space = HermitianSpace(n)
    worst = 0.0
    for m in sample(200, seed=n):
        if det_normalized(m) > -1e-6:
            continue
        back = invariants_of(space, *realize(space, m))
        worst = max(worst, max(abs(x - y) for x, y in zip(back.as_tuple(), m.as_tuple())))
    assert worst < 1e-8


def test_sample_properties():
    assert sample(0, seed=1) == []
    pts, rate = sample_with_rate(100, seed=7)
    assert len(pts) == 100 and all(member(p) for p in pts)
    assert 0.0 < rate <= 1.0
    assert pts == sample(100, seed=7)
    assert all(0 < p.r1 <= 3 and 0 < p.alpha <= math.pi for p in pts)
    with pytest.raises(InputError):
        sample(-1)


def test_membership_slice():
    sl = membership_slice(1.0, 1.0, 3.0, 50)
    assert sl.det.shape == (50, 50)
    k = int(np.argmin(abs(sl.r3 - 1.0)))
    i = len(sl.alpha) - 1  # alpha = pi
    assert sl.member[i, k]
    assert not membership_slice(0.1, 0.1, 0.1, 10).member.any()
    with pytest.raises(InputError):
        membership_slice(0.0, 1.0)
