"""Property tests driven by hypothesis-chosen seeds, classes and dimensions."""
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcongruence.classes import TAGS, classify_triple
from quatcongruence.congruence import (
    congruent,
    match_residual,
    random_isometry,
    random_triple,
    randomize,
    witness,
)
from quatcongruence.gram import complex_normal_form, nf_close, pattern_holds
from quatcongruence.hermspace import HermitianSpace, Sign, random_rescale, random_vector
from quatcongruence.invariants import cartan, profile, sigma_star, tau_star

seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([1, 2, 3, 5])
tags = st.sampled_from(TAGS)
PROPS = settings(max_examples=60, deadline=None)


def _space(n, tag):
    # the mixed classes with two positive points need room for them
    return HermitianSpace(max(n, 2))


@PROPS
@given(seed=seeds, n=dims, tag=tags)
def test_profile_invariant_under_lifts_and_isometries(seed, n, tag):
    rng = np.random.default_rng(seed)
    space = _space(n, tag)
    tri = random_triple(space, tag, rng)
    moved, _ = randomize(space, tri, rng)
    a, b = profile(space, *tri).comparable(), profile(space, *moved).comparable()
    assert set(a) == set(b)
    for key in a:
        assert abs(a[key] - b[key]) <= max(1e-9, 1e-7 * max(abs(a[key]), abs(b[key])))


@PROPS
@given(seed=seeds, n=dims, tag=tags)
def test_profile_ranges(seed, n, tag):
    rng = np.random.default_rng(seed)
    space = _space(n, tag)
    prof = profile(space, *random_triple(space, tag, rng))
    if prof.cartan is not None:
        assert 0.0 <= prof.cartan <= math.pi / 2 + 1e-9
    if prof.sigma_star is not None:
        assert prof.sigma_star >= 0.0
        assert abs(abs(prof.tau_star.to_complex()) - 1.0) < 1e-12
    if prof.angular_A is not None:
        assert 0.0 <= prof.angular_A <= math.pi
    if prof.eta is not None:
        assert prof.eta.im >= 0.0
    if prof.d_invariants is not None:
        assert all(d >= 0 for d in prof.d_invariants)
    if prof.mixed_distances is not None:
        assert all(d <= 0 for d in prof.mixed_distances)


@PROPS
@given(seed=seeds, n=dims, tag=tags)
def test_classification_stable(seed, n, tag):
    rng = np.random.default_rng(seed)
    space = _space(n, tag)
    tri = random_triple(space, tag, rng)
    a = classify_triple(space, *tri)
    b = classify_triple(space, *random_rescale(tri, rng))
    assert a == b and a.tag == tag


@PROPS
@given(seed=seeds, n=dims, tag=tags)
def test_normal_form_unique(seed, n, tag):
    rng = np.random.default_rng(seed)
    space = _space(n, tag)
    tri = random_triple(space, tag, rng)
    nf = complex_normal_form(space, tri)
    assert pattern_holds(nf)
    again = complex_normal_form(space, random_rescale(tri, rng))
    assert nf_close(nf.matrix, again.matrix, 1e-9)


@PROPS
@given(seed=seeds, n=dims, tag=tags)
def test_witness_round_trip(seed, n, tag):
    rng = np.random.default_rng(seed)
    space = _space(n, tag)
    tri = random_triple(space, tag, rng)
    moved, _ = randomize(space, tri, rng)
    assert congruent(space, tri, moved)
    g = witness(space, tri, moved)
    assert g.residual <= 1e-9 * math.sqrt(space.dim)
    assert match_residual(space, g, tri, moved) < 1e-8


@PROPS
@given(seed=seeds, n=dims)
def test_isometry_closure(seed, n):
    space = HermitianSpace(n)
    rng = np.random.default_rng(seed)
    g, h = random_isometry(space, rng), random_isometry(space, rng)
    assert (g @ h).residual < 1e-9
    v = random_vector(space, Sign.NEGATIVE, rng)
    assert space.classify((g @ h)(v)) is Sign.NEGATIVE


@PROPS
@given(seed=seeds, n=dims)
def test_negative_shape_invariants(seed, n):
    space = HermitianSpace(n)
    rng = np.random.default_rng(seed)
    tri = [random_vector(space, Sign.NEGATIVE, rng) for _ in range(3)]
    assert sigma_star(space, *tri) >= 0
    t = tau_star(space, *tri)
    # tau* fixes cartan: the normalized product has real part -cos(cartan)
    assert abs(t.re + math.cos(cartan(space, *tri))) < 1e-9
