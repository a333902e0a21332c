import math

import numpy as np
import pytest

from quatcongruence.classes import TAGS, classify_triple
from quatcongruence.congruence import (
    Isometry,
    Tolerance,
    congruent,
    form_matrix,
    match_residual,
    orthonormalize,
    random_isometry,
    random_triple,
    randomize,
    unitarity_residual,
    witness,
)
from quatcongruence.counterexamples import example_II
from quatcongruence.errors import CoincidentPointsError, DegenerateError, NotCongruentError
from quatcongruence.hermspace import HermitianSpace, Sign, random_rescale, random_vector
from quatcongruence.quaternion import J, qconj, qmatmul, qmul

DIMS = (2, 3, 5)


def test_classify_examples(h2):
    c = classify_triple(h2, [1, 0, 1], [-1, 0, 1], [0, 1, 1])
    assert c.tag == "ideal" and c.case == "1"
    c = classify_triple(h2, [1, 0, 1], [0, 0, 1], [0.5, 0, 1])
    assert c.tag == "ideal+two-negative" and c.generic
    c = classify_triple(h2, [0, 0, 1], [1, 0, 0], [0, 1, 0])
    assert c.tag == "negative+two-positive" and not c.generic
    with pytest.raises(CoincidentPointsError):
        classify_triple(h2, [0, 0, 1], [0, 0, 2], [1, 0, 0])


def test_classification_stable_under_isometry(rng):
    for k in range(60):
        space = HermitianSpace(DIMS[k % 3])
        tag = TAGS[k % len(TAGS)]
        tri = random_triple(space, tag, rng)
        moved, _ = randomize(space, tri, rng)
        a, b = classify_triple(space, *tri), classify_triple(space, *moved)
        assert (a.tag, a.signs, a.generic, a.regular) == (b.tag, b.signs, b.generic, b.regular)


def test_tolerance_semantics():
    t = Tolerance(1e-9, 1e-7)
    assert t.close(1.0, 1.0 + 5e-8)
    assert not t.close(1.0, 1.0 + 5e-7)
    assert t.close(0.0, 5e-10)
    assert not t.close(0.0, 5e-9)


def test_random_isometry_properties(rng):
    for k in range(30):
        space = HermitianSpace(DIMS[k % 3])
        g = random_isometry(space, rng)
        h = random_isometry(space, rng)
        assert g.residual < 1e-10
        assert (g @ h).residual < 1e-9
        for s in Sign:
            assert space.classify(g(random_vector(space, s, rng))) is s


def test_random_isometry_is_deterministic():
    space = HermitianSpace(3)
    a, b = random_isometry(space, 7), random_isometry(space, 7)
    assert np.array_equal(a.matrix, b.matrix)


def test_unitarity_residual_of_identity(h2):
    eye = np.zeros((3, 3, 4))
    eye[np.arange(3), np.arange(3), 0] = 1.0
    assert unitarity_residual(h2, eye) == 0.0
    assert Isometry(form_matrix(h2), h2).residual == 0.0


@pytest.mark.parametrize("tag", TAGS)
def test_congruent_and_witness_round_trip(tag, rng):
    for k in range(30):
        space = HermitianSpace(DIMS[k % 3])
        tri = random_triple(space, tag, rng)
        moved, _ = randomize(space, tri, rng)
        report = congruent(space, tri, moved)
        assert report.verdict, report.reason
        g = witness(space, tri, moved)
        assert g.residual < 1e-9
        assert match_residual(space, g, tri, moved) < 1e-8


def test_witness_on_itself(h2, rng):
    tri = random_triple(h2, "negative", rng)
    g = witness(h2, tri, tri)
    assert match_residual(h2, g, tri, tri) < 1e-10


def test_witness_conjugate_branch(rng):
    jq = J.to_array()
    for k in range(30):
        space = HermitianSpace(DIMS[k % 3])
        tag = TAGS[k % len(TAGS)]
        tri = random_triple(space, tag, rng)
        conj = [qmul(qmul(jq, v), qconj(jq)) for v in tri]
        conj = random_rescale(conj, rng)
        assert congruent(space, tri, conj)
        g = witness(space, tri, conj)
        assert g.residual < 1e-9
        assert match_residual(space, g, tri, conj) < 1e-8


def test_example_II_not_congruent(h2):
    a, b = example_II(h2, 0.0), example_II(h2, math.pi / 2)
    report = congruent(h2, a.triple, b.triple)
    assert not report
    assert abs(report.diffs["d_invariants[0]"]) < 1e-12
    assert abs(report.diffs["eta.re"]) > 0.1 or abs(report.diffs["eta.im"]) > 0.1
    with pytest.raises(NotCongruentError):
        witness(h2, a.triple, b.triple)


def test_sign_mismatch_is_not_congruent(h2, rng):
    a = random_triple(h2, "negative", rng)
    b = random_triple(h2, "ideal", rng)
    report = congruent(h2, a, b)
    assert not report and "sign" in report.reason
    # same multiset of signs but in another order
    c = random_triple(h2, "ideal+two-negative", rng)
    assert not congruent(h2, c, [c[1], c[0], c[2]])


@pytest.mark.parametrize("tag", TAGS)
def test_discrimination_matches_witness(tag, rng):
    # independent random triples of one class: verdict and witness must agree
    for k in range(20):
        space = HermitianSpace(DIMS[k % 3])
        a, b = random_triple(space, tag, rng), random_triple(space, tag, rng)
        verdict = bool(congruent(space, a, b))
        try:
            g = witness(space, a, b)
            found = match_residual(space, g, a, b) < 1e-8
        except NotCongruentError:
            found = False
        assert verdict == found


def test_non_generic_fallback(h2, rng):
    tri = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    moved, _ = randomize(h2, tri, rng)
    report = congruent(h2, tri, moved)
    assert report and report.method == "normal-form"
    other = [[0.3, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert not congruent(h2, tri, other)


def test_non_regular_positive_raises(h2):
    # three positive points whose span is degenerate (contains an isotropic line)
    a = [[1, 0, 0], [0, 1, 0.5], [1, 1, 0.5]]
    b = [[1, 0, 0], [1, 1, 1], [1, 2, 2]]
    assert classify_triple(h2, *b).regular is False
    with pytest.raises(DegenerateError):
        congruent(h2, a, b)


def test_orthonormalize(rng):
    for k in range(30):
        space = HermitianSpace(DIMS[k % 3])
        vs = [rng.normal(size=(space.dim, 4)) for _ in range(space.dim)]
        out = orthonormalize(space, vs, space.dim)
        g = space.gram(out)
        target = np.diag([space.norm2(c) for c in out])
        assert np.allclose(np.abs(np.diag(target)), 1.0)
        assert np.allclose(g[..., 0], target, atol=1e-9)
        assert np.abs(g[..., 1:]).max() < 1e-9
        assert sum(space.norm2(c) < 0 for c in out) == 1


def test_report_json(h2, rng):
    tri = random_triple(h2, "ideal", rng)
    doc = congruent(h2, tri, tri).to_json()
    assert doc["verdict"] is True and doc["class"] == "ideal"
    assert set(doc) >= {"class", "invariants_a", "invariants_b", "diffs", "verdict"}
