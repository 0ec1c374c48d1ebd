import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipfree.errors import NontrivialSegment, NormViolation, PreconditionNotMet, SamePoint
from lipfree.extremal import (
    Decomposition,
    ExposureCertificate,
    brute_force_extreme,
    classify_molecule,
    exposure_certificate,
    exposure_margin,
    mass_concentration_check,
    split_optimal,
    split_representation,
    verify_certificate,
)
from lipfree.free_space import Representation, from_representation, molecule, rebase
from lipfree.lipschitz import LipFunction
from lipfree.metric import segment, validate
from lipfree.suite import mass_instance, padded_representation

from conftest import spaces

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def test_triangle_all_exposed(triangle):
    # hand computation for pair (b,c), base a: f = (0, 1/2, -1/2); best competitor quotient 1/2
    cert = exposure_certificate(triangle, ("b", "c"))
    assert cert.function.values == (0, HALF, -HALF)
    assert cert.margin == HALF
    for pair in triangle.ordered_pairs():
        report = classify_molecule(triangle, pair)
        assert report.is_extreme and report.is_exposed and report.evidence.margin > 0
        assert brute_force_extreme(triangle, pair) == (True, None)


def test_path_metric_classification(path_metric):
    report = classify_molecule(path_metric, ("p", "q"))
    assert not report.is_extreme and not report.is_exposed and not report.is_trivial_segment
    assert report.evidence == Decomposition((0, 2), 1, (HALF, HALF))
    assert from_representation(path_metric, report.evidence.representation()) == molecule(path_metric, 0, 2)
    extreme, combo = brute_force_extreme(path_metric, ("p", "q"))
    assert not extreme
    assert combo.terms == ((HALF, (0, 1)), (HALF, (1, 2)))
    with pytest.raises(NontrivialSegment):
        exposure_certificate(path_metric, ("p", "q"))
    assert exposure_margin(path_metric, ("p", "q")) == 0


def test_path_metric_margin(path_metric):
    assert exposure_certificate(path_metric, ("p", "z")).margin == Fraction(2, 3)


def test_two_point(two_point):
    cert = exposure_certificate(two_point, ("p", "0"))
    assert cert.margin == 2
    assert classify_molecule(two_point, (1, 0)).is_exposed
    with pytest.raises(SamePoint):
        classify_molecule(two_point, (1, 1))


def test_decomposition_picks_nearest_interior_point():
    # a line 0 - 1 - 2 - 3 with unit steps; [0,3] contains 1 and 2
    M = validate([[abs(i - j) for j in range(4)] for i in range(4)], 0)
    ev = classify_molecule(M, (0, 3)).evidence
    assert ev.via == 1 and ev.weights == (Fraction(1, 3), Fraction(2, 3))


def test_verify_rejects_tampered_certificate(triangle):
    cert = exposure_certificate(triangle, (1, 2))
    assert verify_certificate(cert)
    assert not verify_certificate(ExposureCertificate(cert.pair, cert.function, cert.margin + 1))
    flat = LipFunction.zero(triangle)
    assert not verify_certificate(ExposureCertificate(cert.pair, flat, cert.margin))


@settings(max_examples=40, deadline=None)
@given(spaces)
def test_theorem_equivalence(M):
    for p, q in M.ordered_pairs():
        trivial = len(segment(M, p, q)) == 2
        extreme, combo = brute_force_extreme(M, (p, q))
        margin = exposure_margin(M, (p, q))
        assert trivial == extreme == (margin > 0)
        if combo is not None:
            assert from_representation(M, combo) == molecule(M, p, q)
            assert sum(w for w, _ in combo.terms) == 1


def test_mass_examples():
    res = mass_concentration_check([1], [1], QUARTER, QUARTER)
    assert res.passed and res.tail_mass == 0 and res.small_indices == ()
    eps = QUARTER
    with pytest.raises(PreconditionNotMet):
        mass_concentration_check([1 - eps, eps], [1, 0], HALF, eps)
    with pytest.raises(NormViolation):
        mass_concentration_check([HALF, QUARTER], [1, 1], HALF, eps)
    with pytest.raises(NormViolation):
        mass_concentration_check([1], [2], HALF, eps)


def test_mass_boundary_is_tight():
    # <a,b> = 1 - alpha*eps exactly and the whole slack sits on one index
    alpha, eps = HALF, Fraction(1, 3)
    a = [1 - eps, eps]
    b = [1, 1 - alpha]
    res = mass_concentration_check(a, b, alpha, eps)
    assert res.small_indices == (1,) and res.tail_mass == eps and res.passed


@settings(max_examples=300)
@given(st.integers(0, 2**32))
def test_mass_random(seed):
    a, b, alpha, eps = mass_instance(random.Random(seed))
    res = mass_concentration_check(a, b, alpha, eps)
    assert res.passed and res.tail_mass <= eps


def test_split_examples(path_metric, two_point):
    res = split_optimal(two_point, "p", "0", QUARTER, QUARTER)
    assert res.bad_mass == 0 and res.ok and len(res.good) == 1

    # pair (p,z) in the path metric has a trivial segment; rebase to z
    M = path_metric.with_base("z")
    res = split_representation(M, 0, 1, Representation(((1, (0, 1)),)), QUARTER, QUARTER)
    assert res.ok and res.bad_mass == 0 and res.residual_norm == 0


def test_split_preconditions(path_metric):
    rep = Representation(((1, (0, 2)),))
    with pytest.raises(PreconditionNotMet) as info:
        split_representation(path_metric.with_base("p"), 0, 2, rep, QUARTER, QUARTER)
    assert info.value.clause == "base"
    with pytest.raises(PreconditionNotMet) as info:
        split_representation(path_metric, 0, 2, rep, HALF, QUARTER)
    assert info.value.clause == "range"
    with pytest.raises(PreconditionNotMet) as info:
        split_representation(path_metric, 0, 2, Representation(((2, (0, 2)),)), QUARTER, QUARTER)
    assert info.value.clause == "norm"
    with pytest.raises(PreconditionNotMet) as info:
        split_representation(path_metric, 1, 2, Representation(((1, (0, 1)),)), QUARTER, QUARTER)
    assert info.value.clause == "exposed"


def test_split_telescoping_on_path(path_metric):
    # m_pq is not exposed here, yet the two-term representation is split cleanly:
    # both terms have quotient 1 > 3/4 and z lies in the quarter-segment
    M = path_metric
    half = Fraction(1, 2)
    rep = Representation(((half, (0, 1)), (half, (1, 2))))
    res = split_representation(M, 0, 2, rep, QUARTER, QUARTER)
    assert res.good == rep and res.bad_mass == 0
    assert 1 in res.segment_points


def test_split_mass_budget_enforced(triangle):
    M = triangle.with_base("c")
    alpha = eps = QUARTER
    padded = padded_representation(M, 1, 2, alpha, eps)
    assert padded.mass == 1 + eps * alpha / (1 - eps * alpha)
    assert from_representation(M, padded) == molecule(M, 1, 2)
    res = split_representation(M, 1, 2, padded, alpha, eps)
    assert res.ok and 0 < res.bad_mass <= 2 * eps
    over = padded + Representation(((Fraction(1, 100), (0, 1)), (Fraction(1, 100), (1, 0))))
    with pytest.raises(PreconditionNotMet) as info:
        split_representation(M, 1, 2, over, alpha, eps)
    assert info.value.clause == "mass"


@settings(max_examples=25, deadline=None)
@given(spaces, st.sampled_from([QUARTER, Fraction(1, 8), Fraction(1, 3)]),
       st.sampled_from([QUARTER, Fraction(1, 8), Fraction(1, 10)]))
def test_split_padded_random(M, alpha, eps):
    for p, q in M.ordered_pairs():
        if len(segment(M, p, q)) != 2:
            continue
        Mq = M.with_base(q)
        rep = padded_representation(Mq, p, q, alpha, eps)
        assert from_representation(Mq, rep) == rebase(molecule(M, p, q), q)
        res = split_representation(Mq, p, q, rep, alpha, eps)
        assert res.ok, res.violations
        assert res.bad_mass <= 2 * eps and res.residual_norm <= 2 * eps
