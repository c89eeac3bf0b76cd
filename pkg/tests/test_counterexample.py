"""The co-central family: construction validation and full verification."""

from __future__ import annotations

import pytest

from amalgam2 import (
    GroupError,
    build_counterexample,
    commutator,
    intersection_in_amalgam,
    subgroup_generated,
    verify_counterexample,
)


def test_parameter_validation():
    with pytest.raises(GroupError):
        build_counterexample(1)
    with pytest.raises(GroupError):
        build_counterexample(2, 2)  # m must exceed q
    with pytest.raises(GroupError):
        build_counterexample(2, 3)  # q must divide m
    build_counterexample(3, 6)  # q | m and m > q: valid


def test_bundle_shape_finite():
    b = build_counterexample(2, 4)
    assert b.is_finite()
    assert b.A.order() == 2 * 64
    assert b.G.order() == 2 * 64 * 2
    assert b.iota_A.injective and b.iota_B.injective
    assert b.eps_A.injective and b.eps_B.injective


def test_bundle_shape_integral():
    b = build_counterexample(2)
    assert not b.is_finite()
    assert b.D.order() is None
    assert b.eps_A.certificate == "coordinate-inclusion"


def test_witness_identity_exact():
    for q in (2, 3, 5):
        b = build_counterexample(q)
        aq = b.witness_a ** q
        bq = b.witness_b ** q
        assert b.iota_A.image_subgroup().contains(aq)
        assert b.iota_B.image_subgroup().contains(bq)
        d = b.iota_B.preimage(bq)
        val = commutator(b.witness_a, b.iota_A.apply(d))
        assert not val.is_identity()
        assert val == b.iota_A.apply(
            commutator(b.D.gen("x"), b.D.gen("y") ** q)
        )


def test_strong_amalgam_intersection():
    b = build_counterexample(2, 4)
    inter = intersection_in_amalgam(b)
    assert inter.order() == 64  # exactly the D copy
    expected = subgroup_generated(
        b.G, [b.eps_A(b.iota_A(b.D.gen(n))) for n in b.D.gen_names()]
    )
    assert inter == expected


def test_strong_amalgam_intersection_integral():
    b = build_counterexample(2)
    inter = intersection_in_amalgam(b)
    expected = subgroup_generated(
        b.G, [b.eps_A(b.iota_A(b.D.gen(n))) for n in b.D.gen_names()]
    )
    assert inter == expected


def test_verify_finite_q2_m4():
    rep = verify_counterexample(build_counterexample(2, 4))
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert names == [
        "co-central",
        "witness-powers-in-D",
        "witness-commutator",
        "star-fails",
        "star_star-holds",
        "korollar3-holds",
        "embeddable",
        "strong-amalgam",
    ]
    assert all(c.passed for c in rep.checks)
    d = rep.to_dict()
    assert d["passed"] is True
    assert len(d["checks"]) == 8


def test_verify_integral_skips_sweep():
    rep = verify_counterexample(build_counterexample(2))
    assert rep.passed
    by_name = {c.name: c for c in rep.checks}
    assert by_name["star-fails"].passed is None  # finite-only, skipped
    assert "finite-only" in by_name["star-fails"].detail
    assert by_name["witness-commutator"].passed
    assert rep.to_dict()["checks"][3]["status"] == "skipped"
