"""Condition checkers: known verdicts, oracle agreement, witness soundness."""

from __future__ import annotations

import pytest

from amalgam2 import (
    AmalgamInstance,
    ConditionReport,
    Embedding,
    GroupError,
    PreconditionError,
    check_condition1,
    check_condition2,
    check_korollar3,
    check_satz2_central,
    check_star,
    check_star_star,
    cyclic,
    decide_embeddability,
    dihedral8,
    free_abelian,
    heisenberg_Z,
    build_counterexample,
    quaternion8,
    reevaluate_witness,
)

from _catalog import cyclic_d_instance, instance_suite


@pytest.fixture(scope="module")
def cx24():
    """The q=2, exponent-4 co-central instance (embeddable, fails star)."""
    return build_counterexample(2, 4).instance()


@pytest.fixture(scope="module")
def q8d8():
    A, B = quaternion8(), dihedral8()
    return cyclic_d_instance(A, A.gen("z"), B, B.gen("s"), 2)


@pytest.fixture(scope="module")
def suite():
    return instance_suite()


# -- known verdicts ----------------------------------------------------------


def test_counterexample_verdicts(cx24):
    assert check_condition1(cx24).holds
    assert check_condition2(cx24).holds
    assert check_korollar3(cx24).holds
    assert check_star_star(cx24).holds
    r = check_star(cx24)
    assert not r.holds
    assert reevaluate_witness(cx24, r)
    dec = decide_embeddability(cx24)
    assert dec.holds and dec.criterion == "co-central-in-B"


def test_counterexample_construction_witness(cx24):
    # the witness pair the construction ships violates the uncorrected
    # criterion even though the sweep reports a lexicographically earlier one
    manual = ConditionReport(
        "star", False, witness={"q": 2, "a": "x^1", "b": "t^1*y^1"}
    )
    assert reevaluate_witness(cx24, manual)


def test_q8_d8_not_embeddable(q8d8):
    r1 = check_condition1(q8d8)
    assert not r1.holds
    assert reevaluate_witness(q8d8, r1)
    dec = decide_embeddability(q8d8)
    assert not dec.holds
    assert dec.criterion == "central-in-A"
    assert reevaluate_witness(q8d8, dec)


def test_central_instance_embeddable():
    # D = Z/2 glued to the central involution on both sides
    A, B = quaternion8(), dihedral8()
    inst = cyclic_d_instance(A, A.gen("z"), B, B.gen("z"), 2)
    dec = decide_embeddability(inst)
    assert dec.holds
    assert dec.criterion in ("central-in-B", "central-in-A")
    assert check_satz2_central(inst).holds


def test_torsion_free_branch():
    H = heisenberg_Z()
    D = free_abelian(1)
    inst = AmalgamInstance(
        H, H, D,
        Embedding(D, H, {"a1": H.gen("x")}),
        Embedding(D, H, {"a1": H.gen("x")}),
    )
    dec = decide_embeddability(inst)
    assert dec.holds and dec.criterion == "torsion-free"


# -- preconditions -----------------------------------------------------------


def test_star_requires_cocentral(q8d8):
    with pytest.raises(PreconditionError):
        check_star(q8d8)
    with pytest.raises(PreconditionError):
        check_star_star(q8d8)


def test_satz2_requires_central(cx24):
    with pytest.raises(PreconditionError):
        check_satz2_central(cx24)


def test_korollar3_requires_normal():
    A, B = dihedral8(), dihedral8()
    inst = cyclic_d_instance(A, A.gen("s"), B, B.gen("s"), 2)
    # <s> is not normal in D8 on either side
    with pytest.raises(PreconditionError):
        check_korollar3(inst)


def test_finite_only_sweeps():
    bundle = build_counterexample(2, "integral")
    inst = bundle.instance()
    for checker in (check_condition2, check_star, check_star_star):
        with pytest.raises(PreconditionError):
            checker(inst)
    with pytest.raises(PreconditionError):
        decide_embeddability(inst)  # infinite and not torsion-free


def test_instance_validation():
    A, B, D = quaternion8(), dihedral8(), cyclic(2)
    iA = Embedding(D, A, {"t": A.gen("z")})
    iB = Embedding(D, B, {"t": B.gen("s")})
    with pytest.raises(GroupError):
        AmalgamInstance(A, B, D, iB, iA)  # wiring crossed
    C4, C2, Q = cyclic(4), cyclic(2), quaternion8()
    bad = Embedding(C4, C2, {"t": C2.gen("t")})  # not injective
    other = Embedding(C4, Q, {"t": Q.gen("i")})
    with pytest.raises(GroupError):
        AmalgamInstance(C2, Q, C4, bad, other)


# -- oracle agreement and cross-method consistency ---------------------------


def test_condition2_methods_agree(suite):
    assert len(suite) >= 20
    failures = 0
    for label, inst in suite:
        closure = check_condition2(inst, method="closure")
        brute = check_condition2(inst, method="brute", k_max=3)
        assert closure.holds == brute.holds, label
        if not closure.holds:
            failures += 1
            assert reevaluate_witness(inst, closure), label
            assert reevaluate_witness(inst, brute), label
    assert failures >= 1


def test_swapped_symmetry(suite):
    for label, inst in suite[:10]:
        assert check_condition1(inst).holds == check_condition1(inst.swapped()).holds
        assert (
            check_condition2(inst).holds == check_condition2(inst.swapped()).holds
        )


def test_decide_failures_have_sound_witnesses(suite):
    for label, inst in suite:
        dec = decide_embeddability(inst)
        if not dec.holds:
            assert dec.witness is not None, label
            assert reevaluate_witness(inst, dec), label


def test_report_serialization(cx24):
    r = check_star(cx24)
    d = r.to_dict()
    assert d["condition"] == "star"
    assert d["holds"] is False
    assert set(d["witness"]) == {"q", "a", "b", "value"}


def test_reevaluate_rejects_fabricated_witness(cx24):
    fake = ConditionReport(
        "star", False, witness={"q": 2, "a": "x^1", "b": "x^1"}
    )
    # b = x lies in D, so the pair cannot witness a violation
    assert not reevaluate_witness(cx24, fake)
    with pytest.raises(GroupError):
        reevaluate_witness(cx24, ConditionReport("star", True))
