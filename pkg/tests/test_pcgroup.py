"""Collection arithmetic, consistency checking, and the group catalog."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam2 import (
    Generator,
    GroupError,
    Presentation,
    check_consistency,
    commutator,
    conjugate,
    construct_named,
    cyclic,
    dihedral8,
    direct_product_presentation,
    free_abelian,
    heisenberg_Z,
    heisenberg_mod,
    order_of_element,
    quaternion8,
)
from amalgam2.bruteforce import brute_order_of_element
from amalgam2.words import evaluate_word, parse_word

from _catalog import finite_catalog_groups


# -- collection --------------------------------------------------------------


def test_heisenberg_commutator_convention():
    H = heisenberg_Z()
    x, y, z = H.gen("x"), H.gen("y"), H.gen("z")
    assert commutator(y, x) == z
    assert commutator(x, y) == z.inv()
    assert (y * x) == x * y * z  # xy-ordering picks up the commutator


def test_heisenberg_integral_powers():
    H = heisenberg_Z()
    x, y = H.gen("x"), H.gen("y")
    for q in (1, 10, 10 ** 6):
        v = commutator(x, y ** q)
        assert v.base_exp == (0, 0)
        assert v.central_exp == (-q,)


def test_element_normal_form_carries():
    D = dihedral8()
    r, z = D.gen("r"), D.gen("z")
    assert (r * r) == z  # power relation r^2 = z
    assert (r ** 4).is_identity()
    q = quaternion8()
    i, j = q.gen("i"), q.gen("j")
    assert (i * i) == (j * j) == q.gen("z")
    assert order_of_element(i) == 4


def test_inverse_and_identity():
    for G in finite_catalog_groups():
        for u in G.elements()[:20]:
            assert (u * u.inv()).is_identity()
            assert (u.inv() * u).is_identity()


@settings(max_examples=100, deadline=None)
@given(
    st.integers(-10 ** 9, 10 ** 9),
    st.integers(-10 ** 9, 10 ** 9),
    st.integers(-10 ** 9, 10 ** 9),
    st.integers(-10 ** 9, 10 ** 9),
)
def test_heisenberg_product_closed_form(a1, b1, a2, b2):
    H = heisenberg_Z()
    u = H.element([a1, b1], [0])
    v = H.element([a2, b2], [0])
    w = u * v
    assert w.base_exp == (a1 + a2, b1 + b2)
    # z = [y, x]: moving x^a2 past y^b1 contributes a2*b1 copies of z
    assert w.central_exp == (b1 * a2,)


@settings(max_examples=50, deadline=None)
@given(st.integers(-12, 12))
def test_power_matches_iterated_multiplication(n):
    for G in (dihedral8(), heisenberg_mod(3)):
        for u in G.elements()[:6]:
            acc = G.identity()
            step = u if n >= 0 else u.inv()
            for _ in range(abs(n)):
                acc = acc * step
            assert u ** n == acc


def test_class2_laws_exhaustive():
    for G in (dihedral8(), quaternion8(), heisenberg_mod(2), heisenberg_mod(3)):
        els = G.elements()
        gens = G.generators()
        for u in els:
            for v in gens:
                c = commutator(u, v)
                assert c.is_central_word()
                assert commutator(v, u) == c.inv()
                for w in gens:
                    # [uv, w] = [u, w][v, w] in class 2
                    assert commutator(u * v, w) == commutator(u, w) * commutator(v, w)


def test_order_of_element_matches_brute():
    for G in (dihedral8(), quaternion8(), heisenberg_mod(4), cyclic(12)):
        for u in G.elements():
            if u.is_identity():
                assert order_of_element(u) == 1
            else:
                assert order_of_element(u) == brute_order_of_element(u)


def test_order_of_element_infinite():
    H = heisenberg_Z()
    assert order_of_element(H.gen("x")) is None
    assert order_of_element(H.identity()) == 1


# -- consistency -------------------------------------------------------------


def test_catalog_groups_consistent():
    for G in finite_catalog_groups() + [heisenberg_Z(), free_abelian(3)]:
        report = check_consistency(G)
        assert report, report.failures


def test_finite_groups_checked_exhaustively():
    for G in finite_catalog_groups():
        if G.order() <= 256:
            report = check_consistency(G)
            assert report.method == "exhaustive"


def test_inconsistent_overlap_detected():
    # [y, x] = z with x of order 2 but z of order 4: 2*z != e, so collection
    # of x^2 through a y is ill-defined.
    P = Presentation(
        [Generator("x", 2), Generator("y", 2)],
        [Generator("z", 4)],
        comm={(1, 0): [1]},
    )
    report = check_consistency(P)
    assert not report
    assert report.method == "overlap"
    assert report.failures


def test_normal_form_uniqueness():
    for G in finite_catalog_groups():
        els = G.elements()
        assert len(els) == G.order()
        assert len({u.exponents() for u in els}) == G.order()


# -- presentation validation -------------------------------------------------


def test_presentation_rejects_bad_input():
    with pytest.raises(GroupError):
        Presentation([Generator("x", 2), Generator("x", 4)], [])
    with pytest.raises(GroupError):
        Presentation([Generator("x", 0)], [], pow_rel={0: []})
    with pytest.raises(GroupError):
        Presentation([Generator("x", 2)], [], comm={(1, 0): []})
    with pytest.raises(GroupError):
        Generator("x", -1)


def test_elements_refuses_infinite():
    with pytest.raises(GroupError):
        heisenberg_Z().elements()


def test_cross_parent_arithmetic_rejected():
    G1, G2 = cyclic(4), cyclic(4)
    with pytest.raises(GroupError):
        G1.gen("t") * G2.gen("t")


# -- direct products ---------------------------------------------------------


def test_direct_product_order_and_renaming():
    R, pmap, qmap = direct_product_presentation(dihedral8(), dihedral8())
    assert R.order() == 64
    assert pmap["s"] == "s" and qmap["s"] == "s_2"
    assert commutator(R.gen("r"), R.gen("s")) == R.gen("z")
    assert commutator(R.gen("r_2"), R.gen("s_2")) == R.gen("z_2")
    assert commutator(R.gen("r"), R.gen("s_2")).is_identity()


def test_construct_named():
    assert construct_named("cyclic", [6]).order() == 6
    assert construct_named("quaternion8").order() == 8
    with pytest.raises(GroupError):
        construct_named("nope")
    with pytest.raises(GroupError):
        construct_named("cyclic")


def test_exponent():
    assert dihedral8().exponent() == 4
    assert heisenberg_mod(3).exponent() == 3
    assert cyclic(12).exponent() == 12


# -- word syntax -------------------------------------------------------------


def test_word_roundtrip():
    G = heisenberg_mod(4)
    u = G.element([1, 3], [2])
    assert evaluate_word(G, str(u)) == u
    assert str(G.identity()) == "e"
    assert evaluate_word(G, "e").is_identity()


def test_word_errors():
    from amalgam2 import WordSyntaxError

    with pytest.raises(WordSyntaxError):
        parse_word("x^")
    with pytest.raises(WordSyntaxError):
        parse_word("2x")
    with pytest.raises(WordSyntaxError):
        evaluate_word(cyclic(2), "nope^2")
