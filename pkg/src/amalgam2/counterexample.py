"""The co-central counterexample family and its machine verification.

D is the free class-2 group on x, y (or its finite quotient of exponent m),
A = B = Z/q x D with D included as the second coordinate, and
G = Z/q x D x Z/q is a strong amalgam of A and B over D.  The witness pair
a = (e, x), b = (t, y) satisfies a^q, b^q in D yet [a, b^q] = [x, y]^q != e,
so the instance fails the uncorrected criterion while being embeddable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .conditions import (
    AmalgamInstance,
    check_korollar3,
    check_star,
    check_star_star,
    decide_embeddability,
    reevaluate_witness,
    ConditionReport,
)
from .pcgroup import (
    Element,
    GroupError,
    Presentation,
    check_consistency,
    commutator,
    cyclic,
    heisenberg_Z,
    heisenberg_mod,
)
from .structure import (
    Embedding,
    Subgroup,
    direct_product,
    is_cocentral,
    subgroup_generated,
)
from .words import format_element

Variant = Union[str, int]  # "integral" or a modulus m


@dataclass
class CounterexampleBundle:
    q: int
    variant: Variant
    D: Presentation
    A: Presentation
    B: Presentation
    G: Presentation
    iota_A: Embedding
    iota_B: Embedding
    eps_A: Embedding
    eps_B: Embedding
    witness_a: Element
    witness_b: Element

    def instance(self) -> AmalgamInstance:
        return AmalgamInstance(self.A, self.B, self.D, self.iota_A, self.iota_B)

    def is_finite(self) -> bool:
        return self.variant != "integral"


def build_counterexample(q: int, variant: Variant = "integral") -> CounterexampleBundle:
    """Construct the family member for a given q (and modulus, if finite).

    The finite variant needs q | m and m > q so that [x, y]^q survives in the
    quotient; the default choice elsewhere is m = q^2.
    """
    if q < 2:
        raise GroupError("q must be at least 2")
    if variant == "integral":
        D = heisenberg_Z()
    else:
        m = int(variant)
        if m < 2 or m % q != 0 or m <= q:
            raise GroupError(
                f"finite variant needs a modulus m with q | m and m > q; got q={q}, m={m}"
            )
        D = heisenberg_mod(m)
    A, _, iota_A = direct_product(cyclic(q), D, name="A")
    B, _, iota_B = direct_product(cyclic(q), D, name="B")
    AD, _, _ = direct_product(cyclic(q), D, name="AD")
    G, _, _ = direct_product(AD, cyclic(q), name="G")
    # G generator names: t, x, y, t_2 (base) and z (central)
    eps_A = Embedding(
        A,
        G,
        {"t": G.gen("t"), "x": G.gen("x"), "y": G.gen("y"), "z": G.gen("z")},
        name="A->G",
    )
    eps_B = Embedding(
        B,
        G,
        {"t": G.gen("t_2"), "x": G.gen("x"), "y": G.gen("y"), "z": G.gen("z")},
        name="B->G",
    )
    witness_a = A.gen("x")
    witness_b = B.gen("t") * B.gen("y")
    return CounterexampleBundle(
        q=q,
        variant=variant,
        D=D,
        A=A,
        B=B,
        G=G,
        iota_A=iota_A,
        iota_B=iota_B,
        eps_A=eps_A,
        eps_B=eps_B,
        witness_a=witness_a,
        witness_b=witness_b,
    )


def intersection_in_amalgam(bundle: CounterexampleBundle) -> Subgroup:
    """eps_A(A) cap eps_B(B) inside G; a strong amalgam iff this is eps(D)."""
    from .structure import intersect

    return intersect(bundle.eps_A.image_subgroup(), bundle.eps_B.image_subgroup())


@dataclass
class SubCheck:
    name: str
    passed: Optional[bool]  # None = skipped
    detail: str = ""

    def to_dict(self) -> dict:
        status = "skipped" if self.passed is None else ("pass" if self.passed else "fail")
        out = {"name": self.name, "status": status}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CounterexampleReport:
    q: int
    variant: Variant
    checks: list[SubCheck] = field(default_factory=list)
    condition_reports: dict[str, ConditionReport] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "variant": str(self.variant),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def verify_counterexample(bundle: CounterexampleBundle) -> CounterexampleReport:
    """Machine-check every claim the construction makes."""
    rep = CounterexampleReport(bundle.q, bundle.variant)
    q = bundle.q
    a, b = bundle.witness_a, bundle.witness_b
    DA = bundle.iota_A.image_subgroup()
    DB = bundle.iota_B.image_subgroup()

    rep.checks.append(
        SubCheck("co-central", is_cocentral(DB), "D is co-central in B")
    )

    aq, bq = a ** q, b ** q
    rep.checks.append(
        SubCheck(
            "witness-powers-in-D",
            DA.contains(aq) and DB.contains(bq),
            f"a^{q} = {format_element(aq)}, b^{q} = {format_element(bq)}",
        )
    )

    # [a, b^q] computed in A after translating b^q through the amalgam
    d_bq = bundle.iota_B.preimage(bq)
    value = commutator(a, bundle.iota_A.apply(d_bq))
    xD, yD = bundle.D.gen("x"), bundle.D.gen("y")
    expected = bundle.iota_A.apply(commutator(xD, yD ** q))
    rep.checks.append(
        SubCheck(
            "witness-commutator",
            (not value.is_identity()) and value == expected,
            f"[a, b^{q}] = {format_element(value)} = image of [x, y^{q}]",
        )
    )

    if bundle.is_finite():
        inst = bundle.instance()
        r_star = check_star(inst)
        own_witness = ConditionReport(
            "star",
            False,
            witness={"q": q, "a": format_element(a), "b": format_element(b)},
        )
        rep.condition_reports["star"] = r_star
        rep.checks.append(
            SubCheck(
                "star-fails",
                (not r_star.holds) and reevaluate_witness(inst, own_witness),
                "uncorrected criterion fails; the construction's own witness violates it",
            )
        )
        r_ss = check_star_star(inst)
        rep.condition_reports["star_star"] = r_ss
        rep.checks.append(SubCheck("star_star-holds", r_ss.holds))
        r_k3 = check_korollar3(inst)
        rep.condition_reports["korollar3"] = r_k3
        rep.checks.append(SubCheck("korollar3-holds", r_k3.holds))
        r_dec = decide_embeddability(inst)
        rep.condition_reports["decide"] = r_dec
        rep.checks.append(
            SubCheck(
                "embeddable",
                r_dec.holds,
                f"criterion: {r_dec.criterion}",
            )
        )
    else:
        rep.checks.append(
            SubCheck(
                "star-fails",
                None,
                "finite-only sweep; the exact witness identity above already "
                "exhibits the violation",
            )
        )

    consistency = check_consistency(bundle.G)
    strong = intersection_in_amalgam(bundle)
    expected_D = subgroup_generated(
        bundle.G,
        [bundle.eps_A.apply(bundle.iota_A.apply(d)) for d in
         (bundle.D.gen(n) for n in bundle.D.gen_names())],
    )
    rep.checks.append(
        SubCheck(
            "strong-amalgam",
            bool(consistency)
            and bundle.eps_A.injective is True
            and bundle.eps_B.injective is True
            and strong == expected_D,
            "G is a consistent class<=2 group, both inclusions are injective, "
            "and A ∩ B = D inside G",
        )
    )
    return rep
