"""Enumerative oracles for finite groups.

These are deliberately naive set-closure computations.  The linear-algebra
paths in structure.py must agree with them on every finite parent; the test
suite enforces that equivalence.
"""

from __future__ import annotations

from typing import Iterable

from .pcgroup import Element, GroupError, Presentation, commutator, conjugate


def closure(gens: Iterable[Element]) -> set[Element]:
    """Set of all products of the generators and their inverses."""
    gens = list(gens)
    if not gens:
        raise GroupError("closure of an empty generating set has no parent")
    parent = gens[0].group
    seed = {parent.identity()}
    step = [g for g in gens] + [g.inv() for g in gens]
    frontier = set(seed)
    result = set(seed)
    while frontier:
        new = set()
        for u in frontier:
            for g in step:
                v = u * g
                if v not in result:
                    result.add(v)
                    new.add(v)
        frontier = new
    return result


def subgroup_elements(parent: Presentation, gens: Iterable[Element]) -> set[Element]:
    gens = list(gens)
    if not gens:
        return {parent.identity()}
    return closure(gens)


def brute_center(P: Presentation) -> set[Element]:
    els = P.elements()
    return {u for u in els if all(commutator(u, g).is_identity() for g in P.generators())}


def brute_derived(P: Presentation) -> set[Element]:
    els = P.elements()
    comms = {commutator(u, v) for u in els for v in els}
    return subgroup_elements(P, list(comms))


def brute_contains(parent: Presentation, gens: Iterable[Element], u: Element) -> bool:
    return u in subgroup_elements(parent, gens)


def brute_intersection(
    parent: Presentation, gens_a: Iterable[Element], gens_b: Iterable[Element]
) -> set[Element]:
    return subgroup_elements(parent, gens_a) & subgroup_elements(parent, gens_b)


def brute_is_normal(parent: Presentation, gens: Iterable[Element]) -> bool:
    els = subgroup_elements(parent, gens)
    return all(conjugate(u, g) in els for u in els for g in parent.elements())


def brute_order_of_element(u: Element) -> int:
    n = 1
    v = u
    while not v.is_identity():
        v = v * u
        n += 1
    return n
