"""Shared builders for the test suite: group lists and an instance catalog."""

from __future__ import annotations

import itertools

from amalgam2 import (
    AmalgamInstance,
    Embedding,
    EmbeddingError,
    GroupError,
    cyclic,
    dihedral8,
    extraspecial,
    heisenberg_mod,
    order_of_element,
    quaternion8,
)


def finite_catalog_groups():
    """One presentation per finite catalog family, all of order <= 256."""
    return [
        cyclic(2),
        cyclic(6),
        cyclic(8),
        dihedral8(),
        quaternion8(),
        heisenberg_mod(2),
        heisenberg_mod(3),
        heisenberg_mod(4),
        heisenberg_mod(5),
        heisenberg_mod(6),
        extraspecial(3, 1),
        extraspecial(3, -1),
        extraspecial(5, 1),
        extraspecial(5, -1),
    ]


def small_catalog_groups(max_order=64):
    return [G for G in finite_catalog_groups() if G.order() <= max_order]


def cyclic_d_instance(A, a, B, b, k):
    """Amalgam with D = Z/k glued to an order-k element on each side."""
    D = cyclic(k)
    iota_A = Embedding(D, A, {"t": a})
    iota_B = Embedding(D, B, {"t": b})
    return AmalgamInstance(A, B, D, iota_A, iota_B)


def instance_suite(max_instances=24):
    """Deterministic list of (label, instance) pairs with |A|, |B| <= 64.

    Pairs of small groups are swept in a fixed order and glued along cyclic
    subgroups of order 2 or 4; the first few viable elements per group are
    used, so the suite is reproducible run to run.
    """
    pool = [
        ("D8", dihedral8),
        ("Q8", quaternion8),
        ("H2", lambda: heisenberg_mod(2)),
        ("C4", lambda: cyclic(4)),
        ("H4", lambda: heisenberg_mod(4)),
    ]
    out = []
    for (an, af), (bn, bf) in itertools.product(pool, repeat=2):
        if len(out) >= max_instances:
            break
        A, B = af(), bf()
        for k in (2, 4):
            ea = [u for u in A.elements() if order_of_element(u) == k][:2]
            eb = [u for u in B.elements() if order_of_element(u) == k][:2]
            for a, b in itertools.product(ea, eb):
                if len(out) >= max_instances:
                    break
                try:
                    inst = cyclic_d_instance(A, a, B, b, k)
                except (EmbeddingError, GroupError):
                    continue
                out.append((f"{an}[{a}]~{bn}[{b}]/C{k}", inst))
    return out
