"""Subgroups, embeddings, and structural predicates for two-tier pc groups.

Subgroups carry a canonical induced generating sequence: one "head" element
per base position (leading entries positive, dividing the generator order,
entries above leading positions reduced, central tails reduced modulo the
central sublattice) plus a Hermite basis of the central members.  Two
subgroups of the same parent are equal iff these canonical data agree.

Everything here works over both finite and infinite parents through exact
integer linear algebra; enumerative counterparts live in bruteforce.py and
are used for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .pcgroup import (
    Element,
    GroupError,
    Presentation,
    Word,
    commutator,
    conjugate,
    direct_product_presentation,
    order_of_element,
)
from .zlinalg import (
    hnf,
    kernel_mod,
    lattice_intersection,
    reduce_mod_lattice,
    solve_mod,
)


def _leading(u: Element) -> Optional[int]:
    for k, a in enumerate(u.base_exp):
        if a != 0:
            return k
    return None


def _modular_unit(a: int, m: int) -> tuple[int, int]:
    """Return (g, p) with g = gcd(a, m) (or |a| if m == 0) and p*a = g (mod m)."""
    if m == 0:
        return (abs(a), 1 if a > 0 else -1)
    g = math.gcd(a, m)
    # p * (a/g) = 1 (mod m/g)
    mg = m // g
    if mg == 1:
        return (g, 0) if g == m else (g, 1)
    p = pow(a // g % mg, -1, mg)
    return (g, p)


class Subgroup:
    """Canonical subgroup of a two-tier pc group, closed under membership."""

    def __init__(self, parent: Presentation, gens: Iterable[Element]):
        self.parent = parent
        self.gens = tuple(gens)
        for g in self.gens:
            if g.group is not parent:
                raise GroupError("subgroup generator lies outside the parent")
        self._heads: list[Optional[Element]] = [None] * len(parent.base)
        self._central_pool: list[tuple[int, ...]] = []
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        work = [g for g in self.gens if not g.is_identity()]
        while work:
            self._sift(work.pop(), work)
        self._finalize()

    def _sift(self, u: Element, work: list[Element]):
        P = self.parent
        while True:
            lead = _leading(u)
            if lead is None:
                if any(u.central_exp):
                    self._central_pool.append(u.central_exp)
                return
            a = u.base_exp[lead]
            m = P.base[lead].order
            h = self._heads[lead]
            if h is None:
                g, p = _modular_unit(a, m)
                # normal-form exponents satisfy 0 < a < m, so g = gcd(a, m) < m
                v = u ** p
                assert v.base_exp[lead] == g
                self._heads[lead] = v
                # interactions with the other heads and the relation overflow
                for h2 in self._heads:
                    if h2 is not None and h2 is not v:
                        work.append(commutator(v, h2))
                if m > 0:
                    work.append(v ** (m // g))
                # residue of u after removing its leading part
                work.append(v ** (-(a // g)) * u)
                return
            b = h.base_exp[lead]
            if a % b == 0:
                u = h ** (-(a // b)) * u
                continue
            # improve the head at this position
            g2 = math.gcd(a, b)
            s, t = _bezout(b, a)
            w = (h ** s) * (u ** t)
            self._heads[lead] = None
            work.extend([h, u, w])
            return

    def _finalize(self):
        P = self.parent
        n_orders = P.central_orders
        # canonical basis of the central lattice (S cap C plus the moduli)
        stacked = [list(v) for v in self._central_pool]
        for j, n in enumerate(n_orders):
            if n > 0:
                stacked.append([n if k == j else 0 for k in range(len(n_orders))])
        rows, _ = hnf(stacked) if stacked else ([], [])
        self._central_hnf = [r for r in rows if any(r)]
        # reduce entries of each head above later leading positions
        heads = self._heads
        for i, hd in enumerate(heads):
            if hd is None:
                continue
            for i2 in range(i + 1, len(heads)):
                h2 = heads[i2]
                if h2 is None:
                    continue
                k = hd.base_exp[i2] // h2.base_exp[i2]
                if k:
                    hd = (h2 ** (-k)) * hd
            # canonical central tail
            tail = reduce_mod_lattice(hd.central_exp, self._central_hnf, n_orders)
            heads[i] = P.element(hd.base_exp, tail)

    # -- canonical data ----------------------------------------------------

    def heads(self) -> list[Element]:
        return [h for h in self._heads if h is not None]

    def central_basis(self) -> list[Element]:
        P = self.parent
        zero = [0] * len(P.base)
        out = []
        for row in self._central_hnf:
            e = P.element(zero, row)
            if not e.is_identity():
                out.append(e)
        return out

    def basis(self) -> list[Element]:
        """Canonical generating elements: heads followed by central basis."""
        return self.heads() + self.central_basis()

    def canonical_key(self):
        return (
            tuple((i, h.base_exp, h.central_exp) for i, h in enumerate(self._heads) if h is not None),
            tuple(tuple(r) for r in self._central_hnf),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((id(self.parent), self.canonical_key()))

    def __repr__(self) -> str:
        return f"<Subgroup of {self.parent.name} with basis {[str(b) for b in self.basis()]}>"

    # -- membership and size ----------------------------------------------

    def contains(self, u: Element) -> bool:
        if u.group is not self.parent:
            raise GroupError("element belongs to a different parent group")
        v = u
        for lead, h in enumerate(self._heads):
            a = v.base_exp[lead]
            if a == 0:
                continue
            if h is None:
                return False
            b = h.base_exp[lead]
            if a % b != 0:
                return False
            v = h ** (-(a // b)) * v
        if _leading(v) is not None:
            return False
        rep = reduce_mod_lattice(
            v.central_exp, self._central_hnf, self.parent.central_orders
        )
        return not any(rep)

    def order(self) -> Optional[int]:
        """Subgroup order, or None when infinite."""
        total = 1
        for lead, h in enumerate(self._heads):
            if h is None:
                continue
            m = self.parent.base[lead].order
            if m == 0:
                return None
            total *= m // h.base_exp[lead]
        n_orders = self.parent.central_orders
        if any(n == 0 and any(r[j] for r in self._central_hnf) for j, n in enumerate(n_orders)):
            return None
        box = math.prod(n for n in n_orders if n > 0) if n_orders else 1
        pivots = 1
        for r in self._central_hnf:
            lead = next(c for c, a in enumerate(r) if a != 0)
            if n_orders[lead] == 0:
                return None
            pivots *= r[lead]
        # each central column with a finite modulus has a pivot row
        return total * (box // pivots) if pivots else total

    def elements(self) -> list[Element]:
        """All members (finite subgroups of finite parents), via closure."""
        from .bruteforce import subgroup_elements

        return sorted(
            subgroup_elements(self.parent, self.basis()),
            key=lambda e: e.exponents(),
        )


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(s, t) with s*a + t*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def subgroup_generated(parent: Presentation, gens: Iterable[Element]) -> Subgroup:
    return Subgroup(parent, gens)


def trivial_subgroup(parent: Presentation) -> Subgroup:
    return Subgroup(parent, [])


def full_subgroup(parent: Presentation) -> Subgroup:
    return Subgroup(parent, parent.generators())


def contains(S: Subgroup, u: Element) -> bool:
    return S.contains(u)


# -- derived subgroup, center, intersection ---------------------------------


def derived_subgroup(P: Presentation) -> Subgroup:
    """Generated by the commutators of the base generators (class 2)."""
    zero = [0] * len(P.base)
    return Subgroup(P, [P.element(zero, w) for w in P.comm.values()])


def center(P: Presentation) -> Subgroup:
    """Kernel of the commutator pairing on the base tier, joined with C."""
    r, s = len(P.base), len(P.central)
    gens = [P.gen(g.name) for g in P.central]
    if r:
        # row j: concatenation over i of the exponent vector of [g_j, g_i]
        rows = [
            [a for i in range(r) for a in P.comm_vec(j, i)] for j in range(r)
        ]
        moduli = list(P.central_orders) * r
        if s == 0 or not any(any(row) for row in rows):
            basis = [[1 if k == j else 0 for k in range(r)] for j in range(r)]
        else:
            basis = kernel_mod(rows, moduli)
        zero_c = [0] * s
        for vec in basis:
            e = P.element(vec, zero_c)
            if not e.is_identity():
                gens.append(e)
    return Subgroup(P, gens)


def intersect(S: Subgroup, T: Subgroup) -> Subgroup:
    """Exact subgroup intersection via lattice arithmetic on both tiers."""
    if S.parent is not T.parent:
        raise GroupError("subgroups have different parents")
    P = S.parent
    hs, ht = S.heads(), T.heads()
    ks = [list(r) for r in S._central_hnf]
    kt = [list(r) for r in T._central_hnf]
    n_orders = list(P.central_orders)
    gens: list[Element] = []

    # central members common to both
    zero_b = [0] * len(P.base)
    for vec in lattice_intersection(ks, kt, n_orders):
        e = P.element(zero_b, vec)
        if not e.is_identity():
            gens.append(e)

    if hs and ht:
        rows = [list(h.base_exp) for h in hs] + [
            [-a for a in h.base_exp] for h in ht
        ]
        pair_basis = kernel_mod(rows, list(P.base_orders))
        if pair_basis:
            rvecs = []
            for vec in pair_basis:
                e, g = vec[: len(hs)], vec[len(hs):]
                sE = _product_power(hs, e)
                tG = _product_power(ht, g)
                res = tG.inv() * sE
                assert _leading(res) is None
                rvecs.append(list(res.central_exp))
            combo = rvecs + ks + kt
            ysol = kernel_mod(combo, n_orders)
            seen = set()
            for row in ysol:
                y = row[: len(rvecs)]
                if not any(y) or tuple(y) in seen:
                    continue
                seen.add(tuple(y))
                E = [sum(yt * vec[i] for yt, vec in zip(y, pair_basis)) for i in range(len(hs))]
                G = [
                    sum(yt * vec[len(hs) + j] for yt, vec in zip(y, pair_basis))
                    for j in range(len(ht))
                ]
                sE = _product_power(hs, E)
                tG = _product_power(ht, G)
                res = tG.inv() * sE
                assert _leading(res) is None
                coeffs = solve_mod(ks + kt, [-a for a in res.central_exp], n_orders)
                if coeffs is None:
                    raise AssertionError("intersection residual not resolvable")
                kappa = [0] * len(n_orders)
                for c, krow in zip(coeffs[: len(ks)], ks):
                    if c:
                        kappa = [a + c * b for a, b in zip(kappa, krow)]
                u = sE * P.element(zero_b, kappa)
                assert S.contains(u) and T.contains(u)
                gens.append(u)
    return Subgroup(P, gens)


def _product_power(elems: Sequence[Element], exps: Sequence[int]) -> Element:
    result = elems[0].group.identity() if elems else None
    for e, k in zip(elems, exps):
        if k:
            result = result * e ** k
    return result


# -- structural predicates ---------------------------------------------------


def is_central_subgroup(S: Subgroup) -> bool:
    gens = S.parent.generators()
    return all(
        commutator(h, g).is_identity() for h in S.heads() for g in gens
    )


def is_cocentral(S: Subgroup) -> bool:
    """True iff S together with the center generates the whole parent."""
    Z = center(S.parent)
    joined = Subgroup(S.parent, S.basis() + Z.basis())
    return all(joined.contains(g) for g in S.parent.generators())


def is_normal(S: Subgroup) -> bool:
    gens = S.parent.generators()
    return all(
        S.contains(conjugate(h, g)) for h in S.heads() for g in gens
    )


def is_torsion_free(P: Presentation) -> Optional[bool]:
    """True / False when decidable structurally, None otherwise."""
    finite_order_gen = False
    for g in P.generators():
        n = order_of_element(g)
        if n is not None and n > 1:
            return False
        if n == 1 and not g.is_identity():  # unreachable; defensive
            return False
    if all(o == 0 for o in P.base_orders + P.central_orders):
        return True
    # some generator has a finite declared order but infinite element order
    return None


# -- embeddings --------------------------------------------------------------


class EmbeddingError(GroupError):
    """A generator-image map does not preserve the source relations."""


COORDINATE_INCLUSION = "coordinate-inclusion"
FINITE_VERIFIED = "finite-verified"
NOT_INJECTIVE = "not-injective"
UNVERIFIED = "unverified"


class Embedding:
    """Homomorphism given by generator images, with an injectivity certificate.

    Relation preservation is verified on construction and raises
    EmbeddingError on failure.  The certificate is one of coordinate-inclusion,
    finite-verified, not-injective, or unverified.
    """

    def __init__(
        self,
        source: Presentation,
        target: Presentation,
        images: dict[str, Element],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.name = name or f"{source.name}->{target.name}"
        self.images = dict(images)
        missing = [n for n in source.gen_names() if n not in self.images]
        if missing:
            raise EmbeddingError(f"{self.name}: no image for generator(s) {missing}")
        for n, img in self.images.items():
            if img.group is not target:
                raise EmbeddingError(f"{self.name}: image of {n!r} is not in the target")
        self._verify_relations()
        self.certificate = self._certify()
        self._preimage_table: Optional[dict[Element, Element]] = None

    # the relations of the two-tier form: commutators, powers, central orders,
    # and centrality of the central tier
    def _verify_relations(self):
        S, T = self.source, self.target
        img = self.images

        def central_word(vec) -> Element:
            out = T.identity()
            for g, e in zip(S.central, vec):
                if e:
                    out = out * img[g.name] ** e
            return out

        for (j, i), w in S.comm.items():
            lhs = commutator(img[S.base[j].name], img[S.base[i].name])
            if lhs != central_word(w):
                raise EmbeddingError(
                    f"{self.name}: relation [{S.base[j].name},{S.base[i].name}] not preserved"
                )
        for j in range(len(S.base)):
            for i in range(j):
                if (j, i) not in S.comm:
                    if not commutator(img[S.base[j].name], img[S.base[i].name]).is_identity():
                        raise EmbeddingError(
                            f"{self.name}: [{S.base[j].name},{S.base[i].name}] = e not preserved"
                        )
        for i, g in enumerate(S.base):
            if g.order > 0:
                expect = central_word(S.pow_rel.get(i, (0,) * len(S.central)))
                if img[g.name] ** g.order != expect:
                    raise EmbeddingError(
                        f"{self.name}: power relation {g.name}^{g.order} not preserved"
                    )
        for g in S.central:
            if g.order > 0 and not (img[g.name] ** g.order).is_identity():
                raise EmbeddingError(
                    f"{self.name}: central order of {g.name} not preserved"
                )
            for h in S.base + S.central:
                if h.name != g.name and not commutator(img[g.name], img[h.name]).is_identity():
                    raise EmbeddingError(
                        f"{self.name}: centrality of {g.name} not preserved"
                    )

    def _is_monomial(self) -> bool:
        """Each generator maps to a distinct same-tier generator of equal order."""
        S, T = self.source, self.target
        t_base = {g.name: g.order for g in T.base}
        t_central = {g.name: g.order for g in T.central}
        used = set()
        for g in S.base + S.central:
            u = self.images[g.name]
            nz = [(n, e) for n, e in zip(T.gen_names(), u.exponents()) if e != 0]
            if len(nz) != 1 or nz[0][1] != 1:
                return False
            tname = nz[0][0]
            table = t_base if g in S.base else t_central
            if tname not in table or table[tname] != g.order:
                return False
            if tname in used:
                return False
            used.add(tname)
        return True

    def _certify(self) -> str:
        if self._is_monomial():
            return COORDINATE_INCLUSION
        if self.source.is_finite():
            seen = set()
            for u in self.source.iter_elements():
                seen.add(self.apply(u))
            return FINITE_VERIFIED if len(seen) == self.source.order() else NOT_INJECTIVE
        return UNVERIFIED

    @property
    def injective(self) -> Optional[bool]:
        if self.certificate in (COORDINATE_INCLUSION, FINITE_VERIFIED):
            return True
        if self.certificate == NOT_INJECTIVE:
            return False
        return None

    def apply(self, u: Element) -> Element:
        if u.group is not self.source:
            raise GroupError("element is not in the embedding source")
        out = self.target.identity()
        names = self.source.gen_names()
        for n, e in zip(names, u.exponents()):
            if e:
                out = out * self.images[n] ** e
        return out

    def __call__(self, u: Element) -> Element:
        return self.apply(u)

    def preimage(self, u: Element) -> Optional[Element]:
        """The unique d with apply(d) = u, or None if u is not in the image."""
        if u.group is not self.target:
            raise GroupError("element is not in the embedding target")
        if self.certificate == COORDINATE_INCLUSION:
            pos = {}
            tnames = self.target.gen_names()
            for n in self.source.gen_names():
                img = self.images[n]
                k = next(i for i, e in enumerate(img.exponents()) if e != 0)
                pos[n] = k
            r = len(self.source.base)
            exps = u.exponents()
            cand_b = [exps[pos[g.name]] for g in self.source.base]
            cand_c = [exps[pos[g.name]] for g in self.source.central]
            d = self.source.element(cand_b, cand_c)
            return d if self.apply(d) == u else None
        if self.source.is_finite():
            if self._preimage_table is None:
                self._preimage_table = {}
                for d in self.source.iter_elements():
                    self._preimage_table.setdefault(self.apply(d), d)
            return self._preimage_table.get(u)
        raise GroupError(
            f"{self.name}: preimages unsupported for infinite non-inclusion embeddings"
        )

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, [self.images[n] for n in self.source.gen_names()])

    def __repr__(self) -> str:
        return f"<Embedding {self.name} [{self.certificate}]>"


@dataclass
class EmbeddingReport:
    relations_preserved: bool
    certificate: str


def check_embedding(E: Embedding) -> EmbeddingReport:
    """Re-verify an embedding; construction already raises on bad relations."""
    E._verify_relations()
    return EmbeddingReport(True, E._certify())


def identity_embedding(P: Presentation) -> Embedding:
    return Embedding(P, P, {n: P.gen(n) for n in P.gen_names()}, name=f"id_{P.name}")


def direct_product(
    P: Presentation, Q: Presentation, name: Optional[str] = None
) -> tuple[Presentation, Embedding, Embedding]:
    """Direct product with the two certified coordinate inclusions."""
    R, pmap, qmap = direct_product_presentation(P, Q, name=name)
    incl_P = Embedding(P, R, {n: R.gen(pmap[n]) for n in P.gen_names()}, name=f"{P.name}->{R.name}")
    incl_Q = Embedding(Q, R, {n: R.gen(qmap[n]) for n in Q.gen_names()}, name=f"{Q.name}->{R.name}")
    assert incl_P.certificate == COORDINATE_INCLUSION
    assert incl_Q.certificate == COORDINATE_INCLUSION
    return R, incl_P, incl_Q
