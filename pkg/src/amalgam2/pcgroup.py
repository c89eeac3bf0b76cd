"""Two-tier power-commutator presentations for nilpotent groups of class <= 2.

A presentation has an ordered list of base generators and an ordered list of
central generators.  Every commutator of base generators and every power
relation g^m is a word in the central generators alone, which forces class <= 2
syntactically and admits a closed-form collection rule:

    (g^a z^c) * (g^b z^d) = g^(a+b) z^(c + d + sum_{j>i} a_j b_i w(j,i))

followed by carry reduction g_i^(a) -> g_i^(a mod m_i) p_i^(a div m_i) on the
base tier and plain modular reduction on the central tier.  Orders are encoded
with 0 meaning infinite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


class GroupError(Exception):
    """Malformed presentation, mismatched parents, or invalid operation."""


@dataclass(frozen=True)
class Generator:
    name: str
    order: int  # 0 encodes infinite order

    def __post_init__(self):
        if self.order < 0:
            raise GroupError(f"generator {self.name!r} has negative order")


@dataclass(frozen=True)
class Word:
    """Unreduced word: a sequence of (generator name, exponent) pairs."""

    syllables: tuple[tuple[str, int], ...]

    def evaluate(self, group: "Presentation") -> "Element":
        result = group.identity()
        for name, exp in self.syllables:
            result = result * group.gen(name) ** exp
        return result

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        return "*".join(f"{n}^{e}" for n, e in self.syllables)


class Presentation:
    """Immutable class <= 2 power-commutator presentation.

    Compared and hashed by identity: two structurally equal presentations are
    distinct parents, mirroring the abstract-amalgam setup where the "same"
    group occurs in several roles.
    """

    def __init__(
        self,
        base: Sequence[Generator],
        central: Sequence[Generator],
        comm: Optional[dict[tuple[int, int], Sequence[int]]] = None,
        pow_rel: Optional[dict[int, Sequence[int]]] = None,
        name: str = "G",
    ):
        self.name = name
        self.base = tuple(base)
        self.central = tuple(central)
        names = [g.name for g in self.base] + [g.name for g in self.central]
        if len(set(names)) != len(names):
            raise GroupError("generator names must be unique")
        s = len(self.central)
        self.comm: dict[tuple[int, int], tuple[int, ...]] = {}
        for (j, i), vec in (comm or {}).items():
            if not (0 <= i < j < len(self.base)):
                raise GroupError(f"comm pair ({j},{i}) must satisfy j > i >= 0")
            v = self._reduce_central(tuple(int(a) for a in vec))
            if len(vec) != s:
                raise GroupError("comm word has wrong central arity")
            if any(v):
                self.comm[(j, i)] = v
        self.pow_rel: dict[int, tuple[int, ...]] = {}
        for i, vec in (pow_rel or {}).items():
            if not (0 <= i < len(self.base)):
                raise GroupError(f"pow index {i} out of range")
            if self.base[i].order == 0:
                raise GroupError(
                    f"power relation on infinite-order generator {self.base[i].name!r}"
                )
            if len(vec) != s:
                raise GroupError("pow word has wrong central arity")
            v = self._reduce_central(tuple(int(a) for a in vec))
            if any(v):
                self.pow_rel[i] = v
        self._index = {g.name: ("b", i) for i, g in enumerate(self.base)}
        self._index.update({g.name: ("c", j) for j, g in enumerate(self.central)})
        self._elements_cache: Optional[list["Element"]] = None
        self._exponent_cache: Optional[int] = None

    # -- bookkeeping -------------------------------------------------------

    @property
    def base_orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.base)

    @property
    def central_orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.central)

    def gen_names(self) -> list[str]:
        return [g.name for g in self.base] + [g.name for g in self.central]

    def _reduce_central(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            a % g.order if g.order > 0 else a for a, g in zip(vec, self.central)
        )

    def comm_vec(self, j: int, i: int) -> tuple[int, ...]:
        """Exponent vector of [g_j, g_i] for any pair of base indices."""
        s = len(self.central)
        if j == i:
            return (0,) * s
        if j > i:
            return self.comm.get((j, i), (0,) * s)
        vec = self.comm.get((i, j), (0,) * s)
        return self._reduce_central(tuple(-a for a in vec))

    # -- element constructors ---------------------------------------------

    def element(self, base_exp: Sequence[int], central_exp: Sequence[int]) -> "Element":
        """Build an element from possibly unreduced exponent vectors."""
        if len(base_exp) != len(self.base) or len(central_exp) != len(self.central):
            raise GroupError("exponent vector arity mismatch")
        b = [int(a) for a in base_exp]
        c = [int(a) for a in central_exp]
        for i, g in enumerate(self.base):
            if g.order > 0:
                k, b[i] = divmod(b[i], g.order)
                if k and i in self.pow_rel:
                    p = self.pow_rel[i]
                    c = [x + k * y for x, y in zip(c, p)]
        return Element(self, tuple(b), self._reduce_central(c))

    def identity(self) -> "Element":
        return Element(self, (0,) * len(self.base), (0,) * len(self.central))

    def gen(self, name: str) -> "Element":
        if name not in self._index:
            raise GroupError(f"unknown generator {name!r} in {self.name}")
        tier, k = self._index[name]
        b = [0] * len(self.base)
        c = [0] * len(self.central)
        if tier == "b":
            b[k] = 1
        else:
            c[k] = 1
        return self.element(b, c)

    def generators(self) -> list["Element"]:
        return [self.gen(n) for n in self.gen_names()]

    def word(self, syllables: Sequence[tuple[str, int]]) -> Word:
        for name, _ in syllables:
            if name not in self._index:
                raise GroupError(f"unknown generator {name!r} in {self.name}")
        return Word(tuple((n, int(e)) for n, e in syllables))

    # -- finiteness --------------------------------------------------------

    def is_finite(self) -> bool:
        return all(g.order > 0 for g in self.base + self.central)

    def order(self) -> Optional[int]:
        """Group order (product of generator orders), or None if infinite."""
        if not self.is_finite():
            return None
        return math.prod(g.order for g in self.base + self.central)

    def elements(self) -> list["Element"]:
        """All elements, in lexicographic exponent order (finite groups only)."""
        if not self.is_finite():
            raise GroupError(f"{self.name} is infinite; cannot enumerate")
        if self._elements_cache is None:
            self._elements_cache = list(self.iter_elements())
        return self._elements_cache

    def iter_elements(self) -> Iterator["Element"]:
        if not self.is_finite():
            raise GroupError(f"{self.name} is infinite; cannot enumerate")
        r, s = len(self.base), len(self.central)
        ranges = [range(g.order) for g in self.base + self.central]
        for exps in itertools.product(*ranges):
            yield Element(self, exps[:r], exps[r:])

    def exponent(self) -> int:
        """lcm of all element orders (finite groups only)."""
        if self._exponent_cache is None:
            exp = 1
            for u in self.elements():
                exp = math.lcm(exp, order_of_element(u))
            self._exponent_cache = exp
        return self._exponent_cache

    def __repr__(self) -> str:
        return f"<Presentation {self.name}: {len(self.base)} base + {len(self.central)} central gens>"


@dataclass(frozen=True, eq=False)
class Element:
    """Normal-form element: reduced exponent vectors over a Presentation."""

    group: Presentation
    base_exp: tuple[int, ...]
    central_exp: tuple[int, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.group is other.group
            and self.base_exp == other.base_exp
            and self.central_exp == other.central_exp
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.base_exp, self.central_exp))

    def _check_parent(self, other: "Element"):
        if self.group is not other.group:
            raise GroupError("elements belong to different parent groups")

    def __mul__(self, other: "Element") -> "Element":
        self._check_parent(other)
        G = self.group
        a, b = self.base_exp, other.base_exp
        c = [x + y for x, y in zip(self.central_exp, other.central_exp)]
        for (j, i), w in G.comm.items():
            k = a[j] * b[i]
            if k:
                c = [x + k * y for x, y in zip(c, w)]
        return G.element([x + y for x, y in zip(a, b)], c)

    def inv(self) -> "Element":
        G = self.group
        v = G.element([-a for a in self.base_exp], [0] * len(G.central))
        w = self * v  # purely central residue
        assert not any(w.base_exp)
        return G.element(v.base_exp, [x - y for x, y in zip(v.central_exp, w.central_exp)])

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return self.inv() ** (-n)
        result = self.group.identity()
        sq = self
        while n:
            if n & 1:
                result = result * sq
            n >>= 1
            if n:
                sq = sq * sq
        return result

    def is_identity(self) -> bool:
        return not any(self.base_exp) and not any(self.central_exp)

    def is_central_word(self) -> bool:
        return not any(self.base_exp)

    def exponents(self) -> tuple[int, ...]:
        return self.base_exp + self.central_exp

    def as_word(self) -> Word:
        names = self.group.gen_names()
        return Word(
            tuple((n, e) for n, e in zip(names, self.exponents()) if e != 0)
        )

    def __str__(self) -> str:
        return str(self.as_word())

    def __repr__(self) -> str:
        return f"<{self} in {self.group.name}>"


def multiply(u: Element, v: Element) -> Element:
    return u * v


def inverse(u: Element) -> Element:
    return u.inv()


def power(u: Element, n: int) -> Element:
    return u ** n


def commutator(u: Element, v: Element) -> Element:
    """[u, v] = u^-1 v^-1 u v; central for consistent presentations."""
    return u.inv() * v.inv() * u * v


def conjugate(u: Element, g: Element) -> Element:
    """g^-1 u g."""
    return g.inv() * u * g


def order_of_element(u: Element) -> Optional[int]:
    """Least n > 0 with u^n = e, or None for infinite order."""
    G = u.group
    L = 1
    for a, g in zip(u.base_exp, G.base):
        if a == 0:
            continue
        if g.order == 0:
            return None
        L = math.lcm(L, g.order // math.gcd(a, g.order))
    w = u ** L  # central by construction of L
    M = 1
    for c, g in zip(w.central_exp, G.central):
        if c == 0:
            continue
        if g.order == 0:
            return None
        M = math.lcm(M, g.order // math.gcd(c, g.order))
    return L * M


# -- consistency ------------------------------------------------------------


@dataclass
class ConsistencyReport:
    consistent: bool
    method: str
    failures: list[str]

    def __bool__(self) -> bool:
        return self.consistent


def check_consistency(P: Presentation, exhaustive_bound: int = 512) -> ConsistencyReport:
    """Decide whether collection yields a well-defined group.

    Finite presentations of order <= exhaustive_bound are checked by exhaustive
    associativity of every element against every generator pair, plus direct
    verification of each power relation.  Otherwise the algebraic overlap
    conditions m_i * w(j,i) = m_j * w(j,i) = 0 (in the central tier) are used;
    for the two-tier closed form these are exactly the obstructions to
    associativity of the carry and commutator corrections.
    """
    failures: list[str] = []
    orders = P.central_orders

    def central_zero(vec: Sequence[int]) -> bool:
        return all(
            (a % n == 0) if n > 0 else (a == 0) for a, n in zip(vec, orders)
        )

    # Overlap conditions (always checked; exact for the infinite case).
    for (j, i), w in P.comm.items():
        for idx in (i, j):
            m = P.base[idx].order
            if m > 0 and not central_zero([m * a for a in w]):
                failures.append(
                    f"order {m} of base generator {P.base[idx].name!r} does not "
                    f"annihilate [{P.base[j].name},{P.base[i].name}]"
                )
    if failures:
        return ConsistencyReport(False, "overlap", failures)

    order = P.order()
    if order is None or order > exhaustive_bound:
        return ConsistencyReport(True, "overlap", [])

    gens = P.generators()
    # Power relations: the stepwise m-fold product of a generator must land on
    # its pow word.
    for i, g in enumerate(P.base):
        if g.order > 0:
            acc = P.identity()
            x = P.gen(g.name)
            for _ in range(g.order):
                acc = acc * x
            expect = P.element([0] * len(P.base), P.pow_rel.get(i, (0,) * len(P.central)))
            if acc != expect:
                failures.append(
                    f"power relation violated: {g.name}^{g.order} collects to "
                    f"{acc} but the relation says {expect}"
                )
    for u in P.iter_elements():
        for g in gens:
            ug = u * g
            for h in gens:
                if (ug) * h != u * (g * h):
                    failures.append(
                        f"associativity fails on ({u}, {g}, {h})"
                    )
                    return ConsistencyReport(False, "exhaustive", failures)
        if failures:
            break
    return ConsistencyReport(not failures, "exhaustive", failures)


# -- direct products ---------------------------------------------------------


def direct_product_presentation(
    P: Presentation, Q: Presentation, name: Optional[str] = None
) -> tuple[Presentation, dict[str, str], dict[str, str]]:
    """Concatenate two presentations with trivial cross-commutators.

    Returns the product plus the generator renaming maps for each factor
    (names are suffixed on collision).
    """
    taken = set(P.gen_names())
    qmap: dict[str, str] = {}
    for n in Q.gen_names():
        new = n
        k = 2
        while new in taken:
            new = f"{n}_{k}"
            k += 1
        taken.add(new)
        qmap[n] = new
    pmap = {n: n for n in P.gen_names()}

    base = list(P.base) + [Generator(qmap[g.name], g.order) for g in Q.base]
    central = list(P.central) + [Generator(qmap[g.name], g.order) for g in Q.central]
    rp, sp = len(P.base), len(P.central)
    comm: dict[tuple[int, int], list[int]] = {}
    s_total = sp + len(Q.central)

    def pad_p(vec):
        return list(vec) + [0] * len(Q.central)

    def pad_q(vec):
        return [0] * sp + list(vec)

    for (j, i), w in P.comm.items():
        comm[(j, i)] = pad_p(w)
    for (j, i), w in Q.comm.items():
        comm[(j + rp, i + rp)] = pad_q(w)
    pow_rel: dict[int, list[int]] = {}
    for i, w in P.pow_rel.items():
        pow_rel[i] = pad_p(w)
    for i, w in Q.pow_rel.items():
        pow_rel[i + rp] = pad_q(w)
    R = Presentation(
        base, central, comm, pow_rel, name=name or f"{P.name}x{Q.name}"
    )
    assert len(R.central) == s_total
    return R, pmap, qmap


# -- catalog ----------------------------------------------------------------


def heisenberg_Z() -> Presentation:
    """Free class-2 group on x, y; elements x^a y^b z^c with z = [y,x]."""
    return Presentation(
        [Generator("x", 0), Generator("y", 0)],
        [Generator("z", 0)],
        comm={(1, 0): [1]},
        name="heisenberg_Z",
    )


def heisenberg_mod(m: int) -> Presentation:
    """Exponent-m quotient of the free class-2 group on x, y; order m^3."""
    if m < 2:
        raise GroupError("heisenberg_mod requires modulus m >= 2")
    return Presentation(
        [Generator("x", m), Generator("y", m)],
        [Generator("z", m)],
        comm={(1, 0): [1]},
        name=f"heisenberg_mod{m}",
    )


def cyclic(n: int) -> Presentation:
    """Cyclic group of order n on generator t (n = 0 gives Z)."""
    if n < 0:
        raise GroupError("cyclic order must be >= 0")
    return Presentation([Generator("t", n)], [], name=f"cyclic{n}")


def free_abelian(r: int) -> Presentation:
    """Free abelian group of rank r on a1, ..., ar."""
    if r < 0:
        raise GroupError("rank must be >= 0")
    return Presentation(
        [Generator(f"a{i+1}", 0) for i in range(r)], [], name=f"free_abelian{r}"
    )


def dihedral8() -> Presentation:
    """Dihedral group of order 8 on s, r with z = r^2 central."""
    # <r, s | r^4, s^2, [r,s] = r^2>, encoded with z = r^2 central.
    return Presentation(
        [Generator("s", 2), Generator("r", 2)],
        [Generator("z", 2)],
        comm={(1, 0): [1]},
        pow_rel={1: [1]},
        name="dihedral8",
    )


def quaternion8() -> Presentation:
    """Quaternion group of order 8 on i, j with z = -1 central."""
    return Presentation(
        [Generator("i", 2), Generator("j", 2)],
        [Generator("z", 2)],
        comm={(1, 0): [1]},
        pow_rel={0: [1], 1: [1]},
        name="quaternion8",
    )


def extraspecial(p: int, sign: int) -> Presentation:
    """Extraspecial group of order p^3; sign +1 = exponent p (p odd), -1 = exponent p^2."""
    if p < 2:
        raise GroupError("p must be a prime >= 2")
    if sign not in (1, -1):
        raise GroupError("sign must be +1 or -1")
    if sign == 1:
        if p == 2:
            return dihedral8()
        P = heisenberg_mod(p)
        P.name = f"extraspecial_{p}+"
        return P
    if p == 2:
        return quaternion8()
    return Presentation(
        [Generator("a", p), Generator("b", p)],
        [Generator("z", p)],
        comm={(1, 0): [1]},
        pow_rel={0: [1]},
        name=f"extraspecial_{p}-",
    )


CATALOG = {
    "heisenberg_Z": (heisenberg_Z, 0),
    "heisenberg_mod": (heisenberg_mod, 1),
    "cyclic": (cyclic, 1),
    "free_abelian": (free_abelian, 1),
    "dihedral8": (dihedral8, 0),
    "quaternion8": (quaternion8, 0),
    "extraspecial": (extraspecial, 2),
}


def construct_named(name: str, params: Sequence[int] = ()) -> Presentation:
    """Build a catalog group by key; see CATALOG for keys and arities."""
    if name not in CATALOG:
        raise GroupError(f"unknown catalog key {name!r}")
    fn, arity = CATALOG[name]
    params = list(params)
    if len(params) != arity:
        raise GroupError(f"catalog key {name!r} expects {arity} parameter(s)")
    return fn(*params)


def enumerate_elements(P: Presentation) -> Iterator[Element]:
    """Stream every element exactly once (finite presentations only)."""
    return P.iter_elements()
