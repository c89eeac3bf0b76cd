"""Integer linear algebra: HNF shape, unimodularity, and modular solving."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam2.zlinalg import (
    IntMatrix,
    hermite_normal_form,
    hnf,
    kernel_mod,
    lattice_intersection,
    reduce_mod_lattice,
    solve_mod,
)


def det(M):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(M)
    A = [[Fraction(a) for a in row] for row in M]
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= A[i][i]
    return out


def mat_mul(U, A):
    return [
        [sum(u * a for u, a in zip(row, col)) for col in zip(*A)] for row in U
    ]


def is_echelon(H):
    last = -1
    seen_zero = False
    for row in H:
        lead = next((c for c, a in enumerate(row) if a != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero:
            return False  # zero rows must trail
        if lead <= last:
            return False
        last = lead
    return True


def reduced_above(H):
    for r, row in enumerate(H):
        lead = next((c for c, a in enumerate(row) if a != 0), None)
        if lead is None:
            continue
        if row[lead] < 0:
            return False
        for i in range(r):
            if not (0 <= H[i][lead] < row[lead]):
                return False
    return True


small_matrix = st.lists(
    st.lists(st.integers(-30, 30), min_size=1, max_size=4),
    min_size=1,
    max_size=5,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


def test_hnf_worked_example():
    H, U = hnf([[6, 4], [4, 4]])
    assert H == [[2, 0], [0, 4]]
    assert mat_mul(U, [[6, 4], [4, 4]]) == H
    assert det(U) in (1, -1)


def test_hnf_zero_rows_trail():
    H, _ = hnf([[1, 2], [2, 4], [3, 6]])
    assert H[0] == [1, 2]
    assert H[1] == [0, 0] and H[2] == [0, 0]


@settings(max_examples=200, deadline=None)
@given(small_matrix)
def test_hnf_properties(rows):
    H, U = hnf(rows)
    assert mat_mul(U, rows) == H
    assert det(U) in (1, -1)
    assert is_echelon(H)
    assert reduced_above(H)
    # idempotence: the HNF of an HNF is itself
    H2, _ = hnf(H)
    assert H2 == H


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_hnf_preserves_row_span(rows):
    H, _ = hnf(rows)
    nz = [r for r in H if any(r)]
    for r in rows:
        assert solve_mod(nz, r) is not None
    for h in nz:
        assert solve_mod(rows, h) is not None


def _achievable(rows, moduli):
    """All residues x*rows mod moduli for x over a full period (brute force)."""
    L = 1
    for m in moduli:
        L = L * m // __import__("math").gcd(L, m)
    seen = set()
    for xs in itertools.product(range(L), repeat=len(rows)):
        v = [0] * len(moduli)
        for x, row in zip(xs, rows):
            v = [a + x * b for a, b in zip(v, row)]
        seen.add(tuple(a % m for a, m in zip(v, moduli)))
    return seen


def test_solve_mod_matches_enumeration():
    rows = [[2, 1, 0], [0, 3, 3]]
    moduli = [4, 6, 6]
    reachable = _achievable(rows, moduli)
    for t in itertools.product(range(4), range(6), range(6)):
        x = solve_mod(rows, list(t), moduli)
        assert (x is not None) == (t in reachable)
        if x is not None:
            v = [0] * 3
            for xi, row in zip(x, rows):
                v = [a + xi * b for a, b in zip(v, row)]
            assert all((a - b) % m == 0 for a, b, m in zip(v, t, moduli))


def test_solve_mod_integer_columns():
    assert solve_mod([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_mod([[2, 0], [0, 3]], [3, 9]) is None
    assert solve_mod([], [0, 0]) == []
    assert solve_mod([], [1, 0]) is None


def test_kernel_mod_exact():
    basis = kernel_mod([[2], [4]], None)
    # x*2 + y*4 = 0 over Z: kernel generated by (2, -1) (equivalently (-2, 1))
    assert basis
    for vec in basis:
        assert vec[0] * 2 + vec[1] * 4 == 0
    assert any(v in ([2, -1], [-2, 1]) for v in basis)


def test_kernel_mod_brute():
    rows = [[1, 2], [2, 2]]
    moduli = [4, 4]
    basis = kernel_mod(rows, moduli)
    in_lattice = lambda x: solve_mod(basis, list(x)) is not None if basis else not any(x)
    for x in itertools.product(range(-4, 5), repeat=2):
        v = [x[0] * rows[0][j] + x[1] * rows[1][j] for j in range(2)]
        is_kernel = all(a % m == 0 for a, m in zip(v, moduli))
        assert in_lattice(x) == is_kernel


def test_lattice_intersection_brute():
    moduli = [8, 8]
    a = [[2, 0]]
    b = [[2, 2]]
    inter = lattice_intersection(a, b, moduli)
    sa = _achievable(a + [[8, 0], [0, 8]], moduli)
    sb = _achievable(b + [[8, 0], [0, 8]], moduli)
    si = _achievable(inter + [[8, 0], [0, 8]], moduli) if inter else _achievable([[8, 0], [0, 8]], moduli)
    assert si == (sa & sb)


def test_reduce_mod_lattice_canonical():
    rows, _ = hnf([[2, 1], [0, 3]])
    r1 = reduce_mod_lattice([5, 7], rows)
    r2 = reduce_mod_lattice([5 + 2, 7 + 1], rows)  # shifted by a lattice vector
    assert r1 == r2
    # the representative differs from the input by a lattice member
    diff = [5 - r1[0], 7 - r1[1]]
    assert solve_mod(rows, diff) is not None


def test_intmatrix_reduces_entries():
    M = IntMatrix(((5, 7), (-1, 2)), moduli=(4, 3))
    assert M.rows == ((1, 1), (3, 2))
    H, U = hermite_normal_form(M)
    assert is_echelon(list(map(list, H.rows)))
