"""Exact integer linear algebra: row-style HNF and linear solving with mixed moduli.

All arithmetic is over Python ints (arbitrary precision).  A "modulus vector"
assigns each column a modulus m >= 0, where 0 means the column lives over Z.
Congruence systems x*M = t (mod moduli) are reduced to integer systems by
adjoining the rows m_j * e_j for each finite-modulus column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


def _reduce_entry(a: int, m: int) -> int:
    return a % m if m > 0 else a


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with an optional per-column modulus vector."""

    rows: tuple[tuple[int, ...], ...]
    moduli: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        if self.moduli is not None:
            mods = tuple(int(m) for m in self.moduli)
            if any(m < 0 for m in mods):
                raise ValueError("negative modulus")
            if rows and len(mods) != len(rows[0]):
                raise ValueError("moduli length does not match column count")
            rows = tuple(
                tuple(_reduce_entry(a, m) for a, m in zip(row, mods)) for row in rows
            )
            object.__setattr__(self, "moduli", mods)
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def hnf(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U * rows, U unimodular, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows of H are collected at the bottom.
    """
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    ncols = len(A[0]) if A else 0
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(ncols):
        if r >= n:
            break
        # Euclid on the entries of column c, rows r..n-1.
        while True:
            nz = [i for i in range(r, n) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            if piv != r:
                A[r], A[piv] = A[piv], A[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, n):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if r < n and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return A, U


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """HNF of an IntMatrix; the column moduli (if any) are carried unchanged."""
    H, U = hnf(M.rows)
    return IntMatrix(tuple(map(tuple, H))), IntMatrix(tuple(map(tuple, U)))


def _with_modulus_rows(
    rows: Sequence[Sequence[int]], moduli: Optional[Sequence[int]]
) -> list[list[int]]:
    out = [list(map(int, r)) for r in rows]
    ncols = len(out[0]) if out else (len(moduli) if moduli else 0)
    if moduli:
        for j, m in enumerate(moduli):
            if m > 0:
                out.append([m if k == j else 0 for k in range(ncols)])
    return out


def kernel_mod(
    rows: Sequence[Sequence[int]], moduli: Optional[Sequence[int]] = None
) -> list[list[int]]:
    """Basis of the lattice {x in Z^n : x * rows = 0 (mod moduli)}.

    Only the coefficients on the given rows are returned; the slack from
    modulus rows is dropped.
    """
    n = len(rows)
    if n == 0:
        return []
    stacked = _with_modulus_rows(rows, moduli)
    H, U = hnf(stacked)
    basis = []
    for h, u in zip(H, U):
        if all(a == 0 for a in h):
            vec = u[:n]
            if any(a != 0 for a in vec):
                basis.append(vec)
    return basis


def solve_mod(
    rows: Sequence[Sequence[int]],
    target: Sequence[int],
    moduli: Optional[Sequence[int]] = None,
) -> Optional[list[int]]:
    """Solve x * rows = target (mod moduli) over Z; returns x or None.

    Columns with modulus 0 are solved exactly over the integers.
    """
    n = len(rows)
    ncols = len(target)
    if moduli is not None and len(moduli) != ncols:
        raise ValueError("moduli length does not match target length")
    if any(len(r) != ncols for r in rows):
        raise ValueError("row length does not match target length")
    t = [int(a) for a in target]
    if moduli:
        t = [_reduce_entry(a, m) for a, m in zip(t, moduli)]
    if n == 0 and not any(t):
        return []
    stacked = _with_modulus_rows(rows, moduli)
    if not stacked:
        return None if any(t) else []
    H, U = hnf(stacked)
    coeffs = [0] * len(stacked)
    rem = list(t)
    for i, h in enumerate(H):
        lead = next((c for c, a in enumerate(h) if a != 0), None)
        if lead is None:
            continue
        if rem[lead] % h[lead] != 0:
            return None
        k = rem[lead] // h[lead]
        if k:
            coeffs[i] = k
            rem = [a - k * b for a, b in zip(rem, h)]
    if any(rem):
        return None
    x = [0] * n
    for i, k in enumerate(coeffs):
        if k:
            for j in range(n):
                x[j] += k * U[i][j]
    return x


def solve_mod_system(M: IntMatrix, target: Sequence[int]) -> Optional[list[int]]:
    """IntMatrix front end for solve_mod, using the matrix's column moduli."""
    return solve_mod(M.rows, target, M.moduli)


def lattice_intersection(
    rows_a: Sequence[Sequence[int]],
    rows_b: Sequence[Sequence[int]],
    moduli: Optional[Sequence[int]] = None,
) -> list[list[int]]:
    """Generators of the intersection of two column-moduli lattices in Z^n.

    Each lattice is rowspan(rows) + the modulus lattice; the returned vectors
    generate the intersection (together with the modulus lattice).
    """
    a = _with_modulus_rows(rows_a, moduli)
    b = _with_modulus_rows(rows_b, moduli)
    if not a or not b:
        return []
    stacked = [list(r) for r in a] + [[-x for x in r] for r in b]
    H, U = hnf(stacked)
    out = []
    for h, u in zip(H, U):
        if all(x == 0 for x in h):
            vec = [0] * len(a[0])
            for i in range(len(a)):
                if u[i]:
                    vec = [v + u[i] * x for v, x in zip(vec, a[i])]
            if any(vec):
                out.append(vec)
    return out


def reduce_mod_lattice(
    vec: Sequence[int],
    hnf_rows: Sequence[Sequence[int]],
    moduli: Optional[Sequence[int]] = None,
) -> list[int]:
    """Canonical coset representative of vec modulo a lattice given in HNF.

    hnf_rows must be echelonized (as produced by hnf) and, for correctness of
    canonicity, already include the modulus lattice when moduli are present.
    """
    v = [int(a) for a in vec]
    if moduli:
        v = [_reduce_entry(a, m) for a, m in zip(v, moduli)]
    for h in hnf_rows:
        lead = next((c for c, a in enumerate(h) if a != 0), None)
        if lead is None:
            continue
        k = v[lead] // h[lead]
        if k:
            v = [a - k * b for a, b in zip(v, h)]
    if moduli:
        v = [_reduce_entry(a, m) for a, m in zip(v, moduli)]
    return v
