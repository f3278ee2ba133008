"""Exact integer linear algebra on row vectors.

Everything here works over Z with arbitrary-precision ints; there is no
floating point anywhere.  Matrices are lists of row lists, and the number
of columns is always passed explicitly so that empty matrices keep their
shape.  The convention throughout the package is that maps act on row
vectors from the right: v |-> v * A.
"""

from __future__ import annotations

from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    # Maintain x*a + y*b == g while running the Euclidean algorithm.
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class Lattice:
    """A subgroup of Z^n stored as an integer row-echelon basis.

    Pivots are the leftmost nonzero entries, one per row, in strictly
    increasing column order.  `add` keeps the echelon shape using gcd row
    operations, so membership tests and reductions are exact.
    """

    __slots__ = ["n", "rows", "pivot_col"]

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list[int]] = []
        self.pivot_col: list[int] = []

    def copy(self) -> "Lattice":
        other = object.__new__(Lattice)
        other.n = self.n
        other.rows = [row[:] for row in self.rows]
        other.pivot_col = self.pivot_col[:]
        return other

    def add(self, vec0) -> None:
        assert len(vec0) == self.n
        vec = list(vec0)
        rows, piv = self.rows, self.pivot_col
        i = 0
        for j in range(self.n):
            if not vec[j]:
                continue
            while i < len(rows) and piv[i] < j:
                i += 1
            if i == len(rows) or piv[i] > j:
                rows.insert(i, vec)
                piv.insert(i, j)
                return
            row = rows[i]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, self.n):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -(b // g)
                for jj in range(j, self.n):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb
        # vec reduced to zero: nothing new.

    def reduce(self, vec0) -> list[int]:
        """Subtract row multiples to shrink vec; the residue is zero iff
        vec is in the lattice."""
        vec = list(vec0)
        for row, j in zip(self.rows, self.pivot_col):
            if vec[j] % row[j] == 0:
                q = vec[j] // row[j]
                if q:
                    for jj in range(j, self.n):
                        vec[jj] -= q * row[jj]
        return vec

    def __contains__(self, vec) -> bool:
        return not any(self.reduce(vec))

    def canonicalize(self) -> None:
        """Make the basis the unique HNF: positive pivots, entries above a
        pivot reduced into [0, pivot).

        Pivots are processed left to right: reducing above pivot j only
        touches columns >= j, so previously canonicalized pivot columns
        (all < j) stay reduced after one pass.
        """
        rows, piv = self.rows, self.pivot_col
        for i in range(len(rows)):
            row = rows[i]
            j = piv[i]
            if row[j] < 0:
                rows[i] = row = [-x for x in row]
            for ii in range(i):
                q = rows[ii][j] // row[j]
                if q:
                    upper = rows[ii]
                    for jj in range(j, self.n):
                        upper[jj] -= q * row[jj]

    def basis(self) -> list[list[int]]:
        return [row[:] for row in self.rows]

    @property
    def rank(self) -> int:
        return len(self.rows)


def hnf(rows, ncols: int) -> list[list[int]]:
    """Canonical row Hermite normal form of the lattice spanned by rows."""
    lat = Lattice(ncols)
    for row in rows:
        lat.add(row)
    lat.canonicalize()
    return lat.basis()


def lattice_contains(rows, ncols: int, vec) -> bool:
    lat = Lattice(ncols)
    for row in rows:
        lat.add(row)
    return vec in lat


def _augmented_echelon(rows, ncols: int) -> Lattice:
    # Echelon of [A | I]; integer row ops act on both halves, so the right
    # half records the combination producing each echelon row.
    m = len(rows)
    lat = Lattice(ncols + m)
    for i, row in enumerate(rows):
        assert len(row) == ncols
        aug = list(row) + [0] * m
        aug[ncols + i] = 1
        lat.add(aug)
    return lat


def left_kernel(rows, ncols: int) -> list[list[int]]:
    """Basis of {x : x * A == 0}, in HNF."""
    lat = _augmented_echelon(rows, ncols)
    m = len(rows)
    ker = [row[ncols:] for row, j in zip(lat.rows, lat.pivot_col) if j >= ncols]
    return hnf(ker, m)


def solve_left(rows, ncols: int, target) -> list[int] | None:
    """Some x with x * A == target, or None if no integer solution exists."""
    assert len(target) == ncols
    m = len(rows)
    lat = _augmented_echelon(rows, ncols)
    vec = list(target) + [0] * m
    for row, j in zip(lat.rows, lat.pivot_col):
        if j >= ncols:
            break
        if vec[j] % row[j] == 0:
            q = vec[j] // row[j]
            if q:
                for jj in range(j, ncols + m):
                    vec[jj] -= q * row[jj]
    if any(vec[:ncols]):
        return None
    return [-x for x in vec[ncols:]]


def snf_diagonal(rows, ncols: int) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of the matrix."""
    D = [list(row) for row in rows]
    m, n = len(D), ncols
    for row in D:
        assert len(row) == n

    def row_op(i1, i2, j):
        a, b = D[i1][j], D[i2][j]
        if b == 0:
            return
        if a == 0:
            D[i1], D[i2] = D[i2], D[i1]
        elif b % a == 0:
            q = b // a
            r1, r2 = D[i1], D[i2]
            for jj in range(n):
                r2[jj] -= q * r1[jj]
        else:
            x, y, g = xgcd(a, b)
            ag, mbg = a // g, -(b // g)
            r1, r2 = D[i1], D[i2]
            for jj in range(n):
                aa, bb = r1[jj], r2[jj]
                r1[jj] = x * aa + y * bb
                r2[jj] = mbg * aa + ag * bb

    def col_op(j1, j2, i):
        a, b = D[i][j1], D[i][j2]
        if b == 0:
            return
        if a == 0:
            for row in D:
                row[j1], row[j2] = row[j2], row[j1]
        elif b % a == 0:
            q = b // a
            for row in D:
                row[j2] -= q * row[j1]
        else:
            x, y, g = xgcd(a, b)
            ag, mbg = a // g, -(b // g)
            for row in D:
                aa, bb = row[j1], row[j2]
                row[j1] = x * aa + y * bb
                row[j2] = mbg * aa + ag * bb

    for k in range(min(m, n)):
        # Pull a nonzero entry into the (k, k) slot.
        found = False
        for i in range(k, m):
            for j in range(k, n):
                if D[i][j]:
                    D[k], D[i] = D[i], D[k]
                    if j != k:
                        for row in D:
                            row[k], row[j] = row[j], row[k]
                    found = True
                    break
            if found:
                break
        if not found:
            break
        while True:
            for i in range(k + 1, m):
                row_op(k, i, k)
            if all(D[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                col_op(k, j, k)
            if all(D[i][k] == 0 for i in range(k + 1, m)):
                break

    diag = [abs(D[i][i]) for i in range(min(m, n)) if D[i][i]]
    # Enforce the divisibility chain.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g
    return diag


def group_invariants(rel_rows, ngens: int) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion chain) of Z^ngens / rowspan(rel_rows)."""
    diag = snf_diagonal(rel_rows, ngens)
    free = ngens - len(diag)
    torsion = tuple(d for d in diag if d != 1)
    return free, torsion


def mat_mul(A, B, ncols_b: int) -> list[list[int]]:
    """Product of row-major matrices; A is m x k, B is k x ncols_b."""
    out = []
    for row in A:
        acc = [0] * ncols_b
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def mat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mats_equal_mod(A, B, lattice_rows, ncols: int) -> bool:
    """Are A and B equal as maps into Z^ncols / rowspan(lattice_rows)?"""
    lat = Lattice(ncols)
    for row in lattice_rows:
        lat.add(row)
    for ra, rb in zip(A, B):
        if [a - b for a, b in zip(ra, rb)] not in lat:
            return False
    return True
