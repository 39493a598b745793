"""Exact linear algebra over the integers and rationals.

Matrices are plain lists of rows. Nothing here uses floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


def det(matrix) -> int:
    """Determinant of an integer matrix (Bareiss fraction-free elimination)."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rref(matrix):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(matrix) -> int:
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of the right null space over Q, as primitive integer vectors."""
    if not matrix:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def solve(matrix, rhs):
    """Solve a square or overdetermined consistent system exactly; None if inconsistent
    or not uniquely solvable."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    rows, pivots = rref(aug)
    if ncols in pivots or len(pivots) < ncols:
        return None
    return [rows[i][-1] for i in range(ncols)]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(vec):
    """Scale a rational vector to the primitive integer vector on the same ray."""
    vec = [Fraction(x) for x in vec]
    den = reduce(lcm, (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def matvec(m, v):
    return [dot(row, v) for row in m]


def transpose(m):
    return [list(col) for col in zip(*m)]


def kernel_lattice_basis(c):
    """Integer basis of the lattice {x in Z^n : c.x = 0} for a nonzero integer row c.

    Column operations reduce c to (g, 0, ..., 0); the accumulated unimodular
    matrix U has c.U = (g, 0, ..., 0), so columns 2..n of U span the kernel.
    """
    n = len(c)
    row = list(c)
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, k):
        # column dst -= k * column src
        row[dst] -= k * row[src]
        for i in range(n):
            u[i][dst] -= k * u[i][src]

    def swap(a, b):
        row[a], row[b] = row[b], row[a]
        for i in range(n):
            u[i][a], u[i][b] = u[i][b], u[i][a]

    while True:
        nz = [j for j in range(n) if row[j] != 0]
        if len(nz) <= 1:
            break
        p = min(nz, key=lambda j: abs(row[j]))
        for j in nz:
            if j != p:
                colop(j, p, row[j] // row[p])
    p = next(j for j in range(n) if row[j] != 0)
    if p != 0:
        swap(0, p)
    return [[u[i][j] for i in range(n)] for j in range(1, n)]
