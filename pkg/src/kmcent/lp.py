"""Exact rational simplex for cone membership with Farkas certificates.

``cone_membership(columns, b)`` decides whether ``b`` is a nonnegative
rational combination of the columns. It always returns a checkable
artifact: the combination itself, or a covector ``y`` with ``y.c >= 0`` for
every column ``c`` and ``y.b < 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from kmcent.linalg import dot, primitive


@dataclass(frozen=True)
class Member:
    coeffs: tuple  # nonnegative Fractions, one per column


@dataclass(frozen=True)
class Separated:
    y: tuple  # primitive integer covector


def cone_membership(columns, b):
    columns = [list(c) for c in columns]
    m = len(b)
    k = len(columns)
    if all(x == 0 for x in b):
        return Member(tuple(Fraction(0) for _ in range(k)))
    if k == 0:
        y = primitive([-x for x in b])
        return Separated(tuple(y))
    sign = [1 if x >= 0 else -1 for x in b]
    # tableau rows: [A' | I | b']
    width = k + m + 1
    T = []
    for i in range(m):
        row = [Fraction(sign[i] * columns[j][i]) for j in range(k)]
        row += [Fraction(int(i == r)) for r in range(m)]
        row.append(Fraction(sign[i] * b[i]))
        T.append(row)
    basis = [k + i for i in range(m)]
    cost = [Fraction(0)] * k + [Fraction(1)] * m
    # reduced-cost row: c_j - c_B B^-1 A_j; last entry is -objective
    z = [cost[j] - sum(T[i][j] for i in range(m)) for j in range(k + m)]
    z.append(-sum(T[i][-1] for i in range(m)))

    while True:
        enter = next((j for j in range(k + m) if z[j] < 0), None)  # Bland
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen: phase-1 objective is bounded below by 0
            raise RuntimeError("unbounded phase-1 problem")
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        f = z[enter]
        z = [a - f * c for a, c in zip(z, T[r])]
        basis[r] = enter

    objective = -z[-1]
    if objective == 0:
        x = [Fraction(0)] * k
        for i, bj in enumerate(basis):
            if bj < k:
                x[bj] = T[i][-1]
        return Member(tuple(x))
    # dual multipliers of the flipped system: pi_i = 1 - reduced cost of artificial i
    pi = [1 - z[k + i] for i in range(m)]
    y = primitive([-pi[i] * sign[i] for i in range(m)])
    return Separated(tuple(y))


def check_member(columns, b, coeffs) -> bool:
    if any(c < 0 for c in coeffs):
        return False
    return all(
        sum(coeffs[j] * columns[j][i] for j in range(len(columns))) == b[i] for i in range(len(b))
    )


def check_separator(columns, b, y) -> bool:
    return all(dot(y, c) >= 0 for c in columns) and dot(y, b) < 0
