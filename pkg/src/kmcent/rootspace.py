"""Root lattice arithmetic: the invariant form, the real-root criterion,
reflections, root strings and height-bounded enumeration of positive real roots.

Root vectors are tuples of Python ints (coefficients over the simple roots).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from kmcent.cartan import GCM, classify, symmetrize, validate_gcm


class RankMismatch(ValueError):
    pass


class CriterionInapplicable(ValueError):
    pass


class NotRealRoot(ValueError):
    pass


class SameRay(ValueError):
    pass


class RootSystem:
    """A symmetrizable GCM together with its normalized invariant form ``B``."""

    def __init__(self, gcm, sym=None):
        self.gcm = gcm if isinstance(gcm, GCM) else validate_gcm(gcm)
        self.sym = sym if sym is not None else symmetrize(self.gcm)
        self.B = [list(row) for row in self.sym.B]
        self.rank = self.gcm.rank
        self.A = [list(row) for row in self.gcm.entries]

    def __repr__(self):
        return f"RootSystem({self.A})"

    @cached_property
    def component_types(self):
        return [classify(self.gcm.submatrix(c)) for c in self.gcm.components()]

    @cached_property
    def criterion_applies(self) -> bool:
        return all(t.kind in ("finite", "affine", "hyperbolic") for t in self.component_types)

    @cached_property
    def norms(self):
        return [self.B[i][i] for i in range(self.rank)]

    def simple(self, i: int):
        return tuple(int(i == j) for j in range(self.rank))

    def form(self, v, w):
        B = self.B
        return sum(v[i] * sum(B[i][j] * w[j] for j in range(self.rank)) for i in range(self.rank) if v[i])

    def norm(self, v):
        return self.form(v, v)

    def covector(self, v):
        """``B v`` as a list, so that ``(x, v) = x . covector(v)``."""
        return [sum(self.B[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank)]

    def pairing(self, v, alpha):
        """``<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)``."""
        val = Fraction(2 * self.form(v, alpha), self.norm(alpha))
        return int(val) if val.denominator == 1 else val

    def simple_pairings(self, v):
        """``<v, alpha_i^vee>`` for every simple root, using ``A`` directly."""
        A = self.A
        n = self.rank
        return [sum(A[i][j] * v[j] for j in range(n)) for i in range(n)]

    def is_real_root(self, v) -> bool:
        if not self.criterion_applies:
            raise CriterionInapplicable("real-root criterion needs finite, affine or hyperbolic type")
        return _is_real(self, v)

    def support_connected(self, v) -> bool:
        supp = [i for i, x in enumerate(v) if x]
        if not supp:
            return False
        seen = {supp[0]}
        stack = [supp[0]]
        s = set(supp)
        while stack:
            i = stack.pop()
            for j in s:
                if j not in seen and self.A[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(s)


def _is_real(sys: RootSystem, v) -> bool:
    n2 = sys.norm(v)
    if n2 <= 0:
        return False
    for k, a in zip(v, sys.norms):
        if (k * a) % n2:
            return False
    if len(sys.component_types) > 1 and not sys.support_connected(v):
        return False
    return True


def _check_rank(sys, *vs):
    for v in vs:
        if len(v) != sys.rank:
            raise RankMismatch(f"vector of length {len(v)} in a rank-{sys.rank} system")


def bilinear(sys: RootSystem, v, w):
    _check_rank(sys, v, w)
    return sys.form(v, w)


def height(v) -> int:
    return sum(v)


def is_real_root(sys: RootSystem, v) -> bool:
    _check_rank(sys, v)
    return sys.is_real_root(tuple(v))


def coroot_pairing(sys: RootSystem, v, alpha) -> int:
    _check_rank(sys, v, alpha)
    if not sys.is_real_root(tuple(alpha)):
        raise NotRealRoot(f"{tuple(alpha)} is not a real root")
    return sys.pairing(v, alpha)


def reflect(sys: RootSystem, alpha, v):
    """``s_alpha(v) = v - <v, alpha^vee> alpha``."""
    _check_rank(sys, alpha, v)
    if not sys.is_real_root(tuple(alpha)):
        raise NotRealRoot(f"{tuple(alpha)} is not a real root")
    p = sys.pairing(v, alpha)
    return tuple(x - p * a for x, a in zip(v, alpha))


def negate(v):
    return tuple(-x for x in v)


def add(v, w):
    return tuple(a + b for a, b in zip(v, w))


@dataclass(frozen=True)
class RootString:
    p: int
    q: int


STRING_GUARD = 64


def root_string(sys: RootSystem, alpha, beta) -> RootString:
    """The alpha-string through beta, ``beta - p alpha, ..., beta + q alpha``."""
    alpha, beta = tuple(alpha), tuple(beta)
    _check_rank(sys, alpha, beta)
    for r in (alpha, beta):
        if not sys.is_real_root(r):
            raise NotRealRoot(f"{r} is not a real root")
    if beta == alpha or beta == negate(alpha):
        raise SameRay("beta must differ from +-alpha")
    bound = abs(sys.pairing(beta, alpha)) + STRING_GUARD

    def walk(sign):
        k = 0
        while k < bound:
            nxt = tuple(b + sign * (k + 1) * a for a, b in zip(alpha, beta))
            if not sys.is_real_root(nxt):
                break
            k += 1
        return k

    return RootString(walk(-1), walk(+1))


def root_key(v):
    return (sum(v), tuple(v))


def iter_positive_real_roots(sys: RootSystem, height_cap: int):
    """Yield every positive real root of height <= cap exactly once, unordered.

    Each non-simple positive real root ``v`` has a canonical parent
    ``s_i v`` for the smallest ``i`` with ``<v, alpha_i^vee> > 0``; the parent
    is strictly lower. Walking this tree downward-to-upward needs no visited
    set, so memory stays proportional to the tree depth.
    """
    if not sys.criterion_applies:
        raise CriterionInapplicable("real-root enumeration needs finite, affine or hyperbolic type")
    if height_cap < 1:
        return
    n = sys.rank
    A = sys.A
    cols = [[A[j][i] for j in range(n)] for i in range(n)]
    stack = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        stack.append((v, 1, [A[j][i] for j in range(n)]))
    while stack:
        v, h, pr = stack.pop()
        yield tuple(v)
        for i in range(n):
            p = pr[i]
            if p >= 0 or h - p > height_cap:
                continue
            col = cols[i]
            npr = [pr[j] - p * col[j] for j in range(n)]
            # i must be the first positive pairing of the child
            if any(npr[j] > 0 for j in range(i)):
                continue
            w = list(v)
            w[i] -= p
            stack.append((w, h - p, npr))


def enumerate_positive_real_roots(sys: RootSystem, height_cap: int):
    """Positive real roots of height <= cap, sorted by (height, coefficients)."""
    return sorted(iter_positive_real_roots(sys, height_cap), key=root_key)


def roots_to_json(roots) -> str:
    return json.dumps([list(r) for r in roots], separators=(",", ":"))


def roots_to_tsv(sys: RootSystem, roots) -> str:
    lines = ["height\tcoeffs\tnorm2"]
    for r in roots:
        lines.append(f"{sum(r)}\t{','.join(map(str, r))}\t{sys.norm(r)}")
    return "\n".join(lines) + "\n"
