"""Polyhedral cones, double description and chamber-walk basis certification."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from kmcent.lp import Member, cone_membership
from kmcent.linalg import kernel_lattice_basis, primitive, rank, rref


def _dotf(a, b):
    return sum(x * y for x, y in zip(a, b))


def _canon(v):
    return tuple(primitive(v))


@dataclass(frozen=True)
class Cone:
    """``{x : h.x >= 0 for h in halfspaces}`` = ``cone(rays) + span(lineality)``."""

    halfspaces: tuple
    rays: tuple
    lineality: tuple = ()

    @property
    def dim(self) -> int:
        if self.halfspaces:
            return len(self.halfspaces[0])
        return len((self.rays + self.lineality)[0])

    def contains(self, x) -> bool:
        return all(_dotf(h, x) >= 0 for h in self.halfspaces)


def double_description(halfspaces, dim=None):
    """Extreme rays and lineality basis of ``{x : a.x >= 0}``.

    Incremental Motzkin construction with the algebraic adjacency test. Rays
    are primitive integer vectors, sorted; the lineality basis is reduced.
    """
    hs = [[Fraction(x) for x in h] for h in halfspaces]
    d = dim if dim is not None else len(hs[0])
    lin = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    rays = []
    done = []
    for a in hs:
        vals = [_dotf(a, l) for l in lin]
        piv = next((k for k, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0 = lin[piv]
            s0 = vals[piv]
            if s0 < 0:
                l0 = [-x for x in l0]
                s0 = -s0
            new_lin = []
            for k, l in enumerate(lin):
                if k == piv:
                    continue
                f = _dotf(a, l) / s0
                new_lin.append([x - f * y for x, y in zip(l, l0)])
            new_rays = []
            for r in rays:
                f = _dotf(a, r) / s0
                new_rays.append([x - f * y for x, y in zip(r, l0)])
            new_rays.append(l0)
            lin = new_lin
            rays = new_rays
            done.append(a)
            continue
        done.append(a)
        pos, zero, neg = [], [], []
        for r in rays:
            v = _dotf(a, r)
            (pos if v > 0 else zero if v == 0 else neg).append((r, v))
        target_rank = d - len(lin) - 2
        combos = []
        if pos and neg:
            active = {}
            for r, _ in pos + neg:
                active[id(r)] = frozenset(k for k, h in enumerate(done[:-1]) if _dotf(h, r) == 0)
            for p, pv in pos:
                zp = active[id(p)]
                for q, qv in neg:
                    common = zp & active[id(q)]
                    if len(common) < target_rank:
                        continue
                    if (rank([done[k] for k in common]) if common else 0) != target_rank:
                        continue
                    combos.append([pv * y - qv * x for x, y in zip(p, q)])
        rays = [r for r, _ in pos] + [r for r, _ in zero] + combos
    out = sorted({_canon(r) for r in rays if any(r)})
    lin_basis = [tuple(primitive(row)) for row in rref(lin)[0] if any(row)] if lin else []
    return out, lin_basis


def facets(rays, lineality=(), dim=None):
    """Converse direction: inward facet normals (and equations) of ``cone(rays) + span(lineality)``."""
    gens = [list(r) for r in rays] + [list(l) for l in lineality] + [[-x for x in l] for l in lineality]
    d = dim if dim is not None else len(gens[0])
    return double_description(gens, d)


def cone_from_halfspaces(halfspaces) -> Cone:
    rays, lin = double_description(halfspaces)
    return Cone(tuple(tuple(h) for h in halfspaces), tuple(rays), tuple(lin))


def brute_force_rays(halfspaces, dim):
    """Extreme rays of a pointed cone via every ``dim-1`` subset of constraints."""
    from itertools import combinations

    from kmcent.linalg import nullspace

    out = set()
    hs = [list(h) for h in halfspaces]
    for sub in combinations(range(len(hs)), dim - 1):
        rows = [hs[k] for k in sub]
        if rank(rows) != dim - 1:
            continue
        ns = nullspace(rows, dim)
        v = ns[0]
        for s in (1, -1):
            w = [s * x for x in v]
            if all(_dotf(h, w) >= 0 for h in hs):
                out.add(_canon(w))
    return sorted(out)


# -- root-system cones ---------------------------------------------------------------


def project_to_wall(sys, alpha, v):
    """``v - ((v, alpha) / (alpha, alpha)) alpha``."""
    na = sys.norm(alpha)
    f = Fraction(sys.form(v, alpha), na)
    return tuple(Fraction(x) - f * a for x, a in zip(v, alpha))


def _covector(sys, v):
    return [sum(sys.B[i][j] * v[j] for j in range(sys.rank)) for i in range(sys.rank)]


def fundamental_chamber(sys) -> Cone:
    hs = [tuple(_covector(sys, sys.simple(j))) for j in range(sys.rank)]
    return cone_from_halfspaces(hs)


def _reflect(sys, gamma, x):
    ng = sys.norm(gamma)
    f = Fraction(2 * sys.form(x, gamma), ng)
    return tuple(Fraction(a) - f * g for a, g in zip(x, gamma))


@dataclass(frozen=True)
class Certified:
    pass


@dataclass(frozen=True)
class CutBy:
    root: tuple


@dataclass(frozen=True)
class Inconclusive:
    chambers_explored: int


@dataclass
class CertificationResult:
    verdict: object
    chambers: int = 0
    reached_rays: int = 0
    targets: list = field(default_factory=list)

    def to_dict(self) -> dict:
        v = self.verdict
        out = {"verdict": type(v).__name__, "chambers": self.chambers, "reached_rays": self.reached_rays}
        if isinstance(v, CutBy):
            out["cutting_root"] = list(v.root)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


class EmptyCandidate(ValueError):
    pass


DEFAULT_BUDGET = 10_000


def wall_cone(sys, alpha, gamma):
    """``C(Gamma)`` cut down to the wall ``(x, alpha) = 0``: rays and lineality in root coordinates."""
    c = primitive(_covector(sys, alpha))
    basis = kernel_lattice_basis(c)
    hs = [[_dotf(b, _covector(sys, g)) for b in basis] for g in gamma]
    if not hs:
        rays, lin = [], [[int(i == k) for i in range(sys.rank - 1)] for k in range(sys.rank - 1)]
    else:
        rays, lin = double_description(hs, sys.rank - 1)

    def up(u):
        return _canon([sum(u[k] * basis[k][i] for k in range(len(basis))) for i in range(sys.rank)])

    return [up(r) for r in rays], [up(l) for l in lin]


def find_cut(sys, zs, rays, lineality):
    """First member of ``zs`` whose hyperplane strictly separates points of the cone."""
    for beta in zs.members:
        cov = _covector(sys, beta)
        if any(_dotf(cov, l) != 0 for l in lineality):
            return beta
        vals = [_dotf(cov, r) for r in rays]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            return beta
    return None


def certify_basis(sys, zs, gamma, chamber_budget: int = DEFAULT_BUDGET, empty_certified: bool = False) -> CertificationResult:
    """Prove ``C(gamma) = F(Omega)`` for ``Omega = zs`` by walking chambers of ``Phi``.

    Chambers ``wF`` are reflected across walls whose roots lie outside
    ``Omega``; their rays, projected to the wall of the defining root, stay in
    the closure of ``F(Omega)``. Once every ray of ``C(gamma)`` on that wall is
    in the conical hull of reached projected rays, the candidate is a basis.
    """
    gamma = [tuple(g) for g in gamma]
    if not gamma:
        if empty_certified:
            return CertificationResult(Certified())
        if zs.members:
            return CertificationResult(CutBy(zs.members[0]))
        raise EmptyCandidate("empty candidate needs an upstream emptiness certificate")
    alpha = zs.defining_root
    rays, lin = wall_cone(sys, alpha, gamma)
    cut = find_cut(sys, zs, rays, lin)
    if cut is not None:
        return CertificationResult(CutBy(cut), targets=rays)
    targets = [r for r in rays] + lin + [tuple(-x for x in l) for l in lin]
    targets = [t for t in targets if any(t)]
    pending = list(targets)
    F = fundamental_chamber(sys)
    start_rays = tuple(tuple(Fraction(x) for x in r) for r in F.rays)
    start_walls = tuple(sys.simple(j) for j in range(sys.rank))
    seen = {frozenset(start_walls)}
    queue = deque([(start_walls, start_rays)])
    reached = set()
    explored = 0
    next_check = 1

    def add_rays(rs):
        for r in rs:
            p = project_to_wall(sys, alpha, r)
            if any(p):
                reached.add(_canon(p))

    def check():
        nonlocal pending
        cols = sorted(reached)
        still = []
        for t in pending:
            if _canon(t) in reached:
                continue
            if not isinstance(cone_membership(cols, t), Member):
                still.append(t)
        pending = still
        return not pending

    while queue and explored < chamber_budget:
        walls, crays = queue.popleft()
        explored += 1
        add_rays(crays)
        if explored >= next_check:
            next_check *= 2
            if check():
                return CertificationResult(Certified(), explored, len(reached), targets)
        for j, w in enumerate(walls):
            pos = w if any(x > 0 for x in w) else tuple(-x for x in w)
            if pos in zs:
                continue
            nwalls = tuple(tuple(int(x) for x in _reflect(sys, w, v)) for v in walls)
            key = frozenset(nwalls)
            if key in seen:
                continue
            seen.add(key)
            nrays = tuple(_reflect(sys, w, r) for r in crays)
            queue.append((nwalls, nrays))
    if check():
        return CertificationResult(Certified(), explored, len(reached), targets)
    return CertificationResult(Inconclusive(explored), explored, len(reached), targets)


def omega_contains_line(sys, zs) -> bool:
    """``+-alpha`` satisfy every half-space of ``F(Omega)`` (members up to the cap)."""
    alpha = zs.defining_root
    return all(sys.form(alpha, b) == 0 for b in zs.members)
