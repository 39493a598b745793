"""Weak independence via integer Farkas certificates, the height-ordered
basis search, closed-form family verification and quadratic family fitting.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from kmcent.cartan import GCM, validate_gcm
from kmcent.linalg import dot, lcm
from kmcent.lp import Member, cone_membership
from kmcent.rootspace import RootSystem, root_key


class DimensionMismatch(ValueError):
    pass


class FamilyViolation(ValueError):
    def __init__(self, n, reason):
        super().__init__(f"family fails at n={n}: {reason}")
        self.n = n
        self.reason = reason


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class FarkasCertificate:
    y: tuple


@dataclass(frozen=True)
class Independent:
    certificate: FarkasCertificate


@dataclass(frozen=True)
class Dependent:
    x: tuple  # nonnegative integers, one per column
    r: int


def weak_independence(columns, target):
    """Decide whether some positive multiple of ``target`` is a nonnegative
    integer combination of ``columns``.

    Returns :class:`Dependent` with ``A x = r b`` or :class:`Independent`
    with an integer ``y``, ``y.A >= 0``, ``y.b < 0``.
    """
    columns = [tuple(c) for c in columns]
    target = tuple(target)
    res = cone_membership(columns, target)
    if isinstance(res, Member):
        r = reduce(lcm, (c.denominator for c in res.coeffs), 1)
        x = tuple(int(c * r) for c in res.coeffs)
        g = reduce(gcd, x, r)
        return Dependent(tuple(v // g for v in x), r // g)
    return Independent(FarkasCertificate(tuple(res.y)))


def verify_certificate(cert: FarkasCertificate, columns, target) -> bool:
    y = tuple(cert.y)
    for c in list(columns) + [target]:
        if len(c) != len(y):
            raise DimensionMismatch(f"certificate length {len(y)} vs vector length {len(c)}")
    return all(dot(y, c) >= 0 for c in columns) and dot(y, target) < 0


def verify_witness(w: Dependent, columns, target) -> bool:
    if w.r <= 0 or any(x < 0 for x in w.x) or len(w.x) != len(columns):
        return False
    return all(
        sum(x * c[i] for x, c in zip(w.x, columns)) == w.r * target[i] for i in range(len(target))
    )


@dataclass
class BasisCandidate:
    roots: list
    certificates: dict  # root -> FarkasCertificate against the roots accepted before it
    witnesses: dict  # rejected root -> Dependent over the roots accepted before it
    cap: int
    complete: bool = False  # set only by a completeness argument (rank-3 stop, cones)

    def __len__(self):
        return len(self.roots)

    def to_dict(self) -> dict:
        out = []
        for k, r in enumerate(self.roots):
            out.append({"root": list(r), "height": sum(r), "certificate": list(self.certificates[r].y)})
        rej = [
            {"root": list(r), "height": sum(r), "x": list(w.x), "r": w.r}
            for r, w in sorted(self.witnesses.items(), key=lambda kv: root_key(kv[0]))
        ]
        return {"cap": self.cap, "complete": self.complete, "basis": out, "rejected": rej}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def find_basis(zs, max_roots=None) -> BasisCandidate:
    """Run the height-ordered acceptance procedure over the members of ``zs``.

    Members reachable from already accepted roots by height-raising
    reflections ``s_gamma`` are rejected with the explicit integer
    combination that reflection chain produces; every other member is
    tested by exact LP against the accepted roots and either accepted with
    a Farkas certificate or rejected with the LP's combination.
    """
    sys = zs.system
    cap = zs.cap
    accepted = []
    certs = {}
    witnesses = {}
    reached = {}  # root -> {basis index: coeff}

    def close(new_items):
        queue = list(new_items)
        while queue:
            beta, coeffs = queue.pop()
            for k, g in enumerate(accepted):
                p = 2 * sys.form(beta, g)
                ng = sys.norm(g)
                if p >= 0:
                    continue
                m = -p // ng
                img = tuple(b + m * x for b, x in zip(beta, g))
                if sum(img) > cap or img in reached:
                    continue
                c = dict(coeffs)
                c[k] = c.get(k, 0) + m
                reached[img] = c
                queue.append((img, c))

    for beta in zs.members:
        if max_roots is not None and len(accepted) >= max_roots:
            break
        if beta in reached:
            c = reached[beta]
            witnesses[beta] = Dependent(tuple(c.get(k, 0) for k in range(len(accepted))), 1)
            continue
        res = weak_independence(accepted, beta)
        if isinstance(res, Dependent):
            witnesses[beta] = res
            continue
        certs[beta] = res.certificate
        accepted.append(beta)
        k = len(accepted) - 1
        reached[beta] = {k: 1}
        # the new reflection acts on everything reached so far
        close([(beta, {k: 1})] + [(r, c) for r, c in list(reached.items()) if r != beta])
    return BasisCandidate(accepted, certs, witnesses, cap)


def basis_gcm(sys: RootSystem, roots) -> GCM:
    """Cartan matrix ``2 (b_i, b_j) / (b_i, b_i)`` of a list of real roots."""
    n = len(roots)
    rows = []
    for i in range(n):
        ni = sys.norm(roots[i])
        row = []
        for j in range(n):
            v = Fraction(2 * sys.form(roots[i], roots[j]), ni)
            if v.denominator != 1:
                raise ValueError(f"non-integral Cartan entry between basis roots {i + 1} and {j + 1}")
            row.append(int(v))
        rows.append(row)
    if n == 0:
        return GCM(())
    return validate_gcm(rows)


def rank3_early_stop(zs) -> BasisCandidate:
    """In rank 3 the centralizer lives in a plane, so two accepted roots are the
    whole basis."""
    if zs.system.rank != 3:
        raise ValueError("rank3_early_stop needs a rank-3 ambient system")
    cand = find_basis(zs, max_roots=2)
    cand.complete = len(cand.roots) == 2
    return cand


# -- closed-form families ----------------------------------------------------


@dataclass(frozen=True)
class PolynomialFamily:
    """Per-coordinate quadratics ``c0 + c1 n + c2 n^2`` with rational coefficients.

    ``swap`` lists coordinate pairs exchanged to obtain the mirror family.
    """

    polys: tuple
    n_min: int = 0
    n_max: int | None = None
    swap: tuple = ()

    def value(self, n):
        out = []
        for c0, c1, c2 in self.polys:
            v = Fraction(c0) + Fraction(c1) * n + Fraction(c2) * n * n
            out.append(v)
        return tuple(out)

    def __call__(self, n):
        v = self.value(n)
        if any(x.denominator != 1 for x in v):
            raise FamilyViolation(n, f"non-integral value {v}")
        return tuple(int(x) for x in v)

    def mirror(self, root):
        r = list(root)
        for i, j in self.swap:
            r[i], r[j] = r[j], r[i]
        return tuple(r)


@dataclass
class FamilyReport:
    roots: dict  # n -> (root, mirror)
    certificates: dict  # n -> (cert, mirror cert)

    @property
    def ok(self):
        return True


def verify_family(fam: PolynomialFamily, zs, n_range, certificates=None) -> FamilyReport:
    """Check integrality, reality, strict orthogonality and weak independence of
    every member (and mirror) against the family members of smaller height.

    ``certificates(n)`` may supply ``(y, y_mirror)``; supplied certificates
    must verify, otherwise one is computed by LP.
    """
    from kmcent.centralizer import _strict

    sys = zs.system
    alpha = zs.defining_root
    roots = {}
    certs = {}
    if len(fam.polys) != sys.rank:
        raise DimensionMismatch(f"family has {len(fam.polys)} coordinates, system rank {sys.rank}")
    for n in n_range:
        if n < fam.n_min or (fam.n_max is not None and n > fam.n_max):
            raise FamilyViolation(n, "outside the family range")
        beta = fam(n)
        pair = (beta, fam.mirror(beta))
        for b in pair:
            if not sys.is_real_root(b):
                raise FamilyViolation(n, f"{b} is not a real root")
            if not _strict(sys, alpha, b):
                raise FamilyViolation(n, f"{b} is not strictly orthogonal to {alpha}")
        roots[n] = pair
    for n in n_range:
        got = []
        for side, b in enumerate(roots[n]):
            cols = [c for m, pr in roots.items() for c in pr if sum(c) < sum(b)]
            supplied = certificates(n)[side] if certificates else None
            if supplied is not None:
                cert = FarkasCertificate(tuple(supplied))
                if not verify_certificate(cert, cols, b):
                    raise FamilyViolation(n, f"supplied certificate {supplied} fails for {b}")
            else:
                res = weak_independence(cols, b)
                if isinstance(res, Dependent):
                    raise FamilyViolation(n, f"{b} depends on lower family members")
                cert = res.certificate
            got.append(cert)
        certs[n] = tuple(got)
    return FamilyReport(roots, certs)


class NoFit:
    def __repr__(self):
        return "NoFit"

    def __eq__(self, other):
        return isinstance(other, NoFit)

    def __hash__(self):
        return 0


@dataclass(frozen=True)
class FittedFamily:
    """Quadratic families on residue classes: member ``offset + period*t + r``
    of the input equals ``classes[r](t)``."""

    period: int
    offset: int
    classes: tuple  # of PolynomialFamily

    def predict(self, index):
        k = index - self.offset
        return self.classes[k % self.period](k // self.period)


def _fit3(vals):
    """Quadratic through (0, v0), (1, v1), (2, v2) as (c0, c1, c2)."""
    v0, v1, v2 = (Fraction(v) for v in vals)
    c2 = (v2 - 2 * v1 + v0) / 2
    c1 = v1 - v0 - c2
    return (v0, c1, c2)


def fit_quadratic_family(sequence, max_period: int = 2, max_offset: int = 2):
    """Fit per-coordinate quadratics on residue classes (period 1 or 2).

    Each class is fitted through its first three members and must reproduce
    every later member exactly; at least one held-out member per class is
    required. A leading segment of up to ``max_offset`` members may be
    skipped. Returns :class:`FittedFamily` or ``NoFit()``.
    """
    seq = [tuple(s) for s in sequence]
    if len(seq) < 4:
        raise InsufficientData("need at least 4 sequence members")
    for period in range(1, max_period + 1):
        for offset in range(0, max_offset + 1):
            tail = seq[offset:]
            classes = [tail[r::period] for r in range(period)]
            if any(len(c) < 4 for c in classes):
                continue
            fams = []
            for c in classes:
                polys = tuple(_fit3([v[i] for v in c[:3]]) for i in range(len(c[0])))
                fam = PolynomialFamily(polys)
                if all(fam.value(t) == tuple(Fraction(x) for x in c[t]) for t in range(3, len(c))):
                    fams.append(fam)
                else:
                    break
            if len(fams) == period:
                return FittedFamily(period, offset, tuple(fams))
    return NoFit()
