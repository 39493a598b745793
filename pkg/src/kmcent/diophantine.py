"""Emptiness certificates for small centralizers.

A root ``beta`` orthogonal to ``alpha`` satisfies ``c . beta = 0`` with
``c = B alpha / gcd``. Parametrizing that lattice as ``beta = M u`` turns the
norm condition ``|beta|^2 = t`` into a quadratic form in one variable fewer.
Three kinds of certificate close a norm value ``t``:

* the content of the form does not divide ``t``;
* the form is a product of integer linear forms and the finitely many
  solutions are listed;
* a residue scan mod ``m`` shows no solutions, or shows that every solution
  makes ``alpha + beta`` a real root.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, isqrt

from kmcent.centralizer import _strict, compute_Zs
from kmcent.linalg import kernel_lattice_basis
from kmcent.rootspace import RootSystem, negate


class NoEliminableVariable(ValueError):
    pass


class ZeroTarget(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


class ModulusTooLarge(ValueError):
    pass


MAX_MODULUS = 64
MODULUS_SCHEDULE = (2, 3, 4, 8, 12, 16, 24)
MAX_CLASSES = 200_000


@dataclass(frozen=True)
class QuadraticForm:
    """``sum_{i<=j} coeffs[(i, j)] u_i u_j`` given by its integer Gram matrix ``G``."""

    G: tuple

    @property
    def nvars(self) -> int:
        return len(self.G)

    def coefficients(self) -> dict:
        n = self.nvars
        out = {}
        for i in range(n):
            for j in range(i, n):
                v = self.G[i][i] if i == j else 2 * self.G[i][j]
                if v:
                    out[(i, j)] = v
        return out

    def content(self) -> int:
        return reduce(gcd, self.coefficients().values(), 0)

    def __call__(self, u) -> int:
        n = self.nvars
        return sum(u[i] * self.G[i][j] * u[j] for i in range(n) for j in range(n))

    def __str__(self):
        names = "xyzwvuts"
        terms = []
        for (i, j), c in sorted(self.coefficients().items()):
            mono = f"{names[i]}²" if i == j else f"{names[i]}{names[j]}"
            terms.append((c, mono))
        s = ""
        for k, (c, mono) in enumerate(terms):
            sign = "-" if c < 0 else ("+" if k else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            s += (f" {sign} " if k else sign) + mag + mono
        return s or "0"


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """``a y^2 + b y z + c z^2``."""

    a: int
    b: int
    c: int
    scale: int = 1

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, y, z):
        return self.a * y * y + self.b * y * z + self.c * z * z

    @classmethod
    def from_form(cls, q: QuadraticForm) -> "BinaryQuadraticForm":
        if q.nvars != 2:
            raise ValueError("binary form needs two variables")
        return cls(q.G[0][0], 2 * q.G[0][1], q.G[1][1])


@dataclass(frozen=True)
class Elimination:
    """``beta = M u``; ``eliminated`` is the solved coordinate, or None when a
    lattice basis of ``c^perp`` is used instead."""

    c: tuple
    eliminated: int | None
    M: tuple  # n rows, n-1 columns
    form: QuadraticForm

    def lift(self, u):
        return tuple(sum(r[k] * u[k] for k in range(len(u))) for r in self.M)

    def to_dict(self) -> dict:
        return {
            "orthogonality": list(self.c),
            "eliminated": self.eliminated,
            "substitution": [list(r) for r in self.M],
            "form": {"gram": [list(r) for r in self.form.G], "text": str(self.form)},
        }


def _form_matrix(B):
    # integral B scaled to content 1
    common = reduce(gcd, (int(x) for row in B for x in row), 0)
    return [[int(x) // common for x in row] for row in B]


def eliminate(sys: RootSystem, alpha) -> Elimination:
    """Parametrize ``{beta : (beta, alpha) = 0}`` by the last coordinate with a
    unit coefficient, falling back to a lattice basis."""
    B = _form_matrix(sys.B)
    n = len(B)
    raw = [sum(B[i][j] * alpha[j] for j in range(n)) for i in range(n)]
    g = reduce(gcd, raw, 0)
    if g == 0:
        raise NoEliminableVariable("alpha is isotropic for the form")
    c = [x // g for x in raw]
    units = [i for i in range(n) if abs(c[i]) == 1]
    if units:
        k = units[-1]
        free = [i for i in range(n) if i != k]
        M = []
        for i in range(n):
            if i == k:
                # c_k x_k = -sum c_j x_j
                M.append([-c[j] * c[k] for j in free])
            else:
                M.append([int(i == j) for j in free])
        eliminated = k
    else:
        K = kernel_lattice_basis(c)
        M = [[v[i] for v in K] for i in range(n)]
        eliminated = None
    G = [[sum(M[a][p] * B[a][b] * M[b][q] for a in range(n) for b in range(n)) for q in range(n - 1)] for p in range(n - 1)]
    return Elimination(tuple(c), eliminated, tuple(tuple(r) for r in M), QuadraticForm(tuple(tuple(r) for r in G)))


# -- factoring ---------------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    p: int
    q: int  # p y + q z

    def __call__(self, y, z):
        return self.p * y + self.q * z


@dataclass(frozen=True)
class Factored:
    k: int
    L1: LinearForm
    L2: LinearForm


class Irreducible:
    def __repr__(self):
        return "Irreducible"

    def __eq__(self, other):
        return isinstance(other, Irreducible)

    def __hash__(self):
        return 1


def factor_form(f: BinaryQuadraticForm):
    """``f = k L1 L2`` over the integers when the discriminant is a square."""
    a, b, c = f.a, f.b, f.c
    if a == b == c == 0:
        raise ValueError("zero form")
    d = f.discriminant
    if d < 0 or isqrt(d) ** 2 != d:
        return Irreducible()
    s = isqrt(d)
    if a == 0:
        # z (b y + c z)
        lin = LinearForm(b, c)
        g = gcd(lin.p, lin.q)
        return Factored(g, LinearForm(0, 1), LinearForm(lin.p // g, lin.q // g))
    # a f = (a y + r1 z)(a y + r2 z), r1, r2 = (b +- s)/2
    r1, r2 = (b + s) // 2, (b - s) // 2
    l1, l2 = (a, r1), (a, r2)
    g1, g2 = gcd(*l1), gcd(*l2)
    L1 = LinearForm(l1[0] // g1, l1[1] // g1)
    L2 = LinearForm(l2[0] // g2, l2[1] // g2)
    k = a // (L1.p * L2.p)
    return Factored(k, L1, L2)


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def solve_factored(fac: Factored, value: int):
    """All integer ``(y, z)`` with ``k L1(y,z) L2(y,z) = value``."""
    if value == 0:
        raise ZeroTarget("zero target gives whole lines of solutions")
    L1, L2 = fac.L1, fac.L2
    det = L1.p * L2.q - L1.q * L2.p
    if det == 0:
        raise DegenerateForm("proportional linear factors give lines of solutions")
    if value % fac.k:
        return []
    v = value // fac.k
    out = set()
    for d in _divisors(v):
        for s in (d, -d):
            e = v // s
            # L1 = s, L2 = e
            ny = s * L2.q - e * L1.q
            nz = L1.p * e - L2.p * s
            if ny % det == 0 and nz % det == 0:
                out.add((ny // det, nz // det))
    return sorted(out)


# -- congruences -------------------------------------------------------------------


@dataclass(frozen=True)
class NoSolutions:
    modulus: int


@dataclass(frozen=True)
class AllForceRealSum:
    modulus: int


@dataclass(frozen=True)
class Inconclusive:
    modulus: int


@dataclass(frozen=True)
class ContentObstruction:
    content: int
    target: int


@dataclass
class CongruenceCertificate:
    target: int
    verdict: object  # NoSolutions | AllForceRealSum | Inconclusive
    classes: int
    norm_ok: int
    real_ok: int
    forced: int

    @property
    def modulus(self):
        return self.verdict.modulus

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "modulus": self.modulus,
            "verdict": type(self.verdict).__name__,
            "residues": {
                "classes": self.classes,
                "norm_ok": self.norm_ok,
                "real_ok": self.real_ok,
                "forced": self.forced,
            },
        }


def _evaluable(mod_needed, m):
    return m % mod_needed == 0


def congruence_scan(sys: RootSystem, alpha, elim: Elimination, target: int, m: int) -> CongruenceCertificate:
    """Scan all residue vectors ``u`` mod ``m`` of the parametrization.

    A class survives when ``f(u) = target`` mod ``m`` and the real-root
    divisibility conditions of ``beta`` that are decided mod ``m`` hold. The
    verdict is NoSolutions if nothing survives and AllForceRealSum if every
    survivor decides ``alpha + beta`` real.
    """
    if m > MAX_MODULUS:
        raise ModulusTooLarge(f"modulus {m} exceeds {MAX_MODULUS}")
    B = _form_matrix(sys.B)
    n = len(B)
    norms = [B[i][i] for i in range(n)]
    a2 = sum(alpha[i] * B[i][j] * alpha[j] for i in range(n) for j in range(n))
    N = target + a2
    need_beta = [target // gcd(target, x) for x in norms]
    need_sum = [N // gcd(N, x) for x in norms]
    beta_checks = [i for i in range(n) if _evaluable(need_beta[i], m)]
    sum_decided = all(_evaluable(need_sum[i], m) for i in range(n))
    classes = norm_ok = real_ok = forced = 0
    q = elim.form
    for u in itertools.product(range(m), repeat=n - 1):
        classes += 1
        if (q(u) - target) % m:
            continue
        norm_ok += 1
        beta = elim.lift(u)
        if any(((beta[i] % need_beta[i]) * norms[i]) % target for i in beta_checks):
            continue
        real_ok += 1
        if sum_decided and all((((beta[i] + alpha[i]) % need_sum[i]) * norms[i]) % N == 0 for i in range(n)):
            forced += 1
    if real_ok == 0:
        verdict = NoSolutions(m)
    elif forced == real_ok:
        verdict = AllForceRealSum(m)
    else:
        verdict = Inconclusive(m)
    return CongruenceCertificate(target, verdict, classes, norm_ok, real_ok, forced)


def verify_congruence(sys: RootSystem, alpha, elim: Elimination, cert: CongruenceCertificate) -> bool:
    """Re-evaluate a certificate by direct arithmetic on full residue vectors of ``beta``."""
    B = _form_matrix(sys.B)
    n = len(B)
    m = cert.modulus
    t = cert.target
    norms = [B[i][i] for i in range(n)]
    N = t + sum(alpha[i] * B[i][j] * alpha[j] for i in range(n) for j in range(n))
    seen_real = False
    for u in itertools.product(range(m), repeat=n - 1):
        beta = elim.lift(u)
        val = sum(beta[i] * B[i][j] * beta[j] for i in range(n) for j in range(n))
        if (val - t) % m:
            continue
        ok = True
        for i in range(n):
            step = t // gcd(t, norms[i])
            if m % step == 0 and (beta[i] * norms[i]) % t:
                ok = False
        if not ok:
            continue
        seen_real = True
        if isinstance(cert.verdict, AllForceRealSum):
            for i in range(n):
                if ((beta[i] + alpha[i]) * norms[i]) % N:
                    return False
    if isinstance(cert.verdict, NoSolutions):
        return not seen_real
    return True


# -- pipeline ----------------------------------------------------------------------


@dataclass
class NormCoverage:
    target: int
    method: str  # "content", "factored", "congruence", "open"
    detail: object


@dataclass
class Empty:
    elimination: Elimination
    coverage: list

    def to_dict(self) -> dict:
        return {"verdict": "Empty", "elimination": self.elimination.to_dict(), "norms": [_cov_dict(c) for c in self.coverage]}


@dataclass
class A1:
    root: tuple
    certified: bool
    coverage: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"verdict": "A1", "root": list(self.root), "certified": self.certified, "norms": [_cov_dict(c) for c in self.coverage]}


@dataclass
class TwoRoots:
    roots: tuple

    def to_dict(self) -> dict:
        return {"verdict": "TwoRoots", "roots": [list(r) for r in self.roots]}


@dataclass
class Undecided:
    coverage: list
    found: tuple = ()

    def to_dict(self) -> dict:
        return {"verdict": "Undecided", "found": [list(r) for r in self.found], "norms": [_cov_dict(c) for c in self.coverage]}


def _cov_dict(c: NormCoverage) -> dict:
    d = c.detail
    if isinstance(d, CongruenceCertificate):
        detail = d.to_dict()
    elif isinstance(d, ContentObstruction):
        detail = {"content": d.content, "target": d.target}
    elif isinstance(d, list):
        detail = [list(x) for x in d]
    else:
        detail = d
    return {"target": c.target, "method": c.method, "detail": detail}


def certificate_json(result) -> str:
    return json.dumps(result.to_dict(), separators=(",", ":"), ensure_ascii=False)


def _cover_norm(sys, alpha, elim, t, schedule):
    """Close one norm value, returning (NormCoverage, roots found beyond enumeration)."""
    content = elim.form.content()
    if content and t % content:
        return NormCoverage(t, "content", ContentObstruction(content, t)), []
    if elim.form.nvars == 2:
        bq = BinaryQuadraticForm.from_form(elim.form)
        fac = factor_form(bq)
        if isinstance(fac, Factored):
            try:
                sols = solve_factored(fac, t)
            except DegenerateForm:
                sols = None
            if sols is not None:
                hits = []
                for y, z in sols:
                    beta = elim.lift((y, z))
                    if all(x <= 0 for x in beta):
                        beta = negate(beta)
                    if any(beta) and all(x >= 0 for x in beta) and sys.is_real_root(beta) and _strict(sys, alpha, beta):
                        hits.append(beta)
                return NormCoverage(t, "factored", sorted(set(hits))), sorted(set(hits))
    last = None
    for m in schedule:
        if m ** (elim.form.nvars) > MAX_CLASSES:
            continue
        cert = congruence_scan(sys, alpha, elim, t, m)
        last = cert
        if not isinstance(cert.verdict, Inconclusive):
            return NormCoverage(t, "congruence", cert), []
    return NormCoverage(t, "open", last), []


def certify_small_centralizer(sys: RootSystem, alpha, cap: int = 20, schedule=MODULUS_SCHEDULE):
    """Empty / A1 / TwoRoots / Undecided for ``Z_s(alpha)``.

    Norm values considered are those of the simple roots, in the reduced form.
    """
    alpha = tuple(alpha)
    zs = compute_Zs(sys, alpha, cap)
    if len(zs.members) >= 2:
        return TwoRoots(tuple(zs.members[:2]))
    elim = eliminate(sys, alpha)
    B = _form_matrix(sys.B)
    targets = sorted({B[i][i] for i in range(len(B))})
    coverage = []
    found = set(zs.members)
    for t in targets:
        cov, hits = _cover_norm(sys, alpha, elim, t, schedule)
        coverage.append(cov)
        found.update(hits)
    found = sorted(found, key=lambda r: (sum(r), r))
    if len(found) >= 2:
        return TwoRoots(tuple(found[:2]))
    closed = all(c.method != "open" for c in coverage)
    if len(found) == 1:
        # every settled norm value either lists its solutions or has none in Z_s
        return A1(found[0], closed, coverage)
    if closed:
        return Empty(elim, coverage)
    return Undecided(coverage, tuple(found))
