"""The symmetric centralizer subsystem Z_s(alpha) and its closure checks.

A root beta lies in Z_s(alpha) exactly when ``(beta, alpha) = 0`` and
``alpha + beta`` is not a real root. Only positive members are stored; the
set is symmetric under negation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from kmcent.rootspace import (
    NotRealRoot,
    RootSystem,
    iter_positive_real_roots,
    negate,
    root_key,
)


def _require_real(sys, *roots):
    for r in roots:
        if not sys.is_real_root(tuple(r)):
            raise NotRealRoot(f"{tuple(r)} is not a real root")


def is_strictly_orthogonal(sys: RootSystem, alpha, beta) -> bool:
    _require_real(sys, alpha, beta)
    return _strict(sys, tuple(alpha), tuple(beta))


def _strict(sys, alpha, beta) -> bool:
    if sys.form(alpha, beta) != 0:
        return False
    return not sys.is_real_root(tuple(a + b for a, b in zip(alpha, beta)))


@dataclass
class Subsystem:
    system: RootSystem
    defining_root: tuple
    members: list
    cap: int
    _index: set = field(default=None, repr=False)

    def __contains__(self, beta) -> bool:
        """Membership of +-beta, answered from the list below the cap and by
        the predicate above it."""
        beta = tuple(beta)
        if all(x <= 0 for x in beta):
            beta = negate(beta)
        if sum(beta) <= self.cap:
            if self._index is None:
                self._index = set(self.members)
            return beta in self._index
        return self.system.is_real_root(beta) and _strict(self.system, self.defining_root, beta)

    def __len__(self):
        return len(self.members)

    def to_dict(self, basis=None) -> dict:
        out = {
            "defining_root": list(self.defining_root),
            "cap": self.cap,
            "members": [list(m) for m in self.members],
        }
        if basis is not None:
            from kmcent.cartan import DynkinDiagram
            from kmcent.basis import basis_gcm

            roots = list(basis)
            if roots:
                diag = DynkinDiagram.from_gcm(basis_gcm(self.system, roots))
                out["basis_diagram"] = {
                    "nodes": [list(r) for r in roots],
                    "edges": [[i, j, a, b] for (i, j), (a, b) in sorted(diag.edges.items())],
                }
            else:
                out["basis_diagram"] = {"nodes": [], "edges": []}
        return out

    def to_json(self, basis=None) -> str:
        return json.dumps(self.to_dict(basis), separators=(",", ":"))


def compute_Zs(sys: RootSystem, alpha, height_cap: int) -> Subsystem:
    alpha = tuple(alpha)
    _require_real(sys, alpha)
    cov = sys.covector(alpha)
    members = []
    for beta in iter_positive_real_roots(sys, height_cap):
        if sum(c * b for c, b in zip(cov, beta)) != 0:
            continue
        if not sys.is_real_root(tuple(a + b for a, b in zip(alpha, beta))):
            members.append(beta)
    members.sort(key=root_key)
    return Subsystem(sys, alpha, members, height_cap)


@dataclass
class ClosureReport:
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_closure_under_sum(zs: Subsystem) -> ClosureReport:
    """For members beta, gamma (and their negatives): a real sum within the cap
    must again be a member."""
    sys = zs.system
    index = set(zs.members)
    checked = 0
    bad = []
    ms = zs.members
    for i, b in enumerate(ms):
        for c in ms[i:]:
            for s in (tuple(x + y for x, y in zip(b, c)), tuple(x - y for x, y in zip(b, c))):
                if not any(s):
                    continue
                pos = s if all(x >= 0 for x in s) else (negate(s) if all(x <= 0 for x in s) else None)
                if pos is None or sum(pos) > zs.cap:
                    continue
                if not sys.is_real_root(pos):
                    continue
                checked += 1
                if pos not in index:
                    bad.append((b, c, pos))
    return ClosureReport(checked, bad)


def check_weyl_closure(zs: Subsystem) -> ClosureReport:
    """``s_beta(gamma)`` stays in Z_s for all members; images above the cap are
    checked by the defining predicate."""
    sys = zs.system
    index = set(zs.members)
    checked = 0
    bad = []
    for b in zs.members:
        nb = sys.norm(b)
        cov = sys.covector(b)
        for c in zs.members:
            p = 2 * sum(x * y for x, y in zip(cov, c))
            if p % nb:
                bad.append((b, c, None))
                continue
            img = tuple(y - (p // nb) * x for x, y in zip(b, c))
            pos = img if all(x >= 0 for x in img) else negate(img)
            checked += 1
            if sum(pos) <= zs.cap:
                ok = pos in index
            else:
                ok = sys.is_real_root(pos) and _strict(sys, zs.defining_root, pos)
            if not ok:
                bad.append((b, c, pos))
    return ClosureReport(checked, bad)
