"""End-to-end analysis of one defining root, and atlas helpers."""
from __future__ import annotations

from collections import deque

from kmcent.basis import basis_gcm, find_basis, rank3_early_stop
from kmcent.cartan import DynkinDiagram, UnrecognizedComponent, automorphisms, identify_diagram
from kmcent.centralizer import compute_Zs
from kmcent.cones import Certified, CutBy, certify_basis
from kmcent.diophantine import A1, Empty, TwoRoots, certify_small_centralizer
from kmcent.rootspace import RootSystem, reflect


def _diagram(sys, roots):
    if not roots:
        return {"nodes": [], "edges": []}
    g = basis_gcm(sys, roots)
    d = DynkinDiagram.from_gcm(g)
    try:
        name = identify_diagram(g).name
    except UnrecognizedComponent:
        name = None
    return {
        "nodes": [list(r) for r in roots],
        "edges": [[i + 1, j + 1, a, b] for (i, j), (a, b) in sorted(d.edges.items())],
        "type": name,
    }


def analyze(sys: RootSystem, alpha, cap: int, budget: int) -> dict:
    """Members, basis and a verdict: Certified, A1, Empty, UpToHeight or
    InfiniteRankSuspected."""
    alpha = tuple(alpha)
    zs = compute_Zs(sys, alpha, cap)
    out = {"alpha": list(alpha), "cap": cap, "members": len(zs.members)}
    if sys.rank == 3 and len(zs.members) >= 2:
        cand = rank3_early_stop(zs)
        out.update(basis=[list(r) for r in cand.roots], diagram=_diagram(sys, cand.roots))
        out["verdict"] = "Certified" if cand.complete else f"UpToHeight({cap})"
        out["certificate"] = {"method": "rank-3 dimension bound"}
        return out
    if not zs.members or (sys.rank == 3 and len(zs.members) < 2):
        res = certify_small_centralizer(sys, alpha, cap)
        out["certificate"] = res.to_dict()
        if isinstance(res, Empty):
            out.update(basis=[], diagram=_diagram(sys, []), verdict="Empty")
            return out
        if isinstance(res, A1):
            out.update(basis=[list(res.root)], diagram=_diagram(sys, [res.root]))
            out["verdict"] = "A1" if res.certified else f"UpToHeight({cap})"
            return out
        if isinstance(res, TwoRoots) and sys.rank == 3:
            out["verdict"] = f"UpToHeight({cap})"
            out.update(basis=[list(r) for r in res.roots], diagram=_diagram(sys, list(res.roots)))
            return out
        if not zs.members:
            out.update(basis=[], diagram=_diagram(sys, []), verdict=f"UpToHeight({cap})")
            return out
    cand = find_basis(zs)
    out.update(basis=[list(r) for r in cand.roots], diagram=_diagram(sys, cand.roots))
    res = certify_basis(sys, zs, cand.roots, budget)
    out["certificate"] = res.to_dict()
    if isinstance(res.verdict, Certified):
        out["verdict"] = "Certified"
    elif isinstance(res.verdict, CutBy):
        out["verdict"] = f"UpToHeight({cap})"
    elif cand.roots and sum(cand.roots[-1]) > cap // 2:
        # new basis roots keep appearing close to the cap
        out["verdict"] = f"InfiniteRankSuspected({cap})"
    else:
        out["verdict"] = f"UpToHeight({cap})"
    return out


# -- choosing defining roots ---------------------------------------------------------


def simple_root_orbits(sys: RootSystem):
    """Classes of simple roots under the Weyl group (paths of single bonds) merged
    by diagram automorphisms; each class sorted, classes sorted."""
    n = sys.rank
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)

    for i in range(n):
        for j in range(n):
            if i != j and sys.A[i][j] == sys.A[j][i] == -1:
                union(i, j)
    for perm in automorphisms(sys.gcm):
        for i in range(n):
            union(i, perm[i])
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _orbit_roots(sys, start, height_cap):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(sys.rank):
            w = reflect(sys, sys.simple(i), v)
            if all(x >= 0 for x in w) and sum(w) <= height_cap and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def choose_alpha(sys: RootSystem, orbit, search_height: int = 12):
    """Root in the orbit of the given simple roots maximizing the number of
    simple roots in Z_s(alpha), then the number of diagram automorphisms fixing
    alpha, then smallest (height, coefficients)."""
    from kmcent.centralizer import _strict

    cands = set()
    for i in orbit:
        cands |= _orbit_roots(sys, sys.simple(i), search_height)
    auts = automorphisms(sys.gcm)

    def score(a):
        count = sum(1 for j in range(sys.rank) if _strict(sys, a, sys.simple(j)))
        fixed = sum(1 for p in auts if tuple(a[p[i]] for i in range(sys.rank)) == a)
        return (-count, -fixed, sum(a), a)

    return min(cands, key=score)
