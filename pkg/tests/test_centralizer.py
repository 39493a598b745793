import json

import pytest

from kmcent.cartan import enumerate_hyperbolic_catalog
from kmcent.centralizer import (
    check_closure_under_sum,
    check_weyl_closure,
    compute_Zs,
    is_strictly_orthogonal,
)
from kmcent.rootspace import NotRealRoot, RootSystem

from oracles import brute_zs, simply_laced, weyl_orbit_roots

CATALOG = enumerate_hyperbolic_catalog(3, 6)
CASES = [(e.id, e.gcm, i) for e in CATALOG[::5] for i in range(e.gcm.rank)]


@pytest.mark.parametrize("eid, g, i", CASES, ids=[f"{c[0]}-a{c[2] + 1}" for c in CASES])
def test_members_match_oracle(eid, g, i):
    cap = 16
    rs = RootSystem(g)
    alpha = rs.simple(i)
    zs = compute_Zs(rs, alpha, cap)
    assert zs.members == brute_zs(g.rows(), alpha, cap)


def test_non_simple_defining_root():
    A = simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    rs = RootSystem(A)
    alpha = (1, 1, 0, 0)
    assert compute_Zs(rs, alpha, 14).members == brute_zs(A, alpha, 14)


def test_defining_root_must_be_real():
    rs = RootSystem(simply_laced(3, [(1, 2), (2, 3), (3, 1)]))
    with pytest.raises(NotRealRoot):
        compute_Zs(rs, (1, 1, 1), 5)


def test_strict_orthogonality_examples():
    rs = RootSystem(simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)]))
    a4 = (0, 0, 0, 1)
    assert is_strictly_orthogonal(rs, a4, (0, 0, 1, 0))
    # a_1 and a_4 are joined by an edge
    assert not is_strictly_orthogonal(rs, a4, (1, 0, 0, 0))


def test_membership_above_cap_uses_predicate():
    A = simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    rs = RootSystem(A)
    small = compute_Zs(rs, (0, 0, 0, 1), 10)
    big = compute_Zs(rs, (0, 0, 0, 1), 40)
    for b in big.members:
        assert b in small
        assert tuple(-x for x in b) in small
    assert (1, 0, 0, 0) not in small


@pytest.mark.parametrize("eid, g, i", CASES[::3], ids=[f"{c[0]}-a{c[2] + 1}" for c in CASES[::3]])
def test_closures(eid, g, i):
    rs = RootSystem(g)
    zs = compute_Zs(rs, rs.simple(i), 20)
    assert check_closure_under_sum(zs).ok
    assert check_weyl_closure(zs).ok


def test_closure_detects_a_missing_member():
    A = simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    rs = RootSystem(A)
    zs = compute_Zs(rs, (0, 0, 0, 1), 20)
    assert len(zs.members) >= 3
    zs.members = [m for m in zs.members if m != zs.members[2]]
    zs._index = None
    assert not check_weyl_closure(zs).ok


def test_serialization():
    A = simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    rs = RootSystem(A)
    zs = compute_Zs(rs, (0, 0, 0, 1), 20)
    d = json.loads(zs.to_json(basis=zs.members[:2]))
    assert d["defining_root"] == [0, 0, 0, 1]
    assert d["members"][0] == list(zs.members[0])
    assert len(d["basis_diagram"]["nodes"]) == 2


def test_real_sum_of_members_is_member():
    # independent restatement over the oracle root set
    A = simply_laced(5, [(1, 2), (2, 3), (3, 4), (4, 1), (5, 1)])
    real = weyl_orbit_roots(A, 22)
    ms = set(brute_zs(A, (0, 0, 0, 0, 1), 20, real))
    for b in ms:
        for c in ms:
            s = tuple(x + y for x, y in zip(b, c))
            if sum(s) <= 20 and s in real:
                assert s in ms
