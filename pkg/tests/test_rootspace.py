import json

import pytest
from hypothesis import given, strategies as st

from kmcent.cartan import enumerate_hyperbolic_catalog, standard_gcm
from kmcent.rootspace import (
    CriterionInapplicable,
    NotRealRoot,
    RankMismatch,
    RootSystem,
    SameRay,
    bilinear,
    coroot_pairing,
    enumerate_positive_real_roots,
    is_real_root,
    reflect,
    root_string,
    roots_to_json,
    roots_to_tsv,
)

from oracles import simply_laced, weyl_orbit_roots

CATALOG = enumerate_hyperbolic_catalog(3, 5)
SAMPLE = [e.gcm for e in CATALOG[::7]] + [
    standard_gcm(n) for n in ["E_8", "F_4", "G_2", "A_3^{(1)}", "G_2^{(1)}", "A_4^{(2)}", "D_4^{(3)}"]
]


@pytest.mark.parametrize("g", SAMPLE, ids=lambda g: str(g.rows()))
def test_enumeration_matches_reflection_orbit(g):
    cap = 14
    rs = RootSystem(g)
    got = enumerate_positive_real_roots(rs, cap)
    assert len(got) == len(set(got))
    assert set(got) == weyl_orbit_roots(g.rows(), cap)
    assert got == sorted(got, key=lambda v: (sum(v), v))


@pytest.mark.parametrize("name, count", [("A_4", 10), ("D_5", 20), ("E_6", 36), ("E_7", 63), ("E_8", 120), ("F_4", 24), ("G_2", 6)])
def test_finite_root_counts(name, count):
    assert len(enumerate_positive_real_roots(RootSystem(standard_gcm(name)), 100)) == count


def test_affine_real_roots_avoid_delta():
    rs = RootSystem(standard_gcm("A_2^{(1)}"))
    roots = enumerate_positive_real_roots(rs, 6)
    assert (1, 1, 1) not in roots and (2, 2, 2) not in roots
    assert (2, 1, 1) in roots
    # three roots at heights 1, 2, 4, 5; none at 3 and 6
    assert len(roots) == 12


def test_criterion_refuses_indefinite_non_hyperbolic():
    # a 5-cycle with two chords is neither finite, affine nor hyperbolic
    A = simply_laced(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)])
    A[0][3] = A[3][0] = -2
    rs = RootSystem(A)
    with pytest.raises(CriterionInapplicable):
        rs.is_real_root((1, 0, 0, 0, 0))
    with pytest.raises(CriterionInapplicable):
        enumerate_positive_real_roots(rs, 3)


def test_rank_mismatch_and_non_real():
    rs = RootSystem(standard_gcm("A_2"))
    with pytest.raises(RankMismatch):
        bilinear(rs, (1, 0), (1, 0, 0))
    with pytest.raises(NotRealRoot):
        reflect(rs, (2, 0), (1, 0))
    with pytest.raises(SameRay):
        root_string(rs, (1, 0), (-1, 0))
    assert not is_real_root(rs, (0, 0))
    assert not is_real_root(rs, (2, 1))


HYP = RootSystem(CATALOG[10].gcm)
HYP_ROOTS = enumerate_positive_real_roots(HYP, 12)


@given(st.sampled_from(HYP_ROOTS), st.sampled_from(HYP_ROOTS))
def test_reflection_is_norm_preserving_involution(a, v):
    w = reflect(HYP, a, v)
    assert HYP.norm(w) == HYP.norm(v)
    assert reflect(HYP, a, w) == tuple(v)
    assert is_real_root(HYP, tuple(abs(x) for x in w)) or any(x < 0 for x in w)
    assert reflect(HYP, a, a) == tuple(-x for x in a)


@given(st.sampled_from(HYP_ROOTS), st.sampled_from(HYP_ROOTS))
def test_pairing_integrality(a, v):
    assert isinstance(coroot_pairing(HYP, v, a), int)


@pytest.mark.parametrize("name", ["B_3", "G_2", "F_4", "E_6"])
def test_root_string_length_matches_pairing(name):
    rs = RootSystem(standard_gcm(name))
    roots = enumerate_positive_real_roots(rs, 100)
    for a in roots[: rs.rank]:
        for b in roots:
            if b == a:
                continue
            s = root_string(rs, a, b)
            assert s.p - s.q == coroot_pairing(rs, b, a)
            assert s.p + s.q <= 3


def test_serializations():
    rs = RootSystem(standard_gcm("B_2"))
    roots = enumerate_positive_real_roots(rs, 5)
    assert json.loads(roots_to_json(roots)) == [list(r) for r in roots]
    tsv = roots_to_tsv(rs, roots).splitlines()
    assert tsv[0] == "height\tcoeffs\tnorm2"
    assert len(tsv) == 5
    assert {line.split("\t")[2] for line in tsv[1:]} == {str(n) for n in rs.norms}
