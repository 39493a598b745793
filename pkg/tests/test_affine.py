from itertools import product

import numpy as np
import pytest

from kmcent.affine import (
    AMBIGUOUS,
    TABLE_HEADER,
    InvalidClass,
    NotAffine,
    affine_centralizer_type,
    affine_real_root_mask,
    affine_real_root_predicate,
    affine_table_rows,
    build_affine,
    class_representative,
    compute_table_row,
    real_root_mask,
)
from kmcent.cartan import parse_type_name, standard_gcm
from kmcent.linalg import kernel_lattice_basis, rank
from kmcent.rootspace import RootSystem

from oracles import gram, simply_laced, weyl_orbit_roots

NAMES = [
    "A_1^{(1)}", "A_4^{(1)}", "B_3^{(1)}", "C_3^{(1)}", "D_5^{(1)}", "E_6^{(1)}", "F_4^{(1)}", "G_2^{(1)}",
    "A_2^{(2)}", "A_4^{(2)}", "A_6^{(2)}", "D_3^{(2)}", "D_4^{(2)}", "A_5^{(2)}", "A_7^{(2)}", "E_6^{(2)}", "D_4^{(3)}",
]


@pytest.mark.parametrize("name", NAMES)
def test_delta_is_primitive_positive_kernel_vector(name):
    g = standard_gcm(name)
    ar = build_affine(g)
    A = g.rows()
    assert all(x > 0 for x in ar.delta)
    assert np.gcd.reduce(ar.delta) == 1
    assert all(sum(A[i][j] * ar.delta[j] for j in range(g.rank)) == 0 for i in range(g.rank))


@pytest.mark.parametrize("name, ht", [("E_6^{(1)}", 12), ("E_7^{(1)}", 18), ("E_8^{(1)}", 30), ("G_2^{(1)}", 6), ("A_4^{(1)}", 5)])
def test_delta_heights(name, ht):
    assert sum(build_affine(standard_gcm(name)).delta) == ht


@pytest.mark.parametrize("name", NAMES)
def test_formula_matches_reflection_orbit(name):
    g = standard_gcm(name)
    ar = build_affine(g)
    cap = 12
    real = weyl_orbit_roots(g.rows(), cap)
    rs = RootSystem(g)
    for v in product(range(cap + 1), repeat=g.rank):
        if 0 < sum(v) <= cap:
            assert affine_real_root_predicate(ar, v) == (v in real)
            assert rs.is_real_root(v) == (v in real)


@pytest.mark.parametrize("name", ["A_6^{(2)}", "D_4^{(3)}", "E_6^{(2)}", "C_3^{(1)}"])
def test_vectorized_masks_agree(name):
    g = standard_gcm(name)
    ar = build_affine(g)
    rs = RootSystem(g)
    rng = np.random.default_rng(7)
    V = rng.integers(-6, 12, size=(4000, g.rank))
    expected = np.array([affine_real_root_predicate(ar, tuple(int(x) for x in v)) for v in V])
    assert (affine_real_root_mask(ar, V) == expected).all()
    generic = np.array([rs.is_real_root(tuple(int(x) for x in v)) if v.sum() > 0 else False for v in V])
    pos = V.sum(axis=1) > 0
    assert (real_root_mask(rs, V)[pos] == generic[pos]).all()


def test_not_affine():
    with pytest.raises(NotAffine):
        build_affine(standard_gcm("E_8"))
    with pytest.raises(NotAffine):
        build_affine(simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)]))


def test_class_validation():
    ar = build_affine(standard_gcm("A_3^{(1)}"))
    with pytest.raises(InvalidClass):
        class_representative(ar, "medium")
    with pytest.raises(InvalidClass):
        class_representative(ar, "huge")
    a2 = build_affine(standard_gcm("A_4^{(2)}"))
    norms = {RootSystem(a2.system.gcm).norm(class_representative(a2, c)) for c in ("long", "medium", "short")}
    assert len(norms) == 3


def test_centralizer_type_result():
    ar = build_affine(standard_gcm("D_4^{(1)}"))
    t = affine_centralizer_type(ar, "long")
    assert t.name == "3A_1^{(1)}"
    assert len(t.basis) == 6


ROWS = list(affine_table_rows())


def _row_id(r):
    return f"{r[0]}-{r[1]}"


@pytest.mark.parametrize("row", ROWS, ids=_row_id)
def test_table_row(row, request):
    system, cls, expected = row
    if system == "E_6^{(2)}" and cls == "long":
        request.applymarker(pytest.mark.xfail(strict=True, reason="printed entry is not realizable; see test_e6_twisted_rank_argument"))
    r = compute_table_row(system, cls, expected)
    if r.flagged:
        assert r.computed == AMBIGUOUS[expected]
    else:
        assert r.match, r.tsv()


def test_e6_twisted_rank_argument():
    # the centralizer lives in alpha-perp, whose form has rank at most n - 2 = 3;
    # A_7^{(2)} has rank 5 and a Gram matrix of rank 4
    ar = build_affine(standard_gcm("E_6^{(2)}"))
    alpha = class_representative(ar, "long")
    G = gram(standard_gcm("E_6^{(2)}").rows())
    n = len(G)
    Ga = [sum(G[i][j] * alpha[j] for j in range(n)) for i in range(n)]
    K = kernel_lattice_basis(Ga)
    restricted = [[sum(u[i] * G[i][j] * v[j] for i in range(n) for j in range(n)) for v in K] for u in K]
    assert rank(restricted) <= 3
    assert rank(gram(parse_type_name("A_7^{(2)}").rows())) == 4
    assert compute_table_row("E_6^{(2)}", "long", "A_7^{(2)}").computed == "A_5^{(2)}"


def test_tsv_row_format():
    r = compute_table_row("A_2^{(1)}", "long", "∅")
    assert r.tsv() == "A_2^{(1)}\tlong\t∅\t∅\tyes"
    assert TABLE_HEADER.split("\t") == ["system", "class", "computed", "expected", "match"]
