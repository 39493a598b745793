import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kmcent.cartan import (
    DiagonalNotTwo,
    Disconnected,
    DynkinDiagram,
    GCMError,
    NotSymmetrizable,
    PositiveOffDiagonal,
    ZeroAsymmetry,
    automorphisms,
    canonical_form,
    classify,
    enumerate_hyperbolic_catalog,
    identify_diagram,
    is_symmetrizable,
    join_names,
    parse_gcm_text,
    parse_type_name,
    same_diagram,
    standard_gcm,
    symmetrize,
    validate_gcm,
)

from oracles import gram, simply_laced

BONDS = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (1, 4), (4, 1)]


@st.composite
def gcms(draw, min_rank=2, max_rank=5, connected=True):
    n = draw(st.integers(min_rank, max_rank))
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    pairs = list(itertools.combinations(range(n), 2))
    if connected:
        # random spanning tree first
        for k in range(1, n):
            j = draw(st.integers(0, k - 1))
            a, b = draw(st.sampled_from(BONDS))
            A[j][k], A[k][j] = -a, -b
    for i, j in pairs:
        if A[i][j] == 0 and draw(st.booleans()):
            a, b = draw(st.sampled_from(BONDS))
            A[i][j], A[j][i] = -a, -b
    return validate_gcm(A)


def _numeric_symmetrizable(A):
    # d_i A_ij - d_j A_ji = 0 as a linear system in d
    n = len(A)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0.0] * n
            r[i], r[j] = A[i][j], -A[j][i]
            rows.append(r)
    if not rows:
        return True
    M = np.array(rows)
    _, s, vt = np.linalg.svd(M)
    null = vt[np.sum(s > 1e-9):]
    if len(null) != 1:
        return False
    v = null[0]
    return bool(np.all(v > 1e-9) or np.all(v < -1e-9))


def _psd(M):
    if len(M) == 0:
        return True
    return bool(np.min(np.linalg.eigvalsh(np.array(M, dtype=float))) > -1e-9)


def _pd(M):
    return bool(np.min(np.linalg.eigvalsh(np.array(M, dtype=float))) > 1e-9)


def _kind_oracle(A):
    B = gram(A)
    if _pd(B):
        return "finite"
    if _psd(B):
        return "affine"
    n = len(A)
    for i in range(n):
        keep = [k for k in range(n) if k != i]
        if not _psd([[B[a][b] for b in keep] for a in keep]):
            return "indefinite"
    return "hyperbolic"


@pytest.mark.parametrize(
    "rows, exc",
    [
        ([[2, -1], [-1, 3]], DiagonalNotTwo),
        ([[2, 1], [-1, 2]], PositiveOffDiagonal),
        ([[2, 0], [-1, 2]], ZeroAsymmetry),
        ([[2, -1, 0], [-1, 2]], GCMError),
        ([], GCMError),
        ([[2, -0.5], [-1, 2]], GCMError),
    ],
)
def test_validate_rejects(rows, exc):
    with pytest.raises(exc):
        validate_gcm(rows)


def test_parse_formats():
    g = parse_gcm_text('{"A": [[2,-1],[-1,2]]}')
    assert parse_gcm_text("2 -1\n-1 2  # A_2\n") == g
    assert parse_gcm_text("[[2,-1],[-1,2]]") == g


def test_parse_malformed_json_reports_position():
    with pytest.raises(GCMError, match="line 1, column"):
        parse_gcm_text('{"A": [[2,-1],[-1,2]}')


def test_non_symmetrizable_cycle():
    A = [[2, -1, -1], [-2, 2, -1], [-1, -1, 2]]
    with pytest.raises(NotSymmetrizable):
        symmetrize(validate_gcm(A))
    assert not is_symmetrizable(validate_gcm(A))


@given(gcms())
def test_symmetrization_makes_DA_symmetric(g):
    assert is_symmetrizable(g) == _numeric_symmetrizable(g.rows())
    if not is_symmetrizable(g):
        return
    s = symmetrize(g)
    n = g.rank
    assert all(x > 0 for x in s.d)
    assert all(s.B[i][j] == s.d[i] * g[i, j] for i in range(n) for j in range(n))
    assert all(s.B[i][j] == s.B[j][i] for i in range(n) for j in range(n))
    r = s.reduced()
    assert all(r.B[i][i] > 0 and isinstance(r.B[i][i], int) for i in range(n))


@given(gcms(max_rank=5))
def test_classify_matches_eigenvalue_oracle(g):
    if not is_symmetrizable(g):
        return
    assert classify(g).kind == _kind_oracle(g.rows())


def test_classify_disconnected():
    with pytest.raises(Disconnected):
        classify(validate_gcm([[2, 0], [0, 2]]))


@pytest.mark.parametrize(
    "name, kind",
    [
        ("A_4", "finite"), ("B_3", "finite"), ("C_3", "finite"), ("D_5", "finite"),
        ("E_6", "finite"), ("E_7", "finite"), ("E_8", "finite"), ("F_4", "finite"), ("G_2", "finite"),
        ("A_3^{(1)}", "affine"), ("C_2^{(1)}", "affine"), ("B_3^{(1)}", "affine"),
        ("D_5^{(1)}", "affine"), ("E_8^{(1)}", "affine"), ("F_4^{(1)}", "affine"),
        ("G_2^{(1)}", "affine"), ("A_2^{(2)}", "affine"), ("A_6^{(2)}", "affine"),
        ("D_3^{(2)}", "affine"), ("A_5^{(2)}", "affine"), ("E_6^{(2)}", "affine"),
        ("D_4^{(3)}", "affine"),
    ],
)
def test_standard_names_round_trip(name, kind):
    g = standard_gcm(name)
    t = classify(g)
    assert (t.kind, t.name) == (kind, name)
    assert _kind_oracle(g.rows()) == kind


def test_affine_kernel_dimension():
    for name in ["A_4^{(1)}", "E_6^{(2)}", "D_4^{(3)}", "A_4^{(2)}"]:
        A = np.array(standard_gcm(name).rows(), dtype=float)
        assert np.linalg.matrix_rank(A) == len(A) - 1


@pytest.mark.parametrize(
    "name, count",
    [("A_1", 1), ("A_3", 2), ("D_4", 6), ("E_6", 2), ("E_7", 1), ("A_4^{(1)}", 10), ("D_4^{(1)}", 24)],
)
def test_automorphism_counts(name, count):
    assert len(automorphisms(standard_gcm(name))) == count


@given(gcms(), st.randoms(use_true_random=False))
def test_canonical_form_is_permutation_invariant(g, rnd):
    perm = list(range(g.rank))
    rnd.shuffle(perm)
    h = validate_gcm([[g[perm[i], perm[j]] for j in range(g.rank)] for i in range(g.rank)])
    assert canonical_form(g) == canonical_form(h)
    assert same_diagram(g, h)


def test_canonical_form_separates_transposes():
    g = standard_gcm("B_3")
    assert canonical_form(g) != canonical_form(g.transpose())


def test_diagram_round_trip_and_dot():
    g = standard_gcm("G_2^{(1)}")
    d = DynkinDiagram.from_gcm(g)
    assert d.to_gcm() == g
    dot = d.to_dot()
    assert dot.startswith("graph G {")
    assert '[label="(1,3)"]' in dot or '[label="(3,1)"]' in dot
    two = validate_gcm([[2, -1, 0], [-1, 2, 0], [0, 0, 2]])
    assert "subgraph cluster_1" in DynkinDiagram.from_gcm(two).to_dot()


@pytest.mark.parametrize(
    "text", ["∅", "A_1", "3A_1^{(1)}", "D_4^{(1)} ⊕ A_1^{(1)}", "A_2^{(2)} ⊕ A_1^{(1)}", "E_7^{(1)}"]
)
def test_names_parse_and_join(text):
    g = parse_type_name(text)
    assert identify_diagram(g).name == text


def test_join_names_orders_by_rank():
    assert join_names(["A_1^{(1)}", "D_4^{(1)}", "A_1^{(1)}"]) == "D_4^{(1)} ⊕ 2A_1^{(1)}"


def test_catalog_rank_bounds():
    from kmcent.cartan import RankOutOfRange

    with pytest.raises(RankOutOfRange):
        enumerate_hyperbolic_catalog(2, 4)


def test_catalog_entries_are_hyperbolic_and_distinct():
    cat = enumerate_hyperbolic_catalog(3, 10)
    forms = set()
    for e in cat:
        assert e.symmetrizable and is_symmetrizable(e.gcm)
        assert _kind_oracle(e.gcm.rows()) == "hyperbolic"
        forms.add(canonical_form(e.gcm))
    assert len(forms) == len(cat)


def test_catalog_rank4_pairwise_non_isomorphic_by_brute_force():
    cat = [e.gcm.rows() for e in enumerate_hyperbolic_catalog(4, 4)]
    seen = set()
    for A in cat:
        key = min(
            tuple(tuple(A[p[i]][p[j]] for j in range(4)) for i in range(4))
            for p in itertools.permutations(range(4))
        )
        assert key not in seen
        seen.add(key)


def test_catalog_contains_known_cycle():
    A = simply_laced(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    forms = {canonical_form(e.gcm) for e in enumerate_hyperbolic_catalog(4, 4)}
    assert canonical_form(validate_gcm(A)) in forms


def test_catalog_is_deterministic():
    a = [e.to_json() for e in enumerate_hyperbolic_catalog(3, 4)]
    b = [e.to_json() for e in enumerate_hyperbolic_catalog(3, 4)]
    assert a == b
