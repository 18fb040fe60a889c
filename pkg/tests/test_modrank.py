"""Coset-incidence matrices, rank certificates, and the pairs graph."""

from fractions import Fraction

import numpy as np
import pytest

from ekrcheck import modrank as mr
from ekrcheck.group import EnumeratedGroup
from ekrcheck.library import get_group


@pytest.fixture(scope="module")
def groups():
    cache = {}

    def load(key):
        if key not in cache:
            _, g = get_group(key)
            eg = EnumeratedGroup(g)
            eg.compute_classes()
            cache[key] = eg
        return cache[key]

    return load


# ---- column order and blocks ----


def test_offdiag_pair_order():
    assert mr.offdiag_pairs(4) == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    for n in (4, 7, 12):
        pairs = mr.offdiag_pairs(n)
        assert len(pairs) == (n - 1) * (n - 2)
        for c, (i, j) in enumerate(pairs):
            assert mr.pair_col_index(n, i, j) == c
    with pytest.raises(ValueError):
        mr.pair_col_index(5, 2, 2)
    with pytest.raises(ValueError):
        mr.pair_col_index(5, 0, 4)


def test_s3_M_is_identity(groups):
    mm = mr.build_M(groups("S3"))
    assert mm.M.shape == (2, 2)
    assert {tuple(r) for r in mm.M} == {(1, 0), (0, 1)}
    # block display: identity row all-ones on diagonal columns, derangement
    # rows zero there
    assert mm.Hbar[0].tolist() == [1, 1, 1, 0, 0]
    assert mm.der_count == 2


def test_hbar_blocks_f20(groups):
    eg = groups("F20")
    mm = mr.build_M(eg)
    n = 5
    assert mm.Hbar.shape == (20, (n - 1) ** 2 + 1)
    assert mm.M.shape == (4, 12)
    assert (mm.M.sum(axis=1) == n - 2).all()
    # B rows all have a fixed point among the n diagonal columns
    assert (mm.B.sum(axis=1) >= 1).all()
    # sampled entry law: H-bar[r, (i,j)] = 1 iff row maps i to j
    Eo = eg.E[mm.row_order]
    for r in (0, 3, 7, 19):
        for c, (i, j) in enumerate(mr.offdiag_pairs(n)):
            assert mm.Hbar[r, n + c] == (Eo[r, i] == j)


def test_derangement_block_rejects_fixed_points(groups):
    eg = groups("S3")
    with pytest.raises(ValueError):
        mr.derangement_block(eg.E[:1], 3)


def test_build_M_cap(groups):
    with pytest.raises(ValueError):
        mr.build_M(groups("F20"), cap=3)


def test_gram_M_row_cap(groups):
    with pytest.raises(ValueError):
        mr.gram_M(groups("F20"), row_cap=3)


# ---- rank certificates ----


def test_s3_full_rank(groups):
    N = mr.gram_M(groups("S3"))
    cert = mr.rank_certificate(N)
    assert cert.full and cert.claimed_rank == 2 == cert.columns
    assert cert.mode.startswith("full-rank via prime")
    assert cert.reverify(N)


def test_f20_deficient(groups):
    eg = groups("F20")
    N = mr.gram_M(eg)
    cert = mr.rank_certificate(N)
    assert not cert.full
    assert cert.mode == "deficient via exact kernel"
    assert cert.columns == 12 and cert.claimed_rank == 4
    assert len(cert.kernel) == 8
    assert cert.reverify(N)
    # kernel vectors kill M itself, not just the Gram matrix
    M = mr.build_M(eg).M.astype(np.int64)
    for w in cert.kernel:
        wi = np.array([int(x) for x in w], dtype=np.int64)
        assert not (M @ wi).any()
    assert np.linalg.matrix_rank(M.astype(float)) == 4


def test_m11_full_column_rank(groups):
    N = mr.gram_M(groups("M11"))
    cert = mr.rank_certificate(N)
    assert cert.columns == 90 and cert.full
    assert cert.reverify(N)


def test_rank_certificate_matches_float_oracle():
    rng = np.random.default_rng(5)
    for _ in range(12):
        rows = rng.integers(2, 7)
        cols = rng.integers(rows + 1, 12)
        B = rng.integers(-3, 4, size=(rows, cols))
        N = (B.T @ B).astype(np.int64)
        cert = mr.rank_certificate(N)
        assert cert.claimed_rank == np.linalg.matrix_rank(B.astype(float))
        assert not cert.full
        assert cert.reverify(N)
        for w in cert.kernel:
            scale = 1
            for x in w:
                scale = scale * x.denominator // np.gcd(scale, x.denominator)
            wi = np.array([int(x * scale) for x in w], dtype=object)
            assert not (B.astype(object) @ wi).any()


def test_reverify_rejects_wrong_matrix(groups):
    N = mr.gram_M(groups("S3"))
    cert = mr.rank_certificate(N)
    other = np.zeros_like(N)
    assert not cert.reverify(other)


# ---- pairs graph ----


def test_pairs_graph_x5():
    pg = mr.pairs_graph(5)
    assert len(pg.vertices) == 12
    assert (pg.adjacency.sum(axis=1) == 6).all()
    assert pg.least_lower_bound == -2
    # float oracle: least eigenvalue really is >= -2
    assert np.linalg.eigvalsh(pg.adjacency.astype(float))[0] >= -2 - 1e-9


def test_pairs_graph_x22():
    pg = mr.pairs_graph(22)
    assert len(pg.vertices) == 420
    assert (pg.adjacency.sum(axis=1) == 380).all()
    assert pg.least_lower_bound == -19


def test_pairs_graph_adjacency_cases():
    pg = mr.pairs_graph(6)
    vi = {v: k for k, v in enumerate(pg.vertices)}
    assert pg.adjacency[vi[(0, 1)], vi[(2, 3)]] == 1  # disjoint
    assert pg.adjacency[vi[(0, 1)], vi[(1, 0)]] == 0  # swapped, never adjacent
    assert pg.adjacency[vi[(0, 1)], vi[(2, 0)]] == 1  # first equals second's image
    assert pg.adjacency[vi[(0, 1)], vi[(1, 2)]] == 1  # second equals first's image
    assert pg.adjacency[vi[(0, 1)], vi[(0, 2)]] == 0  # shared first coordinate
    assert pg.adjacency[vi[(0, 1)], vi[(2, 1)]] == 0  # shared second coordinate


def test_pairs_graph_charpoly_roots_cover_float_spectrum():
    pg = mr.pairs_graph(7)
    eigs = np.linalg.eigvalsh(pg.adjacency.astype(float))
    cp = [Fraction(c) for c in pg.charpoly]
    from ekrcheck.modmath import poly_eval

    for lam in {round(float(e), 6) for e in eigs}:
        val = poly_eval(cp, Fraction(round(lam)))
        if lam == round(lam):
            assert val == 0


def test_pairs_graph_rejects_small_n():
    with pytest.raises(ValueError):
        mr.pairs_graph(3)


# ---- class Gram matrices ----


def test_class_gram_s3(groups):
    eg = groups("S3")
    cg = mr.class_gram(eg.E[eg.fix_counts_all == 0], 3)
    assert cg.pattern and cg.lam == 1 and cg.mu == 0
    assert cg.psd_certified and cg.least_bound == 1
    assert np.array_equal(cg.N, np.eye(2, dtype=np.int64))


def test_class_gram_f20_matches_brute(groups):
    eg = groups("F20")
    der = eg.E[eg.fix_counts_all == 0]
    cg = mr.class_gram(der, 5)
    blk = mr.derangement_block(der, 5).astype(np.int64)
    assert np.array_equal(cg.N, blk.T @ blk)
    # sharply 2-transitive: 0/1 entries, no lambda*I + mu*A structure
    assert not cg.pattern and not cg.psd_certified


def test_class_gram_m11_pattern(groups):
    eg = groups("M11")
    orders = eg.class_orders
    sel = np.isin(
        eg.class_of, [c for c in range(eg.n_classes) if orders[c] == 11]
    )
    rows = eg.E[sel]
    t = rows.shape[0]
    cg = mr.class_gram(rows, 11)
    assert cg.pattern
    assert cg.lam == t // 10 and cg.mu == t // (10 * 9)
    assert cg.psd_certified and cg.least_bound == cg.lam - cg.mu * 8
    # a full-rank verdict from the class rows implies one for all of M
    assert mr.rank_certificate(cg.N).full
    assert mr.rank_certificate(mr.gram_M(eg)).full


def test_class_gram_no_two_cycles_entry(groups):
    eg = groups("M11")
    orders = eg.class_orders
    sel = np.isin(
        eg.class_of, [c for c in range(eg.n_classes) if orders[c] == 11]
    )
    cg = mr.class_gram(eg.E[sel], 11)
    a = mr.pair_col_index(11, 0, 1)
    b = mr.pair_col_index(11, 1, 0)
    assert cg.N[a, b] == 0


# ---- standard-module checks ----


def test_standard_projection_s3(groups):
    assert mr.standard_projection_check(groups("S3"), 0, 0)


def test_standard_projection_f20(groups):
    assert mr.standard_projection_check(groups("F20"), 1, 3)


def test_standard_projection_pgl25(groups):
    assert mr.standard_projection_check(groups("PGL(2,5)"), 0, 2)


def test_standard_projection_cap(groups):
    with pytest.raises(ValueError):
        mr.standard_projection_check(groups("M11"), 0, 0)


def test_std_apply_pattern(groups):
    eg = groups("S3")
    v = (eg.E[:, 0] == 0).astype(np.int64)
    out = mr.std_apply(eg, v)
    for r, val in enumerate(out):
        assert val == (Fraction(2, 3) if eg.E[r, 0] == 0 else Fraction(-1, 3))
    # trivial-module image is the constant 1/n
    assert Fraction(int(v.sum()), eg.E.shape[0]) == Fraction(1, 3)


def test_rank_H_values(groups):
    assert mr.rank_H_exact(groups("S3")) == 5
    assert mr.rank_Hbar(groups("S3")) == 5
    assert mr.rank_H_exact(groups("PGL(2,5)")) == 26
    assert mr.rank_Hbar(groups("PGL(2,5)")) == 26


def test_unique_fixed_point_elements(groups):
    p = mr.unique_fixed_point_element(groups("S3").group, 0)
    assert p.images == (0, 2, 1)
    q = mr.unique_fixed_point_element(groups("F20").group, 0)
    assert sum(1 for y in range(5) if q.images[y] == y) == 1
    assert q.order() == 4
    g11 = groups("M11").group
    for x in (0, 5, 10):
        u = mr.unique_fixed_point_element(g11, x)
        assert [y for y in range(11) if u.images[y] == y] == [x]


def test_b_identity_submatrix(groups):
    for key in ("S3", "F20", "PGL(2,5)", "M11"):
        sel = mr.b_identity_submatrix(groups(key))
        assert np.array_equal(sel, np.eye(groups(key).group.degree, dtype=np.int8))


def test_gram_L_s3(groups):
    G = mr.gram_L(groups("S3"))
    expected = 2 * np.eye(4, dtype=np.int64) + np.kron(
        np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]])
    )
    assert np.array_equal(G, expected)


def test_gram_L_structure(groups):
    for key in ("F20", "PGL(2,5)", "M11"):
        eg = groups(key)
        o, n = eg.E.shape
        G = mr.gram_L(eg)
        assert (np.diag(G) == o // n).all()
        # one image per point: v_{i,j} and v_{i,l} never overlap
        m = n - 1
        for i in (0, m - 1):
            for j in range(m - 1):
                assert G[i * m + j, i * m + j + 1] == 0


def test_gram_L_cap(groups):
    with pytest.raises(ValueError):
        mr.gram_L(groups("M11"), cap=100)
