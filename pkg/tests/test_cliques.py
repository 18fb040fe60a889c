"""Clique search and module projection tests."""

from fractions import Fraction

import pytest

from ekrcheck.chartab import character_table
from ekrcheck.cliques import (
    Clique,
    canonical_clique,
    clique_char_sum,
    find_n_clique,
    iter_n_cliques,
    module_by_clique,
    projection_norm,
    verify_clique,
)
from ekrcheck.cyclo import Cyc
from ekrcheck.group import conjugacy_classes
from ekrcheck.library import get_group
from ekrcheck.perm import Permutation, parse_cycles


@pytest.fixture(scope="module")
def ctx():
    cache = {}

    def get(key):
        if key not in cache:
            _, g = get_group(key)
            eg = conjugacy_classes(g)
            cache[key] = (eg, character_table(eg))
        return cache[key]

    return get


def test_s3_clique(ctx):
    eg, _ = ctx("S3")
    c = find_n_clique(eg)
    assert c is not None and c.size == 3
    assert c.elements[0] == Permutation.identity(3)
    assert verify_clique(eg.group, c.elements)
    # the two 3-cycles form the only sharply transitive set through id
    assert len(list(iter_n_cliques(eg))) == 1


def test_f20_cyclic_clique(ctx):
    eg, _ = ctx("F20")
    c = find_n_clique(eg)
    assert c is not None and c.size == 5
    # the order-5 cyclic subgroup, found by the single-cycle shortcut
    orders = sorted(x.order() for x in c.elements)
    assert orders == [1, 5, 5, 5, 5]
    assert len(list(iter_n_cliques(eg))) == 1


def test_pgl25_has_6_clique(ctx):
    eg, _ = ctx("PGL(2,5)")
    c = find_n_clique(eg)
    assert c is not None and c.size == 6
    assert verify_clique(eg.group, c.elements)


def test_agammal18_clique_without_n_cycles(ctx):
    eg, _ = ctx("AGammaL(1,8)")
    # no element has order 8, so the backtracking path must deliver
    assert all(o != 8 for o in eg.class_orders)
    c = find_n_clique(eg)
    assert c is not None and c.size == 8
    assert verify_clique(eg.group, c.elements)


def test_budget_exhaustion_returns_none(ctx):
    eg, _ = ctx("AGammaL(1,8)")
    assert find_n_clique(eg, budget=0) is None


def test_verify_clique_basics(ctx):
    eg, _ = ctx("S3")
    g = eg.group
    ident = Permutation.identity(3)
    rot = parse_cycles("(1,2,3)", 3)
    swap = parse_cycles("(1,2)", 3)
    assert verify_clique(g, [ident, rot])
    assert not verify_clique(g, [ident, swap])
    with pytest.raises(ValueError):
        verify_clique(g, [Permutation.identity(4)])


def test_canonical_clique_translates_to_identity(ctx):
    eg, _ = ctx("F20")
    c = find_n_clique(eg)
    g = eg.element(7)
    shifted = [g * x for x in c.elements]
    canon = canonical_clique(shifted)
    assert canon.elements[0] == Permutation.identity(5)
    assert verify_clique(eg.group, canon.elements)


def test_projection_norms_sum_to_clique_size(ctx):
    for key in ("S3", "F20", "PGL(2,5)"):
        eg, t = ctx(key)
        c = find_n_clique(eg)
        idx = [eg.index_of(x) for x in c.elements]
        total = Cyc.zero(1)
        for r in range(t.k):
            total = total + projection_norm(eg, t, idx, r)
        assert (total - c.size).is_zero()


def test_s3_projection_values(ctx):
    eg, t = ctx("S3")
    c = find_n_clique(eg)
    idx = [eg.index_of(x) for x in c.elements]
    triv = projection_norm(eg, t, idx, t.trivial)
    assert (triv - Fraction(9, 6)).is_zero()
    sign_row = next(
        r for r in range(t.k) if t.degrees[r] == 1 and r != t.trivial
    )
    assert (projection_norm(eg, t, idx, sign_row) - Fraction(3, 2)).is_zero()
    # the sum rule forces the standard projection to vanish
    assert projection_norm(eg, t, idx, t.standard).is_zero()


def test_projection_norm_translation_invariant(ctx):
    eg, t = ctx("F20")
    c = find_n_clique(eg)
    idx = [eg.index_of(x) for x in c.elements]
    g = eg.element(11)
    idx_left = [eg.index_of(g * x) for x in c.elements]
    idx_right = [eg.index_of(x * g) for x in c.elements]
    for r in range(t.k):
        base = projection_norm(eg, t, idx, r)
        assert (projection_norm(eg, t, idx_left, r) - base).is_zero()
        assert (projection_norm(eg, t, idx_right, r) - base).is_zero()


def test_module_by_clique_agammal18(ctx):
    eg, t = ctx("AGammaL(1,8)")
    report = module_by_clique(eg, t)
    assert report, "expected nontrivial non-standard characters"
    for r, w in report.items():
        assert w.witnessed, f"row {r} missing a module witness"
        assert w.norm.sign_real() > 0
        assert w.char_sum is not None


def test_module_by_clique_respects_budget(ctx):
    eg, t = ctx("AGammaL(1,8)")
    report = module_by_clique(eg, t, budget=0)
    assert all(not w.witnessed for w in report.values())
