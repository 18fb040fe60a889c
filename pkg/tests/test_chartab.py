"""Character table tests.

Degree multisets for the small groups are frozen from standard references
and double-checked by the sum-of-squares identity; structure constants are
cross-checked against a brute-force product count that shares no code with
the vectorized path.
"""

import numpy as np
import pytest

import ekrcheck.chartab as chartab_mod
from ekrcheck.chartab import (
    character_table,
    character_table_for,
    class_constants,
    export_table,
    group_key,
    inner_product,
    parse_table,
)
from ekrcheck.cyclo import Cyc
from ekrcheck.errors import TableFormatError
from ekrcheck.group import PermutationGroup, conjugacy_classes
from ekrcheck.library import get_group


@pytest.fixture(scope="module")
def tables():
    cache = {}

    def get(key):
        if key not in cache:
            _, g = get_group(key)
            eg = conjugacy_classes(g)
            cache[key] = (eg, character_table(eg))
        return cache[key]

    return get


EXPECTED_DEGREES = {
    "S3": [1, 1, 2],
    "A4": [1, 1, 1, 3],
    "F20": [1, 1, 1, 1, 4],
    "PGL(2,5)": [1, 1, 4, 4, 5, 5, 6],
    "PSL(3,2)": [1, 3, 3, 6, 7, 8],
    "M11": [1, 10, 10, 10, 11, 16, 16, 44, 45, 55],
}


@pytest.mark.parametrize("key", sorted(EXPECTED_DEGREES))
def test_degree_lists(tables, key):
    _, t = tables(key)
    assert t.degrees == EXPECTED_DEGREES[key]
    assert sum(d * d for d in t.degrees) == t.order


def test_m12_degrees(tables):
    _, t = tables("M12")
    assert t.degrees == [1, 11, 11, 16, 16, 45, 54, 55, 55, 55, 66, 99, 120, 144, 176]


def test_s3_exact_values(tables):
    _, t = tables("S3")
    # classes: identity, transpositions (order 2), 3-cycles (order 3)
    assert t.class_sizes == [1, 3, 2]
    expected = ([1, 1, 1], [1, -1, 1], [2, 0, -1])
    for want in expected:
        hits = [
            row
            for row in t.values
            if all((v - x).is_zero() for v, x in zip(row, want))
        ]
        assert len(hits) == 1


def test_a4_exact_values(tables):
    _, t = tables("A4")
    assert t.class_sizes == [1, 3, 4, 4]
    w, w2 = Cyc.zeta(3, 1), Cyc.zeta(3, 2)
    one = Cyc.integer(1, 1)
    linear = [row for r, row in enumerate(t.values) if t.degrees[r] == 1]
    assert any(all((a - b).is_zero() for a, b in zip(row, [one, one, w, w2])) for row in linear)
    assert any(all((a - b).is_zero() for a, b in zip(row, [one, one, w2, w])) for row in linear)
    std = t.values[t.standard]
    assert [v.approx().real for v in std] == pytest.approx([3, -1, 0, 0])


def test_trivial_and_standard_rows(tables):
    for key in ("F20", "PGL(2,5)", "M11"):
        _, t = tables(key)
        assert t.degrees[t.trivial] == 1
        assert all((v - 1).is_zero() for v in t.values[t.trivial])
        assert t.degrees[t.standard] == t.degree - 1
        std = t.values[t.standard]
        assert all((v - (f - 1)).is_zero() for v, f in zip(std, t.class_fix))


# ---- class constants ----


def brute_partition(group):
    """Conjugacy classes by exhaustive conjugation; independent oracle."""
    elems = list(group.elements())
    classes = []
    seen = set()
    for x in elems:
        if x in seen:
            continue
        cls = {g.inverse() * x * g for g in elems}
        seen |= cls
        classes.append(cls)
    return classes


@pytest.mark.parametrize("key", ["S3", "A4"])
def test_class_constants_bruteforce(tables, key):
    eg, _ = tables(key)
    mats = class_constants(eg)
    classes = brute_partition(eg.group)
    label = {}
    for cls in classes:
        member = next(iter(cls))
        lab = int(eg.class_of[eg.index_of(member)])
        label[lab] = cls
    k = eg.n_classes
    for i in range(k):
        for l in range(k):
            z = eg.class_rep(l)
            for j in range(k):
                count = sum(1 for x in label[i] if x.inverse() * z in label[j])
                assert mats[i, j, l] == count


def test_s3_three_cycle_constant(tables):
    eg, _ = tables("S3")
    mats = class_constants(eg)
    c3 = next(c for c in range(eg.n_classes) if eg.class_orders[c] == 3)
    # both 3-cycles invert into the same class, landing on the identity
    assert mats[c3, c3, 0] == 2


def test_identity_class_matrix(tables):
    eg, _ = tables("F20")
    mats = class_constants(eg)
    assert np.array_equal(mats[0], np.eye(eg.n_classes, dtype=np.int64))


def test_class_constant_row_sums(tables):
    eg, _ = tables("PGL(2,5)")
    mats = class_constants(eg)
    for i in range(eg.n_classes):
        for l in range(eg.n_classes):
            assert mats[i, :, l].sum() == eg.class_sizes[i]


# ---- inner products ----


@pytest.mark.parametrize("key", ["S3", "F20", "PGL(2,5)", "M11"])
def test_permutation_character_norm(tables, key):
    _, t = tables(key)
    fix = t.permutation_character()
    assert (inner_product(t, fix, fix) - 2).is_zero()
    assert (inner_product(t, fix, t.values[t.trivial]) - 1).is_zero()
    assert (inner_product(t, fix, t.values[t.standard]) - 1).is_zero()


def test_row_orthonormality(tables):
    _, t = tables("A4")
    for a in range(t.k):
        for b in range(t.k):
            want = 1 if a == b else 0
            assert (inner_product(t, t.values[a], t.values[b]) - want).is_zero()


# ---- determinism ----


@pytest.mark.parametrize("key", ["A4", "F20"])
def test_cross_prime_determinism(tables, key, monkeypatch):
    eg, t1 = tables(key)
    orig = chartab_mod.prime_one_mod

    def next_prime_up(e, lower):
        return orig(e, orig(e, lower))

    monkeypatch.setattr(chartab_mod, "prime_one_mod", next_prime_up)
    t2 = character_table(eg, seed=99)
    assert t1.degrees == t2.degrees
    for r1, r2 in zip(t1.values, t2.values):
        assert all((a - b).is_zero() for a, b in zip(r1, r2))


# ---- serialization ----


@pytest.mark.parametrize("key", ["A4", "M11"])
def test_export_import_roundtrip(tables, key):
    _, t = tables(key)
    t2 = parse_table(export_table(t))
    assert (t2.order, t2.degree, t2.e, t2.k) == (t.order, t.degree, t.e, t.k)
    assert t2.class_sizes == t.class_sizes
    assert t2.class_fix == t.class_fix
    assert t2.class_der == t.class_der
    assert t2.class_orders is None
    assert t2.degrees == t.degrees
    assert (t2.trivial, t2.standard) == (t.trivial, t.standard)
    for r1, r2 in zip(t.values, t2.values):
        assert all((a - b).is_zero() for a, b in zip(r1, r2))


def test_padded_coefficients_accepted(tables):
    _, t = tables("S3")
    lines = export_table(t).splitlines()
    padded = []
    for ln in lines[1 + t.k :]:
        toks = []
        for tok in ln.split():
            coeffs = tok.split(",")
            coeffs += ["0"] * (t.e - len(coeffs))
            toks.append(",".join(coeffs))
        padded.append(" ".join(toks))
    text = "\n".join(lines[: 1 + t.k] + padded)
    t2 = parse_table(text)
    for r1, r2 in zip(t.values, t2.values):
        assert all((a - b).is_zero() for a, b in zip(r1, r2))


def _tamper(text: str, line: int, value: str) -> str:
    lines = text.splitlines()
    lines[line] = value
    return "\n".join(lines)


def test_corrupted_tables_rejected(tables):
    _, t = tables("F20")
    text = export_table(t)
    lines = text.splitlines()
    k = t.k
    bad = [
        "not a table",
        _tamper(text, 0, "5 20"),
        _tamper(text, 0, "4 20 20"),
        _tamper(text, 1, "2 5 0"),
        _tamper(text, 2, lines[2].rsplit(" ", 1)[0] + " 1"),
        _tamper(text, 1 + k, lines[2 + k]),
        "\n".join(lines[:-1]),
        _tamper(text, 1 + k, lines[1 + k].replace("1", "x", 1)),
    ]
    # swapping two values inside a row breaks orthogonality
    toks = lines[2 + k].split()
    toks[0], toks[1] = toks[1], toks[0]
    bad.append(_tamper(text, 2 + k, " ".join(toks)))
    for case in bad:
        with pytest.raises(TableFormatError):
            parse_table(case)


# ---- cache ----


def test_cache_roundtrip(tmp_path, monkeypatch):
    _, g = get_group("S3")
    t1 = character_table_for(g, cache_dir=tmp_path)
    files = list(tmp_path.glob("*.ct"))
    assert len(files) == 1

    def boom(*a, **kw):
        raise AssertionError("cache miss")

    monkeypatch.setattr(chartab_mod, "character_table", boom)
    t2 = character_table_for(g, cache_dir=tmp_path)
    assert t2.degrees == t1.degrees
    files[0].write_text(files[0].read_text().replace("1 3 0", "3 1 0", 1))
    with pytest.raises(TableFormatError):
        character_table_for(g, cache_dir=tmp_path)


def test_group_key_ignores_generator_order():
    _, g = get_group("S3")
    rev = PermutationGroup(list(reversed(g.generators)), g.degree)
    assert group_key(g) == group_key(rev)
    _, h = get_group("A4")
    assert group_key(g) != group_key(h)
