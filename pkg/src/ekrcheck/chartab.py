"""Exact irreducible character tables of finite permutation groups.

The table is computed by splitting the class algebra over a prime field
F_p with p = 1 (mod exponent), then lifting eigenvalue data back to exact
cyclotomic values via discrete Fourier inversion of the power map.  Every
table, computed or imported, is verified against the orthogonality
relations before it is returned, so downstream spectral reasoning can rely
on the values being exactly right.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import Cyc
from .errors import TableFormatError
from .fields import factorize
from .group import EnumeratedGroup, PermutationGroup, conjugacy_classes
from .modmath import charpoly_mod, element_of_order, nullspace_mod, poly_roots_mod, prime_one_mod

MAX_SPLIT_ATTEMPTS = 64


def class_constants(eg: EnumeratedGroup) -> np.ndarray:
    """Structure constants a[i, j, l] = #{x in C_i : x^-1 * rep(C_l) in C_j}.

    a[i, :, l] is computed in one vectorized pass: form x^-1 * rep(C_l) for
    every x in C_i, classify the products, and histogram the class labels.
    """
    eg.compute_classes()
    k = eg.n_classes
    E = eg.E
    class_of = eg.class_of
    mats = np.zeros((k, k, k), dtype=np.int64)
    reps = [E[s].astype(np.intp) for s in eg.class_seeds]
    for i in range(k):
        members = np.nonzero(class_of == i)[0]
        Xinv = E[eg.inv_index[members]]
        for l in range(k):
            # (x^-1 * z)(t) = x^-1(z(t)): index each inverse row by z's images
            prod = Xinv[:, reps[l]]
            labels = class_of[eg.row_indices(prod)]
            mats[i, :, l] = np.bincount(labels, minlength=k)
    sizes = np.array(eg.class_sizes, dtype=np.int64)
    # each product x^-1 * z_l lands in exactly one class
    if not np.array_equal(mats.sum(axis=1), np.repeat(sizes[:, None], k, axis=1)):
        raise AssertionError("class constant row sums disagree with class sizes")
    if not np.array_equal(mats[0], np.eye(k, dtype=np.int64)):
        raise AssertionError("identity class matrix is not the identity")
    # class sums commute; spot-check one nontrivial pair
    if k > 2:
        a, b = 1, k - 1
        if not np.array_equal(mats[a] @ mats[b], mats[b] @ mats[a]):
            raise AssertionError("class matrices do not commute")
    return mats


@dataclass
class CharacterTable:
    """Verified exact character table.

    Rows are sorted by (degree, float shadow of the value list); columns
    follow the canonical class order of the source group (identity first,
    then by element order, class size, discovery index).  `class_orders`
    is None for imported tables, whose serialization does not carry it.
    """

    order: int
    degree: int
    e: int
    k: int
    class_sizes: list[int]
    class_fix: list[int]
    class_der: list[bool]
    class_orders: list[int] | None
    values: list[list[Cyc]]
    degrees: list[int]
    trivial: int
    standard: int

    def shadow(self) -> np.ndarray:
        return np.array([[v.approx() for v in row] for row in self.values])

    def permutation_character(self) -> list[Cyc]:
        return [Cyc.integer(1, f) for f in self.class_fix]


def inner_product(table: CharacterTable, u, v) -> Cyc:
    """Exact <u, v> = (1/|G|) * sum |C_l| u_l conj(v_l) over the classes.

    u and v are class functions given as sequences of Cyc (table rows work
    directly); plain ints are accepted and coerced.
    """
    total = Cyc.zero(1)
    for size, a, b in zip(table.class_sizes, u, v):
        a = a if isinstance(a, Cyc) else Cyc.rational(1, a)
        b = b if isinstance(b, Cyc) else Cyc.rational(1, b)
        total = total + (a * b.conj()) * size
    return total / table.order


def _verify_table(t: CharacterTable) -> None:
    if t.k != len(t.class_sizes) or t.k != len(t.values):
        raise TableFormatError("class/row count mismatch")
    if t.class_sizes[0] != 1:
        raise TableFormatError("first class is not the identity class")
    if sum(t.class_sizes) != t.order:
        raise TableFormatError("class sizes do not sum to the group order")
    if t.class_fix[0] != t.degree:
        raise TableFormatError("identity fixes fewer points than the degree")
    for f, d in zip(t.class_fix, t.class_der):
        if d != (f == 0):
            raise TableFormatError("derangement flag disagrees with fix count")
    for r, row in enumerate(t.values):
        if len(row) != t.k:
            raise TableFormatError("ragged value row")
        ident = row[0]
        if not ident.is_integer() or ident.to_fraction() != t.degrees[r]:
            raise TableFormatError("identity column disagrees with the degree list")
        if t.degrees[r] < 1 or t.order % t.degrees[r]:
            raise TableFormatError("degree does not divide the group order")
    if sum(d * d for d in t.degrees) != t.order:
        raise TableFormatError("degree squares do not sum to the group order")
    for a in range(t.k):
        for b in range(a, t.k):
            ip = inner_product(t, t.values[a], t.values[b])
            want = 1 if a == b else 0
            if not (ip - want).is_zero():
                raise TableFormatError(f"rows {a},{b} violate orthogonality")
    one = Cyc.integer(1, 1)
    if any(not (v - one).is_zero() for v in t.values[t.trivial]):
        raise TableFormatError("trivial row is not all ones")
    std = t.values[t.standard]
    if any(not (v - (f - 1)).is_zero() for v, f in zip(std, t.class_fix)):
        raise TableFormatError("standard row is not fix-1")


def _locate_distinguished(values: list[list[Cyc]], class_fix: list[int]) -> tuple[int, int]:
    one = Cyc.integer(1, 1)
    trivial = standard = -1
    for r, row in enumerate(values):
        if all((v - one).is_zero() for v in row):
            if trivial >= 0:
                raise TableFormatError("two all-ones rows")
            trivial = r
        if all((v - (f - 1)).is_zero() for v, f in zip(row, class_fix)):
            if standard >= 0:
                raise TableFormatError("two fix-1 rows")
            standard = r
    if trivial < 0:
        raise TableFormatError("no trivial character row")
    if standard < 0:
        raise TableFormatError("no fix-1 character row (group not 2-transitive?)")
    return trivial, standard


def _sort_rows(values: list[list[Cyc]], degrees: list[int]) -> tuple[list[list[Cyc]], list[int]]:
    def key(r: int):
        shadow = []
        for v in values[r]:
            z = v.approx()
            shadow.append((round(z.real, 9), round(z.imag, 9)))
        return (degrees[r], shadow)

    idx = sorted(range(len(values)), key=key)
    return [values[r] for r in idx], [degrees[r] for r in idx]


def character_table(eg: EnumeratedGroup, seed: int = 1) -> CharacterTable:
    """Compute the exact character table of a fully enumerated group."""
    eg.compute_classes()
    k = eg.n_classes
    order = len(eg.E)
    sizes = eg.class_sizes
    e = math.lcm(*eg.class_orders)
    p = prime_one_mod(e, max(2 * math.isqrt(order) + 1, k))
    mats = class_constants(eg) % p

    # power map on classes: pc[l][t] = class of rep(C_l)^t
    powmap = []
    for l in range(k):
        rep = eg.class_rep(l)
        o = eg.class_orders[l]
        powmap.append([int(eg.class_of[eg.index_of(rep.power(t))]) for t in range(o)])

    rng = random.Random(seed * 1000003 + p)
    eye = np.eye(k, dtype=np.int64)
    vecs = None
    for _ in range(MAX_SPLIT_ATTEMPTS):
        combo = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            combo = (combo + rng.randrange(p) * mats[i]) % p
        roots = poly_roots_mod(charpoly_mod(combo, p), p)
        if len(roots) != k:
            continue
        found = []
        for lam in roots:
            ns = nullspace_mod((combo - lam * eye) % p, p)
            if ns.shape[0] != 1:
                break
            v = ns[0] % p
            if v[0] == 0:
                break
            v = v * pow(int(v[0]), -1, p) % p
            # v must be a common eigenvector of every class matrix, with
            # eigenvalue v[i] on mats[i] (the omega identity)
            ok = all(
                np.array_equal(mats[i] @ v % p, v[i] * v % p) for i in range(k)
            )
            if not ok:
                break
            found.append(v)
        if len(found) == k:
            vecs = found
            break
    if vecs is None:
        raise AssertionError("class algebra failed to split over F_p")

    z = element_of_order(p, e, list(factorize(e)))
    inv_sizes = [pow(s, -1, p) for s in sizes]
    values: list[list[Cyc]] = []
    degrees: list[int] = []
    for v in vecs:
        s = 0
        for i in range(k):
            s = (s + int(v[i]) * int(v[eg.inverse_class[i]]) * inv_sizes[i]) % p
        d_sq = order * pow(s, -1, p) % p
        deg = next(
            (d for d in range(1, math.isqrt(order) + 1) if d * d % p == d_sq), None
        )
        if deg is None:
            raise AssertionError("no admissible degree for a split row")
        f = [int(v[l]) * deg * inv_sizes[l] % p for l in range(k)]
        row = []
        for l in range(k):
            o = len(powmap[l])
            w = pow(z, e // o, p)
            inv_o = pow(o, -1, p)
            terms = []
            for scur in range(o):
                m = 0
                for t in range(o):
                    m = (m + f[powmap[l][t]] * pow(w, -scur * t, p)) % p
                m = m * inv_o % p
                if m > deg:
                    raise AssertionError("eigenvalue multiplicity exceeds the degree")
                if m:
                    terms.append((scur, m))
            if sum(c for _, c in terms) != deg:
                raise AssertionError("eigenvalue multiplicities do not sum to the degree")
            row.append(Cyc.root_sum(o, terms))
        values.append(row)
        degrees.append(deg)

    values, degrees = _sort_rows(values, degrees)
    class_fix = eg.class_fix
    trivial, standard = _locate_distinguished(values, class_fix)
    table = CharacterTable(
        order=order,
        degree=eg.group.degree,
        e=e,
        k=k,
        class_sizes=list(sizes),
        class_fix=list(class_fix),
        class_der=[f == 0 for f in class_fix],
        class_orders=list(eg.class_orders),
        values=values,
        degrees=degrees,
        trivial=trivial,
        standard=standard,
    )
    _verify_table(table)
    return table


# ---- serialization ----
#
# Line 1: "k e |G|".  Then k class lines "size fix_count is_derangement",
# identity class first.  Then k character lines, each holding k values
# separated by spaces; a value is the comma-separated integer coefficient
# list c0,c1,...  of the element sum_t c_t zeta_e^t, with trailing zeros
# omitted (a bare "0" for zero, full e-length lists accepted on input).


def _encode_value(v: Cyc, e: int) -> str:
    _, coords, den = v.embed(e).canonical()
    if den != 1:
        raise TableFormatError("non-integral character value")
    trimmed = list(coords)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    return ",".join(str(c) for c in trimmed)


def export_table(t: CharacterTable) -> str:
    lines = [f"{t.k} {t.e} {t.order}"]
    for s, f, d in zip(t.class_sizes, t.class_fix, t.class_der):
        lines.append(f"{s} {f} {int(d)}")
    for row in t.values:
        lines.append(" ".join(_encode_value(v, t.e) for v in row))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> CharacterTable:
    """Parse and fully verify a serialized character table."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise TableFormatError("empty table file")
    head = lines[0].split()
    if len(head) != 3:
        raise TableFormatError("header must be 'k e order'")
    try:
        k, e, order = (int(x) for x in head)
    except ValueError:
        raise TableFormatError("non-integer header field") from None
    if k < 1 or e < 1 or order < 1 or len(lines) != 1 + 2 * k:
        raise TableFormatError("wrong line count for the declared class number")
    sizes, fixes, ders = [], [], []
    for ln in lines[1 : 1 + k]:
        parts = ln.split()
        if len(parts) != 3:
            raise TableFormatError("class line must be 'size fix der'")
        try:
            s, f, d = (int(x) for x in parts)
        except ValueError:
            raise TableFormatError("non-integer class line field") from None
        if s < 1 or f < 0 or d not in (0, 1):
            raise TableFormatError("class line out of range")
        sizes.append(s)
        fixes.append(f)
        ders.append(bool(d))
    values: list[list[Cyc]] = []
    degrees: list[int] = []
    for ln in lines[1 + k :]:
        tokens = ln.split()
        if len(tokens) != k:
            raise TableFormatError("character line has the wrong value count")
        row = []
        for tok in tokens:
            try:
                coeffs = [int(c) for c in tok.split(",")]
            except ValueError:
                raise TableFormatError("non-integer coefficient") from None
            if len(coeffs) > e:
                raise TableFormatError("coefficient list longer than the conductor")
            row.append(Cyc.root_sum(e, list(enumerate(coeffs))))
        ident = row[0]
        if not ident.is_integer():
            raise TableFormatError("identity column value is not an integer")
        deg = ident.to_fraction()
        if deg < 1:
            raise TableFormatError("non-positive degree")
        values.append(row)
        degrees.append(int(deg))
    trivial, standard = _locate_distinguished(values, fixes)
    table = CharacterTable(
        order=order,
        degree=fixes[0],
        e=e,
        k=k,
        class_sizes=sizes,
        class_fix=fixes,
        class_der=ders,
        class_orders=None,
        values=values,
        degrees=degrees,
        trivial=trivial,
        standard=standard,
    )
    _verify_table(table)
    return table


# ---- cache ----


def group_key(group: PermutationGroup) -> str:
    """Stable cache key: hash of the degree and the sorted generator images."""
    gens = sorted(tuple(g.images) for g in group.generators)
    blob = repr((group.degree, gens)).encode()
    return hashlib.sha256(blob).hexdigest()


def character_table_for(
    group: PermutationGroup,
    cache_dir=None,
    seed: int = 1,
    cap: int | None = None,
    eg: EnumeratedGroup | None = None,
) -> CharacterTable:
    """Table for a group, consulting the cache directory when given.

    Cached files are re-verified on load, so a corrupted cache fails loudly
    instead of poisoning results.
    """
    path = None
    if cache_dir is not None:
        from pathlib import Path

        path = Path(cache_dir) / f"{group_key(group)}.ct"
        if path.exists():
            return parse_table(path.read_text())
    if eg is None:
        eg = conjugacy_classes(group) if cap is None else conjugacy_classes(group, cap)
    table = character_table(eg, seed=seed)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(export_table(table))
    return table
