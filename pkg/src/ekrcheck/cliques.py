"""Size-n cliques of the derangement graph and their module projections.

An n-clique is a sharply transitive set: n permutations pairwise
disagreeing at every point.  Cliques certify the EKR bound through the
clique-coclique inequality, and their projections onto character modules
certify that maximum independent sets live in the trivial plus standard
module (condition (b) of the module method).

Projection norms are invariant under translating a clique by a group
element on either side (the module projector commutes with both regular
representations), so distinct witnesses must come from genuinely
different sharply transitive sets; the enumerator below yields them in
deterministic backtracking order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartab import CharacterTable
from .cyclo import Cyc
from .group import EnumeratedGroup, PermutationGroup
from .perm import Permutation

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_CLIQUE_ATTEMPTS = 50


@dataclass
class Clique:
    """A verified clique, canonicalized to start with the identity."""

    elements: tuple[Permutation, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


def canonical_clique(elements) -> Clique:
    els = list(elements)
    first_inv = els[0].inverse()
    els = [first_inv * x for x in els]
    return Clique(elements=tuple(els))


def verify_clique(group: PermutationGroup, elements) -> bool:
    els = list(elements)
    for x in els:
        if x not in group:
            raise ValueError("clique element not in the group")
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            if (els[a] * els[b].inverse()).num_fixed() != 0:
                return False
    return True


def _cyclic_shortcut(eg: EnumeratedGroup) -> list[int] | None:
    """A single n-cycle generates a cyclic regular subgroup: an n-clique."""
    n = eg.group.degree
    for c in range(eg.n_classes):
        if eg.class_orders[c] == n and eg.class_fix[c] == 0:
            rep = eg.class_rep(c)
            if rep.cycle_type() != (n,):
                continue
            idx = [eg.index_of(rep.power(t)) for t in range(n)]
            return sorted(idx[:1]) + sorted(idx[1:])
    return None


def iter_n_cliques(eg: EnumeratedGroup, budget: int = DEFAULT_NODE_BUDGET):
    """Yield n-cliques through the identity as index lists, id first.

    Backtracking over sharply transitive sets: every non-identity member
    must be a derangement, and each point can take each image only once.
    Candidates are bucketed by the image of point 0 and tried in element
    enumeration order; the generator stops silently when the node budget
    is exhausted (absence of further yields is not a nonexistence proof).
    """
    n = eg.group.degree
    E = eg.E
    der = np.nonzero(eg.fix_counts_all == 0)[0]
    buckets = [der[E[der, 0] == v] for v in range(n)]
    used = np.zeros((n, n), dtype=bool)
    used[np.arange(n), np.arange(n)] = True  # the identity row
    chosen = [0]
    cols = np.arange(n)
    nodes = 0

    def dfs():
        nonlocal nodes
        if len(chosen) == n:
            yield list(chosen)
            return
        v = int(np.nonzero(~used[0])[0][0])
        for cand in buckets[v]:
            nodes += 1
            if nodes > budget:
                return
            row = E[cand]
            if used[cols, row].any():
                continue
            used[cols, row] = True
            chosen.append(int(cand))
            yield from dfs()
            chosen.pop()
            used[cols, row] = False

    yield from dfs()


def find_n_clique(eg: EnumeratedGroup, budget: int = DEFAULT_NODE_BUDGET) -> Clique | None:
    idx = _cyclic_shortcut(eg)
    if idx is None:
        idx = next(iter_n_cliques(eg, budget), None)
    if idx is None:
        return None
    clique = Clique(elements=tuple(eg.element(i) for i in idx))
    if not verify_clique(eg.group, clique.elements):
        raise AssertionError("search produced a non-clique")
    return clique


def _quotient_class_counts(eg: EnumeratedGroup, idx: list[int]) -> np.ndarray:
    """Histogram over conjugacy classes of all quotients x^-1 y, x,y in C."""
    E = eg.E
    rows = E[np.array(idx, dtype=np.int64)]
    counts = np.zeros(eg.n_classes, dtype=np.int64)
    for i in idx:
        inv_row = E[eg.inv_index[i]].astype(np.intp)
        prod = inv_row[rows]  # (x^-1 y)(t) = x^-1(y(t))
        labels = eg.class_of[eg.row_indices(prod)]
        counts += np.bincount(labels, minlength=eg.n_classes)
    return counts


def projection_norm(eg: EnumeratedGroup, table: CharacterTable, idx, row: int) -> Cyc:
    """Exact quadratic form of the clique vector under the module projector
    of character `row`: (chi(1)/|G|) sum over ordered pairs of chi(x^-1 y).

    Non-negative for any vertex subset (the projector is PSD); positive
    exactly when the subset's characteristic vector meets the module.
    """
    counts = _quotient_class_counts(eg, list(idx))
    acc = Cyc.zero(1)
    for c in range(eg.n_classes):
        if counts[c]:
            acc = acc + table.values[row][c] * int(counts[c])
    val = acc * Fraction(table.degrees[row], table.order)
    if not val.is_real() or val.sign_real() < 0:
        raise AssertionError("projection norm must be real and non-negative")
    return val


def clique_char_sum(eg: EnumeratedGroup, table: CharacterTable, idx, row: int) -> Cyc:
    """chi(C) = sum over the clique of the character value (reported for
    comparison with the projection norm, not used for certification)."""
    acc = Cyc.zero(1)
    for i in idx:
        acc = acc + table.values[row][int(eg.class_of[i])]
    return acc


@dataclass
class ModuleWitness:
    row: int
    clique_idx: list[int] | None
    norm: Cyc | None
    char_sum: Cyc | None

    @property
    def witnessed(self) -> bool:
        return self.clique_idx is not None


def module_by_clique(
    eg: EnumeratedGroup,
    table: CharacterTable,
    budget: int = DEFAULT_NODE_BUDGET,
    attempts: int = DEFAULT_CLIQUE_ATTEMPTS,
) -> dict[int, ModuleWitness]:
    """For every character other than trivial and standard, hunt for an
    n-clique whose projection to that module is nonzero.

    All-witnessed output certifies condition (b): maximum independent set
    vectors then lie in the span of the trivial and standard modules.
    Unwitnessed rows stay unknown; that is a legitimate outcome.
    """
    targets = [r for r in range(table.k) if r not in (table.trivial, table.standard)]
    result = {r: ModuleWitness(row=r, clique_idx=None, norm=None, char_sum=None) for r in targets}
    if not targets:
        return result
    pending = set(targets)
    seen: set[frozenset] = set()

    def try_clique(idx: list[int]):
        key = frozenset(idx)
        if key in seen:
            return
        seen.add(key)
        for r in list(pending):
            norm = projection_norm(eg, table, idx, r)
            if norm.sign_real() > 0:
                result[r] = ModuleWitness(
                    row=r,
                    clique_idx=list(idx),
                    norm=norm,
                    char_sum=clique_char_sum(eg, table, idx, r),
                )
                pending.discard(r)

    shortcut = _cyclic_shortcut(eg)
    if shortcut is not None:
        try_clique(shortcut)
    for idx in iter_n_cliques(eg, budget):
        if not pending or len(seen) >= attempts:
            break
        try_clique(idx)
    return result
