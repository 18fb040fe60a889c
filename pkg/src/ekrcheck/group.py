"""Permutation groups via a deterministic Schreier-Sims stabilizer chain.

Base points are chosen as the smallest moved point at every level, so for a
k-transitive group the chain starts 0, 1, 2, ... and transitivity can be read
off the orbit sizes.  All iteration orders are fixed, making element
enumeration and conjugacy class labeling reproducible across runs.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded
from .perm import Permutation

ENUMERATION_CAP = 2_000_000
CLASS_ORBIT_CAP = 2_000_000


class _Level:
    __slots__ = ("base_point", "gens", "transversal", "orbit_list")

    def __init__(self, base_point: int, degree: int):
        self.base_point = base_point
        self.gens: list[Permutation] = []
        self.transversal = {base_point: Permutation.identity(degree)}
        self.orbit_list = [base_point]

    def recompute_orbit(self, degree: int) -> None:
        self.transversal = {self.base_point: Permutation.identity(degree)}
        self.orbit_list = [self.base_point]
        frontier = [self.base_point]
        while frontier:
            nxt = []
            for p in frontier:
                u = self.transversal[p]
                for g in self.gens:
                    q = g(p)
                    if q not in self.transversal:
                        self.transversal[q] = g * u
                        self.orbit_list.append(q)
                        nxt.append(q)
            frontier = nxt


class PermutationGroup:
    """Group generated by a list of Permutations of common degree."""

    def __init__(self, generators, degree: int | None = None,
                 base_hint: list[int] | None = None):
        gens = [g for g in generators if not g.is_identity()]
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(
                    f"generator degree {g.degree} does not match {degree}"
                )
        self.degree = degree
        self.generators = list(gens)
        self.levels: list[_Level] = []
        self._base_hint = list(base_hint or [])
        if gens:
            self._schreier_sims(gens)
        self._order = 1
        for lv in self.levels:
            self._order *= len(lv.orbit_list)

    # ---- chain construction ----

    def _pick_base_point(self, perms: list[Permutation]) -> int:
        for b in self._base_hint:
            if any(p(b) != b for p in perms):
                return b
        return min(pt for pt in range(self.degree)
                   if any(p(pt) != pt for p in perms))

    def _schreier_sims(self, gens: list[Permutation]) -> None:
        first = _Level(self._pick_base_point(gens), self.degree)
        first.gens = list(gens)
        self.levels = [first]
        i = 0
        while i >= 0:
            lv = self.levels[i]
            lv.recompute_orbit(self.degree)
            new_strong = self._close_level(i)
            if new_strong is None:
                i -= 1
                continue
            residue, j = new_strong
            if j == len(self.levels):
                self.levels.append(_Level(self._pick_base_point([residue]), self.degree))
            for l in range(i + 1, j + 1):
                self.levels[l].gens.append(residue)
            i = j

    def _close_level(self, i: int):
        """Test all Schreier generators of level i; on a failed sift return
        (residue, level it belongs to), else None."""
        lv = self.levels[i]
        idx = 0
        while idx < len(lv.orbit_list):
            p = lv.orbit_list[idx]
            u_p = lv.transversal[p]
            for g in lv.gens:
                q = g(p)
                if q not in lv.transversal:
                    lv.transversal[q] = g * u_p
                    lv.orbit_list.append(q)
                s = lv.transversal[q].inverse() * (g * u_p)
                if s.is_identity():
                    continue
                residue, j = self._sift_from(i + 1, s)
                if residue is not None:
                    return residue, j
            idx += 1
        return None

    def _sift_from(self, start: int, g: Permutation):
        """Sift g through levels[start:].  Returns (None, _) on success, or
        (residue, level_index) where the residue could not be expressed."""
        residue = g
        j = start
        while j < len(self.levels):
            lv = self.levels[j]
            p = residue(lv.base_point)
            if p not in lv.transversal:
                return residue, j
            residue = lv.transversal[p].inverse() * residue
            j += 1
        if residue.is_identity():
            return None, j
        return residue, j

    # ---- queries ----

    def order(self) -> int:
        return self._order

    def __contains__(self, g) -> bool:
        if not isinstance(g, Permutation) or g.degree != self.degree:
            return False
        residue, _ = self._sift_from(0, g)
        return residue is None

    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    def orbit(self, point: int) -> list[int]:
        """Orbit of a point under the whole group, in BFS discovery order."""
        seen = {point: True}
        out = [point]
        frontier = [point]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = g(p)
                    if q not in seen:
                        seen[q] = True
                        out.append(q)
                        nxt.append(q)
            frontier = nxt
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def transitivity_degree(self) -> int:
        """Largest t with the action t-transitive (0 for intransitive).

        Level i of the chain generates the stabilizer of the first i base
        points, and its orbit is the full complement exactly when it has
        degree - i points, so the orbit sizes read off transitivity.
        """
        t = 0
        for i, lv in enumerate(self.levels):
            if len(lv.orbit_list) != self.degree - i:
                break
            t += 1
        else:
            # trivial stabilizer with a single point left is transitive on it
            if self.degree - t == 1:
                t += 1
        return t

    def random_element(self, rng) -> Permutation:
        """Uniformly random element via the transversal factorization.

        Every element factors uniquely as u_0 u_1 ... u_k with u_i drawn from
        level i's transversal, so independent uniform picks are uniform."""
        g = Permutation.identity(self.degree)
        for lv in self.levels:
            p = lv.orbit_list[rng.randrange(len(lv.orbit_list))]
            g = g * lv.transversal[p]
        return g

    def point_stabilizer(self, x: int) -> "PermutationGroup":
        """Stabilizer of the point x (0-indexed), as a new group."""
        rebuilt = PermutationGroup(self.generators, self.degree, base_hint=[x])
        if not rebuilt.levels or rebuilt.levels[0].base_point != x:
            # x is fixed by the whole group
            return rebuilt
        stab_gens = rebuilt.levels[1].gens if len(rebuilt.levels) > 1 else []
        stab = PermutationGroup(stab_gens, self.degree)
        assert stab.order() * len(rebuilt.levels[0].orbit_list) == self.order()
        return stab

    # ---- element enumeration ----

    def elements_array(self, cap: int = ENUMERATION_CAP) -> np.ndarray:
        """All elements as an (order, degree) int8 array of image rows.

        Row 0 is the identity; the order is the deterministic product order of
        the stabilizer chain transversals."""
        if self._order > cap:
            raise CapExceeded("element enumeration", self._order, cap)
        if self.degree > 127:
            raise ValueError("degree too large for int8 rows")
        E = np.arange(self.degree, dtype=np.int8)[None, :]
        for lv in reversed(self.levels):
            reps = [np.array(lv.transversal[p].images, dtype=np.int8)
                    for p in lv.orbit_list]
            E = np.vstack([u[E] for u in reps]) if len(reps) > 1 else E
        # levels were applied bottom-up: element = u_0 ∘ u_1 ∘ ... ∘ id
        return E

    def elements(self, cap: int = ENUMERATION_CAP):
        """Yield all elements as Permutations, identity first."""
        for row in self.elements_array(cap):
            yield Permutation(tuple(int(x) for x in row))


def build_group(generators, degree: int | None = None) -> PermutationGroup:
    return PermutationGroup(generators, degree)


def conjugation_orbit(group: PermutationGroup, rep: Permutation,
                      cap: int = CLASS_ORBIT_CAP) -> np.ndarray:
    """Conjugacy class of rep as a (size, degree) int8 image array, without
    enumerating the group.  Row 0 is rep; the rest follow BFS discovery order
    under conjugation by the generators."""
    if rep not in group:
        raise ValueError("representative not in group")
    pairs = [(np.array(g.images, dtype=np.int8),
              np.array(g.inverse().images, dtype=np.int8))
             for g in group.generators]
    seed = np.array(rep.images, dtype=np.int8)
    rows = [seed]
    seen = {seed.tobytes()}
    head = 0
    while head < len(rows):
        row = rows[head]
        head += 1
        for g, ginv in pairs:
            # (g^-1 x g)(pt) = g^-1(x(g(pt)))
            conj = ginv[row[g]]
            key = conj.tobytes()
            if key not in seen:
                if len(rows) >= cap:
                    raise CapExceeded("conjugacy class orbit", len(rows) + 1, cap)
                seen.add(key)
                rows.append(conj)
    return np.array(rows, dtype=np.int8)


class EnumeratedGroup:
    """A fully enumerated group with conjugacy class data.

    Heavy companion object for the character-table and rank computations.
    Elements are indexed by their row in `E`; conjugacy classes are labeled
    0..k-1 with class 0 = identity, the rest sorted by (representative order,
    class size, first-found element index)."""

    def __init__(self, group: PermutationGroup, cap: int = ENUMERATION_CAP):
        self.group = group
        n = group.degree
        self.E = group.elements_array(cap)
        N = len(self.E)
        self.index = {self.E[i].tobytes(): i for i in range(N)}
        # inverse of every element, vectorized: inv[i, E[i, j]] = j
        inv = np.empty_like(self.E)
        rows = np.arange(N)[:, None]
        inv[rows, self.E.astype(np.intp)] = np.arange(n, dtype=np.int8)[None, :]
        self.inv_index = np.fromiter(
            (self.index[inv[i].tobytes()] for i in range(N)), dtype=np.int64, count=N
        )
        self.fix_counts_all = (self.E == np.arange(n, dtype=np.int8)[None, :]).sum(axis=1)
        self._classes_done = False

    def index_of(self, p: Permutation) -> int:
        key = np.array(p.images, dtype=np.int8).tobytes()
        try:
            return self.index[key]
        except KeyError:
            raise ValueError("element not in group") from None

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.E[i]))

    def compute_classes(self) -> None:
        if self._classes_done:
            return
        N = len(self.E)
        gen_pairs = [(np.array(g.images, dtype=np.int8),
                      np.array(g.inverse().images, dtype=np.int8))
                     for g in self.group.generators]
        class_of = np.full(N, -1, dtype=np.int64)
        seeds = []
        sizes = []
        for i in range(N):
            if class_of[i] >= 0:
                continue
            label = len(seeds)
            seeds.append(i)
            class_of[i] = label
            frontier = [self.E[i]]
            size = 1
            while frontier:
                nxt = []
                for row in frontier:
                    for g, ginv in gen_pairs:
                        conj = ginv[row[g]]
                        j = self.index[conj.tobytes()]
                        if class_of[j] < 0:
                            class_of[j] = label
                            size += 1
                            nxt.append(conj)
                frontier = nxt
            sizes.append(size)
        # canonical relabeling: identity first, then (rep order, size, seed)
        orders = [self.element(s).order() for s in seeds]
        perm_labels = sorted(
            range(len(seeds)),
            key=lambda l: (l != 0, orders[l], sizes[l], seeds[l]),
        )
        relabel = np.empty(len(seeds), dtype=np.int64)
        for new, old in enumerate(perm_labels):
            relabel[old] = new
        self.class_of = relabel[class_of]
        self.class_seeds = [seeds[old] for old in perm_labels]
        self.class_sizes = [sizes[old] for old in perm_labels]
        self.class_orders = [orders[old] for old in perm_labels]
        self.n_classes = len(seeds)
        self.class_fix = [int(self.fix_counts_all[s]) for s in self.class_seeds]
        self.inverse_class = [
            int(self.class_of[self.inv_index[s]]) for s in self.class_seeds
        ]
        self._classes_done = True

    def class_rep(self, c: int) -> Permutation:
        return self.element(self.class_seeds[c])

    def row_indices(self, rows: np.ndarray) -> np.ndarray:
        """Vectorized lookup: image rows (m, degree) int8 -> element indices.

        Rows must all belong to the group; membership is not rechecked."""
        if not hasattr(self, "_void_order"):
            n = self.E.shape[1]
            voids = np.ascontiguousarray(self.E).view(np.dtype((np.void, n))).ravel()
            self._void_order = np.argsort(voids)
            self._sorted_voids = voids[self._void_order]
        n = self.E.shape[1]
        q = np.ascontiguousarray(rows.astype(np.int8, copy=False))
        q = q.view(np.dtype((np.void, n))).ravel()
        pos = np.searchsorted(self._sorted_voids, q)
        return self._void_order[pos]


def conjugacy_classes(group: PermutationGroup, cap: int = ENUMERATION_CAP) -> EnumeratedGroup:
    """Enumerate the group and compute its conjugacy classes (full mode)."""
    eg = EnumeratedGroup(group, cap)
    eg.compute_classes()
    return eg
