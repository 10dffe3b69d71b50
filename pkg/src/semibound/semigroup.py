"""Finite matrix semigroups: closure, product tables and Green's relations.

Everything downstream of :func:`closure` works on element indices through
the product table, so no further matrix arithmetic is needed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

from .errors import CapExceeded, DimensionMismatch, InternalContradiction, NotClosed, NotIdempotent
from .linalg import QMatrix

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class SemigroupTable:
    elements: tuple
    product: tuple
    zero_index: Optional[int] = None
    generator_indices: tuple = ()

    def __len__(self):
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.elements[0].n

    @cached_property
    def _lookup(self):
        return {m: i for i, m in enumerate(self.elements)}

    def index(self, m) -> int:
        return self._lookup[m]

    def __contains__(self, m):
        return m in self._lookup

    def mul(self, i, j) -> int:
        return self.product[i][j]

    @classmethod
    def from_elements(cls, elements, generator_indices=None) -> SemigroupTable:
        """Build the table of an explicitly listed, already closed set of matrices."""
        elements = tuple(elements)
        if not elements:
            raise ValueError("need at least one element")
        _common_dimension(elements)
        lookup = {}
        for m in elements:
            if m in lookup:
                raise ValueError(f"duplicate element {m!r}")
            lookup[m] = len(lookup)
        product = []
        for a in elements:
            row = []
            for b in elements:
                c = a * b
                if c not in lookup:
                    raise NotClosed(f"product {c!r} is not in the set")
                row.append(lookup[c])
            product.append(tuple(row))
        if generator_indices is None:
            generator_indices = tuple(range(len(elements)))
        return cls(tuple(elements), tuple(product), _find_zero(elements), tuple(generator_indices))

    def relabel(self, elements) -> SemigroupTable:
        """Same product table carried by a different (isomorphic) family of matrices."""
        if len(elements) != len(self.elements):
            raise ValueError("element count differs")
        return SemigroupTable(tuple(elements), self.product, self.zero_index, self.generator_indices)


def _common_dimension(mats) -> int:
    dims = {m.n for m in mats}
    if len(dims) != 1:
        raise DimensionMismatch(f"generators have differing dimensions {sorted(dims)}")
    return dims.pop()


def _find_zero(elements):
    return next((i for i, m in enumerate(elements) if m.is_zero()), None)


def closure(generators, cap: int = DEFAULT_CAP) -> SemigroupTable:
    """Multiplicative closure of ``generators`` with its full product table.

    Elements are indexed breadth-first: generators first (duplicates dropped),
    then each new product in discovery order.  Raises :class:`CapExceeded`
    once more than ``cap`` distinct elements appear.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = [g if isinstance(g, QMatrix) else QMatrix(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    _common_dimension(gens)

    elements = []
    lookup = {}
    # each non-generator j is recorded as a product elements[a] * elements[b] with a, b < j
    split = {}

    def add(m):
        idx = lookup.get(m)
        if idx is None:
            if len(elements) >= cap:
                raise CapExceeded(cap)
            idx = len(elements)
            lookup[m] = idx
            elements.append(m)
        return idx

    gen_idx = []
    for g in gens:
        i = add(g)
        if i not in gen_idx:
            gen_idx.append(i)

    right = []  # right[i][k] = index of elements[i] * generator k
    queue = deque(range(len(elements)))
    while queue:
        i = queue.popleft()
        row = []
        for g in gen_idx:
            for a, b in ((i, g), (g, i)):
                before = len(elements)
                j = add(elements[a] * elements[b])
                if len(elements) > before:
                    split[j] = (a, b)
                    queue.append(j)
                if b == g:
                    row.append(j)
                    if a == g:
                        break
        right.append(row)

    size = len(elements)
    cols = [None] * size
    for k, g in enumerate(gen_idx):
        cols[g] = [right[i][k] for i in range(size)]
    for j in range(size):
        if cols[j] is not None:
            continue
        a, b = split[j]
        ca, cb = cols[a], cols[b]
        cols[j] = [cb[ca[i]] for i in range(size)]
    product = tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))
    return SemigroupTable(tuple(elements), product, _find_zero(elements), tuple(gen_idx))


def adjoin_zero(S: SemigroupTable) -> SemigroupTable:
    if S.zero_index is not None:
        return S
    z = len(S)
    zero = S.elements[0] - S.elements[0]
    product = tuple(row + (z,) for row in S.product) + ((z,) * (z + 1),)
    return SemigroupTable(S.elements + (zero,), product, z, S.generator_indices)


@dataclass(frozen=True)
class GreenStructure:
    """R, L, J and H partitions of a finite semigroup.

    Classes are tuples of element indices, listed in order of their smallest
    member.  ``j_order`` holds pairs ``(a, b)`` of J-class ids with the ideal
    of class ``a`` contained in that of class ``b`` (reflexive).
    """

    r_classes: tuple
    l_classes: tuple
    j_classes: tuple
    h_classes: tuple
    j_order: frozenset
    r_of: tuple
    l_of: tuple
    j_of: tuple
    h_of: tuple

    def j_leq(self, s, t) -> bool:
        """Whether ``S^1 s S^1`` is contained in ``S^1 t S^1``."""
        return (self.j_of[s], self.j_of[t]) in self.j_order

    def h_class(self, s):
        return self.h_classes[self.h_of[s]]


def _partition(keys):
    ids = {}
    classes = []
    of = []
    for i, key in enumerate(keys):
        cid = ids.get(key)
        if cid is None:
            cid = ids[key] = len(classes)
            classes.append([])
        classes[cid].append(i)
        of.append(cid)
    return tuple(tuple(c) for c in classes), tuple(of)


def _bits(indices):
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def principal_ideals(S: SemigroupTable):
    """Bitsets of ``S^1 s``, ``s S^1`` and ``S^1 s S^1`` for every element."""
    N = len(S)
    right = [_bits(S.product[s]) | (1 << s) for s in range(N)]
    left = [_bits(S.product[x][s] for x in range(N)) | (1 << s) for s in range(N)]
    two = []
    for s in range(N):
        acc = 0
        bits = left[s]
        t = 0
        while bits:
            if bits & 1:
                acc |= right[t]
            bits >>= 1
            t += 1
        two.append(acc)
    return left, right, two


def green_relations(S: SemigroupTable) -> GreenStructure:
    left, right, two = principal_ideals(S)
    r_classes, r_of = _partition(right)
    l_classes, l_of = _partition(left)
    j_classes, j_of = _partition(two)
    h_classes, h_of = _partition(zip(r_of, l_of))
    reps = [two[c[0]] for c in j_classes]
    order = frozenset(
        (a, b) for a, ia in enumerate(reps) for b, ib in enumerate(reps) if ia & ~ib == 0
    )
    return GreenStructure(r_classes, l_classes, j_classes, h_classes, order, r_of, l_of, j_of, h_of)


def idempotents(S: SemigroupTable) -> list:
    return [i for i in range(len(S)) if S.product[i][i] == i]


@dataclass(frozen=True)
class MaximalSubgroup:
    element_indices: tuple
    identity_index: int

    @property
    def order(self) -> int:
        return len(self.element_indices)

    def __contains__(self, i):
        return i in self.element_indices


def _verify_group(S, members, e):
    mset = set(members)
    for a in members:
        if S.product[e][a] != a or S.product[a][e] != a:
            return False
        if not any(S.product[a][b] == e and S.product[b][a] == e for b in members):
            return False
        if any(S.product[a][b] not in mset for b in members):
            return False
    return True


def maximal_subgroup_at(S: SemigroupTable, e: int, green: GreenStructure | None = None) -> MaximalSubgroup:
    """The H-class of the idempotent ``e``, checked to be a group."""
    if S.product[e][e] != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    green = green or green_relations(S)
    members = green.h_class(e)
    if not _verify_group(S, members, e):
        raise InternalContradiction(f"H-class of idempotent {e} is not a group")
    return MaximalSubgroup(tuple(members), e)


def maximal_subgroups(S: SemigroupTable, green: GreenStructure | None = None) -> list:
    green = green or green_relations(S)
    return [maximal_subgroup_at(S, e, green) for e in idempotents(S)]


def is_aperiodic(S: SemigroupTable, green: GreenStructure | None = None) -> bool:
    green = green or green_relations(S)
    return all(len(green.h_class(e)) == 1 for e in idempotents(S))


class StabilityCheck(NamedTuple):
    ok: bool
    witness: Optional[tuple] = None  # (side, s, x) for the first violation


def check_stability(S: SemigroupTable, green: GreenStructure | None = None) -> StabilityCheck:
    """Exhaustively test ``sx J s <=> sx R s`` and ``xs J s <=> xs L s``."""
    green = green or green_relations(S)
    j, r, l = green.j_of, green.r_of, green.l_of
    P = S.product
    for s in range(len(S)):
        for x in range(len(S)):
            sx = P[s][x]
            if (j[sx] == j[s]) != (r[sx] == r[s]):
                return StabilityCheck(False, ("right", s, x))
            xs = P[x][s]
            if (j[xs] == j[s]) != (l[xs] == l[s]):
                return StabilityCheck(False, ("left", s, x))
    return StabilityCheck(True)


def _generating_set(S, members):
    """Greedy small generating set of a finite subgroup, by index order."""
    gens = []
    reached = set()
    for a in members:
        if a in reached:
            continue
        gens.append(a)
        reached = _generated(S, gens)
        if len(reached) == len(members):
            break
    return gens


def _generated(S, gens):
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = S.product[a][g]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def groups_isomorphic(S: SemigroupTable, G: MaximalSubgroup, H: MaximalSubgroup, limit: int = 16):
    """Decide whether two maximal subgroups of ``S`` are isomorphic.

    Orders are compared first.  A full search over images of a generating set
    is only attempted when both orders are at most ``limit``; beyond that the
    answer is None when the orders agree.
    """
    if G.order != H.order:
        return False
    if G.order > limit:
        return None
    P = S.product
    gens = _generating_set(S, G.element_indices)
    targets = H.element_indices

    def extend(images):
        phi = {G.identity_index: H.identity_index}
        phi.update(zip(gens, images))
        frontier = list(phi)
        while frontier:
            nxt = []
            for a in frontier:
                for g, ig in zip(gens, images):
                    c, ic = P[a][g], P[phi[a]][ig]
                    if c in phi:
                        if phi[c] != ic:
                            return None
                    else:
                        phi[c] = ic
                        nxt.append(c)
            frontier = nxt
        if len(set(phi.values())) != G.order:
            return None
        if any(P[phi[a]][phi[b]] != phi[P[a][b]] for a in phi for b in phi):
            return None
        return phi

    def search(prefix):
        if len(prefix) == len(gens):
            return extend(prefix) is not None
        return any(search(prefix + [t]) for t in targets)

    return search([])
