"""Ideals, 0-minimality, generalized group mapping and the injectivity criterion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalContradiction, NoZero, NotGGM, NotHomomorphism, NotSameJClass, TrivialSemigroup
from .linalg import solve_linear
from .semigroup import GreenStructure, MaximalSubgroup, SemigroupTable, green_relations, principal_ideals


@dataclass(frozen=True)
class Ideal:
    element_indices: tuple

    def __contains__(self, i):
        return i in self.element_indices

    def __len__(self):
        return len(self.element_indices)

    def __iter__(self):
        return iter(self.element_indices)


def is_ideal(S: SemigroupTable, indices) -> bool:
    members = set(indices)
    P = S.product
    return all(P[s][i] in members and P[i][s] in members for i in members for s in range(len(S)))


def _require_zero(S):
    if S.zero_index is None:
        raise NoZero("semigroup has no zero element")
    if len(S) == 1:
        raise TrivialSemigroup("semigroup is {0}")


def zero_minimal_ideals(S: SemigroupTable, green: GreenStructure | None = None) -> list:
    """All 0-minimal ideals, ordered by the lowest index of their nonzero part."""
    _require_zero(S)
    green = green or green_relations(S)
    z = green.j_of[S.zero_index]
    nonzero = [c for c in range(len(green.j_classes)) if c != z]
    minimal = [
        c for c in nonzero if not any(d != c and (d, c) in green.j_order for d in nonzero)
    ]
    ideals = [tuple(sorted(green.j_classes[c] + (S.zero_index,))) for c in minimal]
    ideals.sort(key=lambda idx: min(i for i in idx if i != S.zero_index))
    return [Ideal(i) for i in ideals]


def zero_minimal_ideal(S: SemigroupTable, green: GreenStructure | None = None) -> Ideal:
    """J ∪ {0} for the first J-class minimal among the nonzero ones.

    The result is checked to be an ideal in which every nonzero element
    generates the whole ideal, i.e. it has no proper nonzero subideal.
    """
    ideal = zero_minimal_ideals(S, green)[0]
    if not is_ideal(S, ideal.element_indices):
        raise InternalContradiction("J ∪ {0} for a minimal nonzero J-class is not an ideal")
    _, _, two = principal_ideals(S)
    full = 0
    for i in ideal:
        full |= 1 << i
    if any(two[i] != full for i in ideal if i != S.zero_index):
        raise InternalContradiction("0-minimal ideal candidate has a proper nonzero subideal")
    return ideal


def restrict(S: SemigroupTable, indices) -> SemigroupTable:
    """The subsemigroup on ``indices`` as a standalone table."""
    indices = tuple(indices)
    pos = {s: k for k, s in enumerate(indices)}
    try:
        product = tuple(tuple(pos[S.product[a][b]] for b in indices) for a in indices)
    except KeyError:
        raise ValueError("indices are not closed under the product") from None
    zero = pos.get(S.zero_index) if S.zero_index is not None else None
    # the parent's generators need not generate the subsemigroup
    return SemigroupTable(tuple(S.elements[i] for i in indices), product, zero, tuple(range(len(indices))))


def is_zero_simple(T: SemigroupTable) -> bool:
    """``T^2 != 0`` and every nonzero element generates ``T`` as a two-sided ideal."""
    if T.zero_index is None:
        return False
    z = T.zero_index
    if all(v == z for row in T.product for v in row):
        return False
    _, _, two = principal_ideals(T)
    full = (1 << len(T)) - 1
    return all(two[i] == full for i in range(len(T)) if i != z)


@dataclass(frozen=True)
class GGMReport:
    """Faithfulness of the two actions of S on a 0-minimal ideal I.

    ``left_faithful`` concerns ``x -> s x``, ``right_faithful`` concerns
    ``x -> x s`` (x in I).  A witness is a pair ``s != t`` acting identically.
    """

    ideal: Ideal
    left_faithful: bool
    right_faithful: bool
    left_witness: Optional[tuple] = None
    right_witness: Optional[tuple] = None
    unique_ideal: bool = False

    @property
    def is_ggm(self) -> bool:
        return self.left_faithful and self.right_faithful


def _first_collision(keys):
    seen = {}
    for t, key in enumerate(keys):
        if key in seen:
            return (seen[key], t)
        seen[key] = t
    return None


def verify_ggm(S: SemigroupTable, green: GreenStructure | None = None) -> GGMReport:
    green = green or green_relations(S)
    ideals = zero_minimal_ideals(S, green)
    ideal = zero_minimal_ideal(S, green)
    members = ideal.element_indices
    P = S.product
    left = _first_collision(tuple(P[s][x] for x in members) for s in range(len(S)))
    right = _first_collision(tuple(P[x][s] for x in members) for s in range(len(S)))
    return GGMReport(ideal, left is None, right is None, left, right, len(ideals) == 1)


@dataclass(frozen=True)
class SpanCertificate:
    support: tuple
    coefficients: tuple

    def combination(self, S: SemigroupTable):
        acc = S.elements[0] - S.elements[0]
        for i, c in zip(self.support, self.coefficients):
            acc = acc + S.elements[i].scale(c)
        return acc


def span_contains_identity(S: SemigroupTable, ideal: Ideal) -> SpanCertificate | None:
    """Rational coefficients writing the identity matrix as a combination of ideal elements."""
    n = S.n
    support = [i for i in ideal if not S.elements[i].is_zero()]
    if not support:
        return None
    flats = [S.elements[i].flat() for i in support]
    A = [[f[k] for f in flats] for k in range(n * n)]
    b = [Fraction(int(r == c)) for r in range(n) for c in range(n)]
    coeffs = solve_linear(A, b)
    if coeffs is None:
        return None
    kept = [(i, c) for i, c in zip(support, coeffs) if c != 0]
    cert = SpanCertificate(tuple(i for i, _ in kept), tuple(c for _, c in kept))
    if cert.combination(S) != type(S.elements[0]).identity(n):
        raise InternalContradiction("span certificate does not reproduce the identity")
    return cert


def is_homomorphism(S: SemigroupTable, image) -> bool:
    P = S.product
    N = len(S)
    return all(image[i] * image[j] == image[P[i][j]] for i in range(N) for j in range(N))


def separates_by_ideal(S: SemigroupTable, ideal: Ideal) -> bool:
    """Whether ``s = t`` exactly when ``x s y = x t y`` for all ``x, y`` in the ideal."""
    P = S.product
    members = ideal.element_indices
    sigs = [tuple(P[P[x][s]][y] for x in members for y in members) for s in range(len(S))]
    return len(set(sigs)) == len(S)


def injectivity_criterion(
    S: SemigroupTable,
    ideal: Ideal,
    G: MaximalSubgroup,
    image,
    green: GreenStructure | None = None,
) -> bool:
    """Decide injectivity of a homomorphism through the ideal and one maximal subgroup.

    ``image`` lists the image of every element by index.  The verdict is
    (no nonzero ideal element shares the image of 0) and (the image is
    injective on G); it is cross-checked against pairwise distinctness of
    all images.
    """
    if len(image) != len(S):
        raise ValueError("image table must cover every element")
    if not is_homomorphism(S, image):
        raise NotHomomorphism("image table does not respect the product")
    report = verify_ggm(S, green)
    if not report.is_ggm or set(report.ideal.element_indices) != set(ideal.element_indices):
        raise NotGGM("semigroup does not act faithfully on both sides of the ideal")
    z = S.zero_index
    if z in G or any(g not in ideal for g in G.element_indices):
        raise ValueError("G must lie in the ideal minus zero")

    separated = all(image[i] != image[z] for i in ideal if i != z)
    on_group = len({image[g] for g in G.element_indices}) == G.order
    verdict = separated and on_group
    truth = len(set(image)) == len(S)
    if verdict != truth:
        raise InternalContradiction(
            f"injectivity criterion says {verdict} but the map is {'' if truth else 'not '}injective"
        )
    return verdict


def is_translation(S: SemigroupTable, a: int, b: int, source, target) -> bool:
    """Whether ``r -> a r b`` maps ``source`` bijectively onto ``target``."""
    P = S.product
    imgs = [P[P[a][r]][b] for r in source]
    return len(set(imgs)) == len(source) == len(target) and set(imgs) == set(target)


def green_translation(
    S: SemigroupTable, h_source, G: MaximalSubgroup, green: GreenStructure | None = None
) -> tuple:
    """Elements ``(a, b)`` with ``r -> a r b`` a bijection from ``h_source`` onto ``G``."""
    green = green or green_relations(S)
    h_source = tuple(h_source)
    if green.j_of[h_source[0]] != green.j_of[G.identity_index]:
        raise NotSameJClass("H-class and subgroup lie in different J-classes")
    e = G.identity_index
    if set(h_source) == set(G.element_indices):
        return (e, e)
    N = len(S)
    for a in range(N):
        for b in range(N):
            if is_translation(S, a, b, h_source, G.element_indices):
                return (a, b)
    raise InternalContradiction("no Green translation found within one J-class")
