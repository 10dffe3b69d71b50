"""Integral conjugation, idempotent normal form, reduction mod p and torsion checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalContradiction, NotIdempotent, NotInvertible
from .linalg import (
    FpMatrix,
    Lattice,
    QMatrix,
    ZMatrix,
    common_denominator,
    hnf_column,
    is_prime,
    is_unimodular,
    mod_p_reduce,
)
from .semigroup import MaximalSubgroup, SemigroupTable
from .structure import Ideal


@dataclass(frozen=True)
class ConjugationCertificate:
    """``B`` has the invariant lattice basis as columns; elements become ``B^-1 s B``."""

    basis_matrix: QMatrix
    inverse: QMatrix
    conjugated_elements: tuple
    lattice: Lattice
    scale: int

    def table(self, S: SemigroupTable) -> SemigroupTable:
        return S.relabel(self.conjugated_elements)


def integralize(S: SemigroupTable) -> ConjugationCertificate:
    """Conjugate ``S`` into integer matrices via the lattice spanned by the
    standard basis and every column of every element.

    Columns are scaled by a common denominator ``d`` before taking the
    Hermite normal form, and the basis is scaled back afterwards.
    """
    mats = [m if isinstance(m, QMatrix) else m.to_q() for m in S.elements]
    n = S.n
    d = common_denominator(mats)
    vectors = [[d * int(i == j) for i in range(n)] for j in range(n)]
    for m in mats:
        for col in m.columns():
            vectors.append([int(a * d) for a in col])
    lattice = hnf_column(vectors)
    if lattice.rank != n:
        raise InternalContradiction("invariant lattice is not of full rank")
    B = QMatrix.from_columns([[Fraction(a, d) for a in col] for col in lattice.basis])
    Binv = B.inverse()
    conj = []
    for m in mats:
        c = Binv * m * B
        if not c.is_integral():
            raise InternalContradiction("conjugate by the invariant lattice basis is not integral")
        conj.append(c.to_z())
    return ConjugationCertificate(B, Binv, tuple(conj), lattice, d)


@dataclass(frozen=True)
class AdaptedBasis:
    U: ZMatrix
    U_inverse: ZMatrix
    r: int
    form: ZMatrix

    def conjugate(self, m: ZMatrix) -> ZMatrix:
        return self.U_inverse * m * self.U


def adapt_idempotent_basis(e: ZMatrix) -> AdaptedBasis:
    """Unimodular ``U`` with ``U^-1 e U = diag(1_r, 0)``.

    The columns of ``U`` are the HNF bases of ``e Z^n`` followed by
    ``(1 - e) Z^n``; since ``v = e v + (1 - e) v`` they span ``Z^n``.
    """
    n = e.n
    if e * e != e:
        raise NotIdempotent("matrix is not idempotent")
    if all(a == 0 for row in e.rows for a in row):
        raise NotIdempotent("the zero idempotent has no adapted block")
    image = hnf_column(e.columns())
    comp = hnf_column((ZMatrix.identity(n) - e).columns())
    U = ZMatrix.from_columns(list(image.basis) + list(comp.basis))
    if not is_unimodular(U):
        raise InternalContradiction("adapted basis is not unimodular")
    U_inv = U.to_q().inverse().to_z()
    r = image.rank
    form = U_inv * e * U
    expected = ZMatrix([[int(i == j and i < r) for j in range(n)] for i in range(n)])
    if form != expected:
        raise InternalContradiction("adapted idempotent is not diag(1_r, 0)")
    return AdaptedBasis(U, U_inv, r, form)


def choose_prime(G: MaximalSubgroup) -> int:
    return 2 if G.order % 2 else 3


@dataclass(frozen=True)
class ModpImage:
    p: int
    images: tuple
    injective: bool
    zero_separated: bool

    @property
    def distinct(self) -> int:
        return len(set(self.images))


def mod_p(S: SemigroupTable, p: int, ideal: Ideal) -> ModpImage:
    """Reduce every (integral) element mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    images = tuple(mod_p_reduce(m if isinstance(m, ZMatrix) else m.to_z(), p) for m in S.elements)
    z = S.zero_index
    separated = z is None or all(images[i] != images[z] for i in ideal if i != z)
    return ModpImage(p, images, len(set(images)) == len(images), separated)


@dataclass(frozen=True)
class TorsionReport:
    p: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def minkowski_check(group, p: int) -> TorsionReport:
    """Check the elements of a finite subgroup of GL_r(Z) against the
    congruence kernel: for odd p nothing but the identity may reduce to the
    identity; for p = 2 such elements must square to the identity.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    group = list(group)
    if not group:
        return TorsionReport(p, ())
    r = group[0].n
    one = ZMatrix.identity(r)
    one_p = FpMatrix.identity(r, p)
    violations = []
    for g in group:
        if abs(g.det()) != 1:
            raise NotInvertible(f"{g!r} is not in GL_{r}(Z)")
        if mod_p_reduce(g, p) != one_p:
            continue
        if p == 2:
            if g * g != one:
                violations.append(g)
        elif g != one:
            violations.append(g)
    return TorsionReport(p, tuple(violations))


def group_block(adapted: AdaptedBasis, S_int: SemigroupTable, G: MaximalSubgroup) -> list:
    """Top-left ``r x r`` blocks of the elements of G in the adapted basis."""
    r = adapted.r
    blocks = []
    for g in G.element_indices:
        m = adapted.conjugate(S_int.elements[g])
        n = m.n
        if any(m[i, j] for i in range(n) for j in range(n) if i >= r or j >= r):
            raise InternalContradiction("group element leaks outside the idempotent block")
        blocks.append(m.submatrix(r))
    return blocks
