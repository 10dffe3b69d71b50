"""Exact irreducibility tests for a matrix semigroup acting on Q^n.

A Reducible verdict always carries an explicit invariant subspace.  An
Irreducible verdict is either a dimension count (the span is all of M_n(Q))
or a Norton-style certificate.  Anything else is reported as Inconclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations, islice
from typing import Optional

import sympy

from .errors import DependentBasis, ZeroVector
from .linalg import EchelonBasis, QMatrix, nullspace, rank
from .semigroup import SemigroupTable


class Verdict(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class AlgebraBasis:
    n: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class IrreducibilityVerdict:
    verdict: Verdict
    subspace: Optional[tuple] = None
    certificate_kind: Optional[str] = None
    # norton certificate: the test element and the irreducible factor used
    element: Optional[QMatrix] = None
    factor: Optional[tuple] = None
    vectors: dict = field(default_factory=dict)

    @property
    def irreducible(self) -> bool:
        return self.verdict is Verdict.IRREDUCIBLE


def _matrices(S):
    if isinstance(S, SemigroupTable):
        return [m.to_q() if not isinstance(m, QMatrix) else m for m in S.elements]
    return list(S)


def _action_generators(S):
    if isinstance(S, SemigroupTable) and S.generator_indices:
        return [_as_q(S.elements[i]) for i in S.generator_indices]
    return _matrices(S)


def _as_q(m):
    return m if isinstance(m, QMatrix) else m.to_q()


def algebra_span(S: SemigroupTable) -> AlgebraBasis:
    """Maximal linearly independent subset of the elements, in index order."""
    mats = _matrices(S)
    n = mats[0].n
    eb = EchelonBasis(n * n)
    basis = [m for m in mats if eb.add(m.flat())]
    return AlgebraBasis(n, tuple(basis))


def spin(v, S, transpose: bool = False) -> list:
    """Basis of the smallest S-invariant subspace containing ``v``.

    Invariance under the generators suffices, since every element is a
    product of them.  With ``transpose`` the transposed matrices act.
    """
    v = tuple(Fraction(a) for a in v)
    if not any(v):
        raise ZeroVector("cannot spin the zero vector")
    gens = _action_generators(S)
    if transpose:
        gens = [g.transpose() for g in gens]
    eb = EchelonBasis(len(v))
    eb.add(v)
    k = 0
    while k < len(eb.vectors):
        w = eb.vectors[k]
        for g in gens:
            eb.add(g.apply(w))
        k += 1
    return list(eb.vectors)


def verify_invariant_subspace(S, W) -> bool:
    W = [tuple(Fraction(a) for a in w) for w in W]
    if not W:
        return True
    if rank(W) != len(W):
        raise DependentBasis("subspace basis is linearly dependent")
    eb = EchelonBasis(len(W[0]))
    for w in W:
        eb.add(w)
    return all(m.apply(w) in eb for m in _matrices(S) for w in W)


def annihilator(W, n) -> list:
    """Basis of ``{x : w . x = 0 for all w in W}``."""
    return nullspace([list(w) for w in W], n)


def charpoly(M: QMatrix) -> list:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier)."""
    n = M.n
    I = QMatrix.identity(n)
    coeffs = [Fraction(1)]
    Mk = QMatrix.zero(n)
    for k in range(1, n + 1):
        Mk = M * Mk + I.scale(coeffs[-1])
        AM = M * Mk
        coeffs.append(-sum(AM[i, i] for i in range(n)) / k)
    return coeffs


def rational_factors(coeffs) -> list:
    """Distinct monic irreducible factors over Q, lowest degree first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")
    out = []
    for f, _ in poly.factor_list()[1]:
        f = f.monic()
        out.append(tuple(Fraction(int(c.p), int(c.q)) for c in f.all_coeffs()))
    out.sort(key=lambda c: (len(c), c))
    return out


def evaluate(coeffs, M: QMatrix) -> QMatrix:
    n = M.n
    acc = QMatrix.zero(n)
    I = QMatrix.identity(n)
    for c in coeffs:
        acc = acc * M + I.scale(c)
    return acc


def _full(basis, n):
    return len(basis) == n


def _norton(S, a, n):
    """Run the Norton test on one algebra element, if it qualifies.

    For an irreducible factor f of the characteristic polynomial of ``a``
    with ``dim ker f(a) = deg f``, every nonzero kernel vector generates the
    whole kernel under ``a``; spinning a single kernel vector of f(a) and of
    its transpose then decides irreducibility.
    """
    for f in rational_factors(charpoly(a)):
        deg = len(f) - 1
        b = evaluate(f, a)
        kernel = nullspace([list(r) for r in b.rows], n)
        if len(kernel) != deg:
            continue
        v = kernel[0]
        Wv = spin(v, S)
        if not _full(Wv, n):
            return IrreducibilityVerdict(Verdict.REDUCIBLE, tuple(Wv), "spin")
        u = nullspace([list(r) for r in b.transpose().rows], n)[0]
        Wu = spin(u, S, transpose=True)
        if not _full(Wu, n):
            return IrreducibilityVerdict(Verdict.REDUCIBLE, tuple(annihilator(Wu, n)), "dual-spin")
        return IrreducibilityVerdict(
            Verdict.IRREDUCIBLE,
            certificate_kind="norton",
            element=a,
            factor=f,
            vectors={"kernel": v, "dual_kernel": u},
        )
    return None


def _norton_candidates(mats, limit):
    """Nonzero elements in index order, then nonzero pairwise differences."""
    singles = (m for m in mats if not m.is_zero())
    diffs = (d for d in (a - b for a, b in combinations(mats, 2)) if not d.is_zero())
    return islice(chain(singles, diffs), limit)


def is_irreducible(S: SemigroupTable, max_candidates: int = 256) -> IrreducibilityVerdict:
    mats = _matrices(S)
    n = mats[0].n
    span = algebra_span(S)
    if span.dim == n * n:
        return IrreducibilityVerdict(Verdict.IRREDUCIBLE, certificate_kind="full-span")
    if n == 1:
        return IrreducibilityVerdict(Verdict.IRREDUCIBLE, certificate_kind="dimension-one")

    pool = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    for m in mats:
        if not m.is_zero() and m.det() == 0:
            pool.extend(nullspace([list(r) for r in m.rows], n))
    for v in pool:
        W = spin(v, S)
        if len(W) < n:
            return IrreducibilityVerdict(Verdict.REDUCIBLE, tuple(W), "spin")

    for a in _norton_candidates(mats, max_candidates):
        verdict = _norton(S, a, n)
        if verdict is not None:
            return verdict
    return IrreducibilityVerdict(Verdict.INCONCLUSIVE)
