import itertools
from fractions import Fraction

import pytest

from conftest import E, random_finite_closures
from semibound.errors import DependentBasis, ZeroVector
from semibound.irreducibility import (
    Verdict,
    algebra_span,
    charpoly,
    is_irreducible,
    rational_factors,
    spin,
    verify_invariant_subspace,
)
from semibound.linalg import EchelonBasis, QMatrix, rank
from semibound.pipeline import corpus
from semibound.semigroup import SemigroupTable, adjoin_zero, closure

I2 = QMatrix.identity(2)


def span_of(vectors, n):
    eb = EchelonBasis(n)
    for v in vectors:
        eb.add(v)
    return eb


def same_span(U, V, n):
    return len(U) == len(V) == rank([list(u) for u in U] + [list(v) for v in V])


# --- algebra span -----------------------------------------------------------------


def test_span_dims(b2, sign):
    assert algebra_span(b2).dim == 4
    assert algebra_span(closure([QMatrix.identity(3)])).dim == 1
    assert algebra_span(sign).dim == 1


def test_span_contains_every_element(sym3):
    basis = algebra_span(sym3).basis
    eb = span_of([m.flat() for m in basis], 4)
    assert all(m.flat() in eb for m in sym3.elements)


# --- spinning -------------------------------------------------------------------------


def test_spin_examples(b2):
    S = SemigroupTable.from_elements([I2, E(0, 0)])
    assert same_span(spin((1, 0), S), [(1, 0)], 2)
    assert len(spin((1, 0), b2)) == 2
    assert same_span(spin((3, -2), closure([I2])), [(3, -2)], 2)


def test_spin_zero_vector(b2):
    with pytest.raises(ZeroVector):
        spin((0, 0), b2)


def small_vectors():
    return [v for v in itertools.product(range(-2, 3), repeat=2) if any(v)]


@pytest.mark.parametrize("S", random_finite_closures(25, seed=21, dims=(2,)), ids=lambda S: f"size{len(S)}")
def test_spin_is_minimal_invariant(S):
    # in Q^2 the only candidates are span{v} and Q^2, so minimality means:
    # spin(v) is a line exactly when span{v} is invariant
    for v in small_vectors():
        W = spin(v, S)
        assert verify_invariant_subspace(S, W)
        assert tuple(Fraction(a) for a in v) in span_of(W, 2)
        line_invariant = all(span_of([v], 2).__contains__(m.apply(v)) for m in S.elements)
        assert (len(W) == 1) == line_invariant


# --- invariant subspace checker ---------------------------------------------------


def test_verify_invariant_examples(b2, sym3):
    assert verify_invariant_subspace(sym3, [(1, 0), (0, 1)])
    assert verify_invariant_subspace(SemigroupTable.from_elements([I2, E(0, 0)]), [(1, 0)])
    assert not verify_invariant_subspace(b2, [(1, 0)])


def test_verify_invariant_rejects_dependent(b2):
    with pytest.raises(DependentBasis):
        verify_invariant_subspace(b2, [(1, 0), (2, 0)])


# --- characteristic polynomials ---------------------------------------------------


def test_charpoly_and_factors():
    g = QMatrix([[0, -1], [1, -1]])
    assert charpoly(g) == [1, 1, 1]
    assert rational_factors(charpoly(g)) == [(1, 1, 1)]
    swap = QMatrix([[0, 1], [1, 0]])
    assert rational_factors(charpoly(swap)) == [(1, -1), (1, 1)]
    m = QMatrix([["1/2", 3, 0], [1, 0, 2], [0, 0, 5]])
    c = charpoly(m)
    # oracle: det(xI - m) at several integers
    for x in range(-3, 4):
        lhs = (QMatrix.identity(3).scale(x) - m).det()
        assert lhs == sum(a * x ** (3 - k) for k, a in enumerate(c))


# --- irreducibility verdicts ------------------------------------------------------


def test_brandt_full_span(b2):
    v = is_irreducible(b2)
    assert v.verdict is Verdict.IRREDUCIBLE and v.certificate_kind == "full-span"


def test_reducible_demo():
    S = adjoin_zero(closure([I2, E(0, 0)]))
    v = is_irreducible(S)
    assert v.verdict is Verdict.REDUCIBLE
    assert same_span(v.subspace, [(1, 0)], 2)


@pytest.mark.parametrize("gens", [[[[-1]]], [[[1]]], [[[0]], [[1]]]])
def test_dimension_one(gens):
    assert is_irreducible(closure([QMatrix(g) for g in gens])).irreducible


def test_dimension_one_zero_only():
    v = is_irreducible(SemigroupTable.from_elements([QMatrix([[0]])]))
    assert v.irreducible and v.certificate_kind == "dimension-one"


def test_cyclic_rotation_needs_norton():
    S = adjoin_zero(closure([QMatrix([[0, -1], [1, -1]])]))
    assert algebra_span(S).dim == 2
    v = is_irreducible(S)
    assert v.verdict is Verdict.IRREDUCIBLE and v.certificate_kind == "norton"
    assert v.factor == (1, 1, 1)


def test_quarter_turn_is_irreducible_over_q():
    v = is_irreducible(closure([QMatrix([[0, -1], [1, 0]])]))
    assert v.irreducible and v.certificate_kind == "norton"


def test_norton_stage_finds_eigenline():
    # swap has no singular element and spins e1 to Q^2, but fixes (1, 1)
    S = closure([QMatrix([[0, 1], [1, 0]])])
    v = is_irreducible(S)
    assert v.verdict is Verdict.REDUCIBLE
    assert same_span(v.subspace, [(1, 1)], 2) or same_span(v.subspace, [(1, -1)], 2)
    assert verify_invariant_subspace(S, v.subspace)


def test_half_integer_involution_reducible():
    S = closure([QMatrix([[0, "1/2"], [2, 0]])])
    v = is_irreducible(S)
    assert v.verdict is Verdict.REDUCIBLE and verify_invariant_subspace(S, v.subspace)


def test_block_rotation_in_dim_four_is_reducible():
    r = [[0, -1], [1, -1]]
    g = QMatrix([r[0] + [0, 0], r[1] + [0, 0], [0, 0] + r[0], [0, 0] + r[1]])
    v = is_irreducible(closure([g]))
    assert v.verdict is Verdict.REDUCIBLE
    assert 0 < len(v.subspace) < 4


def test_inconclusive_when_candidates_exhausted():
    S = closure([QMatrix([[0, -1], [1, -1]])])
    v = is_irreducible(S, max_candidates=0)
    assert v.verdict is Verdict.INCONCLUSIVE


@pytest.mark.parametrize("S", random_finite_closures(30, seed=31), ids=lambda S: f"size{len(S)}")
def test_verdict_certificates_are_sound(S):
    v = is_irreducible(S)
    n = S.n
    if v.verdict is Verdict.REDUCIBLE:
        assert 0 < len(v.subspace) < n
        assert verify_invariant_subspace(S, v.subspace)
    elif v.certificate_kind == "full-span":
        assert algebra_span(S).dim == n * n


def test_corpus_irreducibility_matches_expectation():
    for entry in corpus():
        if entry.expected_size is None:
            continue
        v = is_irreducible(adjoin_zero(closure(entry.generators)))
        assert v.verdict is not Verdict.INCONCLUSIVE, entry.name
        assert v.irreducible == entry.expected_irreducible, entry.name
