from fractions import Fraction

import pytest

from conftest import E, random_finite_closures
from semibound.arithmetic import adapt_idempotent_basis, integralize
from semibound.errors import NoZero, NotGGM, NotHomomorphism, NotSameJClass
from semibound.irreducibility import is_irreducible
from semibound.linalg import QMatrix, mod_p_reduce
from semibound.pipeline import corpus
from semibound.semigroup import SemigroupTable, adjoin_zero, closure, green_relations, maximal_subgroup_at
from semibound.structure import (
    Ideal,
    injectivity_criterion,
    is_ideal,
    is_translation,
    is_zero_simple,
    restrict,
    separates_by_ideal,
    span_contains_identity,
    green_translation,
    verify_ggm,
    zero_minimal_ideal,
    zero_minimal_ideals,
)

ONE, MINUS, ZERO = QMatrix([[1]]), QMatrix([[-1]]), QMatrix([[0]])


def irreducible_corpus():
    return [
        (e.name, adjoin_zero(closure(e.generators)))
        for e in corpus()
        if e.expected_irreducible and e.expected_size is not None
    ]


def ideal_group(S):
    ideal = zero_minimal_ideal(S)
    e = next(i for i in sorted(ideal) if i != S.zero_index and S.product[i][i] == i)
    return ideal, maximal_subgroup_at(S, e)


def adapted_images(S, p):
    cert = integralize(S)
    ideal, G = ideal_group(S)
    ad = adapt_idempotent_basis(cert.conjugated_elements[G.identity_index])
    return [mod_p_reduce(ad.conjugate(m), p) for m in cert.conjugated_elements]


# --- 0-minimal ideals ------------------------------------------------------------


def test_zero_minimal_ideal_below_identity():
    S = closure([E(0, 1), E(1, 0), QMatrix.identity(2)])
    assert len(S) == 6
    ideal = zero_minimal_ideal(S)
    assert {S.elements[i] for i in ideal} == {E(0, 1), E(1, 0), E(0, 0), E(1, 1), QMatrix.zero(2)}


def test_zero_minimal_ideal_sign(sign):
    assert set(zero_minimal_ideal(sign)) == set(range(3))


def test_zero_minimal_ideal_brandt(b2):
    assert set(zero_minimal_ideal(b2)) == set(range(5))


def test_zero_minimal_ideal_needs_zero():
    with pytest.raises(NoZero):
        zero_minimal_ideal(closure([MINUS]))


def test_several_zero_minimal_ideals_lowest_first():
    # diag(1,0) and diag(0,1) generate two separate 0-minimal ideals
    S = adjoin_zero(closure([E(0, 0), E(1, 1)]))
    ideals = zero_minimal_ideals(S)
    assert len(ideals) == 2
    assert zero_minimal_ideal(S) == ideals[0]
    assert S.index(E(0, 0)) in ideals[0]
    assert not verify_ggm(S).unique_ideal


@pytest.mark.parametrize("S", [s for s in map(adjoin_zero, random_finite_closures(20, seed=3)) if len(s) > 1],
                         ids=lambda S: f"size{len(S)}")
def test_returned_ideals_are_closed(S):
    for ideal in zero_minimal_ideals(S):
        assert is_ideal(S, ideal.element_indices)
    assert is_ideal(S, zero_minimal_ideal(S).element_indices)


# --- 0-simplicity ----------------------------------------------------------------


def test_zero_simple_examples(b2):
    assert is_zero_simple(b2)
    assert is_zero_simple(SemigroupTable.from_elements([ONE, ZERO]))
    assert not is_zero_simple(closure([E(0, 1)]))


def test_zero_minimal_ideal_is_zero_simple_when_ggm():
    for name, S in irreducible_corpus():
        ideal = zero_minimal_ideal(S)
        assert is_zero_simple(restrict(S, ideal)), name


# --- generalized group mapping ---------------------------------------------------


def test_ggm_brandt_with_identity():
    S = closure([E(0, 1), E(1, 0), QMatrix.identity(2)])
    r = verify_ggm(S)
    assert r.left_faithful and r.right_faithful and r.unique_ideal


def test_ggm_sign(sign):
    r = verify_ggm(sign)
    assert r.is_ggm


def test_ggm_reducible_example_is_descriptive():
    S = SemigroupTable.from_elements([QMatrix.identity(2), E(0, 0), QMatrix.zero(2)])
    r = verify_ggm(S)
    assert {S.elements[i] for i in r.ideal} == {E(0, 0), QMatrix.zero(2)}
    # I2 and diag(1,0) act identically on the ideal {diag(1,0), 0}
    assert not r.left_faithful and not r.right_faithful
    assert set(r.left_witness) == {S.index(QMatrix.identity(2)), S.index(E(0, 0))}


def test_ggm_failure_reports_witness():
    S = adjoin_zero(closure([QMatrix.identity(2), E(0, 0)]))
    r = verify_ggm(S)
    assert not r.is_ggm
    assert r.left_witness is not None


@pytest.mark.parametrize("name, S", irreducible_corpus(), ids=lambda x: x if isinstance(x, str) else "")
def test_irreducible_corpus_is_ggm_with_identity_in_span(name, S):
    assert is_irreducible(S).irreducible
    r = verify_ggm(S)
    assert r.left_faithful and r.right_faithful and r.unique_ideal
    cert = span_contains_identity(S, r.ideal)
    assert cert is not None
    assert cert.combination(S) == QMatrix.identity(S.n)
    assert separates_by_ideal(S, r.ideal)


# --- identity in the span ------------------------------------------------------------


def test_span_certificate_brandt(b2):
    cert = span_contains_identity(b2, zero_minimal_ideal(b2))
    assert {b2.elements[i]: c for i, c in zip(cert.support, cert.coefficients)} == {
        E(0, 0): Fraction(1),
        E(1, 1): Fraction(1),
    }


def test_span_certificate_sign(sign):
    cert = span_contains_identity(sign, zero_minimal_ideal(sign))
    assert cert.combination(sign) == ONE


def test_span_certificate_absent():
    S = closure([E(0, 1)])
    assert span_contains_identity(S, Ideal(tuple(range(len(S))))) is None


# --- injectivity criterion -----------------------------------------------------------


def test_criterion_sign_mod3(sign):
    ideal, G = ideal_group(sign)
    images = [mod_p_reduce(m.to_z(), 3) for m in sign.elements]
    assert injectivity_criterion(sign, ideal, G, images) is True
    assert len(set(images)) == 3


def test_criterion_sign_mod2(sign):
    ideal, G = ideal_group(sign)
    images = [mod_p_reduce(m.to_z(), 2) for m in sign.elements]
    assert injectivity_criterion(sign, ideal, G, images) is False
    assert len(set(images)) < 3


@pytest.mark.parametrize("name, S", irreducible_corpus(), ids=lambda x: x if isinstance(x, str) else "")
def test_criterion_identity_map(name, S):
    ideal, G = ideal_group(S)
    assert injectivity_criterion(S, ideal, G, list(S.elements)) is True


@pytest.mark.parametrize("name, S", irreducible_corpus(), ids=lambda x: x if isinstance(x, str) else "")
@pytest.mark.parametrize("p", [2, 3, 5])
def test_criterion_agrees_with_truth(name, S, p):
    ideal, G = ideal_group(S)
    images = adapted_images(S, p)
    verdict = injectivity_criterion(S, ideal, G, images)
    assert verdict == (len(set(images)) == len(S))


def test_criterion_rejects_non_homomorphism(sign):
    ideal, G = ideal_group(sign)
    images = [mod_p_reduce(m.to_z(), 3) for m in sign.elements]
    images[0], images[1] = images[1], images[2]
    with pytest.raises(NotHomomorphism):
        injectivity_criterion(sign, ideal, G, images)


def test_criterion_rejects_non_ggm():
    S = adjoin_zero(closure([QMatrix.identity(2), E(0, 0)]))
    ideal = zero_minimal_ideal(S)
    G = maximal_subgroup_at(S, S.index(E(0, 0)))
    with pytest.raises(NotGGM):
        injectivity_criterion(S, ideal, G, list(S.elements))


# --- Green translations ----------------------------------------------------------


def test_translation_onto_itself(sign):
    G = maximal_subgroup_at(sign, sign.index(ONE))
    e = G.identity_index
    assert green_translation(sign, G.element_indices, G) == (e, e)


def test_translation_brandt_examples(b2):
    i = b2.index
    G11 = maximal_subgroup_at(b2, i(E(0, 0)))
    G22 = maximal_subgroup_at(b2, i(E(1, 1)))
    assert is_translation(b2, i(E(0, 0)), i(E(1, 0)), [i(E(0, 1))], G11.element_indices)
    assert is_translation(b2, i(E(1, 1)), i(E(0, 1)), [i(E(1, 0))], G22.element_indices)
    a, b = green_translation(b2, [i(E(0, 1))], G11)
    assert is_translation(b2, a, b, [i(E(0, 1))], G11.element_indices)
    a, b = green_translation(b2, [i(E(1, 0))], G22)
    assert is_translation(b2, a, b, [i(E(1, 0))], G22.element_indices)


def test_translation_rejects_other_j_class(b2):
    G = maximal_subgroup_at(b2, b2.index(E(0, 0)))
    with pytest.raises(NotSameJClass):
        green_translation(b2, [b2.zero_index], G)


def test_translations_exist_for_every_h_class_of_the_ideal():
    for name, S in irreducible_corpus():
        g = green_relations(S)
        ideal, G = ideal_group(S)
        for h in {g.h_class(i) for i in ideal if i != S.zero_index}:
            a, b = green_translation(S, h, G, g)
            assert is_translation(S, a, b, h, G.element_indices), name
