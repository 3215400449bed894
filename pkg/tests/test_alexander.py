import pytest

from knotrank.algebra import LaurentPolynomial
from knotrank.alexander import (alexander_polynomial, conway_potential,
                                signed_det)
from knotrank.corpus import load_corpus
from knotrank.diagram import connected_sum, mirror
from knotrank.jones import det_from_jones


@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


def seifert_oracle(v):
    """Conway-normalized det(V - t V^T) from an explicit Seifert matrix;
    an independent route used only for small fixture knots."""
    n = len(v)
    t = LaurentPolynomial({1: 1})
    m = [[LaurentPolynomial({0: v[i][j]}) - t * v[j][i] for j in range(n)]
         for i in range(n)]
    # cofactor expansion; n is 2 here so keep it simple
    if n == 1:
        det = m[0][0]
    elif n == 2:
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    else:
        raise NotImplementedError
    shift = -(det.max_exp + det.min_exp) // 2
    det = det.shift(shift)
    if det.evaluate(1) == -1:
        det = -det
    return det


def test_trefoil_vs_seifert_matrix(corpus):
    # genus-1 Seifert surface for the trefoil
    oracle = seifert_oracle([[-1, 1], [0, -1]])
    assert alexander_polynomial(corpus["3_1"]) == oracle
    assert oracle == LaurentPolynomial({-1: 1, 0: -1, 1: 1})


def test_figure_eight_vs_seifert_matrix(corpus):
    oracle = seifert_oracle([[1, 1], [0, -1]])
    assert alexander_polynomial(corpus["4_1"]) == oracle
    assert oracle == LaurentPolynomial({-1: -1, 0: 3, 1: -1})


def test_unknot(corpus):
    assert alexander_polynomial(corpus["unknot"]) == LaurentPolynomial.one()
    assert signed_det(corpus["unknot"]) == 1


def test_normalization_invariants(corpus):
    for name, d in corpus.items():
        if not d.is_knot:
            continue
        delta = alexander_polynomial(d)
        assert delta == delta.invert_variable(), name        # symmetric
        assert delta.evaluate(1) == 1, name                   # Conway norm
        assert delta.evaluate(-1) % 2 == 1, name              # odd determinant


def test_signed_determinants(corpus):
    assert signed_det(corpus["3_1"]) == -3
    assert signed_det(corpus["4_1"]) == 5
    assert signed_det(corpus["6_1"]) == 9
    assert abs(signed_det(corpus["6_2"])) == 11


def test_det_agreement_with_jones(corpus):
    for name, d in corpus.items():
        if d.is_knot:
            assert abs(signed_det(d)) == det_from_jones(d), name


def test_connected_sum_multiplicativity(corpus):
    pairs = [("3_1", "4_1"), ("3_1", "3_1"), ("4_1", "6_1")]
    for n1, n2 in pairs:
        s = connected_sum(corpus[n1], corpus[n2])
        assert alexander_polynomial(s) == \
            alexander_polynomial(corpus[n1]) * alexander_polynomial(corpus[n2])
    sq = connected_sum(corpus["3_1"], mirror(corpus["3_1"]))
    assert signed_det(sq) == 9


def test_non_knot_rejected(corpus):
    with pytest.raises(ValueError):
        alexander_polynomial(corpus["hopf"])


def test_conway_potential(corpus):
    cp = conway_potential(alexander_polynomial(corpus["unknot"]))
    assert cp.coeffs == (1,) and cp.a2 == 0
    assert conway_potential(alexander_polynomial(corpus["3_1"])).coeffs == (1, 1)
    assert conway_potential(alexander_polynomial(corpus["4_1"])).coeffs == (1, -1)
    # a0 = 1 and only even coefficients by construction
    for name, d in corpus.items():
        if d.is_knot:
            cp = conway_potential(alexander_polynomial(d))
            assert cp.coeffs[0] == 1, name


def test_conway_potential_rejects_unnormalized():
    with pytest.raises(ValueError):
        conway_potential(LaurentPolynomial({0: 2}))
    with pytest.raises(ValueError):
        conway_potential(LaurentPolynomial({0: 1, 1: 1}))
