import pytest
from hypothesis import given

import vknot.cochain as cochain
from vknot.egc import parse_egc
from vknot.fixtures import fixture
from vknot.laurent import LaurentPoly, ZERO
from vknot.numeric import (index_polynomial, index_polynomial_rearranged, linking_numbers,
                           pairwise_wriggle, wriggle, wriggle_report, writhe)

from strategies import codes

X = LaurentPoly.monomial(1, 0)
Y = LaurentPoly.monomial(0, 1)


@pytest.mark.parametrize("name, expected", [("TREFOIL", 3), ("UNKNOT", 0), ("VT", 2), ("HOPF", 2)])
def test_writhe(name, expected):
    assert writhe(fixture(name)) == expected


def test_vhopf_pairwise_wriggle():
    code = fixture("VHOPF")
    assert pairwise_wriggle(code, 0, 1) == 1
    assert pairwise_wriggle(code, 1, 0) == -1
    assert wriggle_report(code).pairwise == ((0, 1), (-1, 0))


def test_hopf_linking_numbers():
    code = fixture("HOPF")
    for i in range(2):
        assert linking_numbers(code, i) == (1, 1)
        assert wriggle(code, i) == 0


def test_bad_component():
    with pytest.raises(IndexError):
        linking_numbers(fixture("HOPF"), 2)
    with pytest.raises(IndexError):
        pairwise_wriggle(fixture("HOPF"), 0, -1)


@pytest.mark.parametrize("name", ["UNKNOT", "TREFOIL", "HOPF"])
def test_classical_q_vanishes(name):
    assert index_polynomial(fixture(name)) == ZERO


def test_q_virtual_trefoil():
    assert index_polynomial(fixture("VT")) == X + X ** -1 - 2


def test_q_virtual_hopf():
    assert index_polynomial(fixture("VHOPF")) == Y ** -1 - 1


def test_report_json():
    d = wriggle_report(fixture("VHOPF")).to_json()
    assert d == {"lk_over": [1, 0], "lk_under": [0, 1], "wriggle": [1, -1],
                 "pairwise": [[0, 1], [-1, 0]]}


@given(codes())
def test_wriggle_laws(code):
    rep = wriggle_report(code)
    n = len(code.components)
    for i in range(n):
        assert rep.wriggle[i] == sum(rep.pairwise[i])
        assert rep.wriggle[i] == -cochain.canonical_index_cocycle(code).evaluate(code.component_arcs[i])
        for j in range(n):
            assert rep.pairwise[i][j] == -rep.pairwise[j][i]
    if n == 1:
        assert rep.wriggle == (0,)


@given(codes())
def test_q_forms_agree_and_vanish_at_one(code):
    q = index_polynomial(code)
    assert q == index_polynomial_rearranged(code)
    assert q.evaluate(1, 1) == 0


def _swap_halves(halves):
    def swapped(code, c):
        pos, neg = halves(code, c)
        return neg, pos
    return swapped


@pytest.mark.parametrize("text", ["O1+,V9-,O2+,U1+,V9+,U2+", "O1+,O2-,U1+,V5+,U2-,V5-"])
def test_flipped_half_convention_inverts_x(monkeypatch, text):
    code = parse_egc(text)
    q = index_polynomial(code)
    monkeypatch.setattr(cochain, "halves", _swap_halves(cochain.halves))
    flipped = index_polynomial(code)
    inverted = LaurentPoly({(-et, es): c for (et, es), c in q.terms.items()})
    assert flipped == inverted
