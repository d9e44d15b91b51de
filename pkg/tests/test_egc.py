import pytest
from hypothesis import given

from vknot.egc import (EGCSyntaxError, PairingError, canonical, halves, kauffman_state, parse_egc,
                       serialize_egc, validate)
from vknot.fixtures import FIXTURES, HOPF, TREFOIL, VT, fixture

from strategies import codes


def test_parse_counts():
    c = parse_egc(TREFOIL)
    assert len(c.components) == 1 and len(c.crossings) == 3 and not c.virtual_ids
    c = parse_egc("O1+,V9+ ; U1+,V9-")
    assert len(c.components) == 2 and c.crossings == (1,) and c.virtual_ids == (9,)


def test_lonely_virtual_is_rejected():
    with pytest.raises(PairingError):
        parse_egc("O1+,O2+,U1+,V9+,U2+")


def test_syntax_error_position():
    with pytest.raises(EGCSyntaxError) as err:
        parse_egc("O1+,U1+,Q3")
    assert err.value.position == 8


def test_serialize_rotates_to_smallest():
    assert serialize_egc(parse_egc("U1+,O2+,U3+,O1+,U2+,O3+")) == "O1+,U2+,O3+,U1+,O2+,U3+"
    assert serialize_egc(parse_egc("~")) == "~"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_round_trip(name):
    code = fixture(name)
    assert parse_egc(serialize_egc(code)) == canonical(code)
    assert serialize_egc(parse_egc(serialize_egc(code))) == serialize_egc(code)


@given(codes())
def test_round_trip_random(code):
    text = serialize_egc(code)
    assert serialize_egc(parse_egc(text)) == text


@given(codes())
def test_long_arcs_partition_passages(code):
    for k, comp in enumerate(code.components):
        arcs = [code.arcs[a] for a in code.component_arcs[k]]
        if len(arcs) == 1 and arcs[0].start is None:
            assert len(arcs[0].virtual_passages) == len(comp)
            continue
        total = sum(1 + len(a.virtual_passages) for a in arcs)
        assert total == len(comp)
        for a in arcs:
            assert code.next_arc(a.arc_id) in code.component_arcs[k]


def test_long_arcs_of_fixtures():
    vt = fixture("VT")
    assert len(vt.arcs) == 4
    assert sorted(len(a.virtual_passages) for a in vt.arcs) == [0, 0, 1, 1]
    hopf = fixture("HOPF")
    assert len(hopf.arcs) == 4 and all(not a.virtual_passages for a in hopf.arcs)
    un = fixture("UNKNOT")
    assert len(un.arcs) == 1 and un.arcs[0].start is None and un.graph.vertices == ()


def test_kauffman_states_of_hopf():
    h = fixture("HOPF")
    count = {bits: len(kauffman_state(h, dict(zip(h.crossings, bits))).components)
             for bits in [(0, 0), (1, 1), (0, 1), (1, 0)]}
    assert count == {(0, 0): 2, (1, 1): 2, (0, 1): 1, (1, 0): 1}
    assert len(kauffman_state(fixture("UNKNOT"), {}).components) == 1


def test_halves_of_vt():
    pos, neg = halves(fixture("VT"), 1)
    assert [p.token() for p in pos.passages] == ["V9+", "U2+", "O1+"]
    assert [p.token() for p in neg.passages] == ["V9-", "O2+", "U1+"]
    assert set(pos.arcs).isdisjoint(neg.arcs)


def test_kink_half_is_single_arc():
    code = parse_egc("O1+,U1+")
    pos, neg = halves(code, 1)
    assert min(len(pos.arcs), len(neg.arcs)) == 1


def test_halves_of_mixed_crossing_fail():
    with pytest.raises(ValueError):
        halves(fixture("HOPF"), 1)


def test_validate_levels():
    assert validate(VT, "cohomological").ok
    assert not validate("O1+,V9-,O2+,U1+,V9-,U2+").ok
    swapped = "O1+,V9+,O2+,U1+,V9-,U2+"
    assert validate(swapped).ok
    assert not validate(swapped, "cohomological").ok
    assert not validate("O1+,O2+,U1+,U2+", "cohomological").ok
    rep = validate("O1+,U2+,#")
    assert not rep.ok and rep.diagnostics[0].position == 8


@given(codes())
def test_descendants_are_cohomologically_valid(code):
    assert validate(code, "cohomological").ok


def test_hopf_text_is_fixture():
    assert fixture("HOPF") == parse_egc(HOPF)
