import random

import pytest
from hypothesis import given

from vknot.cochain import (LSSS, Z2, all_lsss, all_states, beta, canonical_index_cocycle,
                           canonical_lsss, chord_index_cocycle, coboundary, cochain_to_lsss,
                           cohomologous, index, indices, lsss_cochain, parity_class_trivial,
                           random_lsss, state_cocycle_check, virtual_index, virtual_index_cocycle,
                           zero)
from vknot.egc import OVER, parse_egc
from vknot.fixtures import fixture

from strategies import codes


def test_coboundary_hopf():
    h = fixture("HOPF")
    d = coboundary(h, 1)
    for a in h.arcs:
        want = (a.start[0] == 1) - (a.end[0] == 1)
        assert d[a.arc_id] == want
    assert sorted(d.values) == [-1, -1, 1, 1]


def test_coboundary_on_kink_loop():
    code = parse_egc("O1+,U1+")
    d = coboundary(code, 1)
    assert d.values == (0, 0)


@given(codes())
def test_coboundary_vanishes_on_components(code):
    for c in code.crossings:
        d = coboundary(code, c)
        for arcs in code.component_arcs:
            assert d.evaluate(arcs) == 0


def test_virtual_index_cocycle_examples():
    assert virtual_index_cocycle(fixture("HOPF")).is_zero()
    vi = virtual_index_cocycle(fixture("VT"))
    assert sorted(vi.values) == [-1, 0, 0, 1]
    assert sum(virtual_index_cocycle(fixture("VHOPF")).values) == 0


def test_canonical_cocycle_examples():
    vh = fixture("VHOPF")
    ci = canonical_index_cocycle(vh)
    assert ci.evaluate(vh.component_arcs[0]) == -1
    assert canonical_index_cocycle(fixture("UNKNOT")).is_zero()
    tre = fixture("TREFOIL")
    assert canonical_index_cocycle(tre).evaluate(tre.component_arcs[0]) == 0


@given(codes())
def test_beta_left_equals_beta_right_in_cohomology(code):
    for c in code.crossings:
        ok, _ = cohomologous(beta(code, c, "left"), beta(code, c, "right"), code)
        assert ok
    ok, _ = cohomologous(canonical_index_cocycle(code, "left"), canonical_index_cocycle(code, "right"), code)
    assert ok


def test_cohomologous_witness_and_failure():
    vt = fixture("VT")
    vi = virtual_index_cocycle(vt)
    ok, w = cohomologous(vi, vi + coboundary(vt, 1), vt)
    assert ok and w == {1: -1}
    h = fixture("HOPF")
    one = zero(h)
    one = type(one)(one.ring, (1,) + one.values[1:])
    assert cohomologous(one, zero(h), h) == (False, None)


def test_indices():
    assert indices(fixture("VT")) == {1: 1, 2: -1}
    assert indices(fixture("TREFOIL")) == {1: 0, 2: 0, 3: 0}
    assert index(parse_egc("O1+,U1+"), 1) == 0


@given(codes(names=__import__("strategies").st.sampled_from(["VT", "TREFOIL", "UNKNOT"])))
def test_index_equals_virtual_index(code):
    for c in code.crossings:
        if code.is_self_crossing(c):
            assert index(code, c) == virtual_index(code, c)


def test_chord_index_cocycle_vt():
    g = chord_index_cocycle(fixture("VT"))
    assert not any(g.core)
    assert g.chords == {1: 1, 2: -1}
    with pytest.raises(ValueError):
        chord_index_cocycle(fixture("HOPF"))


def test_parity_class():
    assert parity_class_trivial(fixture("TREFOIL"))
    assert not parity_class_trivial(fixture("VT"))
    assert parity_class_trivial(fixture("UNKNOT"))


def test_canonical_lsss_matches_ci_mod_2():
    h = fixture("HOPF")
    assert lsss_cochain(h, canonical_lsss(h)) == canonical_index_cocycle(h).mod2()


@pytest.mark.parametrize("name", ["TREFOIL", "VT", "HOPF"])
def test_flip_adds_coboundary(name):
    code = fixture(name)
    lam = canonical_lsss(code)
    for c in code.crossings:
        diff = lsss_cochain(code, lam.flipped([c])) - lsss_cochain(code, lam)
        assert diff == coboundary(code, c, Z2)


def test_cochain_to_lsss_inverts_up_to_flip():
    code = fixture("TREFOIL")
    rng = random.Random(5)
    for _ in range(50):
        lam = random_lsss(code, rng).with_direction({})
        back = cochain_to_lsss(code, lsss_cochain(code, lam))
        assert back in (lam, lam.negated())


def test_global_flip_keeps_ssc():
    code = fixture("VT")
    for lam in all_lsss(code):
        assert lsss_cochain(code, lam) == lsss_cochain(code, lam.negated())


def test_states_pass_classical():
    code = fixture("HOPF")
    lams = list(all_lsss(code))
    for s in all_states(code):
        assert state_cocycle_check(code, s, lams).ok


@pytest.mark.parametrize("name", ["VT", "VHOPF", "TREFOIL"])
def test_oriented_state_passes(name):
    code = fixture(name)
    s = {c: 0 for c in code.crossings}
    assert state_cocycle_check(code, s, list(all_lsss(code))).ok


@pytest.mark.parametrize("name", ["UNKNOT", "TREFOIL", "HOPF", "VT", "VHOPF"])
def test_state_values_even_and_cut_loci_even(name):
    code = fixture(name)
    lams = list(all_lsss(code))
    for s in all_states(code):
        for v in state_cocycle_check(code, s, lams).violations:
            assert v["kind"] == "vi" and v["value"] % 2 == 0


def test_disoriented_state_counterexample():
    # the circle runs through the virtual crossing once with and once
    # against the orientation, so both passages add the same sign
    code = fixture("VHOPF")
    report = state_cocycle_check(code, {1: 1})
    assert report.violations == [{"component": 0, "kind": "vi", "value": -2}]


def test_state_check_reports_unrealisable_code():
    # a lone virtual passage value on each half of a kink
    code = parse_egc("O1+,V7+,U1+,V7-")
    report = state_cocycle_check(code, {1: 0})
    assert not report.ok
    assert sorted(v["value"] for v in report.violations) == [-1, 1]


def test_lsss_json():
    lam = LSSS({1: OVER}, {1: "out"})
    assert lam.to_json() == {"inward": {"1": "O"}, "direction": {"1": "out"}}
