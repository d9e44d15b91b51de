"""Hypothesis strategies for diagrams."""

from hypothesis import strategies as st

from vknot.fixtures import FIXTURES

from conftest import descendant

fixture_names = st.sampled_from(sorted(FIXTURES))


@st.composite
def codes(draw, max_steps=12, max_crossings=6, names=fixture_names):
    name = draw(names)
    seed = draw(st.integers(0, 2 ** 32 - 1))
    steps = draw(st.integers(0, max_steps))
    return descendant(name, seed, steps, max_crossings=max_crossings)


connected_names = st.sampled_from(["TREFOIL", "VT", "HOPF", "VHOPF"])
