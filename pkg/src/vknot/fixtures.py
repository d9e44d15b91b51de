"""Small named diagrams used throughout the tests and the CLI."""

from .egc import parse_egc

UNKNOT = "~"
TREFOIL = "O1+,U2+,O3+,U1+,O2+,U3+"
HOPF = "O1+,U2+;U1+,O2+"
# virtual trefoil: the two passages of the virtual crossing sit on
# different halves of crossing 1, with signs fixed by the cohomology check
VT = "O1+,V9-,O2+,U1+,V9+,U2+"
VHOPF = "O1+,V2-;U1+,V2+"

FIXTURES = {
    "UNKNOT": UNKNOT,
    "TREFOIL": TREFOIL,
    "HOPF": HOPF,
    "VT": VT,
    "VHOPF": VHOPF,
}


def fixture(name):
    return parse_egc(FIXTURES[name])


def resolve_code(text):
    """A fixture name or a literal code."""
    return parse_egc(FIXTURES.get(text.strip().upper(), text))
