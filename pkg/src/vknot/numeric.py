"""Writhe, linking and wriggle numbers, and the index polynomial Q(x, y)."""

from dataclasses import dataclass

from .cochain import canonical_index_cocycle, index
from .egc import OVER, UNDER, sub_code
from .laurent import LaurentPoly, ZERO


def writhe(code):
    return sum(code.signs.values())


def _check_component(code, i):
    if not 0 <= i < len(code.components):
        raise IndexError(f"component {i} out of range")


def linking_numbers(code, i):
    """(lk^o, lk^u): signs of crossings where component i is over / under."""
    _check_component(code, i)
    lko = sum(s for c, s in code.signs.items() if code.component_of(c, OVER) == i)
    lku = sum(s for c, s in code.signs.items() if code.component_of(c, UNDER) == i)
    return lko, lku


def wriggle(code, i):
    lko, lku = linking_numbers(code, i)
    w = lko - lku
    ci = canonical_index_cocycle(code)
    assert w == -ci.evaluate(code.component_arcs[i])
    return w


def pairwise_wriggle(code, i, j):
    """Wriggle of component i inside the sub-diagram of components i and j."""
    _check_component(code, i)
    _check_component(code, j)
    if i == j:
        return 0
    sub = sub_code(code, [i, j])
    w = wriggle(sub, 0)
    assert w == -canonical_index_cocycle(sub).evaluate(sub.component_arcs[0])
    return w


@dataclass(frozen=True)
class WriggleReport:
    over: tuple
    under: tuple
    wriggle: tuple
    pairwise: tuple

    def to_json(self):
        return {"lk_over": list(self.over), "lk_under": list(self.under),
                "wriggle": list(self.wriggle), "pairwise": [list(r) for r in self.pairwise]}


def wriggle_report(code):
    n = len(code.components)
    lk = [linking_numbers(code, i) for i in range(n)]
    w = [wriggle(code, i) for i in range(n)]
    pw = [[pairwise_wriggle(code, i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        assert sum(pw[i]) == w[i]
        for j in range(n):
            assert pw[i][j] == -pw[j][i]
    return WriggleReport(tuple(x for x, _ in lk), tuple(y for _, y in lk), tuple(w),
                         tuple(tuple(r) for r in pw))


def _x(k):
    return LaurentPoly.monomial(k, 0)


def _y(k):
    return LaurentPoly.monomial(0, k)


def self_index(code, c):
    """Index of a self-crossing, computed inside its own component."""
    i = code.component_of(c, OVER)
    if code.component_of(c, UNDER) != i:
        raise ValueError(f"crossing {c} is not a self-crossing")
    if len(code.components) == 1:
        return index(code, c)
    return index(sub_code(code, [i]), c)


def mixed_index(code, c, pairwise=None):
    """-w(D_i, D_j) with D_i the component of the over strand."""
    i, j = code.component_of(c, OVER), code.component_of(c, UNDER)
    w = pairwise[i][j] if pairwise is not None else pairwise_wriggle(code, i, j)
    return -w


def index_polynomial(code):
    """Q(x, y) as a LaurentPoly whose two variables are x and y."""
    pw = wriggle_report(code).pairwise
    q = ZERO
    for c, s in code.signs.items():
        if code.is_self_crossing(c):
            q = q + s * (_x(self_index(code, c)) - 1)
        else:
            q = q + s * (_y(mixed_index(code, c, pw)) - 1)
    assert q == index_polynomial_rearranged(code, pw)
    return q


def index_polynomial_rearranged(code, pairwise=None):
    """Self-crossing sum in x, mixed over-linking sums in y, minus the writhe.

    The mixed terms only count crossings between two distinct components.
    """
    if pairwise is None:
        pairwise = wriggle_report(code).pairwise
    n = len(code.components)
    q = ZERO
    for c, s in code.signs.items():
        if code.is_self_crossing(c):
            q = q + s * _x(self_index(code, c))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            lko = sum(s for c, s in code.signs.items()
                      if code.component_of(c, OVER) == i and code.component_of(c, UNDER) == j)
            if lko:
                q = q + lko * _y(-pairwise[i][j])
    return q - writhe(code)
