"""Cochains on the covering graph and the index/parity machinery.

A cochain stores one value per long arc (free loops included). Over Z2
values are kept reduced to 0/1.
"""

import random
from dataclasses import dataclass
from itertools import product

from .algebra import solve_integer, solve_mod2
from .egc import IN, OUT, OVER, UNDER, halves, resolve, ORIENTED, DISORIENTED

Z, Z2 = "Z", "Z2"


@dataclass(frozen=True)
class Cochain:
    ring: str
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if self.ring == Z2:
            vals = tuple(v % 2 for v in vals)
        elif self.ring != Z:
            raise ValueError(f"unknown ring {self.ring!r}")
        object.__setattr__(self, "values", vals)

    def _same(self, other):
        if self.ring != other.ring or len(self.values) != len(other.values):
            raise ValueError("cochains live on different graphs or rings")

    def __add__(self, other):
        self._same(other)
        return Cochain(self.ring, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same(other)
        return Cochain(self.ring, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return Cochain(self.ring, [-a for a in self.values])

    def scale(self, k):
        return Cochain(self.ring, [k * a for a in self.values])

    def mod2(self):
        return Cochain(Z2, self.values)

    def __getitem__(self, arc):
        return self.values[arc]

    def evaluate(self, walk):
        """Sum over a walk given as arc ids or (arc, forward) pairs."""
        total = 0
        for step in walk:
            if isinstance(step, tuple):
                arc, fwd = step
                total += self.values[arc] if fwd else -self.values[arc]
            else:
                total += self.values[step]
        return total % 2 if self.ring == Z2 else total

    def is_zero(self):
        return not any(self.values)

    def to_json(self):
        return {"ring": self.ring, "values": {str(i): v for i, v in enumerate(self.values)}}


def zero(code, ring=Z):
    return Cochain(ring, [0] * len(code.arcs))


def _unit(code, entries, ring=Z):
    vals = [0] * len(code.arcs)
    for arc, v in entries:
        vals[arc] += v
    return Cochain(ring, vals)


def coboundary(code, c, ring=Z):
    """+1 on arcs leaving c, -1 on arcs entering c."""
    if c not in code.signs:
        raise KeyError(f"unknown crossing {c}")
    e = code.ends
    return _unit(code, [(e[(c, OVER, OUT)], 1), (e[(c, UNDER, OUT)], 1),
                        (e[(c, OVER, IN)], -1), (e[(c, UNDER, IN)], -1)], ring)


def virtual_index_cocycle(code):
    return Cochain(Z, [sum(s for _, s in a.virtual_passages) for a in code.arcs])


def beta(code, c, side="left"):
    """Local cochain of a crossing: left or right version."""
    e = code.ends
    if side == "left":
        if code.sign(c) > 0:
            entries = [(e[(c, OVER, IN)], -1), (e[(c, UNDER, OUT)], 1)]
        else:
            entries = [(e[(c, UNDER, IN)], -1), (e[(c, OVER, OUT)], 1)]
    elif side == "right":
        if code.sign(c) > 0:
            entries = [(e[(c, UNDER, IN)], 1), (e[(c, OVER, OUT)], -1)]
        else:
            entries = [(e[(c, OVER, IN)], 1), (e[(c, UNDER, OUT)], -1)]
    else:
        raise ValueError(f"unknown side {side!r}")
    return _unit(code, entries)


def canonical_index_cocycle(code, side="left"):
    total = zero(code)
    for c in code.crossings:
        total = total + beta(code, c, side)
    return total


def incidence_matrix(code):
    """Rows = arcs, columns = crossings; column c is the coboundary of c."""
    cols = [coboundary(code, c).values for c in code.crossings]
    return [[col[i] for col in cols] for i in range(len(code.arcs))]


def cohomologous(a, b, code):
    """(True, witness) if a - b is a combination of coboundaries, else (False, None).

    The witness maps crossings to coefficients.
    """
    if a.ring != b.ring:
        raise ValueError("rings differ")
    if len(a.values) != len(code.arcs) or len(b.values) != len(code.arcs):
        raise ValueError("cochains do not live on this diagram")
    diff = (a - b).values
    if not code.crossings:
        ok = not any(diff)
        return ok, ({} if ok else None)
    M = incidence_matrix(code)
    x = solve_integer(M, list(diff)) if a.ring == Z else solve_mod2(M, list(diff))
    if x is None:
        return False, None
    return True, {c: v for c, v in zip(code.crossings, x) if v}


def index(code, c):
    """Ind(c) = ci(D+_c) for a self-crossing c."""
    pos, _ = halves(code, c)
    return canonical_index_cocycle(code).evaluate(pos.arcs)


def indices(code):
    return {c: index(code, c) for c in code.crossings if code.is_self_crossing(c)}


def virtual_index(code, c):
    pos, _ = halves(code, c)
    return virtual_index_cocycle(code).evaluate(pos.arcs)


@dataclass(frozen=True)
class GaussCochain:
    """Integer cochain on a Gauss diagram: core edges (= arcs) and chords."""
    core: tuple
    chords: dict


def chord_index_cocycle(code):
    """Push vi off the core cycle onto the chords by endpoint coboundaries."""
    if len(code.components) != 1:
        raise ValueError("the chord index cocycle is only defined for knots")
    core = list(virtual_index_cocycle(code).values)
    chords = {c: 0 for c in code.crossings}
    n = len(core)
    for k in range(n - 1):
        x = core[k]
        if not x:
            continue
        c, role = code.arcs[k].end
        # add x * delta(head of arc k): clears arc k, moves x to arc k+1
        core[k] = 0
        core[k + 1] += x
        chords[c] += x if role == OVER else -x
    assert not any(core), "vi does not vanish on the core cycle"
    for c in code.crossings:
        assert chords[c] == virtual_index(code, c)
    return GaussCochain(tuple(core), chords)


def parity_cocycle(code):
    return virtual_index_cocycle(code).mod2()


def parity_class_trivial(code):
    ok, _ = cohomologous(parity_cocycle(code), zero(code, Z2), code)
    return ok


checkerboard_colourable = parity_class_trivial


# local source-sink structures
class LSSS:
    """Per crossing: the inward strand (O or U) and the distinguished end.

    The distinguished end is 'in' or 'out' on the inward strand; 'in' is
    the default.
    """

    __slots__ = ("_inward", "_direction")

    def __init__(self, inward, direction=None):
        self._inward = tuple(sorted(inward.items()))
        for _, r in self._inward:
            if r not in (OVER, UNDER):
                raise ValueError(f"bad inward strand {r!r}")
        direction = direction or {}
        self._direction = tuple(sorted((c, direction.get(c, IN)) for c, _ in self._inward))

    @property
    def inward(self):
        return dict(self._inward)

    @property
    def direction(self):
        return dict(self._direction)

    def inward_of(self, c):
        return self.inward[c]

    def distinguished_end(self, c):
        """The half-edge (c, strand, in|out) picked by the direction system."""
        return (c, self.inward[c], self.direction[c])

    def flipped(self, crossings=None):
        inw = self.inward
        for c in (inw if crossings is None else crossings):
            inw[c] = UNDER if inw[c] == OVER else OVER
        return LSSS(inw, self.direction)

    def negated(self):
        return self.flipped()

    def with_direction(self, direction):
        return LSSS(self.inward, direction)

    def __eq__(self, other):
        return isinstance(other, LSSS) and self._inward == other._inward and self._direction == other._direction

    def __hash__(self):
        return hash((self._inward, self._direction))

    def __repr__(self):
        return f"LSSS({self.inward}, {self.direction})"

    def to_json(self):
        return {"inward": {str(c): r for c, r in self._inward},
                "direction": {str(c): d for c, d in self._direction}}


def disagrees(lsss, half_edge):
    c, role, io = half_edge
    return (role == lsss.inward_of(c)) != (io == IN)


def lsss_cochain(code, lsss):
    """ssc: 1 on arcs whose two end orientations disagree."""
    vals = []
    for a in code.arcs:
        if a.start is None:
            vals.append(0)
            continue
        s = disagrees(lsss, (a.start[0], a.start[1], OUT))
        e = disagrees(lsss, (a.end[0], a.end[1], IN))
        vals.append(int(s != e))
    return Cochain(Z2, vals)


def graph_components(code):
    """Connected components of the covering graph as sorted crossing lists."""
    parent = {c: c for c in code.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h in code.graph.edges.values():
        parent[find(t)] = find(h)
    groups = {}
    for c in code.crossings:
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


def cochain_to_lsss(code, alpha, direction=None):
    """The LSSS with ssc = alpha whose smallest crossing in each connected
    piece of the covering graph has the over strand inward."""
    alpha = alpha.mod2()
    ok, _ = cohomologous(alpha, parity_cocycle(code), code)
    if not ok:
        raise ValueError("cochain does not represent the parity class")
    inward = {}
    out_arcs, in_arcs = {}, {}
    for a in code.arcs:
        if a.start is not None:
            out_arcs.setdefault(a.start[0], []).append(a)
            in_arcs.setdefault(a.end[0], []).append(a)
    for piece in graph_components(code):
        seed = piece[0]
        inward[seed] = OVER
        stack = [seed]
        while stack:
            u = stack.pop()
            lam = LSSS({u: inward[u]})
            for a in out_arcs.get(u, []):
                d = disagrees(lam, (u, a.start[1], OUT)) ^ alpha[a.arc_id]
                v, role = a.end
                # choose inward(v) so that dis at (v, role, in) == d
                want = UNDER if (role == OVER) == bool(d) else OVER
                if v not in inward:
                    inward[v] = want
                    stack.append(v)
            for a in in_arcs.get(u, []):
                d = disagrees(lam, (u, a.end[1], IN)) ^ alpha[a.arc_id]
                v, role = a.start
                want = OVER if (role == OVER) == bool(d) else UNDER
                if v not in inward:
                    inward[v] = want
                    stack.append(v)
    lam = LSSS(inward, direction)
    if lsss_cochain(code, lam) != alpha:
        raise ValueError("cochain is not realised by any LSSS")
    return lam


def canonical_lsss(code):
    return cochain_to_lsss(code, canonical_index_cocycle(code).mod2())


def random_lsss(code, rng):
    inw = {c: rng.choice((OVER, UNDER)) for c in code.crossings}
    dirs = {c: rng.choice((IN, OUT)) for c in code.crossings}
    return LSSS(inw, dirs)


def all_lsss(code):
    cs = code.crossings
    for roles in product((OVER, UNDER), repeat=len(cs)):
        yield LSSS(dict(zip(cs, roles)))


@dataclass
class StateCheck:
    state: dict
    violations: list

    @property
    def ok(self):
        return not self.violations


def state_cocycle_check(code, s, lsss_list=()):
    """For each circle of the state: vi sums to 0 and cut loci are even."""
    kinds = {c: ORIENTED if s[c] == 0 else DISORIENTED for c in code.crossings}
    vi = virtual_index_cocycle(code)
    sscs = [lsss_cochain(code, lam) for lam in lsss_list]
    bad = []
    for k, comp in enumerate(resolve(code, kinds)):
        v = vi.evaluate(comp.traversals)
        if v:
            bad.append({"component": k, "kind": "vi", "value": v})
        for j, ssc in enumerate(sscs):
            cuts = sum(ssc[a] for a, _ in comp.traversals)
            if cuts % 2:
                bad.append({"component": k, "kind": "cut-loci", "lsss": j, "value": cuts})
    return StateCheck(dict(s), bad)


def all_states(code):
    cs = code.crossings
    for bits in product((0, 1), repeat=len(cs)):
        yield dict(zip(cs, bits))


def random_state(code, rng=None):
    rng = rng or random.Random(0)
    return {c: rng.randint(0, 1) for c in code.crossings}
