"""Integral Khovanov homology of virtual links via cut loci.

The parity cocycle, realised by a local source-sink structure (LSSS),
puts cut loci on long arcs. Every circle of every state then carries an
even number of cut loci, and the edge maps of the cube are the usual
m and Delta conjugated by powers of tau = (1 -> 1, X -> -X) counted by
cut-locus parities, with signs from orders of the circles.

Homological bit 0 at a crossing is the A-smoothing: the oriented
smoothing at a positive crossing and the disoriented one at a negative
crossing.
"""

import random
from dataclasses import dataclass, field
from itertools import product

from .algebra import perm_sign, sparse_smith_invariants
from .cochain import LSSS, canonical_lsss, lsss_cochain, random_lsss
from .egc import DISORIENTED, IN, ORIENTED, OUT, OVER, UNDER, arc_half_edges, joins, resolve
from .frobenius import delta_basis, m_basis, tau_basis

MAX_CROSSINGS = 16


class KhovanovError(RuntimeError):
    """Internal inconsistency: odd cut loci or d^2 != 0."""


@dataclass
class AuxData:
    """Auxiliary choices: LSSS with direction system, circle orders, stars.

    sigma and stars map a state (tuple of bits) to explicit choices; states
    not listed use the seeded random choice, or the canonical one when
    seed is None.
    """
    lsss: LSSS
    seed: int = None
    sigma: dict = field(default_factory=dict)
    stars: dict = field(default_factory=dict)

    def to_json(self):
        return {"lsss": self.lsss.to_json(), "seed": self.seed}


def default_aux(code):
    return AuxData(canonical_lsss(code))


def random_aux(code, seed):
    rng = random.Random(seed)
    return AuxData(random_lsss(code, rng), seed=rng.randrange(2 ** 32))


def smoothing_kinds(code, bits):
    kinds = {}
    for c, b in zip(code.crossings, bits):
        a_smoothing = ORIENTED if code.sign(c) > 0 else DISORIENTED
        other = DISORIENTED if a_smoothing == ORIENTED else ORIENTED
        kinds[c] = a_smoothing if b == 0 else other
    return kinds


@dataclass
class State:
    bits: tuple
    circles: list          # keys: frozensets of arc ids
    circle_of: dict        # half-edge -> circle key
    phi: dict              # half-edge -> cut-locus potential mod 2
    order: list            # sigma_s, a list of circle keys
    star: dict             # circle key -> half-edge or None (free loop)
    joins: dict            # crossing -> its two joins

    def l(self, p, q):
        """Cut-locus parity between two points of one circle."""
        if p is None or q is None:
            return 0
        if self.circle_of[p] != self.circle_of[q]:
            raise ValueError("points lie on different circles")
        return self.phi[p] ^ self.phi[q]


def build_state(code, bits, aux, ssc):
    kinds = smoothing_kinds(code, bits)
    comps = resolve(code, kinds)
    circles, circle_of, phi = [], {}, {}
    for comp in comps:
        key = comp.arc_set
        circles.append(key)
        f = 0
        for arc, fwd in comp.traversals:
            he = arc_half_edges(code, arc, fwd)
            if he is None:
                continue
            entry, exit_ = he
            circle_of[entry] = circle_of[exit_] = key
            phi[entry] = f
            f ^= ssc[arc]
            phi[exit_] = f
        if f:
            raise KhovanovError(f"odd number of cut loci on a circle of state {bits}")
    rng = random.Random(hash((aux.seed, bits))) if aux.seed is not None else None
    if bits in aux.sigma:
        order = list(aux.sigma[bits])
    elif rng is not None:
        order = sorted(circles, key=min)
        rng.shuffle(order)
    else:
        order = sorted(circles, key=min)
    star = {}
    for key in circles:
        pts = sorted(h for h, k in circle_of.items() if k == key)
        if bits in aux.stars and key in aux.stars[bits]:
            star[key] = aux.stars[bits][key]
        elif not pts:
            star[key] = None
        elif rng is not None:
            star[key] = rng.choice(pts)
        else:
            a = code.arcs[min(key)]
            star[key] = (a.start[0], a.start[1], OUT)
    jn = {c: joins(c, kinds[c]) for c in code.crossings}
    return State(bits, circles, circle_of, phi, order, star, jn)


def cut_locus_distance(state, circle, p, q):
    """Cut loci between p and q along the circle, mod 2.

    Both arcs of the circle give the same answer because the total count
    is even, which build_state has already checked.
    """
    for h in (p, q):
        if state.circle_of.get(h) != circle:
            raise ValueError(f"{h} does not lie on the given circle")
    return state.l(p, q)


def _point_parity(state, c, circle):
    """l(c, star) on a circle through c; all c-points must agree."""
    vals = {state.l(h, state.star[circle]) for j in state.joins[c] for h in j
            if state.circle_of[h] == circle}
    if len(vals) != 1:
        raise KhovanovError(f"ambiguous cut-locus parity at crossing {c}")
    return vals.pop()


def local_order(state, c, lsss):
    """Circles meeting c: the one through the distinguished end first."""
    d = lsss.distinguished_end(c)
    j_first = next(j for j in state.joins[c] if d in j)
    j_other = next(j for j in state.joins[c] if d not in j)
    first = state.circle_of[j_first[0]]
    second = state.circle_of[j_other[0]]
    return [first] if first == second else [first, second]


def edge_sign(code, s, t, c, lsss):
    """Sign of the cube edge s -> t that changes crossing c."""
    loc_s, loc_t = local_order(s, c, lsss), local_order(t, c, lsss)
    spect_s = [g for g in s.order if g not in loc_s]
    spect_t = [g for g in t.order if g not in loc_t]
    e1 = perm_sign(s.order, loc_s + spect_s)
    e2 = perm_sign(spect_s, spect_t)
    e3 = perm_sign(t.order, loc_t + spect_t)
    return e1 * e2 * e3


def classify(s, t, c):
    j1, j2 = s.joins[c]
    same = s.circle_of[j1[0]] == s.circle_of[j2[0]]
    if not same:
        return "merge"
    return "split" if len(t.circles) == len(s.circles) + 1 else "single-circle"


def edge_map(code, s, t, c, lsss):
    """The unsigned edge map as {source basis index: {target index: coeff}}.

    Basis vectors of V(s) are bit tuples ordered by s.order (bit 1 = X).
    """
    kind = classify(s, t, c)
    n_s = len(s.circles)
    pos_t = {g: i for i, g in enumerate(t.order)}
    if kind == "single-circle":
        return kind, {}
    loc_s, loc_t = local_order(s, c, lsss), local_order(t, c, lsss)
    spect = [g for g in s.order if g not in loc_s]
    spect_tau = {g: s.l(s.star[g], t.star[g]) for g in spect}
    out = {}
    for x in product((0, 1), repeat=n_s):
        label = dict(zip(s.order, x))
        coeff = 1
        for g in spect:
            coeff *= tau_basis(label[g], spect_tau[g])
        images = []     # list of (assignment on loc_t, coeff)
        if kind == "merge":
            g1, g2 = loc_s
            (gp,) = loc_t
            b1, b2 = _point_parity(s, c, g1), _point_parity(s, c, g2)
            a = _point_parity(t, c, gp)
            k = tau_basis(label[g1], b1) * tau_basis(label[g2], b2)
            prod_ = m_basis(label[g1], label[g2])
            if prod_ is not None:
                idx, v = prod_
                images.append(({gp: idx}, k * v * tau_basis(idx, a)))
        else:
            (g,) = loc_s
            g1, g2 = loc_t
            b = _point_parity(s, c, g)
            a1, a2 = _point_parity(t, c, g1), _point_parity(t, c, g2)
            k = tau_basis(label[g], b)
            for (i1, i2), v in delta_basis(label[g]):
                images.append(({g1: i1, g2: i2}, k * v * tau_basis(i1, a1) * tau_basis(i2, a2)))
        col = {}
        for assign, v in images:
            y = [0] * len(t.order)
            for g in spect:
                y[pos_t[g]] = label[g]
            for g, i in assign.items():
                y[pos_t[g]] = i
            key = tuple(y)
            col[key] = col.get(key, 0) + coeff * v
        out[x] = {k: v for k, v in col.items() if v}
    return kind, out


@dataclass
class ChainComplex:
    bases: dict            # degree -> list of (state bits, basis tuple)
    differentials: dict    # degree h -> {(row in h+1, col in h): int}

    def dims(self):
        return {h: len(b) for h, b in self.bases.items()}

    def to_json(self):
        return {
            "degrees": {str(h): {"basis": [[list(s), list(x)] for s, x in self.bases[h]],
                                 "d": [[r, c, v] for (r, c), v in sorted(self.differentials.get(h, {}).items())]}
                        for h in sorted(self.bases)}
        }


def state_cube(code, aux):
    if len(code.crossings) > MAX_CROSSINGS:
        raise ValueError(f"more than {MAX_CROSSINGS} crossings; the cube is too large")
    ssc = lsss_cochain(code, aux.lsss).values
    return {bits: build_state(code, bits, aux, ssc)
            for bits in product((0, 1), repeat=len(code.crossings))}


def complex_(code, aux=None, check=True):
    """Assemble the chain complex; raises KhovanovError if d^2 != 0."""
    aux = aux or default_aux(code)
    cube = state_cube(code, aux)
    n = len(code.crossings)
    bases = {h: [] for h in range(n + 1)}
    index = {}
    for bits in sorted(cube):
        h = sum(bits)
        for x in product((0, 1), repeat=len(cube[bits].circles)):
            index[(bits, x)] = len(bases[h])
            bases[h].append((bits, x))
    diffs = {h: {} for h in range(n)}
    for bits, s in cube.items():
        h = sum(bits)
        for i, c in enumerate(code.crossings):
            if bits[i]:
                continue
            tbits = bits[:i] + (1,) + bits[i + 1:]
            t = cube[tbits]
            _, emap = edge_map(code, s, t, c, aux.lsss)
            if not emap:
                continue
            sg = edge_sign(code, s, t, c, aux.lsss)
            d = diffs[h]
            for x, col in emap.items():
                ci = index[(bits, x)]
                for y, v in col.items():
                    key = (index[(tbits, y)], ci)
                    d[key] = d.get(key, 0) + sg * v
    for h in diffs:
        diffs[h] = {k: v for k, v in diffs[h].items() if v}
    cx = ChainComplex(bases, diffs)
    if check:
        check_d_squared(cx)
    return cx


def _compose(d2, d1):
    by_mid = {}
    for (r, c), v in d1.items():
        by_mid.setdefault(r, []).append((c, v))
    out = {}
    for (r, m), v in d2.items():
        for c, w in by_mid.get(m, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    return {k: v for k, v in out.items() if v}


def check_d_squared(cx):
    for h in cx.differentials:
        if h + 1 in cx.differentials:
            bad = _compose(cx.differentials[h + 1], cx.differentials[h])
            if bad:
                raise KhovanovError(f"d^2 != 0 in degree {h}")


@dataclass(frozen=True)
class HomologyGroups:
    groups: tuple          # (degree, rank, torsion tuple)

    def as_dict(self):
        return {h: (r, t) for h, r, t in self.groups}

    def to_json(self):
        out = {}
        for h, r, t in self.groups:
            g = {"rank": r}
            if t:
                g["torsion"] = list(t)
            out[str(h)] = g
        return out

    def __str__(self):
        parts = []
        for h, r, t in self.groups:
            terms = ([f"Z^{r}"] if r > 1 else ["Z"] if r == 1 else []) + [f"Z/{k}" for k in t]
            parts.append(f"KH^{h} = {' + '.join(terms) or '0'}")
        return ", ".join(parts)


def homology(cx):
    dims = cx.dims()
    invs = {}
    for h, d in cx.differentials.items():
        invs[h] = sparse_smith_invariants(d, dims.get(h + 1, 0), dims[h])
    groups = []
    for h in sorted(dims):
        rank_out = len(invs.get(h, []))
        into = invs.get(h - 1, [])
        r = dims[h] - rank_out - len(into)
        tors = tuple(sorted(k for k in into if k > 1))
        groups.append((h, r, tors))
    return HomologyGroups(tuple(groups))


def khovanov_homology(code, aux=None):
    return homology(complex_(code, aux))


@dataclass
class IndependenceReport:
    ok: bool
    reference: HomologyGroups
    mismatches: list


def independence_suite(code, trials, seed):
    """Recompute homology under random auxiliary data and compare."""
    ref = khovanov_homology(code)
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        aux = random_aux(code, rng.randrange(2 ** 32))
        h = khovanov_homology(code, aux)
        if h != ref:
            bad.append({"aux": aux.to_json(), "homology": h.to_json()})
    return IndependenceReport(not bad, ref, bad)


__all__ = ["cut_locus_distance", "build_state", "AuxData", "default_aux", "random_aux", "complex_", "homology", "khovanov_homology",
           "independence_suite", "edge_sign", "edge_map", "state_cube", "HomologyGroups",
           "ChainComplex", "KhovanovError", "IN", "OVER", "UNDER"]
