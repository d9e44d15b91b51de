"""Reidemeister moves on extended Gauss codes, plus an invariance fuzzer.

Classical moves act on the Gauss diagram: virtual passages stay where
they are. Afterwards a repair step inserts virtual crossing pairs, if
needed, so that the virtual index cocycle is again cohomologous to the
canonical one; a realisable diagram always satisfies that.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .cochain import (canonical_index_cocycle, coboundary, cohomologous,
                      virtual_index_cocycle)
from .egc import OVER, UNDER, VIRTUAL, ExtendedGaussCode, Passage, serialize_egc

KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "VRpair+", "VRpair-", "Coboundary")


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str
    params: tuple

    def to_json(self):
        return {"kind": self.kind, "params": _listify(self.params)}

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], _tuplify(d["params"]))

    def __str__(self):
        return f"{self.kind}{self.params}"


def _listify(x):
    return [_listify(y) for y in x] if isinstance(x, (tuple, list)) else x


def _tuplify(x):
    return tuple(_tuplify(y) for y in x) if isinstance(x, list) else x


# small helpers on component lists
def _comps(code):
    return [list(c) for c in code.components]


def _build(comps):
    return ExtendedGaussCode(tuple(tuple(c) for c in comps))


def _gaps(code):
    for k, comp in enumerate(code.components):
        for i in range(max(len(comp), 1)):
            yield (k, i)


def _insert_many(comps, items):
    """items: (component, position, tiebreak, passage); position p means
    'between original passages p-1 and p' (p may equal the length)."""
    by_comp = {}
    for k, pos, tie, p in items:
        by_comp.setdefault(k, []).append((pos, tie, p))
    for k, lst in by_comp.items():
        lst.sort(key=lambda x: (x[0], x[1]))
        old = comps[k]
        new, j = [], 0
        for i in range(len(old) + 1):
            while j < len(lst) and lst[j][0] == i:
                new.append(lst[j][2])
                j += 1
            if i < len(old):
                new.append(old[i])
        comps[k] = new
    return comps


def _classical_neighbours(code):
    """Pairs ((k, i), (k, j)) of classically consecutive passage positions."""
    out = []
    for k, comp in enumerate(code.components):
        cls = [i for i, p in enumerate(comp) if p.classical]
        for a, i in enumerate(cls):
            j = cls[(a + 1) % len(cls)]
            if len(cls) > 1:
                out.append(((k, i), (k, j)))
    return out


def _passage_at(code, pos):
    return code.components[pos[0]][pos[1]]


# R3 case table from explicit line geometry
def _r3_table():
    normals = [(0, 1), (1, -1), (-1, -1)]

    def meet(i, j, delta):
        (a, b), (c, d) = normals[i], normals[j]
        det = a * d - b * c
        return (Fraction(delta * d - b * delta, det), Fraction(a * delta - c * delta, det))

    table = set()
    for orient in product((1, -1), repeat=3):
        dirs = [(-n[1] * o, n[0] * o) for n, o in zip(normals, orient)]
        for heights in permutations(range(3)):
            # heights[k] = height rank of line k (2 = top)
            for delta in (1, -1):
                order, signs = {}, {}
                for k in range(3):
                    others = [j for j in range(3) if j != k]
                    ts = [(dirs[k][0] * p[0] + dirs[k][1] * p[1], j)
                          for j in others for p in [meet(k, j, delta)]]
                    order[k] = tuple(j for _, j in sorted(ts))
                for i, j in ((0, 1), (0, 2), (1, 2)):
                    o, u = (i, j) if heights[i] > heights[j] else (j, i)
                    cross = dirs[o][0] * dirs[u][1] - dirs[o][1] * dirs[u][0]
                    signs[frozenset((i, j))] = 1 if cross > 0 else -1
                role = {k: "TMB"[2 - heights[k]] for k in range(3)}
                table.add(_signature(role, order, signs))
    return frozenset(table)


def _signature(role, order, signs):
    """Orientation data of a triangle keyed by top/middle/bottom strands."""
    line = {r: k for k, r in role.items()}
    sig = []
    for r in "TMB":
        k = line[r]
        first = order[k][0]
        sig.append(role[first])      # which strand the line meets first
    for pair in ("TM", "TB", "MB"):
        sig.append(signs[frozenset((line[pair[0]], line[pair[1]]))])
    return tuple(sig)


R3_TABLE = _r3_table()


def _r3_sites(code):
    """Triples of classically consecutive segments forming a triangle."""
    segs = _classical_neighbours(code)
    by_pos = {}
    for s in segs:
        for p in s:
            by_pos.setdefault(p, []).append(s)
    other = {}
    for c in code.crossings:
        o, u = code.location[(c, OVER)], code.location[(c, UNDER)]
        other[o], other[u] = u, o
    sites = set()
    for s1 in segs:
        p, q = s1
        x, y = _passage_at(code, p).id, _passage_at(code, q).id
        if x == y:
            continue
        for s2 in by_pos.get(other[p], ()):
            if s2 == s1:
                continue
            z_pos = s2[1] if s2[0] == other[p] else s2[0]
            z = _passage_at(code, z_pos).id
            if z in (x, y):
                continue
            for s3 in by_pos.get(other[q], ()):
                if other[z_pos] in s3 and s3 not in (s1, s2):
                    sites.add(frozenset((s1, s2, s3)))
    out = []
    for site in sites:
        sig = _triangle_signature(code, site)
        if sig is not None and sig in R3_TABLE:
            out.append(tuple(sorted(site)))
    return sorted(out)


def _triangle_signature(code, site):
    roles = {}
    for seg in site:
        kinds = {_passage_at(code, p).kind for p in seg}
        if kinds == {OVER}:
            roles["T"] = seg
        elif kinds == {UNDER}:
            roles["B"] = seg
        else:
            roles["M"] = seg
    if len(roles) != 3:
        return None
    ids = {r: {_passage_at(code, p).id for p in seg} for r, seg in roles.items()}
    cross = {"TM": ids["T"] & ids["M"], "TB": ids["T"] & ids["B"], "MB": ids["M"] & ids["B"]}
    if any(len(v) != 1 for v in cross.values()):
        return None
    cid = {k: next(iter(v)) for k, v in cross.items()}
    name = {v: k for k, v in cid.items()}
    sig = []
    for r in "TMB":
        first_id = _passage_at(code, roles[r][0]).id
        pair = name[first_id]
        sig.append(pair.replace(r, ""))
    for pair in ("TM", "TB", "MB"):
        sig.append(code.sign(cid[pair]))
    return tuple(sig)


# enumeration
def _fresh(code, n=1):
    base = code.max_id() + 1
    return tuple(range(base, base + n))


def enumerate_moves(code, kinds=KINDS):
    moves = []
    kinds = set(kinds)
    fresh = _fresh(code, 2)
    gaps = list(_gaps(code))
    if "R1+" in kinds:
        for g in gaps:
            for first in (OVER, UNDER):
                for s in (1, -1):
                    moves.append(Move("R1+", (g, first, s, fresh[0])))
    if "R1-" in kinds:
        for a in code.arcs:
            # an arc from one passage of c to the other; a full loop
            # through a single passage is not a kink
            if a.start is not None and a.start[0] == a.end[0] and a.start[1] != a.end[1]:
                moves.append(Move("R1-", (a.start[0],)))
    if "R2+" in kinds:
        for g1 in gaps:
            for g2 in gaps:
                for parallel in (True, False):
                    for s in (1, -1):
                        moves.append(Move("R2+", (g1, g2, parallel, s, fresh)))
    if "R2-" in kinds:
        moves.extend(Move("R2-", pair) for pair in _r2_sites(code))
    if "R3" in kinds:
        moves.extend(Move("R3", site) for site in _r3_sites(code))
    if "VRpair+" in kinds:
        for g in gaps:
            for s in (1, -1):
                moves.append(Move("VRpair+", ("kink", g, s, fresh[0])))
    if "VRpair-" in kinds:
        moves.extend(Move("VRpair-", ids) for ids in _vr_removals(code))
    if "Coboundary" in kinds:
        for c in code.crossings:
            for e in (1, -1):
                moves.append(Move("Coboundary", (c, e, fresh)))
    return moves


def _r2_sites(code):
    nb = set(_classical_neighbours(code))
    out = []
    cs = code.crossings
    for i, a in enumerate(cs):
        for b in cs[i + 1:]:
            if code.sign(a) == code.sign(b):
                continue
            oa, ob = code.location[(a, OVER)], code.location[(b, OVER)]
            ua, ub = code.location[(a, UNDER)], code.location[(b, UNDER)]
            if ((oa, ob) in nb or (ob, oa) in nb) and ((ua, ub) in nb or (ub, ua) in nb):
                out.append((a, b))
    return out


def _vr_removals(code):
    vi = virtual_index_cocycle(code)
    out = []
    for v in code.virtual_ids:
        if _remove_ids(code, {v}) is not None and virtual_index_cocycle(_remove_ids(code, {v})) == vi:
            out.append((v,))
    return out


def _remove_ids(code, ids):
    comps = [[p for p in comp if p.id not in ids] for comp in code.components]
    return _build(comps)


# application
def apply(code, move, repair=True):
    """Apply a move; raises MoveError if it does not apply to this code."""
    k = move.kind
    if k not in KINDS:
        raise MoveError(f"unknown move kind {k!r}")
    handler = _HANDLERS[k]
    try:
        out = handler(code, *move.params)
    except MoveError:
        raise
    except (KeyError, IndexError, ValueError, TypeError) as err:
        raise MoveError(f"{move} does not apply: {err}") from err
    if k in ("VRpair+", "VRpair-"):
        assert virtual_index_cocycle(out) == virtual_index_cocycle(code)
    if repair and k in ("R1+", "R1-", "R2+", "R2-", "R3"):
        out = repair_virtual(out)
    return out


def _check_gap(code, g):
    k, i = g
    if not 0 <= k < len(code.components) or not 0 <= i < max(len(code.components[k]), 1):
        raise MoveError(f"no gap {g}")


def _check_fresh(code, ids):
    used = {p.id for _, _, p in code.passages}
    if any(i in used for i in ids) or len(set(ids)) != len(ids):
        raise MoveError("ids are not fresh")


def _r1_insert(code, gap, first, sign, cid):
    _check_gap(code, gap)
    _check_fresh(code, [cid])
    second = UNDER if first == OVER else OVER
    k, i = gap
    comps = _comps(code)
    comps[k][i:i] = [Passage(first, cid, sign), Passage(second, cid, sign)]
    return _build(comps)


def _r1_remove(code, c):
    loops = [a for a in code.arcs
             if a.start is not None and a.start[0] == a.end[0] == c and a.start[1] != a.end[1]]
    if not loops:
        raise MoveError(f"crossing {c} is not a kink")
    return _remove_ids(code, {c})


def _r2_insert(code, g1, g2, parallel, sign, ids):
    _check_gap(code, g1)
    _check_gap(code, g2)
    _check_fresh(code, ids)
    a, b = ids
    over = [Passage(OVER, a, sign), Passage(OVER, b, -sign)]
    under = ([Passage(UNDER, a, sign), Passage(UNDER, b, -sign)] if parallel
             else [Passage(UNDER, b, -sign), Passage(UNDER, a, sign)])
    items = [(g1[0], g1[1], 0, p) for p in over] + [(g2[0], g2[1], 1, p) for p in under]
    return _build(_insert_many(_comps(code), _stable(items)))


def _stable(items):
    # keep the listed order within one gap
    return [(k, pos, (tie, n), p) for n, (k, pos, tie, p) in enumerate(items)]


def _r2_remove(code, a, b):
    if (a, b) not in _r2_sites(code):
        raise MoveError(f"crossings {a}, {b} do not form an R2 bigon")
    return _remove_ids(code, {a, b})


def _r3(code, *site):
    site = tuple(tuple(tuple(p) for p in seg) for seg in site)
    if tuple(sorted(site)) not in _r3_sites(code):
        raise MoveError("not an R3 triangle")
    comps = _comps(code)
    for p, q in site:
        comps[p[0]][p[1]], comps[q[0]][q[1]] = comps[q[0]][q[1]], comps[p[0]][p[1]]
    return _build(comps)


def _vr_insert(code, shape, gap, sign, vid):
    if shape != "kink":
        raise MoveError(f"unknown virtual pair shape {shape!r}")
    _check_gap(code, gap)
    _check_fresh(code, [vid])
    k, i = gap
    comps = _comps(code)
    comps[k][i:i] = [Passage(VIRTUAL, vid, sign), Passage(VIRTUAL, vid, -sign)]
    return _build(comps)


def _vr_remove(code, *ids):
    if tuple(ids) not in _vr_removals(code):
        raise MoveError(f"virtual crossing(s) {ids} cannot be cancelled")
    return _remove_ids(code, set(ids))


def _coboundary(code, c, eps, ids):
    if c not in code.signs:
        raise MoveError(f"unknown crossing {c}")
    _check_fresh(code, ids)
    v1, v2 = ids
    ko, io = code.location[(c, OVER)]
    ku, iu = code.location[(c, UNDER)]
    # v1 sits before the over passage and after the under passage,
    # v2 before the under passage and after the over passage
    items = [
        (ko, io, 1, Passage(VIRTUAL, v1, -eps)),
        (ku, iu + 1, 0, Passage(VIRTUAL, v1, eps)),
        (ku, iu, 1, Passage(VIRTUAL, v2, -eps)),
        (ko, io + 1, 0, Passage(VIRTUAL, v2, eps)),
    ]
    out = _build(_insert_many(_comps(code), items))
    assert virtual_index_cocycle(out) == virtual_index_cocycle(code) + coboundary(code, c).scale(eps)
    return out


_HANDLERS = {
    "R1+": _r1_insert, "R1-": _r1_remove, "R2+": _r2_insert, "R2-": _r2_remove,
    "R3": _r3, "VRpair+": _vr_insert, "VRpair-": _vr_remove, "Coboundary": _coboundary,
}


def repair_virtual(code):
    """Make vi cohomologous to ci again after a classical move.

    Virtual passages carry no information beyond the class of vi, so the
    old ones are dropped and a small set of pairs realising ci + (a
    coboundary) is inserted at arc starts. Codes that are already valid
    are returned unchanged.
    """
    vi, ci = virtual_index_cocycle(code), canonical_index_cocycle(code)
    if cohomologous(vi, ci, code)[0]:
        return code
    code = _build([[p for p in comp if p.kind != VIRTUAL] for comp in code.components])
    d = list(canonical_index_cocycle(code).values)
    cols = {c: coboundary(code, c).values for c in code.crossings}
    improved = True
    while improved:
        improved = False
        for c in code.crossings:
            for e in (1, -1):
                new = [x - e * y for x, y in zip(d, cols[c])]
                if sum(map(abs, new)) < sum(map(abs, d)):
                    d, improved = new, True
    plus = [a for a, v in enumerate(d) if v > 0 for _ in range(v)]
    minus = [a for a, v in enumerate(d) if v < 0 for _ in range(-v)]
    assert len(plus) == len(minus)
    ids = _fresh(code, len(plus))
    items = []
    for n, (ap, am, vid) in enumerate(zip(plus, minus, ids)):
        for arc, s in ((ap, 1), (am, -1)):
            a = code.arcs[arc]
            pos = 0 if a.start_index is None else a.start_index + 1
            items.append((a.component, pos, (n, s), Passage(VIRTUAL, vid, s)))
    out = _build(_insert_many(_comps(code), items))
    assert cohomologous(virtual_index_cocycle(out), canonical_index_cocycle(out), out)[0]
    return out


def realize_representative(code, coefficients):
    """Apply |k| coboundary moves at each crossing c with coefficient k."""
    target = virtual_index_cocycle(code)
    for c in sorted(coefficients):
        k = coefficients[c]
        target = target + coboundary(code, c).scale(k)
        for _ in range(abs(k)):
            code = apply(code, Move("Coboundary", (c, 1 if k > 0 else -1, _fresh(code, 2))))
    assert virtual_index_cocycle(code) == target
    return code


# fuzzing
INSERT_KINDS = ("R1+", "R2+", "VRpair+", "Coboundary")
REMOVE_KINDS = ("R1-", "R2-", "VRpair-")
NEUTRAL_KINDS = ("R3",)


@dataclass
class FuzzReport:
    start: str
    steps: int
    seed: int
    checks: list
    ok: bool = True
    final: str = ""
    moves: list = field(default_factory=list)
    failure: dict = None

    def to_json(self):
        d = {"start": self.start, "steps": self.steps, "seed": self.seed,
             "checks": self.checks, "ok": self.ok, "final": self.final,
             "moves": [m.to_json() for m in self.moves]}
        if self.failure is not None:
            d["failure"] = self.failure
        return d


def pick_move(code, rng, max_crossings=9, max_virtual=8):
    """Pick a random move, balancing insertions against removals."""
    n = len(code.crossings)
    v = len(code.virtual_ids)
    pools = []
    removals = enumerate_moves(code, REMOVE_KINDS)
    r3 = enumerate_moves(code, NEUTRAL_KINDS)
    ins_kinds = []
    if n + 1 <= max_crossings:
        ins_kinds.append("R1+")
    if n + 2 <= max_crossings:
        ins_kinds.append("R2+")
    if v + 2 <= max_virtual:
        ins_kinds.append("VRpair+")
        if n:
            ins_kinds.append("Coboundary")
    if ins_kinds:
        pools.append(ins_kinds)
    if removals:
        pools.append(removals)
    if r3:
        pools.append(r3)
    pool = rng.choice(pools)
    if isinstance(pool[0], Move):
        return rng.choice(pool)
    return rng.choice(enumerate_moves(code, [rng.choice(pool)]))


def fuzz(code, steps, seed, checks, max_crossings=9, max_virtual=8):
    """Random walk through moves, checking that invariants stay put."""
    from .invariants import invariant_fingerprint
    rng = random.Random(seed)
    checks = sorted(checks)
    report = FuzzReport(serialize_egc(code), steps, seed, checks)
    start = code
    ref = invariant_fingerprint(code, checks)
    cur = code
    for _ in range(steps):
        move = pick_move(cur, rng, max_crossings, max_virtual)
        cur = apply(cur, move)
        report.moves.append(move)
        val = invariant_fingerprint(cur, checks)
        if val != ref:
            report.ok = False
            seq = shrink(start, report.moves, checks, ref)
            report.failure = {"moves": [m.to_json() for m in seq],
                              "expected": _show(ref), "found": _show(replay(start, seq, checks)[1])}
            break
    report.final = serialize_egc(cur)
    return report


def replay(code, moves, checks=None):
    """Apply the moves that still apply; returns (code, fingerprint or None)."""
    from .invariants import invariant_fingerprint
    for m in moves:
        try:
            code = apply(code, m)
        except MoveError:
            continue
    fp = invariant_fingerprint(code, checks) if checks else None
    return code, fp


def shrink(start, moves, checks, ref):
    """Greedily drop moves while the invariant mismatch persists."""
    from .invariants import invariant_fingerprint
    seq = list(moves)
    i = 0
    while i < len(seq):
        trial = seq[:i] + seq[i + 1:]
        code, _ = replay(start, trial)
        if invariant_fingerprint(code, checks) != ref:
            seq = trial
        else:
            i += 1
    return seq


def _show(fp):
    return json.loads(json.dumps(fp, default=str)) if fp is not None else None
