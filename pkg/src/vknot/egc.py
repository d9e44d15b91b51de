"""Extended Gauss codes and the structures derived from them.

A code is a list of components; each component is a cyclic sequence of
passages. A passage is classical (O or U with the crossing sign) or
virtual (V with the transverse sign). Long arcs run between consecutive
classical passages and form the edges of the covering graph.
"""

from collections import Counter, namedtuple
from dataclasses import dataclass, field
from functools import cached_property

OVER, UNDER, VIRTUAL = "O", "U", "V"
IN, OUT = "in", "out"


class EGCError(ValueError):
    """Base class for malformed codes."""


class EGCSyntaxError(EGCError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PairingError(EGCError):
    def __init__(self, message, crossing_id):
        super().__init__(message)
        self.crossing_id = crossing_id


@dataclass(frozen=True, order=True)
class Passage:
    kind: str    # O, U or V
    id: int
    sign: int    # crossing sign for O/U, transverse sign for V

    @property
    def classical(self):
        return self.kind != VIRTUAL

    def token(self):
        return f"{self.kind}{self.id}{'+' if self.sign > 0 else '-'}"

    def sort_key(self):
        return (self.kind, self.id, 0 if self.sign > 0 else 1)

    def __str__(self):
        return self.token()


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    crossing_id: int = None
    position: int = None

    def to_json(self):
        d = {"kind": self.kind, "message": self.message}
        if self.crossing_id is not None:
            d["id"] = self.crossing_id
        if self.position is not None:
            d["position"] = self.position
        return d


def pairing_diagnostics(components):
    """Structural problems of a list of passage sequences."""
    seen = {}
    for comp in components:
        for p in comp:
            seen.setdefault(p.id, []).append(p)
    out = []
    for cid in sorted(seen):
        ps = seen[cid]
        kinds = Counter(p.kind for p in ps)
        if len(ps) != 2:
            what = "virtual" if kinds[VIRTUAL] else "classical"
            out.append(Diagnostic("pairing", f"{what} id {cid} occurs {len(ps)} time(s)", cid))
        elif kinds[VIRTUAL] == 2:
            if ps[0].sign == ps[1].sign:
                out.append(Diagnostic("pairing", f"virtual id {cid} has equal transverse signs", cid))
        elif kinds[VIRTUAL] == 1:
            out.append(Diagnostic("pairing", f"id {cid} mixes classical and virtual passages", cid))
        elif kinds[OVER] != 1 or kinds[UNDER] != 1:
            out.append(Diagnostic("pairing", f"classical id {cid} needs one O and one U passage", cid))
        elif ps[0].sign != ps[1].sign:
            out.append(Diagnostic("pairing", f"classical id {cid} has mismatched signs", cid))
    return out


def scan(text):
    """Read the passage sequences of a code without checking pairings."""
    comps, cur = [], []
    i, n = 0, len(text)
    expect = "item"     # item | sep
    empty_comp = False

    def skip_ws(j):
        while j < n and text[j].isspace():
            j += 1
        return j

    i = skip_ws(i)
    if i == n:
        raise EGCSyntaxError("empty code", 0)
    while True:
        i = skip_ws(i)
        if expect == "item":
            if i == n:
                raise EGCSyntaxError("expected a passage", i)
            ch = text[i]
            if ch == "~" and not cur:
                empty_comp = True
                i += 1
            elif ch in "OUV":
                i = skip_ws(i + 1)
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                if j == i:
                    raise EGCSyntaxError("expected a crossing number", i)
                num = int(text[i:j])
                i = skip_ws(j)
                if i == n or text[i] not in "+-":
                    raise EGCSyntaxError("expected '+' or '-'", i)
                cur.append(Passage(ch, num, 1 if text[i] == "+" else -1))
                i += 1
            else:
                raise EGCSyntaxError(f"unexpected character {ch!r}", i)
            expect = "sep"
        else:
            if i == n:
                comps.append(tuple(cur))
                return comps
            ch = text[i]
            if ch == "," and not empty_comp:
                i += 1
            elif ch == ";":
                comps.append(tuple(cur))
                cur, empty_comp = [], False
                i += 1
            else:
                raise EGCSyntaxError(f"unexpected character {ch!r}", i)
            expect = "item"


LongArc = namedtuple("LongArc", "arc_id component start end virtual_passages start_index")
LongArc.__doc__ = """An edge of the covering graph.

start/end are (crossing, role) pairs, or None for a free loop. The arc
leaves `start` through its out-end and enters `end` through its in-end.
start_index is the position of the start passage in the component.
"""

Half = namedtuple("Half", "arcs passages")


@dataclass(frozen=True)
class CoveringGraph:
    vertices: tuple
    edges: dict          # arc_id -> (tail crossing, head crossing)
    free_loops: tuple

    def degree(self, c):
        return sum((t == c) + (h == c) for t, h in self.edges.values())


@dataclass(frozen=True)
class ExtendedGaussCode:
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise EGCError("a code needs at least one component")
        problems = pairing_diagnostics(comps)
        if problems:
            raise PairingError(problems[0].message, problems[0].crossing_id)

    # basic data
    @cached_property
    def passages(self):
        return [(k, i, p) for k, comp in enumerate(self.components) for i, p in enumerate(comp)]

    @cached_property
    def crossings(self):
        return tuple(sorted({p.id for _, _, p in self.passages if p.classical}))

    @cached_property
    def virtual_ids(self):
        return tuple(sorted({p.id for _, _, p in self.passages if not p.classical}))

    @cached_property
    def signs(self):
        return {p.id: p.sign for _, _, p in self.passages if p.classical}

    def sign(self, c):
        return self.signs[c]

    @cached_property
    def location(self):
        """(id, kind) -> (component, index); virtual ids keyed by (id, sign)."""
        loc = {}
        for k, i, p in self.passages:
            key = (p.id, p.kind) if p.classical else (p.id, p.sign)
            loc[key] = (k, i)
        return loc

    def component_of(self, c, role):
        return self.location[(c, role)][0]

    def is_self_crossing(self, c):
        return self.component_of(c, OVER) == self.component_of(c, UNDER)

    def max_id(self):
        return max((p.id for _, _, p in self.passages), default=0)

    # long arcs
    @cached_property
    def arcs(self):
        arcs = []
        for k, comp in enumerate(self.components):
            cls = [i for i, p in enumerate(comp) if p.classical]
            if not cls:
                virt = tuple((p.id, p.sign) for p in comp)
                arcs.append(LongArc(len(arcs), k, None, None, virt, None))
                continue
            n = len(comp)
            for j, i0 in enumerate(cls):
                i1 = cls[(j + 1) % len(cls)]
                virt = []
                i = (i0 + 1) % n
                while i != i1:
                    virt.append((comp[i].id, comp[i].sign))
                    i = (i + 1) % n
                a, b = comp[i0], comp[i1]
                arcs.append(LongArc(len(arcs), k, (a.id, a.kind), (b.id, b.kind), tuple(virt), i0))
        return tuple(arcs)

    @cached_property
    def ends(self):
        """(crossing, role, in|out) -> arc id."""
        out = {}
        for a in self.arcs:
            if a.start is not None:
                out[(a.start[0], a.start[1], OUT)] = a.arc_id
                out[(a.end[0], a.end[1], IN)] = a.arc_id
        return out

    @cached_property
    def graph(self):
        edges = {a.arc_id: (a.start[0], a.end[0]) for a in self.arcs if a.start is not None}
        loops = tuple(a.arc_id for a in self.arcs if a.start is None)
        return CoveringGraph(self.crossings, edges, loops)

    @cached_property
    def component_arcs(self):
        out = [[] for _ in self.components]
        for a in self.arcs:
            out[a.component].append(a.arc_id)
        return [tuple(x) for x in out]

    def next_arc(self, arc_id):
        """The arc following arc_id along its component."""
        a = self.arcs[arc_id]
        if a.start is None:
            return arc_id
        return self.ends[(a.end[0], a.end[1], OUT)]

    def __str__(self):
        return serialize_egc(self)


def parse_egc(text):
    """Parse the text form; raises EGCSyntaxError or PairingError."""
    if isinstance(text, ExtendedGaussCode):
        return text
    return ExtendedGaussCode(tuple(scan(text)))


def _min_rotation(comp):
    if not comp:
        return comp
    keys = [p.sort_key() for p in comp]
    n = len(comp)
    best = min(range(n), key=lambda r: keys[r:] + keys[:r])
    return comp[best:] + comp[:best]


def serialize_egc(code):
    parts = []
    for comp in code.components:
        comp = _min_rotation(comp)
        parts.append(",".join(p.token() for p in comp) if comp else "~")
    return ";".join(parts)


def canonical(code):
    return parse_egc(serialize_egc(code))


def long_arcs(code):
    return list(code.arcs), code.graph


# smoothings
ORIENTED, DISORIENTED = "oriented", "disoriented"


def joins(c, kind):
    if kind == ORIENTED:
        return (((c, OVER, IN), (c, UNDER, OUT)), ((c, UNDER, IN), (c, OVER, OUT)))
    return (((c, OVER, IN), (c, UNDER, IN)), ((c, OVER, OUT), (c, UNDER, OUT)))


@dataclass(frozen=True)
class StateComponent:
    traversals: tuple   # (arc_id, forward) in walk order
    joins: tuple        # (crossing, half-edge left, half-edge entered) in walk order

    @cached_property
    def arc_set(self):
        return frozenset(a for a, _ in self.traversals)


@dataclass(frozen=True)
class StateResolution:
    state: dict
    components: tuple


def arc_half_edges(code, arc_id, forward):
    """(entry half-edge, exit half-edge) of a traversal; None for loops."""
    a = code.arcs[arc_id]
    if a.start is None:
        return None
    s = (a.start[0], a.start[1], OUT)
    e = (a.end[0], a.end[1], IN)
    return (s, e) if forward else (e, s)


def resolve(code, kinds):
    """Walk the circles of the smoothing given by crossing -> ORIENTED|DISORIENTED."""
    partner = {}
    for c in code.crossings:
        if c not in kinds:
            raise KeyError(f"no smoothing given for crossing {c}")
        for h1, h2 in joins(c, kinds[c]):
            partner[h1] = h2
            partner[h2] = h1
    seen = set()
    comps = []
    for a in code.arcs:
        if a.arc_id in seen:
            continue
        if a.start is None:
            seen.add(a.arc_id)
            comps.append(StateComponent(((a.arc_id, True),), ()))
            continue
        trav, jn = [], []
        arc, fwd = a.arc_id, True
        while True:
            seen.add(arc)
            trav.append((arc, fwd))
            _, exit_h = arc_half_edges(code, arc, fwd)
            nxt_h = partner[exit_h]
            jn.append((exit_h[0], exit_h, nxt_h))
            arc = code.ends[nxt_h]
            fwd = nxt_h[2] == OUT
            if arc == a.arc_id:
                break
        comps.append(StateComponent(tuple(trav), tuple(jn)))
    return tuple(comps)


def kauffman_state(code, s):
    """Resolve every crossing: 0 = oriented smoothing, 1 = disoriented."""
    missing = [c for c in code.crossings if c not in s]
    if missing:
        raise KeyError(f"state misses crossing {missing[0]}")
    kinds = {c: ORIENTED if s[c] == 0 else DISORIENTED for c in code.crossings}
    return StateResolution(dict(s), resolve(code, kinds))


def _walk(code, start_arc, stop_key):
    arcs = [start_arc]
    while (code.arcs[arcs[-1]].end[0], code.arcs[arcs[-1]].end[1]) != stop_key:
        arcs.append(code.next_arc(arcs[-1]))
    return tuple(arcs)


def halves(code, c):
    """(positive half, negative half) of a self-crossing c.

    The positive half runs from the under-out end of c to its over-in end,
    the negative half from over-out to under-in.
    """
    if c not in code.signs:
        raise KeyError(f"unknown crossing {c}")
    if not code.is_self_crossing(c):
        raise ValueError(f"crossing {c} is a mixed crossing; halves are undefined")
    pos = _walk(code, code.ends[(c, UNDER, OUT)], (c, OVER))
    neg = _walk(code, code.ends[(c, OVER, OUT)], (c, UNDER))
    return _half(code, pos), _half(code, neg)


def _half(code, arcs):
    passages = []
    for a in arcs:
        arc = code.arcs[a]
        passages.extend(Passage(VIRTUAL, i, s) for i, s in arc.virtual_passages)
        passages.append(Passage(arc.end[1], arc.end[0], code.sign(arc.end[0])))
    return Half(arcs, tuple(passages))


def sub_code(code, keep):
    """The sub-diagram made of the listed components, in the given order."""
    keep = list(keep)
    ids = Counter(p.id for k in keep for p in code.components[k])
    comps = []
    for k in keep:
        comps.append(tuple(p for p in code.components[k] if ids[p.id] == 2))
    return ExtendedGaussCode(tuple(comps))


# validation
@dataclass
class ValidationReport:
    level: str
    ok: bool
    diagnostics: list = field(default_factory=list)

    def to_json(self):
        return {"level": self.level, "ok": self.ok,
                "diagnostics": [d.to_json() for d in self.diagnostics]}


def validate(code, level="basic"):
    """Structured diagnostics; never raises for bad input."""
    if level not in ("basic", "cohomological"):
        raise ValueError(f"unknown level {level!r}")
    if isinstance(code, ExtendedGaussCode):
        comps = code.components
    else:
        try:
            comps = scan(code)
        except EGCSyntaxError as err:
            return ValidationReport(level, False, [Diagnostic("syntax", str(err), position=err.position)])
    diags = pairing_diagnostics(comps)
    if diags or level == "basic":
        return ValidationReport(level, not diags, diags)
    from .cochain import canonical_index_cocycle, cohomologous, virtual_index_cocycle
    code = ExtendedGaussCode(tuple(comps))
    ok, _ = cohomologous(virtual_index_cocycle(code), canonical_index_cocycle(code), code)
    if not ok:
        diags.append(Diagnostic("cohomology", "virtual index cocycle is not cohomologous to the canonical one"))
    return ValidationReport(level, ok, diags)
