"""Finite biquandles, virtual biquandles, colouring counts and the
Alexander-type module polynomials G_D(s, t) and xi(D).

Colouring rule at a classical crossing. Turn the crossing so that both
strands point upward. The colours on the left side, x on the under strand
and y on the over strand, determine the right side through
S(x, y) = (x o y, y * x): under strand x o y, over strand y * x. In terms
of ends this reads

    positive crossing: under-in = uo o oi,  over-out = oi * uo
    negative crossing: under-out = ui o oo, over-in = oo * ui

At a virtual passage with transverse sign e the outgoing colour is
f^e(incoming colour).
"""

from dataclasses import dataclass
from itertools import product

from .egc import IN, OUT, OVER, UNDER, VIRTUAL
from .laurent import LaurentPoly, ONE, ZERO, det, normalize_units

# (A, B, C, D) with A = B o C and D = C * B, per crossing sign
RULE = {
    1: ((UNDER, IN), (UNDER, OUT), (OVER, IN), (OVER, OUT)),
    -1: ((UNDER, OUT), (UNDER, IN), (OVER, OUT), (OVER, IN)),
}


class BiquandleError(ValueError):
    def __init__(self, report):
        super().__init__(report["message"])
        self.report = report


@dataclass(frozen=True)
class FiniteBiquandle:
    n: int
    circ: tuple
    star: tuple

    def __post_init__(self):
        object.__setattr__(self, "circ", tuple(tuple(r) for r in self.circ))
        object.__setattr__(self, "star", tuple(tuple(r) for r in self.star))
        report = biquandle_violation(self.n, self.circ, self.star)
        if report:
            raise BiquandleError(report)

    def o(self, x, y):
        return self.circ[x][y]

    def s(self, x, y):
        return self.star[x][y]

    def to_json(self):
        return {"n": self.n, "circ": [list(r) for r in self.circ], "star": [list(r) for r in self.star]}


def _shape_problem(n, table, name):
    if len(table) != n or any(len(r) != n for r in table):
        return f"{name} table is not {n}x{n}"
    if any(not isinstance(v, int) or not 0 <= v < n for r in table for v in r):
        return f"{name} table has entries outside 0..{n - 1}"
    return None


def biquandle_violation(n, circ, star):
    """None if the tables define a biquandle, else the first violated axiom."""
    for name, tab in (("circ", circ), ("star", star)):
        msg = _shape_problem(n, tab, name)
        if msg:
            return {"axiom": 0, "message": msg}
    R = range(n)
    for x in R:
        if circ[x][x] != star[x][x]:
            return {"axiom": 1, "message": "x o x != x * x", "witness": [x]}
    for y in R:
        if len({circ[x][y] for x in R}) != n:
            return {"axiom": 2, "message": "x -> x o y is not invertible", "witness": [y]}
        if len({star[x][y] for x in R}) != n:
            return {"axiom": 2, "message": "x -> x * y is not invertible", "witness": [y]}
    if len({(circ[x][y], star[y][x]) for x in R for y in R}) != n * n:
        return {"axiom": 3, "message": "S(x, y) = (x o y, y * x) is not a bijection"}
    for x, y, z in product(R, repeat=3):
        if circ[circ[x][z]][circ[y][z]] != circ[circ[x][y]][star[z][y]]:
            return {"axiom": 4, "message": "first exchange law fails", "witness": [x, y, z]}
        if star[circ[x][z]][circ[y][z]] != circ[star[x][y]][star[z][y]]:
            return {"axiom": 4, "message": "second exchange law fails", "witness": [x, y, z]}
        if star[star[x][z]][star[y][z]] != star[star[x][y]][circ[z][y]]:
            return {"axiom": 4, "message": "third exchange law fails", "witness": [x, y, z]}
    return None


def check_biquandle(circ, star):
    """(FiniteBiquandle, None) or (None, violation report)."""
    n = len(circ)
    report = biquandle_violation(n, circ, star)
    if report:
        return None, report
    return FiniteBiquandle(n, circ, star), None


@dataclass(frozen=True)
class VirtualBiquandle:
    base: FiniteBiquandle
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        report = virtual_violation(self.base, self.f)
        if report:
            raise BiquandleError(report)

    @property
    def f_inv(self):
        inv = [0] * len(self.f)
        for x, y in enumerate(self.f):
            inv[y] = x
        return tuple(inv)


def virtual_violation(base, f):
    n = base.n
    if sorted(f) != list(range(n)):
        return {"message": "f is not a permutation"}
    for x, y in product(range(n), repeat=2):
        if f[base.circ[x][y]] != base.circ[f[x]][f[y]]:
            return {"message": "f does not respect o", "witness": [x, y]}
        if f[base.star[x][y]] != base.star[f[x]][f[y]]:
            return {"message": "f does not respect *", "witness": [x, y]}
    return None


def check_virtual(base, f):
    report = virtual_violation(base, f)
    if report:
        return None, report
    return VirtualBiquandle(base, f), None


def twist(vb):
    """B_f: x o_f y = f^-1(x) o f^-1(y), likewise for *."""
    g = vb.f_inv
    B = vb.base
    n = B.n
    circ = [[B.circ[g[x]][g[y]] for y in range(n)] for x in range(n)]
    star = [[B.star[g[x]][g[y]] for y in range(n)] for x in range(n)]
    return FiniteBiquandle(n, circ, star)


# standard families
def trivial_biquandle(n):
    t = [[x] * n for x in range(n)]
    return FiniteBiquandle(n, t, t)


def alexander_biquandle(p, s, t):
    """x o y = s^-1 t x + s^-1 (1 - t) y, x * y = s^-1 x over Z/p."""
    si = pow(s, -1, p)
    circ = [[(si * t * x + si * (1 - t) * y) % p for y in range(p)] for x in range(p)]
    star = [[(si * x) % p for _ in range(p)] for x in range(p)]
    return FiniteBiquandle(p, circ, star)


def alexander_quandle(p, t):
    """x o y = t x + (1 - t) y, x * y = x over Z/p."""
    circ = [[(t * x + (1 - t) * y) % p for y in range(p)] for x in range(p)]
    star = [[x] * p for x in range(p)]
    return FiniteBiquandle(p, circ, star)


def _gf4_mul(a, b):
    # GF(4) as bit pairs over 1 and w, with w^2 = w + 1
    out = 0
    for i in range(2):
        if b >> i & 1:
            out ^= a << i
    if out & 4:
        out ^= 0b111
    return out


def tetrahedral_quandle():
    """x o y = w x + w^2 y over GF(4): the smallest non-linear example here."""
    w, w2 = 2, 3
    circ = [[_gf4_mul(w, x) ^ _gf4_mul(w2, y) for y in range(4)] for x in range(4)]
    star = [[x] * 4 for x in range(4)]
    return FiniteBiquandle(4, circ, star)


def scaling(p, k):
    return tuple((k * x) % p for x in range(p))


def load_biquandle(data):
    """From the JSON form {n, circ, star, f?}; returns B or (B, f) pair."""
    B = FiniteBiquandle(data["n"], data["circ"], data["star"])
    if data.get("f") is not None:
        return VirtualBiquandle(B, data["f"])
    return B


# colouring counts
def _long_arc_cells(code):
    """Cells = long arcs; each end of a crossing maps to its arc."""
    cells = len(code.arcs)
    end_cell = {k: v for k, v in code.ends.items()}
    return cells, end_cell, []


def _short_arc_cells(code):
    """Cells = short arcs (between consecutive passages of any kind)."""
    base, offs = 0, []
    for comp in code.components:
        offs.append(base)
        base += max(len(comp), 1)
    end_cell, virt = {}, []
    for k, comp in enumerate(code.components):
        n = len(comp)
        for i, p in enumerate(comp):
            cin = offs[k] + (i - 1) % n
            cout = offs[k] + i
            if p.kind == VIRTUAL:
                virt.append((cin, cout, p.sign))
            else:
                end_cell[(p.id, p.kind, IN)] = cin
                end_cell[(p.id, p.kind, OUT)] = cout
    return base, end_cell, virt


def _constraints(code, end_cell):
    out = []
    for c in code.crossings:
        A, B, C, D = (end_cell[(c,) + e] for e in RULE[code.sign(c)])
        out.append((A, B, C, D))
    return out


def _count(ncells, classical, virtual, B, f=None):
    n = B.n
    circ, star = B.circ, B.star
    s_inv = {(circ[x][y], star[y][x]): (x, y) for x in range(n) for y in range(n)}
    alpha_inv = [[None] * n for _ in range(n)]   # alpha_inv[y][z] = x with x o y = z
    beta_inv = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            alpha_inv[y][circ[x][y]] = x
            beta_inv[y][star[x][y]] = x
    fpow = {}
    if virtual:
        finv = [0] * n
        for x, y in enumerate(f):
            finv[y] = x
        fpow = {1: list(f), -1: finv}
    watch = [[] for _ in range(ncells)]
    for idx, con in enumerate(classical):
        for cell in con:
            watch[cell].append(("c", idx))
    for idx, (a, b, _) in enumerate(virtual):
        watch[a].append(("v", idx))
        watch[b].append(("v", idx))

    def propagate(col, cells, trail):
        queue = list(cells)
        while queue:
            cell = queue.pop()
            for kind, idx in watch[cell]:
                if kind == "v":
                    a, b, e = virtual[idx]
                    ca, cb = col[a], col[b]
                    if ca is not None and cb is None:
                        new = [(b, fpow[e][ca])]
                    elif cb is not None and ca is None:
                        new = [(a, fpow[-e][cb])]
                    elif ca is not None and fpow[e][ca] != cb:
                        return False
                    else:
                        new = []
                else:
                    A, Bc, C, D = classical[idx]
                    va, vb, vc, vd = col[A], col[Bc], col[C], col[D]
                    if vb is not None and vc is not None:
                        want = [(A, circ[vb][vc]), (D, star[vc][vb])]
                    elif va is not None and vd is not None:
                        x, y = s_inv[(va, vd)]
                        want = [(Bc, x), (C, y)]
                    elif vb is not None and vd is not None:
                        y = beta_inv[vb][vd]
                        want = [(C, y), (A, circ[vb][y])]
                    elif vc is not None and va is not None:
                        x = alpha_inv[vc][va]
                        want = [(Bc, x), (D, star[vc][x])]
                    else:
                        want = []
                    # cells may coincide at a kink, so a list, not a dict
                    new = []
                    for k, v in want:
                        if col[k] is None:
                            new.append((k, v))
                        elif col[k] != v:
                            return False
                for k, v in new:
                    if col[k] is None:
                        col[k] = v
                        trail.append(k)
                        queue.append(k)
                    elif col[k] != v:
                        return False
        return True

    col = [None] * ncells

    def search(start):
        i = start
        while i < ncells and col[i] is not None:
            i += 1
        if i == ncells:
            return 1
        total = 0
        for v in range(n):
            trail = [i]
            col[i] = v
            if propagate(col, [i], trail):
                total += search(i + 1)
            for k in trail:
                col[k] = None
        return total

    return search(0)


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def linear_form(B):
    """(a, b, c, d) with x o y = ax + by, x * y = cx + dy over Z/p, or None."""
    n = B.n
    if not _is_prime(n) or B.circ[0][0] or B.star[0][0]:
        return None
    a, b = B.circ[1][0], B.circ[0][1]
    c, d = B.star[1][0], B.star[0][1]
    for x in range(n):
        for y in range(n):
            if B.circ[x][y] != (a * x + b * y) % n or B.star[x][y] != (c * x + d * y) % n:
                return None
    return a, b, c, d


def _linear_scale(f, p):
    k = f[1] if len(f) > 1 else 0
    return k if all(f[x] == (k * x) % p for x in range(p)) else None


def _rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                k = rows[r][col]
                rows[r] = [(v - k * w) % p for v, w in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _count_linear(ncells, classical, virtual, p, form, k=None):
    a, b, c, d = form
    rows = []
    for A, Bc, C, D in classical:
        row = [0] * ncells
        row[A] += 1
        row[Bc] -= a
        row[C] -= b
        rows.append(row)
        row = [0] * ncells
        row[D] += 1
        row[C] -= c
        row[Bc] -= d
        rows.append(row)
    for x, y, e in virtual:
        row = [0] * ncells
        row[y] += 1
        row[x] -= k if e > 0 else pow(k, -1, p)
        rows.append(row)
    return p ** (ncells - _rank_mod_p(rows, p))


def _dispatch(ncells, classical, virtual, B, f, method):
    if method not in ("auto", "search", "linear"):
        raise ValueError(f"unknown method {method!r}")
    if method != "search":
        form = linear_form(B)
        k = _linear_scale(f, B.n) if f is not None else None
        if form is not None and (f is None or k is not None):
            return _count_linear(ncells, classical, virtual, B.n, form, k)
        if method == "linear":
            raise ValueError("biquandle is not linear over a prime field")
    return _count(ncells, classical, virtual, B, f)


def count_colorings(code, B, method="auto"):
    """Colourings of long arcs by the biquandle B.

    method "auto" solves a linear system for linear biquandles over Z/p
    and backtracks otherwise; "search" always backtracks.
    """
    if isinstance(B, VirtualBiquandle):
        raise TypeError("use count_virtual_colorings for a virtual biquandle")
    ncells, end_cell, _ = _long_arc_cells(code)
    return _dispatch(ncells, _constraints(code, end_cell), [], B, None, method)


def count_virtual_colorings(code, vb, method="auto"):
    """Colourings of short arcs by a virtual biquandle (B, f)."""
    ncells, end_cell, virt = _short_arc_cells(code)
    return _dispatch(ncells, _constraints(code, end_cell), virt, vb.base, vb.f, method)


# Alexander modules
@dataclass(frozen=True)
class LaurentPresentation:
    flavor: str
    generators: tuple
    relations: tuple       # rows of LaurentPoly, one column per generator

    @property
    def square(self):
        return len(self.relations) == len(self.generators)


_S_INV = LaurentPoly.monomial(0, -1)
_T = LaurentPoly.monomial(1, 0)
_S = LaurentPoly.monomial(0, 1)


def _relation_rows(code, end_cell, ngen, circ_coeffs, star_coeff):
    """Rows A - (p B + q C) and D - r C for every crossing."""
    p, q = circ_coeffs
    rows = []
    for A, B, C, D in _constraints(code, end_cell):
        row = [ZERO] * ngen
        row[A] = row[A] + ONE
        row[B] = row[B] - p
        row[C] = row[C] - q
        rows.append(row)
        row = [ZERO] * ngen
        row[D] = row[D] + ONE
        row[C] = row[C] - star_coeff
        rows.append(row)
    return rows


def abq(code):
    """Alexander biquandle module: generators are the long arcs."""
    ngen, end_cell, _ = _long_arc_cells(code)
    p = _S_INV * _T
    q = _S_INV * (ONE - _T)
    rows = _relation_rows(code, end_cell, ngen, (p, q), _S_INV)
    return LaurentPresentation("ABQ", tuple(range(ngen)), tuple(tuple(r) for r in rows))


def vaq(code):
    """Virtual Alexander quandle module: generators are the short arcs."""
    ngen, end_cell, virt = _short_arc_cells(code)
    rows = _relation_rows(code, end_cell, ngen, (_T, ONE - _T), ONE)
    for a, b, e in virt:
        row = [ZERO] * ngen
        row[b] = row[b] + ONE
        row[a] = row[a] - LaurentPoly.monomial(0, e)
        rows.append(row)
    return LaurentPresentation("VAQ", tuple(range(ngen)), tuple(tuple(r) for r in rows))


def _is_unit(p):
    if len(p.terms) != 1:
        return False
    (_, c), = p.terms.items()
    return abs(c) == 1


def _unit_inverse(p):
    (e, c), = p.terms.items()
    return LaurentPoly({(-e[0], -e[1]): c})


def reduced_determinant(rows):
    """det up to a unit: pivot away unit entries, then Bareiss on the rest."""
    M = [list(r) for r in rows]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    unit = ONE
    live_rows = list(range(n))
    live_cols = list(range(n))
    while True:
        pivot = None
        for r in live_rows:
            for c in live_cols:
                if M[r][c] and _is_unit(M[r][c]):
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r0, c0 = pivot
        inv = _unit_inverse(M[r0][c0])
        unit = unit * M[r0][c0]
        live_rows.remove(r0)
        live_cols.remove(c0)
        for r in live_rows:
            if M[r][c0]:
                k = M[r][c0] * inv
                for c in live_cols:
                    if M[r0][c]:
                        M[r][c] = M[r][c] - k * M[r0][c]
                M[r][c0] = ZERO
    sub = [[M[r][c] for c in live_cols] for r in live_rows]
    return det(sub) * unit


def presentation_polynomial(pres):
    """Generator of the 0th Fitting ideal, normalised up to units."""
    if not pres.square:
        return ZERO
    return normalize_units(reduced_determinant(pres.relations))


def generalized_alexander(code):
    return presentation_polynomial(abq(code))


def xi(code):
    return presentation_polynomial(vaq(code))
