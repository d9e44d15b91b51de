"""Slow, independent reference implementations used only by the tests."""

from itertools import permutations, product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from vknot.algebra import permutation_parity
from vknot.laurent import ONE, ZERO


def leibniz_det(M):
    """Determinant by the permutation expansion."""
    n = len(M)
    total = ZERO
    for perm in permutations(range(n)):
        term = ONE
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total + permutation_parity(list(perm)) * term
    return total


def sympy_invariants(M):
    """Nonzero Smith invariants via sympy."""
    if not M or not M[0]:
        return []
    D = sympy_snf(Matrix(M), domain=ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    return sorted(out)


# colourings by exhaustive enumeration over long arcs or short arcs
def brute_colorings(code, B, f=None):
    """Count colourings by trying every assignment of colours to short arcs."""
    n = B.n
    comps = code.components
    offs, base = [], 0
    for comp in comps:
        offs.append(base)
        base += max(len(comp), 1)
    ends, virt = {}, []
    for k, comp in enumerate(comps):
        m = len(comp)
        for i, p in enumerate(comp):
            cin, cout = offs[k] + (i - 1) % m, offs[k] + i
            if p.kind == "V":
                virt.append((cin, cout, p.sign))
            else:
                ends[(p.id, p.kind, "in")] = cin
                ends[(p.id, p.kind, "out")] = cout
    finv = None
    if f is not None:
        finv = [0] * n
        for x, y in enumerate(f):
            finv[y] = x
    count = 0
    for col in product(range(n), repeat=base):
        ok = True
        for c in code.crossings:
            ui, uo = col[ends[(c, "U", "in")]], col[ends[(c, "U", "out")]]
            oi, oo = col[ends[(c, "O", "in")]], col[ends[(c, "O", "out")]]
            if code.sign(c) > 0:
                # left side (uo, oi), right side (ui, oo)
                left, right = (uo, oi), (ui, oo)
            else:
                left, right = (ui, oo), (uo, oi)
            x, y = left
            if right != (B.circ[x][y], B.star[y][x]):
                ok = False
                break
        if ok:
            for a, b, e in virt:
                g = f if f is not None else list(range(n))
                want = g[col[a]] if e > 0 else (finv or g)[col[a]]
                if col[b] != want:
                    ok = False
                    break
        count += ok
    return count


# standard Khovanov homology of a classical diagram
def standard_khovanov(code):
    """Unreduced integral Khovanov homology, one entry per cube degree.

    Built from scratch: circles by union-find on crossing ends, the
    0-smoothing oriented at positive and disoriented at negative
    crossings, the usual m and Delta, and the sign (-1)^(number of 1s
    before the changing crossing). Returns {h: (rank, torsion)}.
    """
    assert not code.virtual_ids, "classical diagrams only"
    assert all(len(comp) for comp in code.components), "no free loops"
    xs = list(code.crossings)
    n = len(xs)
    ends = [(c, r, io) for c in xs for r in ("O", "U") for io in ("in", "out")]
    links = []
    for comp in code.components:
        for a, b in zip(comp, comp[1:] + comp[:1]):
            links.append(((a.id, a.kind, "out"), (b.id, b.kind, "in")))

    def circles(bits):
        parent = {e: e for e in ends}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        for a, b in links:
            union(a, b)
        for c, bit in zip(xs, bits):
            if (code.sign(c) > 0) == (bit == 0):
                union((c, "O", "in"), (c, "U", "out"))
                union((c, "U", "in"), (c, "O", "out"))
            else:
                union((c, "O", "in"), (c, "U", "in"))
                union((c, "O", "out"), (c, "U", "out"))
        label = {e: find(e) for e in ends}
        return sorted(set(label.values())), label

    states = {bits: circles(bits) for bits in product((0, 1), repeat=n)}
    basis = {h: [] for h in range(n + 1)}
    index = {}
    for bits in sorted(states):
        for x in product((0, 1), repeat=len(states[bits][0])):
            index[(bits, x)] = len(basis[sum(bits)])
            basis[sum(bits)].append((bits, x))
    mats = {h: [[0] * len(basis[h]) for _ in basis[h + 1]] for h in range(n)}
    for bits, (roots, lab_s) in states.items():
        for i in range(n):
            if bits[i]:
                continue
            tb = bits[:i] + (1,) + bits[i + 1:]
            troots, lab_t = states[tb]
            image = {r: {lab_t[e] for e in ends if lab_s[e] == r} for r in roots}
            preimage = {t: {r for r in roots if t in image[r]} for t in troots}
            sign = (-1) ** sum(bits[:i])
            for x in product((0, 1), repeat=len(roots)):
                val = dict(zip(roots, x))
                outs = [{}]
                for r in roots:
                    tg = sorted(image[r])
                    if len(tg) == 2:                      # split
                        pairs = [(0, 1), (1, 0)] if val[r] == 0 else [(1, 1)]
                        outs = [{**o, tg[0]: a, tg[1]: b} for o in outs for a, b in pairs]
                    elif len(preimage[tg[0]]) == 2:       # merge, handled once
                        r1, r2 = sorted(preimage[tg[0]])
                        if r != r1:
                            continue
                        v = val[r1] + val[r2]
                        outs = [{**o, tg[0]: v} for o in outs] if v <= 1 else []
                    else:                                 # spectator
                        outs = [{**o, tg[0]: val[r]} for o in outs]
                for o in outs:
                    y = tuple(o[t] for t in troots)
                    mats[sum(bits)][index[(tb, y)]][index[(bits, x)]] += sign
    out = {}
    for h in range(n + 1):
        d_out = sympy_invariants(mats[h]) if h < n and basis[h + 1] else []
        d_in = sympy_invariants(mats[h - 1]) if h > 0 and basis[h] else []
        out[h] = (len(basis[h]) - len(d_out) - len(d_in), tuple(k for k in d_in if k > 1))
    return out
