"""Exact integer linear algebra.

Smith normal form, integer and mod-2 linear solving, and permutation
signs. Everything runs on Python ints, so there is no overflow to worry
about.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple   # d_1 | d_2 | ... | d_r, all positive
    rank: int
    U: tuple = None     # U * M * V = diag(invariants), when requested
    V: tuple = None


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _check_matrix(M):
    rows = [list(r) for r in M]
    if rows:
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            for x in r:
                if not isinstance(x, int):
                    raise TypeError(f"non-integer entry {x!r}")
    return rows


def smith_normal_form(M, transforms=False):
    """Smith normal form of an integer matrix given as a list of rows.

    With ``transforms=True`` the unimodular U, V with U*M*V = D are
    returned too.
    """
    A = _check_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        if k:
            rs, rd = A[src], A[dst]
            for c in range(n):
                if rs[c]:
                    rd[c] += k * rs[c]
            if U is not None:
                us, ud = U[src], U[dst]
                for c in range(m):
                    if us[c]:
                        ud[c] += k * us[c]

    def add_col(dst, src, k):
        if k:
            for row in A:
                if row[src]:
                    row[dst] += k * row[src]
            if V is not None:
                for row in V:
                    if row[src]:
                        row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot on the smallest nonzero entry of the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover into the pivot spot and retry
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility of the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    inv = tuple(A[i][i] for i in range(t))
    if transforms:
        return SmithForm(inv, t, tuple(map(tuple, U)), tuple(map(tuple, V)))
    return SmithForm(inv, t)


def sparse_smith_invariants(entries, nrows, ncols):
    """Nonzero SNF invariants of a sparse matrix {(row, col): value}.

    Unit pivots are eliminated sparsely first; the leftover block goes
    through the dense routine. Returns the sorted invariant list.
    """
    rows = {}
    cols = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    ones = 0
    while True:
        pivot = None
        # prefer unit entries in short columns to limit fill-in
        for c, rs in sorted(cols.items(), key=lambda kv: len(kv[1])):
            for r in rs:
                if abs(rows[r][c]) == 1:
                    if pivot is None or len(rows[r]) < len(rows[pivot[0]]):
                        pivot = (r, c)
            if pivot is not None:
                break
        if pivot is None:
            break
        r0, c0 = pivot
        prow = rows.pop(r0)
        pv = prow[c0]
        for c in prow:
            cols[c].discard(r0)
        for r in list(cols[c0]):
            row = rows[r]
            k = row[c0] * pv     # pv is +-1, so row -= (row[c0]/pv) * prow
            for c, v in prow.items():
                nv = row.get(c, 0) - k * v
                if nv:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        cols[c].discard(r)
            if not row:
                del rows[r]
        for c in list(cols):
            if not cols[c]:
                del cols[c]
        cols.pop(c0, None)
        ones += 1
    invs = [1] * ones
    if rows:
        rlist = sorted(rows)
        clist = sorted(cols)
        cidx = {c: i for i, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for i, r in enumerate(rlist):
            for c, v in rows[r].items():
                dense[i][cidx[c]] = v
        invs.extend(smith_normal_form(dense).invariants)
    return sorted(invs)


def solve_integer(M, b):
    """An integer solution x of M x = b, or None if there is none."""
    A = _check_matrix(M)
    m = len(A)
    if len(b) != m:
        raise ValueError("dimension mismatch")
    n = len(A[0]) if m else 0
    if m == 0:
        return []
    if n == 0:
        return [] if not any(b) else None
    sf = smith_normal_form(A, transforms=True)
    Ub = [sum(u * x for u, x in zip(row, b)) for row in sf.U]
    y = [0] * n
    for i, d in enumerate(sf.invariants):
        if Ub[i] % d:
            return None
        y[i] = Ub[i] // d
    if any(Ub[sf.rank:]):
        return None
    return [sum(sf.V[i][j] * y[j] for j in range(n)) for i in range(n)]


def solve_mod2(M, b):
    """A 0/1 solution of M x = b over GF(2), or None."""
    A = [[x & 1 for x in row] + [bv & 1] for row, bv in zip(_check_matrix(M), b)]
    m = len(A)
    n = len(A[0]) - 1 if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(m):
            if i != r and A[i][c]:
                A[i] = [x ^ y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][n] for i in range(r, m)):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    return x


def permutation_parity(perm):
    """+1 or -1 for a permutation of range(len(perm))."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_sign(sigma1, sigma2):
    """Sign of sigma1^{-1} o sigma2 for two orders of the same set.

    An order is a sequence listing the images of 1..n.
    """
    sigma1, sigma2 = list(sigma1), list(sigma2)
    if len(sigma1) != len(sigma2) or set(sigma1) != set(sigma2) or len(set(sigma1)) != len(sigma1):
        raise ValueError("orders of different sets")
    pos = {x: i for i, x in enumerate(sigma1)}
    return permutation_parity([pos[x] for x in sigma2])
