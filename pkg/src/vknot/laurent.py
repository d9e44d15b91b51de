"""Sparse Laurent polynomials in two variables with integer coefficients.

The variables are called (t, s) for Alexander-type polynomials; the index
polynomial reuses the same type and just prints them as (x, y).
"""

from functools import reduce


class LaurentPoly:
    """Immutable map (exp_t, exp_s) -> nonzero int."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if not isinstance(c, int):
                    raise TypeError("coefficients must be integers")
                if c:
                    e = (int(key[0]), int(key[1]))
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, et=0, es=0, c=1):
        return cls({(et, es): c})

    @classmethod
    def from_json(cls, triples):
        return cls({(a, b): c for a, b, c in triples})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for (a, b), c in self._terms.items():
            for (p, q), d in other._terms.items():
                key = (a + p, b + q)
                out[key] = out.get(key, 0) + c * d
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPoly({(e[0] * k, e[1] * k): c ** (-k)})
        return reduce(lambda a, b: a * b, [self] * k, LaurentPoly.const(1))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def shift(self, dt, ds):
        return LaurentPoly({(a + dt, b + ds): c for (a, b), c in self._terms.items()})

    def min_exponents(self):
        if not self._terms:
            return (0, 0)
        return (min(a for a, _ in self._terms), min(b for _, b in self._terms))

    def evaluate(self, t, s, modulus=None):
        """Value at (t, s); with a modulus, t and s must be invertible mod it."""
        total = 0
        for (a, b), c in self._terms.items():
            if modulus is None:
                total += c * t ** a * s ** b
            else:
                total += c * pow(t, a, modulus) * pow(s, b, modulus)
        return total % modulus if modulus else total

    def to_json(self):
        return [[a, b, c] for (a, b), c in sorted(self._terms.items())]

    def format(self, names=("t", "s")):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), reverse=True):
            mono = []
            for name, e in zip(names, (a, b)):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            body = "*".join(mono)
            if not body:
                txt = str(abs(c))
            elif abs(c) == 1:
                txt = body
            else:
                txt = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, txt))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sg} {tx}" for sg, tx in parts[1:])

    def __repr__(self):
        return f"LaurentPoly({self.format()})"

    __str__ = format


T = LaurentPoly.monomial(1, 0)
S = LaurentPoly.monomial(0, 1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def normalize_units(p):
    """Representative of the orbit of p under multiplication by +-t^k s^l.

    Minimal exponents are moved to zero and the lexicographically first
    term gets a positive coefficient.
    """
    if p.is_zero():
        return p
    mt, ms = p.min_exponents()
    q = p.shift(-mt, -ms)
    first = min(q._terms)
    return -q if q._terms[first] < 0 else q


def units_equivalent(p, q):
    return normalize_units(p) == normalize_units(q)


def _lead(p):
    # lex-largest exponent
    e = max(p._terms)
    return e, p._terms[e]


def _exact_div(p, q):
    """Exact quotient p / q of polynomials; raises if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError
    (qa, qb), qc = _lead(q)
    quot = {}
    rem = dict(p._terms)
    while rem:
        e = max(rem)
        c = rem[e]
        da, db = e[0] - qa, e[1] - qb
        if c % qc:
            raise ArithmeticError("inexact division")
        k = c // qc
        quot[(da, db)] = quot.get((da, db), 0) + k
        for (a, b), d in q._terms.items():
            key = (a + da, b + db)
            v = rem.get(key, 0) - k * d
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return LaurentPoly(quot)


def det(matrix):
    """Determinant of a square matrix of LaurentPoly via fraction-free Bareiss."""
    M = [[x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in row] for row in matrix]
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    # clear negative exponents row by row; remember the monomial factor
    ft = fs = 0
    for i, row in enumerate(M):
        mt = min((x.min_exponents()[0] for x in row if x), default=0)
        ms = min((x.min_exponents()[1] for x in row if x), default=0)
        M[i] = [x.shift(-mt, -ms) for x in row]
        ft += mt
        fs += ms
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _exact_div(M[i][j] * pivot - M[i][k] * M[k][j], prev)
            M[i][k] = ZERO
        prev = pivot
    return (M[n - 1][n - 1] * sign).shift(ft, fs)
