"""The Frobenius algebra V = Z[X]/(X^2) with the involution tau.

Elements are pairs (a, b) meaning a*1 + b*X. Tensors V (x) V are dicts
{(i, j): coeff} over basis indices 0 = 1 and 1 = X.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class FrobeniusElement:
    a: int = 0
    b: int = 0

    def __add__(self, other):
        return FrobeniusElement(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return FrobeniusElement(-self.a, -self.b)

    def scale(self, k):
        return FrobeniusElement(k * self.a, k * self.b)


ONE = FrobeniusElement(1, 0)
X = FrobeniusElement(0, 1)
BASIS = (ONE, X)


def m(u, v):
    """Product with X^2 = 0."""
    return FrobeniusElement(u.a * v.a, u.a * v.b + u.b * v.a)


def delta(u):
    """Comultiplication: 1 -> 1(x)X + X(x)1, X -> X(x)X."""
    out = {}
    if u.a:
        out[(0, 1)] = u.a
        out[(1, 0)] = u.a
    if u.b:
        out[(1, 1)] = out.get((1, 1), 0) + u.b
    return {k: v for k, v in out.items() if v}


def tau(u):
    return FrobeniusElement(u.a, -u.b)


# basis-level tables used by the chain complex
def m_basis(i, j):
    """Product of basis vectors i, j as (index, coeff) or None."""
    k = i + j
    return None if k > 1 else (k, 1)


def delta_basis(i):
    """Coproduct of basis vector i as a list of ((i1, i2), coeff)."""
    return [((0, 1), 1), ((1, 0), 1)] if i == 0 else [((1, 1), 1)]


def tau_basis(i, power=1):
    """tau^power on basis vector i returns the sign of the image."""
    return -1 if (i == 1 and power % 2) else 1
