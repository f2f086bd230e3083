"""Finite fields GF(p^k) in polynomial representation.

Elements are encoded as integers 0..q-1: the coefficient vector
(c0, c1, ..., c_{k-1}) of c0 + c1 x + ... is the base-p number sum c_i p^i.
So 0 and 1 are the field's zero and one, and for k=1 the encoding is the
residue itself. Arithmetic is table-driven; q stays small here.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product


class FieldError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p^k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# polynomials over GF(p): coefficient tuples, lowest degree first, no trailing zeros

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _polymod(a, m, p):
    a = list(_trim(a))
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = list(_trim(a))
    return tuple(a)


def _monic_polys(p, deg):
    """Monic polynomials of degree ``deg``; lower coefficients most-significant first."""
    for high_first in product(range(p), repeat=deg):
        yield tuple(reversed(high_first)) + (1,)


def is_irreducible(m, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = _trim(m)
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _polymod(m, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p, k):
    """Least monic irreducible of degree k.

    Candidates are ordered lexicographically by coefficients read from x^(k-1)
    down to the constant term (so x^3+x+1 precedes x^3+x^2+1).
    """
    for m in _monic_polys(p, k):
        if is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    """Arithmetic suite for GF(p^k) over integer-encoded elements."""

    def __init__(self, q, modulus=None):
        p, k = prime_power(q)
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = _trim(modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.k, self.q, self.modulus = p, k, q, modulus
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self._inv = [None] + [next(b for b in range(1, q) if self.mul_table[a][b] == 1)
                              for a in range(1, q)]
        self._neg = [next(b for b in range(q) if self.add_table[a][b] == 0)
                     for a in range(q)]
        self.squares = frozenset(self.mul_table[c][c] for c in range(q))

    def __repr__(self):
        return f"GF({self.q})"

    def coeffs(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def element(self, coeffs):
        coeffs = tuple(coeffs) + (0,) * (self.k - len(coeffs))
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficients {coeffs} for GF({self.q})")
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def _add(self, a, b):
        return self.element([(x + y) % self.p
                             for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _mul(self, a, b):
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.element(_polymod(prod, self.modulus, self.p))

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._inv[a]

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            e >>= 1
        return result

    def is_square(self, b):
        """True iff b = c*c for some c; zero counts as a square."""
        return b in self.squares

    def frobenius(self, a):
        return self.pow(a, self.p)

    def primitive_element(self):
        for g in (range(2, self.q) if self.q > 2 else [1]):
            if len({self.pow(g, e) for e in range(1, self.q)}) == self.q - 1:
                return g
        return 1

    def elements(self):
        return range(self.q)

    def format(self, a, var="i"):
        """Human form, e.g. 1+2i for coefficients (1, 2)."""
        terms = []
        for d, c in enumerate(self.coeffs(a)):
            if c == 0:
                continue
            mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms) or "0"
