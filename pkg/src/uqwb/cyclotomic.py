"""Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are polynomials in zeta_M with rational coefficients, reduced
modulo the M-th cyclotomic polynomial.  The reduction data (degree and
rewrite rows for zeta^k, k >= phi(M)) lives on the owning session object,
so all arithmetic stays in pure Fraction operations with no floats.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def poly_trim(c):
    """Drop trailing zeros of a Fraction coefficient list (in place copy)."""
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def poly_divmod(a, b):
    """Quotient and remainder of Fraction polynomials, b nonzero."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [_F0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        f = a[i + db] / lb
        if f:
            q[i] = f
            for j, bj in enumerate(b):
                a[i + j] -= f * bj
    return q, poly_trim(a)


def poly_xgcd(a, b):
    """Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = poly_trim(list(a)), poly_trim(list(b))
    s0, s1 = [_F1], []
    t0, t1 = [], [_F1]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    return r0, s0, t0


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return poly_trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    out = [_F0] * n
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return poly_trim(out)


class Cyc:
    """An element of Q(zeta_M), in canonical reduced form.

    ``c`` is a tuple of Fractions of length phi(M); ``s`` is the owning
    session, which carries the reduction rows.
    """

    __slots__ = ("s", "c")

    def __init__(self, session, coeffs):
        self.s = session
        self.c = coeffs  # tuple[Fraction], len == session.phi

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(session, r):
        v = [_F0] * session.phi
        v[0] = Fraction(r)
        return Cyc(session, tuple(v))

    @staticmethod
    def zeta_power(session, e):
        """zeta_M^e in reduced form (e any integer)."""
        return session._zeta_table[e % session.M]

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def as_rational(self):
        """The element as a Fraction, or None if it is not rational."""
        return self.c[0] if self.is_rational() else None

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        return isinstance(other, Cyc) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    # -- field operations ---------------------------------------------

    def __add__(self, other):
        return Cyc(self.s, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return Cyc(self.s, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return Cyc(self.s, tuple(-a for a in self.c))

    def __mul__(self, other):
        a, b = self.c, other.c
        ra = not any(a[1:])
        if ra:
            f = a[0]
            if not f:
                return self.s.cyc_zero
            return Cyc(self.s, tuple(f * x for x in b))
        if not any(b[1:]):
            f = b[0]
            if not f:
                return self.s.cyc_zero
            return Cyc(self.s, tuple(f * x for x in a))
        phi = self.s.phi
        conv = [_F0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:phi]
        red = self.s._red_rows  # rows for zeta^k, k = phi .. 2*phi-2
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = red[k - phi]
                for j, rj in enumerate(row):
                    if rj:
                        out[j] += ck * rj
        return Cyc(self.s, tuple(out))

    def scale(self, f):
        """Multiply by a Fraction."""
        if not f:
            return self.s.cyc_zero
        return Cyc(self.s, tuple(f * x for x in self.c))

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        r = self.as_rational()
        if r is not None:
            return Cyc.from_rational(self.s, 1 / r)
        g, sp, _ = poly_xgcd(poly_trim(list(self.c)), self.s._cyclo_poly)
        # g is a nonzero constant since the cyclotomic polynomial is
        # irreducible over Q
        assert len(g) == 1
        inv_g = 1 / g[0]
        v = [x * inv_g for x in sp]
        v += [_F0] * (self.s.phi - len(v))
        return Cyc(self.s, tuple(v[: self.s.phi]))

    def __truediv__(self, other):
        return self * other.inv()

    def __repr__(self):
        return "Cyc(%s)" % (self.s.format_cyc(self),)
