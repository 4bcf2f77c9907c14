"""Session configuration and the arithmetic context built from it.

A session fixes ell (so q = exp(2*pi*i/ell) is a primitive ell-th root of
unity), the weight denominator N (weights live in (1/N)Z), the cyclotomic
order M = 2*N*ell, and the coefficient mode used for the K = q^H series on
nilpotent blocks.
"""

from __future__ import annotations

import re
from fractions import Fraction

from sympy import Poly, cyclotomic_poly, symbols

from .cyclotomic import Cyc
from .errors import RejectedInputError
from .scalars import Scalar

MODE_EXPONENTIAL = "exponential"
MODE_PAPER_LITERAL = "paper-literal"


class Session:
    """Arithmetic context: exact model of Q(zeta_M)(tau) for fixed ell, N."""

    def __init__(self, ell, weight_denominator=2, mode=MODE_EXPONENTIAL):
        if ell < 2:
            raise RejectedInputError("ell must be at least 2 (ord(q^2) > 1)")
        if mode not in (MODE_EXPONENTIAL, MODE_PAPER_LITERAL):
            raise RejectedInputError("unknown coefficient mode %r" % (mode,))
        r = ell if ell % 2 == 1 else ell // 2
        if r < 2:
            raise RejectedInputError(
                "r = %d < 2: the simple index range {0,...,r-2} is empty" % r
            )
        if weight_denominator < 1:
            raise RejectedInputError("weight denominator must be positive")
        self.ell = ell
        self.r = r
        self.N = weight_denominator
        self.M = 2 * weight_denominator * ell
        self.mode = mode
        # q = exp(2*pi*i/ell) = zeta_M^{2N} has order exactly ell, so
        # r = ord(q^2) and [n] = 0 exactly when r divides n (required by
        # the truncation E^r = F^r = 0), and q^{k*ell} = 1, which makes
        # the one-dimensional modules of weight k*ell/2 genuine modules
        # for every integer k.
        self._q_exp_unit = 2 * weight_denominator

        x = symbols("x")
        cp = Poly(cyclotomic_poly(self.M, x), x)
        coeffs = [Fraction(int(c)) for c in reversed(cp.all_coeffs())]
        self.phi = len(coeffs) - 1
        self._cyclo_poly = coeffs  # ascending, monic, length phi+1
        self._red_rows = self._build_reduction_rows()
        self._zeta_table = self._build_zeta_table()

        self.cyc_zero = Cyc.from_rational(self, 0)
        self.cyc_one = Cyc.from_rational(self, 1)
        self.zero = Scalar((self.cyc_zero,), (self.cyc_one,))
        self.one = Scalar((self.cyc_one,), (self.cyc_one,))
        self.tau = Scalar((self.cyc_zero, self.cyc_one), (self.cyc_one,))
        self._qint_cache = {}

    def _build_reduction_rows(self):
        """Rows expressing zeta^k, k = phi .. 2*phi-2, in the power basis."""
        phi = self.phi
        base = [-c for c in self._cyclo_poly[:phi]]  # zeta^phi
        rows = [base]
        for _ in range(phi - 2):
            prev = rows[-1]
            nxt = [Fraction(0)] + prev[: phi - 1]
            top = prev[phi - 1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, base)]
            rows.append(nxt)
        return rows

    def _build_zeta_table(self):
        phi = self.phi
        table = []
        cur = [Fraction(0)] * phi
        cur[0] = Fraction(1)
        for e in range(self.M):
            table.append(Cyc(self, tuple(cur)))
            nxt = [Fraction(0)] + cur[: phi - 1]
            top = cur[phi - 1]
            if top:
                base = self._red_rows[0]
                nxt = [a + top * b for a, b in zip(nxt, base)]
            cur = nxt
        return table

    # -- scalar constructors ------------------------------------------

    def from_cyc(self, c):
        return Scalar((c,), (self.cyc_one,))

    def from_rational(self, r):
        return self.from_cyc(Cyc.from_rational(self, r))

    def tau_power(self, s, coeff=None):
        """coeff * tau^s as a Scalar (coeff a Fraction, default 1)."""
        c = Cyc.from_rational(self, 1 if coeff is None else coeff)
        num = (self.cyc_zero,) * s + (c,)
        return Scalar(num, (self.cyc_one,)) if not c.is_zero() else self.zero

    # -- the q-arithmetic the modules are built from ------------------

    def q_power(self, w) -> Cyc:
        """q^w for w in (1/N)Z, with q = exp(2*pi*i/ell)."""
        w = Fraction(w)
        e = w * self._q_exp_unit
        if e.denominator != 1:
            raise RejectedInputError(
                "weight %s not in (1/%d)Z" % (w, self.N)
            )
        return Cyc.zeta_power(self, int(e))

    def quantum_integer(self, n) -> Cyc:
        """[n] = (q^n - q^-n)/(q - q^-1)."""
        if n in self._qint_cache:
            return self._qint_cache[n]
        num = self.q_power(n) - self.q_power(-n)
        den = self.q_power(1) - self.q_power(-1)
        val = num / den
        self._qint_cache[n] = val
        return val

    def degree_drop_coeff(self, s) -> Scalar:
        """Coefficient of the one-step degree drop (H - w)^s in K = q^H.

        Exponential mode: tau^s / s!, the matrix-exponential series.
        Paper-literal mode: tau^s, kept for textual comparison only.
        """
        if s == 0:
            return self.one
        if self.mode == MODE_EXPONENTIAL:
            f = Fraction(1)
            for k in range(2, s + 1):
                f *= k
            return self.tau_power(s, Fraction(1, 1) / f)
        return self.tau_power(s)

    def check_weight(self, w) -> Fraction:
        w = Fraction(w)
        if (w * self.N).denominator != 1:
            raise RejectedInputError("weight %s not in (1/%d)Z" % (w, self.N))
        return w

    # -- text grammar -------------------------------------------------

    def format_cyc(self, c: Cyc) -> str:
        terms = []
        for k, f in enumerate(c.c):
            if f == 0:
                continue
            if k == 0:
                terms.append(str(f))
            elif k == 1:
                terms.append("z" if f == 1 else "%s*z" % f)
            else:
                terms.append("z^%d" % k if f == 1 else "%s*z^%d" % (f, k))
        return "(" + (" + ".join(terms) if terms else "0") + ")"

    def _format_poly(self, poly) -> str:
        terms = [
            "%s*t^%d" % (self.format_cyc(c), k)
            for k, c in enumerate(poly)
            if not c.is_zero()
        ]
        return " + ".join(terms) if terms else "(0)*t^0"

    def format_scalar(self, x: Scalar) -> str:
        num = self._format_poly(x.num)
        if len(x.den) == 1 and x.den[0] == self.cyc_one:
            return num
        return "%s / %s" % (num, self._format_poly(x.den))

    def parse_scalar(self, text: str) -> Scalar:
        num_s, den_s = _split_top(text, "/")
        num = self._parse_poly(num_s)
        if den_s is None:
            den = (self.cyc_one,)
        else:
            den = self._parse_poly(den_s)
        return Scalar._make(num, den)

    def _parse_poly(self, text):
        poly = {}
        for term in _split_terms(text):
            term = term.strip()
            m = re.fullmatch(r"(\(.*\))\s*(?:\*\s*t\^(\d+))?", term)
            if not m:
                raise RejectedInputError("cannot parse scalar term %r" % term)
            coef = self._parse_cyc(m.group(1))
            k = int(m.group(2)) if m.group(2) else 0
            poly[k] = poly.get(k, self.cyc_zero) + coef
        deg = max(poly) if poly else 0
        return tuple(poly.get(k, self.cyc_zero) for k in range(deg + 1))

    def _parse_cyc(self, text) -> Cyc:
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise RejectedInputError("cyclotomic coefficient must be "
                                     "parenthesized: %r" % text)
        v = [Fraction(0)] * self.phi
        for term in inner[1:-1].split("+"):
            term = term.strip().replace("−", "-")
            if not term:
                continue
            m = re.fullmatch(
                r"(-?\d+(?:/\d+)?)?\s*\*?\s*(z(?:\^(\d+))?)?", term
            )
            if not m or (m.group(1) is None and m.group(2) is None):
                raise RejectedInputError("bad cyclotomic term %r" % term)
            f = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            if m.group(2) is None:
                k = 0
            else:
                k = int(m.group(3)) if m.group(3) else 1
            if k >= self.phi:
                c = Cyc.zeta_power(self, k).scale(f)
                v = [a + b for a, b in zip(v, c.c)]
            else:
                v[k] += f
        return Cyc(self, tuple(v))

    def describe(self):
        return {
            "ell": self.ell,
            "r": self.r,
            "N": self.N,
            "M": self.M,
            "mode": self.mode,
        }

    def __repr__(self):
        return "Session(ell=%d, N=%d, mode=%s)" % (self.ell, self.N, self.mode)


def _split_top(text, sep):
    """Split at the first top-level (outside parens) occurrence of sep."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            return text[:i], text[i + 1:]
    return text, None


def _split_terms(text):
    """Split a poly string on top-level '+'."""
    depth = 0
    parts = []
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]
