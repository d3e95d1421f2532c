"""Exact coefficient rings: Laurent polynomials in q, and polynomials in q, z, w.

Everything is sparse and integer-exact.  A polynomial is a map from exponents
to nonzero arbitrary-precision integer coefficients; the zero polynomial is
the empty map.  Identities that would involve denominators are handled by the
callers in denominator-cleared form, so no fraction-field arithmetic is ever
needed here.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Sparse Laurent polynomial in q over the integers.

    ``terms`` maps an integer q-exponent to a nonzero integer coefficient.
    Instances are treated as immutable: no method mutates ``terms`` in place,
    and two values are equal exactly when their term maps are equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {int(e): c for e, c in terms.items() if c}
        else:
            self.terms = {}

    # ---- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def from_int(cls, c: int) -> "LaurentPoly":
        """Embed an integer scalar."""
        return cls({0: c})

    @classmethod
    def q_power(cls, e: int, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * q**e."""
        return cls({e: coeff})

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls({1: 1})

    # ---- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        r = LaurentPoly.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # ---- structure -------------------------------------------------------

    def min_exp(self):
        return min(self.terms) if self.terms else None

    def max_exp(self):
        return max(self.terms) if self.terms else None

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e + k: c for e, c in self.terms.items()}
        return r

    def unit_inverse(self) -> "LaurentPoly":
        """Invert a unit monomial (+-q**k); raises for anything else."""
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            if c in (1, -1):
                return LaurentPoly({-e: c})
        raise ValueError("not a unit in Z[q, q^-1]: %s" % self)

    def divide_exact(self, den: "LaurentPoly"):
        """Exact quotient self / den in Z[q, q^-1], or None when inexact."""
        if not den.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly()
        num = dict(self.terms)
        dhi = max(den.terms)
        dlead = den.terms[dhi]
        # the lowest exponent any true quotient can have
        qlow = min(self.terms) - min(den.terms)
        quot = {}
        while num:
            e = max(num)
            qe = e - dhi
            if qe < qlow:
                return None
            c = num[e]
            if c % dlead:
                return None
            qc = c // dlead
            quot[qe] = quot.get(qe, 0) + qc
            for de, dc in den.terms.items():
                ee = qe + de
                s = num.get(ee, 0) - qc * dc
                if s:
                    num[ee] = s
                else:
                    num.pop(ee, None)
        return LaurentPoly(quot)

    def evaluate(self, q0) -> Fraction:
        """Exact value at a rational point q0 (nonzero)."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * q0**e
        return total

    # ---- serialization and display ----------------------------------------

    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in obj.items()})

    def __repr__(self):
        return "LaurentPoly(%r)" % (self.terms,)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                var = "q" if e == 1 else "q^%d" % e
                body = var if abs(c) == 1 else "%d*%s" % (abs(c), var)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


class PolyQZW:
    """Sparse polynomial with integer q-exponents and nonnegative z, w degrees.

    ``terms`` maps (q_exp, z_deg, w_deg) to a nonzero integer coefficient,
    with the same normalization rule as :class:`LaurentPoly`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            for key, c in terms.items():
                if not c:
                    continue
                qe, zd, wd = key
                if zd < 0 or wd < 0:
                    raise ValueError("z and w degrees must be nonnegative")
                out[(int(qe), int(zd), int(wd))] = c
        self.terms = out

    @classmethod
    def zero(cls) -> "PolyQZW":
        return cls()

    @classmethod
    def one(cls) -> "PolyQZW":
        return cls({(0, 0, 0): 1})

    @classmethod
    def from_int(cls, c: int) -> "PolyQZW":
        return cls({(0, 0, 0): c})

    @classmethod
    def from_laurent(cls, p: LaurentPoly, z_deg: int = 0, w_deg: int = 0) -> "PolyQZW":
        """Embed a Laurent polynomial, optionally times z**z_deg * w**w_deg."""
        return cls({(e, z_deg, w_deg): c for e, c in p.terms.items()})

    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyQZW):
            return other
        if isinstance(other, int):
            return PolyQZW({(0, 0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        r = PolyQZW.__new__(PolyQZW)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = PolyQZW.__new__(PolyQZW)
        r.terms = {k: -c for k, c in self.terms.items()}
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (q1, z1, w1), c1 in self.terms.items():
            for (q2, z2, w2), c2 in other.terms.items():
                k = (q1 + q2, z1 + z2, w1 + w2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        r = PolyQZW.__new__(PolyQZW)
        r.terms = out
        return r

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def substitute(self, z=None, w=None) -> "PolyQZW":
        """Substitute integer values for z and/or w (exactly)."""
        out = {}
        for (qe, zd, wd), c in self.terms.items():
            if z is not None:
                c *= z**zd
                zd = 0
            if w is not None:
                c *= w**wd
                wd = 0
            if not c:
                continue
            k = (qe, zd, wd)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        r = PolyQZW.__new__(PolyQZW)
        r.terms = out
        return r

    def evaluate(self, q0, z0, w0=1) -> Fraction:
        q0, z0, w0 = Fraction(q0), Fraction(z0), Fraction(w0)
        if q0 == 0:
            raise ZeroDivisionError("cannot evaluate at q = 0")
        total = Fraction(0)
        for (qe, zd, wd), c in self.terms.items():
            total += c * q0**qe * z0**zd * w0**wd
        return total

    def degrees(self):
        """(q_min, q_max, z_max, w_max) over all terms, or None when zero."""
        if not self.terms:
            return None
        qs = [k[0] for k in self.terms]
        return (min(qs), max(qs), max(k[1] for k in self.terms), max(k[2] for k in self.terms))

    def to_json(self) -> dict:
        return {"%d,%d,%d" % k: c for k, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyQZW":
        out = {}
        for key, c in obj.items():
            qe, zd, wd = (int(x) for x in key.split(","))
            out[(qe, zd, wd)] = int(c)
        return cls(out)

    def __repr__(self):
        return "PolyQZW(%r)" % (self.terms,)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            qe, zd, wd = key
            c = self.terms[key]
            factors = []
            if qe:
                factors.append("q" if qe == 1 else "q^%d" % qe)
            if zd:
                factors.append("z" if zd == 1 else "z^%d" % zd)
            if wd:
                factors.append("w" if wd == 1 else "w^%d" % wd)
            body = "*".join(factors) if factors else "1"
            if factors and abs(c) != 1:
                body = "%d*%s" % (abs(c), body)
            elif not factors:
                body = str(abs(c))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def braided_int_scalar(m: int, step: int = -2) -> LaurentPoly:
    """The scalar braided integer: sum of q**(step*s) for s = 0 .. m-1.

    This is the geometric-sum form of (1 - q**(step*m)) / (1 - q**step).
    ``m = 0`` yields the empty sum (zero); negative ``m`` is rejected.
    """
    if m < 0:
        raise ValueError("braided integer needs m >= 0, got %d" % m)
    terms = {}
    for s in range(m):
        e = step * s
        terms[e] = terms.get(e, 0) + 1
    return LaurentPoly(terms)
