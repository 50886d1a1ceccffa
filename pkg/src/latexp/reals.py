"""Certified real numbers.

A :class:`CReal` is a lazily evaluated real number that can produce an
enclosing interval at any requested binary precision.  Rational values keep
an exact :class:`~fractions.Fraction` alongside, so comparisons between
rationals never touch floating point.  Intervals come from mpmath's interval
context (outward rounding on every operation); one context is kept per
precision so that no global state is mutated.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from mpmath.ctx_iv import MPIntervalContext
from sympy import integer_nthroot

DEFAULT_PRECISION = 128


def default_precision() -> int:
    env = os.environ.get("LATEXP_PRECISION")
    if env:
        try:
            p = int(env)
        except ValueError:
            return DEFAULT_PRECISION
        if p >= 16:
            return p
    return DEFAULT_PRECISION


@lru_cache(maxsize=None)
def ivctx(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def frac_iv(q: Fraction, ctx: MPIntervalContext):
    q = Fraction(q)
    if q.denominator == 1:
        return ctx.mpf(q.numerator)
    return ctx.mpf(q.numerator) / q.denominator


def iv_bounds(x):
    """Endpoints of an interval as mpmath mpf numbers."""
    from mpmath import mp

    lo, hi = x._mpi_
    return mp.make_mpf(lo), mp.make_mpf(hi)


def iv_mid(x) -> float:
    lo, hi = iv_bounds(x)
    return float((lo + hi) / 2)


def iv_width(x) -> float:
    lo, hi = iv_bounds(x)
    return float(hi - lo)


def iv_abs(x, ctx):
    lo, hi = x.a, x.b
    if lo >= 0:
        return x
    if hi <= 0:
        return -x
    m = hi if hi > -lo else -lo
    return ctx.mpf([0, m])


def iv_max(xs, ctx):
    lo = max(x.a for x in xs)
    hi = max(x.b for x in xs)
    return ctx.mpf([lo, hi])


def iv_min(xs, ctx):
    lo = min(x.a for x in xs)
    hi = min(x.b for x in xs)
    return ctx.mpf([lo, hi])


def _exact_root(q: Fraction, n: int) -> Optional[Fraction]:
    if q < 0:
        return None
    a, ok_a = integer_nthroot(q.numerator, n)
    if not ok_a:
        return None
    b, ok_b = integer_nthroot(q.denominator, n)
    if not ok_b:
        return None
    return Fraction(int(a), int(b))


def exact_pow(q: Fraction, e: Fraction) -> Optional[Fraction]:
    """q**e when it is rational, else None."""
    e = Fraction(e)
    if q == 0:
        return Fraction(0) if e > 0 else None
    root = _exact_root(q, e.denominator) if q > 0 else None
    if root is None:
        return None
    return root ** e.numerator


class CReal:
    """A real number known through certified enclosures."""

    __slots__ = ("_fn", "exact", "_cache")

    def __init__(self, fn: Callable[[int], object], exact: Optional[Fraction] = None):
        self._fn = fn
        self.exact = exact
        self._cache = {}

    @classmethod
    def rational(cls, q) -> "CReal":
        q = Fraction(q)
        return cls(lambda p: frac_iv(q, ivctx(p)), exact=q)

    @classmethod
    def coerce(cls, v) -> "CReal":
        if isinstance(v, CReal):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.rational(v)
        if isinstance(v, float):
            return cls.rational(Fraction(v))
        to_creal = getattr(v, "as_creal", None)
        if to_creal is not None:
            return to_creal()
        raise TypeError(f"cannot interpret {type(v).__name__} as a certified real")

    def iv(self, prec: Optional[int] = None):
        prec = prec or default_precision()
        try:
            return self._cache[prec]
        except KeyError:
            pass
        if self.exact is not None:
            val = frac_iv(self.exact, ivctx(prec))
        else:
            val = ivctx(prec).convert(self._fn(prec))
        self._cache[prec] = val
        return val

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return iv_mid(self.iv(64))

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"CReal({self.exact})"
        return f"CReal(~{float(self):.17g})"

    # arithmetic --------------------------------------------------------
    def _binary(self, other, op, exact_op):
        other = CReal.coerce(other)
        if self.exact is not None and other.exact is not None:
            r = exact_op(self.exact, other.exact)
            if r is not None:
                return CReal.rational(r)
        a, b = self, other
        return CReal(lambda p: op(a.iv(p), b.iv(p)))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y, lambda x, y: x - y)

    def __rsub__(self, other):
        return CReal.coerce(other) - self

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y,
                            lambda x, y: x / y if y != 0 else None)

    def __rtruediv__(self, other):
        return CReal.coerce(other) / self

    def __neg__(self):
        if self.exact is not None:
            return CReal.rational(-self.exact)
        a = self
        return CReal(lambda p: -a.iv(p))

    def __abs__(self):
        if self.exact is not None:
            return CReal.rational(abs(self.exact))
        a = self
        return CReal(lambda p: iv_abs(a.iv(p), ivctx(p)))

    def __pow__(self, e):
        """Power with a rational exponent; the base must be nonnegative unless e is an integer."""
        e = Fraction(e)
        if self.exact is not None:
            if e.denominator == 1 and not (self.exact == 0 and e < 0):
                return CReal.rational(self.exact ** int(e))
            r = exact_pow(self.exact, e)
            if r is not None:
                return CReal.rational(r)
        a = self
        if e.denominator == 1:
            n = int(e)
            return CReal(lambda p: a.iv(p) ** n)

        def fn(p):
            ctx = ivctx(p)
            base = a.iv(p)
            if base.a < 0:
                base = ctx.mpf([0, base.b])
            if base.b == 0:
                return ctx.mpf(0)
            return base ** frac_iv(e, ctx)

        return CReal(fn)

    def log(self) -> "CReal":
        if self.exact == 1:
            return CReal.rational(0)
        a = self
        return CReal(lambda p: ivctx(p).log(a.iv(p)))


def cmax(*vals) -> CReal:
    vals = [CReal.coerce(v) for v in vals]
    if all(v.exact is not None for v in vals):
        return CReal.rational(max(v.exact for v in vals))
    return CReal(lambda p: iv_max([v.iv(p) for v in vals], ivctx(p)))


def cmin(*vals) -> CReal:
    vals = [CReal.coerce(v) for v in vals]
    if all(v.exact is not None for v in vals):
        return CReal.rational(min(v.exact for v in vals))
    return CReal(lambda p: iv_min([v.iv(p) for v in vals], ivctx(p)))


def cprod(vals) -> CReal:
    out = CReal.rational(1)
    for v in vals:
        out = out * v
    return out


def compare(a, b, prec: Optional[int] = None, max_prec: Optional[int] = None) -> Optional[int]:
    """Certified sign of ``a - b``: -1, 0 or 1, or None when undecidable.

    Exact rationals compare exactly; otherwise precision is doubled until the
    enclosures separate or ``max_prec`` (default 4x) is reached.  Zero is only
    ever returned for exactly equal rationals.
    """
    a, b = CReal.coerce(a), CReal.coerce(b)
    if a.exact is not None and b.exact is not None:
        return (a.exact > b.exact) - (a.exact < b.exact)
    prec = prec or default_precision()
    max_prec = max_prec or 4 * prec
    p = prec
    while True:
        x, y = a.iv(p), b.iv(p)
        if x.b < y.a:
            return -1
        if x.a > y.b:
            return 1
        if p >= max_prec:
            return None
        p = min(2 * p, max_prec)


def certified_le(a, b, prec=None, max_prec=None) -> Optional[bool]:
    c = compare(a, b, prec, max_prec)
    return None if c is None else c <= 0


def certified_lt(a, b, prec=None, max_prec=None) -> Optional[bool]:
    c = compare(a, b, prec, max_prec)
    return None if c is None else c < 0
