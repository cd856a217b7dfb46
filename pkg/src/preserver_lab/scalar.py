"""Scalar backends: exact Gaussian rationals and machine complex floats.

Exact values are :class:`QQi` instances (pairs of ``gmpy2.mpq``).  Anything
that is a Python ``float`` or ``complex`` puts a computation on the float
backend.  Mixing the two silently degrades to float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational

from gmpy2 import mpq

__all__ = ["QQi", "Backend", "EXACT", "as_exact", "is_exact_scalar",
           "rationalize", "to_complex", "I"]

_EXACT_TYPES = (int, Fraction, type(mpq(0)))


@dataclass(frozen=True)
class Backend:
    """Which arithmetic produced a result, and the tolerance it used."""

    kind: str = "exact"
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown backend {self.kind!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")

    @property
    def exact(self):
        return self.kind == "exact"


EXACT = Backend("exact", 0.0)


def _to_mpq(x):
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


class QQi:
    """An exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    # -- coercion -----------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, _EXACT_TYPES) or isinstance(other, Rational):
            return QQi(other)
        return None

    @staticmethod
    def _floatish(other):
        return isinstance(other, Number) or hasattr(other, "_mpf_") \
            or hasattr(other, "_mpc_")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return complex(self) + other
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return complex(self) - other
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return other - complex(self)
        return _mk(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return complex(self) * other
        if not self.im and not o.im:
            return _mk(self.re * o.re, mpq(0))
        return _mk(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return complex(self) / other
        if not o.im:
            return _mk(self.re / o.re, self.im / o.re)
        den = o.re * o.re + o.im * o.im
        return _mk((self.re * o.re + self.im * o.im) / den,
                   (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if not QQi._floatish(other):
                return NotImplemented
            return other / complex(self)
        return o / self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return QQi(1) / (self ** (-k))
        result, base = QQi(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return _mk(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    # -- predicates / conversions --------------------------------------
    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    @property
    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = QQi._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("cannot convert non-real QQi to float")
        return float(self.re)

    def __repr__(self):
        if not self.im:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _mk(re, im):
    q = QQi.__new__(QQi)
    q.re = re
    q.im = im
    return q


I = _mk(mpq(0), mpq(1))


def is_exact_scalar(x):
    return isinstance(x, (QQi, str)) or isinstance(x, _EXACT_TYPES) \
        or isinstance(x, Rational)


def as_exact(x):
    """Convert an exact-typed scalar to :class:`QQi`; reject floats."""
    if isinstance(x, QQi):
        return x
    if is_exact_scalar(x):
        return QQi(x)
    raise TypeError(f"{x!r} is not an exact scalar; use rationalize()")


def rationalize(x):
    """Exact QQi equal to the binary value of ``x`` (floats included)."""
    if isinstance(x, QQi):
        return x
    if isinstance(x, complex):
        return QQi(mpq(x.real), mpq(x.imag))
    if isinstance(x, float):
        return QQi(mpq(x))
    if hasattr(x, "imag") and hasattr(x, "real") and not is_exact_scalar(x):
        # mpmath / numpy scalars
        return QQi(mpq(float(x.real)), mpq(float(x.imag)))
    return as_exact(x)


def to_complex(x):
    return complex(x)
