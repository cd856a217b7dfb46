"""Univariate, bivariate and small multivariate polynomials.

Coefficients live on one of two backends (see :mod:`preserver_lab.scalar`):
exact Gaussian rationals, or Python complex floats.  The zero polynomial
has degree ``NEG_INF`` (``-math.inf``), which propagates through degree
arithmetic the way the usual convention requires.

Real-root counting uses Sturm sequences over the rationals; complex roots
come from Aberth iteration in extended precision followed by
Weierstrass/Gershgorin inclusion disks.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

import mpmath
import numpy as np
from gmpy2 import mpq

from .errors import (ConstantPolynomial, NoConvergence, NotRealPolynomial,
                     ZeroPolynomial)
from .scalar import QQi, as_exact, is_exact_scalar, rationalize

__all__ = [
    "NEG_INF", "Poly1", "Poly2", "PolyN", "Root", "RootSet",
    "derivative", "eval2", "real_root_count", "all_roots",
    "elementary_symmetric", "poly_gcd", "squarefree_decomposition",
]

NEG_INF = -math.inf

_ZERO = QQi(0)
_ONE = QQi(1)


def _normalize(values):
    values = list(values)
    if all(is_exact_scalar(c) for c in values):
        return [as_exact(c) for c in values], True
    return [complex(c) for c in values], False


def _unify(a_exact, b_exact, a, b):
    """Bring two coefficient sequences onto a common backend."""
    if a_exact and b_exact:
        return a, b, True
    ca = a if not a_exact else [complex(c) for c in a]
    cb = b if not b_exact else [complex(c) for c in b]
    return ca, cb, False


def _fmt_coeff(c):
    if isinstance(c, QQi):
        return str(c)
    if c.imag == 0:
        return repr(c.real)
    return repr(c)


def _fmt_terms(terms):
    """terms: list of (coeff, monomial string) -> readable sum."""
    parts = []
    for c, mono in terms:
        s = _fmt_coeff(c)
        if mono:
            if s == "1":
                s = mono
            elif s == "-1":
                s = "-" + mono
            else:
                s = f"{s}*{mono}"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# Univariate
# ---------------------------------------------------------------------------

class Poly1:
    """Immutable univariate polynomial, coefficients indexed by degree."""

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs=(), exact=None):
        if isinstance(coeffs, Poly1):
            coeffs = coeffs.coeffs
        cs, is_exact = _normalize(coeffs)
        if exact is False and is_exact:
            cs, is_exact = [complex(c) for c in cs], False
        elif exact is True and not is_exact:
            cs, is_exact = [rationalize(c) for c in cs], True
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "exact", is_exact)

    def __setattr__(self, name, value):
        raise AttributeError("Poly1 is immutable")

    @classmethod
    def _raw(cls, coeffs, exact):
        p = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(p, "coeffs", tuple(cs))
        object.__setattr__(p, "exact", exact)
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def z(cls):
        return cls([0, 1])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1]) if is_exact_scalar(r) or isinstance(r, QQi) \
                else p * cls([-complex(r), 1])
        return p

    # -- basic properties ---------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else (_ZERO if self.exact else 0j)

    @property
    def backend(self):
        return "exact" if self.exact else "float"

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO if self.exact else 0j

    def is_real(self, tol=0.0):
        if self.exact:
            return all(not c.im for c in self.coeffs)
        scale = max((abs(c) for c in self.coeffs), default=0.0)
        return all(abs(c.imag) <= tol * max(scale, 1.0) for c in self.coeffs)

    def low_order(self):
        """Index of the lowest nonzero coefficient (NEG_INF for zero)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return NEG_INF

    # -- conversions --------------------------------------------------
    def to_complex(self):
        return Poly1._raw([complex(c) for c in self.coeffs], False)

    def rationalize(self):
        if self.exact:
            return self
        return Poly1._raw([rationalize(c) for c in self.coeffs], True)

    def real_part(self):
        if self.exact:
            return Poly1._raw([QQi(c.re) for c in self.coeffs], True)
        return Poly1._raw([complex(c.real) for c in self.coeffs], False)

    def imag_part(self):
        if self.exact:
            return Poly1._raw([QQi(c.im) for c in self.coeffs], True)
        return Poly1._raw([complex(c.imag) for c in self.coeffs], False)

    def conj(self):
        return Poly1._raw([c.conjugate() for c in self.coeffs], self.exact)

    def to_numpy(self):
        """Coefficients as complex128, highest degree first (np.roots order)."""
        return np.array([complex(c) for c in reversed(self.coeffs)],
                        dtype=complex)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly1):
            return other
        return Poly1([other])

    def __add__(self, other):
        o = self._coerce(other)
        a, b, ex = _unify(self.exact, o.exact, self.coeffs, o.coeffs)
        n = max(len(a), len(b))
        zero = _ZERO if ex else 0j
        out = [(a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero)
               for k in range(n)]
        return Poly1._raw(out, ex)

    __radd__ = __add__

    def __neg__(self):
        return Poly1._raw([-c for c in self.coeffs], self.exact)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            if is_exact_scalar(other) or isinstance(other, QQi):
                if self.exact:
                    s = as_exact(other)
                    return Poly1._raw([c * s for c in self.coeffs], True)
            o = self._coerce(other)
        else:
            o = other
        a, b, ex = _unify(self.exact, o.exact, self.coeffs, o.coeffs)
        if not a or not b:
            return Poly1._raw([], ex)
        zero = _ZERO if ex else 0j
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly1._raw(out, ex)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly1._raw([_ONE if self.exact else 1 + 0j], self.exact)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        a, b, ex = _unify(self.exact, o.exact, self.coeffs, o.coeffs)
        rem = list(a)
        db = len(b) - 1
        lb = b[-1]
        zero = _ZERO if ex else 0j
        quot = [zero] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            q = rem[-1] / lb
            shift = len(rem) - 1 - db
            quot[shift] = q
            for i in range(db + 1):
                rem[shift + i] = rem[shift + i] - q * b[i]
            rem.pop()
            while ex and rem and rem[-1] == 0:
                rem.pop()
        return Poly1._raw(quot, ex), Poly1._raw(rem, ex)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division is not exact")
        return q

    def __call__(self, x):
        acc = _ZERO if self.exact else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return len(self.coeffs) == len(other.coeffs) and all(
                x == y for x, y in zip(self.coeffs, other.coeffs))
        if is_exact_scalar(other) or isinstance(other, (float, complex)):
            return self == Poly1([other])
        return NotImplemented

    def __hash__(self):
        return hash(tuple(complex(c) for c in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- calculus / algebra -------------------------------------------
    def derivative(self):
        return Poly1._raw([c * k for k, c in enumerate(self.coeffs)][1:],
                          self.exact)

    def compose(self, g):
        """self(g(z))."""
        g = self._coerce(g)
        acc = Poly1._raw([], self.exact and g.exact)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def monic(self):
        if self.is_zero:
            return self
        lc = self.lead
        return Poly1._raw([c / lc for c in self.coeffs], self.exact)

    def scale_var(self, s):
        """p(s*z)."""
        out, pw = [], (_ONE if self.exact else 1 + 0j)
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * s
        return Poly1(out)

    def reflect(self):
        """p(-z)."""
        return Poly1._raw([c if k % 2 == 0 else -c
                           for k, c in enumerate(self.coeffs)], self.exact)

    def format(self, var="z"):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append((c, mono))
        return _fmt_terms(terms)

    def __repr__(self):
        return f"Poly1({self.format()})"


def derivative(f):
    """Coefficient-shift derivative; the zero polynomial maps to zero."""
    return f.derivative()


def poly_gcd(f, g):
    """Monic gcd over Q(i) (exact backends only)."""
    if not (f.exact and g.exact):
        raise TypeError("poly_gcd requires exact polynomials")
    a, b = f, g
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_decomposition(f):
    """Yun's algorithm: list of (factor, multiplicity), factors monic.

    Constant content is dropped; ``f`` must be exact and non-constant.
    """
    if not f.exact:
        raise TypeError("square-free decomposition runs on the exact backend")
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial has no square-free decomposition")
    out = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


# ---------------------------------------------------------------------------
# Sturm sequences over Q
# ---------------------------------------------------------------------------

def _real_mpq(f):
    g = f if f.exact else f.rationalize()
    if not g.is_real():
        raise NotRealPolynomial("real_root_count needs real coefficients")
    return [c.re for c in g.coeffs]


def _rtrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _rrem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] -= q * b[i]
        a.pop()
        _rtrim(a)
    return a


def _rsign_at(p, x):
    if x == math.inf:
        return (p[-1] > 0) - (p[-1] < 0)
    if x == -math.inf:
        s = (p[-1] > 0) - (p[-1] < 0)
        return s if (len(p) - 1) % 2 == 0 else -s
    acc = mpq(0)
    for c in reversed(p):
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def _sturm_chain(p):
    chain = [list(p)]
    dp = _rtrim([c * k for k, c in enumerate(p)][1:])
    if not dp:
        return chain
    chain.append(dp)
    while True:
        r = _rrem(chain[-2], chain[-1])
        if not r:
            break
        s = abs(r[-1])
        chain.append([-c / s for c in r])
    return chain


def _variations(chain, x):
    signs = [s for s in (_rsign_at(q, x) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _as_bound(x):
    if x in (math.inf, -math.inf):
        return x
    if isinstance(x, QQi):
        return x.re
    return mpq(x)


def _count_distinct(p, lo, hi):
    if len(p) <= 1:
        return 0
    chain = _sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def real_root_count(f, interval=None):
    """(distinct, with_multiplicity) real roots of ``f`` in ``(lo, hi]``.

    ``interval`` defaults to the whole real line; bounds may be ``±inf``.
    Float inputs are rationalized exactly before counting.
    """
    if f.is_zero:
        raise ZeroPolynomial("real_root_count of the zero polynomial")
    p = _real_mpq(f)
    lo, hi = interval if interval is not None else (-math.inf, math.inf)
    lo, hi = _as_bound(lo), _as_bound(hi)
    if not lo < hi:
        return 0, 0
    distinct = _count_distinct(p, lo, hi)
    g = Poly1._raw([QQi(c) for c in p], True)
    total = sum(k * _count_distinct([c.re for c in h.coeffs], lo, hi)
                for h, k in squarefree_decomposition(g))
    return distinct, total


def real_root_count_odd(f):
    """Distinct real roots of odd multiplicity (sign changes of ``f``)."""
    g = f if f.exact else f.rationalize()
    n = 0
    for h, k in squarefree_decomposition(g):
        if k % 2:
            n += _count_distinct([c.re for c in h.coeffs], -math.inf, math.inf)
    return n


# ---------------------------------------------------------------------------
# Complex roots with inclusion radii
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    radius: float


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities and certified inclusion radii."""

    roots: tuple
    degree: int

    def __post_init__(self):
        total = sum(r.multiplicity for r in self.roots)
        if total != self.degree:
            raise AssertionError(
                f"multiplicities sum to {total}, degree is {self.degree}")

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def values(self):
        """Root values repeated by multiplicity."""
        return [r.value for r in self.roots for _ in range(r.multiplicity)]

    def max_radius(self):
        return max((r.radius for r in self.roots), default=0.0)


_WORK_DPS = 50


def _mp(c):
    if isinstance(c, QQi):
        return mpmath.mpc(mpmath.mpf(int(c.re.numerator)) / int(c.re.denominator),
                          mpmath.mpf(int(c.im.numerator)) / int(c.im.denominator))
    return mpmath.mpc(c)


def _aberth(coeffs, start, maxiter):
    """Polish all roots simultaneously; coeffs are mp values, low -> high."""
    n = len(coeffs) - 1
    dcoeffs = [coeffs[k] * k for k in range(1, n + 1)]
    z = list(start)
    eps = mpmath.mpf(10) ** (-(_WORK_DPS - 8))
    for _ in range(maxiter):
        worst = mpmath.mpf(0)
        for i in range(n):
            zi = z[i]
            p = mpmath.polyval(coeffs[::-1], zi)
            if p == 0:
                continue
            dp = mpmath.polyval(dcoeffs[::-1], zi)
            ratio = p / dp if dp != 0 else mpmath.mpc(1)
            s = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * s)
            z[i] = zi - step
            worst = max(worst, abs(step) / (1 + abs(z[i])))
        if worst < eps:
            return z, True
    return z, False


def _start_points(coeffs_c):
    n = len(coeffs_c) - 1
    try:
        r = np.roots(np.array(coeffs_c[::-1], dtype=complex))
        if len(r) == n and np.all(np.isfinite(r)):
            r = list(r)
            # separate exact duplicates so Aberth's 1/(zi - zj) is defined
            for i in range(n):
                for j in range(i):
                    if r[i] == r[j]:
                        r[i] = r[i] + 1e-8 * (1 + abs(r[i])) * complex(
                            math.cos(i), math.sin(i))
            return r
    except (np.linalg.LinAlgError, ValueError, FloatingPointError):
        pass
    rad = max(1.0, max(abs(c) for c in coeffs_c[:-1]) / abs(coeffs_c[-1]))
    return [rad * complex(math.cos(2 * math.pi * k / n + 0.4),
                          math.sin(2 * math.pi * k / n + 0.4)) for k in range(n)]


def _isolate(h, maxiter):
    """Inclusion disks for the roots of a square-free exact polynomial."""
    n = h.degree
    if n == 1:
        r = -h.coeffs[0] / h.coeffs[1]
        v = complex(r)
        return [(v, 1, 4 * abs(v) * 2.0 ** -52)]
    with mpmath.workdps(_WORK_DPS):
        mc = [_mp(c) for c in h.coeffs]
        scale = max(abs(c) for c in mc)
        mc = [c / scale for c in mc]
        cc = [complex(c) for c in mc]
        if cc[-1] == 0:
            cc[-1] = complex(mc[-1]) or 1e-300
        start = [mpmath.mpc(s) for s in _start_points(cc)]
        z, converged = _aberth(mc, start, maxiter)
        lc = mc[-1]
        disks = []
        for i in range(n):
            denom = lc
            for j in range(n):
                if j != i:
                    denom *= (z[i] - z[j])
            W = mpmath.polyval(mc[::-1], z[i]) / denom
            center = z[i] - W
            rad = (n - 1) * abs(W) + mpmath.mpf(10) ** (-(_WORK_DPS - 10)) * (1 + abs(center))
            disks.append((center, rad))
        # components of overlapping disks
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in itertools.combinations(range(n), 2):
            if abs(disks[i][0] - disks[j][0]) <= disks[i][1] + disks[j][1]:
                parent[find(i)] = find(j)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        out = []
        for members in groups.values():
            c = mpmath.fsum(disks[i][0] for i in members) / len(members)
            rad = max(abs(c - disks[i][0]) + disks[i][1] for i in members)
            v = complex(c)
            out.append((v, len(members), float(rad) + 4 * abs(v) * 2.0 ** -52))
    if not converged and any(m > 1 for _, m, _ in out):
        raise NoConvergence("Aberth iteration did not separate the roots")
    return out


def all_roots(f, tol=1e-12, maxiter=500):
    """All complex roots of ``f`` with multiplicities and inclusion radii.

    Each returned disk ``|z - value| <= radius`` contains exactly
    ``multiplicity`` roots.  Float inputs are rationalized first, so the
    roots are those of the binary polynomial as given.
    """
    if f.is_zero:
        raise ZeroPolynomial("all_roots of the zero polynomial")
    if f.degree < 1:
        raise ConstantPolynomial("all_roots of a constant polynomial")
    g = f.rationalize()
    roots = []
    for h, k in squarefree_decomposition(g):
        for value, m, rad in _isolate(h, maxiter):
            roots.append(Root(value, m * k, rad))
    rs = RootSet(tuple(roots), f.degree)
    if not f.exact:
        for r in rs:
            if r.radius > tol * (1 + abs(r.value)):
                raise NoConvergence(
                    f"root near {r.value} not resolved below tolerance {tol}")
    return rs


# ---------------------------------------------------------------------------
# Bivariate
# ---------------------------------------------------------------------------

def _normalize_terms(terms):
    items = [(k, v) for k, v in terms.items()]
    vals, exact = _normalize([v for _, v in items]) if items else ([], True)
    return {k: v for (k, _), v in zip(items, vals) if v != 0}, exact


class Poly2:
    """Immutable bivariate polynomial in (z, w), stored sparsely.

    ``terms[(i, j)]`` is the coefficient of ``z**i * w**j``.  The optional
    ``provenance`` (e.g. a determinantal certificate from a generator) is
    carried along but ignored by equality.
    """

    __slots__ = ("terms", "exact", "provenance")

    def __init__(self, terms=None, exact=None, provenance=None):
        if isinstance(terms, Poly2):
            t, ex = dict(terms.terms), terms.exact
        else:
            t, ex = _normalize_terms(dict(terms or {}))
        if exact is False and ex:
            t, ex = {k: complex(v) for k, v in t.items()}, False
        elif exact is True and not ex:
            t, ex = {k: rationalize(v) for k, v in t.items()}, True
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "exact", ex)
        object.__setattr__(self, "provenance", provenance)

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    @classmethod
    def _raw(cls, terms, exact, provenance=None):
        p = cls.__new__(cls)
        object.__setattr__(p, "terms", {k: v for k, v in terms.items() if v != 0})
        object.__setattr__(p, "exact", exact)
        object.__setattr__(p, "provenance", provenance)
        return p

    def with_provenance(self, provenance):
        return Poly2._raw(self.terms, self.exact, provenance)

    # -- constructors -------------------------------------------------
    @classmethod
    def z(cls):
        return cls({(1, 0): 1})

    @classmethod
    def w(cls):
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def from_dense(cls, rows):
        """rows[i][j] = coefficient of z^i w^j."""
        return cls({(i, j): c for i, row in enumerate(rows)
                    for j, c in enumerate(row)})

    @classmethod
    def from_poly1(cls, p, var="z"):
        if var == "z":
            return cls._raw({(k, 0): c for k, c in enumerate(p.coeffs)}, p.exact)
        return cls._raw({(0, k): c for k, c in enumerate(p.coeffs)}, p.exact)

    @classmethod
    def from_w_coeffs(cls, qs):
        """sum_k qs[k](z) * w^k."""
        terms, exact = {}, all(q.exact for q in qs)
        for k, q in enumerate(qs):
            for i, c in enumerate(q.coeffs):
                terms[(i, k)] = c if exact else complex(c)
        return cls._raw(terms, exact)

    @classmethod
    def from_z_coeffs(cls, ps):
        """sum_i z^i * ps[i](w)."""
        return cls.from_w_coeffs(ps).swap()

    # -- properties ---------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def zdeg(self):
        return max((i for i, _ in self.terms), default=NEG_INF)

    @property
    def wdeg(self):
        return max((j for _, j in self.terms), default=NEG_INF)

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=NEG_INF)

    @property
    def backend(self):
        return "exact" if self.exact else "float"

    def coeff(self, i, j):
        return self.terms.get((i, j), _ZERO if self.exact else 0j)

    @property
    def coeffs(self):
        """Dense tight matrix, rows indexed by z-degree, columns by w-degree."""
        if self.is_zero:
            return ()
        return tuple(tuple(self.coeff(i, j) for j in range(self.wdeg + 1))
                     for i in range(self.zdeg + 1))

    def is_real(self, tol=0.0):
        if self.exact:
            return all(not c.im for c in self.terms.values())
        scale = max((abs(c) for c in self.terms.values()), default=0.0)
        return all(abs(c.imag) <= tol * max(scale, 1.0)
                   for c in self.terms.values())

    def is_homogeneous(self):
        return len({i + j for i, j in self.terms}) <= 1

    def w_coeffs(self):
        """[Q_0(z), ..., Q_wdeg(z)] with self = sum_k Q_k(z) w^k."""
        if self.is_zero:
            return []
        rows = [dict() for _ in range(self.wdeg + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        out = []
        for r in rows:
            top = max(r, default=-1)
            zero = _ZERO if self.exact else 0j
            out.append(Poly1._raw([r.get(i, zero) for i in range(top + 1)],
                                  self.exact))
        return out

    def z_coeffs(self):
        """[P_0(w), ..., P_zdeg(w)] with self = sum_i z^i P_i(w)."""
        return self.swap().w_coeffs()

    # -- conversions --------------------------------------------------
    def to_complex(self):
        return Poly2._raw({k: complex(v) for k, v in self.terms.items()}, False)

    def rationalize(self):
        if self.exact:
            return self
        return Poly2._raw({k: rationalize(v) for k, v in self.terms.items()},
                          True, self.provenance)

    def to_array(self):
        """Dense complex128 array, shape (zdeg+1, wdeg+1)."""
        if self.is_zero:
            return np.zeros((1, 1), dtype=complex)
        a = np.zeros((self.zdeg + 1, self.wdeg + 1), dtype=complex)
        for (i, j), c in self.terms.items():
            a[i, j] = complex(c)
        return a

    def swap(self):
        return Poly2._raw({(j, i): c for (i, j), c in self.terms.items()},
                          self.exact)

    def reflect(self):
        """f(-z, -w)."""
        return Poly2._raw({(i, j): (c if (i + j) % 2 == 0 else -c)
                           for (i, j), c in self.terms.items()}, self.exact)

    def neg_w(self):
        """f(z, -w)."""
        return Poly2._raw({(i, j): (c if j % 2 == 0 else -c)
                           for (i, j), c in self.terms.items()}, self.exact)

    def conj(self):
        return Poly2._raw({k: c.conjugate() for k, c in self.terms.items()},
                          self.exact)

    def real_part(self):
        if self.exact:
            return Poly2._raw({k: QQi(c.re) for k, c in self.terms.items()}, True)
        return Poly2._raw({k: complex(c.real) for k, c in self.terms.items()},
                          False)

    def imag_part(self):
        if self.exact:
            return Poly2._raw({k: QQi(c.im) for k, c in self.terms.items()}, True)
        return Poly2._raw({k: complex(c.imag) for k, c in self.terms.items()},
                          False)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly2):
            return other
        if isinstance(other, Poly1):
            return Poly2.from_poly1(other, "z")
        return Poly2({(0, 0): other})

    def _common(self, o):
        if self.exact and o.exact:
            return self.terms, o.terms, True
        a = self.terms if not self.exact else {k: complex(v) for k, v in self.terms.items()}
        b = o.terms if not o.exact else {k: complex(v) for k, v in o.terms.items()}
        return a, b, False

    def __add__(self, other):
        a, b, ex = self._common(self._coerce(other))
        out = dict(a)
        for k, v in b.items():
            out[k] = out[k] + v if k in out else v
        return Poly2._raw(out, ex)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({k: -v for k, v in self.terms.items()}, self.exact)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        a, b, ex = self._common(self._coerce(other))
        out = {}
        for (i1, j1), x in a.items():
            for (i2, j2), y in b.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out[k] + x * y if k in out else x * y
        return Poly2._raw(out, ex)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly2._raw({(0, 0): _ONE if self.exact else 1 + 0j}, self.exact)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly2):
            if set(self.terms) != set(other.terms):
                return False
            return all(self.terms[k] == other.terms[k] for k in self.terms)
        if isinstance(other, Poly1) or is_exact_scalar(other) \
                or isinstance(other, (float, complex)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((k, complex(v)) for k, v in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation ---------------------------------------------------
    def __call__(self, z, w):
        return eval2(self, z, w)

    def slice_w(self, w0):
        """The univariate polynomial z -> f(z, w0)."""
        return Poly1([p(w0) for p in self.z_coeffs()])

    def slice_z(self, z0):
        """The univariate polynomial w -> f(z0, w)."""
        return Poly1([q(z0) for q in self.w_coeffs()])

    def format(self):
        terms = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            zs = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            ws = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            terms.append((self.terms[(i, j)], "*".join(s for s in (zs, ws) if s)))
        return _fmt_terms(terms)

    def __repr__(self):
        return f"Poly2({self.format()})"


def eval2(f, z, w):
    """Horner evaluation of a bivariate polynomial; exact on exact input."""
    if f.is_zero:
        return _ZERO if f.exact else 0j
    acc = None
    for p in reversed(f.z_coeffs()):
        v = p(w)
        acc = v if acc is None else acc * z + v
    return acc


# ---------------------------------------------------------------------------
# Multivariate (polarization support)
# ---------------------------------------------------------------------------

class PolyN:
    """Sparse polynomial in ``nvars`` variables (exponent tuples -> coeff)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        t, _ = _normalize_terms(dict(terms or {}))
        for k in t:
            if len(k) != nvars:
                raise ValueError("exponent tuple length must equal nvars")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", t)

    def __setattr__(self, name, value):
        raise AttributeError("PolyN is immutable")

    @classmethod
    def variable(cls, idx, nvars):
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    def _coerce(self, other):
        if isinstance(other, PolyN):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return PolyN.constant(other, self.nvars)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return PolyN(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyN(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        out = {}
        for k1, x in self.terms.items():
            for k2, y in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out[k] + x * y if k in out else x * y
        return PolyN(self.nvars, out)

    __rmul__ = __mul__

    def __call__(self, *args):
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments")
        total = None
        for k, c in self.terms.items():
            t = c
            for x, e in zip(args, k):
                if e:
                    t = t * x ** e
            total = t if total is None else total + t
        return total if total is not None else _ZERO

    def degree_in(self, idx):
        return max((k[idx] for k in self.terms), default=NEG_INF)

    def is_multi_affine(self, indices=None):
        idx = range(self.nvars) if indices is None else indices
        return all(k[i] <= 1 for k in self.terms for i in idx)

    def is_symmetric_in(self, indices):
        indices = list(indices)
        for perm in itertools.permutations(indices):
            moved = {}
            for k, c in self.terms.items():
                e = list(k)
                for src, dst in zip(indices, perm):
                    e[dst] = k[src]
                moved[tuple(e)] = c
            if PolyN(self.nvars, moved) != self:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PolyN):
            return NotImplemented
        return self.nvars == other.nvars and set(self.terms) == set(other.terms) \
            and all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset((k, complex(v))
                                           for k, v in self.terms.items())))

    def __repr__(self):
        return f"PolyN({self.nvars}, {len(self.terms)} terms)"


def elementary_symmetric(d):
    """[e_0, ..., e_d] as multi-affine polynomials in x_1..x_d."""
    if d < 0:
        raise ValueError("d must be non-negative")
    out = []
    for k in range(d + 1):
        terms = {}
        for subset in itertools.combinations(range(d), k):
            e = [0] * d
            for s in subset:
                e[s] = 1
            terms[tuple(e)] = 1
        out.append(PolyN(d, terms))
    return out


def binomial_qq(n, k):
    return QQi(comb(n, k))
