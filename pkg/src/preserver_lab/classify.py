"""Univariate zero-locus predicates.

Exact inputs are decided exactly: hyperbolicity by Sturm counting,
half-plane stability by the Hermite-Biehler criterion, interlacing by the
global sign of the Wronskian.  Float inputs either go through the same
exact machinery after rationalization (sign conditions) or through
certified roots with a tolerance (locus membership).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .domains import INF, contains
from .errors import (NotHyperbolic, NotRealPolynomial, NotStable,
                     ZeroPolynomial)
from .poly import (Poly1, all_roots, poly_gcd, real_root_count,
                   real_root_count_odd)
from .scalar import EXACT, Backend, QQi, rationalize

__all__ = [
    "LocusVerdict", "PencilRelation", "is_hyperbolic", "is_stable1",
    "is_domain_stable1", "wronskian", "wronskian_sign", "pencil_relation",
    "hb_split", "szasz_bound", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LocusVerdict:
    answer: str  # "yes" | "no"
    witness: object = None
    backend: Backend = EXACT

    def __post_init__(self):
        if self.answer not in ("yes", "no"):
            raise ValueError("answer must be 'yes' or 'no'")
        if self.answer == "no" and self.witness is None:
            raise ValueError("a 'no' verdict needs a witness")

    def __bool__(self):
        return self.answer == "yes"


@dataclass(frozen=True)
class PencilRelation:
    relation: str  # f_ll_g | g_ll_f | proportional | neither
    degenerate: bool = False

    @property
    def f_ll_g(self):
        return self.degenerate or self.relation in ("f_ll_g", "proportional")

    @property
    def g_ll_f(self):
        return self.degenerate or self.relation in ("g_ll_f", "proportional")

    @property
    def in_proper_position(self):
        return self.relation != "neither"


def _backend(f, tol):
    return EXACT if f.exact else Backend("float", tol)


def _snap(f, tol):
    """Rationalize a float polynomial, zeroing coefficients below tolerance."""
    if f.exact:
        return f
    scale = max(abs(c) for c in f.coeffs) if f.coeffs else 0.0
    cut = tol * scale
    out = []
    for c in f.coeffs:
        re = 0.0 if abs(c.real) <= cut else c.real
        im = 0.0 if abs(c.imag) <= cut else c.imag
        out.append(rationalize(complex(re, im)))
    return Poly1(out)


def _nice(value, f):
    """Replace a float root by an exact Gaussian rational when it is one."""
    if not f.exact:
        return value
    for den in (1, 2, 3, 4, 6, 8, 10, 12, 100, 1000):
        q = QQi(Fraction(value.real).limit_denominator(den),
                Fraction(value.imag).limit_denominator(den))
        if not f(q):
            return q
    return value


def _require_real(f, tol):
    if not f.is_real(tol if not f.exact else 0.0):
        raise NotRealPolynomial("expected real coefficients")


def _check_nonzero(f):
    if f.is_zero:
        raise ZeroPolynomial("predicate undefined on the zero polynomial")


def is_hyperbolic(f, strict=False, tol=DEFAULT_TOL):
    """All zeros real (strict: and simple).  Nonzero constants are hyperbolic."""
    _check_nonzero(f)
    _require_real(f, tol)
    backend = _backend(f, tol)
    n = f.degree
    if n == 0:
        return LocusVerdict("yes", backend=backend)
    if f.exact:
        distinct, total = real_root_count(f)
        ok = total == n and (not strict or distinct == n)
        if ok:
            return LocusVerdict("yes", backend=backend)
        roots = all_roots(f)
        if total < n:
            r = max(roots, key=lambda r: abs(r.value.imag))
            return LocusVerdict("no", _nice(r.value, f), backend)
        r = next(r for r in roots if r.multiplicity > 1)
        return LocusVerdict("no", _nice(complex(r.value.real, 0.0), f), backend)
    roots = all_roots(f.real_part(), tol=max(tol, 1e-12))
    for r in roots:
        if abs(r.value.imag) > tol * (1 + abs(r.value)) + r.radius:
            return LocusVerdict("no", r.value, backend)
    if strict:
        for r in roots:
            if r.multiplicity > 1:
                return LocusVerdict("no", r.value, backend)
    return LocusVerdict("yes", backend=backend)


def _hb_stable(h):
    """Exact upper-half-plane stability of ``h`` via Hermite-Biehler."""
    f, g = h.real_part(), h.imag_part()
    for p in (f, g):
        if not p.is_zero and real_root_count(p)[1] != p.degree:
            return False
    return pencil_relation(f, g).g_ll_f


def _gauss_gcd_has_real_root(h):
    f, g = h.real_part(), h.imag_part()
    if f.is_zero or g.is_zero:
        p = g if f.is_zero else f
        return p.degree > 0 and real_root_count(p)[0] > 0
    d = poly_gcd(f, g)
    return d.degree > 0 and real_root_count(d)[0] > 0


def _root_witness(h, pred):
    best = None
    for r in all_roots(h):
        if pred(r.value) and (best is None or r.value.imag > best.imag):
            best = r.value
    return None if best is None else _nice(best, h)


def is_stable1(f, half="upper", strict=False, tol=DEFAULT_TOL):
    """No root with Im > 0 (strict: Im >= 0); ``half='lower'`` mirrors this."""
    _check_nonzero(f)
    if half not in ("upper", "lower"):
        raise ValueError("half must be 'upper' or 'lower'")
    h = f if half == "upper" else f.conj()
    backend = _backend(f, tol)

    def back(x):
        return x if half == "upper" else x.conjugate()

    if h.degree == 0:
        return LocusVerdict("yes", backend=backend)
    if h.exact:
        ok = _hb_stable(h) and not (strict and _gauss_gcd_has_real_root(h))
        if ok:
            return LocusVerdict("yes", backend=backend)
        w = _root_witness(h, lambda v: v.imag >= 0 if strict else v.imag > 0)
        if w is None:
            w = _root_witness(h, lambda v: True)
        return LocusVerdict("no", back(w), backend)
    for r in all_roots(h, tol=max(tol, 1e-12)):
        im = r.value.imag
        slack = tol * (1 + abs(r.value))
        if im > slack + r.radius or (strict and im > -slack - r.radius):
            return LocusVerdict("no", back(r.value), backend)
    return LocusVerdict("yes", backend=backend)


def _pullback(f, m):
    """p(u) = (-c u + a)^n f(Psi(u)); its roots are Phi(roots of f)."""
    from .domains import conjugate_poly
    return conjugate_poly(m.inverse_map(), f.degree, f)


def is_domain_stable1(f, domain, tol=DEFAULT_TOL):
    """True iff no root of ``f`` lies in the domain's point set."""
    _check_nonzero(f)
    backend = _backend(f, tol)
    if f.degree == 0:
        return LocusVerdict("yes", backend=backend)
    if f.exact and domain.mobius.exact:
        p = _pullback(f, domain.mobius)
        # roots of f at the pole -d/c map to infinity, which is on the boundary
        lost = p.degree < f.degree
        view = domain.view
        if view == "open_C":
            ok = bool(is_stable1(p, "upper"))
        elif view == "reversed_Cr":
            ok = bool(is_stable1(p, "lower"))
        elif view == "closed_complement_Cprime":
            ok = not lost and (p.degree == 0 or bool(is_stable1(p, "lower", strict=True)))
        else:
            ok = not lost and (p.degree == 0 or not _gauss_gcd_has_real_root(p))
        if ok:
            return LocusVerdict("yes", backend=backend)
    roots = all_roots(f, tol=max(tol, 1e-12))
    for r in roots:
        v = _nice(r.value, f)
        if contains(domain, v, tol=tol if not isinstance(v, QQi) else 0.0):
            return LocusVerdict("no", v, backend)
    if f.exact and domain.mobius.exact:
        # the exact test found a root the float scan could not place;
        # report the root closest to the boundary
        m = domain.mobius
        best = min(roots, key=lambda r: abs(complex(m(r.value)).imag)
                   if m(r.value) is not INF else 0.0)
        return LocusVerdict("no", best.value, backend)
    return LocusVerdict("yes", backend=backend)


def wronskian(f, g):
    """W[f, g] = f' g - f g'."""
    return f.derivative() * g - f * g.derivative()


def wronskian_sign(f, g, tol=DEFAULT_TOL):
    """Global sign of W[f, g] on the real line.

    Returns ``nonpositive``, ``nonnegative``, ``mixed`` or
    ``identically_zero``.  Float inputs are rationalized (coefficients below
    ``tol`` relative to the largest are zeroed) and decided exactly.
    """
    w = wronskian(f, g)
    if not (f.exact and g.exact):
        w = _snap(w, tol)
    if w.is_zero:
        return "identically_zero"
    _require_real(w, 0.0)
    if w.degree > 0 and real_root_count_odd(w) > 0:
        return "mixed"
    return "nonnegative" if w.lead.re > 0 else "nonpositive"


def pencil_relation(f, g, tol=DEFAULT_TOL):
    """Proper position of two real hyperbolic-or-zero polynomials."""
    for p in (f, g):
        if not p.is_zero:
            _require_real(p, tol)
            if not is_hyperbolic(p, tol=tol):
                raise NotHyperbolic("pencil_relation needs hyperbolic inputs")
    if f.is_zero or g.is_zero:
        return PencilRelation("f_ll_g", degenerate=True)
    s = wronskian_sign(f, g, tol)
    if s == "identically_zero":
        return PencilRelation("proportional")
    if abs(f.degree - g.degree) > 1 or s == "mixed":
        return PencilRelation("neither")
    return PencilRelation("f_ll_g" if s == "nonpositive" else "g_ll_f")


@dataclass(frozen=True)
class HBSplit:
    f: Poly1
    g: Poly1
    relation: PencilRelation
    stable: bool

    def __iter__(self):
        return iter((self.f, self.g, self.relation, self.stable))


def hb_split(h, tol=DEFAULT_TOL):
    """h = f + i g with f, g real; stable iff both hyperbolic-or-zero and g << f."""
    _check_nonzero(h)
    f, g = h.real_part(), h.imag_part()
    if not h.exact:
        f, g = _snap(f, tol), _snap(g, tol)
    hyper = all(p.is_zero or bool(is_hyperbolic(p, tol=tol)) for p in (f, g))
    if not hyper:
        return HBSplit(f, g, PencilRelation("neither"), False)
    rel = pencil_relation(f, g, tol)
    return HBSplit(f, g, rel, rel.g_ll_f)


def szasz_bound(f, r):
    """Upper bound for |f(z)| on |z| <= r, valid for stable f.

    With m the index of the lowest nonzero coefficient:
    |c_m| r^m exp(r|c_{m+1}|/|c_m| + 3r^2|c_{m+1}|^2/|c_m|^2 + 3r^2|c_{m+2}|/|c_m|).
    """
    _check_nonzero(f)
    if not r > 0:
        raise ValueError("r must be positive")
    if not is_stable1(f):
        raise NotStable("the bound only holds for stable polynomials")
    m = f.low_order()
    cm = abs(f.coeff(m))
    c1 = abs(f.coeff(m + 1))
    c2 = abs(f.coeff(m + 2))
    r = float(r)
    expo = r * c1 / cm + 3 * r * r * (c1 / cm) ** 2 + 3 * r * r * c2 / cm
    try:
        return cm * r ** m * math.exp(expo)
    except OverflowError:
        return math.inf
