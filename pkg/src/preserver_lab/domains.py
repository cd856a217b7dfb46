"""Mobius maps, circular domains and the polynomial conjugation maps.

A map ``Phi(z) = (a z + b) / (c z + d)`` defines the circular domain
``C = Phi^{-1}(H)``, where ``H`` is the open upper half-plane.  A domain
value pairs the map with one of four point-set views:

``open_C``                   C itself
``closed_complement_Cprime`` C' = complement of C (closed)
``boundary_dC``              the boundary circle or line
``reversed_Cr``              interior of C'

Half-planes must be written with ``c = 0``; other spellings of a
half-plane are rejected with a suggested normalized map.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DegenerateMap, DegreeExceeded, NonNormalizedHalfPlane
from .poly import NEG_INF, Poly1, Poly2
from .scalar import QQi, I, is_exact_scalar, as_exact

__all__ = [
    "INF", "Mobius", "CircularDomain", "VIEWS", "classify_domain",
    "contains", "conjugate_poly", "conjugate_bivar", "circ_symbol_kernel",
    "DISK_MAP", "unit_disk_map", "named_domain",
]

VIEWS = ("open_C", "closed_complement_Cprime", "boundary_dC", "reversed_Cr")


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _scalar(x):
    if is_exact_scalar(x):
        return as_exact(x)
    return complex(x)


def _is_zero(x, tol=0.0):
    if isinstance(x, QQi):
        return not x
    return abs(x) <= tol


def _imag_sign(x, tol):
    """Sign of Im(x); float ties within ``tol`` count as 0."""
    if isinstance(x, QQi):
        return (x.im > 0) - (x.im < 0)
    y = complex(x).imag
    scale = tol * (1.0 + abs(x))
    return 0 if abs(y) <= scale else (1 if y > 0 else -1)


@dataclass(frozen=True)
class Mobius:
    """Phi(z) = (a z + b) / (c z + d) with ad - bc != 0."""

    a: object
    b: object
    c: object
    d: object
    tolerance: float = 1e-12

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        if _is_zero(self.det, self.tolerance):
            raise DegenerateMap("ad - bc = 0")
        if not _is_zero(self.c, self.tolerance) and \
                _imag_sign(self.a / self.c, self.tolerance) == 0:
            raise NonNormalizedHalfPlane(
                "half-plane domains must be given with c = 0",
                hint=self._normalization_hint())

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def exact(self):
        return all(isinstance(x, QQi) for x in (self.a, self.b, self.c, self.d))

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    def __call__(self, z):
        if z is INF:
            return INF if _is_zero(self.c, 0.0) else self.a / self.c
        den = self.c * z + self.d
        if _is_zero(den, 0.0):
            return INF
        return (self.a * z + self.b) / den

    def inverse_map(self):
        """Psi(u) = (d u - b) / (-c u + a), without rescaling."""
        m = Mobius.__new__(Mobius)
        for name, v in zip("abcd", (self.d, -self.b, -self.c, self.a)):
            object.__setattr__(m, name, v)
        object.__setattr__(m, "tolerance", self.tolerance)
        return m

    def inverse(self, u):
        return self.inverse_map()(u)

    @cached_property
    def kind(self):
        if _is_zero(self.c, 0.0):
            return "half_plane"
        return "exterior" if _imag_sign(self.a / self.c, self.tolerance) > 0 \
            else "disk"

    def _normalization_hint(self):
        """Equivalent (a, b, 0, 1) for a half-plane spelled with c != 0."""
        psi = self.inverse_map()
        pts = []
        for t in (0, 1, 2, -1):
            p = psi(QQi(t) if self.exact else complex(t))
            if p is not INF:
                pts.append(p)
            if len(pts) == 2:
                break
        p0, p1 = pts
        inner = psi(I if self.exact else 1j)
        s = 1 if _imag_sign((inner - p0) / (p1 - p0), self.tolerance) > 0 else -1
        one = QQi(s) if self.exact else complex(s)
        return (one / (p1 - p0), -one * p0 / (p1 - p0), 0, 1)


@dataclass(frozen=True)
class CircularDomain:
    mobius: Mobius
    view: str = "open_C"

    def __post_init__(self):
        if self.view not in VIEWS:
            raise ValueError(f"unknown view {self.view!r}; expected one of {VIEWS}")

    @property
    def kind(self):
        return self.mobius.kind

    @property
    def bounded_C(self):
        return self.kind == "disk"

    @property
    def bounded_Cprime(self):
        return self.kind == "exterior"

    def with_view(self, view):
        return CircularDomain(self.mobius, view)

    def __contains__(self, point):
        return contains(self, point)


def classify_domain(m):
    """Kind of ``C = Phi^{-1}(H)`` and its geometric parameters.

    Returns ``(kind, params)``.  For circles ``params`` has ``center``,
    ``radius2`` (exact square of the radius on exact input) and
    ``radius``; for half-planes it has a boundary ``point``, a boundary
    ``direction`` and an ``inward`` normal.
    """
    kind = m.kind
    if kind == "half_plane":
        alpha = m.a / m.d
        beta = m.b / m.d
        one = QQi(1) if m.exact else 1.0
        ii = I if m.exact else 1j
        return kind, {"point": -beta / alpha, "direction": one / alpha,
                      "inward": ii / alpha}
    q = m.a / m.c
    center = m.inverse(q.conjugate())
    diff = center + m.d / m.c  # -d/c lies on the boundary circle
    r2 = diff.abs2() if isinstance(diff, QQi) else abs(diff) ** 2
    return kind, {"center": center, "radius2": r2, "radius": abs(diff)}


def contains(domain, point, tol=None):
    """Membership of ``point`` (complex, QQi or INF) in the view's point set."""
    m = domain.mobius
    tol = m.tolerance if tol is None else tol
    u = m(point)
    if u is INF:
        s = 0  # infinity lies on the boundary of H
    else:
        s = _imag_sign(u, tol)
    view = domain.view
    if view == "open_C":
        return s > 0
    if view == "closed_complement_Cprime":
        return s <= 0
    if view == "boundary_dC":
        return s == 0
    return s < 0


# ---------------------------------------------------------------------------
# Conjugation maps
# ---------------------------------------------------------------------------

def _phi_n(a, b, c, d, n, f):
    """(c z + d)^n f((a z + b)/(c z + d)) expanded, deg f <= n."""
    num = Poly1([b, a])
    den = Poly1([d, c])
    out = Poly1([])
    pw_num = Poly1([1])
    dens = [Poly1([1])]
    for _ in range(n):
        dens.append(dens[-1] * den)
    for k in range(n + 1):
        ck = f.coeff(k)
        if ck != 0:
            out = out + pw_num * dens[n - k] * ck
        pw_num = pw_num * num
    return out


def conjugate_poly(m, n, f, direction="forward"):
    """phi_n(f) = (cz + d)^n f(Phi(z)), or its inverse on degree <= n."""
    if f.degree > n:
        raise DegreeExceeded(f"deg f = {f.degree} exceeds n = {n}")
    if direction == "forward":
        return _phi_n(m.a, m.b, m.c, m.d, n, f)
    if direction == "inverse":
        g = _phi_n(m.d, -m.b, -m.c, m.a, n, f)
        scale = m.det ** n
        one = QQi(1) if isinstance(scale, QQi) else 1.0
        return g * (one / scale)
    raise ValueError("direction must be 'forward' or 'inverse'")


def conjugate_bivar(m, f, mz, nw, which="both", direction="forward"):
    """Apply phi_{mz} in z and/or phi_{nw} in w to a bivariate polynomial."""
    if which not in ("z_only", "w_only", "both"):
        raise ValueError("which must be z_only, w_only or both")
    if which in ("z_only", "both") and f.zdeg > mz:
        raise DegreeExceeded(f"zdeg f = {f.zdeg} exceeds {mz}")
    if which in ("w_only", "both") and f.wdeg > nw:
        raise DegreeExceeded(f"wdeg f = {f.wdeg} exceeds {nw}")
    if f.is_zero:
        return f
    g = f
    if which in ("z_only", "both"):
        g = Poly2.from_w_coeffs([conjugate_poly(m, mz, q, direction)
                                 for q in g.w_coeffs()])
    if which in ("w_only", "both"):
        g = Poly2.from_z_coeffs([conjugate_poly(m, nw, p, direction)
                                 for p in g.z_coeffs()])
    return g


def circ_symbol_kernel(m, n, sign="plus"):
    """((az+b)(cw+d) +/- (aw+b)(cz+d))^n as a bivariate polynomial."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    z, w = Poly2.z(), Poly2.w()
    left = (z * m.a + m.b) * (w * m.c + m.d)
    right = (w * m.a + m.b) * (z * m.c + m.d)
    base = left + right if sign == "plus" else left - right
    return base ** n


# ---------------------------------------------------------------------------
# Named domains
# ---------------------------------------------------------------------------

def unit_disk_map():
    """Phi(z) = (i/2)(z + i)/(z - i); C is the exterior of the unit disk."""
    return Mobius(QQi(0, "1/2"), QQi("-1/2"), QQi(1), QQi(0, -1))


DISK_MAP = unit_disk_map()


def named_domain(kind):
    """Canonical (Mobius, default view) for a shorthand name.

    Disk-family names describe where the roots live (C'); half-plane
    names describe the open region C itself.
    """
    if kind == "real_line":
        return Mobius.identity(), "boundary_dC"
    if kind == "upper_half_plane":
        return Mobius.identity(), "open_C"
    if kind == "lower_half_plane":
        return Mobius(-1, 0, 0, 1), "open_C"
    if kind == "unit_disk":
        return unit_disk_map(), "closed_complement_Cprime"
    if kind == "unit_circle":
        return unit_disk_map(), "boundary_dC"
    if kind == "unit_disk_exterior":
        # Cayley map: C is the open unit disk, C' the closed exterior
        return Mobius(QQi(0, 1), QQi(0, 1), QQi(-1), QQi(1)), \
            "closed_complement_Cprime"
    raise ValueError(f"unknown domain shorthand {kind!r}")


def degree_in(f, var):
    if f.is_zero:
        return NEG_INF
    return f.zdeg if var == "z" else f.wdeg
