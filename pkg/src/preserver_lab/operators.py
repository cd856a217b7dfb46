"""Linear operators on polynomials of degree at most n.

An operator is stored by its columns ``T(z^k)``, k = 0..n, each a
:class:`Poly1`.  Multiplier sequences and differential-operator forms are
converted to this representation on construction, and back on request.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .domains import circ_symbol_kernel, conjugate_poly
from .errors import DegreeExceeded, DimensionMismatch
from .poly import NEG_INF, Poly1, Poly2
from .scalar import QQi, is_exact_scalar

__all__ = [
    "LinearOperator", "MultiplierSeq", "DiffOpForm", "SymbolSeries",
    "RangeAnalysis", "construct", "apply", "apply_ext2", "symbol",
    "conjugate_operator", "range_analysis", "falling",
]


def falling(n, k):
    """Pochhammer (falling factorial) n (n-1) ... (n-k+1)."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


@dataclass(frozen=True)
class MultiplierSeq:
    lam: tuple

    def __init__(self, lam):
        object.__setattr__(self, "lam", tuple(lam))

    def __len__(self):
        return len(self.lam)

    def __getitem__(self, k):
        return self.lam[k]


@dataclass(frozen=True)
class DiffOpForm:
    """T = sum_k Q_k(z) (d/dz)^k."""

    qs: tuple

    def __init__(self, qs):
        object.__setattr__(self, "qs", tuple(q if isinstance(q, Poly1) else Poly1(q)
                                             for q in qs))


@dataclass(frozen=True)
class SymbolSeries:
    """Coefficients P_k of sum_k P_k(z) w^k and the rescaled truncations.

    ``truncations[n]`` is sum_{k<=n} (n)_k P_k(z) w^k, which for the
    modified symbol equals T[(1 - z w)^n].
    """

    ps: tuple
    truncations: tuple

    def as_poly2(self):
        return Poly2.from_w_coeffs(list(self.ps))


class LinearOperator:
    """T on C_n[z]; ``columns[k] = T(z^k)``."""

    __slots__ = ("n", "columns", "m", "exact")

    def __init__(self, columns, n=None):
        cols = [c if isinstance(c, Poly1) else Poly1(c) for c in columns]
        if n is None:
            n = len(cols) - 1
        if len(cols) != n + 1:
            raise DimensionMismatch(f"expected {n + 1} columns, got {len(cols)}")
        exact = all(c.exact for c in cols)
        if not exact:
            cols = [c.to_complex() for c in cols]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "columns", tuple(cols))
        object.__setattr__(self, "m", max((c.degree for c in cols), default=NEG_INF))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("LinearOperator is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_matrix(cls, rows, n=None):
        """rows[i][k] = coefficient of z^i in T(z^k)."""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged matrix")
        if n is not None and width != n + 1:
            raise DimensionMismatch(f"matrix has {width} columns, n = {n}")
        cols = [[rows[i][k] for i in range(len(rows))] for k in range(width)]
        return cls(cols, n)

    @classmethod
    def from_multipliers(cls, lam, n=None):
        lam = lam.lam if isinstance(lam, MultiplierSeq) else tuple(lam)
        if n is None:
            n = len(lam) - 1
        if len(lam) < n + 1:
            raise DimensionMismatch(f"need {n + 1} multipliers, got {len(lam)}")
        return cls([Poly1.monomial(k, lam[k]) for k in range(n + 1)], n)

    @classmethod
    def from_diffop(cls, form, n):
        qs = form.qs if isinstance(form, DiffOpForm) else DiffOpForm(form).qs
        cols = []
        for k in range(n + 1):
            col = Poly1([])
            for j, q in enumerate(qs[:k + 1]):
                if not q.is_zero:
                    col = col + q * Poly1.monomial(k - j, falling(k, j))
            cols.append(col)
        return cls(cols, n)

    @classmethod
    def from_function(cls, fn, n):
        """Columns fn(k) for k = 0..n."""
        return cls([fn(k) for k in range(n + 1)], n)

    @classmethod
    def identity(cls, n):
        return cls.from_multipliers([1] * (n + 1), n)

    @classmethod
    def zero(cls, n):
        return cls([Poly1([])] * (n + 1), n)

    # -- properties ---------------------------------------------------
    @property
    def is_zero(self):
        return all(c.is_zero for c in self.columns)

    def is_real(self, tol=0.0):
        return all(c.is_real(tol) for c in self.columns)

    @property
    def matrix(self):
        """Dense (m+1) x (n+1) list of rows."""
        if self.m == NEG_INF:
            return []
        return [[c.coeff(i) for c in self.columns] for i in range(self.m + 1)]

    def to_numpy(self):
        rows = max(self.m + 1, 1) if self.m != NEG_INF else 1
        a = np.zeros((rows, self.n + 1), dtype=complex)
        for k, c in enumerate(self.columns):
            for i, v in enumerate(c.coeffs):
                a[i, k] = complex(v)
        return a

    def restrict(self, n):
        if n > self.n:
            raise DegreeExceeded(f"operator only defined up to degree {self.n}")
        return LinearOperator(self.columns[:n + 1], n)

    def to_multipliers(self):
        """lambda(k) if T is diagonal on monomials, else None."""
        lam = []
        for k, c in enumerate(self.columns):
            if any(i != k and v != 0 for i, v in enumerate(c.coeffs)):
                return None
            lam.append(c.coeff(k))
        return MultiplierSeq(lam)

    def to_diffop(self):
        """Unique Q_0..Q_n with T = sum Q_k (d/dz)^k on C_n[z]."""
        qs = []
        for k in range(self.n + 1):
            rest = self.columns[k]
            for j, q in enumerate(qs):
                if not q.is_zero:
                    rest = rest - q * Poly1.monomial(k - j, falling(k, j))
            scale = QQi(1, 0) / factorial(k) if rest.exact else 1.0 / factorial(k)
            qs.append(rest * scale)
        return DiffOpForm(qs)

    # -- algebra ------------------------------------------------------
    def __add__(self, other):
        if other.n != self.n:
            raise DimensionMismatch("operators act on different spaces")
        return LinearOperator([a + b for a, b in zip(self.columns, other.columns)],
                              self.n)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, s):
        return LinearOperator([c * s for c in self.columns], self.n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in
                                         zip(self.columns, other.columns))

    def __hash__(self):
        return hash((self.n, self.columns))

    def __repr__(self):
        return f"LinearOperator(n={self.n}, m={self.m})"

    # -- actions ------------------------------------------------------
    def apply(self, f):
        return apply(self, f)

    def __call__(self, f):
        return apply(self, f)

    def apply_ext2(self, f):
        return apply_ext2(self, f)

    def symbol(self, n=None, kind="plus", **kw):
        return symbol(self, self.n if n is None else n, kind, **kw)


def construct(source, n=None):
    """Build an operator from a matrix, a MultiplierSeq or a DiffOpForm."""
    if isinstance(source, LinearOperator):
        return source if n is None else source.restrict(n)
    if isinstance(source, MultiplierSeq):
        return LinearOperator.from_multipliers(source, n)
    if isinstance(source, DiffOpForm):
        if n is None:
            raise DimensionMismatch("a differential form needs n")
        return LinearOperator.from_diffop(source, n)
    return LinearOperator.from_matrix(source, n)


def apply(T, f):
    if f.degree > T.n:
        raise DegreeExceeded(f"deg f = {f.degree} exceeds n = {T.n}")
    out = Poly1([])
    for k, c in enumerate(f.coeffs):
        if c != 0:
            out = out + T.columns[k] * c
    return out


def apply_ext2(T, f):
    """T acting on z with w held fixed."""
    if f.zdeg > T.n:
        raise DegreeExceeded(f"zdeg f = {f.zdeg} exceeds n = {T.n}")
    return Poly2.from_w_coeffs([apply(T, q) for q in f.w_coeffs()]) \
        if not f.is_zero else f


def symbol(T, n, kind="plus", mobius=None, sign="plus", N=None):
    """Symbol of T at degree n.

    ``kind``: ``plus`` -> T[(z+w)^n]; ``minus`` -> T[(z-w)^n];
    ``circ`` -> T applied to the circular kernel of ``mobius``;
    ``gt_trunc`` -> :class:`SymbolSeries` of the modified symbol up to ``N``.
    """
    if kind == "gt_trunc":
        N = n if N is None else N
        if N > T.n:
            raise DegreeExceeded(f"operator only defined up to degree {T.n}")
        ps = []
        for k in range(N + 1):
            s = QQi((-1) ** k, 0) / factorial(k) if T.exact \
                else (-1) ** k / factorial(k)
            ps.append(T.columns[k] * s)
        truncs = []
        for m in range(N + 1):
            qs = [ps[k] * falling(m, k) for k in range(m + 1)]
            truncs.append(Poly2.from_w_coeffs(qs))
        return SymbolSeries(tuple(ps), tuple(truncs))
    if n > T.n:
        raise DegreeExceeded(f"n = {n} exceeds operator bound {T.n}")
    if kind in ("plus", "minus"):
        sgn = 1 if kind == "plus" else -1
        qs = [Poly1([]) for _ in range(n + 1)]
        # coefficient of w^(n-k) is C(n,k) (+/-1)^(n-k) T(z^k)
        for k in range(n + 1):
            qs[n - k] = T.columns[k] * (comb(n, k) * sgn ** (n - k))
        return Poly2.from_w_coeffs(qs)
    if kind == "circ":
        if mobius is None:
            raise ValueError("circ symbol needs a Mobius map")
        return apply_ext2(T, circ_symbol_kernel(mobius, n, sign))
    raise ValueError(f"unknown symbol kind {kind!r}")


def conjugate_operator(T, mobius):
    """S = phi_m^{-1} T phi_n, with m the tight codomain degree of T."""
    if T.is_zero:
        return T
    cols = []
    for k in range(T.n + 1):
        g = apply(T, conjugate_poly(mobius, T.n, Poly1.monomial(k)))
        cols.append(conjugate_poly(mobius, T.m, g, "inverse"))
    return LinearOperator(cols, T.n)


@dataclass(frozen=True)
class RangeAnalysis:
    rank: int
    basis: tuple
    phase: object = None        # unit complex eta, or None
    phase_exact: object = None  # exact rotation (positive multiple of eta)
    pivots: tuple = ()

    def __iter__(self):
        return iter((self.rank, self.basis, self.phase))


def _exact_pivots(T):
    rows = [list(r) for r in T.matrix]
    ncols = T.n + 1
    pivots, r = [], 0
    for k in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][k]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r][k]
        for i in range(len(rows)):
            if i != r and rows[i][k]:
                fct = rows[i][k] / piv
                rows[i] = [a - fct * b for a, b in zip(rows[i], rows[r])]
        pivots.append(k)
        r += 1
        if r == len(rows):
            break
    return pivots


def _float_pivots(T, tol):
    a = T.to_numpy()
    scale = max(np.abs(a).max(), 1e-300)
    pivots, basis = [], np.zeros((a.shape[0], 0), dtype=complex)
    for k in range(a.shape[1]):
        v = a[:, k]
        if basis.shape[1]:
            q, _ = np.linalg.qr(basis)
            v = v - q @ (q.conj().T @ v)
        if np.linalg.norm(v) > tol * scale * np.sqrt(a.shape[0]):
            pivots.append(k)
            basis = np.column_stack([basis, a[:, k]])
    return pivots


def _phase(T, tol):
    """Common phase eta making every column real, from the largest entry."""
    entries = [v for c in T.columns for v in c.coeffs]
    if not entries:
        return None, None
    big = max(entries, key=abs)
    if isinstance(big, QQi):
        eta_ex = big.conjugate()
        n2 = big.abs2()
        # use the exact unit phase when |big| is rational
        from gmpy2 import is_square
        num, den = n2.numerator, n2.denominator
        if is_square(num) and is_square(den):
            from gmpy2 import isqrt
            eta_ex = eta_ex / QQi(type(n2)(isqrt(num), isqrt(den)))
        if all(not (eta_ex * v).im for v in entries):
            e = complex(eta_ex)
            return e / abs(e), eta_ex
        return None, None
    eta = big.conjugate() / abs(big)
    scale = abs(big)
    if all(abs((eta * v).imag) <= tol * scale for v in entries):
        return eta, eta
    return None, None


def range_analysis(T, tol=1e-9):
    """Rank of T, a basis of its range when rank <= 2, and a common phase.

    The basis is made of the first linearly independent columns.  The
    phase eta (when it exists) is taken from the largest-magnitude matrix
    entry, rotated to be real positive; it is unique up to sign.
    """
    pivots = _exact_pivots(T) if T.exact else _float_pivots(T, tol)
    rank = len(pivots)
    basis = tuple(T.columns[k] for k in pivots) if rank <= 2 else ()
    eta, eta_ex = _phase(T, tol)
    return RangeAnalysis(rank, basis, eta, eta_ex, tuple(pivots))


def is_scalar(x):
    return is_exact_scalar(x) or isinstance(x, (float, complex))
