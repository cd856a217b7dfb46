"""Bivariate stability oracle: certified stable, witnessed unstable, or unknown.

``certify`` looks for a checkable reason why f has no zeros in H x H
(determinantal provenance, factorization into certified factors, the
degree-one Hermite-Biehler test, homogeneous and quadratic closed forms).
``falsify`` looks for a zero in H x H by slicing: for each sampled w0 in H
the univariate polynomial z -> f(z, w0) is solved, and any slice with a
root in H is re-checked exactly at the rationalized w0 before a witness is
returned.  ``decide`` combines the two.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import sympy
from gmpy2 import mpq
from scipy.stats import qmc

from .classify import (DEFAULT_TOL, is_hyperbolic, is_stable1,
                       pencil_relation)
from .errors import DegreeExceeded, NotHyperbolic, ZeroPolynomial
from .poly import Poly1, Poly2, PolyN, all_roots, elementary_symmetric
from .scalar import QQi, rationalize

__all__ = [
    "Witness", "Certificate", "SearchEvidence", "Verdict2", "falsify",
    "certify", "decide", "gen_real_stable", "real_stable_from_matrices",
    "det_poly2", "polarize", "diag_restrict", "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000
IM_MIN = 1e-6
IM_MAX = 1e6
_BATCH = 512


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------

def _mpc(x):
    if isinstance(x, QQi):
        return mpmath.mpc(mpmath.mpf(int(x.re.numerator)) / int(x.re.denominator),
                          mpmath.mpf(int(x.im.numerator)) / int(x.im.denominator))
    return mpmath.mpc(complex(x))


def _residual(f, z, w):
    """(|f(z,w)|, |f(z,w)| / sum |c_ij||z|^i|w|^j) in extended precision."""
    with mpmath.workdps(40):
        zz, ww = _mpc(z), _mpc(w)
        val = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        for (i, j), c in f.terms.items():
            t = _mpc(c) * zz ** i * ww ** j
            val += t
            scale += abs(t)
        res = abs(val)
        rel = res / scale if scale else res
        return float(res), float(rel)


def _im(x):
    return x.im if isinstance(x, QQi) else complex(x).imag


@dataclass(frozen=True)
class Witness:
    """A zero (or near-zero) of f with both coordinates in the open upper half-plane."""

    z: object
    w: object
    residual: float
    residual_rel: float = 0.0
    exact: bool = False

    def __post_init__(self):
        if not (_im(self.z) > 0 and _im(self.w) > 0):
            raise ValueError("witness coordinates must lie in the open upper half-plane")

    def verify(self, f, tol=DEFAULT_TOL):
        if not (_im(self.z) > 0 and _im(self.w) > 0):
            return False
        if self.exact:
            g = f if f.exact else f.rationalize()
            return not g(self.z, self.w)
        return _residual(f, self.z, self.w)[1] <= tol


@dataclass(frozen=True)
class SearchEvidence:
    samples_tested: int
    min_modulus_found: float
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.samples_tested <= 0:
            raise ValueError("search evidence needs at least one sample")


@dataclass(frozen=True)
class Certificate:
    """A re-checkable proof of stability.

    ``kind`` is one of ``determinantal``, ``degree1_hb``, ``product``,
    ``quadratic_closed_form``, ``univariate`` or ``domain_pullback``.
    """

    kind: str
    data: dict = field(default_factory=dict)

    def verify(self, f):
        g = f if f.exact else f.rationalize()
        k = self.kind
        if k == "determinantal":
            A, B, C = self.data["A"], self.data["B"], self.data["C"]
            if not (_is_psd(A) and _is_psd(B) and _is_symmetric(C)):
                return False
            return g == det_poly2(A, B, C) * self.data.get("sign", 1)
        if k == "degree1_hb":
            return _degree1_hb(g) is not None
        if k == "univariate":
            return _univariate(g) is not None
        if k == "quadratic_closed_form":
            return _quadratic(g) is not None
        if k == "product":
            if "homogeneous" in self.data:
                return _homogeneous(g) is not None
            prod = Poly2.constant(self.data["constant"])
            for (h, mult), cert in zip(self.data["factors"], self.data["certs"]):
                if not cert.verify(h):
                    return False
                prod = prod * h ** mult
            return prod == g
        if k == "domain_pullback":
            inner = self.data["inner"]
            return inner.verify(self.data["pulled"])
        return False


@dataclass(frozen=True)
class Verdict2:
    outcome: str  # stable | unstable | unknown
    certificate: Certificate = None
    witness: Witness = None
    evidence: SearchEvidence = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        need = {"stable": self.certificate, "unstable": self.witness,
                "unknown": self.evidence}
        if self.outcome not in need:
            raise ValueError(f"bad outcome {self.outcome!r}")
        if need[self.outcome] is None:
            raise ValueError(f"{self.outcome} verdict is missing its artifact")

    @property
    def stable(self):
        return self.outcome == "stable"

    @property
    def unstable(self):
        return self.outcome == "unstable"

    @property
    def unknown(self):
        return self.outcome == "unknown"


# ---------------------------------------------------------------------------
# Exact matrix helpers
# ---------------------------------------------------------------------------

def _qmat(M):
    return [[rationalize(x) if not isinstance(x, (int, Fraction)) else QQi(x)
             for x in row] for row in M]


def _is_symmetric(M):
    M = _qmat(M)
    n = len(M)
    return all(M[i][j] == M[j][i] and not M[i][j].im
               for i in range(n) for j in range(n))


def _det_scalar(M):
    n = len(M)
    if n == 0:
        return QQi(1)
    M = [list(r) for r in M]
    det = QQi(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return QQi(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        det = det * M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] = M[i][j] - f * M[k][j]
    return det


def _is_psd(M):
    """Symmetric with every principal minor non-negative."""
    if not _is_symmetric(M):
        return False
    M = _qmat(M)
    n = len(M)
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(n), r):
            d = _det_scalar([[M[i][j] for j in idx] for i in idx])
            if d.re < 0:
                return False
    return True


def _det_poly(M):
    """Determinant of a square matrix of Poly2 entries (Laplace expansion)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = Poly2({})
    for j in range(n):
        if M[0][j].is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_poly(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_poly2(A, B, C):
    """det(z A + w B + C) expanded exactly."""
    A, B, C = _qmat(A), _qmat(B), _qmat(C)
    n = len(A)
    if not (len(B) == n and len(C) == n):
        raise ValueError("matrix size mismatch")
    Z, W = Poly2.z(), Poly2.w()
    M = [[Z * A[i][j] + W * B[i][j] + C[i][j] for j in range(n)] for i in range(n)]
    return _det_poly(M)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def _real_rotation(f):
    """Exact scalar s with s*f real, or None."""
    if f.is_real():
        return QQi(1)
    big = max(f.terms.values(), key=lambda c: c.abs2())
    s = big.conjugate()
    if all(not (s * c).im for c in f.terms.values()):
        return s
    return None


def _univariate(f):
    """f depends on one variable only; stability is univariate stability."""
    if f.is_zero:
        return None
    if f.wdeg <= 0:
        p = Poly1([f.coeff(i, 0) for i in range(f.zdeg + 1)])
    elif f.zdeg <= 0:
        p = Poly1([f.coeff(0, j) for j in range(f.wdeg + 1)])
    else:
        return None
    if bool(is_stable1(p)):
        return Certificate("univariate", {"poly": p})
    return None


def _degree1_hb(f):
    """Real f of degree <= 1 in w (or, after swapping, in z)."""
    if f.is_zero or not f.is_real():
        return None
    swapped = False
    if f.wdeg > 1:
        if f.zdeg > 1:
            return None
        f, swapped = f.swap(), True
    qs = f.w_coeffs()
    q0 = qs[0]
    q1 = qs[1] if len(qs) > 1 else Poly1([])
    try:
        rel = pencil_relation(q1, q0)
    except NotHyperbolic:
        return None
    if rel.f_ll_g:
        return Certificate("degree1_hb", {"Q0": q0, "Q1": q1, "swapped": swapped})
    return None


def _homogeneous(f):
    """Real homogeneous f: stable iff f(t, 1) has all its roots in (-inf, 0]."""
    if f.is_zero or not f.is_real() or not f.is_homogeneous():
        return None
    g = Poly1([f.coeff(i, f.total_degree - i) for i in range(f.total_degree + 1)])
    from .poly import real_root_count
    if g.degree < 0:
        return None
    if g.degree == 0:
        ok = True
    else:
        _, on_line = real_root_count(g)
        _, nonpos = real_root_count(g, (-math.inf, 0))
        ok = on_line == g.degree and nonpos == g.degree
    # roots of g at t give factors (z - t w); missing degree gives factors w
    if ok:
        return Certificate("product", {"homogeneous": g})
    return None


def _sign(x):
    return (x > 0) - (x < 0)


def _quadratic(f):
    """Closed-form stability test for real f of total degree <= 2, or linear complex f."""
    if f.is_zero:
        return None
    if f.total_degree <= 1:
        a, b, c = f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0)
        if not a and not b:
            return Certificate("quadratic_closed_form", {"form": "constant"})
        if a and b:
            lam = a / b
            if lam.im or lam.re < 0:
                return None
            ok = (c / b).im >= 0
        else:
            ok = (c / (a or b)).im >= 0
        return Certificate("quadratic_closed_form", {"form": "linear"}) if ok else None
    if f.total_degree != 2 or not f.is_real():
        return None
    if f.zdeg <= 1 or f.wdeg <= 1:
        return None
    al, be, ga = (f.coeff(2, 0).re, f.coeff(1, 1).re, f.coeff(0, 2).re)
    de, ep, c0 = f.coeff(1, 0).re, f.coeff(0, 1).re, f.coeff(0, 0).re
    if al < 0:
        al, be, ga, de, ep, c0 = -al, -be, -ga, -de, -ep, -c0
    if ga <= 0 or be <= 0:
        return None
    disc = be * be - 4 * al * ga
    if disc < 0:
        return None
    if disc > 0:
        # critical point of the quadratic, then f = q(shifted) + f(p0)
        det = 4 * al * ga - be * be
        z0 = (-de * 2 * ga + be * ep) / det
        w0 = (-2 * al * ep + be * de) / det
        val = (al * z0 * z0 + be * z0 * w0 + ga * w0 * w0 + de * z0 + ep * w0 + c0)
        if val <= 0:
            return Certificate("quadratic_closed_form",
                               {"form": "indefinite", "critical_value": val})
        return None
    r = be / (2 * al)
    e = ep - de * r
    if e:
        return None
    if de * de - 4 * al * c0 >= 0:
        return Certificate("quadratic_closed_form", {"form": "square", "r": r})
    return None


def _sympy_of(f):
    z, w = sympy.symbols("z w")
    expr = 0
    for (i, j), c in f.terms.items():
        re = sympy.Rational(int(c.re.numerator), int(c.re.denominator))
        im = sympy.Rational(int(c.im.numerator), int(c.im.denominator))
        expr += (re + sympy.I * im) * z ** i * w ** j
    return expr, z, w


def _from_sympy(expr, z, w):
    p = sympy.Poly(expr, z, w)
    terms = {}
    for (i, j), c in p.terms():
        re, im = sympy.re(c), sympy.im(c)
        terms[(int(i), int(j))] = QQi(mpq(int(re.p), int(re.q)),
                                      mpq(int(im.p), int(im.q)))
    return Poly2(terms)


_SIMPLE = (_univariate, _degree1_hb, _homogeneous, _quadratic)


def _certify_simple(f):
    for test in _SIMPLE:
        cert = test(f)
        if cert is not None:
            return cert
    return None


def _product(f, max_degree=40):
    if f.total_degree > max_degree or f.total_degree < 2:
        return None
    if f.total_degree == 2 and f.is_real():
        # the closed forms already decide every real quadratic
        return None
    s = _real_rotation(f)
    g = f * s if s is not None else f
    if s is None and f.total_degree > 8:
        return None
    expr, z, w = _sympy_of(g)
    if s is None:
        const, facs = sympy.factor_list(expr, z, w, gaussian=True)
    else:
        const, facs = sympy.factor_list(expr, z, w)
    if len(facs) == 1 and facs[0][1] == 1:
        return None
    factors, certs = [], []
    for fac, mult in facs:
        h = _from_sympy(fac, z, w)
        cert = _certify_simple(h)
        if cert is None:
            return None
        factors.append((h, int(mult)))
        certs.append(cert)
    c = QQi(mpq(int(sympy.re(const).p), int(sympy.re(const).q)),
            mpq(int(sympy.im(const).p), int(sympy.im(const).q)))
    if s is not None:
        c = c / s
    return Certificate("product", {"constant": c, "factors": tuple(factors),
                                   "certs": tuple(certs)})


def certify(f):
    """A stability certificate for ``f``, or None.

    Tries provenance from the generator, then the cheap closed forms
    (one-variable, degree one in a variable, homogeneous, total degree
    two), then factorization into certified factors.
    """
    if f.is_zero:
        return None
    prov = getattr(f, "provenance", None)
    g = f if f.exact else f.rationalize()
    if isinstance(prov, Certificate) and prov.verify(g):
        return prov
    cert = _certify_simple(g)
    if cert is not None:
        return cert
    s = _real_rotation(g)
    if s is not None and s != 1:
        # a complex multiple of a real polynomial: certify the real one
        h = g * s
        cert = _certify_simple(h)
        if cert is not None:
            return Certificate("product", {"constant": QQi(1) / s,
                                           "factors": ((h, 1),),
                                           "certs": (cert,)})
    return _product(g)


# ---------------------------------------------------------------------------
# Falsification
# ---------------------------------------------------------------------------

def _seed_points():
    pts = [1j, 1 + 1j, -1 + 1j, 2 + 1j, -2 + 1j, 0.5 + 0.5j, -0.5 + 0.5j]
    pts += [10.0 ** k * 1j for k in range(-6, 7) if k]
    pts += [10.0 ** k * (1 + 1j) for k in (-3, -1, 1, 3)]
    pts += [10.0 ** k * (-1 + 1j) for k in (-3, -1, 1, 3)]
    return pts


def _halton_points(count, seed, im_min, im_max, skip=0):
    if count <= 0:
        return np.zeros(0, dtype=complex)
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    if skip:
        sampler.fast_forward(skip)
    u = sampler.random(count)
    re = np.tan(np.pi * (u[:, 0] - 0.5))
    lo, hi = math.log10(im_min), math.log10(im_max)
    im = 10.0 ** (lo + u[:, 1] * (hi - lo))
    return re + 1j * im


def _slice_roots(A, ws):
    """Roots of z -> f(z, w) for each w; A[i, j] = coeff of z^i w^j.

    Returns (roots (S, d) array padded with nan, lead (S,), irregular mask).
    """
    d = A.shape[0] - 1
    V = np.vander(ws, A.shape[1], increasing=True).T  # (wdeg+1, S)
    P = (A @ V).T  # (S, d+1): coefficient of z^i at each w
    scale = np.abs(P).max(axis=1)
    scale[scale == 0] = 1.0
    P = P / scale[:, None]
    lead = P[:, d]
    regular = np.abs(lead) > 1e-12
    roots = np.full((len(ws), d), np.nan + 0j)
    if d == 1:
        roots[regular, 0] = -P[regular, 0] / lead[regular]
    elif d > 1 and regular.any():
        Pr = P[regular]
        mon = Pr[:, :d] / Pr[:, d:d + 1]
        comp = np.zeros((len(Pr), d, d), dtype=complex)
        comp[:, np.arange(1, d), np.arange(d - 1)] = 1.0
        comp[:, :, d - 1] = -mon
        with np.errstate(all="ignore"):
            roots[regular] = np.linalg.eigvals(comp)
    irregular = ~regular
    for s in np.nonzero(irregular)[0]:
        row = P[s].copy()
        nz = np.nonzero(np.abs(row) > 1e-12)[0]
        if len(nz) == 0:
            continue
        top = nz.max()
        if top >= 1:
            r = np.roots(row[:top + 1][::-1])
            roots[s, :len(r)] = r
    return roots, lead * scale, irregular


def _scores(roots):
    """Largest relative imaginary part of the slice roots (nan-safe)."""
    with np.errstate(invalid="ignore"):
        rel = roots.imag / (1.0 + np.abs(roots))
    rel = np.where(np.isnan(rel), -np.inf, rel)
    return rel.max(axis=1) if rel.shape[1] else np.full(len(roots), -np.inf)


def _min_modulus(roots, lead):
    """min |f(z', w)| with z' each root pushed onto the closed upper half-plane."""
    best = np.inf
    d = roots.shape[1]
    if d == 0:
        return float(np.abs(lead).min())
    with np.errstate(all="ignore"):
        zp = roots.real + 1j * np.maximum(roots.imag, 0.0)
        diffs = np.abs(zp[:, :, None] - roots[:, None, :])
        vals = np.abs(lead)[:, None] * np.nanprod(diffs, axis=2)
        v = np.nanmin(vals) if np.isfinite(vals).any() else np.inf
    best = min(best, float(v))
    return best


def _nice_q(x, dens=(1, 2, 3, 4, 5, 8, 10, 16, 100)):
    for den in dens:
        yield QQi(Fraction(x.real).limit_denominator(den),
                  Fraction(x.imag).limit_denominator(den))


def _exact_witness(f, w0):
    """Exact check of the slice at w0; a Witness if it has a root in H."""
    wq = rationalize(complex(w0))
    if wq.im <= 0:
        return None
    g = f.slice_w(wq)
    if g.is_zero:
        return Witness(QQi(0, 1), wq, 0.0, 0.0, True)
    if g.degree < 1 or bool(is_stable1(g)):
        return None
    best = None
    for r in all_roots(g):
        if r.value.imag - r.radius > 0 and (best is None or r.value.imag > best.value.imag):
            best = r
    if best is None:
        return None
    # prefer a nice exact pair when one is close by
    zqs = [zq for zq in dict.fromkeys(_nice_q(best.value)) if zq.im > 0]
    for wn in dict.fromkeys([wq] + list(_nice_q(complex(wq)))):
        if wn.im <= 0:
            continue
        gn = f.slice_w(wn) if wn != wq else g
        if gn.is_zero:
            continue
        for zq in zqs:
            if not gn(zq):
                return Witness(zq, wn, 0.0, 0.0, True)
    z = best.value
    res, rel = _residual(f, z, wq)
    return Witness(z, complex(wq), res, rel, False)


def _falsify(f, budget, seed, im_min, im_max, tol):
    if f.is_zero:
        raise ZeroPolynomial("falsify needs a nonzero polynomial")
    g = f if f.exact else f.rationalize()
    swapped = False
    if g.zdeg <= 0 and g.wdeg > 0:
        g, swapped = g.swap(), True
    grid = {"seed_points": 0, "halton": 0, "refined": 0, "im_min": im_min,
            "im_max": im_max, "variable": "z" if swapped else "w", "seed": seed}
    if g.zdeg <= 0:
        # constant polynomial: never vanishes
        ev = SearchEvidence(1, float(abs(g.coeff(0, 0))), grid)
        return None, ev
    A = g.to_array()
    tested = 0
    min_mod = np.inf
    verified = 0
    rng = np.random.default_rng(seed)
    best_pts = []  # (score, w)

    def run(ws):
        nonlocal tested, min_mod, verified
        roots, lead, _ = _slice_roots(A, ws)
        tested += len(ws)
        min_mod = min(min_mod, _min_modulus(roots, lead))
        sc = _scores(roots)
        order = np.argsort(-sc, kind="stable")
        for idx in order[:8]:
            best_pts.append((float(sc[idx]), complex(ws[idx])))
        best_pts.sort(key=lambda t: -t[0])
        del best_pts[16:]
        # first witness by grid index wins, for reproducibility
        cand = [i for i in range(len(ws)) if sc[i] > 1e-13][:4]
        for i in cand:
            if verified >= 64:
                break
            verified += 1
            wit = _exact_witness(g, ws[i])
            if wit is not None:
                return wit
        return None

    def finish(wit):
        if wit is None:
            return None
        if swapped:
            wit = Witness(wit.w, wit.z, wit.residual, wit.residual_rel, wit.exact)
        return wit

    seeds = np.array(_seed_points()[:budget], dtype=complex)
    grid["seed_points"] = len(seeds)
    wit = run(seeds)
    if wit is not None:
        return finish(wit), None
    global_budget = max(int(0.7 * budget) - len(seeds), 0)
    done = 0
    while done < global_budget:
        k = min(_BATCH, global_budget - done)
        ws = _halton_points(k, seed, im_min, im_max, skip=done)
        done += k
        grid["halton"] = done
        wit = run(ws)
        if wit is not None:
            return finish(wit), None
    remaining = budget - tested
    while remaining > 0 and best_pts:
        k = min(_BATCH, remaining)
        centers = np.array([w for _, w in best_pts])
        pick = centers[rng.integers(0, len(centers), k)]
        spread = rng.normal(size=(k, 2))
        ims = pick.imag * np.exp(spread[:, 1])
        ims = np.clip(ims, im_min, im_max)
        res = pick.real + spread[:, 0] * pick.imag
        ws = res + 1j * ims
        grid["refined"] += k
        remaining -= k
        wit = run(ws)
        if wit is not None:
            return finish(wit), None
    ev = SearchEvidence(max(tested, 1), float(min_mod), grid)
    return None, ev


def falsify(f, budget=DEFAULT_BUDGET, seed=0, im_min=IM_MIN, im_max=IM_MAX,
            tol=DEFAULT_TOL, return_evidence=False):
    """Search for a zero of f in H x H; returns a Witness or None."""
    wit, ev = _falsify(f, budget, seed, im_min, im_max, tol)
    if return_evidence:
        return wit, ev
    return wit


# ---------------------------------------------------------------------------
# Decision
# ---------------------------------------------------------------------------

def decide(f, budget=DEFAULT_BUDGET, seed=0, tol=DEFAULT_TOL):
    """Certify, else falsify, else report the search as unknown."""
    if f.is_zero:
        raise ZeroPolynomial("decide needs a nonzero polynomial")
    cert = certify(f)
    if cert is not None:
        return Verdict2("stable", certificate=cert)
    wit, ev = _falsify(f, budget, seed, IM_MIN, IM_MAX, tol)
    if wit is not None:
        return Verdict2("unstable", witness=wit)
    notes = {}
    g = f if f.exact else f.rationalize()
    if not g.is_real() and _real_rotation(g) is None:
        # f = p + i q stable forces p and q real stable
        for name, part in (("real_part", g.real_part()), ("imag_part", g.imag_part())):
            if part.is_zero or certify(part) is not None:
                continue
            pw = falsify(part, budget=min(budget, 2000), seed=seed)
            if pw is not None:
                notes["split_filter"] = f"{name} is not real stable"
                if pw.exact and not g(pw.z, pw.w):
                    return Verdict2("unstable", witness=pw, notes=notes)
                break
    return Verdict2("unknown", evidence=ev, notes=notes)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def real_stable_from_matrices(A, B, C, sign=1):
    """f = sign * det(zA + wB + C) with its determinantal certificate."""
    A, B, C = _qmat(A), _qmat(B), _qmat(C)
    if not (_is_psd(A) and _is_psd(B)):
        raise ValueError("A and B must be positive semi-definite")
    if not _is_symmetric(C):
        raise ValueError("C must be symmetric")
    f = det_poly2(A, B, C) * sign
    cert = Certificate("determinantal", {"A": A, "B": B, "C": C, "sign": sign})
    return f.with_provenance(cert), cert


def _random_full_rank(rng, d, lo=-2, hi=2):
    while True:
        M = rng.integers(lo, hi + 1, size=(d, d))
        if round(abs(np.linalg.det(M))) >= 1:
            return M


def gen_real_stable(d, seed=None, rng=None):
    """Random real stable f = +/- det(zA + wB + C) with A, B = M M^T."""
    if d < 1:
        raise ValueError("d must be at least 1")
    rng = np.random.default_rng(seed) if rng is None else rng
    MA = _random_full_rank(rng, d)
    MB = _random_full_rank(rng, d)
    A = (MA @ MA.T).tolist()
    B = (MB @ MB.T).tolist()
    S = rng.integers(-3, 4, size=(d, d))
    C = (np.triu(S) + np.triu(S, 1).T).tolist()
    sign = int(rng.choice([-1, 1]))
    return real_stable_from_matrices(A, B, C, sign)


# ---------------------------------------------------------------------------
# Polarization
# ---------------------------------------------------------------------------

def polarize(f, d):
    """Replace w^k by e_k(x_1..x_d)/C(d,k); variables are (z, x_1, ..., x_d)."""
    if f.wdeg > d:
        raise DegreeExceeded(f"wdeg f = {f.wdeg} exceeds d = {d}")
    es = elementary_symmetric(d)
    terms = {}
    for (i, k), c in f.terms.items():
        scale = c / comb(d, k) if isinstance(c, QQi) else c / comb(d, k)
        for mono in es[k].terms:
            key = (i,) + mono
            terms[key] = terms.get(key, 0) + scale
    return PolyN(d + 1, terms)


def diag_restrict(P):
    """Set x_1 = ... = x_d = w in a polynomial in (z, x_1, ..., x_d)."""
    terms = {}
    for key, c in P.terms.items():
        k = (key[0], sum(key[1:]))
        terms[k] = terms[k] + c if k in terms else c
    return Poly2(terms)
