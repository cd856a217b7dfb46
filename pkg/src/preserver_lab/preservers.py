"""Classifiers deciding whether a linear operator preserves a zero locus.

Every classifier returns a :class:`PreserverReport`.  Low-rank
(degenerate) clauses are tested first and exactly; otherwise the relevant
symbol polynomial is handed to the bivariate oracle.  A ``preserver``
verdict always rests on a matched degenerate clause or on certified
symbols, a ``non_preserver`` verdict always carries a concrete witness,
and anything else is ``unknown``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .classify import (hb_split, is_domain_stable1, is_hyperbolic,
                       is_stable1, pencil_relation, szasz_bound)
from .domains import (INF, CircularDomain, Mobius, classify_domain,
                      conjugate_bivar)
from .errors import (NotHyperbolic, NotRealOperator, NotStable,
                     UnboundedDomainRequired)
from .operators import (LinearOperator, MultiplierSeq, conjugate_operator,
                        range_analysis, symbol)
from .poly import Poly1, Poly2, real_root_count
from .scalar import QQi, rationalize
from .stab2 import DEFAULT_BUDGET, Certificate, Verdict2, decide, falsify

__all__ = [
    "PreserverReport", "InputWitness", "finitehyp_classify",
    "finitehypC_classify", "finitestab_classify", "circular_classify",
    "boundary_classify", "algebraic_sweep", "transcendental_probe",
    "multiplier_test", "counterexample_search", "in_target_class",
]


@dataclass(frozen=True)
class InputWitness:
    """An input f in the source class whose image leaves the target class."""

    f: Poly1
    image: Poly1
    root: object  # offending root of the image (None if the image degree is wrong)
    reason: str = ""


@dataclass
class PreserverReport:
    problem: str
    verdict: str  # preserver | non_preserver | unknown
    clause: str = ""
    n: int = 0
    semantics: str = "pb3"
    artifacts: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("preserver", "non_preserver", "unknown"):
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def witness(self):
        return self.artifacts.get("input_witness") or self.artifacts.get("symbol_witness")


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _real_rotation1(p):
    """Exact scalar s with s*p real (p exact), or None."""
    if p.is_real():
        return QQi(1)
    big = max(p.coeffs, key=lambda c: c.abs2())
    s = big.conjugate()
    if all(not (s * c).im for c in p.coeffs):
        return s
    return None


def _hyperbolic_up_to_scalar(p):
    if p.is_zero:
        return True
    s = _real_rotation1(p)
    return s is not None and bool(is_hyperbolic(p * s))


def in_target_class(g, problem, mobius=None):
    """(ok, offending_root) for membership of g in the target class or zero."""
    if g.is_zero or g.degree == 0:
        return True, None
    if problem == "hyp":
        if not g.is_real():
            return False, None
        v = is_hyperbolic(g)
        return bool(v), v.witness
    if problem == "hypC":
        s = _real_rotation1(g)
        if s is None:
            roots = [r.value for r in _roots(g)]
            return False, max(roots, key=lambda r: abs(r.imag))
        v = is_hyperbolic(g * s)
        return bool(v), v.witness
    if problem == "stab":
        v = is_stable1(g)
        return bool(v), v.witness
    if problem == "circular":
        v = is_domain_stable1(g, CircularDomain(mobius, "open_C"))
        return bool(v), v.witness
    if problem == "boundary":
        for view in ("open_C", "reversed_Cr"):
            v = is_domain_stable1(g, CircularDomain(mobius, view))
            if not v:
                return False, v.witness
        return True, None
    raise ValueError(f"unknown problem {problem!r}")


def _roots(g):
    from .poly import all_roots
    return all_roots(g)


def _source_points(problem, mobius, rng, k):
    """k exact points of the source root region."""
    pts = []
    for _ in range(k):
        if problem in ("hyp", "hypC"):
            pts.append(QQi(_rat(rng)))
        elif problem == "stab":
            pts.append(QQi(_rat(rng), -abs(_rat(rng))))
        else:
            u = QQi(_rat(rng), 0) if problem == "boundary" else \
                QQi(_rat(rng), -abs(_rat(rng)))
            z = mobius.inverse(u)
            if z is INF:
                z = mobius.inverse(u + 1)
            pts.append(z)
    return pts


def _rat(rng):
    num = int(rng.integers(-12, 13))
    den = int(rng.integers(1, 5))
    return Fraction(num, den)


def _anchor_points(problem, mobius):
    """Deterministic source-region points tried before random ones."""
    if problem in ("hyp", "hypC"):
        return [QQi(-1), QQi(1), QQi(0), QQi(2), QQi(-2)]
    if problem == "stab":
        return [QQi(0, -1), QQi(0), QQi(-1), QQi(1), QQi(1, -1)]
    kind, params = classify_domain(mobius)
    out = []
    if problem == "circular" and kind == "exterior":
        out.append(params["center"])
    us = [QQi(0), QQi(-1), QQi(1), QQi(2)] if problem == "boundary" else \
        [QQi(0, -1), QQi(0), QQi(1, -1), QQi(-1, -1), QQi(0, -3)]
    for u in us:
        z = mobius.inverse(u)
        if z is not INF and z not in out:
            out.append(z)
    return out


def counterexample_search(T, n, problem, mobius=None, semantics="pb3",
                          budget=500, seed=0):
    """Look for f in the source class with T(f) outside the target class.

    Candidates are products of linear factors with roots in the source
    region: powers of anchor points first (highest degree first), then
    random products.  pb3 uses degree exactly n, pb2 every degree <= n.
    Returns an :class:`InputWitness` or None when the budget runs out.
    """
    T = T.restrict(n) if T.n != n else T
    degrees = [n] if semantics == "pb3" else list(range(n, -1, -1))
    anchors = _anchor_points(problem, mobius)
    tried = 0

    def check(f):
        g = T(f)
        ok, root = in_target_class(g, problem, mobius)
        if not ok:
            return InputWitness(f, g, root, "image outside the target class")
        return None

    for a in anchors:
        for k in degrees:
            f = Poly1([-a, 1]) ** k
            tried += 1
            w = check(f)
            if w is not None:
                return w
    rng = np.random.default_rng(seed)
    while tried < budget:
        k = degrees[int(rng.integers(0, len(degrees)))]
        pts = _source_points(problem, mobius, rng, k)
        f = Poly1([1])
        for p in pts:
            f = f * Poly1([-p, 1])
        tried += 1
        w = check(f)
        if w is not None:
            return w
    return None


def _decide(f, budget, seed):
    if f.is_zero:
        return None
    return decide(f, budget=budget, seed=seed)


def _combine(verdicts):
    """Overall outcome of an 'all must be stable' requirement."""
    if any(v is not None and v.unstable for v in verdicts):
        return "unstable"
    if any(v is None or v.unknown for v in verdicts):
        return "unknown" if not all(v is None for v in verdicts) else "stable"
    return "stable"


def _set_symbol_witness(rep, witness, poly):
    """Record a zero in H x H of ``poly`` (the symbol or its pullback)."""
    rep.artifacts["symbol_witness"] = witness
    rep.artifacts["symbol_witness_poly"] = poly


def _trivial(problem, n, semantics="pb3"):
    return PreserverReport(problem, "preserver", "zero_operator", n, semantics,
                           flags={"trivial_zero_operator": True})


def _attach_input_witness(report, T, n, problem, mobius=None, semantics="pb3",
                          seed=0):
    w = counterexample_search(T, n, problem, mobius, semantics, seed=seed)
    if w is not None:
        report.artifacts["input_witness"] = w
    return w


# ---------------------------------------------------------------------------
# Real line
# ---------------------------------------------------------------------------

def _clause_a_real(ra):
    """Rank <= 2 and the range is a hyperbolic pencil (rank 1: P hyperbolic)."""
    if ra.rank == 0:
        return True
    if ra.rank > 2:
        return False
    basis = list(ra.basis)
    if not all(p.is_real() for p in basis):
        return False
    if not all(bool(is_hyperbolic(p)) for p in basis):
        return False
    if ra.rank == 1:
        return True
    try:
        return pencil_relation(basis[0], basis[1]).in_proper_position
    except NotHyperbolic:
        return False


def finitehyp_classify(T, n=None, budget=DEFAULT_BUDGET, seed=0,
                       semantics="pb3", search_inputs=True):
    """Does the real operator T preserve hyperbolicity on R_n[z]?"""
    n = T.n if n is None else n
    T = T.restrict(n)
    if not T.is_real():
        raise NotRealOperator("hyperbolicity classification needs a real operator")
    if T.is_zero:
        return _trivial("hyp", n, semantics)
    ra = range_analysis(T)
    rep = PreserverReport("hyp", "unknown", "", n, semantics,
                          artifacts={"range": ra})
    if _clause_a_real(ra):
        rep.verdict, rep.clause = "preserver", "(a)"
        return rep
    syms = {}
    for kind, label in (("plus", "(b)"), ("minus", "(c)")):
        F = symbol(T, n, kind)
        v = _decide(F, budget, seed)
        syms[kind] = {"poly": F, "verdict": v}
        if v is not None and v.stable:
            rep.artifacts["symbols"] = syms
            rep.verdict, rep.clause = "preserver", label
            return rep
    rep.artifacts["symbols"] = syms
    outcomes = [s["verdict"] for s in syms.values()]
    if all(v is not None and v.unstable for v in outcomes):
        rep.verdict = "non_preserver"
        _set_symbol_witness(rep, syms["plus"]["verdict"].witness, syms["plus"]["poly"])
        if search_inputs:
            _attach_input_witness(rep, T, n, "hyp", semantics=semantics, seed=seed)
        return rep
    # some symbol verdict unknown: an input witness still settles the question
    if search_inputs and _attach_input_witness(rep, T, n, "hyp", seed=seed):
        rep.verdict = "non_preserver"
    return rep


def _phase_clause_b(T, ra):
    """Rank <= 2 with a common phase making the functionals and P, Q real."""
    if ra.rank > 2 or ra.phase_exact is None:
        return False
    rot = ra.phase_exact
    basis = [p * rot for p in ra.basis]
    if not all(p.is_real() and bool(is_hyperbolic(p)) for p in basis):
        return False
    if len(basis) < 2:
        return True
    try:
        return pencil_relation(basis[0], basis[1]).in_proper_position
    except NotHyperbolic:
        return False


def _real_multiple_symbol(F, budget, seed):
    """Is F a complex multiple of a real stable polynomial?

    Returns (outcome, eta, verdicts).  F qualifies exactly when it is both
    H-stable and (-H)-stable, which is how witnesses are produced when no
    rotation makes F real.
    """
    from .stab2 import _real_rotation
    g = F if F.exact else F.rationalize()
    s = _real_rotation(g)
    if s is not None:
        v = decide(g * s, budget=budget, seed=seed)
        return v.outcome, s, [(g * s, v)]
    v1 = decide(g, budget=budget, seed=seed)
    if v1.unstable:
        return "unstable", None, [(g, v1)]
    v2 = decide(g.reflect(), budget=budget, seed=seed)
    if v2.unstable:
        return "unstable", None, [(g, v1), (g.reflect(), v2)]
    return "unknown", None, [(g, v1), (g.reflect(), v2)]


def finitehypC_classify(T, n=None, budget=DEFAULT_BUDGET, seed=0,
                        semantics="pb3", search_inputs=True):
    """Does T map real-rooted polynomials of degree <= n to real-rooted ones?"""
    n = T.n if n is None else n
    T = T.restrict(n)
    if T.is_zero:
        return _trivial("hypC", n, semantics)
    ra = range_analysis(T)
    rep = PreserverReport("hypC", "unknown", "", n, semantics,
                          artifacts={"range": ra, "eta": ra.phase})
    if ra.rank == 1 and _hyperbolic_up_to_scalar(ra.basis[0]):
        rep.verdict, rep.clause = "preserver", "(a)"
        return rep
    if _phase_clause_b(T, ra):
        rep.verdict, rep.clause = "preserver", "(b)"
        return rep
    syms = {}
    for kind, label in (("plus", "(c)"), ("minus", "(d)")):
        F = symbol(T, n, kind)
        outcome, eta, vs = _real_multiple_symbol(F, budget, seed)
        syms[kind] = {"poly": F, "outcome": outcome, "eta": eta, "verdicts": vs}
        if outcome == "stable":
            rep.artifacts["symbols"] = syms
            rep.artifacts["eta"] = complex(eta) / abs(complex(eta))
            rep.verdict, rep.clause = "preserver", label
            return rep
    rep.artifacts["symbols"] = syms
    if all(s["outcome"] == "unstable" for s in syms.values()):
        rep.verdict = "non_preserver"
        poly, v = next(pv for pv in syms["plus"]["verdicts"] if pv[1].unstable)
        _set_symbol_witness(rep, v.witness, poly)
        if search_inputs:
            _attach_input_witness(rep, T, n, "hypC", semantics=semantics, seed=seed)
        return rep
    if search_inputs and _attach_input_witness(rep, T, n, "hypC", seed=seed):
        rep.verdict = "non_preserver"
    return rep


def finitestab_classify(T, n=None, budget=DEFAULT_BUDGET, seed=0,
                        semantics="pb3", search_inputs=True):
    """Does T preserve (upper half-plane) stability on C_n[z]?"""
    n = T.n if n is None else n
    T = T.restrict(n)
    if T.is_zero:
        return _trivial("stab", n, semantics)
    ra = range_analysis(T)
    rep = PreserverReport("stab", "unknown", "", n, semantics,
                          artifacts={"range": ra})
    if ra.rank == 1 and bool(is_stable1(ra.basis[0])):
        rep.verdict, rep.clause = "preserver", "(a)"
        return rep
    F = symbol(T, n, "plus")
    v = decide(F, budget=budget, seed=seed)
    rep.artifacts["symbols"] = {"plus": {"poly": F, "verdict": v}}
    if v.stable:
        rep.verdict, rep.clause = "preserver", "(b)"
    elif v.unstable:
        rep.verdict = "non_preserver"
        _set_symbol_witness(rep, v.witness, F)
        if search_inputs:
            _attach_input_witness(rep, T, n, "stab", semantics=semantics, seed=seed)
    elif search_inputs and _attach_input_witness(rep, T, n, "stab", seed=seed):
        rep.verdict = "non_preserver"
    return rep


# ---------------------------------------------------------------------------
# Circular domains
# ---------------------------------------------------------------------------

def _pullback_symbol(G, mobius, m, n):
    """f with G = phi_{n,w} phi_{m,z}(f)."""
    return conjugate_bivar(mobius, G, m, n, "both", "inverse")


def _degree_conditions(G, mobius, m, n):
    """Side conditions needed to pull C-stability back when C is an exterior."""
    inner = conjugate_bivar(mobius, G, m, n, "w_only", "inverse")
    b1 = not inner.is_zero and inner.zdeg == m
    b2 = not G.is_zero and G.wdeg == n
    return b1, b2


def _lift_witness(w, mobius):
    """Map a zero of the pulled-back polynomial in H x H to C x C."""
    if w is None:
        return None
    zc, wc = mobius.inverse(w.z), mobius.inverse(w.w)
    return {"z": zc, "w": wc, "exact": w.exact}


def _same_degree_filter(T, n, mobius, samples=100, seed=0):
    """Images of degree-n members of pi(C') should share one degree."""
    rng = np.random.default_rng(seed)
    degs = set()
    tried = 0
    for a in _anchor_points("circular", mobius):
        g = T(Poly1([-a, 1]) ** n)
        tried += 1
        if not g.is_zero:
            degs.add(g.degree)
    while tried < samples:
        f = Poly1([1])
        for p in _source_points("circular", mobius, rng, n):
            f = f * Poly1([-p, 1])
        g = T(f)
        tried += 1
        if not g.is_zero:
            degs.add(g.degree)
    return {"checked": tried, "degrees": sorted(degs), "passed": len(degs) <= 1}


def _circular_pb3(T, n, mobius, budget, seed):
    dom_open = CircularDomain(mobius, "open_C")
    ra = range_analysis(T)
    rep = PreserverReport("circular", "unknown", "", n, "pb3",
                          artifacts={"range": ra, "domain_kind": mobius.kind})
    if T.is_zero:
        rep.verdict, rep.clause = "preserver", "zero_operator"
        rep.flags["trivial_zero_operator"] = True
        return rep
    if ra.rank == 1 and bool(is_domain_stable1(ra.basis[0], dom_open)):
        rep.verdict, rep.clause = "preserver", "(a)"
        return rep
    m = T.m
    G = symbol(T, n, "circ", mobius=mobius, sign="plus")
    rep.artifacts["symbols"] = {"circ": {"poly": G}}
    exterior = mobius.kind == "exterior"
    if exterior:
        b1, b2 = _degree_conditions(G, mobius, m, n)
        rep.artifacts["degree_conditions"] = {"b1": b1, "b2": b2}
        filt = _same_degree_filter(T, n, mobius, seed=seed)
        rep.artifacts["same_degree_filter"] = filt
        if not (b1 and b2) or not filt["passed"]:
            # a preserver of rank > 1 satisfies both; find a concrete input
            w = counterexample_search(T, n, "circular", mobius, "pb3", seed=seed)
            if w is not None:
                rep.artifacts["input_witness"] = w
                rep.verdict = "non_preserver"
            return rep
    f = _pullback_symbol(G, mobius, m, n)
    v = decide(f, budget=budget, seed=seed)
    rep.artifacts["symbols"]["circ"].update({"pulled_back": f, "verdict": v})
    if v.stable:
        rep.verdict, rep.clause = "preserver", "(b)"
        rep.artifacts["certificate"] = Certificate(
            "domain_pullback", {"mobius": mobius, "pulled": f,
                                "inner": v.certificate})
    elif v.unstable:
        rep.verdict = "non_preserver"
        _set_symbol_witness(rep, v.witness, f)
        rep.artifacts["symbol_witness_in_C"] = _lift_witness(v.witness, mobius)
    return rep


def circular_classify(T, n=None, mobius=None, semantics="pb3",
                      budget=DEFAULT_BUDGET, seed=0, search_inputs=True):
    """Does T map degree-n (pb3) or degree-<=n (pb2) members of pi(C') into pi(C') u {0}?"""
    n = T.n if n is None else n
    T = T.restrict(n)
    mobius = Mobius.identity() if mobius is None else mobius
    if semantics == "pb3":
        rep = _circular_pb3(T, n, mobius, budget, seed)
        if rep.verdict == "non_preserver" and search_inputs \
                and "input_witness" not in rep.artifacts:
            _attach_input_witness(rep, T, n, "circular", mobius, "pb3", seed)
        return rep
    if semantics != "pb2":
        raise ValueError("semantics must be pb2 or pb3")
    # degree <= n: direct search on anchor powers, then each exact degree
    w = counterexample_search(T, n, "circular", mobius, "pb2", budget=60, seed=seed)
    if w is not None:
        return PreserverReport("circular", "non_preserver", "", n, "pb2",
                               artifacts={"input_witness": w,
                                          "failing_degree": w.f.degree})
    per_degree = {}
    for k in range(n, -1, -1):
        sub = _circular_pb3(T.restrict(k), k, mobius, budget, seed)
        per_degree[k] = sub
        if sub.verdict != "preserver":
            rep = PreserverReport("circular", sub.verdict, sub.clause, n, "pb2",
                                  artifacts=dict(sub.artifacts, failing_degree=k,
                                                 per_degree=per_degree))
            if sub.verdict == "non_preserver" and search_inputs:
                wk = counterexample_search(T.restrict(k), k, "circular", mobius,
                                           "pb3", seed=seed)
                if wk is not None:
                    rep.artifacts["input_witness"] = wk
            return rep
    top = per_degree[n]
    return PreserverReport("circular", "preserver", top.clause, n, "pb2",
                           artifacts={"per_degree": per_degree})


def boundary_classify(T, n=None, mobius=None, budget=DEFAULT_BUDGET, seed=0,
                      semantics="pb3", search_inputs=True):
    """Does T map degree-n polynomials with all roots on the boundary to such (or 0)?"""
    n = T.n if n is None else n
    T = T.restrict(n)
    mobius = Mobius.identity() if mobius is None else mobius
    if mobius.kind == "disk":
        raise UnboundedDomainRequired("boundary classification needs an unbounded C")
    if T.is_zero:
        return _trivial("boundary", n, semantics)
    ra = range_analysis(T)
    rep = PreserverReport("boundary", "unknown", "", n, semantics,
                          artifacts={"range": ra, "domain_kind": mobius.kind})
    if ra.rank == 1:
        P = ra.basis[0]
        if all(bool(is_domain_stable1(P, CircularDomain(mobius, view)))
               for view in ("open_C", "reversed_Cr")):
            rep.verdict, rep.clause = "preserver", "(a)"
            return rep
    if ra.rank == 2:
        S = conjugate_operator(T, mobius)
        ras = range_analysis(S)
        rep.artifacts["conjugated_range"] = ras
        if _phase_clause_b(S, ras):
            rep.verdict, rep.clause = "preserver", "(b)"
            return rep
    m = T.m
    syms = {}
    for sign, label in (("plus", "(c)"), ("minus", "(d)")):
        G = symbol(T, n, "circ", mobius=mobius, sign=sign)
        if G.is_zero:
            syms[sign] = {"poly": G, "outcome": "unstable", "verdicts": []}
            continue
        f = _pullback_symbol(G, mobius, m, n)
        v_c = decide(f, budget=budget, seed=seed)
        vs = [(f, v_c)]
        if not v_c.unstable:
            vs.append((f.reflect(), decide(f.reflect(), budget=budget, seed=seed)))
        outcome = _combine([v for _, v in vs])
        syms[sign] = {"poly": G, "pulled_back": f, "outcome": outcome,
                      "verdicts": vs}
        if outcome == "stable":
            rep.artifacts["symbols"] = syms
            rep.verdict, rep.clause = "preserver", label
            return rep
    rep.artifacts["symbols"] = syms
    if all(s["outcome"] == "unstable" for s in syms.values()):
        wits = [(p, v) for s in syms.values() for p, v in s["verdicts"] if v.unstable]
        if wits:
            _set_symbol_witness(rep, wits[0][1].witness, wits[0][0])
            rep.verdict = "non_preserver"
    if search_inputs and (rep.verdict != "preserver"):
        w = counterexample_search(T, n, "boundary", mobius, "pb3", seed=seed)
        if w is not None:
            rep.artifacts["input_witness"] = w
            rep.verdict = "non_preserver"
    return rep


# ---------------------------------------------------------------------------
# Sweeps and probes
# ---------------------------------------------------------------------------

_CLASSIFIERS = {
    "hyp": finitehyp_classify,
    "hypC": finitehypC_classify,
    "stab": finitestab_classify,
}


def algebraic_sweep(T_full, N=None, problem="stab", mobius=None,
                    budget=DEFAULT_BUDGET, seed=0):
    """Run the finite classifier for every 1 <= n <= N (finite evidence only)."""
    N = T_full.n if N is None else N
    reports = {}
    for n in range(1, N + 1):
        T = T_full.restrict(n)
        if problem in _CLASSIFIERS:
            r = _CLASSIFIERS[problem](T, n, budget=budget, seed=seed)
        elif problem == "circular":
            r = circular_classify(T, n, mobius, budget=budget, seed=seed)
        elif problem == "boundary":
            r = boundary_classify(T, n, mobius, budget=budget, seed=seed)
        else:
            raise ValueError(f"unknown problem {problem!r}")
        reports[n] = r
        if r.verdict == "non_preserver":
            return PreserverReport(
                f"sweep:{problem}", "non_preserver", r.clause, N,
                artifacts={"failing_n": n, "reports": reports,
                           "input_witness": r.artifacts.get("input_witness"),
                           "symbol_witness": r.artifacts.get("symbol_witness"),
                           "symbol_witness_poly": r.artifacts.get("symbol_witness_poly")})
    flags = {"finite_evidence_up_to": N}
    if any(r.verdict == "unknown" for r in reports.values()):
        return PreserverReport(f"sweep:{problem}", "unknown", "", N,
                               artifacts={"reports": reports}, flags=flags)
    clause = ""
    if problem == "hyp":
        full = range_analysis(T_full.restrict(N))
        if _clause_a_real(full):
            clause = "(a)"
        else:
            clauses = {r.clause for r in reports.values()
                       if r.clause not in ("(a)", "zero_operator")}
            if clauses == {"(b)"} or not clauses:
                clause = "(b)"
            elif clauses == {"(c)"}:
                clause = "(c)"
            else:
                # per-degree passes that do not share one sign choice
                plus_all = all(_symbol_stable(r, "plus") for r in reports.values())
                minus_all = all(_symbol_stable(r, "minus") for r in reports.values())
                if plus_all or minus_all:
                    clause = "(b)" if plus_all else "(c)"
                else:
                    flags["mixed_sign"] = True
                    return PreserverReport(f"sweep:{problem}", "unknown", "", N,
                                           artifacts={"reports": reports},
                                           flags=flags)
    else:
        clause = reports[N].clause if N in reports else ""
    return PreserverReport(f"sweep:{problem}", "preserver", clause, N,
                           artifacts={"reports": reports}, flags=flags)


def _symbol_stable(report, kind):
    if report.clause in ("(a)", "zero_operator"):
        return True
    s = report.artifacts.get("symbols", {}).get(kind)
    if s is None:
        return False
    v = s.get("verdict")
    return v is not None and v.stable


def transcendental_probe(T_full, N=None, budget=DEFAULT_BUDGET, seed=0, r=1.0):
    """Stability of the truncations sum (n)_k P_k w^k = T[(1 - zw)^n], n <= N.

    Finite evidence only.  For each stable truncation the Szasz bound of
    the slice z -> t_n(z, i r) on |z| <= r is recorded next to the largest
    sampled modulus, as evidence of uniform boundedness.
    """
    N = T_full.n if N is None else N
    series = symbol(T_full, N, "gt_trunc", N=N)
    truncs = {}
    diagnostics = []
    angles = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    for n, t in enumerate(series.truncations):
        if t.is_zero:
            truncs[n] = {"poly": t, "verdict": None}
            continue
        v = decide(t, budget=budget, seed=seed)
        truncs[n] = {"poly": t, "verdict": v}
        if v.unstable:
            return PreserverReport("transcendental", "non_preserver", "", N,
                                   artifacts={"truncations": truncs,
                                              "failing_n": n,
                                              "symbol_witness": v.witness,
                                              "symbol_witness_poly": t,
                                              "series": series},
                                   flags={"finite_evidence_up_to": N})
        if v.stable:
            g = t.slice_w(QQi(0, Fraction(r).limit_denominator(10 ** 6)))
            if not g.is_zero:
                try:
                    bound = szasz_bound(g, r)
                    sampled = max(abs(g(r * complex(np.cos(a), np.sin(a))))
                                  for a in angles)
                    diagnostics.append({"n": n, "r": r, "bound": bound,
                                        "sampled_max": sampled})
                except NotStable:
                    pass
    unknown = any(d["verdict"] is not None and d["verdict"].unknown
                  for d in truncs.values())
    return PreserverReport("transcendental", "unknown" if unknown else "preserver",
                           "" if unknown else "truncations", N,
                           artifacts={"truncations": truncs, "szasz": diagnostics,
                                      "series": series},
                           flags={"finite_evidence_up_to": N})


def multiplier_test(lam, N=None):
    """Is lambda a multiplier sequence up to N?

    For each n <= N the polynomial T[(z+1)^n] = sum C(n,k) lambda(k) z^k
    must be hyperbolic with all zeros of one sign (zeros at the origin are
    compatible with either sign).
    """
    lam = lam.lam if isinstance(lam, MultiplierSeq) else tuple(lam)
    N = len(lam) - 1 if N is None else N
    if len(lam) < N + 1:
        raise ValueError(f"need {N + 1} multipliers for N = {N}")
    T = LinearOperator.from_multipliers(lam, N)
    polys = {}
    for n in range(N + 1):
        p = Poly1([rationalize(lam[k]) * comb(n, k) for k in range(n + 1)])
        polys[n] = p
        reason, root = None, None
        if not p.is_zero and p.degree > 0:
            if not p.is_real():
                reason = "non-real coefficients"
            else:
                v = is_hyperbolic(p)
                if not v:
                    reason, root = "not hyperbolic", v.witness
                else:
                    zero_mult = p.low_order()
                    pos = real_root_count(p, (0, float("inf")))[1]
                    neg = p.degree - pos - zero_mult
                    if pos and neg:
                        reason = "zeros of both signs"
        if reason is not None:
            f = Poly1([1, 1]) ** n
            return PreserverReport(
                "multiplier", "non_preserver", "", N,
                artifacts={"failing_n": n, "polys": polys,
                           "input_witness": InputWitness(f, p, root, reason)})
    return PreserverReport("multiplier", "preserver", "same-sign zeros", N,
                           artifacts={"polys": polys, "operator": T},
                           flags={"finite_evidence_up_to": N})
