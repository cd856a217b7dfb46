from fractions import Fraction

import numpy as np
import pytest

from preserver_lab import LinearOperator, Poly1, Poly2, QQi
from preserver_lab.classify import is_domain_stable1, is_hyperbolic, is_stable1
from preserver_lab.domains import DISK_MAP, CircularDomain, Mobius, named_domain
from preserver_lab.errors import NotRealOperator, UnboundedDomainRequired
from preserver_lab.preservers import (algebraic_sweep, boundary_classify, circular_classify,
                                      counterexample_search, finitehyp_classify,
                                      finitehypC_classify, finitestab_classify,
                                      multiplier_test, transcendental_probe)
from preserver_lab.scalar import I

from conftest import disk_operator

zp = Poly1.z()
zz, ww = Poly2.z(), Poly2.w()


def mono(k):
    return Poly1.monomial(k)


def deriv(n):
    return LinearOperator.from_function(lambda k: mono(k).derivative(), n)


def reflection(n):
    return LinearOperator.from_function(lambda k: mono(k) * (-1) ** k, n)


def rank2_hyp(n=3):
    # f -> f(0) z + f'(0) (z^2 - 1)
    return LinearOperator.from_function(
        lambda k: zp if k == 0 else (zp * zp - 1 if k == 1 else Poly1()), n)


def assert_report_sound(rep, T, problem, mobius=None):
    if rep.verdict == "preserver":
        assert rep.clause
    if rep.verdict == "non_preserver":
        assert rep.witness is not None
        iw = rep.artifacts.get("input_witness")
        if iw is not None:
            assert T.restrict(iw.f.degree if iw.f.degree <= T.n else T.n)(iw.f) == iw.image
            assert not image_in_class(iw.image, problem, mobius)
        else:
            poly = rep.artifacts["symbol_witness_poly"]
            assert rep.artifacts["symbol_witness"].verify(poly)


def image_in_class(g, problem, mobius=None):
    if g.is_zero or g.degree == 0:
        return True
    if problem == "hyp":
        return g.is_real() and bool(is_hyperbolic(g))
    if problem == "stab":
        return bool(is_stable1(g))
    if problem == "circular":
        return bool(is_domain_stable1(g, CircularDomain(mobius, "open_C")))
    if problem == "boundary":
        return all(bool(is_domain_stable1(g, CircularDomain(mobius, v)))
                   for v in ("open_C", "reversed_Cr"))
    raise ValueError(problem)


# -- examples ----------------------------------------------------------------

def test_finitehyp_examples():
    r = finitehyp_classify(LinearOperator.from_multipliers([0, 1, 2, 3]), 3)
    assert (r.verdict, r.clause) == ("preserver", "(b)")
    F = r.artifacts["symbols"]["plus"]["poly"]
    assert F == 3 * zz * (zz + ww) ** 2
    assert r.artifacts["symbols"]["plus"]["verdict"].certificate.kind == "product"

    r = finitehyp_classify(rank2_hyp(), 3)
    assert (r.verdict, r.clause) == ("preserver", "(a)")
    assert r.artifacts["range"].rank == 2

    T = LinearOperator.from_multipliers([1, 0, 1])
    r = finitehyp_classify(T, 2)
    assert r.verdict == "non_preserver"
    iw = r.artifacts["input_witness"]
    assert iw.f == (zp + 1) ** 2 and iw.image == zp * zp + 1

    with pytest.raises(NotRealOperator):
        finitehyp_classify(LinearOperator.identity(2) * I, 2)


def test_finitehypC_examples():
    r = finitehypC_classify(LinearOperator.identity(2) * I, 2)
    assert (r.verdict, r.clause) == ("preserver", "(c)")
    assert abs(abs(r.artifacts["eta"]) - 1) < 1e-12
    assert abs(r.artifacts["eta"].real) < 1e-12

    T = LinearOperator.from_multipliers([0, 1, 2, 3])
    assert finitehypC_classify(T, 3).verdict == finitehyp_classify(T, 3).verdict == "preserver"

    alpha = LinearOperator.from_function(lambda k: (zp * zp - 1) * I ** k, 3)
    r = finitehypC_classify(alpha, 3)
    assert (r.verdict, r.clause) == ("preserver", "(a)")
    assert r.artifacts["range"].rank == 1


def test_finitestab_examples():
    r = finitestab_classify(deriv(4), 4)
    assert (r.verdict, r.clause) == ("preserver", "(b)")
    assert r.artifacts["symbols"]["plus"]["poly"] == 4 * (zz + ww) ** 3

    r = finitestab_classify(LinearOperator.identity(5), 5)
    assert r.verdict == "preserver"
    assert r.artifacts["symbols"]["plus"]["poly"] == (zz + ww) ** 5

    T = LinearOperator.from_multipliers([1, 0, 1])
    r = finitestab_classify(T, 2)
    assert r.verdict == "non_preserver"
    assert r.artifacts["symbols"]["plus"]["poly"] == zz ** 2 + ww ** 2
    assert r.artifacts["symbol_witness"].verify(zz ** 2 + ww ** 2)


def test_circular_examples():
    T = disk_operator(3)
    r = circular_classify(T, 3, DISK_MAP)
    assert (r.verdict, r.clause) == ("preserver", "(b)")
    G = r.artifacts["symbols"]["circ"]["poly"]
    assert G == (I ** 3) * 3 * (1 + ww) * (1 + zz * ww) ** 2
    assert T(zp ** 2) == zp * (zp + 2)

    for m in (Mobius.identity(), DISK_MAP, Mobius(1, 2, 0, 1), named_domain("unit_disk_exterior")[0]):
        r = circular_classify(LinearOperator.identity(3), 3, m)
        assert (r.verdict, r.clause) == ("preserver", "(b)")


def test_boundary_examples():
    for m in (Mobius.identity(), Mobius(1, 2, 0, 1), DISK_MAP):
        r = boundary_classify(LinearOperator.identity(3), 3, m)
        assert (r.verdict, r.clause) == ("preserver", "(c)")
    T = reflection(3)
    assert T.apply_ext2((zz - ww) ** 3) == -(zz + ww) ** 3
    r = boundary_classify(T, 3)
    assert (r.verdict, r.clause) == ("preserver", "(d)")

    r = boundary_classify(LinearOperator.from_multipliers([1, 0, 1]), 2)
    assert r.verdict == "non_preserver"
    assert r.artifacts["input_witness"].f == (zp + 1) ** 2
    assert r.artifacts["input_witness"].image == zp * zp + 1

    disk = named_domain("unit_disk_exterior")[0]
    assert disk.kind == "disk"
    with pytest.raises(UnboundedDomainRequired):
        boundary_classify(LinearOperator.identity(2), 2, disk)


def test_sweep_examples():
    r = algebraic_sweep(deriv(8), 8, "stab")
    assert r.verdict == "preserver" and r.flags["finite_evidence_up_to"] == 8
    for n in range(1, 9):
        assert deriv(8).restrict(n).symbol(n) == n * (zz + ww) ** (n - 1)

    r = algebraic_sweep(LinearOperator.from_multipliers(range(9)), 8, "hyp")
    assert (r.verdict, r.clause) == ("preserver", "(b)")

    r = algebraic_sweep(LinearOperator.from_multipliers([1, 0, 1, 0, 1]), 4, "hyp")
    assert r.verdict == "non_preserver" and r.artifacts["failing_n"] == 2


def test_transcendental_examples():
    r = transcendental_probe(LinearOperator.identity(6), 6)
    assert r.verdict == "preserver"
    for n, t in r.artifacts["truncations"].items():
        assert t["poly"] == (1 - zz * ww) ** n

    r = transcendental_probe(LinearOperator.from_multipliers(range(7)), 6)
    assert r.verdict == "preserver"
    for n, t in r.artifacts["truncations"].items():
        if n:
            assert t["poly"] == -n * zz * ww * (1 - zz * ww) ** (n - 1)
    for d in r.artifacts["szasz"]:
        assert d["sampled_max"] <= d["bound"] * (1 + 1e-9)

    r = transcendental_probe(LinearOperator.from_multipliers([1, 0, 1, 0, 1]), 4)
    assert r.verdict == "non_preserver" and r.artifacts["failing_n"] == 2
    assert r.artifacts["symbol_witness"].verify(r.artifacts["symbol_witness_poly"])


def test_multiplier_examples():
    r = multiplier_test(list(range(11)), 10)
    assert r.verdict == "preserver"
    for n in range(1, 11):
        assert r.artifacts["polys"][n] == n * zp * (zp + 1) ** (n - 1)
    r = multiplier_test([1, 1] + [0] * 5, 6)
    assert r.verdict == "preserver"
    for n in range(7):
        assert r.artifacts["polys"][n] == 1 + n * zp
    r = multiplier_test([1, 0, 1], 2)
    assert r.verdict == "non_preserver" and r.artifacts["failing_n"] == 2
    assert r.artifacts["input_witness"].image == 1 + zp * zp
    # zeros of both signs
    r = multiplier_test([1, -1, 1, -1], 3)
    assert r.verdict == "preserver"
    r = multiplier_test([-1, 2, 0, 0], 3)
    assert r.verdict == "preserver"


def test_counterexample_search_examples():
    w = counterexample_search(LinearOperator.from_multipliers([1, 0, 1]), 2, "hyp")
    assert w.f == (zp + 1) ** 2 and w.image == 1 + zp * zp
    w = counterexample_search(disk_operator(3), 3, "circular", DISK_MAP, semantics="pb2")
    assert w.f == zp ** 2 and w.image == zp * (zp + 2)
    assert counterexample_search(deriv(4), 4, "stab") is None


# -- forward and converse consistency ----------------------------------------

def _q(rng, lo=-12, hi=12, den=4):
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))


def _member(rng, problem, n, mobius=None):
    """Degree-n polynomial with roots drawn in the source region."""
    roots = []
    for _ in range(n):
        if problem in ("hyp", "boundary_real"):
            roots.append(QQi(_q(rng)))
        elif problem == "stab":
            roots.append(QQi(_q(rng), -abs(_q(rng))))
        elif problem == "disk":
            while True:
                x, y = _q(rng, -4, 4, 4), _q(rng, -4, 4, 4)
                if x * x + y * y <= 1:
                    roots.append(QQi(x, y))
                    break
        else:
            raise ValueError(problem)
    return Poly1.from_roots(roots) * int(rng.integers(1, 4))


FORWARD_CASES = [
    ("hyp", lambda: finitehyp_classify(LinearOperator.from_multipliers([0, 1, 2, 3]), 3),
     lambda: LinearOperator.from_multipliers([0, 1, 2, 3]), "hyp", "hyp", 3, None),
    ("stab_d", lambda: finitestab_classify(deriv(4), 4), lambda: deriv(4),
     "stab", "stab", 4, None),
    ("stab_shift", None,
     lambda: LinearOperator.from_function(lambda k: (zp + I) ** k, 3), "stab", "stab", 3, None),
    ("disk", lambda: circular_classify(disk_operator(3), 3, DISK_MAP), lambda: disk_operator(3),
     "disk", "circular", 3, DISK_MAP),
    ("boundary_reflect", lambda: boundary_classify(reflection(3), 3), lambda: reflection(3),
     "boundary_real", "hyp", 3, None),
]


@pytest.mark.parametrize("name,classify,make,source,target,n,mobius", FORWARD_CASES,
                         ids=[c[0] for c in FORWARD_CASES])
def test_forward_consistency(name, classify, make, source, target, n, mobius):
    T = make()
    if classify is None:
        rep = finitestab_classify(T, n)
    else:
        rep = classify()
    assert rep.verdict == "preserver"
    assert rep.clause not in ("(a)", "zero_operator")
    rng = np.random.default_rng(hash(name) % 2 ** 32)
    for _ in range(500):
        f = _member(rng, source, n, mobius)
        assert image_in_class(T(f), target, mobius), (name, f)


def _interlacing(rng, deg):
    pts = sorted({_q(rng, -40, 40, 4) for _ in range(3 * deg + 2)})
    while len(pts) < 2 * deg + 1:
        pts.append(pts[-1] + 1)
    P = Poly1.from_roots([QQi(x) for x in pts[0:2 * deg + 1:2][:deg]])
    Q = Poly1.from_roots([QQi(x) for x in pts[1:2 * deg:2][:deg - 1]])
    return P, Q


def test_degenerate_clause_soundness():
    rng = np.random.default_rng(11)
    hits = 0
    for _ in range(20):
        n = int(rng.integers(2, 5))
        deg = int(rng.integers(1, 4))
        P, Q = _interlacing(rng, deg)
        a = [int(rng.integers(-3, 4)) for _ in range(n + 1)]
        b = [int(rng.integers(-3, 4)) for _ in range(n + 1)]
        T = LinearOperator.from_function(lambda k: P * a[k] + Q * b[k], n)
        rep = finitehyp_classify(T, n)
        assert rep.verdict == "preserver" and rep.clause in ("(a)", "zero_operator")
        hits += rep.clause == "(a)"
        for _ in range(25):
            assert image_in_class(T(_member(rng, "hyp", n)), "hyp")
    assert hits >= 15

    # rank one, stable range
    T = LinearOperator.from_function(lambda k: (zp + I) * (k + 1), 3)
    rep = finitestab_classify(T, 3)
    assert (rep.verdict, rep.clause) == ("preserver", "(a)")
    for _ in range(100):
        assert image_in_class(T(_member(rng, "stab", 3)), "stab")

    # rank one with a complex functional, real-rooted range
    alpha = LinearOperator.from_function(lambda k: (zp * zp - 1) * I ** k, 3)
    for _ in range(100):
        g = alpha(_member(rng, "hyp", 3))
        assert g.is_zero or (g.degree == 2 and g.monic() == zp * zp - 1)


CONVERSE_FIXTURES = [
    ("hyp", LinearOperator.from_multipliers([1, 0, 1, 0, 1]), 4),
    ("hyp", LinearOperator.from_function(lambda k: mono(k) + mono(k).derivative().derivative(), 4), 4),
    ("hyp", LinearOperator.from_function(lambda k: mono(k) + mono(k).compose(zp + 1), 3), 3),
    ("stab", LinearOperator.from_multipliers([1, 0, 1, 0, 1]), 4),
    ("stab", LinearOperator.from_function(lambda k: mono(k).compose(zp * -1), 3), 3),
    ("stab", LinearOperator.from_function(lambda k: mono(k).derivative().derivative() + mono(k), 4), 4),
    ("stab", LinearOperator.from_function(lambda k: mono(k) - mono(k).derivative() * I, 4), 4),
]


@pytest.mark.parametrize("problem,T,n", CONVERSE_FIXTURES)
def test_converse_counterexample_search(problem, T, n):
    classify = finitehyp_classify if problem == "hyp" else finitestab_classify
    rep = classify(T, n, search_inputs=False)
    assert rep.verdict == "non_preserver"
    assert "symbol_witness" in rep.artifacts
    assert rep.artifacts["range"].rank > (2 if problem == "hyp" else 1)
    w = counterexample_search(T, n, problem)
    assert w is not None
    assert w.f.degree == n and T(w.f) == w.image
    assert not image_in_class(w.image, problem)


def test_reports_are_sound_on_random_operators():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        rows = [[int(rng.integers(-2, 3)) for _ in range(n + 1)] for _ in range(n + 1)]
        T = LinearOperator.from_function(lambda k: Poly1(rows[k]), n)
        assert_report_sound(finitestab_classify(T, n), T, "stab")
        assert_report_sound(finitehyp_classify(T, n), T, "hyp")


def test_specialization_identity_mobius_matches_finitestab():
    rng = np.random.default_rng(6)
    agree = 0
    for _ in range(60):
        n = int(rng.integers(1, 4))
        cols = [Poly1([QQi(int(rng.integers(-2, 3)), int(rng.integers(-1, 2)))
                       for _ in range(n + 1)]) for _ in range(n + 1)]
        T = LinearOperator.from_function(lambda k: cols[k], n)
        a = finitestab_classify(T, n, search_inputs=False)
        b = circular_classify(T, n, Mobius.identity(), search_inputs=False)
        assert a.verdict == b.verdict
        agree += 1
    assert agree == 60


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_pb3_pb2_discrepancy(n):
    T = disk_operator(n)
    assert T(zp ** (n - 1)) == zp ** (n - 2) * (zp + n - 1)
    assert circular_classify(T, n, DISK_MAP, "pb3").verdict == "preserver"
    r = circular_classify(T, n, DISK_MAP, "pb2")
    assert r.verdict == "non_preserver"
    iw = r.artifacts["input_witness"]
    assert iw.f.degree < n
    assert not image_in_class(iw.image, "circular", DISK_MAP)


def test_same_degree_filter_for_bounded_target():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        T = disk_operator(n)
        rep = circular_classify(T, n, DISK_MAP)
        assert rep.verdict == "preserver"
        assert rep.artifacts["same_degree_filter"]["passed"]
        degs = {T(_member(rng, "disk", n)).degree for _ in range(100)}
        assert len(degs) == 1
