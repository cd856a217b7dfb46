import itertools

import numpy as np
import pytest

from preserver_lab.classify import pencil_relation
from preserver_lab.errors import DegreeExceeded, ZeroPolynomial
from preserver_lab.poly import Poly1, Poly2, PolyN
from preserver_lab.scalar import I, QQi
from preserver_lab.stab2 import (Certificate, certify, decide, diag_restrict, falsify,
                                 gen_real_stable, polarize, real_stable_from_matrices)

zz, ww = Poly2.z(), Poly2.w()


def test_falsify_examples():
    wit = falsify(zz * ww + 1)
    assert wit is not None and wit.exact and (wit.z, wit.w) == (I, I)
    wit = falsify(zz ** 2 + ww ** 2)
    assert wit is not None and wit.verify(zz ** 2 + ww ** 2)
    assert wit.z in (I * wit.w, -I * wit.w)
    assert falsify((zz + ww) ** 2) is None
    with pytest.raises(ZeroPolynomial):
        falsify(Poly2())


def test_certify_examples():
    cert = certify(zz ** 2 - 1 + zz * ww)
    assert cert is not None and cert.kind == "degree1_hb"
    f, cert = real_stable_from_matrices([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]])
    assert f == zz * ww - 1
    assert certify(f).kind == "determinantal" and cert.verify(f)
    assert certify(zz * ww + 1) is None


def test_decide_examples():
    v = decide((zz + ww) ** 3)
    assert v.stable and v.certificate.kind == "product"
    v = decide(zz * ww + 1)
    assert v.unstable and (v.witness.z, v.witness.w) == (I, I)
    v = decide(3 * zz * (zz + ww) ** 2)
    assert v.stable and v.certificate.kind == "product"
    assert v.certificate.verify(3 * zz * (zz + ww) ** 2)


def test_generator_examples():
    eye = [[1, 0], [0, 1]]
    zero = [[0, 0], [0, 0]]
    assert real_stable_from_matrices(eye, eye, zero)[0] == (zz + ww) ** 2
    f, _ = real_stable_from_matrices([[1, 0], [0, 0]], [[0, 0], [0, 1]], zero)
    assert f == zz * ww


def test_generator_is_deterministic():
    assert gen_real_stable(3, seed=7)[0] == gen_real_stable(3, seed=7)[0]


def test_polarize_examples():
    P = polarize((zz + ww) ** 2, 2)
    z, x1, x2 = (PolyN.variable(i, 3) for i in range(3))
    assert P == (z + x1) * (z + x2)
    assert P.is_multi_affine([1, 2]) and P.is_symmetric_in([1, 2])
    z, x1 = PolyN.variable(0, 2), PolyN.variable(1, 2)
    assert polarize(zz * ww + 1, 1) == z * x1 + 1
    with pytest.raises(DegreeExceeded):
        polarize(ww ** 3, 2)


def test_complex_multiple_of_real_stable_is_certified():
    f = (zz + ww) ** 3 * QQi(2, 5)
    v = decide(f)
    assert v.stable and v.certificate.verify(f)


# -- invariant suites --------------------------------------------------------

def _random_poly2(rng, deg, complex_=False):
    terms = {}
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            if rng.uniform() < 0.6:
                re = int(rng.integers(-3, 4))
                im = int(rng.integers(-3, 4)) if complex_ else 0
                terms[(i, j)] = QQi(re, im)
    return Poly2(terms)


def test_polarization_diagonal_identity():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        f = _random_poly2(rng, int(rng.integers(0, 5)), complex_=bool(rng.integers(0, 2)))
        d = max(f.wdeg, 0) + int(rng.integers(0, 3)) if not f.is_zero else 1
        assert diag_restrict(polarize(f, d)) == f


def test_witness_soundness_and_polarization_coherence():
    rng = np.random.default_rng(1)
    found = 0
    for _ in range(300):
        f = _random_poly2(rng, int(rng.integers(1, 4)), complex_=True)
        if f.is_zero:
            continue
        wit = falsify(f, budget=2000)
        if wit is None:
            continue
        found += 1
        assert complex(wit.z).imag > 0 and complex(wit.w).imag > 0
        assert wit.verify(f)
        if wit.exact:
            d = max(f.wdeg, 1)
            P = polarize(f, d)
            assert P(wit.z, *([wit.w] * d)) == 0
    assert found > 100


def _interlacing_pair(rng, deg):
    pts = sorted(set(QQi(int(rng.integers(-40, 41)), 0) / 4 for _ in range(3 * deg)),
                 key=lambda q: q.re)
    while len(pts) < 2 * deg:
        pts.append(pts[-1] + 1)
    f = Poly1.from_roots(pts[0:2 * deg:2])
    g = Poly1.from_roots(pts[1:2 * deg - 1:2])
    return f, g


def test_degree_one_certificate_equivalence():
    rng = np.random.default_rng(2)
    for _ in range(150):
        deg = int(rng.integers(1, 6))
        q0, q1 = _interlacing_pair(rng, deg)
        assert pencil_relation(q1, q0).f_ll_g
        f = Poly2.from_w_coeffs([q0, q1])
        assert decide(f).stable
    bad = 0
    for _ in range(150):
        deg = int(rng.integers(1, 6))
        q0 = Poly1.from_roots([QQi(int(rng.integers(-8, 9)), 0) / 2 for _ in range(deg)])
        q1 = Poly1.from_roots([QQi(int(rng.integers(-8, 9)), 0) / 2
                               for _ in range(max(deg - 1, 0))])
        if pencil_relation(q1, q0).relation != "neither":
            continue
        bad += 1
        assert falsify(Poly2.from_w_coeffs([q0, q1])) is not None
    assert bad > 30


def _line_oracle(coeffs, rng, samples=400):
    """True if some line x + t v (v > 0) gives a non-real-rooted restriction."""
    a, b, c, d, e, k = coeffs  # a z^2 + b zw + c w^2 + d z + e w + k
    x = rng.uniform(-4, 4, (samples, 2))
    v = np.exp(rng.uniform(-3, 3, (samples, 2)))
    x1, x2, v1, v2 = x[:, 0], x[:, 1], v[:, 0], v[:, 1]
    A = a * v1 * v1 + b * v1 * v2 + c * v2 * v2
    B = 2 * a * x1 * v1 + b * (x1 * v2 + x2 * v1) + 2 * c * x2 * v2 + d * v1 + e * v2
    C = a * x1 * x1 + b * x1 * x2 + c * x2 * x2 + d * x1 + e * x2 + k
    disc = B * B - 4 * A * C
    quad = np.abs(A) > 1e-12
    return bool(np.any(quad & (disc < -1e-9 * (1 + B * B + np.abs(4 * A * C)))))


def test_quadratic_lattice_against_line_oracle():
    rng = np.random.default_rng(3)
    counts = {"stable": 0, "unstable": 0, "unknown": 0}
    for coeffs in itertools.product(range(-2, 3), repeat=6):
        a, b, c, d, e, k = coeffs
        # stability is unchanged by f -> -f and by swapping z and w
        images = [(c, b, a, e, d, k)]
        images += [tuple(-x for x in t) for t in images + [coeffs]]
        if any(t > coeffs for t in images):
            continue
        f = Poly2({(2, 0): a, (1, 1): b, (0, 2): c, (1, 0): d, (0, 1): e, (0, 0): k})
        if f.is_zero or f.total_degree < 1:
            continue
        v = decide(f, budget=2000)
        counts[v.outcome] += 1
        if v.stable:
            assert v.certificate.verify(f)
            assert not _line_oracle(coeffs, rng), coeffs
        elif v.unstable:
            assert v.witness.verify(f)
    assert counts["unknown"] == 0
    assert counts["stable"] > 25 and counts["unstable"] > 250


def test_lattice_symmetries_preserve_verdict():
    rng = np.random.default_rng(4)
    for _ in range(200):
        a, b, c, d, e, k = (int(x) for x in rng.integers(-2, 3, 6))
        f = Poly2({(2, 0): a, (1, 1): b, (0, 2): c, (1, 0): d, (0, 1): e, (0, 0): k})
        if f.is_zero or f.total_degree < 1:
            continue
        g = Poly2({(2, 0): c, (1, 1): b, (0, 2): a, (1, 0): e, (0, 1): d, (0, 0): k})
        out = decide(f, budget=2000).outcome
        assert decide(g, budget=2000).outcome == out
        assert decide(f * -1, budget=2000).outcome == out
