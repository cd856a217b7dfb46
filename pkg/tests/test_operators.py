from math import factorial

import numpy as np
import pytest

from preserver_lab.domains import DISK_MAP, Mobius, circ_symbol_kernel, conjugate_bivar
from preserver_lab.errors import DegreeExceeded, DimensionMismatch
from preserver_lab.operators import (DiffOpForm, LinearOperator, MultiplierSeq, apply,
                                     apply_ext2, conjugate_operator, construct, range_analysis,
                                     symbol)
from preserver_lab.poly import NEG_INF, Poly1, Poly2
from preserver_lab.scalar import I, QQi

from conftest import disk_operator

zz, ww = Poly2.z(), Poly2.w()


def ddz(n):
    return construct(DiffOpForm([[0], [1]]), n)


def random_operator(rng, n, m=None, complex_=False):
    m = n if m is None else m
    cols = []
    for _ in range(n + 1):
        if complex_:
            cols.append(Poly1([QQi(*map(int, rng.integers(-3, 4, 2))) for _ in range(m + 1)]))
        else:
            cols.append(Poly1([int(v) for v in rng.integers(-3, 4, m + 1)]))
    return LinearOperator(cols, n)


def test_construct_examples(z):
    T = construct(MultiplierSeq([0, 1, 2, 3]), 3)
    assert [T(Poly1.monomial(k)) for k in range(4)] == [Poly1.monomial(k, k) for k in range(4)]
    D = ddz(3)
    assert D.columns == tuple(Poly1.monomial(k - 1, k) if k else Poly1([]) for k in range(4))
    T = disk_operator(3)
    for k in range(4):
        assert T.columns[k] == Poly1.monomial(k, 3 - k) + (Poly1.monomial(k - 1, k) if k else 0)


def test_tight_codomain_degree():
    T = LinearOperator([Poly1([1]), Poly1([0, 0, 0])], 1)
    assert T.m == 0
    assert LinearOperator.zero(3).m == NEG_INF
    with pytest.raises(DimensionMismatch):
        LinearOperator([Poly1([1])], 2)


def test_apply_examples(z):
    assert apply(ddz(3), z ** 3) == 3 * z * z
    assert apply(disk_operator(3), z * z) == z * (z + 2)
    assert apply(LinearOperator.zero(3), z ** 2 + 1).is_zero
    with pytest.raises(DegreeExceeded):
        apply(ddz(2), z ** 3)


def test_apply_ext2_examples():
    assert apply_ext2(ddz(2), zz * ww + zz ** 2) == ww + 2 * zz
    f = zz ** 2 * ww + 3 * ww ** 4
    assert apply_ext2(LinearOperator.identity(2), f) == f
    T = construct(MultiplierSeq([0, 1, 2]), 2)
    assert apply_ext2(T, (zz + ww) ** 2) == 2 * zz * ww + 2 * zz ** 2


def test_symbol_examples():
    T = construct(MultiplierSeq([0, 1, 2, 3]), 3)
    assert symbol(T, 3, "plus") == 3 * zz * (zz + ww) ** 2
    for n in range(7):
        series = symbol(LinearOperator.identity(n), n, "gt_trunc", N=n)
        assert series.truncations[n] == (1 - zz * ww) ** n
    G = symbol(disk_operator(3), 3, "circ", mobius=DISK_MAP)
    assert G == I ** 3 * 3 * (1 + ww) * (1 + zz * ww) ** 2


def test_disk_map_reduction_for_identity():
    for n in range(1, 7):
        G = symbol(LinearOperator.identity(n), n, "circ", mobius=DISK_MAP)
        assert G == I ** n * (1 + zz * ww) ** n


def test_gt_trunc_coefficients():
    T = disk_operator(4)
    s = symbol(T, 4, "gt_trunc", N=4)
    for k in range(5):
        assert s.ps[k] == T.columns[k] * (QQi((-1) ** k) / factorial(k))


def test_conjugate_operator_examples():
    rng = np.random.default_rng(0)
    T = random_operator(rng, 3)
    assert conjugate_operator(T, Mobius.identity()) == T
    assert conjugate_operator(ddz(4), Mobius(1, 1, 0, 1)) == ddz(4)


def test_conjugate_operator_round_trip_scaling():
    # conjugating by Phi and then by the unnormalized inverse map returns
    # det^(n - m) T; it is T itself when det = 1 or m = n
    rng = np.random.default_rng(1)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(0, n + 1))
        T = random_operator(rng, n, m, complex_=True)
        if T.m != m:
            continue
        mob = Mobius(QQi(1, 1), 2, QQi(0, 1), 3)
        S = conjugate_operator(T, mob)
        back = conjugate_operator(S, mob.inverse_map())
        assert back == T * (mob.det ** (n - m))


def test_range_analysis_examples(z):
    T = LinearOperator.from_function(lambda k: {0: z, 1: z * z - 1}.get(k, Poly1([])), 3)
    ra = range_analysis(T)
    assert ra.rank == 2 and set(ra.basis) == {z, z * z - 1}
    assert range_analysis(LinearOperator.identity(3)).rank == 4
    # T f = i (f(0) + f(1) z)
    T = LinearOperator.from_function(lambda k: (Poly1([1 if k == 0 else 0]) + z) * I, 2)
    ra = range_analysis(T)
    assert ra.rank == 2
    assert abs(ra.phase - (-1j)) < 1e-15
    for p in ra.basis:
        assert (p * ra.phase_exact).is_real()


# -- properties --------------------------------------------------------------

@pytest.mark.parametrize("kind", ["plus", "minus", "circ"])
def test_symbol_is_linear(kind):
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(0, 5))
        A, B = random_operator(rng, n, complex_=True), random_operator(rng, n, complex_=True)
        kw = {"mobius": DISK_MAP} if kind == "circ" else {}
        assert symbol(A + B, n, kind, **kw) == symbol(A, n, kind, **kw) + symbol(B, n, kind, **kw)


def test_identity_circ_equals_plus():
    rng = np.random.default_rng(3)
    for n in range(9):
        T = random_operator(rng, n, complex_=True)
        assert symbol(T, n, "circ", mobius=Mobius.identity()) == symbol(T, n, "plus")


def test_gt_series_matches_diffop_form():
    # G_T(z, w) e^{zw} = F_T(z, -w) with F_T = sum Q_k(z) w^k; compare w^j
    rng = np.random.default_rng(4)
    for _ in range(60):
        n = int(rng.integers(0, 7))
        qs = [Poly1([int(v) for v in rng.integers(-3, 4, int(rng.integers(1, k + 2)))])
              for k in range(n + 1)]
        T = construct(DiffOpForm(qs), n)
        ps = symbol(T, n, "gt_trunc", N=n).ps
        z = Poly1.z()
        for j in range(n + 1):
            lhs = Poly1([])
            for k in range(j + 1):
                lhs = lhs + ps[k] * z ** (j - k) * (QQi(1) / factorial(j - k))
            assert lhs == qs[j] * (-1) ** j


@pytest.mark.parametrize("mob", [Mobius.identity(), Mobius(2, 1, 0, 1),
                                 Mobius(QQi(0, 1), QQi(0, 1), -1, 1),
                                 Mobius(QQi(1, -2), 1, 1, 0)])
def test_conjugated_symbol_matches_pullback(mob):
    # only disks and half-planes: no degree loss in the pullback
    assert mob.kind in ("disk", "half_plane")
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        T = random_operator(rng, n, complex_=True)
        S = conjugate_operator(T, mob)
        G = symbol(T, n, "circ", mobius=mob)
        pulled = conjugate_bivar(mob, G, T.m, n, "both", "inverse")
        assert symbol(S, n, "plus") == pulled


def test_matrix_diffop_round_trip():
    rng = np.random.default_rng(6)
    for _ in range(200):
        n = int(rng.integers(0, 7))
        T = random_operator(rng, n, m=int(rng.integers(0, 8)), complex_=True)
        assert construct(T.to_diffop(), n) == T
        assert LinearOperator.from_matrix(T.matrix, n) == T
