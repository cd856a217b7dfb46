"""Degree-exactly-n versus degree-at-most-n preservation on the closed unit disk.

T f = n f - z f' + f' maps every degree-n polynomial with roots in the closed
unit disk to one with roots in the disk, yet sends z^(n-1) to
z^(n-2) (z + n - 1), whose root -(n - 1) lies outside for n >= 3.
"""
from preserver_lab import LinearOperator, Poly1, circular_classify
from preserver_lab.domains import DISK_MAP

z = Poly1.z()

for n in range(3, 7):
    T = LinearOperator.from_function(
        lambda k: (lambda f: f * n - z * f.derivative() + f.derivative())(Poly1.monomial(k)), n)
    exact = circular_classify(T, n, DISK_MAP, "pb3")
    upto = circular_classify(T, n, DISK_MAP, "pb2")
    w = upto.artifacts["input_witness"]
    print(f"n = {n}: degree exactly n -> {exact.verdict} {exact.clause}; "
          f"degree <= n -> {upto.verdict}")
    print(f"    circ symbol   {exact.artifacts['symbols']['circ']['poly'].format()}")
    print(f"    witness       T[{w.f.format()}] = {w.image.format()}, root {w.root}")
