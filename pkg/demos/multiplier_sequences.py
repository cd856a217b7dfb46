"""Multiplier sequences: finite checks on T[(z+1)^n] and on the symbol."""
from fractions import Fraction

from preserver_lab import LinearOperator, algebraic_sweep, multiplier_test

cases = {
    "k": list(range(11)),
    "k^2": [k * k for k in range(11)],
    "1, 1, 0, ...": [1, 1] + [0] * 9,
    "1, 0, 1, 0, ...": [1 - k % 2 for k in range(11)],
    "2^-k": [Fraction(1, 2 ** k) for k in range(11)],
}

for name, lam in cases.items():
    rep = multiplier_test(lam, 10)
    line = f"{name:18s} multiplier test: {rep.verdict}"
    if rep.verdict == "non_preserver":
        w = rep.artifacts["input_witness"]
        line += f" at n = {rep.artifacts['failing_n']} ({w.reason}: {w.image.format()})"
    sweep = algebraic_sweep(LinearOperator.from_multipliers(lam, 6), 6, "hyp")
    line += f"; symbol sweep up to 6: {sweep.verdict} {sweep.clause}".rstrip()
    print(line)
