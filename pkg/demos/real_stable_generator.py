"""Determinantal real stable polynomials and what breaks when B stops being PSD."""
import numpy as np

from preserver_lab import decide, falsify, gen_real_stable
from preserver_lab.stab2 import det_poly2

for seed in range(4):
    d = 1 + seed
    f, cert = gen_real_stable(d, seed=seed)
    v = decide(f)
    print(f"d = {d}: {f.format()}")
    print(f"    decide -> {v.outcome} ({v.certificate.kind})")

    # negate B on its smallest eigen-direction
    A, B, C = cert.data["A"], cert.data["B"], cert.data["C"]
    Bf = np.array([[float(x.re) for x in row] for row in B])
    lam, V = np.linalg.eigh(Bf)
    Bm = np.round(Bf - 2 * lam[0] * np.outer(V[:, 0], V[:, 0]), 4)
    g = det_poly2(A, Bm.tolist(), C) * cert.data["sign"]
    w = falsify(g)
    print(f"    mutated -> zero at z = {complex(w.z):.4g}, w = {complex(w.w):.4g}"
          if w else "    mutated -> no zero found")
