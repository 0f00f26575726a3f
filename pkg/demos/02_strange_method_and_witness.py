#!/usr/bin/env python3
"""Optimality is not preserved by the anti-diagonal transpose.

The exceptional 3-step method certifies optimal, and the transpose keeps
every terminal invariant -- yet the transpose is *not* optimal.  The
refutation is constructive: an exact positive-definite Gram matrix of
interpolation data on which the transposed method's terminal residual
strictly beats the optimal rate.
"""

from fractions import Fraction

import hinv as H
from hinv.exactlinalg import leading_principal_minors

s = H.strange3()
sd = H.h_dual(s)

print("exceptional method:", H.certify(s).status)
print("its transpose:     ", H.certify(sd).status)

lam = H.certificates(sd)
print("\ntranspose certificates (two are negative):")
for (k, j), v in lam.items():
    marker = "  <-- negative" if v < 0 else ""
    print(f"  lambda({k},{j}) = {v}{marker}")

print("\nBuilding the exact witness at the pair (4,2):")
w = H.suboptimality_witness(sd, 4, 2)
print(f"  perturbation size epsilon = {w.epsilon}")
print(f"  terminal entry 4*gram[N][N] = {w.residual_sq}  >  4/N^2 = {w.bound_sq()}")
print(f"  excess = {w.residual_sq - w.bound_sq()} "
      f"(~{float(w.residual_sq - w.bound_sq()):.3g})")

print("\nExact re-check of the witness:")
minors = leading_principal_minors(w.gram_rows())
print(f"  all {len(minors)} leading minors positive: {all(m > 0 for m in minors)}")
print(f"  unit initial distance (corner entry): {w.gram[4][4] == 1}")
ledger = H.interpolation_traces(w.gram, sd)
print(f"  every monotonicity trace zero except (4,2): {ledger.zero_except((4, 2))}")
print(f"  activated trace value: {ledger.a_traces[(4, 2)]}")

print("\nFloat realization (rows of the Cholesky factor):")
for name, vec in zip(["g1", "g2", "g3", "g4", "y0-y*"], H.witness_vectors(w)):
    print(f"  {name:>6} = [" + ", ".join(f"{x:+.6f}" for x in vec) + "]")
print("\nAny nonexpansive operator interpolating this finite data (one exists")
print("by nonexpansive extension) makes the transposed method's terminal")
print("residual exceed the optimal rate -- an explicit counterexample.")
