"""
How far can one extra pair move a Jordan structure?
===================================================

Two relations that differ in a single pair can still have kernel
quotients ``N(A^{n+1})/N(A^n)`` that differ by ``n + 1`` at level ``n``.
"""

from relcalc import check_bounds, jordan_degrees, perturbation_order, s_n
from relcalc.fixtures import sharp

n = 3
a, b = sharp(n)
print(f"ambient dimension {a.d}, perturbation order {perturbation_order(a, b)}")

# The kernel quotient sequences, level by level.
print("D(A):", jordan_degrees(a, n + 1))
print("D(B):", jordan_degrees(b, n + 1))

# Singular chains of B absent from the common part pay for the gap.
print("s_k(B, A):", [s_n(b, a, k) for k in range(n + 2)])

# Every applicable bound holds, and the general one is attained at level n.
rep = check_bounds(a, b, n + 1)
tight = [v for v in rep.verdicts if v.check == "one_dim.level" and v.value in (v.lower, v.upper) and v.value]
print("bounds hold:", rep.ok)
for v in tight:
    print(f"  level {v.n}: difference {v.value} in [{v.lower}, {v.upper}]")
