"""
Rank-one updates of a matrix pencil
===================================

A pencil ``sE - F`` is studied through the relation ``{(x | y) : F x = E y}``.
A perturbation ``w (s u* + v*)`` changes that relation by at most one pair.
"""

from relcalc import INFINITY, Matrix, Pencil, Q, RankOnePencil, apply_perturbation, jordan_dims_at, pencil_bound_report, profile, wong
from relcalc.pencil import poly_format
from relcalc.fixtures import n2, sing

# sI - N2 has a double eigenvalue at zero.
p = Pencil(Matrix.identity(Q, 2), n2())
print("det coefficients, lowest degree first:", poly_format(Q, profile(p).det_poly))
print("Jordan dims at 0:", jordan_dims_at(p, 0, 3))

# Push E by e2 e1^T: the eigenvalue splits into 0 and -1.
q = RankOnePencil.of(Q, u=(1, 0), v=(0, 0), w=(0, 1))
p2 = apply_perturbation(p, q)
print("\nperturbed det coefficients:", poly_format(Q, profile(p2).det_poly))
rep = pencil_bound_report(p, q, nmax=2)
print("case:", rep.case, "| bounds hold:", rep.ok)
for lam in rep.lambdas:
    print(f"  lambda {lam}: {rep.dims_before[lam]} -> {rep.dims_after[lam]}")

# A singular pencil: the determinant vanishes identically.
s = sing()
prof = profile(s)
print("\nsingular pencil rank", prof.pencil_rank, "| regular:", prof.regular)
print("Wong sequence dims:", [w.dim for w in wong(s, 3)])
print("dims at infinity:", jordan_dims_at(s, INFINITY, 2))
