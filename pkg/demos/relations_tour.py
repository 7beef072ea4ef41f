"""
A first look at linear relations
================================

Relations generalize matrices: a subspace of pairs ``(x | y)`` that may send
a vector to several images, or to none at all.
"""

from relcalc import ChainTuple, Q, classify_chain, compose, from_graph, jordan_degrees, parts
from relcalc.fixtures import ex31, n2

# The graph of a nilpotent 2x2 block is an ordinary operator.
nil = from_graph(n2())
print("graph of N2:", nil)
print("Jordan degrees:", jordan_degrees(nil, 3))

# A relation with a multivalued part: every vector lies in the kernel,
# and e1 is also an image of zero.
a = ex31()
pa = parts(a)
print("\nkernel dim", pa.ker.dim, "| multivalued part", [[Q.format(x) for x in v] for v in pa.mul.basis])

# Products follow the composition of pairs; squaring keeps the kernel.
print("A^2 =", compose(a, a))
print("Jordan degrees of A:", jordan_degrees(a, 3))

# Chains ending in the multivalued part are singular.
e1, e2 = (1, 0), (0, 1)
print("\n(0, e1):", classify_chain(a, ChainTuple.of(Q, (0, 0), e1)))
print("(e2, e1):", classify_chain(a, ChainTuple.of(Q, e2, e1)))
print("(e2, e1) on N2:", classify_chain(nil, ChainTuple.of(Q, e2, e1)))
