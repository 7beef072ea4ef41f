"""Chains of linear relations: classification, witnesses, and chain reduction.

A tuple ``(x_n, ..., x_0)`` is stored head first, so ``entries[0]`` is
``x_n`` and ``entries[-1]`` is ``x_0``.  Consecutive entries form the pairs
``{x_j, x_{j-1}}`` that must lie in the relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fieldkit import (
    DimensionMismatch,
    Matrix,
    Subspace,
    concat,
    is_zero_vector,
    kernel,
    lincomb,
    solve,
    vec_sub,
    zero_vector,
)
from .relation import LinearRelation, at, parts, power


class NotAChain(ValueError):
    """Input tuples fail the quasi-Jordan requirements of an operation."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


@dataclass(frozen=True)
class ChainTuple:
    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a chain needs at least one entry")
        d = len(self.entries[0])
        if any(len(x) != d for x in self.entries):
            raise DimensionMismatch("chain entries of different lengths")

    @classmethod
    def of(cls, field, *entries: Sequence) -> "ChainTuple":
        return cls(tuple(tuple(field(a) for a in x) for x in entries))

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    @property
    def head(self) -> tuple:
        return self.entries[0]

    @property
    def tail(self) -> tuple:
        return self.entries[-1]

    def level(self, j: int) -> tuple:
        """``x_j``."""
        return self.entries[self.n - j]

    def hats(self) -> list[tuple]:
        """``[x^_0, ..., x^_n]`` with ``x^_j = (x_j | x_{j-1})`` and ``x^_0 = (x_0 | 0)``."""
        z = zero_vector_like(self.tail)
        out = [concat(self.level(0), z)]
        for j in range(1, self.n + 1):
            out.append(concat(self.level(j), self.level(j - 1)))
        return out

    def is_zero(self) -> bool:
        return all(is_zero_vector(x) for x in self.entries)


def zero_vector_like(v: Sequence) -> tuple:
    return tuple(x - x for x in v)


@dataclass(frozen=True)
class ChainClass:
    is_chain: bool
    is_quasi_jordan: bool
    is_singular: bool
    is_jordan: bool
    jordan_level: int | None = dc_field(default=None)


def classify_chain(a: LinearRelation, t: ChainTuple, lam=0) -> ChainClass:
    """Classify ``t`` against ``a`` at ``lam`` (a field element or ``"inf"``)."""
    if len(t.head) != a.d:
        raise DimensionMismatch(f"chain entries of length {len(t.head)} for a relation in F^{a.d}")
    f = a.field
    t = ChainTuple(tuple(tuple(f(x) for x in v) for v in t.entries))
    rel = at(a, lam)
    hats = t.hats()
    is_chain = all(h in rel.space for h in hats[1:])
    is_qj = is_chain and hats[0] in rel.space
    n = t.n
    is_singular = is_qj and t.head in parts(rel).mul and not t.is_zero()
    is_jordan = False
    if is_qj:
        # x_n is automatically in N(T^{n+1}); Jordan means it is not in N(T^n)
        is_jordan = t.head not in parts(power(rel, n)).ker
    return ChainClass(is_chain, is_qj, is_singular, is_jordan, n if is_jordan else None)


def _restricted(a: LinearRelation, target: Subspace) -> LinearRelation:
    """``a & (F^d x target)``."""
    d, f = a.d, a.field
    lifted = Subspace.from_vectors(
        f, 2 * d, [concat(zero_vector(f, d), b) for b in target.basis]
        + [concat(tuple(f.one if k == i else f.zero for k in range(d)), zero_vector(f, d)) for i in range(d)]
    )
    return LinearRelation(d, a.space & lifted)


def _image_witness(rel: LinearRelation, x: Sequence) -> tuple | None:
    """Some ``y`` with ``(x | y)`` in ``rel``: zero free variables in the canonical basis."""
    d, f = rel.d, rel.field
    basis = rel.space.basis
    if not basis:
        return zero_vector(f, d) if is_zero_vector(x) else None
    # columns = basis vectors restricted to the x-block
    m = Matrix(f, tuple(tuple(v[i] for v in basis) for i in range(d)), len(basis))
    c = solve(m, x)
    if c is None:
        return None
    return lincomb(f, c, [v[d:] for v in basis], d)


def extract_jordan_chain(a: LinearRelation, head: Sequence, n: int) -> ChainTuple:
    """Complete ``head`` in ``N(a^{n+1})`` to a quasi-Jordan chain ``(head, x_{n-1}, ..., x_0)``.

    Each ``x_{j-1}`` is picked from ``a(x_j) & N(a^j)``, which is nonempty
    whenever ``x_j`` lies in ``N(a^{j+1})``, so the greedy descent never
    gets stuck.
    """
    f = a.field
    head = tuple(f(x) for x in head)
    if len(head) != a.d:
        raise DimensionMismatch("head has the wrong length")
    if head not in parts(power(a, n + 1)).ker:
        raise PreconditionError("head is not in N(A^{n+1})")
    entries = [head]
    x = head
    for j in range(n, 0, -1):
        target = parts(power(a, j)).ker
        y = _image_witness(_restricted(a, target), x)
        if y is None:  # pragma: no cover - excluded by the kernel descent argument
            raise PreconditionError("no witness found")
        entries.append(y)
        x = y
    return ChainTuple(tuple(entries))


def _require_quasi_jordan(a: LinearRelation, chains: Sequence[ChainTuple], n: int | None = None) -> int:
    lengths = {c.n for c in chains}
    if len(lengths) > 1:
        raise NotAChain("chains of different lengths")
    if n is not None and lengths and lengths != {n}:
        raise NotAChain(f"chains must have length {n + 1}")
    for c in chains:
        if not classify_chain(a, c, 0).is_quasi_jordan:
            raise NotAChain(f"not a quasi-Jordan chain: {c}")
    return lengths.pop() if lengths else (n if n is not None else 0)


def class_span_dim(a: LinearRelation, chains: Sequence[ChainTuple], n: int) -> tuple[int, int]:
    """Return ``(dim span{[x_{k,n}]}, dim L/(L & mul a^n))`` with ``L = span{x_{k,0}}``.

    The first value is computed in ``N(a^{n+1})/N(a^n)``; the second from the
    tails.  The two always agree.
    """
    _require_quasi_jordan(a, chains, n)
    f, d = a.field, a.d
    kn = parts(power(a, n)).ker
    heads = Subspace.from_vectors(f, d, [c.head for c in chains])
    left = (heads + kn).dim - kn.dim
    tails = Subspace.from_vectors(f, d, [c.tail for c in chains])
    right = tails.dim - (tails & parts(power(a, n)).mul).dim
    return left, right


@dataclass(frozen=True)
class Reduction:
    chains: tuple
    order: tuple  # input indices; the last one is the pivot chain
    pivot_level: int | None
    coefficients: tuple  # alpha[k][i - h] per reduced chain


def reduce_chains(a: LinearRelation, c: LinearRelation, chains: Sequence[ChainTuple]) -> Reduction:
    """Turn ``m`` quasi-Jordan chains of ``a`` into ``m - 1`` quasi-Jordan chains of ``c``.

    ``c`` must be a codimension-one subrelation of ``a``.  The pivot chain is
    the first chain (smallest index) owning a pair outside ``c`` at the
    lowest possible level ``h``; it is moved to the end and subtracted from
    the others level by level.  The result satisfies
    ``y_{k,j} in x_{k,j} + span{x_{m,l} : l <= j}``.
    """
    if not c <= a or a.dim - c.dim != 1:
        raise PreconditionError("need c inside a with dim(a/c) = 1")
    chains = list(chains)
    m = len(chains)
    n = _require_quasi_jordan(a, chains)
    if m <= 1:
        return Reduction((), tuple(range(m)), None, ())
    f = a.field
    hats = [ch.hats() for ch in chains]
    outside = [(k, j) for j in range(n + 1) for k in range(m) if hats[k][j] not in c.space]
    if not outside:
        return Reduction(tuple(chains[: m - 1]), tuple(range(m)), None, ())
    h = outside[0][1]
    kappa = min(k for k, j in outside if j == h)
    order = tuple(k for k in range(m) if k != kappa) + (kappa,)
    piv = chains[kappa]
    piv_hats = hats[kappa]
    # coordinate of a vector of a along the pivot pair, modulo c
    piv_rem = c.space.reduce(piv_hats[h])
    idx = next(i for i, x in enumerate(piv_rem) if x)

    def along_pivot(v):
        r = c.space.reduce(v)
        return f.div(r[idx], piv_rem[idx])

    reduced, coeffs = [], []
    for k in order[:-1]:
        alpha = {}  # alpha[i] for i = h..n
        for j in range(h, n + 1):
            w = hats[k][j]
            for i in range(h, j):
                w = vec_sub(f, w, tuple(f.mul(alpha[i], x) for x in piv_hats[j + h - i]))
            alpha[j] = along_pivot(w)
        ys = {}
        for j in range(n + 1):
            y = chains[k].level(j)
            for i in range(h, min(j + h, n) + 1):
                y = vec_sub(f, y, tuple(f.mul(alpha[i], x) for x in piv.level(j + h - i)))
            ys[j] = y
        reduced.append(ChainTuple(tuple(ys[j] for j in range(n, -1, -1))))
        coeffs.append(tuple(alpha[i] for i in range(h, n + 1)))
    return Reduction(tuple(reduced), order, h, tuple(coeffs))


def chain_space(t: LinearRelation, m: int) -> Subspace:
    """``S_m^T``: m-tuples of pairs of ``t`` forming a chain, inside ``F^{2dm}``.

    Pair ``i`` is ``{x_{m-i}, x_{m-i-1}}``; the second block of pair ``i``
    must equal the first block of pair ``i + 1``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    f, d = t.field, t.d
    basis = t.space.basis
    r = len(basis)
    if r == 0:
        return Subspace.zero(f, 2 * d * m)
    ncoef = r * m
    rows = []
    for i in range(m - 1):
        for k in range(d):
            row = [f.zero] * ncoef
            for s, v in enumerate(basis):
                row[i * r + s] = v[d + k]
                row[(i + 1) * r + s] = f.neg(v[k])
            rows.append(tuple(row))
    if rows:
        sol = kernel(Matrix(f, tuple(rows), ncoef)).basis
    else:
        sol = [tuple(f.one if q == p else f.zero for q in range(ncoef)) for p in range(ncoef)]
    vecs = []
    for s in sol:
        vecs.append(concat(*(lincomb(f, s[i * r:(i + 1) * r], basis, 2 * d) for i in range(m))))
    return Subspace.from_vectors(f, 2 * d * m, vecs)


def chainspace_quotient_dim(a: LinearRelation, c: LinearRelation, m: int) -> int:
    """``dim S_m^a - dim S_m^c`` for ``c`` inside ``a``."""
    if not c <= a:
        raise PreconditionError("c must be contained in a")
    sa, sc = chain_space(a, m), chain_space(c, m)
    return sa.dim - sc.dim


def stable_spaces(a: LinearRelation) -> tuple[Subspace, Subspace]:
    """``(N(a^inf), mul(a^inf))`` -- both ascending chains stop growing within ``d`` steps."""
    ker_prev = mul_prev = None
    n = 1
    while True:
        p = parts(power(a, n))
        if ker_prev is not None and p.ker == ker_prev and p.mul == mul_prev:
            return p.ker, p.mul
        ker_prev, mul_prev = p.ker, p.mul
        n += 1
        if n > 2 * a.d + 1:
            return p.ker, p.mul


def has_singular_chain(a: LinearRelation) -> bool:
    """Whether ``a`` owns a nonzero singular chain.

    Decided as ``N(a^inf) & mul(a^inf) != {0}``.  A nonzero ``x`` in both
    spaces gives chains ``0 -> ... -> x`` (from mul) and ``x -> ... -> 0``
    (from the kernel); their concatenation is a nonzero quasi-Jordan chain
    with head 0, i.e. singular.  Conversely every entry of a singular chain
    lies in both spaces, and some entry is nonzero.
    """
    ker, mul = stable_spaces(a)
    return (ker & mul).dim > 0
