"""Linear relations in ``F^d``: subspaces of ``F^d x F^d``.

A pair ``{x, y}`` is stored as the concatenated vector ``(x | y)`` of length
``2d`` with ``x`` first.  Operators enter through their graphs
(:func:`from_graph`); everything else (inverse, product, powers, shifts)
stays inside the class of relations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .fieldkit import (
    DimensionMismatch,
    Field,
    FieldMismatch,
    Matrix,
    Subspace,
    concat,
    kernel,
    lincomb,
    unit,
    zero_vector,
)

INFINITY = "inf"


@dataclass(frozen=True)
class RelationParts:
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


class LinearRelation:
    """A linear relation in ``F^d`` held as a canonical subspace of ``F^{2d}``."""

    __slots__ = ("d", "space")

    def __init__(self, d: int, space: Subspace):
        if space.ambient != 2 * d:
            raise DimensionMismatch(f"relation in F^{d} needs a subspace of F^{2 * d}")
        self.d = d
        self.space = space

    @classmethod
    def from_pairs(cls, field: Field, d: int, pairs) -> "LinearRelation":
        """Span of the given ``(x, y)`` pairs."""
        vecs = []
        for x, y in pairs:
            if len(x) != d or len(y) != d:
                raise DimensionMismatch(f"pair components must have length {d}")
            vecs.append(concat([field(a) for a in x], [field(b) for b in y]))
        return cls(d, Subspace.from_vectors(field, 2 * d, vecs))

    @classmethod
    def from_vectors(cls, field: Field, d: int, vectors) -> "LinearRelation":
        """Span of flat ``(x | y)`` vectors of length ``2d``."""
        return cls(d, Subspace.from_vectors(field, 2 * d, [tuple(field(a) for a in v) for v in vectors]))

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def pairs(self) -> list[tuple[tuple, tuple]]:
        d = self.d
        return [(v[:d], v[d:]) for v in self.space.basis]

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.d == other.d and self.space == other.space

    def __hash__(self):
        return hash((self.d, self.space))

    def __contains__(self, pair) -> bool:
        x, y = pair
        return concat(x, y) in self.space

    def __le__(self, other: "LinearRelation") -> bool:
        _compatible(self, other)
        return self.space <= other.space

    def __ge__(self, other: "LinearRelation") -> bool:
        return other <= self

    def __and__(self, other: "LinearRelation") -> "LinearRelation":
        _compatible(self, other)
        return LinearRelation(self.d, self.space & other.space)

    def __repr__(self):
        fmt = self.field.format
        body = ", ".join(
            "{" + ",".join(map(fmt, x)) + " | " + ",".join(map(fmt, y)) + "}" for x, y in self.pairs
        )
        return f"LinearRelation(d={self.d}, dim={self.dim}, [{body}])"

    # convenience wrappers
    def inverse(self) -> "LinearRelation":
        return inverse(self)

    def parts(self) -> RelationParts:
        return parts(self)

    def __matmul__(self, other: "LinearRelation") -> "LinearRelation":
        return compose(self, other)

    def __pow__(self, n: int) -> "LinearRelation":
        return power(self, n)


def _compatible(a: LinearRelation, b: LinearRelation) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if a.d != b.d:
        raise DimensionMismatch(f"relations in F^{a.d} and F^{b.d}")


def from_graph(m: Matrix) -> LinearRelation:
    """Graph ``{(x | m x)}`` of a square matrix."""
    if m.nrows != m.ncols:
        raise DimensionMismatch(f"graph needs a square matrix, got {m.shape}")
    d, f = m.ncols, m.field
    vecs = [concat(unit(f, d, j), m.column(j)) for j in range(d)]
    return LinearRelation(d, Subspace.from_vectors(f, 2 * d, vecs))


def identity(field: Field, d: int) -> LinearRelation:
    return from_graph(Matrix.identity(field, d))


def zero_relation(field: Field, d: int) -> LinearRelation:
    """The trivial relation ``{(0 | 0)}``."""
    return LinearRelation(d, Subspace.zero(field, 2 * d))


def inverse(a: LinearRelation) -> LinearRelation:
    d = a.d
    return LinearRelation(d, Subspace.from_vectors(a.field, 2 * d, (v[d:] + v[:d] for v in a.space.basis)))


def _block_embed(s: Subspace, first: bool) -> LinearRelation:
    """``s x {0}`` when ``first`` else ``{0} x s``."""
    z = zero_vector(s.field, s.ambient)
    vecs = (concat(v, z) if first else concat(z, v) for v in s.basis)
    return LinearRelation(s.ambient, Subspace.from_vectors(s.field, 2 * s.ambient, vecs))


def compose(a: LinearRelation, b: LinearRelation) -> LinearRelation:
    """Product ``AB = {(x | z) : (x | y) in B, (y | z) in A for some y}``.

    The middle vector ``y`` is eliminated by a kernel computation: with bases
    ``b_i = (bx_i | by_i)`` and ``a_j = (ay_j | az_j)`` we solve
    ``sum c_i by_i = sum e_j ay_j`` and map each solution to
    ``(sum c_i bx_i | sum e_j az_j)``.
    """
    _compatible(a, b)
    d, f = a.d, a.field
    bb, ab = b.space.basis, a.space.basis
    # {0} still holds the zero pair: {0}B = N(B) x {0} and A{0} = {0} x mul A
    if not ab:
        return _block_embed(parts(b).ker, first=True)
    if not bb:
        return _block_embed(parts(a).mul, first=False)
    nb = len(bb)
    # constraint rows: for each coordinate k of y
    rows = [
        [v[d + k] for v in bb] + [f.neg(w[k]) for w in ab]
        for k in range(d)
    ]
    sol = kernel(Matrix(f, tuple(tuple(r) for r in rows), nb + len(ab)))
    vecs = []
    for s in sol.basis:
        x = lincomb(f, s[:nb], [v[:d] for v in bb], d)
        z = lincomb(f, s[nb:], [w[d:] for w in ab], d)
        vecs.append(concat(x, z))
    return LinearRelation(d, Subspace.from_vectors(f, 2 * d, vecs))


@functools.lru_cache(maxsize=8192)
def power(a: LinearRelation, n: int) -> LinearRelation:
    """``A^0 = I`` and ``A^n = A A^{n-1}``."""
    if n < 0:
        raise ValueError("power needs n >= 0")
    if n == 0:
        return identity(a.field, a.d)
    if n == 1:
        return a
    return compose(a, power(a, n - 1))


@functools.lru_cache(maxsize=8192)
def parts(a: LinearRelation) -> RelationParts:
    d = a.d
    first = list(range(d))
    second = list(range(d, 2 * d))
    dom = a.space.project(first)
    ran = a.space.project(second)
    # (x | 0) in A  <=>  x in ker; reduce with the y-block pivoted first
    ker = _block_kernel(a, second, first)
    mul = _block_kernel(a, first, second)
    return RelationParts(dom=dom, ran=ran, ker=ker, mul=mul)


def _block_kernel(a: LinearRelation, zero_cols, keep_cols) -> Subspace:
    """Vectors ``w`` on ``keep_cols`` with ``w`` (and zeros on ``zero_cols``) in A."""
    f = a.field
    rows = [[v[c] for c in zero_cols] + [v[c] for c in keep_cols] for v in a.space.basis]
    if not rows:
        return Subspace.zero(f, len(keep_cols))
    red, piv = f.rref_rows(rows)
    k = len(zero_cols)
    return Subspace.from_vectors(f, len(keep_cols), (r[k:] for r, c in zip(red, piv) if c >= k))


def kernel_of(a: LinearRelation) -> Subspace:
    return parts(a).ker


def mul_of(a: LinearRelation) -> Subspace:
    return parts(a).mul


def op_sum(a: LinearRelation, b: LinearRelation) -> LinearRelation:
    """Operator-like sum ``{(x | y + z) : (x | y) in A, (x | z) in B}``."""
    _compatible(a, b)
    d, f = a.d, a.field
    ab, bb = a.space.basis, b.space.basis
    if not ab or not bb:
        return _block_embed(parts(b if not ab else a).mul, first=False)
    na = len(ab)
    rows = [[v[k] for v in ab] + [f.neg(w[k]) for w in bb] for k in range(d)]
    sol = kernel(Matrix(f, tuple(tuple(r) for r in rows), na + len(bb)))
    vecs = []
    for s in sol.basis:
        x = lincomb(f, s[:na], [v[:d] for v in ab], d)
        y = lincomb(f, s[:na], [v[d:] for v in ab], d)
        z = lincomb(f, s[na:], [w[d:] for w in bb], d)
        vecs.append(concat(x, tuple(f.add(p, q) for p, q in zip(y, z))))
    return LinearRelation(d, Subspace.from_vectors(f, 2 * d, vecs))


def scale_shift(a: LinearRelation, lam) -> LinearRelation:
    """``A - lam = {(x | y - lam x) : (x | y) in A}``."""
    d, f = a.d, a.field
    lam = f(lam)
    if not lam:
        return a
    vecs = [v[:d] + tuple(f.sub(y, f.mul(lam, x)) for x, y in zip(v[:d], v[d:])) for v in a.space.basis]
    return LinearRelation(d, Subspace.from_vectors(f, 2 * d, vecs))


def at(a: LinearRelation, lam) -> LinearRelation:
    """The relation whose chains at zero are the chains of ``a`` at ``lam``.

    ``lam`` may be a field element or :data:`INFINITY`.
    """
    if is_infinity(lam):
        return inverse(a)
    return scale_shift(a, lam)


def is_infinity(lam) -> bool:
    return isinstance(lam, str) and lam.lower() in ("inf", "infinity", "oo")


def kernel_dims(a: LinearRelation, nmax: int) -> list[int]:
    """``[dim N(A^0), ..., dim N(A^nmax)]``.

    Kernels of powers form an ascending chain in ``F^d``; once two
    consecutive kernels agree the chain is constant from there on
    (``x in N(A^{n+2})`` gives ``{x, x'} in A`` with ``x' in N(A^{n+1}) = N(A^n)``).
    """
    dims = [0]
    for n in range(1, nmax + 1):
        dims.append(parts(power(a, n)).ker.dim)
        if dims[-1] == dims[-2]:
            dims.extend([dims[-1]] * (nmax - n))
            break
    return dims


def jordan_degrees(a: LinearRelation, nmax: int) -> list[int]:
    """``D_n = dim N(A^{n+1}) - dim N(A^n)`` for ``n = 0..nmax``."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    dims = kernel_dims(a, nmax + 1)
    return [dims[n + 1] - dims[n] for n in range(nmax + 1)]


def zero_pair(a: LinearRelation) -> tuple:
    return zero_vector(a.field, 2 * a.d)
