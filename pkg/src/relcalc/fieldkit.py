"""Exact scalar fields, small dense matrices and the subspace lattice.

Three fields are supported:

* ``Q``   -- rationals, backed by :class:`gmpy2.mpq`;
* ``Qi``  -- Gaussian rationals ``a + b i`` with rational ``a, b``;
* ``GFp`` -- the prime field ``Z/pZ`` for a prime ``2 <= p <= 97``,
  with elements stored as plain ``int`` in ``[0, p)``.

Vectors are tuples of field elements.  Every :class:`Subspace` keeps its
basis in reduced row echelon form, so two subspaces are equal exactly when
their stored bases agree entry by entry.
"""

from __future__ import annotations

import functools
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Vector = tuple


class DimensionMismatch(ValueError):
    """Raised when operands live in different ambient spaces."""


class FieldMismatch(ValueError):
    """Raised when operands are defined over different fields."""


class NotASubspace(ValueError):
    """Raised by :func:`quotient_dim` when the denominator is not contained in the numerator."""


# ---------------------------------------------------------------------------
# scalars


class GaussQ:
    """Gaussian rational ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    def _lift(self, other):
        if isinstance(other, GaussQ):
            return other
        return GaussQ(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Qi")
        return GaussQ(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?=$|[+-]))?\s*(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i)?\s*$"
)


def _parse_rational(text: str) -> mpq:
    text = text.strip()
    if not re.fullmatch(_RAT, text):
        raise ValueError(f"not a rational scalar: {text!r}")
    return mpq(Fraction(text))


def _format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Field:
    """Base class of the three exact fields.

    Subclasses supply element arithmetic through ``add/sub/mul/div/neg`` and
    a specialised row reduction.  Instances compare equal by :attr:`tag`.
    """

    kind: str = ""
    p: int | None = None

    @property
    def tag(self) -> tuple:
        return (self.kind, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.kind if self.p is None else f"GF({self.p})"

    # element arithmetic (Q and Qi elements carry their own operators)
    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    div = staticmethod(operator.truediv)
    neg = staticmethod(operator.neg)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def conj(self, a):
        return a

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def rref_rows(self, rows: list[list]) -> tuple[list[list], list[int]]:
        """Row reduce ``rows`` in place; return (nonzero rows, pivot columns)."""
        return _rref_generic(rows)


class Rationals(Field):
    kind = "Q"

    def __call__(self, x):
        if isinstance(x, GaussQ):
            if x.im != 0:
                raise FieldMismatch("non-real value in Q")
            return x.re
        if isinstance(x, str):
            return self.parse(x)
        return mpq(x)

    def parse(self, text: str):
        return _parse_rational(text)

    def format(self, a) -> str:
        return _format_rational(a)


class GaussianRationals(Field):
    kind = "Qi"

    def __call__(self, x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, complex):
            return GaussQ(Fraction(x.real), Fraction(x.imag))
        return GaussQ(x, 0)

    def conj(self, a):
        return a.conjugate()

    def parse(self, text: str):
        t = text.replace(" ", "")
        m = _GAUSS_RE.match(t)
        if not t or m is None or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"not a Gaussian rational scalar: {text!r}")
        re_part = _parse_rational(m.group("re")) if m.group("re") else mpq(0)
        im_text = m.group("im")
        if im_text is None:
            im_part = mpq(0)
        elif im_text in ("", "+"):
            im_part = mpq(1)
        elif im_text == "-":
            im_part = mpq(-1)
        else:
            im_part = _parse_rational(im_text)
        return GaussQ(re_part, im_part)

    def format(self, a) -> str:
        a = self(a)
        if a.im == 0:
            return _format_rational(a.re)
        im = _format_rational(a.im)
        sign = "" if im.startswith("-") else "+"
        return f"{_format_rational(a.re)}{sign}{im}i"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


class PrimeField(Field):
    kind = "GFp"

    def __init__(self, p: int):
        if not (_is_prime(p) and p <= 97):
            raise ValueError(f"GF(p) needs a prime 2 <= p <= 97, got {p}")
        self.p = p
        self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return a * self._inv[b] % self.p

    def neg(self, a):
        return -a % self.p

    def parse(self, text: str):
        return self(_parse_rational(text))

    def format(self, a) -> str:
        return str(a)

    def elements(self) -> range:
        return range(self.p)

    def rref_rows(self, rows):
        return _rref_modp(rows, self.p, self._inv)


Q = Rationals()
Qi = GaussianRationals()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(kind: str, p: int | None = None) -> Field:
    if kind == "Q":
        return Q
    if kind == "Qi":
        return Qi
    if kind in ("GF", "GFp"):
        if p is None:
            raise ValueError("GF field needs a modulus")
        return GF(p)
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# row reduction kernels


def _rref_generic(rows):
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if prow[c] != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref_modp(rows, p, invtab):
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] != 1:
            inv = invtab[prow[c]]
            prow = [x * inv % p for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return rows[:r], pivots


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=True)
class Matrix:
    """Dense row-major matrix over an exact field."""

    field: Field
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise DimensionMismatch("ragged matrix rows")
        return cls(field, data, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls.from_rows(field, [[0] * ncols for _ in range(nrows)], ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> list:
        return [x for row in self.rows for x in row]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Matrix":
        cols = tuple(self.column(j) for j in range(self.ncols))
        return Matrix(self.field, cols, self.nrows)

    def conj_transpose(self) -> "Matrix":
        t = self.transpose()
        cj = self.field.conj
        return Matrix(self.field, tuple(tuple(cj(x) for x in row) for row in t.rows), t.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add
        return Matrix(
            self.field,
            tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, tuple(tuple(mul(c, a) for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _check_same(self.field, other.field)
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return Matrix(
                self.field,
                tuple(tuple(dot(self.field, r, c) for c in cols) for r in self.rows),
                other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(vec)}")
        return tuple(dot(self.field, r, vec) for r in self.rows)

    def rank(self) -> int:
        return rref(self)[1]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field!r}]({self.nrows}x{self.ncols}: {body})"


def _check_same(f: Field, g: Field) -> None:
    if f != g:
        raise FieldMismatch(f"{f!r} vs {g!r}")


def dot(field: Field, a: Sequence, b: Sequence):
    if field.p is None:
        s = field.zero
        for x, y in zip(a, b):
            if x and y:
                s = s + x * y
        return s
    return sum(x * y for x, y in zip(a, b)) % field.p


def vec_add(field: Field, a: Sequence, b: Sequence) -> Vector:
    add = field.add
    return tuple(add(x, y) for x, y in zip(a, b))


def vec_sub(field: Field, a: Sequence, b: Sequence) -> Vector:
    sub = field.sub
    return tuple(sub(x, y) for x, y in zip(a, b))


def vec_scale(field: Field, c, a: Sequence) -> Vector:
    mul = field.mul
    return tuple(mul(c, x) for x in a)


def lincomb(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Return ``sum(c * v)``; ``n`` is the vector length (needed when empty)."""
    out = [field.zero] * n
    add, mul = field.add, field.mul
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] = add(out[j], mul(c, x))
    return tuple(out)


def unit(field: Field, n: int, i: int) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form of ``m``: ``(canonical, rank, pivots)``.

    ``canonical`` holds only the nonzero rows.
    """
    rows, pivots = m.field.rref_rows([list(r) for r in m.rows])
    canon = Matrix(m.field, tuple(tuple(r) for r in rows), m.ncols)
    return canon, len(rows), tuple(pivots)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of ``F^n`` stored by its canonical RREF basis (rows)."""

    __slots__ = ("field", "ambient", "basis", "pivots", "_hash")

    def __init__(self, field: Field, ambient: int, basis: tuple, pivots: tuple):
        # trusted constructor: basis must already be canonical
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self._hash = None

    @classmethod
    def from_vectors(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{ambient}")
            row = [field(x) for x in v]
            if any(row):
                rows.append(row)
        if not rows:
            return cls(field, ambient, (), ())
        red, piv = field.rref_rows(rows)
        return cls(field, ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, tuple(unit(field, ambient, i) for i in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.tag, self.ambient, self.basis))
        return self._hash

    def __repr__(self):
        fmt = self.field.format
        vecs = ", ".join("(" + ",".join(fmt(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(F^{self.ambient}, dim={self.dim}, [{vecs}])"

    def _compatible(self, other: "Subspace") -> None:
        _check_same(self.field, other.field)
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"F^{self.ambient} vs F^{other.ambient}")

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` modulo this subspace (linear in ``v``)."""
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{self.ambient}")
        f = self.field
        out = list(v)
        for row, c in zip(self.basis, self.pivots):
            a = out[c]
            if a:
                for j in range(c, self.ambient):
                    if row[j]:
                        out[j] = f.sub(out[j], f.mul(a, row[j]))
        return tuple(out)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coefficients of ``v`` in the canonical basis, or ``None`` if ``v`` is outside."""
        if any(self.reduce(v)):
            return None
        return tuple(v[c] for c in self.pivots)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        self._compatible(other)
        return all(b in other for b in self.basis)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def project(self, cols: Sequence[int]) -> "Subspace":
        """Image under the coordinate projection onto ``cols``."""
        return Subspace.from_vectors(self.field, len(cols), (tuple(v[c] for c in cols) for v in self.basis))

    def complement_in(self, other: "Subspace") -> list[Vector]:
        """Vectors extending this basis to a basis of ``other`` (greedy, canonical order).

        Requires ``self <= other``.
        """
        self._compatible(other)
        rows = [list(b) for b in self.basis]
        current = self
        extra = []
        for b in other.basis:
            if b not in current:
                extra.append(b)
                rows.append(list(b))
                current = Subspace.from_vectors(self.field, self.ambient, rows)
        return extra


def span(field: Field, vectors: Sequence[Sequence], ambient: int | None = None) -> Subspace:
    vectors = list(vectors)
    if ambient is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension required for an empty span")
        ambient = len(vectors[0])
    return Subspace.from_vectors(field, ambient, vectors)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._compatible(v)
    if not u.basis:
        return v
    if not v.basis:
        return u
    return Subspace.from_vectors(u.field, u.ambient, list(u.basis) + list(v.basis))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection via the Zassenhaus block elimination.

    Rows ``(a | a)`` for ``a`` in ``u`` and ``(b | 0)`` for ``b`` in ``v`` are
    reduced; the rows whose left half vanishes span ``u & v`` in the right half.
    """
    u._compatible(v)
    f, n = u.field, u.ambient
    if not u.basis or not v.basis:
        return Subspace.zero(f, n)
    if u.dim == n:
        return v
    if v.dim == n:
        return u
    z = zero_vector(f, n)
    rows = [list(a) + list(a) for a in u.basis] + [list(b) + list(z) for b in v.basis]
    red, piv = f.rref_rows(rows)
    right = [r[n:] for r, c in zip(red, piv) if c >= n]
    return Subspace.from_vectors(f, n, right)


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}`` as a canonical subspace of ``F^cols``."""
    f, n = m.field, m.ncols
    if not m.rows:
        return Subspace.full(f, n)
    red, piv = f.rref_rows([list(r) for r in m.rows])
    return _kernel_from_rref(f, n, red, piv)


def _kernel_from_rref(f: Field, n: int, red, piv) -> Subspace:
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    vecs = []
    for j in free:
        x = [f.zero] * n
        x[j] = f.one
        for row, c in zip(red, piv):
            if row[j]:
                x[c] = f.neg(row[j])
        vecs.append(x)
    return Subspace.from_vectors(f, n, vecs)


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """Particular solution of ``m x = rhs`` with every free variable set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    f = m.field
    if len(rhs) != m.nrows:
        raise DimensionMismatch("right-hand side length")
    n = m.ncols
    aug = [list(r) + [f(b)] for r, b in zip(m.rows, rhs)]
    if not aug:
        return zero_vector(f, n)
    red, piv = f.rref_rows(aug)
    if piv and piv[-1] == n:
        return None
    x = [f.zero] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def quotient_dim(v: Subspace, u: Subspace) -> int:
    """``dim(v/u)``; raises :class:`NotASubspace` unless ``u`` is inside ``v``."""
    v._compatible(u)
    if not u <= v:
        raise NotASubspace("quotient requires the second argument inside the first")
    return v.dim - u.dim


def concat(*vectors: Sequence) -> Vector:
    out: list = []
    for v in vectors:
        out.extend(v)
    return tuple(out)
