"""Named regression instances with pinned dimension tables."""

from __future__ import annotations

from .fieldkit import Field, Matrix, Q, unit, vec_sub, zero_vector
from .pencil import Pencil
from .relation import LinearRelation, from_graph

NAMES = ("EX31", "ID", "N2", "N2PENCIL", "SHARP", "SING", "WONG")


def ex31(field: Field = Q) -> LinearRelation:
    """``span{(0 | e1), (e1 | 0), (e2 | e1)}`` in ``F^2``: kernel everything, mul ``span{e1}``."""
    return LinearRelation.from_pairs(field, 2, [((0, 0), (1, 0)), ((1, 0), (0, 0)), ((0, 1), (1, 0))])


def n2(field: Field = Q) -> Matrix:
    return Matrix.from_rows(field, [[0, 1], [0, 0]])


def sharp(n: int, field: Field = Q) -> tuple[LinearRelation, LinearRelation]:
    """One-dimensional perturbations ``A, B`` of each other in ``F^{(n+1)^2}``.

    ``dim N(A^{n+1})/N(A^n) = n + 1`` while ``N(B^{n+1}) = N(B^n)``.

    Basis layout: ``x_{i,j}`` (``i = 1..n``, ``j = 0..n``) sits at index
    ``(i-1)(n+1) + j`` and ``y_l`` (``l = 1..n+1``) at ``n(n+1) + l - 1``.
    Each ``x_{k,.}`` family is a Jordan chain of length ``n + 1``; the ``y``
    vectors tie the chain heads together, and ``A``, ``B`` differ in a single
    pair.
    """
    if n < 2:
        raise ValueError("SHARP needs n >= 2")
    dim = (n + 1) ** 2

    def x(i, j):
        return unit(field, dim, (i - 1) * (n + 1) + j)

    def y(l):
        return unit(field, dim, n * (n + 1) + l - 1)

    z = zero_vector(field, dim)

    def sub(a, b):
        return vec_sub(field, a, b)

    common = []
    for k in range(1, n + 1):
        common += [(x(k, j), x(k, j - 1)) for j in range(1, n + 1)]
        common.append((x(k, 0), z))
    common += [(sub(x(k, n), y(n - k + 1)), sub(x(k + 1, n), y(n - k))) for k in range(1, n - 1)]
    common += [(sub(x(n - 1, n), y(2)), y(1)), (y(1), z), (x(n, n), y(n))]
    common += [(y(l), y(l - 1)) for l in range(3, n + 1)]
    a = common + [(y(n + 1), sub(x(1, n), y(n)))]
    b = common + [(y(2), z)]
    return LinearRelation.from_pairs(field, dim, a), LinearRelation.from_pairs(field, dim, b)


def sing(field: Field = Q) -> Pencil:
    """``E = F = diag(1, 0)``: the determinant vanishes identically."""
    m = Matrix.from_rows(field, [[1, 0], [0, 0]])
    return Pencil(m, m)


def wong_pencil(field: Field = Q) -> Pencil:
    """``E = N2``, ``F = I``: a pure eigenvalue at infinity of multiplicity two."""
    return Pencil(n2(field), Matrix.identity(field, 2))


def fixture(name: str, n: int | None = None, field: Field = Q):
    key = name.upper()
    if key == "EX31":
        return ex31(field)
    if key == "ID":
        return from_graph(Matrix.identity(field, 2))
    if key == "N2":
        return from_graph(n2(field))
    if key == "N2PENCIL":
        return Pencil(Matrix.identity(field, 2), n2(field))
    if key == "SHARP":
        return sharp(2 if n is None else n, field)
    if key == "SING":
        return sing(field)
    if key == "WONG":
        return wong_pencil(field)
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
