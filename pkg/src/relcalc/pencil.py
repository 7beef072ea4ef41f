"""Matrix pencils ``sE - F`` and their rank-one perturbations ``w(s u* + v*)``.

A pencil is handed to the relation layer as ``E^{-1}F = {(x | y) : F x = E y}``,
the kernel of the block matrix ``[F | -E]``.  Chains at ``lam`` become chains
of ``E^{-1}F - lam`` at zero and chains at infinity become chains of the dual
pencil ``sF - E`` at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from gmpy2 import mpq

from .chains import has_singular_chain
from .fieldkit import (
    DimensionMismatch,
    Field,
    FieldMismatch,
    GaussQ,
    Matrix,
    PrimeField,
    Rationals,
    Subspace,
    dot,
    kernel,
)
from .perturb import Verdict, perturbation_order
from .relation import (
    INFINITY,
    LinearRelation,
    at,
    is_infinity,
    jordan_degrees,
    kernel_dims,
    parts,
    power,
)

Poly = tuple  # coefficients, lowest degree first, no trailing zeros


# ---------------------------------------------------------------------------
# univariate polynomials over a field


def poly_trim(a) -> Poly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def poly_add(f: Field, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    z = f.zero
    return poly_trim(f.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n))


def poly_sub(f: Field, a: Poly, b: Poly) -> Poly:
    return poly_add(f, a, tuple(f.neg(c) for c in b))


def poly_mul(f: Field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [f.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    return poly_trim(out)


def poly_divmod(f: Field, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [f.zero] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = f.div(rem[k + len(b) - 1], lead)
        q[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = f.sub(rem[k + j], f.mul(c, y))
    return poly_trim(q), poly_trim(rem[: len(b) - 1])


def poly_eval(f: Field, a: Poly, x):
    acc = f.zero
    for c in reversed(a):
        acc = f.add(f.mul(acc, x), c)
    return acc


def poly_format(f: Field, a: Poly) -> list[str]:
    return [f.format(c) for c in a]


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Pencil:
    """The pencil ``sE - F``."""

    E: Matrix
    F: Matrix

    def __post_init__(self):
        if self.E.field != self.F.field:
            raise FieldMismatch("E and F over different fields")
        if self.E.nrows != self.E.ncols or self.E.shape != self.F.shape:
            raise DimensionMismatch(f"pencil needs square E, F of equal size, got {self.E.shape}, {self.F.shape}")

    @property
    def field(self) -> Field:
        return self.E.field

    @property
    def d(self) -> int:
        return self.E.nrows


@dataclass(frozen=True)
class RankOnePencil:
    """``w (s u* + v*)``; ``*`` conjugates over Qi and is a plain transpose otherwise."""

    u: tuple
    v: tuple
    w: tuple

    def __post_init__(self):
        if not (len(self.u) == len(self.v) == len(self.w)):
            raise DimensionMismatch("u, v, w must have equal length")
        if not any(self.w):
            raise ValueError("w must be nonzero")
        if not any(self.u) and not any(self.v):
            raise ValueError("u and v cannot both vanish")

    @classmethod
    def of(cls, field: Field, u, v, w) -> "RankOnePencil":
        return cls(*(tuple(field(x) for x in vec) for vec in (u, v, w)))

    @property
    def d(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class PencilProfile:
    det_poly: Poly
    regular: bool
    pencil_rank: int
    max_minor: Poly  # a nonzero minor of full pencil rank (the determinant when regular)


# ---------------------------------------------------------------------------
# regularity and rank


def _entry(f: Field, e, x) -> Poly:
    return poly_trim((f.neg(x), e))


def profile(p: Pencil) -> PencilProfile:
    """Fraction-free (Bareiss) elimination of ``sE - F`` over ``F[s]``."""
    f, d = p.field, p.d
    m = [[_entry(f, p.E[i, j], p.F[i, j]) for j in range(d)] for i in range(d)]
    prev: Poly = (f.one,)
    sign = 1
    r = 0
    for k in range(d):
        piv = next((i for i in range(r, d) if m[i][k]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pk = m[r][k]
        for i in range(r + 1, d):
            for j in range(k + 1, d):
                num = poly_sub(f, poly_mul(f, pk, m[i][j]), poly_mul(f, m[i][k], m[r][j]))
                q, rem = poly_divmod(f, num, prev)
                assert not rem, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = ()
        prev = pk
        r += 1
    regular = r == d
    det = prev if regular else ()
    if regular and sign < 0:
        det = tuple(f.neg(c) for c in det)
    return PencilProfile(det_poly=det, regular=regular, pencil_rank=r, max_minor=prev if r else ())


# ---------------------------------------------------------------------------
# relation bridge


def to_relation(p: Pencil) -> LinearRelation:
    """``{(x | y) : F x = E y}`` as the kernel of ``[F | -E]``."""
    f, d = p.field, p.d
    rows = tuple(tuple(p.F.rows[i]) + tuple(f.neg(x) for x in p.E.rows[i]) for i in range(d))
    return LinearRelation(d, kernel(Matrix(f, rows, 2 * d)))


def dual(p: Pencil) -> Pencil:
    """``sF - E``."""
    return Pencil(E=p.F, F=p.E)


def relation_at(p: Pencil, lam) -> LinearRelation:
    """Relation whose chains at zero are the pencil's chains at ``lam``."""
    if is_infinity(lam):
        return to_relation(dual(p))
    return at(to_relation(p), lam)


def jordan_dims_at(p: Pencil, lam, nmax: int) -> list[int]:
    """``dim L^{n+1}/L^n`` at ``lam`` for ``n = 0..nmax``."""
    return jordan_degrees(relation_at(p, lam), nmax)


def chain_span_dims(p: Pencil, lam, nmax: int) -> list[int]:
    """``dim L^n`` for ``n = 0..nmax`` straight from the chain equations.

    For each length ``l <= n`` the block system
    ``(F - lam E) x_0 = 0``, ``(F - lam E) x_j = E x_{j-1}``
    (at infinity ``E x_0 = 0``, ``E x_j = F x_{j-1}``) is solved and every
    component of every solution is collected.
    """
    f, d = p.field, p.d
    if is_infinity(lam):
        lead, step = p.E, p.F
    else:
        lam = f(lam)
        lead = p.F - p.E.scale(lam)
        step = p.E
    out = [0]
    acc = Subspace.zero(f, d)
    for length in range(1, nmax + 1):
        n = d * length
        rows = []
        for j in range(length):
            for i in range(d):
                row = [f.zero] * n
                row[j * d:(j + 1) * d] = lead.rows[i]
                if j:
                    row[(j - 1) * d:j * d] = [f.neg(x) for x in step.rows[i]]
                rows.append(tuple(row))
        sol = kernel(Matrix(f, tuple(rows), n))
        comps = [v[j * d:(j + 1) * d] for v in sol.basis for j in range(length)]
        acc = acc + Subspace.from_vectors(f, d, comps)
        out.append(acc.dim)
    return out


def _outer(f: Field, w: Sequence, u: Sequence) -> Matrix:
    """``w u*``."""
    return Matrix(f, tuple(tuple(f.mul(wi, f.conj(uj)) for uj in u) for wi in w), len(u))


def apply_perturbation(p: Pencil, q: RankOnePencil) -> Pencil:
    """``(E + w u*, F + w v*)``."""
    if q.d != p.d:
        raise DimensionMismatch(f"perturbation of size {q.d} on a pencil of size {p.d}")
    f = p.field
    return Pencil(E=p.E + _outer(f, q.w, q.u), F=p.F + _outer(f, q.w, q.v))


def satisfies_inclusion(p: Pencil, q: RankOnePencil) -> bool:
    """Whether ``v* x = u* y`` on every pair of ``E^{-1}F``."""
    f = p.field
    vc = tuple(f.conj(x) for x in q.v)
    uc = tuple(f.conj(x) for x in q.u)
    d = p.d
    return all(not f.sub(dot(f, vc, b[:d]), dot(f, uc, b[d:])) for b in to_relation(p).space.basis)


def wong(p: Pencil, nmax: int) -> list[Subspace]:
    """Second Wong sequence ``W_0 = 0``, ``W_{i+1} = {x : E x in F W_i}``."""
    f, d = p.field, p.d
    out = [Subspace.zero(f, d)]
    for _ in range(nmax):
        img = [p.F @ w for w in out[-1].basis]
        k = len(img)
        # unknowns (x, c): E x - sum c_j F w_j = 0
        rows = tuple(
            tuple(p.E.rows[i]) + tuple(f.neg(v[i]) for v in img) for i in range(d)
        )
        sol = kernel(Matrix(f, rows, d + k))
        out.append(Subspace.from_vectors(f, d, (s[:d] for s in sol.basis)))
    return out


# ---------------------------------------------------------------------------
# eigenvalue candidates


def _to_sympy(f: Field, c):
    import sympy

    if isinstance(c, GaussQ):
        return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
            int(c.im.numerator), int(c.im.denominator)
        )
    return sympy.Rational(int(c.numerator), int(c.denominator))


def poly_roots(f: Field, a: Poly) -> list:
    """Roots of ``a`` lying in ``f``; sorted deterministically, no multiplicities."""
    if len(a) <= 1:
        return []
    if isinstance(f, PrimeField):
        return [x for x in f.elements() if not poly_eval(f, a, x)]
    import sympy

    s = sympy.Symbol("s")
    expr = sum(_to_sympy(f, c) * s**i for i, c in enumerate(a))
    gaussian = not isinstance(f, Rationals)
    _, factors = sympy.factor_list(sympy.expand(expr), s, gaussian=gaussian)
    roots = []
    for fac, _mult in factors:
        poly = sympy.Poly(fac, s)
        if poly.degree() != 1:
            continue
        c1, c0 = poly.all_coeffs()
        r = sympy.expand(sympy.radsimp(-c0 / c1))
        re_part, im_part = sympy.re(r), sympy.im(r)
        if isinstance(f, Rationals):
            roots.append(_q(re_part))
        else:
            roots.append(GaussQ(_q(re_part), _q(im_part)))
    return sorted(set(roots), key=_order_key)


def _order_key(x):
    return (x.re, x.im) if isinstance(x, GaussQ) else (x, 0)


def _q(r):
    return mpq(int(r.p), int(r.q))


def candidate_lambdas(*pencils: Pencil) -> list:
    """``inf``, ``0``, ``1`` and every in-field root of each pencil's maximal minor.

    Where the pencil rank does not drop, that minor is nonzero, so every point
    of rank deficiency is among its roots.
    """
    f = pencils[0].field
    found = {f.zero, f.one}
    for p in pencils:
        found.update(poly_roots(f, profile(p).max_minor))
    return [INFINITY] + sorted(found, key=_order_key)


# ---------------------------------------------------------------------------
# bound checking


CASE_BOUNDS = {
    # (regular before, regular after) -> (lower(n), upper(n))
    (True, True): (lambda n: -1, lambda n: 1),
    (True, False): (lambda n: -1 - n, lambda n: 1),
    (False, True): (lambda n: -1, lambda n: n + 1),
    (False, False): (lambda n: -n - 1, lambda n: n + 1),
}

REFINED_BOUNDS = {
    (True, False): (lambda n: -n, lambda n: 1),
    (False, True): (lambda n: -1, lambda n: n),
    (False, False): (lambda n: -n, lambda n: n),
}

CASE_NAMES = {
    (True, True): "regular-regular",
    (True, False): "regular-singular",
    (False, True): "singular-regular",
    (False, False): "singular-singular",
}


def lambda_label(f: Field, lam) -> str:
    return INFINITY if is_infinity(lam) else f.format(f(lam))


@dataclass
class BoundReport:
    case: str
    regular_before: bool
    regular_after: bool
    inclusion: bool
    nmax: int
    lambdas: list[str]
    dims_before: dict[str, list[int]]
    dims_after: dict[str, list[int]]
    verdicts: list[Verdict] = dc_field(default_factory=list)

    @property
    def violations(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "regular": {"before": self.regular_before, "after": self.regular_after},
            "inclusion": self.inclusion,
            "nmax": self.nmax,
            "lambdas": self.lambdas,
            "dims_before": self.dims_before,
            "dims_after": self.dims_after,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def pencil_bound_report(p: Pencil, q: RankOnePencil, lambdas: Sequence | None = None, nmax: int | None = None) -> BoundReport:
    """Check every pencil perturbation bound at each ``lam`` and ``n <= nmax``.

    ``lambdas=None`` uses :func:`candidate_lambdas`.  Refined bounds under the
    kernel inclusion are only checked for ``n >= 1``.
    """
    f, d = p.field, p.d
    if nmax is None:
        nmax = 2 * d
    p2 = apply_perturbation(p, q)
    reg1, reg2 = profile(p).regular, profile(p2).regular
    if lambdas is None:
        lambdas = candidate_lambdas(p, p2)
    incl = satisfies_inclusion(p, q)
    key = (reg1, reg2)
    lo, hi = CASE_BOUNDS[key]
    rep = BoundReport(CASE_NAMES[key], reg1, reg2, incl, nmax, [], {}, {})

    add = rep.verdicts.append
    r1, r2 = to_relation(p), to_relation(p2)
    add(Verdict("rank_one.order", 0, perturbation_order(r1, r2), 0, 1))
    add(Verdict("rank_one.dual_order", 0, perturbation_order(to_relation(dual(p)), to_relation(dual(p2))), 0, 1))
    if incl:
        add(Verdict("inclusion.relation", 0, int(r1 <= r2), 1, 1))
    for lam in lambdas:
        lab = lambda_label(f, lam)
        rep.lambdas.append(lab)
        d1, d2 = jordan_dims_at(p, lam, nmax), jordan_dims_at(p2, lam, nmax)
        rep.dims_before[lab], rep.dims_after[lab] = d1, d2
        for n in range(nmax + 1):
            delta = d2[n] - d1[n]
            add(Verdict(f"pencil.{rep.case}", n, delta, lo(n), hi(n), lab))
            if incl and key in REFINED_BOUNDS and n >= 1:
                rlo, rhi = REFINED_BOUNDS[key]
                add(Verdict(f"pencil.refined.{rep.case}", n, delta, rlo(n), rhi(n), lab))
    w1, w2 = wong(p, nmax + 1), wong(p2, nmax + 1)
    for n in range(nmax + 1):
        delta = (w2[n + 1].dim - w2[n].dim) - (w1[n + 1].dim - w1[n].dim)
        add(Verdict(f"wong.{rep.case}", n, delta, lo(n), hi(n), INFINITY))
    return rep


def regular_is_chain_free(p: Pencil) -> bool:
    """A regular pencil's relation has no singular chains (vacuous for singular pencils)."""
    return not profile(p).regular or not has_singular_chain(to_relation(p))


def wong_matches_kernels(p: Pencil, nmax: int) -> bool:
    """``W_n = N((F^{-1}E)^n)`` for ``n = 0..nmax``."""
    rel = to_relation(dual(p))
    return all(w == parts(power(rel, n)).ker for n, w in enumerate(wong(p, nmax)))


def bridge_matches(p: Pencil, lam, nmax: int) -> bool:
    """Chain-equation spans agree with kernels of powers of the shifted relation."""
    return chain_span_dims(p, lam, nmax) == kernel_dims(relation_at(p, lam), nmax)
