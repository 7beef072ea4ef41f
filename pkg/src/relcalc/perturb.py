"""Perturbation order, the singular-chain defect ``s_n`` and bound checking.

For relations ``A, B`` with ``C = A & B`` the defect is

    s_n(A, B) = max dim(L & mul A^n)  over subspaces  L <= N(C) & R(C^n)
                                      with  L & mul C^n = {0}.

:func:`s_n` evaluates it in closed form as
``dim(K & mul A^n) - dim(K & mul C^n)`` with ``K = N(C) & R(C^n)``: every
admissible ``L`` meets ``mul A^n`` inside ``K & mul A^n`` in a space that
misses ``K & mul C^n``, and any complement of ``K & mul C^n`` inside
``K & mul A^n`` is admissible.  :func:`s_n_oracle` enumerates all ``L`` over a
small prime field instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .chains import has_singular_chain
from .fieldkit import PrimeField, Subspace, lincomb
from .relation import LinearRelation, _compatible, kernel_dims, parts, power


class OracleInfeasible(ValueError):
    """Brute-force enumeration requested outside its feasibility bounds."""


def perturbation_order(a: LinearRelation, b: LinearRelation) -> int:
    """``max(dim A/(A&B), dim B/(A&B))``."""
    _compatible(a, b)
    c = (a & b).dim
    return max(a.dim - c, b.dim - c)


def _core(c: LinearRelation, n: int) -> Subspace:
    """``N(C) & R(C^n)``."""
    return parts(c).ker & parts(power(c, n)).ran


def s_n(a: LinearRelation, b: LinearRelation, n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0
    c = a & b
    k = _core(c, n)
    return (k & parts(power(a, n)).mul).dim - (k & parts(power(c, n)).mul).dim


def s_bracket(a: LinearRelation, b: LinearRelation, n: int) -> int:
    return max(s_n(a, b, n), s_n(b, a, n))


def _subspaces(field: PrimeField, basis: list[tuple], ambient: int):
    """Yield a basis of every subspace of ``span(basis)`` (``basis`` independent)."""
    r = len(basis)
    elems = list(field.elements())
    for k in range(r + 1):
        for pivots in itertools.combinations(range(r), k):
            slots = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, r) if j not in pivots]
            for values in itertools.product(elems, repeat=len(slots)):
                rows = [[0] * r for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), v in zip(slots, values):
                    rows[i][j] = v
                yield [lincomb(field, row, basis, ambient) for row in rows]


def _span_elements(field: PrimeField, vectors: list[tuple], ambient: int):
    for coeffs in itertools.product(list(field.elements()), repeat=len(vectors)):
        yield lincomb(field, coeffs, vectors, ambient)


def s_n_oracle(a: LinearRelation, b: LinearRelation, n: int, *, max_dim: int = 4, max_p: int = 3) -> int:
    """Brute-force ``s_n``: enumerate every admissible ``L`` and every vector in it."""
    f = a.field
    if not isinstance(f, PrimeField) or f.p > max_p:
        raise OracleInfeasible(f"oracle needs GF(p) with p <= {max_p}, got {f!r}")
    c = a & b
    k = _core(c, n)
    if k.dim > max_dim:
        raise OracleInfeasible(f"dim N(C) & R(C^n) = {k.dim} exceeds {max_dim}")
    mul_a = parts(power(a, n)).mul
    mul_c = parts(power(c, n)).mul
    best = 0
    for lbasis in _subspaces(f, list(k.basis), a.d):
        in_a = in_c = 0
        for v in _span_elements(f, lbasis, a.d):
            if v in mul_c:
                in_c += 1
            if v in mul_a:
                in_a += 1
        if in_c > 1:
            continue
        dim = 0
        while f.p**dim < in_a:
            dim += 1
        best = max(best, dim)
    return best


def decompose_path(a: LinearRelation, b: LinearRelation) -> list[LinearRelation]:
    """Relations ``C_0 = a, ..., C_p = b`` with consecutive steps of order <= 1.

    ``a = (a&b) + span{f_1..f_p}`` and ``b = (a&b) + span{g_1..g_p}`` with the
    complements taken greedily from the canonical bases (missing ones are 0);
    ``C_k`` keeps ``f_1..f_{p-k}`` and ``g_{p-k+1}..g_p``.
    """
    _compatible(a, b)
    c = a & b
    fs = c.space.complement_in(a.space)
    gs = c.space.complement_in(b.space)
    p = max(len(fs), len(gs))
    if p == 0:
        return [a]
    zero = tuple(a.field.zero for _ in range(2 * a.d))
    fs = fs + [zero] * (p - len(fs))
    gs = gs + [zero] * (p - len(gs))
    path = [a]
    for k in range(1, p):
        extra = fs[: p - k] + gs[p - k:]
        path.append(LinearRelation(a.d, Subspace.from_vectors(a.field, 2 * a.d, list(c.space.basis) + extra)))
    path.append(b)
    return path


# ---------------------------------------------------------------------------
# bound verification


@dataclass(frozen=True)
class Verdict:
    """``lower <= value <= upper`` for one bound at one level ``n``."""

    check: str
    n: int
    value: int
    lower: int
    upper: int
    lam: str | None = None  # spectral point, for pencil checks

    @property
    def ok(self) -> bool:
        return self.lower <= self.value <= self.upper

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "n": self.n,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "verdict": "pass" if self.ok else "violate",
        }
        if self.lam is not None:
            out["lambda"] = self.lam
        return out


def _abs_check(check: str, n: int, value: int, bound: int) -> Verdict:
    return Verdict(check, n, value, -bound, bound)


@dataclass
class PerturbReport:
    order: int
    nmax: int
    nested: str | None  # "a<b", "b<a", "equal" or None
    D_a: list[int]
    D_b: list[int]
    s_n_ab: list[int]
    s_n_ba: list[int]
    s_n_bracket: list[int]
    singular_a: bool
    singular_b: bool
    verdicts: list[Verdict] = dc_field(default_factory=list)

    @property
    def violations(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "nmax": self.nmax,
            "nested": self.nested,
            "D_a": self.D_a,
            "D_b": self.D_b,
            "s_n_ab": self.s_n_ab,
            "s_n_ba": self.s_n_ba,
            "s_n_bracket": self.s_n_bracket,
            "singular_chains": {"a": self.singular_a, "b": self.singular_b},
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def core_dims(a: LinearRelation, nmax: int) -> list[int]:
    """``dim(N(A) & R(A^n))`` for ``n = 0..nmax``."""
    ker = parts(a).ker
    return [(ker & parts(power(a, n)).ran).dim for n in range(nmax + 1)]


def check_bounds(a: LinearRelation, b: LinearRelation, nmax: int | None = None) -> PerturbReport:
    """Evaluate every applicable perturbation bound for ``n = 0..nmax``.

    Level quantities are ``D_n(b) - D_n(a)``; kernel quantities are
    ``dim N(b^n) - dim N(a^n)`` for ``n >= 1``.  The nested kernel bound uses
    the per-level interval ``[-s_k, 1]`` summed over ``k < n`` (which gives
    ``max(n, n(n-1)/2)`` per one-dimensional step), not ``sum s_k`` alone: the
    latter already fails for ``{0} < span{(e1 | 0)}`` at ``n = 1``.
    """
    _compatible(a, b)
    if nmax is None:
        nmax = 2 * a.d
    p = perturbation_order(a, b)
    ka, kb = kernel_dims(a, nmax + 1), kernel_dims(b, nmax + 1)
    da = [ka[n + 1] - ka[n] for n in range(nmax + 1)]
    db = [kb[n + 1] - kb[n] for n in range(nmax + 1)]
    s_ab = [s_n(a, b, n) for n in range(nmax + 1)]
    s_ba = [s_n(b, a, n) for n in range(nmax + 1)]
    s_br = [max(x, y) for x, y in zip(s_ab, s_ba)]
    a_le_b, b_le_a = a <= b, b <= a
    nested = "equal" if a_le_b and b_le_a else "a<b" if a_le_b else "b<a" if b_le_a else None
    sing_a, sing_b = has_singular_chain(a), has_singular_chain(b)
    rep = PerturbReport(p, nmax, nested, da, db, s_ab, s_ba, s_br, sing_a, sing_b)
    out = rep.verdicts
    delta = [y - x for x, y in zip(da, db)]
    kdelta = [y - x for x, y in zip(ka, kb)]
    no_sing = not sing_a and not sing_b

    if p == 0:
        for n in range(nmax + 1):
            out.append(Verdict("identical.level", n, delta[n], 0, 0))
        return rep

    if nested in ("a<b", "b<a"):
        # orient as small <= large; s_n(large, small) governs the lower side
        sign = 1 if nested == "a<b" else -1
        s_ls = s_ba if nested == "a<b" else s_ab
    if p == 1:
        core_a, core_b = core_dims(a, nmax), core_dims(b, nmax)
        lo_sum = hi_sum = 0
        nested_lo = 0
        for n in range(nmax + 1):
            out.append(Verdict("s_bracket_le_n", n, s_br[n], 0, n))
            out.append(Verdict("one_dim.level", n, delta[n], -1 - s_ba[n], 1 + s_ab[n]))
            out.append(_abs_check("one_dim.level_abs", n, delta[n], min(1 + s_br[n], n + 1)))
            out.append(_abs_check("one_dim.level_sharp", n, delta[n], n + 1))
            if n >= 1:
                out.append(Verdict("one_dim.kernel", n, kdelta[n], -lo_sum, hi_sum))
                out.append(_abs_check("one_dim.kernel_abs", n, kdelta[n], n * (n + 1) // 2))
            lo_sum += 1 + s_ba[n]
            hi_sum += 1 + s_ab[n]
            if nested in ("a<b", "b<a"):
                out.append(Verdict("nested.level", n, sign * delta[n], -s_ls[n], 1))
                if n >= 1:
                    out.append(_abs_check("nested.level_abs", n, delta[n], min(max(1, s_ls[n]), n)))
                    out.append(Verdict("nested.kernel", n, sign * kdelta[n], -nested_lo, n))
                nested_lo += s_ls[n]
            if no_sing:
                out.append(_abs_check("no_singular.level", n, delta[n], 1))
                if n >= 1:
                    out.append(_abs_check("no_singular.kernel", n, kdelta[n], n))
                out.append(_abs_check("no_singular.core", n, core_b[n] - core_a[n], 1))
    for n in range(nmax + 1):
        out.append(_abs_check("pdim.level", n, delta[n], (n + 1) * p))
        if n >= 1:
            out.append(_abs_check("pdim.kernel", n, kdelta[n], n * (n + 1) // 2 * p))
        if nested in ("a<b", "b<a") and n >= 1:
            out.append(_abs_check("pdim.nested.level", n, delta[n], n * p))
            out.append(_abs_check("pdim.nested.kernel", n, kdelta[n], max(n, n * (n - 1) // 2) * p))
        if no_sing:
            out.append(_abs_check("pdim.no_singular.level", n, delta[n], p))
            if n >= 1:
                out.append(_abs_check("pdim.no_singular.kernel", n, kdelta[n], n * p))
    if no_sing:
        core_a, core_b = core_dims(a, nmax), core_dims(b, nmax)
        for n in range(nmax + 1):
            out.append(_abs_check("pdim.no_singular.core", n, core_b[n] - core_a[n], p))
    return rep
