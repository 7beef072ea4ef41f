"""Random instance generation and verification campaigns.

Every trial draws from its own counter-based stream: numpy's ``Philox``
(Philox-4x64-10 with the published multiplier and Weyl constants) keyed with
``seed XOR trial``.  A trial therefore never depends on how many numbers an
earlier trial consumed, and reports are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np
from gmpy2 import mpq

from .chains import chainspace_quotient_dim
from .fieldkit import Field, GaussQ, GaussianRationals, Matrix, PrimeField, Subspace, dot, field_from_tag, lincomb
from .fixtures import ex31, n2, sharp, sing, wong_pencil
from .io import dump_pencil, dump_rank_one, dump_relation
from .pencil import (
    Pencil,
    RankOnePencil,
    apply_perturbation,
    bridge_matches,
    candidate_lambdas,
    pencil_bound_report,
    profile,
    regular_is_chain_free,
    to_relation,
    wong,
    wong_matches_kernels,
)
from .perturb import OracleInfeasible, Verdict, _subspaces, check_bounds, decompose_path, perturbation_order, s_n, s_n_oracle
from .relation import LinearRelation, from_graph, jordan_degrees, kernel_dims, parts, power

SCENARIOS = ("relation-1dim", "relation-pdim", "pencil-rankone", "s_n-oracle", "fixtures")
MASK64 = (1 << 64) - 1


class ConfigError(ValueError):
    """Campaign configuration outside the supported range."""


@dataclass(frozen=True)
class CampaignConfig:
    scenario: str
    field: str = "Q"
    d_min: int = 2
    d_max: int = 4
    trials: int = 100
    seed: int = 0
    nmax: int | None = None  # default 2d
    p: int = 1

    def validate(self) -> "CampaignConfig":
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 1 <= self.d_min <= self.d_max:
            raise ConfigError(f"bad dimension range {self.d_min}..{self.d_max}")
        f = self.field_obj()
        if isinstance(f, PrimeField) and self.scenario == "s_n-oracle":
            if self.d_max > 6:
                raise ConfigError("oracle scenarios need d <= 6")
            if f.p > 3:
                raise ConfigError("the s_n oracle needs p <= 3")
        elif self.d_max > 8:
            raise ConfigError("d must be <= 8")
        if self.scenario == "s_n-oracle" and not isinstance(f, PrimeField):
            raise ConfigError("the s_n oracle runs over GF(2) or GF(3) only")
        if self.scenario == "relation-pdim" and self.p < 1:
            raise ConfigError("relation-pdim needs p >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must fit in 64 bits")
        return self

    def field_obj(self) -> Field:
        tag = self.field.strip()
        if tag.upper().startswith("GF"):
            return field_from_tag("GF", int(tag[2:].strip("()")))
        return field_from_tag(tag)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed ^ trial) & MASK64))


# ---------------------------------------------------------------------------
# random scalars, vectors and matrices


def rand_scalar(rng, f: Field, nonzero: bool = False):
    if isinstance(f, PrimeField):
        return int(rng.integers(1 if nonzero else 0, f.p))
    while True:
        x = mpq(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
        if isinstance(f, GaussianRationals):
            im = mpq(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) if rng.random() < 0.5 else mpq(0)
            x = GaussQ(x, im)
        if x or not nonzero:
            return x


def rand_vector(rng, f: Field, n: int, density: float = 0.5) -> tuple:
    while True:
        v = tuple(rand_scalar(rng, f, nonzero=True) if rng.random() < density else f.zero for _ in range(n))
        if any(v):
            return v


def rand_matrix(rng, f: Field, n: int, m: int, density: float = 0.5) -> Matrix:
    rows = tuple(
        tuple(rand_scalar(rng, f, nonzero=True) if rng.random() < density else f.zero for _ in range(m))
        for _ in range(n)
    )
    return Matrix(f, rows, m)


def rand_invertible(rng, f: Field, n: int, density: float = 0.3) -> Matrix:
    """Permuted product of unit lower and unit upper triangular sparse matrices."""
    lo = [[f.one if i == j else (rand_scalar(rng, f) if j < i and rng.random() < density else f.zero) for j in range(n)] for i in range(n)]
    up = [[f.one if i == j else (rand_scalar(rng, f) if j > i and rng.random() < density else f.zero) for j in range(n)] for i in range(n)]
    perm = rng.permutation(n)
    lo = [lo[int(k)] for k in perm]
    return Matrix(f, tuple(map(tuple, lo)), n) @ Matrix(f, tuple(map(tuple, up)), n)


def _unit(f: Field, n: int, i: int) -> tuple:
    return tuple(f.one if k == i else f.zero for k in range(n))


def _composition(rng, d: int) -> list[int]:
    sizes = []
    left = d
    while left:
        k = int(rng.integers(1, left + 1))
        sizes.append(k)
        left -= k
    return sizes


BLOCK_KINDS = ("jordan", "singular", "multi", "eigen", "free", "void")


def structured_pairs(rng, f: Field, d: int) -> list[tuple]:
    """Pairs ``(x | y)`` built from chain blocks on the standard basis.

    Blocks are Jordan chains at zero, singular chains, multivalued chains, Jordan
    chains at a nonzero eigenvalue, unconstrained pairs and unused coordinates.
    """
    perm = [int(k) for k in rng.permutation(d)]
    zero = tuple(f.zero for _ in range(d))
    pairs = []
    start = 0
    for size in _composition(rng, d):
        idx = perm[start:start + size]
        start += size
        e = [_unit(f, d, i) for i in idx]
        kind = BLOCK_KINDS[int(rng.integers(len(BLOCK_KINDS)))]
        if kind == "jordan":
            pairs.append((e[0], zero))
            pairs += [(e[j], e[j - 1]) for j in range(1, size)]
        elif kind == "singular":
            pairs.append((zero, e[-1]))
            pairs += [(e[j], e[j - 1]) for j in range(1, size)]
            pairs.append((e[0], zero))
        elif kind == "multi":
            pairs.append((zero, e[0]))
            pairs += [(e[j - 1], e[j]) for j in range(1, size)]
        elif kind == "eigen":
            lam = rand_scalar(rng, f, nonzero=True)
            pairs.append((e[0], tuple(f.mul(lam, x) for x in e[0])))
            pairs += [(e[j], tuple(f.add(f.mul(lam, a), b) for a, b in zip(e[j], e[j - 1]))) for j in range(1, size)]
        elif kind == "free":
            pairs += [(e[j], rand_vector(rng, f, d)) for j in range(size)]
    return [x + y for x, y in pairs]


def _sparse_pair(rng, f: Field, d: int) -> tuple:
    """A pair between (signed) standard basis vectors, or zero on one side."""
    zero = tuple(f.zero for _ in range(d))
    x = _unit(f, d, int(rng.integers(d))) if rng.random() < 0.8 else zero
    y = _unit(f, d, int(rng.integers(d))) if rng.random() < 0.8 else zero
    if rng.random() < 0.3:
        y = tuple(f.add(a, b) for a, b in zip(y, _unit(f, d, int(rng.integers(d)))))
    v = x + y
    return v if any(v) else _unit(f, 2 * d, int(rng.integers(2 * d)))


def _base_vectors(rng, f: Field, d: int) -> list[tuple]:
    u = rng.random()
    if u < 0.5:
        return structured_pairs(rng, f, d)
    if u < 0.85:
        return [_sparse_pair(rng, f, d) for _ in range(int(rng.integers(d, 2 * d + 1)))]
    return [rand_vector(rng, f, 2 * d, 0.4) for _ in range(int(rng.integers(0, 2 * d + 1)))]


def _in_basis(f: Field, s: Matrix, vectors: list[tuple], d: int) -> list[tuple]:
    return [tuple(s @ v[:d]) + tuple(s @ v[d:]) for v in vectors]


def _d_for(cfg: CampaignConfig, rng) -> int:
    return int(rng.integers(cfg.d_min, cfg.d_max + 1))


def gen_pair(cfg: CampaignConfig, trial: int, p: int | None = None) -> tuple[LinearRelation, LinearRelation]:
    """Relations ``A = C + span(fa)``, ``B = C + span(gb)`` with at most ``p`` extra vectors each.

    ``C`` comes from a chain-structured (or sparse random) relation with up to
    ``p`` of its pairs removed; the extra vectors are drawn from those removed
    pairs, a second structured relation and sparse pairs, all in the same
    random basis so they interact with the chains of ``C``.
    """
    rng = trial_rng(cfg.seed, trial)
    f = cfg.field_obj()
    d = _d_for(cfg, rng)
    p = cfg.p if p is None else p
    base = _base_vectors(rng, f, d)
    order = [int(k) for k in rng.permutation(len(base))]
    base = [base[k] for k in order]
    r = int(rng.integers(0, min(p, len(base)) + 1))
    removed, core = base[:r], base[r:]
    pool = removed + _base_vectors(rng, f, d) + [_sparse_pair(rng, f, d) for _ in range(2 * p + 2)]

    def count():
        return p if rng.random() < 0.5 else int(rng.integers(0, p + 1))

    def pick(k):
        return [pool[int(i)] for i in rng.integers(0, len(pool), size=k)]

    fa, gb = pick(count()), pick(count())
    s = rand_invertible(rng, f, d)
    a = LinearRelation(d, Subspace.from_vectors(f, 2 * d, _in_basis(f, s, core + fa, d)))
    b = LinearRelation(d, Subspace.from_vectors(f, 2 * d, _in_basis(f, s, core + gb, d)))
    return a, b


# ---------------------------------------------------------------------------
# pencils


PENCIL_KINDS = ("regular-structured", "regular-random", "singular-zero-row", "singular-dup-col")
Q_KINDS = ("random", "random", "only-E", "only-F", "inclusion", "inclusion-singular")


def _block_diag(f: Field, blocks: list[Matrix]) -> Matrix:
    n = sum(b.nrows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append(tuple([f.zero] * off + list(r) + [f.zero] * (n - off - b.ncols)))
        off += b.ncols
    return Matrix(f, tuple(rows), n)


def _jordan(f: Field, n: int, lam) -> Matrix:
    return Matrix(f, tuple(tuple(lam if i == j else (f.one if j == i + 1 else f.zero) for j in range(n)) for i in range(n)), n)


def _structured_core(rng, f: Field, d: int) -> tuple[Matrix, Matrix]:
    """``E = diag(I, N)``, ``F = diag(J, I)`` with Jordan blocks ``J`` and nilpotent ``N``."""
    if d == 0:
        return Matrix(f, (), 0), Matrix(f, (), 0)
    eig = [f.zero, f.one, f(-1), f(2)]
    e_blocks, f_blocks = [], []
    for size in _composition(rng, d):
        if rng.random() < 0.3:
            e_blocks.append(_jordan(f, size, f.zero))
            f_blocks.append(Matrix.identity(f, size))
        else:
            lam = eig[int(rng.integers(len(eig)))]
            e_blocks.append(Matrix.identity(f, size))
            f_blocks.append(_jordan(f, size, lam))
    return _block_diag(f, e_blocks), _block_diag(f, f_blocks)


def _transform(rng, f: Field, e: Matrix, fm: Matrix) -> tuple[Matrix, Matrix]:
    n = e.nrows
    left, right = rand_invertible(rng, f, n), rand_invertible(rng, f, n)
    return left @ e @ right, left @ fm @ right


def _draw_pencil(rng, f: Field, d: int, kind: str) -> Pencil:
    if kind == "regular-random":
        while True:
            p = Pencil(rand_matrix(rng, f, d, d, 0.5), rand_matrix(rng, f, d, d, 0.5))
            if profile(p).regular:
                return p
    if kind == "regular-structured":
        return Pencil(*_transform(rng, f, *_structured_core(rng, f, d)))
    e, fm = _structured_core(rng, f, d - 1)
    er = [list(r) for r in e.rows]
    fr = [list(r) for r in fm.rows]
    if kind == "singular-zero-row":
        # shared zero row, arbitrary last column
        for rows in (er, fr):
            for r in rows:
                r.append(rand_scalar(rng, f) if rng.random() < 0.5 else f.zero)
            rows.append([f.zero] * d)
    else:
        # last column repeats column j in both matrices
        for rows in (er, fr):
            rows.append([rand_scalar(rng, f) if rng.random() < 0.5 else f.zero for _ in range(d - 1)])
        j = int(rng.integers(0, d - 1)) if d > 1 else None
        for rows in (er, fr):
            for r in rows:
                r.append(r[j] if j is not None else f.zero)
    e = Matrix(f, tuple(map(tuple, er)), d)
    fm = Matrix(f, tuple(map(tuple, fr)), d)
    return Pencil(*_transform(rng, f, e, fm))


def _left_functional(f: Field, c: tuple, m: Matrix) -> tuple:
    """``conj(m^T c)``, i.e. the vector ``u`` with ``u* = c^T m``."""
    return tuple(f.conj(x) for x in m.transpose() @ c)


def inclusion_perturbation(rng, p: Pencil, singular: bool) -> RankOnePencil | None:
    """``w (s u* + v*)`` with ``u* = c^T E`` and ``v* = c^T F``.

    Then ``v* x = u* y`` on every pair of the pencil's relation.  With
    ``c^T w = -1`` the perturbed pencil is ``(I + w c^T)(sE - F)`` with a
    singular left factor.
    """
    f, d = p.field, p.d
    for _ in range(20):
        c = rand_vector(rng, f, d)
        w = rand_vector(rng, f, d)
        if singular:
            cw = dot(f, c, w)
            if not cw:
                continue
            w = tuple(f.div(f.neg(x), cw) for x in w)
        u, v = _left_functional(f, c, p.E), _left_functional(f, c, p.F)
        if any(u) or any(v):
            return RankOnePencil(u, v, w)
    return None


def _draw_rank_one(rng, p: Pencil, kind: str) -> RankOnePencil:
    f, d = p.field, p.d
    if kind.startswith("inclusion"):
        q = inclusion_perturbation(rng, p, singular=kind.endswith("singular"))
        if q is not None:
            return q
    zero = tuple(f.zero for _ in range(d))
    w = rand_vector(rng, f, d)
    if kind == "only-E":
        return RankOnePencil(rand_vector(rng, f, d), zero, w)
    if kind == "only-F":
        return RankOnePencil(zero, rand_vector(rng, f, d), w)
    return RankOnePencil(rand_vector(rng, f, d), rand_vector(rng, f, d), w)


def gen_pencil(cfg: CampaignConfig, trial: int, kind: str | None = None, q_kind: str | None = None) -> tuple[Pencil, RankOnePencil]:
    rng = trial_rng(cfg.seed, trial)
    f = cfg.field_obj()
    d = _d_for(cfg, rng)
    if kind is None:
        kind = PENCIL_KINDS[int(rng.integers(len(PENCIL_KINDS)))]
    if q_kind is None:
        q_kind = Q_KINDS[int(rng.integers(len(Q_KINDS)))]
    p = _draw_pencil(rng, f, d, kind)
    return p, _draw_rank_one(rng, p, q_kind)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    config: dict
    trials: list[dict]
    violations: list[dict]
    histograms: dict
    wall_time: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, wall_time: bool = True) -> dict:
        out = {
            "config": self.config,
            "trials": self.trials,
            "violations": self.violations,
            "histograms": self.histograms,
            "ok": self.ok,
        }
        if wall_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


class _Collector:
    def __init__(self):
        self.trials: list[dict] = []
        self.violations: list[dict] = []
        self.hist: dict[str, dict] = {}

    def record(self, trial: int, verdicts, summary: dict, instance=None) -> None:
        bad = 0
        for v in verdicts:
            h = self.hist.setdefault(v.check, {"count": 0, "values": Counter(), "tight": 0})
            h["count"] += 1
            h["values"][v.value] += 1
            if v.value in (v.lower, v.upper) and v.lower != v.upper:
                h["tight"] += 1
            if not v.ok:
                bad += 1
                entry = {"trial": trial, **v.to_json()}
                if instance is not None:
                    entry["instance"] = instance() if callable(instance) else instance
                self.violations.append(entry)
        self.trials.append({"trial": trial, "checks": len(verdicts), "violations": bad, **summary})

    def histograms(self) -> dict:
        out = {}
        for name in sorted(self.hist):
            h = self.hist[name]
            vals = h["values"]
            out[name] = {
                "count": h["count"],
                "tight": h["tight"],
                "min": min(vals),
                "max": max(vals),
                "values": {str(k): vals[k] for k in sorted(vals)},
            }
        return out


# ---------------------------------------------------------------------------
# scenarios


def _relation_trial(cfg: CampaignConfig, trial: int, col: _Collector, p: int) -> None:
    a, b = gen_pair(cfg, trial, p)
    nmax = 2 * a.d if cfg.nmax is None else cfg.nmax
    rep = check_bounds(a, b, nmax)
    verdicts = list(rep.verdicts)
    c = a & b
    for x in (a, b):
        if x.dim - c.dim == 1:
            for m in range(1, 4):
                verdicts.append(Verdict("chainspace_quotient", m, chainspace_quotient_dim(x, c, m), 0, m))
    if p > 1:
        path = decompose_path(a, b)
        ok_ends = path[0] == a and path[-1] == b
        verdicts.append(Verdict("path.endpoints", 0, int(ok_ends), 1, 1))
        verdicts.append(Verdict("path.length", 0, len(path), 1, rep.order + 1))
        for k in range(len(path) - 1):
            verdicts.append(Verdict("path.step_order", k, perturbation_order(path[k], path[k + 1]), 0, 1))
            if rep.nested == "a<b":
                verdicts.append(Verdict("path.nested", k, int(path[k] <= path[k + 1]), 1, 1))
    summary = {
        "d": a.d,
        "order": rep.order,
        "nested": rep.nested,
        "max_s_n": max(rep.s_n_bracket),
        "max_abs_delta": max(abs(x - y) for x, y in zip(rep.D_a, rep.D_b)),
    }
    col.record(trial, verdicts, summary, lambda: {"a": dump_relation(a), "b": dump_relation(b)})


def _pencil_trial(cfg: CampaignConfig, trial: int, col: _Collector) -> None:
    p, q = gen_pencil(cfg, trial)
    nmax = 2 * p.d if cfg.nmax is None else cfg.nmax
    p2 = apply_perturbation(p, q)
    lambdas = candidate_lambdas(p, p2)
    rep = pencil_bound_report(p, q, lambdas, nmax)
    verdicts = list(rep.verdicts)
    for pen in (p, p2):
        verdicts.append(Verdict("regular_chain_free", 0, int(regular_is_chain_free(pen)), 1, 1))
        verdicts.append(Verdict("wong_identity", 0, int(wong_matches_kernels(pen, p.d + 1)), 1, 1))
    for lam in lambdas:
        verdicts.append(Verdict("bridge_identity", 0, int(bridge_matches(p, lam, p.d)), 1, 1))
    summary = {"d": p.d, "case": rep.case, "inclusion": rep.inclusion, "lambdas": rep.lambdas}
    f = p.field
    col.record(trial, verdicts, summary, lambda: {"pencil": dump_pencil(p), "rank_one": dump_rank_one(f, q)})


def all_relations(f: PrimeField, d: int):
    """Every linear relation in ``F^d`` (all subspaces of ``F^{2d}``)."""
    std = [_unit(f, 2 * d, i) for i in range(2 * d)]
    for basis in _subspaces(f, std, 2 * d):
        yield LinearRelation(d, Subspace.from_vectors(f, 2 * d, basis))


EXHAUSTIVE_LIMIT = {2: 2, 3: 1}  # largest d enumerated exhaustively per p


def _oracle_pairs(cfg: CampaignConfig):
    f = cfg.field_obj()
    limit = EXHAUSTIVE_LIMIT.get(f.p, 0)
    index = 0
    for d in range(cfg.d_min, min(limit, cfg.d_max) + 1):
        rels = list(all_relations(f, d))
        for a, b in itertools.product(rels, rels):
            yield index, "exhaustive", a, b
            index += 1
    if cfg.d_max > limit:
        sampled = CampaignConfig(cfg.scenario, cfg.field, max(limit + 1, cfg.d_min), cfg.d_max, cfg.trials, cfg.seed, cfg.nmax, cfg.p)
        for t in range(cfg.trials):
            if t % 2:
                a, b = targeted_pair(sampled, t)
                yield index, "targeted", a, b
            else:
                rng = trial_rng(cfg.seed, t)
                a, b = gen_pair(sampled, t, int(rng.integers(0, 3)))
                yield index, "sampled", a, b
            index += 1


def targeted_pair(cfg: CampaignConfig, trial: int) -> tuple[LinearRelation, LinearRelation]:
    """A pair likely to have ``s_n > 0``: ``A = C + span{(0 | v_i)}`` with ``v_i`` in ``N(C) & R(C^n)``."""
    c, _ = gen_pair(cfg, trial, 0)
    rng = trial_rng(cfg.seed ^ 0x5EED, trial)
    f, d = c.field, c.d
    n = int(rng.integers(1, 4))
    k = parts(c).ker & parts(power(c, n)).ran
    extra_b = [rand_vector(rng, f, 2 * d, 0.5)]
    if not k.dim:
        extra_a = [rand_vector(rng, f, 2 * d, 0.5)]
    else:
        zero = tuple(f.zero for _ in range(d))
        extra_a = [zero + lincomb(f, rand_vector(rng, f, k.dim, 0.7), k.basis, d) for _ in range(min(2, k.dim))]
    a = LinearRelation(d, c.space + Subspace.from_vectors(f, 2 * d, extra_a))
    b = LinearRelation(d, c.space + Subspace.from_vectors(f, 2 * d, extra_b))
    return a, b


def _oracle_campaign(cfg: CampaignConfig, col: _Collector) -> None:
    nmax = 3 if cfg.nmax is None else cfg.nmax
    counts = Counter()
    for index, family, a, b in _oracle_pairs(cfg):
        counts[family] += 1
        verdicts = []
        top = 0
        for n in range(nmax + 1):
            for x, y, tag in ((a, b, "ab"), (b, a, "ba")):
                try:
                    fast, slow = s_n(x, y, n), s_n_oracle(x, y, n)
                except OracleInfeasible as exc:
                    raise ConfigError(str(exc)) from exc
                top = max(top, slow)
                verdicts.append(Verdict(f"s_n_oracle.{tag}", n, fast - slow, 0, 0))
        summary = {"d": a.d, "family": family, "max_s_n": top}
        col.record(index, verdicts, summary, lambda: {"a": dump_relation(a), "b": dump_relation(b)})
    col.family_counts = dict(sorted(counts.items()))


def _dims_check(name: str, got: list[int], want: list[int]) -> Verdict:
    return Verdict(name, 0, int(got == want), 1, 1)


def fixture_verdicts(max_sharp: int = 5) -> list[tuple[str, Verdict]]:
    """Pinned dimension tables of the named fixtures."""
    out = []
    a = ex31()
    pa = parts(a)
    out.append(("EX31", Verdict("EX31.kernel_dim", 0, pa.ker.dim, 2, 2)))
    out.append(("EX31", Verdict("EX31.mul_dim", 0, pa.mul.dim, 1, 1)))
    out.append(("EX31", _dims_check("EX31.jordan_degrees", jordan_degrees(a, 4), [2, 0, 0, 0, 0])))
    g = from_graph(n2())
    out.append(("N2", _dims_check("N2.jordan_degrees", jordan_degrees(g, 4), [1, 1, 0, 0, 0])))
    rep = check_bounds(g, a, 4)
    out.append(("EX31", Verdict("EX31.order", 0, rep.order, 1, 1)))
    out.append(("EX31", Verdict("EX31.s_1", 1, s_n(a, g, 1), 1, 1)))
    out.extend(("EX31", v) for v in rep.verdicts)
    for n in range(2, max_sharp + 1):
        sa, sb = sharp(n)
        da, db = jordan_degrees(sa, n + 1), jordan_degrees(sb, n + 1)
        out.append((f"SHARP({n})", _dims_check("SHARP.A.jordan_degrees", da, [n + 1] * (n + 1) + [0])))
        out.append((f"SHARP({n})", _dims_check("SHARP.B.jordan_degrees", db, [n + 2] * n + [0, 0])))
        out.append((f"SHARP({n})", Verdict("SHARP.difference", n, da[n] - db[n], n + 1, n + 1)))
        out.append((f"SHARP({n})", Verdict("SHARP.order", n, perturbation_order(sa, sb), 1, 1)))
    s = sing()
    prof = profile(s)
    out.append(("SING", Verdict("SING.regular", 0, int(prof.regular), 0, 0)))
    out.append(("SING", Verdict("SING.rank", 0, prof.pencil_rank, 1, 1)))
    out.append(("SING", Verdict("SING.relation_dim", 0, to_relation(s).dim, 3, 3)))
    out.append(("SING", _dims_check("SING.wong_dims", [w.dim for w in wong(s, 3)], [0, 1, 1, 1])))
    w = wong_pencil()
    out.append(("WONG", _dims_check("WONG.wong_dims", [x.dim for x in wong(w, 3)], [0, 1, 2, 2])))
    out.append(("WONG", Verdict("WONG.identity", 0, int(wong_matches_kernels(w, 4)), 1, 1)))
    out.append(("WONG", _dims_check("WONG.infinity_dims", kernel_dims(to_relation(Pencil(w.F, w.E)), 3), [0, 1, 2, 2])))
    return out


def run_campaign(cfg: CampaignConfig) -> Report:
    cfg.validate()
    start = time.perf_counter()
    col = _Collector()
    if cfg.scenario == "relation-1dim":
        for t in range(cfg.trials):
            _relation_trial(cfg, t, col, 1)
    elif cfg.scenario == "relation-pdim":
        for t in range(cfg.trials):
            _relation_trial(cfg, t, col, cfg.p)
    elif cfg.scenario == "pencil-rankone":
        for t in range(cfg.trials):
            _pencil_trial(cfg, t, col)
    elif cfg.scenario == "s_n-oracle":
        _oracle_campaign(cfg, col)
    else:
        by_fixture: dict[str, list[Verdict]] = {}
        for name, v in fixture_verdicts():
            by_fixture.setdefault(name, []).append(v)
        for i, (name, vs) in enumerate(by_fixture.items()):
            col.record(i, vs, {"fixture": name})
    config = asdict(cfg)
    if hasattr(col, "family_counts"):
        config["instances"] = col.family_counts
    return Report(config, col.trials, col.violations, col.histograms(), time.perf_counter() - start)
