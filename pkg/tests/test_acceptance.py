"""Acceptance criteria 1-8, each at its stated size and tolerance."""

import json
import subprocess
import sys
import time
from collections import Counter

from acceptance_log import record
from relcalc.chains import ChainTuple, classify_chain
from relcalc.fieldkit import Q, Subspace, span
from relcalc.fixtures import ex31, sharp
from relcalc.harness import CampaignConfig, gen_pencil, run_campaign
from relcalc.pencil import (
    apply_perturbation,
    bridge_matches,
    candidate_lambdas,
    pencil_bound_report,
    profile,
    satisfies_inclusion,
    to_relation,
    wong_matches_kernels,
)
from relcalc.relation import INFINITY, jordan_degrees, parts, power


def test_criterion_1_sharpness():
    parts.cache_clear()
    power.cache_clear()
    start = time.perf_counter()
    diffs = {}
    a, b = sharp(2)
    da, db = jordan_degrees(a, 2), jordan_degrees(b, 2)
    exact_two = (da[2], db[2]) == (3, 0)
    for n in range(2, 6):
        a, b = sharp(n)
        diffs[n] = jordan_degrees(a, n)[n] - jordan_degrees(b, n)[n]
    elapsed = time.perf_counter() - start
    passed = exact_two and all(diffs[n] == n + 1 for n in diffs) and elapsed < 5
    record(1, "SHARP(n) difference n+1 at level n", passed, f"D_2 = {da[2]} vs {db[2]}, diffs {diffs}, {elapsed:.2f}s")
    assert passed


def test_criterion_2_ex31():
    a = ex31()
    pa = parts(a)
    e1, e2, z = (1, 0), (0, 1), (0, 0)
    sing = classify_chain(a, ChainTuple.of(Q, z, e1))
    qj = classify_chain(a, ChainTuple.of(Q, e2, e1))
    checks = {
        "ker": pa.ker == Subspace.full(Q, 2),
        "mul": pa.mul == span(Q, [e1]),
        "singular": sing.is_singular,
        "quasi-not-jordan": qj.is_quasi_jordan and not qj.is_jordan,
    }
    passed = all(checks.values())
    record(2, "EX31 regression", passed, ", ".join(f"{k}={'ok' if v else 'bad'}" for k, v in checks.items()))
    assert passed


def test_criterion_3_oracle():
    start = time.perf_counter()
    total, mismatches, positive = 0, 0, 0
    for field, dims, trials in (("GF2", (1, 3), 3000), ("GF3", (1, 2), 3000)):
        rep = run_campaign(CampaignConfig("s_n-oracle", field, dims[0], dims[1], trials=trials, seed=2024, nmax=3))
        total += sum(rep.config["instances"].values())
        mismatches += len(rep.violations)
        positive += sum(1 for t in rep.trials if t["max_s_n"] > 0)
    elapsed = time.perf_counter() - start
    passed = total >= 10_000 and mismatches == 0 and elapsed < 120
    record(3, "s_n equals oracle", passed, f"{total} pairs, {positive} with s_n > 0, {mismatches} mismatches, {elapsed:.1f}s")
    assert passed


CAMPAIGNS = [
    CampaignConfig("relation-1dim", "Q", 4, 4, trials=1000, seed=1),
    CampaignConfig("relation-1dim", "GF3", 5, 5, trials=1000, seed=2),
    CampaignConfig("relation-pdim", "Q", 2, 4, trials=500, seed=3, p=2),
    CampaignConfig("relation-pdim", "GF3", 2, 5, trials=500, seed=4, p=3),
    CampaignConfig("pencil-rankone", "Q", 1, 5, trials=700, seed=5),
    CampaignConfig("pencil-rankone", "Qi", 1, 4, trials=100, seed=6),
    CampaignConfig("pencil-rankone", "GF3", 1, 5, trials=200, seed=7),
]


def test_criterion_4_campaigns():
    start = time.perf_counter()
    violations, checks, cases = 0, 0, Counter()
    for cfg in CAMPAIGNS:
        rep = run_campaign(cfg)
        violations += len(rep.violations)
        checks += sum(t["checks"] for t in rep.trials)
        cases.update(t["case"] for t in rep.trials if "case" in t)
    elapsed = time.perf_counter() - start
    passed = violations == 0 and elapsed < 600
    record(4, "bound campaigns", passed, f"{checks} checks, {violations} violations, pencil cases {dict(cases)}, {elapsed:.0f}s")
    assert passed


def test_criterion_5_bridge_and_wong():
    cfg = CampaignConfig("pencil-rankone", "Q", 1, 5, seed=55)
    mismatches, tested = 0, 0
    for t in range(500):
        p, _ = gen_pencil(cfg, t)
        for lam in candidate_lambdas(p):
            tested += 1
            mismatches += not bridge_matches(p, lam, p.d)
        mismatches += not wong_matches_kernels(p, p.d)
    passed = mismatches == 0
    record(5, "bridge and Wong identities", passed, f"500 pencils, {tested} (pencil, lambda) pairs, {mismatches} mismatches")
    assert passed


def test_criterion_6_regular_regular():
    cfg = CampaignConfig("pencil-rankone", "Q", 1, 5, seed=66)
    found, violations, at_infinity, t = 0, 0, 0, 0
    kinds = ("regular-random", "regular-structured")
    while found < 500:
        p, q = gen_pencil(cfg, t, kinds[t % 2], ("random", "only-E", "only-F")[t % 3])
        t += 1
        if not profile(apply_perturbation(p, q)).regular:
            continue
        found += 1
        rep = pencil_bound_report(p, q)
        assert INFINITY in rep.lambdas
        level = [v for v in rep.verdicts if v.check == "pencil.regular-regular"]
        violations += sum(1 for v in level if abs(v.value) > 1)
        at_infinity += sum(1 for v in level if v.lam == INFINITY)
    passed = violations == 0
    record(6, "regular/regular |delta| <= 1", passed, f"{found} pairs from {t} draws, {at_infinity} checks at inf, {violations} violations")
    assert passed


def test_criterion_7_inclusion():
    cfg = CampaignConfig("pencil-rankone", "Q", 1, 5, seed=77)
    found, violations, refined, t = 0, 0, 0, 0
    cases = Counter()
    while found < 100:
        kind = ("regular-structured", "singular-zero-row", "regular-random", "singular-dup-col")[t % 4]
        q_kind = ("inclusion", "inclusion-singular")[(t // 4) % 2]
        p, q = gen_pencil(cfg, t, kind, q_kind)
        t += 1
        if not satisfies_inclusion(p, q):
            continue
        found += 1
        violations += not to_relation(p) <= to_relation(apply_perturbation(p, q))
        rep = pencil_bound_report(p, q)
        cases[rep.case] += 1
        refined += sum(1 for v in rep.verdicts if v.check.startswith("pencil.refined"))
        violations += len(rep.violations)
    passed = violations == 0
    record(7, "inclusion and refined bounds", passed, f"{found} cases {dict(cases)}, {refined} refined checks, {violations} violations")
    assert passed


def _verify_output() -> str:
    cmd = [sys.executable, "-m", "relcalc", "verify", "--scenario", "relation-pdim", "--trials", "40",
           "--seed", "8675309", "--field", "GF3", "--dim", "2:4", "--p", "2"]
    res = subprocess.run(cmd, capture_output=True, text=True, check=True)
    doc = json.loads(res.stdout)
    doc.pop("wall_time")
    return json.dumps(doc, sort_keys=True)


def test_criterion_8_determinism():
    first, second = _verify_output(), _verify_output()
    passed = first.encode() == second.encode()
    record(8, "verify output is reproducible", passed, f"{len(first)} bytes compared")
    assert passed
