"""Acceptance suite: one test per criterion, at the stated tolerances.

Every tolerance is exact (integer or rational equality) unless explicitly
statistical; each test prints a single pass line with its runtime.
"""

import itertools
import json
import random
import time
from fractions import Fraction

from fanocheck.bounds import (
    family_codim_bound,
    lemma21_bounds,
    prop24_c_values,
    prop25_min_over_c,
)
from fanocheck.chains import chain_bound, mult_bound_prop32
from fanocheck.conditions import check_R1, check_R2, check_W1, check_W2, reverify
from fanocheck.dimension import (
    IdealPresentation,
    is_regular_sequence,
    pencil_cubic_membership,
    pencil_membership_test,
    projective_dimension,
    sample_irreducible_reduced,
)
from fanocheck.exclusion import CASE_IDS, build_case, certify_case, replay_all
from fanocheck.expansion import LocalExpansion
from fanocheck.fields import Field
from fanocheck.bidegree import FibreSpaceSpec, condition_iii_value, dimension_gate, rigidity_threshold
from fanocheck.poly import MultiPoly, random_homogeneous
from fanocheck.survey import SurveyConfig, survey

F3 = Field.prime(3)
F5 = Field.prime(5)
F101 = Field.prime(101)


def _announce(num, name, t0):
    print(f"[acceptance] criterion {num} ({name}): PASS in {time.time() - t0:.2f}s")


# --------------------------------------------------------------------------
# 1. formula table
# --------------------------------------------------------------------------

def test_criterion_1_formula_table():
    t0 = time.time()
    t = time.time()
    assert family_codim_bound(10, "double") == 27
    assert time.time() - t < 1.0
    t = time.time()
    assert family_codim_bound(10, "hypersurface") == 1
    assert family_codim_bound(13, "hypersurface") == 16
    assert time.time() - t < 1.0
    t = time.time()
    for M in range(8, 201):
        c = prop24_c_values(M)
        assert c["c2"] == (M - 6) * (M - 5) // 2
        assert c["min"] == c["c2"]
    assert time.time() - t < 1.0
    t = time.time()
    for M in range(9, 201):
        b = lemma21_bounds(M)
        assert b["baseline"] == M * (M - 1) // 2 + 2
        assert b["binomial_bound"] >= b["baseline"]
        assert all(val >= b["baseline"] for val in b["k_span_bounds"].values())
        assert b["nondegenerate_curve_bound"] >= b["baseline"]
    assert time.time() - t < 1.0
    t = time.time()
    for M in range(7, 201):
        assert prop25_min_over_c(M)["per_c"][2] == (M - 3) * (M - 6) // 2
    assert time.time() - t < 1.0
    _announce(1, "formula table", t0)


# --------------------------------------------------------------------------
# 2. chain calculus
# --------------------------------------------------------------------------

def test_criterion_2_chain_calculus():
    t0 = time.time()
    for M in range(5, 501):
        assert chain_bound(M, "i") == Fraction(4, M)
    for M in range(5, 501):
        b = chain_bound(M, "ii")
        assert (b <= Fraction(3, M)) == (M >= 9)
    assert chain_bound(8, "ii") > Fraction(3, 8)
    for M in range(5, 501):
        b = chain_bound(M, "iii")
        assert (b <= Fraction(4, M)) == (M >= 6)
    assert chain_bound(5, "iii") > Fraction(4, 5)
    for n in (1, 2, 3, 7):
        assert mult_bound_prop32(11, n)["mult_bound"] == Fraction(8, 3) * n
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _announce(2, "chain calculus", t0)


# --------------------------------------------------------------------------
# 3. exclusion ledger
# --------------------------------------------------------------------------

def test_criterion_3_exclusion_ledger():
    t0 = time.time()
    rep = replay_all(range(10, 31))
    assert rep["all_infeasible"]
    for M, per_case in rep["cases"].items():
        for cid in CASE_IDS:
            cert = per_case[cid]
            assert cert["verdict"] == "infeasible", (M, cid)
            # every branch certificate replays to a ground contradiction
            for branch in cert["branches"]:
                assert branch["contradiction"] is not None
                assert branch["contradiction"]["ground_relation"].startswith("0 ")
    # the nu > n gap is reported, and the auxiliary mu <= nu closes it
    bare = certify_case(build_case("case1-general", 10, include_auxiliary=False))
    assert bare.verdict == "implication-gap"
    assert any(g["claim"] == "nu>1" for g in bare.gaps())
    closed = certify_case(build_case("case1-general", 10, include_auxiliary=True))
    assert closed.verdict == "infeasible"
    gap = next(g for g in closed.gaps() if g["claim"] == "nu>1")
    assert gap["closed_by_auxiliary"] == ["mu<=nu"]
    elapsed = time.time() - t0
    assert elapsed < 5.0
    _announce(3, "exclusion ledger", t0)


# --------------------------------------------------------------------------
# 4. dimension-engine oracle equivalence
# --------------------------------------------------------------------------

def _draw_ideal(rng):
    nvars = rng.choice((2, 3, 4))
    shape = rng.randrange(5)
    gens = []
    if shape == 0:
        for _ in range(rng.randint(1, max(1, nvars - 1))):
            gens.append(MultiPoly.linear_form(F5, [F5.random(rng) for _ in range(nvars)]))
    elif shape == 1:
        for _ in range(rng.randint(0, max(0, nvars - 2))):
            gens.append(MultiPoly.linear_form(F5, [F5.random(rng) for _ in range(nvars)]))
        gens.append(random_homogeneous(F5, nvars, rng.choice((2, 3)), rng))
    elif shape == 2:
        gens.append(random_homogeneous(F5, nvars, rng.choice((2, 3)), rng))
    elif shape == 3:
        gens.append(random_homogeneous(F5, nvars, 2, rng))
        gens.append(random_homogeneous(F5, nvars, 2, rng))
    else:
        gens.append(random_homogeneous(F5, nvars, 2, rng))
        gens.append(random_homogeneous(F5, nvars, 3, rng))
    gens = [g for g in gens if not g.is_zero()] or [MultiPoly.zero(F5, nvars)]
    return IdealPresentation(F5, nvars, gens)


def _enumeration_completed(verdict):
    """Whether an enumeration-backed verdict stands on its own evidence.

    Decided from the verdict's own certificate only: a flagged run is one
    whose conclusion rests on not having seen low-degree points.
    """
    if verdict.certified:
        return True
    cert = verdict.certificate
    if verdict.method == "exhaustive":
        if "note" in cert:
            return False
        return not (cert.get("points_ext") == 0 and cert.get("ambient", 0) >= 3)
    return not cert.get("untested_gap", False)


def test_criterion_4_dimension_oracle_equivalence():
    t0 = time.time()
    agree = skipped = 0
    for i in range(200):
        rng = random.Random(9000 + i)
        ideal = _draw_ideal(rng)
        g = projective_dimension(ideal, method="groebner")
        s = projective_dimension(ideal, method="slicing", seed=31 + i)
        e = projective_dimension(ideal, method="exhaustive", seed=77 + i)
        if not (_enumeration_completed(e) and _enumeration_completed(s)):
            skipped += 1
            continue
        assert g.projective_dimension == s.projective_dimension == e.projective_dimension, (
            i, g.projective_dimension, s.projective_dimension, e.projective_dimension)
        agree += 1
    assert agree + skipped == 200
    assert agree >= 180  # the completeness rule may excuse only a few runs

    # planted non-regular sequences: 100/100 with the correct failing index
    for trial in range(100):
        rng = random.Random(1000 + trial)
        n = rng.choice((3, 4))
        length = rng.randint(2, 3)
        shared = MultiPoly.linear_form(F101, [F101.random_nonzero(rng) for _ in range(n)])
        pos = rng.randrange(1, length)
        first = rng.randrange(0, pos)
        gens = []
        for i in range(length):
            d = rng.randint(1, 2)
            if i in (first, pos):
                gens.append(shared * random_homogeneous(F101, n, d, rng))
            else:
                terms = {}
                for j in range(n):
                    e = [0] * n
                    e[j] = d + 1
                    terms[tuple(e)] = F101.random_nonzero(rng)
                gens.append(MultiPoly(F101, n, terms))
        rep = is_regular_sequence(IdealPresentation(F101, n, gens))
        assert not rep.ok and rep.failing_index == pos + 1, trial
    elapsed = time.time() - t0
    assert elapsed < 120.0
    print(f"[acceptance] criterion 4 detail: {agree} agreeing runs, {skipped} excused")
    _announce(4, "dimension oracle equivalence", t0)


# --------------------------------------------------------------------------
# 5. regularity witnesses
# --------------------------------------------------------------------------

def _rand_linear(field, n, rng):
    while True:
        l = MultiPoly.linear_form(field, [field.random(rng) for _ in range(n)])
        if not l.is_zero():
            return l


def test_criterion_5_regularity_witnesses():
    t0 = time.time()
    z = lambda n, i: MultiPoly.variable(F101, n, i)

    # rank-deficient plants for W1 / W2 / R1.2 / R2.2
    e_w1 = LocalExpansion(M=5, field=F101, family="double",
                          pieces={1: z(5, 0), 2: z(5, 0) * z(5, 1)})
    rep = check_W1(e_w1)
    assert rep.verdict == "fail" and reverify(rep, e_w1)

    e_w2 = LocalExpansion(M=5, field=F101, family="double",
                          pieces={2: z(5, 0) * z(5, 1)})
    rep = check_W2(e_w2)
    assert rep.verdict == "fail" and reverify(rep, e_w2)

    rng = random.Random(50)
    pieces = {1: z(5, 0), 2: z(5, 1) * z(5, 2),
              3: random_homogeneous(F101, 5, 3, rng),
              4: random_homogeneous(F101, 5, 4, rng)}
    e_r1 = LocalExpansion(M=5, field=F101, family="hypersurface", pieces=pieces)
    reps = {r.condition_id: r for r in
            check_R1(e_r1, sampled_hyperplanes=4, seed=2, thresholds={"R1.2": 3})}
    assert reps["R1.2"].verdict == "fail" and reverify(reps["R1.2"], e_r1)
    # the same rank-2 quadratic splits the restricted quadric on every
    # hyperplane: the R1.3 cycle check reports the split with its witness
    assert reps["R1.3"].verdict == "fail" and reverify(reps["R1.3"], e_r1)

    q2_r7 = MultiPoly.zero(F101, 9)
    for i in range(7):
        q2_r7 = q2_r7 + z(9, i) ** 2
    e_r2 = LocalExpansion(M=9, field=F101, family="hypersurface",
                          pieces={2: q2_r7, 3: random_homogeneous(F101, 9, 3, rng)})
    reps = check_R2(e_r2, subspace_samples=0, seed=3, pencil_budget=10)
    r22 = next(r for r in reps if r.condition_id == "R2.2")
    assert r22.verdict == "fail" and r22.witness["rank"] == 7
    assert reverify(r22, e_r2)

    # R2.3 plants: a triple section and three sections from one pencil
    for plant in ("cube", "three"):
        rngp = random.Random(60 if plant == "cube" else 61)
        l1, l2 = _rand_linear(F101, 5, rngp), _rand_linear(F101, 5, rngp)
        q3 = l1 ** 3 if plant == "cube" else l1 * l2 * (l1 + l2)
        pieces = {2: random_homogeneous(F101, 5, 2, rngp), 3: q3,
                  4: random_homogeneous(F101, 5, 4, rngp),
                  5: random_homogeneous(F101, 5, 5, rngp)}
        e = LocalExpansion(M=5, field=F101, family="hypersurface", pieces=pieces)
        reps = {r.condition_id: r for r in
                check_R2(e, subspace_samples=0, seed=4, thresholds={"R2.2": 3})}
        assert reps["R2.3"].verdict == "fail", plant
        assert reps["R2.3"].witness["kind"] == "pencil"
        assert reverify(reps["R2.3"], e)

    # product polynomials for the irreducible/reduced check
    rngq = random.Random(70)
    prod = _rand_linear(F101, 4, rngq) * random_homogeneous(F101, 4, 2, rngq)
    r = sample_irreducible_reduced(prod, 6, seed=5)
    assert r.verdict == "fail" and r.witness["kind"] == "hyperplane-factor"
    sq = z(4, 1) ** 2 * random_homogeneous(F101, 4, 2, rngq)
    r = sample_irreducible_reduced(sq, 6, seed=6)
    assert r.verdict == "fail" and r.witness["kind"] == "non-reduced"

    # 50 random planted pencils over F_101: always detected, witness exact
    detected = 0
    for k in range(50):
        rngk = random.Random(3000 + k)
        n = 5
        l1, l2 = _rand_linear(F101, n, rngk), _rand_linear(F101, n, rngk)
        coeffs = [rngk.randrange(101) for _ in range(4)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = 1
        cubic = MultiPoly.zero(F101, n)
        for i, c in enumerate(coeffs):
            if c:
                cubic = cubic + ((l1 ** i) * (l2 ** (3 - i))).scale(F101.from_int(c))
        if cubic.is_zero():
            cubic = l1 ** 3
        q2 = random_homogeneous(F101, n, 2, rngk)
        q3 = cubic + q2 * _rand_linear(F101, n, rngk)
        res = pencil_cubic_membership(q2, q3, seed=100 + k)
        assert res.verdict == "violates", k
        w1 = MultiPoly.linear_form(F101, [F101.parse(c) for c in res.witness["l1"]])
        w2 = MultiPoly.linear_form(F101, [F101.parse(c) for c in res.witness["l2"]])
        assert pencil_membership_test(q2, q3, w1, w2) is not None, k
        detected += 1
    assert detected == 50
    elapsed = time.time() - t0
    assert elapsed < 60.0
    _announce(5, "regularity witnesses", t0)


# --------------------------------------------------------------------------
# 6. survey statistics
# --------------------------------------------------------------------------

def _oracle_rank_f3(mat):
    m = [row[:] for row in mat]
    rank = 0
    for col in range(4):
        pivot = next((r for r in range(rank, 4) if m[r][col] % 3), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 if m[rank][col] % 3 == 1 else 2
        m[rank] = [(inv * x) % 3 for x in m[rank]]
        for r in range(4):
            if r != rank and m[r][col] % 3:
                f = m[r][col]
                m[r] = [(x - f * y) % 3 for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_criterion_6_survey_statistics():
    t0 = time.time()
    cfg = SurveyConfig(family="hypersurface", M=4, field=F3, samples=0, seed=0,
                      conditions=("W2",), thresholds={"W2": 3}, mode="exhaustive")
    rep = survey(cfg)
    # independent enumeration of all 3^10 symmetric matrices
    idx = [(i, j) for i in range(4) for j in range(i, 4)]
    expected = 0
    for vals in itertools.product(range(3), repeat=10):
        m = [[0] * 4 for _ in range(4)]
        for (i, j), val in zip(idx, vals):
            m[i][j] = m[j][i] = val
        if _oracle_rank_f3(m) < 3:
            expected += 1
    assert rep["table"]["W2"]["checked"] == 3 ** 10
    assert rep["table"]["W2"]["failures"] == expected

    cfg10k = dict(family="double", M=5, field=Field.prime(7), samples=10_000,
                  seed=99, conditions=("W2",), thresholds={"W2": 3})
    a = json.dumps(survey(SurveyConfig(**cfg10k)), sort_keys=True).encode()
    b = json.dumps(survey(SurveyConfig(**cfg10k)), sort_keys=True).encode()
    assert a == b
    elapsed = time.time() - t0
    assert elapsed < 120.0
    _announce(6, "survey statistics", t0)


# --------------------------------------------------------------------------
# 7. fibre conditions
# --------------------------------------------------------------------------

def test_criterion_7_fibre_conditions():
    t0 = time.time()
    for M in range(5, 15):
        for m in range(1, 6):
            for l in range(0, 10):
                hv = condition_iii_value(FibreSpaceSpec("hypersurface", M, m, l))
                assert hv["value"] == (M - 1) * l - M * (m + 1)
                dv = condition_iii_value(FibreSpaceSpec("double", M, m, l))
                sign = (dv["value"] > 0) - (dv["value"] < 0)
                want = (l > m + 1) - (l < m + 1)
                assert sign == want
    assert rigidity_threshold("double", 5, 2)["threshold"] == 3
    assert rigidity_threshold("hypersurface", 10, 2)["threshold"] == 4
    assert dimension_gate("double", 10, 26)["gate"] is True
    assert dimension_gate("hypersurface", 10, 1)["gate"] is False
    assert dimension_gate("hypersurface", 13, 15)["gate"] is True
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _announce(7, "fibre conditions", t0)
