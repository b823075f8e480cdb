import itertools
import json

import pytest

from fanocheck.fields import Field
from fanocheck.survey import SurveyConfig, survey

F3 = Field.prime(3)
F5 = Field.prime(5)
F7 = Field.prime(7)


def _oracle_rank_f3(mat):
    """Independent Gaussian elimination over F_3, written from scratch."""
    m = [row[:] for row in mat]
    n = len(m)
    rank = 0
    col = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if m[r][col] % 3:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 if m[rank][col] % 3 == 1 else 2
        m[rank] = [(inv * x) % 3 for x in m[rank]]
        for r in range(n):
            if r != rank and m[r][col] % 3:
                f = m[r][col]
                m[r] = [(x - f * y) % 3 for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _oracle_symmetric_rank_counts():
    """Enumerate all 3^10 symmetric 4x4 matrices over F_3 and count ranks."""
    counts = {r: 0 for r in range(5)}
    idx = [(i, j) for i in range(4) for j in range(i, 4)]
    for vals in itertools.product(range(3), repeat=10):
        m = [[0] * 4 for _ in range(4)]
        for (i, j), val in zip(idx, vals):
            m[i][j] = m[j][i] = val
        counts[_oracle_rank_f3(m)] += 1
    return counts


def test_exhaustive_W2_matches_symmetric_matrix_enumeration():
    # rank-deficiency frequency at threshold rank < 3, swept over every
    # quadratic form in 4 variables over F_3, equals the independent count
    # over all 3^10 symmetric matrices (polarization is a bijection away
    # from characteristic 2)
    cfg = SurveyConfig(family="hypersurface", M=4, field=F3, samples=0, seed=0,
                      conditions=("W2",), thresholds={"W2": 3}, mode="exhaustive")
    rep = survey(cfg)
    oracle = _oracle_symmetric_rank_counts()
    expected_failures = oracle[0] + oracle[1] + oracle[2]
    assert sum(oracle.values()) == 3 ** 10
    assert rep["table"]["W2"]["checked"] == 3 ** 10
    assert rep["table"]["W2"]["failures"] == expected_failures


def test_zero_form_frequency_is_exact():
    # threshold rank < 1 over F_5 in dimension 3: only the zero form fails,
    # so the failure frequency is exactly 5^-6
    cfg = SurveyConfig(family="hypersurface", M=3, field=F5, samples=0, seed=0,
                      conditions=("W2",), thresholds={"W2": 1}, mode="exhaustive")
    rep = survey(cfg)
    assert rep["table"]["W2"]["checked"] == 5 ** 6
    assert rep["table"]["W2"]["failures"] == 1


def test_W1_statistical_frequency_within_three_sigma():
    from fanocheck.bounds import family_bound_table
    # Violating the restricted-rank condition at M = 6 imposes
    # (M-2)(M-1)/2 = 10 coefficient conditions, so the failure probability
    # over F_7 is 7^-10; with 10_000 samples the observed count must sit
    # within 3 binomial standard deviations (flagged statistical, not exact)
    M = 6
    codim = (M - 2) * (M - 1) // 2
    cfg = SurveyConfig(family="double", M=M, field=F7, samples=10_000, seed=42,
                      conditions=("W1",))
    rep = survey(cfg)
    n = rep["table"]["W1"]["checked"]
    p = 7.0 ** (-codim)
    mean = n * p
    sigma = (n * p * (1 - p)) ** 0.5
    observed = rep["table"]["W1"]["failures"]
    assert abs(observed - mean) <= 3 * sigma + 1e-9


def test_survey_byte_reproducibility():
    cfg = dict(family="double", M=5, field=F7, samples=10_000, seed=7,
               conditions=("W2",), thresholds={"W2": 3})
    a = json.dumps(survey(SurveyConfig(**cfg)), sort_keys=True)
    b = json.dumps(survey(SurveyConfig(**cfg)), sort_keys=True)
    assert a == b
    c = json.dumps(survey(SurveyConfig(**{**cfg, "seed": 8})), sort_keys=True)
    assert a != c


def test_survey_guards():
    with pytest.raises(ValueError):
        survey(SurveyConfig(family="double", M=5, field=Field.rationals(),
                            samples=1, seed=0))
    with pytest.raises(ValueError):
        survey(SurveyConfig(family="double", M=5, field=F5, samples=1, seed=0,
                            conditions=("W1", "W2")))  # mixed point kinds
    with pytest.raises(ValueError):
        survey(SurveyConfig(family="hypersurface", M=4, field=F3, samples=0,
                            seed=0, conditions=("R1.1",), mode="exhaustive"))
