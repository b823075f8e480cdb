from math import comb

import pytest

from fanocheck.bounds import (
    BoundDomainError,
    bound_table,
    f,
    family_bound_table,
    family_codim_bound,
    k_span_bound,
    lemma21_bounds,
    prop24_c_values,
    prop25_min_over_c,
    singular_point_counts,
    v,
)


def test_v_table():
    assert v(10, 0) == 0
    assert v(10, 1) == 1
    assert v(10, 2) == 10
    assert v(10, 3) == 54  # M(M+1)/2 - 1 at M=10
    with pytest.raises(BoundDomainError):
        v(10, 4)


def test_f_direct_evaluation():
    assert f(10, 2, 0) == comb(11, 9) - comb(9, 9) == 54
    assert f(10, 0, 1) == 1 - 0 - 1 + 0 == 0
    for M in (6, 9, 14):
        for j in range(0, 9):
            assert f(M, j, 2) - f(M, j, 0) == -M  # table difference v(2)-v(0)


def test_prop24_values_at_10():
    c = prop24_c_values(10)
    assert c["c2"] == 4 * 5 // 2 == 10
    assert c["c1"] == 9 * 8 // 2 + 2 == 38
    assert c["cubic_count"] == (1000 - 600 - 70 + 54) // 6 == 64
    assert c["cubic_count"] > c["c2"]


def test_prop24_minimum_is_c2_for_all_M():
    for M in range(8, 201):
        c = prop24_c_values(M)
        assert c["min"] == c["c2"] == (M - 6) * (M - 5) // 2
        assert c["c3_lower_bound"] > c["c2"]
        assert c["cubic_count"] > c["c2"]
    with pytest.raises(BoundDomainError):
        prop24_c_values(7)


def test_lemma21_values_at_10():
    b = lemma21_bounds(10)
    assert b["baseline"] == 47
    assert b["k_span_bounds"][2] == 100 - 20 + 4 - 10 + 2 + 1 == 77
    assert b["nondegenerate_curve_bound"] == 91
    assert all(b["comparisons"].values())


def test_lemma21_dominance_for_all_M():
    for M in range(9, 201):
        b = lemma21_bounds(M)
        assert b["binomial_bound"] > b["baseline"]
        assert all(val >= b["baseline"] for val in b["k_span_bounds"].values())
        assert b["nondegenerate_curve_bound"] >= b["baseline"]
    with pytest.raises(BoundDomainError):
        k_span_bound(10, 9)


def test_prop25_per_c():
    p = prop25_min_over_c(10)
    assert p["per_c"][2] == 8 * 7 // 2 + 2 - 16 == 14
    assert p["per_c"][0] == 47
    assert p["argmin"] == 2
    for M in range(7, 201):
        pm = prop25_min_over_c(M)
        assert pm["minimum"] == pm["c2_closed_form"] == (M - 3) * (M - 6) // 2
        # polynomial identity (M-2)(M-7)/2 + 2 = (M-3)(M-6)/2
        assert (M - 2) * (M - 7) // 2 + 2 == (M - 3) * (M - 6) // 2


def test_family_bounds():
    assert family_codim_bound(10, "double") == 6 * 9 // 2 == 27
    assert family_codim_bound(10, "hypersurface") == 3 * 4 // 2 - 5 == 1
    assert family_codim_bound(13, "hypersurface") == 6 * 7 // 2 - 5 == 16
    for M in range(10, 201):
        assert family_codim_bound(M, "hypersurface") == (M - 7) * (M - 6) // 2 - 5
        assert family_codim_bound(M, "hypersurface") > 0 or M == 10
    for M in range(5, 201):
        assert family_codim_bound(M, "double") == (M - 4) * (M - 1) // 2
    with pytest.raises(BoundDomainError):
        family_codim_bound(9, "hypersurface")
    with pytest.raises(BoundDomainError):
        family_codim_bound(4, "double")


def test_family_bound_constituents():
    t = family_bound_table(10, "hypersurface")
    assert t["incidence_correction"] == 1 - 10
    assert t["pointwise_nonsingular"] == 10  # the rank-condition count
    assert t["family_bound"] == min(t["family_nonsingular"], t["family_singular"])
    # the family bound never exceeds the singular pointwise value
    for M in range(10, 201):
        tt = family_bound_table(M, "hypersurface")
        assert tt["family_bound"] <= singular_point_counts(M)["pointwise_min"]


def test_singular_point_counts():
    s = singular_point_counts(10)
    assert s["rank_count"] == 3 * 4 // 2 == 6
    assert s["cubic_count"] == 10 * (100 + 30 - 16) // 6 == 190
    assert s["pointwise_min"] == 6
    for M in range(10, 201):
        ss = singular_point_counts(M)
        assert ss["pointwise_min"] == ss["rank_count"]  # rank condition is tightest


def test_no_overflow_at_large_M():
    # exact big-integer arithmetic: closed forms at M = 10,000 and the full
    # comparison table at M = 500 (the c3 scan is O(M) binomials)
    assert family_codim_bound(10_000, "hypersurface") == (9993 * 9994) // 2 - 5
    assert v(10_000, 3) == 10_000 * 10_001 // 2 - 1
    assert f(10_000, 2, 0) == comb(10_001, 9_999) - 1
    big = prop24_c_values(500)
    assert big["min"] == big["c2"]


def test_bound_table_shape():
    t = bound_table(12, "hypersurface")
    assert t["entries"]["family_codim_bound"] == (12 - 7) * (12 - 6) // 2 - 5
    assert t["entries"]["v_table"][3] == 12 * 13 // 2 - 1
    td = bound_table(10, "double")
    assert td["entries"]["family_codim_bound"] == 27
