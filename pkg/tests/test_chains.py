from fractions import Fraction

import pytest

from fanocheck.chains import (
    DivisorClass,
    build_chain,
    chain_bound,
    d2_ratio,
    hypertangent_class,
    mult_bound_prop32,
)


def test_hypertangent_classes():
    assert hypertangent_class(2) == DivisorClass(Fraction(2), Fraction(3))
    assert hypertangent_class(3) == DivisorClass(Fraction(3), Fraction(4))
    total = hypertangent_class(2) + hypertangent_class(3)
    assert total == DivisorClass(Fraction(5), Fraction(7))
    with pytest.raises(ValueError):
        hypertangent_class(1)
    with pytest.raises(ValueError):
        hypertangent_class(10, M=10)


def test_variant_i_telescopes():
    for M in range(5, 501):
        assert chain_bound(M, "i") == Fraction(4, M)


def test_variant_ii_crossover_at_9():
    assert chain_bound(10, "ii") == Fraction(8, 27)
    for M in range(5, 200):
        b = chain_bound(M, "ii")
        assert (b <= Fraction(3, M)) == (M >= 9), (M, b)
    assert chain_bound(8, "ii") == Fraction(8, 21) > Fraction(3, 8)


def test_variant_iii_crossover_at_6():
    assert chain_bound(10, "iii") == Fraction(8, 24)
    for M in range(5, 200):
        b = chain_bound(M, "iii")
        assert (b <= Fraction(4, M)) == (M >= 6), (M, b)
    assert chain_bound(5, "iii") > Fraction(4, 5)


def test_closed_forms_above_floors():
    for M in range(6, 100):
        assert chain_bound(M, "ii") == Fraction(8, 3 * (M - 1))
        assert chain_bound(M, "iii") == Fraction(8, 3 * (M - 2))


def test_chain_steps_remultiplied_audit():
    # every chain's step list re-multiplies to the recorded product
    for M in (5, 8, 10, 17, 40):
        for variant in ("i", "ii", "iii"):
            chain = build_chain(M, variant)
            prod = Fraction(1)
            for k, factor in chain.steps:
                assert factor == Fraction(k + 1, k)
                prod *= factor
            assert prod == chain.product
            assert chain.bound == 1 / prod


def test_chain_step_counts():
    chain = build_chain(10, "i")
    assert [k for k, _ in chain.steps] == list(range(4, 10))
    chain2 = build_chain(10, "ii")
    assert [k for k, _ in chain2.steps] == [2] + list(range(4, 9))
    chain3 = build_chain(5, "iii")
    assert chain3.steps == []  # already at curve level


def test_prop32_bound():
    rec = mult_bound_prop32(10, 1)
    assert rec["mult_bound"] == Fraction(8, 3)
    assert mult_bound_prop32(10, 3)["mult_bound"] == 8
    # algebraic identity (8/(3M)) * nM = 8n/3 over random (M, n)
    import random
    rng = random.Random(1)
    for _ in range(50):
        M, n = rng.randint(5, 300), rng.randint(1, 40)
        rec = mult_bound_prop32(M, n)
        assert rec["ratio_cap"] * rec["degree"] == Fraction(8, 3) * n


def test_d2_ratio():
    rec = d2_ratio(10)
    assert rec["ratio"] == Fraction(3, 10)
    assert rec["mult"] == 6
    # a split into two hyperplane sections would only reach multiplicity 4
    assert rec["two_section_sum"] == 4 < rec["mult"]
    assert not rec["split_possible"]


def test_chain_json_record():
    rec = build_chain(9, "ii").to_json()
    assert rec["variant"] == "ii"
    assert rec["bound"] == "1/3"
    assert rec["cap_holds"] is True
    assert rec["steps"][0] == {"degree": 2, "factor": "3/2"}
