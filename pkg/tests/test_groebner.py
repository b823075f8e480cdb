import random

import pytest

from fanocheck.fields import Field
from fanocheck.groebner import (
    BudgetExceeded,
    degrevlex_key,
    groebner,
    staircase_affine_dimension,
)
from fanocheck.poly import MultiPoly, random_homogeneous

F5 = Field.prime(5)
F101 = Field.prime(101)
QQ = Field.rationals()


def var(field, n, i):
    return MultiPoly.variable(field, n, i)


def test_degrevlex_order():
    # degree first, then the last nonzero difference negative
    assert degrevlex_key((2, 0)) > degrevlex_key((1, 1))
    assert degrevlex_key((1, 1)) > degrevlex_key((0, 2))
    assert degrevlex_key((0, 0, 3)) < degrevlex_key((1, 1, 1))


def test_groebner_coordinate_ideal():
    gens = [var(F5, 3, i) for i in range(3)]
    res = groebner(gens)
    assert sorted(res.leading) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert staircase_affine_dimension(res.leading, 3) == 0


def test_groebner_zero_ideal():
    res = groebner([MultiPoly.zero(F5, 3)])
    assert res.basis == []
    assert staircase_affine_dimension(res.leading, 3) == 3


def test_groebner_membership():
    x, y = var(QQ, 2, 0), var(QQ, 2, 1)
    res = groebner([x * x, x * y])
    assert res.contains(x * x * y)
    assert not res.contains(y * y)


def test_groebner_generators_reduce_to_zero(rng):
    gens = [random_homogeneous(F101, 3, d, rng) for d in (2, 3)]
    res = groebner(gens)
    for g in gens:
        assert res.contains(g)


def test_groebner_rational_field():
    x, y, z = (var(QQ, 3, i) for i in range(3))
    res = groebner([x * x - y * z, x * y])
    assert staircase_affine_dimension(res.leading, 3) == 1


def test_budget_exceeded():
    rng = random.Random(2)
    gens = [random_homogeneous(F101, 5, d, rng) for d in (2, 3, 4)]
    with pytest.raises(BudgetExceeded) as err:
        groebner(gens, budget=2)
    assert err.value.reductions == 2
    assert err.value.partial_leading


def test_staircase_dimension_cases():
    # principal ideal (z1^2) in 3 vars: affine cone dim 2
    assert staircase_affine_dimension([(2, 0, 0)], 3) == 2
    # irrelevant-like: all variables present as pure powers
    assert staircase_affine_dimension([(1, 0), (0, 1)], 2) == 0
    # constant leading monomial = unit ideal
    assert staircase_affine_dimension([(0, 0)], 2) == -1


def test_groebner_agrees_with_known_complete_intersection(rng):
    # generic diagonal-ish forms cut codimension equal to their number
    gens = []
    for d in (2, 3):
        terms = {}
        for i in range(4):
            e = [0] * 4
            e[i] = d
            terms[tuple(e)] = F101.random_nonzero(rng)
        gens.append(MultiPoly(F101, 4, terms))
    res = groebner(gens)
    assert staircase_affine_dimension(res.leading, 4) == 2
