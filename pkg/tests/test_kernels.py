import random

import pytest

from fanocheck import kernels
from fanocheck.kernels import common, pure


def rand_poly(rng, nvars, deg, terms=6, p=101):
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randrange(1, p)
    return out


def test_ext_field_axioms():
    for p in (3, 5, 7):
        F = common.ExtField(p, 2)
        elems = list(F.elements())
        assert len(elems) == p * p
        rng = random.Random(p)
        for _ in range(60):
            a, b, c = (rng.randrange(F.q) for _ in range(3))
            assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        # every nonzero element has order dividing q-1
        for a in range(1, F.q):
            assert F.pow(a, F.q - 1) == 1


def test_projective_point_counts():
    for q, n in ((5, 3), (7, 4), (25, 2)):
        pts = list(common.projective_points(range(q), n))
        assert len(pts) == common.count_projective(q, n)
        assert len(set(pts)) == len(pts)


def test_pure_reducer_basics():
    r = pure.Reducer(7, 2)
    r.add({(1, 0): 1})  # z1
    out = r.reduce({(2, 0): 3, (0, 2): 5})
    assert out == {(0, 2): 5}
    with pytest.raises(ValueError):
        r.add({})


def test_reducer_equivalence_compiled_vs_pure():
    if kernels.implementation() != "compiled":
        pytest.skip("compiled kernel unavailable")
    rng = random.Random(7)
    for trial in range(60):
        nvars = rng.randint(2, 5)
        basis = [rand_poly(rng, nvars, rng.randint(1, 3)) for _ in range(3)]
        target = rand_poly(rng, nvars, rng.randint(2, 5), terms=10)
        fast = kernels.AutoReducer(101, nvars)
        slow = pure.Reducer(101, nvars)
        for b in basis:
            fast.add(b)
            slow.add(b)
        assert fast.reduce(target) == slow.reduce(target), trial


def test_zeros_equivalence_compiled_vs_pure():
    if kernels.implementation() != "compiled":
        pytest.skip("compiled kernel unavailable")
    rng = random.Random(8)
    for trial in range(25):
        nvars = rng.randint(2, 4)
        gens = [rand_poly(rng, nvars, rng.randint(1, 3), terms=4, p=5)
                for _ in range(rng.randint(1, 3))]
        gens = [{e: c % 5 for e, c in g.items()} for g in gens]
        for ext in (1, 2):
            fast = kernels.zeros_projective(gens, nvars, 5, ext, -1)
            slow = pure.zeros_projective(gens, nvars, 5, ext, -1)
            assert fast == slow, (trial, ext)


def test_kernel_limit_falls_back_to_pure():
    # 9 variables exceed the packed-word layout; the wrapper must still work
    r = kernels.AutoReducer(101, 9)
    poly = {tuple([1] + [0] * 8): 1}
    r.add(poly)
    assert r.reduce({tuple([2] + [0] * 8): 5}) == {}
    # degree above 127 exceeds the packed range mid-stream
    r2 = kernels.AutoReducer(101, 2)
    r2.add({(1, 0): 1})
    big = {(200, 0): 3, (0, 1): 1}
    assert r2.reduce(big) == {(0, 1): 1}


def test_zeros_limit_parameter():
    gens = [{(1, 0, 0): 1}]
    count, pts = kernels.zeros_projective(gens, 3, 5, 1, 2)
    assert count == 6  # a line in P^2(F_5)
    assert len(pts) == 2
    count2, pts2 = kernels.zeros_projective(gens, 3, 5, 1, -1)
    assert count2 == 6 and len(pts2) == 6
