"""Buchberger engine (degrevlex) with a reduction budget and staircase tools.

Over a prime field the inner normal-form loop runs in the selected kernel
(compiled or pure); over the rationals a Fraction-based reducer with the
same interface is used.  All inputs here are polynomials as term dicts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import kernels
from .fields import Field
from .poly import MultiPoly


class BudgetExceeded(Exception):
    """S-pair reduction budget ran out; carries the partial staircase."""

    def __init__(self, reductions: int, partial_leading: list[tuple]):
        super().__init__(f"reduction budget exhausted after {reductions} S-pair reductions")
        self.reductions = reductions
        self.partial_leading = partial_leading


def degrevlex_key(exp: tuple) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def leading_monomial(terms: dict) -> tuple:
    return max(terms, key=degrevlex_key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class FractionReducer:
    """Pure reducer over the rationals; mirrors the kernel Reducer API."""

    def __init__(self):
        self._basis: list[tuple[tuple, dict]] = []

    def add(self, terms: dict) -> None:
        lead = leading_monomial(terms)
        inv = 1 / Fraction(terms[lead])
        self._basis.append((lead, {e: c * inv for e, c in terms.items()}))

    def reduce(self, terms: dict) -> dict:
        work = {e: Fraction(c) for e, c in terms.items() if c != 0}
        out: dict = {}
        while work:
            lead = max(work, key=degrevlex_key)
            c = work.pop(lead)
            hit = next(((bl, bt) for bl, bt in self._basis if _divides(bl, lead)), None)
            if hit is None:
                out[lead] = c
                continue
            blead, bterms = hit
            shift = tuple(x - y for x, y in zip(lead, blead))
            for e, bc in bterms.items():
                if e == blead:
                    continue
                te = tuple(x + y for x, y in zip(e, shift))
                v = work.get(te, Fraction(0)) - c * bc
                if v:
                    work[te] = v
                else:
                    work.pop(te, None)
        return out


def _make_reducer(field: Field, nvars: int):
    if field.characteristic:
        return kernels.AutoReducer(field.characteristic, nvars)
    return FractionReducer()


@dataclass
class GroebnerResult:
    field: Field
    nvars: int
    basis: list[dict]
    leading: list[tuple]
    reductions: int
    budget: int

    def basis_polys(self) -> list[MultiPoly]:
        return [MultiPoly(self.field, self.nvars, b) for b in self.basis]

    def contains(self, p: MultiPoly) -> bool:
        """Ideal membership via normal form against the reduced basis."""
        r = _make_reducer(self.field, self.nvars)
        for b in self.basis:
            r.add(b)
        return not r.reduce(dict(p.terms))


def groebner(gens: list[MultiPoly], budget: int = 200_000) -> GroebnerResult:
    """Reduced degrevlex Groebner basis of the ideal generated by gens.

    Raises BudgetExceeded when more than ``budget`` S-pair reductions are
    needed; the exception carries the leading monomials found so far.
    """
    if not gens:
        raise ValueError("need at least one generator (possibly zero)")
    field = gens[0].field
    nvars = gens[0].nvars
    for g in gens:
        if g.field != field or g.nvars != nvars:
            raise ValueError("generators live in different rings")

    work = [dict(g.terms) for g in gens if not g.is_zero()]
    if not work:
        return GroebnerResult(field, nvars, [], [], 0, budget)

    reducer = _make_reducer(field, nvars)
    basis: list[dict] = []
    leads: list[tuple] = []
    pairs: set[tuple[int, int]] = set()
    reductions = 0

    def push(terms: dict) -> None:
        lm = leading_monomial(terms)
        k = len(basis)
        for i in range(k):
            # product criterion: disjoint leading supports need no S-pair
            if _lcm(leads[i], lm) != tuple(a + b for a, b in zip(leads[i], lm)):
                pairs.add((i, k))
        basis.append(terms)
        leads.append(lm)
        reducer.add(terms)

    for terms in work:
        reduced = reducer.reduce(terms) if basis else terms
        if reduced:
            push(reduced)

    def spoly(i: int, j: int) -> dict:
        li, lj = leads[i], leads[j]
        lcm = _lcm(li, lj)
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        fi, fj = basis[i], basis[j]
        ci = field.inv(fi[li])
        cj = field.inv(fj[lj])
        out: dict = {}
        for e, c in fi.items():
            te = tuple(a + b for a, b in zip(e, si))
            out[te] = field.mul(ci, c)
        for e, c in fj.items():
            te = tuple(a + b for a, b in zip(e, sj))
            v = field.sub(out.get(te, field.zero), field.mul(cj, c))
            if v == field.zero:
                out.pop(te, None)
            else:
                out[te] = v
        return out

    while pairs:
        i, j = min(pairs, key=lambda ij: degrevlex_key(_lcm(leads[ij[0]], leads[ij[1]])))
        pairs.remove((i, j))
        if reductions >= budget:
            raise BudgetExceeded(reductions, list(leads))
        s = spoly(i, j)
        reductions += 1
        if not s:
            continue
        r = reducer.reduce(s)
        if r:
            push(r)

    # minimalize: keep only leads not divisible by another lead
    keep = []
    for i, lm in enumerate(leads):
        if not any(j != i and _divides(leads[j], lm) and
                   (degrevlex_key(leads[j]) != degrevlex_key(lm) or j < i)
                   for j in range(len(leads))):
            keep.append(i)

    # interreduce: each survivor reduced by the others, then made monic
    final: list[dict] = []
    for idx_pos, i in enumerate(keep):
        r = _make_reducer(field, nvars)
        for j in keep:
            if j != i:
                r.add(basis[j])
        red = r.reduce(basis[i])
        if red:
            lm = leading_monomial(red)
            inv = field.inv(red[lm])
            final.append({e: field.mul(inv, c) for e, c in red.items()})

    final.sort(key=lambda t: degrevlex_key(leading_monomial(t)))
    return GroebnerResult(field, nvars, final, [leading_monomial(t) for t in final],
                          reductions, budget)


def staircase_affine_dimension(leading: list[tuple], nvars: int) -> int:
    """Krull dimension of R/in(I) from the leading-monomial staircase.

    Largest size of a variable subset S such that no leading monomial is
    supported inside S; -1 when a constant leading monomial makes the ideal
    the whole ring.
    """
    supports = [frozenset(i for i, e in enumerate(exp) if e) for exp in leading]
    if not supports:
        return nvars
    if any(not s for s in supports):
        return -1
    for size in range(nvars, 0, -1):
        for subset in itertools.combinations(range(nvars), size):
            ss = frozenset(subset)
            if all(not s <= ss for s in supports):
                return size
    return 0


@dataclass
class HilbertData:
    """Optional extras computed from a Groebner run."""

    result: GroebnerResult
    affine_dimension: int = dc_field(init=False)

    def __post_init__(self):
        self.affine_dimension = staircase_affine_dimension(self.result.leading, self.result.nvars)
