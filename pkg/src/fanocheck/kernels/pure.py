"""Pure-Python kernels: reference implementation of the hot loops.

The compiled extension in ``_speed.pyx`` mirrors this module exactly; the
package selects between them at import time.  Keep the two in behavioural
lockstep: identical outputs, identical iteration order.
"""

from __future__ import annotations

from .common import ExtField, projective_points

IMPLEMENTATION = "pure"


def _degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class Reducer:
    """Normal-form reduction against a growing basis over F_p (degrevlex)."""

    def __init__(self, p: int, nvars: int):
        self.p = p
        self.nvars = nvars
        self._basis: list[tuple[tuple, dict]] = []  # (lead exponent, monic terms)

    def add(self, terms: dict) -> None:
        """Add a polynomial (exp tuple -> coeff) to the reducer basis, monic."""
        if not terms:
            raise ValueError("cannot add the zero polynomial")
        p = self.p
        lead = max(terms, key=_degrevlex_key)
        inv = pow(terms[lead], p - 2, p)
        monic = {e: (c * inv) % p for e, c in terms.items()}
        self._basis.append((lead, monic))

    def reduce(self, terms: dict) -> dict:
        """Full normal form of a polynomial modulo the current basis."""
        p = self.p
        work = {e: c % p for e, c in terms.items() if c % p}
        out: dict = {}
        while work:
            lead = max(work, key=_degrevlex_key)
            c = work.pop(lead)
            hit = None
            for blead, bterms in self._basis:
                if _divides(blead, lead):
                    hit = (blead, bterms)
                    break
            if hit is None:
                out[lead] = c
                continue
            blead, bterms = hit
            shift = tuple(a - b for a, b in zip(lead, blead))
            for e, bc in bterms.items():
                if e == blead:
                    continue
                te = tuple(a + b for a, b in zip(e, shift))
                v = (work.get(te, 0) - c * bc) % p
                if v:
                    work[te] = v
                else:
                    work.pop(te, None)
        return out


def zeros_projective(gens: list[dict], nvars: int, p: int, ext: int, limit: int):
    """Common projective zeros of homogeneous polynomials over F_p or F_{p^2}.

    Returns ``(count, points)`` with at most ``limit`` points materialized
    (limit < 0 keeps all).  Points are tuples of element codes.
    """
    field = ExtField(p, ext)
    polys = []
    for g in gens:
        terms = [(e, c % p) for e, c in g.items() if c % p]
        polys.append(terms)
    if any(not terms for terms in polys):
        # A zero generator imposes nothing; drop it.
        polys = [t for t in polys if t]
    maxdeg = max((max(e[i] for e, _ in terms) for terms in polys for i in range(nvars)), default=0)
    count = 0
    points = []
    for pt in projective_points(field.elements(), nvars):
        pows = [[1] * (maxdeg + 1) for _ in range(nvars)]
        for i in range(nvars):
            x = pt[i]
            row = pows[i]
            for e in range(1, maxdeg + 1):
                row[e] = field.mul(row[e - 1], x)
        ok = True
        for terms in polys:
            total = 0
            for e, c in terms:
                v = field.lift(c)
                for i in range(nvars):
                    if e[i]:
                        v = field.mul(v, pows[i][e[i]])
                total = field.add(total, v)
            if total != 0:
                ok = False
                break
        if ok:
            count += 1
            if limit < 0 or len(points) < limit:
                points.append(pt)
    return count, points
