"""Shared helpers for the finite-field kernels.

Both kernel implementations (compiled and pure Python) speak the same
language: polynomials as ``{exponent tuple: int coefficient}`` over F_p, and
points of projective space as tuples of element codes.  An element of the
quadratic extension F_{p^2} = F_p(t), t^2 = r (r the smallest non-residue),
is encoded as the integer ``a + p*b`` for a + b*t.
"""

from __future__ import annotations


def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod an odd prime p."""
    if p == 2:
        raise ValueError("no quadratic extension table for p=2")
    residues = {pow(x, 2, p) for x in range(1, p)}
    for r in range(2, p):
        if r not in residues:
            return r
    raise ValueError(f"{p} is not prime")


class ExtField:
    """Arithmetic on integer codes for F_p (ext=1) or F_{p^2} (ext=2)."""

    def __init__(self, p: int, ext: int):
        if ext not in (1, 2):
            raise ValueError("ext must be 1 or 2")
        self.p = p
        self.ext = ext
        self.q = p if ext == 1 else p * p
        self.r = 0 if ext == 1 else smallest_nonresidue(p)

    def lift(self, a: int) -> int:
        """Embed a base-field element into this field's code space."""
        return a % self.p

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.ext == 1:
            return (x + y) % p
        return (x + y) % p + p * (((x // p) + (y // p)) % p)

    def mul(self, x: int, y: int) -> int:
        p = self.p
        if self.ext == 1:
            return (x * y) % p
        a, b = x % p, x // p
        c, d = y % p, y // p
        return (a * c + self.r * b * d) % p + p * ((a * d + b * c) % p)

    def pow(self, x: int, e: int) -> int:
        out = 1
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self):
        return range(self.q)


def projective_points(q_elements, nvars: int):
    """Iterate normalized projective points (first nonzero coordinate 1).

    ``q_elements`` is the full element-code list of the coordinate field.
    Deterministic order: leading-one position 0..nvars-1, trailing
    coordinates in odometer order.
    """
    elems = list(q_elements)
    q = len(elems)
    for lead in range(nvars):
        tail = nvars - lead - 1
        coords = [0] * nvars
        coords[lead] = 1
        idx = [0] * tail
        while True:
            for j in range(tail):
                coords[lead + 1 + j] = elems[idx[j]]
            yield tuple(coords)
            pos = tail - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < q:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break


def count_projective(q: int, dim_ambient_plus_one: int) -> int:
    """Number of points of P^{n-1} over a q-element field (n coordinates)."""
    n = dim_ambient_plus_one
    return (q**n - 1) // (q - 1)
