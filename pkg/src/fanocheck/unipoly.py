"""Dense univariate and bivariate polynomial helpers over an exact field.

Univariate polynomials are coefficient lists (index = degree, no trailing
zeros).  Bivariate polynomials are lists of univariate coefficients (index =
degree in the second variable).  These back the exact end-games of the
dimension engine: zero sets in P^1 via gcd, and squarefreeness of plane
curves via a primitive-PRS gcd.
"""

from __future__ import annotations

from .fields import Field


def trim(u: list) -> list:
    while u and u[-1] == 0:
        u.pop()
    return u


def u_norm(field: Field, u: list) -> list:
    return trim([c for c in u])


def u_is_zero(u: list) -> bool:
    return not u


def u_deg(u: list) -> int:
    return len(u) - 1


def u_add(field: Field, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return trim(out)


def u_scale(field: Field, a: list, c) -> list:
    if c == field.zero:
        return []
    return [field.mul(c, x) for x in a]


def u_mul(field: Field, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == field.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(out)


def u_divmod(field: Field, a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv = field.inv(b[-1])
    while len(r) >= len(b) and r:
        c = field.mul(r[-1], inv)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = field.sub(r[shift + i], field.mul(c, y))
        trim(r)
    return trim(q), r


def u_gcd(field: Field, a: list, b: list) -> list:
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = u_divmod(field, a, b)
        a, b = b, r
    if a:
        inv = field.inv(a[-1])
        a = [field.mul(inv, c) for c in a]
    return a


def u_derivative(field: Field, a: list) -> list:
    return trim([field.mul(field.from_int(i), a[i]) for i in range(1, len(a))])


def u_squarefree(field: Field, a: list) -> bool:
    """True iff a has no repeated roots (requires deg a < char for primes)."""
    if u_deg(a) <= 0:
        return True
    d = u_derivative(field, a)
    if not d:
        return False
    return u_deg(u_gcd(field, a, d)) == 0


# -- binary (homogeneous two-variable) forms --------------------------------

def binary_from_multipoly(p) -> list:
    """Coefficient list c_i of sum c_i x^i y^(d-i) for a binary form."""
    if p.nvars != 2:
        raise ValueError("binary form needs exactly two variables")
    d = p.degree()
    if d < 0:
        return []
    field = p.field
    out = [field.zero] * (d + 1)
    for (i, j), c in p.terms.items():
        out[i] = c
    return out


def binary_common_zeros(field: Field, forms_with_degree: list[tuple[list, int]]):
    """Common P^1 zeros (over the closure) of binary forms.

    Each entry is ``(coeffs, degree)`` with coeffs[i] the coefficient of
    x^i y^(degree-i).  Returns -1 (empty), 0 (finite nonempty) or 1 (all of
    P^1); exact, since gcds commute with field extension.
    """
    live = [(trim(list(c)), d) for c, d in forms_with_degree]
    live = [(c, d) for c, d in live if c]
    if not live:
        return 1
    # common affine roots (y=1 chart): gcd of dehomogenized polynomials
    g = live[0][0]
    for c, _ in live[1:]:
        g = u_gcd(field, g, c)
        if u_deg(g) == 0:
            break
    has_affine = u_deg(g) >= 1
    # the point at infinity [1:0]: x^d coefficient vanishes for every form
    at_infinity = all(len(c) - 1 < d for c, d in live)
    return 0 if (has_affine or at_infinity) else -1


# -- bivariate gcd via primitive PRS -----------------------------------------

def b_trim(b: list) -> list:
    while b and not b[-1]:
        b.pop()
    return b


def b_is_zero(b: list) -> bool:
    return not b


def b_content(field: Field, b: list) -> list:
    g: list = []
    for coeff in b:
        g = u_gcd(field, g, coeff)
        if u_deg(g) == 0 and g:
            return g
    return g


def b_divide_content(field: Field, b: list, cont: list) -> list:
    out = []
    for coeff in b:
        q, r = u_divmod(field, coeff, cont)
        if r:
            raise ArithmeticError("content division must be exact")
        out.append(q)
    return b_trim(out)


def b_primitive(field: Field, b: list) -> list:
    b = b_trim([trim(list(c)) for c in b])
    if not b:
        return []
    cont = b_content(field, b)
    return b_divide_content(field, b, cont)


def b_mul_uni(field: Field, b: list, u: list) -> list:
    return b_trim([u_mul(field, c, u) for c in b])


def b_sub(field: Field, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else []
        y = b[i] if i < len(b) else []
        out.append(u_add(field, x, u_scale(field, y, field.neg(field.one))))
    return b_trim(out)


def b_shift(b: list, k: int) -> list:
    return [[] for _ in range(k)] + b


def b_pseudo_rem(field: Field, a: list, b: list) -> list:
    """Pseudo-remainder of a by b as polynomials in the outer variable."""
    a = b_trim([list(c) for c in a])
    b = b_trim([list(c) for c in b])
    if not b:
        raise ZeroDivisionError
    lb = b[-1]
    while a and len(a) >= len(b):
        la = a[-1]
        shift = len(a) - len(b)
        a = b_sub(field, b_mul_uni(field, a, lb), b_shift(b_mul_uni(field, b, la), shift))
    return a


def b_gcd(field: Field, a: list, b: list) -> list:
    """gcd of bivariate polynomials (primitive PRS), up to a scalar."""
    a = b_trim([trim(list(c)) for c in a])
    b = b_trim([trim(list(c)) for c in b])
    if not a:
        return b
    if not b:
        return a
    ca, cb = b_content(field, a), b_content(field, b)
    cg = u_gcd(field, ca, cb)
    a, b = b_divide_content(field, a, ca), b_divide_content(field, b, cb)
    while b:
        r = b_pseudo_rem(field, a, b)
        a, b = b, b_primitive(field, r)
    return b_mul_uni(field, a, cg)


def b_total_degree(b: list) -> int:
    d = -1
    for j, coeff in enumerate(b):
        if coeff:
            d = max(d, j + u_deg(coeff))
    return d


def bivariate_from_multipoly(p) -> list:
    """MultiPoly in two variables -> nested list form (outer index: var 2)."""
    if p.nvars != 2:
        raise ValueError("expected two variables")
    field = p.field
    dy = max((e[1] for e in p.terms), default=-1)
    out: list = [[] for _ in range(dy + 1)]
    for (i, j), c in p.terms.items():
        row = out[j]
        while len(row) <= i:
            row.append(field.zero)
        row[i] = c
    return b_trim([trim(row) for row in out])
