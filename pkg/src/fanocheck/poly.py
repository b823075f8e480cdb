"""Sparse multivariate polynomials, linear subspaces and quadratic forms.

A MultiPoly is a term map: exponent tuple -> nonzero scalar.  All values are
treated as immutable after construction; operations return fresh objects, so
shared inputs can be used concurrently.
"""

from __future__ import annotations

import itertools

from . import linalg
from .fields import Field, FieldError


class PolynomialError(ValueError):
    """Ill-formed polynomial input or an unsupported operation."""


class MultiPoly:
    """Sparse polynomial over an exact field.

    ``terms`` maps length-``nvars`` exponent tuples to nonzero coefficients.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise PolynomialError("nvars must be non-negative")
        self.field = field
        self.nvars = nvars
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise PolynomialError(f"bad exponent vector {exp} for nvars={nvars}")
            if coeff != field.zero:
                clean[exp] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(field: Field, nvars: int) -> "MultiPoly":
        return MultiPoly(field, nvars, {})

    @staticmethod
    def constant(field: Field, nvars: int, c) -> "MultiPoly":
        return MultiPoly(field, nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(field: Field, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return MultiPoly(field, nvars, {tuple(exp): field.one})

    @staticmethod
    def linear_form(field: Field, coeffs) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != field.zero:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        return MultiPoly(field, n, terms)

    # -- basics ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.field.format(self.terms[exp])
            mono = "*".join(
                f"z{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            bits.append(f"{c}*{mono}" if mono else c)
        return " + ".join(bits)

    def _check_compat(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise PolynomialError("mixed fields or variable counts")

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compat(other)
        f = self.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = f.add(out.get(exp, f.zero), c)
            if s == f.zero:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly(f, self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        f = self.field
        return MultiPoly(f, self.nvars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compat(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(exp, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return MultiPoly(f, self.nvars, out)

    def scale(self, c) -> "MultiPoly":
        f = self.field
        if c == f.zero:
            return MultiPoly.zero(f, self.nvars)
        return MultiPoly(f, self.nvars, {e: f.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise PolynomialError("negative power")
        out = MultiPoly.constant(self.field, self.nvars, self.field.one)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation / substitution ---------------------------------------------
    def evaluate(self, point):
        """Exact evaluation at a tuple of scalars."""
        if len(point) != self.nvars:
            raise PolynomialError("point length mismatch")
        f = self.field
        total = f.zero
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    for _ in range(e):
                        v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def subs(self, images: list["MultiPoly"]) -> "MultiPoly":
        """Compose: substitute images[i] for variable i.

        All images must share a field and variable count; the result lives in
        their ring.
        """
        if len(images) != self.nvars:
            raise PolynomialError("need one image per variable")
        f = self.field
        tgt_n = images[0].nvars if images else 0
        for im in images:
            if im.field != f or im.nvars != tgt_n:
                raise PolynomialError("images disagree on field or nvars")
        out = MultiPoly.zero(f, tgt_n)
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def img_pow(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        for exp, c in self.terms.items():
            term = MultiPoly.constant(f, tgt_n, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * img_pow(i, e)
            out = out + term
        return out

    def derivative(self, i: int) -> "MultiPoly":
        f = self.field
        out = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            new = list(exp)
            new[i] = e - 1
            coeff = f.mul(c, f.from_int(e))
            if coeff != f.zero:
                out[tuple(new)] = coeff
        return MultiPoly(f, self.nvars, out)

    # -- grading ---------------------------------------------------------------
    def graded_pieces(self) -> list["MultiPoly"]:
        """Split into homogeneous pieces, indexed 0..degree.

        The zero polynomial yields an empty list; re-summing the pieces
        always returns the original polynomial.
        """
        d = self.degree()
        if d < 0:
            return []
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for exp, c in self.terms.items():
            buckets[sum(exp)][exp] = c
        return [MultiPoly(self.field, self.nvars, b) for b in buckets]

    def homogeneous_part(self, d: int) -> "MultiPoly":
        terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return MultiPoly(self.field, self.nvars, terms)

    def monomials(self):
        return list(self.terms)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in a fixed deterministic order."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        exp = []
        prev = -1
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(d + nvars - 2 - prev)
        out.append(tuple(exp))
    return out


def random_homogeneous(field: Field, nvars: int, d: int, rng, density: float = 1.0):
    """Random homogeneous polynomial of degree d (seeded rng, exact coeffs)."""
    terms = {}
    for exp in monomials_of_degree(nvars, d):
        if density >= 1.0 or rng.random() < density:
            c = field.random(rng)
            if c != field.zero:
                terms[exp] = c
    return MultiPoly(field, nvars, terms)


class LinearSubspace:
    """A linear subspace of affine space, cut out by independent linear forms."""

    def __init__(self, field: Field, ambient_dim: int, equations: list[MultiPoly]):
        self.field = field
        self.ambient_dim = ambient_dim
        for eq in equations:
            if eq.field != field or eq.nvars != ambient_dim:
                raise PolynomialError("equation in wrong ring")
            if not eq.is_homogeneous(1) or eq.is_zero():
                raise PolynomialError("equations must be nonzero linear forms")
        matrix = [_linear_coeffs(eq) for eq in equations]
        if matrix and linalg.rank(field, matrix) != len(equations):
            raise PolynomialError("subspace equations are linearly dependent")
        self.equations = list(equations)
        self._matrix = matrix

    @property
    def codim(self) -> int:
        return len(self.equations)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    def parametrization(self) -> list[MultiPoly]:
        """Images of the ambient variables in terms of ``dim`` free variables.

        Substituting these into the subspace equations gives zero; the free
        variables are the non-pivot coordinates in RREF order.
        """
        f = self.field
        n = self.ambient_dim
        if not self.equations:
            return [MultiPoly.variable(f, n, i) for i in range(n)]
        red, pivots = linalg.rref(f, self._matrix)
        free = [c for c in range(n) if c not in pivots]
        k = len(free)
        images = [None] * n
        for j, c in enumerate(free):
            images[c] = MultiPoly.variable(f, k, j)
        for r, c in enumerate(pivots):
            coeffs = [f.neg(red[r][fc]) for fc in free]
            images[c] = MultiPoly.linear_form(f, coeffs)
        return images


def _linear_coeffs(eq: MultiPoly) -> list:
    coeffs = [eq.field.zero] * eq.nvars
    for exp, c in eq.terms.items():
        i = next(idx for idx, e in enumerate(exp) if e)
        coeffs[i] = c
    return coeffs


def restrict_to_subspace(p: MultiPoly, s: LinearSubspace) -> MultiPoly:
    """Restrict p to the subspace, expressed in ``s.dim`` free variables."""
    if p.field != s.field or p.nvars != s.ambient_dim:
        raise PolynomialError("polynomial and subspace live in different spaces")
    return p.subs(s.parametrization())


class QuadraticForm:
    """A quadratic form stored as an exactly symmetric Gram matrix."""

    def __init__(self, field: Field, gram):
        self.field = field
        self.dim = len(gram)
        for i in range(self.dim):
            if len(gram[i]) != self.dim:
                raise PolynomialError("gram matrix must be square")
            for j in range(self.dim):
                if gram[i][j] != gram[j][i]:
                    raise PolynomialError("gram matrix must be symmetric")
        self.gram = [list(row) for row in gram]

    def rank(self) -> int:
        """Exact rank by Gaussian elimination; congruence-invariant."""
        return linalg.rank(self.field, self.gram)

    def evaluate(self, x):
        f = self.field
        total = f.zero
        for i in range(self.dim):
            if x[i] == f.zero:
                continue
            for j in range(self.dim):
                total = f.add(total, f.mul(f.mul(self.gram[i][j], x[i]), x[j]))
        return total

    def to_poly(self) -> MultiPoly:
        f = self.field
        terms: dict = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                c = self.gram[i][j] if i == j else f.add(self.gram[i][j], self.gram[i][j])
                if c == f.zero:
                    continue
                exp = [0] * self.dim
                exp[i] += 1
                exp[j] += 1
                terms[tuple(exp)] = c
        return MultiPoly(f, self.dim, terms)

    def congruent_by(self, a) -> "QuadraticForm":
        """The form x -> q(A x), Gram = A^T G A."""
        f = self.field
        ga = linalg.mat_mul(f, self.gram, a)
        at = linalg.transpose(a)
        return QuadraticForm(f, linalg.mat_mul(f, at, ga))

    def restrict_to(self, s: LinearSubspace) -> "QuadraticForm":
        """Restriction to a linear subspace, as a form on its free coordinates."""
        params = s.parametrization()
        k = s.dim
        a = [[self.field.zero] * k for _ in range(self.dim)]
        for i, img in enumerate(params):
            row = _linear_coeffs(img) if not img.is_zero() else [self.field.zero] * k
            a[i] = row
        return self.congruent_by(a)


def quadratic_form_of(p: MultiPoly) -> QuadraticForm:
    """Gram matrix of a homogeneous quadratic, by polarization.

    Requires characteristic != 2: splitting the cross terms in half is
    ambiguous there and would silently change the rank semantics.
    """
    if not p.is_homogeneous(2) and not p.is_zero():
        raise PolynomialError("polarization needs a homogeneous quadratic")
    f = p.field
    if f.characteristic == 2:
        raise FieldError("polarization is not defined in characteristic 2")
    n = p.nvars
    half = f.inv(f.from_int(2))
    gram = [[f.zero] * n for _ in range(n)]
    for exp, c in p.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if len(support) == 1:
            gram[support[0]][support[0]] = c
        else:
            i, j = support
            gram[i][j] = gram[j][i] = f.mul(half, c)
    return QuadraticForm(f, gram)


def rank_of_quadratic(p: MultiPoly) -> int:
    return quadratic_form_of(p).rank()
