"""Divisor-class bookkeeping on the blow-up of a point and the exact
multiplicity/degree chain calculus.

A chain starts from a cycle of known codimension and repeatedly intersects
with tangent-system divisors; each step of degree k multiplies the
multiplicity-to-degree ratio by (k+1)/k.  Solving 1 >= r * prod(factors)
bounds the starting ratio r.  Chains are materialized as explicit step
lists so reports can show every intermediate ratio.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction


@dataclass(frozen=True)
class DivisorClass:
    """a*H - b*E on the blow-up of a point (b stored as the subtracted coefficient)."""

    h: Fraction
    e: Fraction

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.h + other.h, self.e + other.e)

    def scale(self, c) -> "DivisorClass":
        return DivisorClass(self.h * c, self.e * c)

    def __repr__(self) -> str:
        return f"{self.h}H - {self.e}E"


def hypertangent_class(k: int, M: int | None = None) -> DivisorClass:
    """The class k*H - (k+1)*E of the k-th tangent-system divisor."""
    if k < 2:
        raise ValueError("tangent systems start at k = 2")
    if M is not None and k > M - 1:
        raise ValueError(f"k must be at most M-1 = {M - 1}")
    return DivisorClass(Fraction(k), Fraction(k + 1))


VARIANTS = ("i", "ii", "iii")

# stated validity floors for the target caps (bound <= cap holds from here up)
VARIANT_FLOORS = {"i": 5, "ii": 9, "iii": 6}
STRUCTURAL_FLOORS = {"i": 4, "ii": 4, "iii": 5}


@dataclass
class RatioChain:
    M: int
    variant: str
    start_codim: int
    ambient_dim: int
    steps: list[tuple[int, Fraction]] = dc_field(default_factory=list)

    @property
    def product(self) -> Fraction:
        out = Fraction(1)
        for _, factor in self.steps:
            out *= factor
        return out

    @property
    def bound(self) -> Fraction:
        return 1 / self.product

    def cap(self) -> Fraction:
        return Fraction(4 if self.variant in ("i", "iii") else 3, self.M)

    def cap_holds(self) -> bool:
        return self.bound <= self.cap()

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "M": self.M,
            "start_codim": self.start_codim,
            "ambient_dim": self.ambient_dim,
            "steps": [{"degree": k, "factor": str(fac)} for k, fac in self.steps],
            "product": str(self.product),
            "bound": str(self.bound),
            "cap": str(self.cap()),
            "cap_holds": self.cap_holds(),
            "cap_valid_from_M": VARIANT_FLOORS[self.variant],
        }


def build_chain(M: int, variant: str) -> RatioChain:
    """Materialize the factor chain for one variant.

    (i)  codim-2 cycles on the full variety: degrees 4..M-1.
    (ii) divisors on a hyperplane section: degree 2 first, then 4..M-2.
    (iii) divisors on a codim-2 section: degree 2 first, then 4..M-3.
    Steps stop once the chain reaches curves (codim = ambient dim - 1).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if M < STRUCTURAL_FLOORS[variant]:
        raise ValueError(f"variant {variant} needs M >= {STRUCTURAL_FLOORS[variant]}")
    if variant == "i":
        start, ambient = 2, M - 1
        degrees = list(range(4, M))
    elif variant == "ii":
        start, ambient = 1, M - 2
        degrees = [2] + list(range(4, M - 1))
    else:
        start, ambient = 1, M - 3
        degrees = [2] + list(range(4, M - 2))
    needed = max(0, (ambient - 1) - start)
    degrees = degrees[:needed]
    steps = [(k, Fraction(k + 1, k)) for k in degrees]
    return RatioChain(M=M, variant=variant, start_codim=start,
                      ambient_dim=ambient, steps=steps)


def chain_bound(M: int, variant: str) -> Fraction:
    """The solved multiplicity/degree bound for a chain variant."""
    return build_chain(M, variant).bound


def mult_bound_prop32(M: int, n: int = 1) -> dict:
    """Multiplicity cap (8/3)n for degree-nM divisors through a singular
    point, derived step by step from the codim-2 chain cap."""
    if M < 5 or n < 1:
        raise ValueError("need M >= 5 and n >= 1")
    cap_i = Fraction(4, M)
    first_factor = Fraction(3, 2)
    ratio_cap = cap_i / first_factor      # mult/deg of the divisor itself
    degree = n * M
    mult_cap = ratio_cap * degree         # = (8/3) n
    return {
        "M": M,
        "n": n,
        "codim2_cap": cap_i,
        "first_step_factor": first_factor,
        "ratio_cap": ratio_cap,
        "degree": degree,
        "mult_bound": mult_cap,
    }


def d2_ratio(M: int) -> dict:
    """Multiplicity/degree of the quadratic tangent divisor at a singular
    point: 6/(2M) = 3/M, with the split-refutation comparison 2*2 < 6."""
    if M < 3:
        raise ValueError("need M >= 3")
    mult = 6          # order-2 vanishing of the equation times the quadric cut
    degree = 2 * M
    hyperplane_mult = 2
    return {
        "M": M,
        "mult": mult,
        "degree": degree,
        "ratio": Fraction(mult, degree),
        "hyperplane_section_mult": hyperplane_mult,
        "two_section_sum": 2 * hyperplane_mult,
        "split_possible": 2 * hyperplane_mult >= mult,
    }
