"""Closed-form codimension counts for the two families.

Everything here is exact integer arithmetic reproducible from M alone: the
failure-codimension counts for the pointwise conditions, their comparison
values, and the family-level bounds obtained through the incidence
correction (pointwise codimension + 1 - dimension of the point locus).
"""

from __future__ import annotations

from math import comb


class BoundDomainError(ValueError):
    """Parameter outside the stated validity range of a formula."""


def v(M: int, mu: int) -> int:
    """Tabulated values v(0)=0, v(1)=1, v(2)=M, v(3)=M(M+1)/2 - 1."""
    if not 0 <= mu <= 3:
        raise BoundDomainError(f"mu must be in 0..3, got {mu}")
    return (0, 1, M, M * (M + 1) // 2 - 1)[mu]


def f(M: int, j: int, mu: int) -> int:
    """Conditions imposed on a degree-j form vanishing to order mu data:
    C(j+M-1, M-1) - C(j+M-3, M-1) - v(mu) + v(max(0, mu-2))."""
    if j < 0:
        raise BoundDomainError("j must be non-negative")
    return (comb(j + M - 1, M - 1) - comb(j + M - 3, M - 1)
            - v(M, mu) + v(M, max(0, mu - 2)))


def prop24_c_values(M: int) -> dict:
    """Failure codimensions c1, c2 and the c3 lower bound at a non-singular
    point, plus the cubic-divisor condition count; min{c1,c2,c3} = c2."""
    if M < 8:
        raise BoundDomainError("the non-singular comparison needs M >= 8")
    c1 = (M - 1) * (M - 2) // 2 + 2
    c2 = (M - 6) * (M - 5) // 2
    cubic_count = (M**3 - 6 * M**2 - 7 * M + 54) // 6
    inner1 = max(f(M, j, 2) + f(M, M - j, 1) for j in range(2, M))
    inner2 = max(f(M, j, 3) + f(M, M - j, 0) for j in range(3, M))
    c3_lower = f(M, M, 3) - (M - 2) - max(inner1, inner2)
    return {
        "c1": c1,
        "c2": c2,
        "cubic_count": cubic_count,
        "c3_lower_bound": c3_lower,
        "min": min(c1, c2, c3_lower),
    }


def lemma21_baseline(M: int) -> int:
    return M * (M - 1) // 2 + 2


def k_span_bound(M: int, k: int) -> int:
    """Conditions for vanishing on a non-degenerate curve spanning a
    k-dimensional subspace, after the Grassmannian subtraction."""
    if not 2 <= k <= M - 2:
        raise BoundDomainError(f"k must be in 2..M-2, got {k}")
    return M * M - k * M + k * k - M + k + 1


def k_span_raw(M: int, k: int) -> int:
    """The same count before subtracting the Grassmannian dimension."""
    if not 2 <= k <= M - 2:
        raise BoundDomainError(f"k must be in 2..M-2, got {k}")
    return k * (M - k) * (M - k + 1) // 2 + M - 2 * k - 1


def lemma21_bounds(M: int) -> dict:
    """Baseline count for a finiteness failure and every alternative bound
    from the case analysis; each alternative is >= the baseline."""
    if M < 4:
        raise BoundDomainError("need M >= 4")
    baseline = lemma21_baseline(M)
    binomial = comb(M + 1, 2)  # min over 2 <= k <= M-1 of C(M+1, k)
    kspan = {k: k_span_bound(M, k) for k in range(2, M - 1)}
    curve = M * (M - 1) + 1
    comparisons = {
        "binomial>=baseline": binomial >= baseline,
        "kspan>=baseline": all(val >= baseline for val in kspan.values()),
        "curve>=baseline": curve >= baseline,
    }
    return {
        "baseline": baseline,
        "binomial_bound": binomial,
        "k_span_bounds": kspan,
        "nondegenerate_curve_bound": curve,
        "comparisons": comparisons,
    }


def prop25_min_over_c(M: int) -> dict:
    """Finiteness-failure count per subspace codimension c, minus the
    Grassmannian dimension; the minimum sits at c = 2."""
    if M < 7:
        raise BoundDomainError("need M >= 7")
    per_c = {c: (M - c) * (M - c - 1) // 2 + 2 - c * (M - c) for c in (0, 1, 2)}
    minimum = min(per_c.values())
    argmin = min(per_c, key=lambda c: (per_c[c], c))
    return {
        "per_c": per_c,
        "minimum": minimum,
        "argmin": argmin,
        "c2_closed_form": (M - 3) * (M - 6) // 2,
    }


def singular_point_counts(M: int) -> dict:
    """Pointwise failure counts at a singular point: rank condition exactly
    (M-7)(M-6)/2, the cubic-divisor count, and the finiteness minimum."""
    rank_count = (M - 7) * (M - 6) // 2
    cubic_count = M * (M**2 + 3 * M - 16) // 6
    finiteness_min = prop25_min_over_c(M)["minimum"]
    return {
        "rank_count": rank_count,
        "cubic_count": cubic_count,
        "finiteness_min": finiteness_min,
        "pointwise_min": min(rank_count, cubic_count, finiteness_min),
    }


FAMILY_FLOORS = {"double": 5, "hypersurface": 10}


def family_codim_bound(M: int, family: str) -> int:
    return family_bound_table(M, family)["family_bound"]


def family_bound_table(M: int, family: str) -> dict:
    """Family-level codimension bound with its labeled constituents.

    The point locus has dimension M; the incidence correction adds 1 for
    the containment of the point and subtracts the locus dimension.
    """
    if family not in FAMILY_FLOORS:
        raise BoundDomainError(f"unknown family {family!r}")
    if M < FAMILY_FLOORS[family]:
        raise BoundDomainError(f"{family} needs M >= {FAMILY_FLOORS[family]}")
    correction = 1 - M
    if family == "double":
        pointwise_ns = (M - 2) * (M - 1) // 2
        pointwise_s = (M - 2) * (M - 1) // 2 + M  # + M for the vanishing linear piece
    else:
        pointwise_ns = (M - 6) * (M - 5) // 2  # the c2 closed form
        pointwise_s = singular_point_counts(M)["pointwise_min"] + M
    fam_ns = pointwise_ns + correction
    fam_s = pointwise_s + correction
    return {
        "family": family,
        "M": M,
        "point_locus_dimension": M,
        "incidence_correction": correction,
        "pointwise_nonsingular": pointwise_ns,
        "pointwise_singular": pointwise_s,
        "family_nonsingular": fam_ns,
        "family_singular": fam_s,
        "family_bound": min(fam_ns, fam_s),
    }


def bound_table(M: int, family: str) -> dict:
    """The full exact table for one (M, family), JSON-ready."""
    table: dict = {"M": M, "family": family, "entries": {}}
    e = table["entries"]
    e["family_codim_bound"] = family_codim_bound(M, family)
    e["incidence"] = family_bound_table(M, family)
    if family == "hypersurface":
        e["nonsingular_point"] = prop24_c_values(M)
        e["singular_point"] = singular_point_counts(M)
        e["finiteness_per_codim"] = prop25_min_over_c(M)
        e["finiteness_case_bounds"] = lemma21_bounds(M)
        e["v_table"] = {mu: v(M, mu) for mu in range(4)}
    return table
