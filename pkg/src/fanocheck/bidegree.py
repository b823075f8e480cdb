"""Exact intersection arithmetic on a product of two projective spaces and
the twistedness test for the split fibre-space families.

The intersection ring of P^M x P^m is Z[h1, h2] / (h1^{M+1}, h2^{m+1});
BidegreeElement implements that truncated ring.  The degree of a cycle
class is the coefficient of h1^M h2^m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import family_codim_bound


class BidegreeElement:
    """An element sum c_ij h1^i h2^j with h1^(M+1) = h2^(m+1) = 0."""

    __slots__ = ("M", "m", "coeffs")

    def __init__(self, M: int, m: int, coeffs: dict | None = None):
        self.M = M
        self.m = m
        self.coeffs = {}
        for (i, j), c in (coeffs or {}).items():
            if c == 0:
                continue
            if not (0 <= i <= M and 0 <= j <= m):
                raise ValueError(f"exponent ({i},{j}) outside the truncation")
            self.coeffs[(i, j)] = c

    @staticmethod
    def h1(M: int, m: int) -> "BidegreeElement":
        return BidegreeElement(M, m, {(1, 0): 1})

    @staticmethod
    def h2(M: int, m: int) -> "BidegreeElement":
        return BidegreeElement(M, m, {(0, 1): 1})

    @staticmethod
    def of(M: int, m: int, a: int, b: int) -> "BidegreeElement":
        """The divisor class a*h1 + b*h2."""
        return BidegreeElement(M, m, {(1, 0): a, (0, 1): b})

    def _check(self, other: "BidegreeElement") -> None:
        if self.M != other.M or self.m != other.m:
            raise ValueError("mismatched ambient product spaces")

    def __add__(self, other: "BidegreeElement") -> "BidegreeElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BidegreeElement(self.M, self.m, out)

    def __neg__(self) -> "BidegreeElement":
        return BidegreeElement(self.M, self.m, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "BidegreeElement") -> "BidegreeElement":
        return self + (-other)

    def __mul__(self, other: "BidegreeElement") -> "BidegreeElement":
        self._check(other)
        out: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i > self.M or j > self.m:
                    continue  # truncated away
                out[(i, j)] = out.get((i, j), 0) + c1 * c2
        return BidegreeElement(self.M, self.m, out)

    def __pow__(self, k: int) -> "BidegreeElement":
        out = BidegreeElement(self.M, self.m, {(0, 0): 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> "BidegreeElement":
        return BidegreeElement(self.M, self.m, {k: c * x for k, x in self.coeffs.items()})

    def degree(self) -> int:
        """Coefficient of the point class h1^M h2^m."""
        return self.coeffs.get((self.M, self.m), 0)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BidegreeElement) and self.M == other.M
                and self.m == other.m and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for (i, j) in sorted(self.coeffs):
            c = self.coeffs[(i, j)]
            mono = "".join(filter(None, [f"h1^{i}" if i else "", f"h2^{j}" if j else ""]))
            bits.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(bits)


@dataclass(frozen=True)
class FibreSpaceSpec:
    family: str  # double | hypersurface
    M: int
    m: int
    l: int  # the twist: the base divisor class is l times a hyperplane

    def __post_init__(self):
        if self.family not in ("double", "hypersurface"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.M < 3 or self.m < 1 or self.l < 0:
            raise ValueError("need M >= 3, m >= 1, l >= 0")


def condition_iii_value(spec: FibreSpaceSpec) -> dict:
    """The twistedness intersection number against a line in the base.

    The class pairing L^delta . K_V . preimage(line) is expanded in the
    truncated ring; the sufficient criterion holds iff the value is >= 0.
    For the double family the computation is pushed down the 2:1 cover.
    """
    M, m, l = spec.M, spec.m, spec.l
    h1 = BidegreeElement.h1(M, m)
    h2 = BidegreeElement.h2(M, m)
    line_preimage = h2 ** (m - 1)  # class of P^M x line
    if spec.family == "hypersurface":
        delta = M - 1
        total_class = BidegreeElement.of(M, m, M, l)
        canonical = BidegreeElement.of(M, m, -1, l - m - 1)  # (K_X + V)|_V data
        expr = (h1 ** delta) * canonical * line_preimage * total_class
        value = expr.degree()
        pieces = {
            "delta": delta,
            "ambient_canonical": f"{-(M + 1)}*h1 + {-(m + 1)}*h2",
            "divisor_class": repr(total_class),
            "adjoint_class": repr(canonical),
            "closed_form": (M - 1) * l - M * (m + 1),
        }
    else:
        delta = M
        cover_degree = 2
        half_branch = BidegreeElement.of(M, m, M, l)
        canonical = BidegreeElement.of(M, m, -1, l - m - 1)  # K_X + half the branch
        expr = (h1 ** delta) * canonical * line_preimage
        value = cover_degree * expr.degree()
        pieces = {
            "delta": delta,
            "cover_degree": cover_degree,
            "half_branch_class": repr(half_branch),
            "pushed_class": repr(canonical),
            "closed_form": 2 * (l - m - 1),
        }
    return {
        "family": spec.family,
        "M": M,
        "m": m,
        "l": l,
        "value": value,
        "holds": value >= 0,
        "pieces": pieces,
    }


def rigidity_threshold(family: str, M: int, m: int) -> dict:
    """Minimal twist l making the sufficient criterion hold.

    Closed forms: m+1 for the double family, ceil(M(m+1)/(M-1)) for
    hypersurfaces; both are re-derived by an integer scan of the
    intersection values.
    """
    if family == "double":
        closed = m + 1
    elif family == "hypersurface":
        closed = -((-M * (m + 1)) // (M - 1))  # ceil division
    else:
        raise ValueError(f"unknown family {family!r}")
    scan = None
    for l in range(0, closed + 3):
        val = condition_iii_value(FibreSpaceSpec(family, M, m, l))
        if val["holds"]:
            scan = l
            break
    if scan != closed:
        raise AssertionError(f"threshold scan {scan} disagrees with closed form {closed}")
    out = {"family": family, "M": M, "m": m, "threshold": closed, "scan": scan}
    if family == "hypersurface":
        # in the regime M >= m the criterion is nearly optimal (holds from
        # l = m+2 on); flag parameter pairs where that shortcut is invalid
        out["holds_from_m_plus_2"] = closed <= m + 2
        out["m_plus_2_regime_flag"] = (M >= m and closed > m + 2)
    return out


def dimension_gate(family: str, M: int, m: int) -> dict:
    """True iff the base dimension m is strictly below the family bound."""
    bound = family_codim_bound(M, family)
    return {"family": family, "M": M, "m": m, "bound": bound, "gate": m < bound}
