"""Local expansions: a point on a hypersurface plus the graded pieces of the
translated affine equation.

Families: ``hypersurface`` (equation degree M) and ``double`` (branch
divisor of degree 2M); the condition batteries read the low-degree pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .poly import MultiPoly, PolynomialError

FAMILIES = ("double", "hypersurface")


def family_degree(family: str, M: int) -> int:
    if family == "double":
        return 2 * M
    if family == "hypersurface":
        return M
    raise ValueError(f"unknown family {family!r}")


@dataclass
class LocalExpansion:
    """Graded pieces q_start, q_start+1, ... of a local equation at a point.

    ``pieces[d]`` is the degree-d piece; the linear piece is present exactly
    at non-singular points.
    """

    M: int
    field: Field
    family: str
    pieces: dict[int, MultiPoly]
    source: str = ""

    point_kind: str = dc_field(init=False)

    def __post_init__(self):
        if self.M < 3:
            raise ValueError("M must be at least 3")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        top = family_degree(self.family, self.M)
        for d, piece in self.pieces.items():
            if d < 1 or d > top:
                raise ValueError(f"piece degree {d} outside 1..{top}")
            if piece.field != self.field or piece.nvars != self.M:
                raise PolynomialError("piece in the wrong ring")
            if not piece.is_homogeneous(d) and not piece.is_zero():
                raise PolynomialError(f"piece {d} is not homogeneous of degree {d}")
        q1 = self.pieces.get(1)
        self.point_kind = "nonsingular" if (q1 is not None and not q1.is_zero()) else "singular"

    def piece(self, d: int) -> MultiPoly:
        return self.pieces.get(d, MultiPoly.zero(self.field, self.M))

    def max_piece_degree(self) -> int:
        return max((d for d, p in self.pieces.items() if not p.is_zero()), default=0)


def expand_at_point(hypersurface: MultiPoly, o, M: int, family: str = "hypersurface",
                    source: str = "") -> LocalExpansion:
    """Translate the affine equation to the origin at o and split by degree.

    ``hypersurface`` is the affine-chart equation; ``o`` must lie on it.  The
    chart itself is chosen by the caller (points at infinity need a chart
    rotation first; this function never changes charts silently).
    """
    field = hypersurface.field
    n = hypersurface.nvars
    if len(o) != n:
        raise ValueError("point has wrong length for this chart")
    if hypersurface.evaluate(o) != field.zero:
        raise ValueError("point does not lie on the hypersurface")
    images = [
        MultiPoly.variable(field, n, i) + MultiPoly.constant(field, n, o[i])
        for i in range(n)
    ]
    shifted = hypersurface.subs(images)
    pieces = {}
    for d, piece in enumerate(shifted.graded_pieces()):
        if d == 0 or piece.is_zero():
            continue
        pieces[d] = piece
    return LocalExpansion(M=M, field=field, family=family, pieces=pieces, source=source)


def random_expansion(field: Field, M: int, family: str, point_kind: str, rng,
                     max_degree: int | None = None, source: str = "random") -> LocalExpansion:
    """Random local expansion with uniformly random pieces up to max_degree."""
    from .poly import random_homogeneous

    top = family_degree(family, M)
    if max_degree is None:
        if family == "double":
            max_degree = 2  # the branch-divisor checks read q_1, q_2 only
        else:
            # R1 reads up to q_{M-1}; R2.1 at codimension 0 needs q_M
            max_degree = M if point_kind == "singular" else M - 1
    max_degree = min(max_degree, top)
    start = 1 if point_kind == "nonsingular" else 2
    pieces = {}
    for d in range(start, max_degree + 1):
        pieces[d] = random_homogeneous(field, M, d, rng)
    if point_kind == "nonsingular" and pieces[1].is_zero():
        pieces[1] = MultiPoly.variable(field, M, 0)
    return LocalExpansion(M=M, field=field, family=family, pieces=pieces, source=source)
