"""JSON ingestion: exact polynomial files with points and a chart index.

Schema::

    {
      "field": {"kind": "rational"} | {"kind": "prime", "p": 101},
      "nvars": N,
      "terms": [{"e": [e1, ..., eN], "c": "num/den" | int}, ...],
      "points": [[c1, ..., cN], ...],      # projective coordinates
      "chart": 0,                           # which coordinate is set to 1
      "family": "hypersurface" | "double"   # optional, default hypersurface
    }

Coefficients and point coordinates are parsed exactly (strings allowed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .expansion import family_degree
from .fields import Field, FieldSpec
from .poly import MultiPoly


class InputError(ValueError):
    """Malformed input file; the message names the offending element."""


@dataclass
class HypersurfaceInput:
    field: Field
    nvars: int
    polynomial: MultiPoly  # homogeneous, projective coordinates
    points: list[tuple]
    chart: int
    family: str

    @property
    def M(self) -> int:
        return self.nvars - 1

    def affine_chart(self) -> MultiPoly:
        """Dehomogenize: set the chart coordinate to 1."""
        f = self.field
        n = self.nvars
        images = []
        k = 0
        for i in range(n):
            if i == self.chart:
                images.append(MultiPoly.constant(f, n - 1, f.one))
            else:
                images.append(MultiPoly.variable(f, n - 1, k))
                k += 1
        return self.polynomial.subs(images)

    def affine_point(self, pt: tuple) -> tuple:
        """Normalize a projective point into the chart's affine coordinates."""
        f = self.field
        if pt[self.chart] == f.zero:
            raise InputError(f"point {pt} lies at infinity for chart {self.chart}")
        inv = f.inv(pt[self.chart])
        return tuple(f.mul(inv, c) for i, c in enumerate(pt) if i != self.chart)


def parse_polynomial_json(obj: dict) -> tuple[Field, int, MultiPoly]:
    try:
        spec = FieldSpec.from_json(obj["field"])
    except KeyError:
        raise InputError("missing 'field'") from None
    field = Field.from_spec(spec)
    nvars = obj.get("nvars")
    if not isinstance(nvars, int) or nvars < 1:
        raise InputError(f"'nvars' must be a positive integer, got {nvars!r}")
    terms = {}
    for idx, term in enumerate(obj.get("terms", [])):
        e = term.get("e")
        if not isinstance(e, list) or len(e) != nvars:
            raise InputError(f"term {idx}: exponent vector must have length {nvars}")
        if any((not isinstance(x, int)) or x < 0 for x in e):
            raise InputError(f"term {idx}: exponents must be non-negative integers")
        if "c" not in term:
            raise InputError(f"term {idx}: missing coefficient 'c'")
        try:
            c = field.parse(term["c"])
        except Exception as exc:
            raise InputError(f"term {idx}: bad coefficient {term['c']!r}: {exc}") from None
        key = tuple(e)
        if key in terms:
            raise InputError(f"term {idx}: duplicate exponent vector {key}")
        if c != field.zero:
            terms[key] = c
    return field, nvars, MultiPoly(field, nvars, terms)


def load_input(path: str) -> HypersurfaceInput:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from None
    field, nvars, poly = parse_polynomial_json(obj)
    family = obj.get("family", "hypersurface")
    if family not in ("hypersurface", "double"):
        raise InputError(f"unknown family {family!r}")
    if poly.is_zero():
        raise InputError("the polynomial is zero")
    M = nvars - 1
    if M < 3:
        raise InputError("need at least 4 projective coordinates (M >= 3)")
    expected = family_degree(family, M)
    if not poly.is_homogeneous(expected):
        raise InputError(
            f"polynomial must be homogeneous of degree {expected} for "
            f"{family} with M={M} (got degree {poly.degree()})")
    chart = obj.get("chart", 0)
    if not isinstance(chart, int) or not 0 <= chart < nvars:
        raise InputError(f"'chart' must be in 0..{nvars - 1}")
    points = []
    for idx, raw in enumerate(obj.get("points", [])):
        if not isinstance(raw, list) or len(raw) != nvars:
            raise InputError(f"point {idx}: must be a list of {nvars} coordinates")
        try:
            pt = tuple(field.parse(c) for c in raw)
        except Exception as exc:
            raise InputError(f"point {idx}: bad coordinate: {exc}") from None
        if all(c == field.zero for c in pt):
            raise InputError(f"point {idx}: all coordinates are zero")
        points.append(pt)
    return HypersurfaceInput(field, nvars, poly, points, chart, family)
