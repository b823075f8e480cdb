"""Pointwise regularity condition batteries.

Each check returns a ConditionReport.  Verdicts: ``pass`` only for complete
decision procedures (ranks, finished Groebner runs, exhaustive pencil
enumeration); ``pass-sampled`` when part of the evidence is randomized;
``fail`` always carries a re-verifiable witness; ``inconclusive`` when a
budget ran out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import linalg
from .dimension import (
    DEFAULT_BUDGET,
    IdealPresentation,
    ResourceLimit,
    finiteness_on_subspace,
    is_regular_sequence,
    pencil_cubic_membership,
    sample_irreducible_reduced,
)
from .expansion import LocalExpansion
from .fields import Field
from .groebner import BudgetExceeded, groebner
from .poly import (
    LinearSubspace,
    MultiPoly,
    QuadraticForm,
    quadratic_form_of,
    restrict_to_subspace,
)

DEFAULT_THRESHOLDS = {"W1": 2, "W2": 4, "R1.2": 6, "R2.2": 8}

CONDITION_IDS = ("W1", "W2", "R1.1", "R1.2", "R1.3", "R2.1", "R2.2", "R2.3")


@dataclass
class ConditionReport:
    condition_id: str
    verdict: str
    evidence: dict = dc_field(default_factory=dict)
    witness: dict | None = None
    parameters: dict = dc_field(default_factory=dict)
    field_spec: dict | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.condition_id not in CONDITION_IDS:
            raise ValueError(f"unknown condition id {self.condition_id!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("fail reports must carry a witness")

    def to_json(self) -> dict:
        return {
            "condition": self.condition_id,
            "verdict": self.verdict,
            "witness": self.witness,
            "field": self.field_spec,
            "seed": self.seed,
            "thresholds": self.parameters,
            "evidence": self.evidence,
        }


def _gram_as_strings(field: Field, q: QuadraticForm) -> list[list[str]]:
    return [[field.format(c) for c in row] for row in q.gram]


def _factor_rank_le2(q: QuadraticForm) -> dict:
    """Factorization data for a quadratic form of rank <= 2 (the witness for
    a split quadric): rank and the radical's codimension."""
    return {"rank": q.rank(), "gram": _gram_as_strings(q.field, q)}


def tangent_subspace(e: LocalExpansion) -> LinearSubspace:
    if e.point_kind != "nonsingular":
        raise ValueError("tangent hyperplane needs a non-singular point")
    return LinearSubspace(e.field, e.M, [e.piece(1)])


def restricted_pieces(e: LocalExpansion, degrees) -> list[MultiPoly]:
    sub = tangent_subspace(e)
    return [restrict_to_subspace(e.piece(d), sub) for d in degrees]


def check_W1(e: LocalExpansion, threshold: int | None = None) -> ConditionReport:
    """Rank of q_2 restricted to the tangent hyperplane, against a threshold."""
    if e.point_kind != "nonsingular":
        raise ValueError("W1 applies at non-singular points")
    thr = DEFAULT_THRESHOLDS["W1"] if threshold is None else threshold
    q2 = e.piece(2)
    if q2.is_zero():
        form = QuadraticForm(e.field, [[e.field.zero] * (e.M - 1)
                                       for _ in range(e.M - 1)])
    else:
        # congruence restriction of the Gram matrix; same rank as restricting
        # the polynomial, and much cheaper inside surveys
        form = quadratic_form_of(q2).restrict_to(tangent_subspace(e))
    r = form.rank()
    params = {"W1": thr}
    if r >= thr:
        return ConditionReport("W1", "pass", {"rank": r}, None, params,
                               e.field.spec.to_json())
    return ConditionReport("W1", "fail", {"rank": r},
                           {"kind": "rank-deficit", **_factor_rank_le2(form)},
                           params, e.field.spec.to_json())


def check_W2(e: LocalExpansion, threshold: int | None = None) -> ConditionReport:
    """Rank of the leading quadratic piece at a singular point."""
    if e.point_kind != "singular":
        raise ValueError("W2 applies at singular points")
    thr = DEFAULT_THRESHOLDS["W2"] if threshold is None else threshold
    form = quadratic_form_of(e.piece(2)) if not e.piece(2).is_zero() else QuadraticForm(
        e.field, [[e.field.zero] * e.M for _ in range(e.M)])
    r = form.rank()
    params = {"W2": thr}
    if r >= thr:
        return ConditionReport("W2", "pass", {"rank": r}, None, params,
                               e.field.spec.to_json())
    return ConditionReport("W2", "fail", {"rank": r},
                           {"kind": "rank-deficit", **_factor_rank_le2(form)},
                           params, e.field.spec.to_json())


def _span_of_points(field: Field, points: list[tuple], dim: int) -> int:
    if not points:
        return 0
    return linalg.rank(field, [list(pt) for pt in points])


def _certify_linear_in_radical(gens: list[MultiPoly], h: MultiPoly, budget: int,
                               max_power: int = 4) -> int | None:
    """Smallest k <= max_power with h^k in the ideal, by normal form."""
    try:
        gb = groebner(gens, budget=budget)
    except BudgetExceeded:
        return None
    power = h
    for k in range(1, max_power + 1):
        if gb.contains(power):
            return k
        power = power * h
    return None


def check_R1(e: LocalExpansion, sampled_hyperplanes: int = 25, seed: int = 0,
             thresholds: dict | None = None, budget: int = DEFAULT_BUDGET,
             irreducibility_trials: int = 6) -> list[ConditionReport]:
    """The battery at a non-singular point of a degree-M hypersurface.

    R1.1: the restricted pieces q_2..q_{M-1} on the tangent hyperplane form
    a regular sequence.  R1.2: restricted quadratic rank, plus a sampled
    non-degeneracy audit of the quadric-cubic intersection.  R1.3: for
    sampled hyperplanes through the point, the double restriction of the
    equation splits neither through a degenerate quadric nor visibly.
    """
    if e.point_kind != "nonsingular":
        raise ValueError("the R1 battery applies at non-singular points")
    thr = dict(DEFAULT_THRESHOLDS)
    thr.update(thresholds or {})
    field = e.field
    M = e.M
    fspec = field.spec.to_json()
    rng = random.Random(seed)
    reports: list[ConditionReport] = []

    degrees = list(range(2, M))
    qbars = restricted_pieces(e, degrees)

    # R1.1 -------------------------------------------------------------
    params = {"budget": budget}
    try:
        ideal = IdealPresentation(field, M - 1, qbars)
        rep = is_regular_sequence(ideal, budget=budget)
        if rep.ok:
            reports.append(ConditionReport("R1.1", "pass", rep.to_json(), None,
                                           params, fspec, seed))
        else:
            reports.append(ConditionReport(
                "R1.1", "fail", rep.to_json(),
                {"kind": "non-regular", "failing_index": rep.failing_index,
                 "prefix_dimensions": rep.prefix_dimensions}, params, fspec, seed))
    except ResourceLimit as exc:
        reports.append(ConditionReport("R1.1", "inconclusive",
                                       {"error": str(exc), **exc.partial},
                                       None, params, fspec, seed))

    # R1.2 -------------------------------------------------------------
    q2bar, q3bar = qbars[0], qbars[1] if len(qbars) > 1 else MultiPoly.zero(field, M - 1)
    form = quadratic_form_of(q2bar) if not q2bar.is_zero() else None
    r = form.rank() if form else 0
    params = {"R1.2": thr["R1.2"]}
    if r < thr["R1.2"]:
        reports.append(ConditionReport(
            "R1.2", "fail", {"rank": r},
            {"kind": "rank-deficit", "rank": r, "threshold": thr["R1.2"]},
            params, fspec, seed))
    else:
        verdict, evidence, witness = _r12_span_audit(
            field, M, q2bar, q3bar, rng, budget)
        evidence["rank"] = r
        reports.append(ConditionReport("R1.2", verdict, evidence, witness,
                                       params, fspec, seed))

    # R1.3 -------------------------------------------------------------
    reports.append(_check_R13(e, sampled_hyperplanes, rng, budget,
                              irreducibility_trials, fspec, seed))
    return reports


def _r12_span_audit(field: Field, M: int, q2bar: MultiPoly, q3bar: MultiPoly,
                    rng, budget: int):
    """Sampled check that the quadric-cubic intersection spans the tangent space.

    Degenerate components over the closure cannot be enumerated; sampled
    points give one-sided evidence, and a common hyperplane is certified
    exactly through radical membership before reporting a failure.
    """
    from .dimension import _sample_points_on_system

    n = M - 1
    p = field.characteristic
    if not p:
        return "inconclusive", {"error": "span audit needs a prime field"}, None
    pts = _sample_points_on_system([q2bar, q3bar], n, p, rng, want=4 * n, attempts=24)
    span = _span_of_points(field, pts, n)
    evidence = {"sampled_points": len(pts), "span_dimension": span, "ambient": n}
    if span == n or not pts:
        return "pass-sampled", evidence, None
    # all sampled points in a proper subspace: try to certify a hyperplane
    rows = [list(pt) for pt in pts]
    for h_coeffs in linalg.nullspace(field, rows):
        h = MultiPoly.linear_form(field, h_coeffs)
        k = _certify_linear_in_radical([q2bar, q3bar], h, budget)
        if k is not None:
            return "fail", evidence, {
                "kind": "degenerate-intersection",
                "hyperplane": [field.format(c) for c in h_coeffs],
                "radical_power": k,
            }
    return "inconclusive", evidence, None


def _check_R13(e: LocalExpansion, samples: int, rng, budget: int,
               trials: int, fspec: dict, seed: int) -> ConditionReport:
    """Sampled R1.3: restrict the quadric and the full equation to
    P intersect T_o for random hyperplanes P and look for splits."""
    field = e.field
    M = e.M
    q1 = e.piece(1)
    top = e.max_piece_degree()
    f_total = MultiPoly.zero(field, M)
    for d in range(2, top + 1):
        f_total = f_total + e.piece(d)
    params = {"sampled_hyperplanes": samples}
    checked = 0
    degenerate = []
    for _ in range(samples):
        coeffs = [field.random(rng) for _ in range(M)]
        P = MultiPoly.linear_form(field, coeffs)
        if P.is_zero():
            continue
        try:
            sub = LinearSubspace(field, M, [q1, P])
        except Exception:
            continue  # P proportional to the tangent form
        q2r = restrict_to_subspace(e.piece(2), sub)
        fr = restrict_to_subspace(f_total, sub)
        checked += 1
        form = quadratic_form_of(q2r) if not q2r.is_zero() else None
        rank = form.rank() if form else 0
        if rank <= 2:
            # the quadric factor splits into hyperplanes: certified split
            return ConditionReport(
                "R1.3", "fail", {"hyperplanes_checked": checked},
                {"kind": "split-quadric", "hyperplane": [field.format(c) for c in coeffs],
                 "restricted_rank": rank,
                 "gram": _gram_as_strings(field, form) if form else []},
                params, fspec, seed)
        if fr.is_zero():
            degenerate.append([field.format(c) for c in coeffs])
    evidence = {"hyperplanes_checked": checked, "degenerate_restrictions": degenerate}
    return ConditionReport("R1.3", "pass-sampled", evidence, None, params, fspec, seed)


def check_R2(e: LocalExpansion, subspace_samples: int = 6, seed: int = 0,
             thresholds: dict | None = None, budget: int = DEFAULT_BUDGET,
             pencil_budget: int = 4000,
             user_subspaces: list[LinearSubspace] | None = None) -> list[ConditionReport]:
    """The battery at a singular point of a degree-M hypersurface."""
    if e.point_kind != "singular":
        raise ValueError("the R2 battery applies at singular points")
    thr = dict(DEFAULT_THRESHOLDS)
    thr.update(thresholds or {})
    field = e.field
    M = e.M
    fspec = field.spec.to_json()
    rng = random.Random(seed)
    reports: list[ConditionReport] = []

    # R2.1 -------------------------------------------------------------
    params = {"subspace_samples": subspace_samples, "budget": budget}
    outcomes = []
    witness = None
    sampled = False
    try:
        trivial = LinearSubspace(field, M, [])
        qlist = [e.piece(d) for d in range(2, M + 1)]
        finite, verdict = finiteness_on_subspace(qlist, trivial, 0, budget)
        outcomes.append({"codim": 0, "finite": finite,
                         "dimension": verdict.projective_dimension})
        if not finite:
            witness = {"kind": "infinite-on-subspace", "codim": 0,
                       "certificate": verdict.to_json()}
        subspaces: list[tuple[int, LinearSubspace]] = []
        for c in (1, 2):
            for _ in range(subspace_samples):
                eqs = []
                while len(eqs) < c:
                    cand = MultiPoly.linear_form(field, [field.random(rng) for _ in range(M)])
                    try:
                        LinearSubspace(field, M, eqs + [cand])
                        eqs.append(cand)
                    except Exception:
                        continue
                subspaces.append((c, LinearSubspace(field, M, eqs)))
        for sub in user_subspaces or []:
            if sub.codim in (1, 2):
                subspaces.append((sub.codim, sub))
        for c, sub in subspaces:
            if witness:
                break
            sampled = True
            qlist_c = [e.piece(d) for d in range(2, M - c + 1)]
            finite, verdict = finiteness_on_subspace(qlist_c, sub, c, budget)
            outcomes.append({"codim": c, "finite": finite,
                             "dimension": verdict.projective_dimension})
            if not finite:
                witness = {
                    "kind": "infinite-on-subspace", "codim": c,
                    "subspace": [[field.format(x) for x in _linear_coeffs_of(eq)]
                                 for eq in sub.equations],
                    "certificate": verdict.to_json(),
                }
        if witness:
            reports.append(ConditionReport("R2.1", "fail", {"outcomes": outcomes},
                                           witness, params, fspec, seed))
        else:
            verdict_name = "pass-sampled" if sampled else "pass"
            reports.append(ConditionReport("R2.1", verdict_name,
                                           {"outcomes": outcomes}, None,
                                           params, fspec, seed))
    except ResourceLimit as exc:
        reports.append(ConditionReport("R2.1", "inconclusive",
                                       {"error": str(exc), **exc.partial}, None,
                                       params, fspec, seed))

    # R2.2 -------------------------------------------------------------
    form = quadratic_form_of(e.piece(2)) if not e.piece(2).is_zero() else None
    r = form.rank() if form else 0
    params = {"R2.2": thr["R2.2"]}
    if r >= thr["R2.2"]:
        reports.append(ConditionReport("R2.2", "pass", {"rank": r}, None,
                                       params, fspec, seed))
    else:
        reports.append(ConditionReport(
            "R2.2", "fail", {"rank": r},
            {"kind": "rank-deficit", "rank": r, "threshold": thr["R2.2"]},
            params, fspec, seed))

    # R2.3 -------------------------------------------------------------
    params = {"pencil_budget": pencil_budget}
    q2, q3 = e.piece(2), e.piece(3)
    if q2.is_zero() or q3.is_zero():
        reports.append(ConditionReport(
            "R2.3", "fail", {},
            {"kind": "degenerate-piece", "note": "quadratic or cubic piece is zero"},
            params, fspec, seed))
    else:
        res = pencil_cubic_membership(q2, q3, search_budget=pencil_budget, seed=seed)
        if res.verdict == "violates":
            reports.append(ConditionReport(
                "R2.3", "fail", {}, {"kind": "pencil", **(res.witness or {})},
                params, fspec, seed))
        else:
            verdict = "pass" if res.exhaustive else "pass-sampled"
            reports.append(ConditionReport("R2.3", verdict, res.evidence or {},
                                           None, params, fspec, seed))
    return reports


def _linear_coeffs_of(eq: MultiPoly):
    out = [eq.field.zero] * eq.nvars
    for exp, c in eq.terms.items():
        out[next(i for i, x in enumerate(exp) if x)] = c
    return out


def reverify(report: ConditionReport, e: LocalExpansion) -> bool:
    """Re-run the specific sub-check encoded in a fail witness.

    Returns True when the failure reproduces on the witness data.
    """
    if report.verdict != "fail" or not report.witness:
        return False
    kind = report.witness.get("kind")
    field = e.field
    if kind == "rank-deficit" and report.condition_id in ("W1", "W2", "R1.2", "R2.2"):
        if report.condition_id == "W1":
            fresh = check_W1(e, report.parameters.get("W1"))
        elif report.condition_id == "W2":
            fresh = check_W2(e, report.parameters.get("W2"))
        else:
            piece = (restricted_pieces(e, [2])[0]
                     if report.condition_id == "R1.2" else e.piece(2))
            thr = report.parameters.get(report.condition_id, 0)
            r = quadratic_form_of(piece).rank() if not piece.is_zero() else 0
            return r < thr
        return fresh.verdict == "fail"
    if kind == "split-quadric":
        coeffs = [field.parse(c) for c in report.witness["hyperplane"]]
        sub = LinearSubspace(field, e.M, [e.piece(1), MultiPoly.linear_form(field, coeffs)])
        q2r = restrict_to_subspace(e.piece(2), sub)
        r = quadratic_form_of(q2r).rank() if not q2r.is_zero() else 0
        return r <= 2
    if kind == "pencil":
        l1 = MultiPoly.linear_form(field, [field.parse(c) for c in report.witness["l1"]])
        l2 = MultiPoly.linear_form(field, [field.parse(c) for c in report.witness["l2"]])
        from .dimension import pencil_membership_test
        return pencil_membership_test(e.piece(2), e.piece(3), l1, l2) is not None
    if kind == "non-regular":
        idx = report.witness["failing_index"]
        qbars = restricted_pieces(e, list(range(2, e.M)))
        rep = is_regular_sequence(IdealPresentation(field, e.M - 1, qbars[:idx]))
        return not rep.ok and rep.failing_index == idx
    if kind == "infinite-on-subspace":
        c = report.witness["codim"]
        if c == 0:
            sub = LinearSubspace(field, e.M, [])
        else:
            eqs = [MultiPoly.linear_form(field, [field.parse(x) for x in row])
                   for row in report.witness["subspace"]]
            sub = LinearSubspace(field, e.M, eqs)
        qlist = [e.piece(d) for d in range(2, e.M - c + 1)]
        finite, _ = finiteness_on_subspace(qlist, sub, c)
        return not finite
    if kind == "degenerate-intersection":
        coeffs = [field.parse(c) for c in report.witness["hyperplane"]]
        h = MultiPoly.linear_form(field, coeffs)
        qbars = restricted_pieces(e, [2, 3])
        k = _certify_linear_in_radical(qbars, h, DEFAULT_BUDGET)
        return k is not None
    return False
