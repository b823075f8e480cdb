"""Seeded randomized (or exhaustive) surveys of condition failures.

A survey draws local expansions with uniformly random pieces, runs a chosen
set of condition checks, and tabulates failures.  Samples are independent
given derived seeds (seed + index), so reports are byte-reproducible.  For
rank-threshold conditions over tiny coefficient spaces the sweep can be
exhaustive instead, which is what the enumeration oracles compare against.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .conditions import DEFAULT_THRESHOLDS, check_R1, check_R2, check_W1, check_W2
from .expansion import LocalExpansion, random_expansion
from .fields import Field
from .poly import MultiPoly, monomials_of_degree

RANK_CONDITIONS = {"W1": "nonsingular", "W2": "singular",
                   "R1.2": "nonsingular", "R2.2": "singular"}


@dataclass
class SurveyConfig:
    family: str
    M: int
    field: Field
    samples: int
    seed: int
    conditions: tuple = ("W1",)
    thresholds: dict = dc_field(default_factory=dict)
    mode: str = "random"  # random | exhaustive
    battery_options: dict = dc_field(default_factory=dict)

    def threshold(self, cid: str) -> int:
        return self.thresholds.get(cid, DEFAULT_THRESHOLDS.get(cid, 0))


def _run_condition(cid: str, e: LocalExpansion, cfg: SurveyConfig, sample_seed: int):
    if cid == "W1":
        return [check_W1(e, cfg.threshold("W1"))]
    if cid == "W2":
        return [check_W2(e, cfg.threshold("W2"))]
    if cid.startswith("R1"):
        reports = check_R1(e, seed=sample_seed, thresholds=cfg.thresholds,
                           **cfg.battery_options)
        return [r for r in reports if r.condition_id == cid]
    if cid.startswith("R2"):
        reports = check_R2(e, seed=sample_seed, thresholds=cfg.thresholds,
                           **cfg.battery_options)
        return [r for r in reports if r.condition_id == cid]
    raise ValueError(f"unknown condition {cid!r}")


def _point_kind_for(conditions) -> str:
    kinds = set()
    for cid in conditions:
        if cid in ("W1",) or cid.startswith("R1"):
            kinds.add("nonsingular")
        else:
            kinds.add("singular")
    if len(kinds) != 1:
        raise ValueError("one survey draws one point kind; split the conditions")
    return kinds.pop()


def survey(cfg: SurveyConfig) -> dict:
    """Run the survey and return the (JSON-ready) frequency table."""
    if not cfg.field.characteristic:
        raise ValueError("surveys need a prime field")
    if cfg.mode == "exhaustive":
        return _survey_exhaustive(cfg)
    point_kind = _point_kind_for(cfg.conditions)
    counts = {cid: {"failures": 0, "checked": 0, "verdicts": {}} for cid in cfg.conditions}
    for i in range(cfg.samples):
        rng = random.Random(cfg.seed + i)
        e = random_expansion(cfg.field, cfg.M, cfg.family, point_kind, rng)
        for cid in cfg.conditions:
            for rep in _run_condition(cid, e, cfg, cfg.seed + i):
                slot = counts[cid]
                slot["checked"] += 1
                slot["verdicts"][rep.verdict] = slot["verdicts"].get(rep.verdict, 0) + 1
                if rep.verdict == "fail":
                    slot["failures"] += 1
    return _report(cfg, counts, total=cfg.samples)


def _survey_exhaustive(cfg: SurveyConfig) -> dict:
    """Sweep every coefficient tuple of the piece a rank condition reads.

    Only the rank-threshold conditions have small enough input spaces; the
    linear piece of W1 is pinned to the first coordinate (failure counts for
    W1 are defined with the linear form fixed).
    """
    bad = [cid for cid in cfg.conditions if cid not in RANK_CONDITIONS]
    if bad:
        raise ValueError(f"exhaustive mode supports rank conditions only, not {bad}")
    point_kind = _point_kind_for(cfg.conditions)
    field = cfg.field
    p = field.characteristic
    M = cfg.M
    monoms = monomials_of_degree(M, 2)
    space = p ** len(monoms)
    counts = {cid: {"failures": 0, "checked": 0, "verdicts": {}} for cid in cfg.conditions}
    q1 = MultiPoly.variable(field, M, 0) if point_kind == "nonsingular" else None
    for coeffs in itertools.product(range(p), repeat=len(monoms)):
        terms = {m: field.from_int(c) for m, c in zip(monoms, coeffs) if c}
        q2 = MultiPoly(field, M, terms)
        pieces = {2: q2}
        if q1 is not None:
            pieces[1] = q1
        e = LocalExpansion(M=M, field=field, family=cfg.family, pieces=pieces,
                           source="exhaustive sweep")
        for cid in cfg.conditions:
            rep = _run_condition(cid, e, cfg, cfg.seed)[0]
            slot = counts[cid]
            slot["checked"] += 1
            slot["verdicts"][rep.verdict] = slot["verdicts"].get(rep.verdict, 0) + 1
            if rep.verdict == "fail":
                slot["failures"] += 1
    return _report(cfg, counts, total=space)


def _report(cfg: SurveyConfig, counts: dict, total: int) -> dict:
    table = {}
    for cid, slot in counts.items():
        table[cid] = {
            "failures": slot["failures"],
            "checked": slot["checked"],
            "verdicts": dict(sorted(slot["verdicts"].items())),
            "failure_frequency": (f"{slot['failures']}/{slot['checked']}"
                                  if slot["checked"] else "0/0"),
        }
    return {
        "family": cfg.family,
        "M": cfg.M,
        "field": cfg.field.spec.to_json(),
        "mode": cfg.mode,
        "samples": total,
        "seed": cfg.seed,
        "thresholds": {cid: cfg.threshold(cid) for cid in cfg.conditions},
        "conditions": list(cfg.conditions),
        "table": table,
    }
