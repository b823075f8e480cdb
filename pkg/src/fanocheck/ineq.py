"""Linear inequality systems over exact rationals and Fourier-Motzkin
elimination with replayable certificates.

Relations carry roles: ``axiom`` (transcribed hypotheses), ``cap`` (the
multiplicity bounds), ``claim`` (derived steps entered to be audited, not
assumed), ``auxiliary`` (added assumptions, always flagged).  Infeasibility
certificates store the non-negative combination of original relations that
collapses to a contradictory ground relation; ``replay`` recomputes that
combination from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

ROLES = ("axiom", "cap", "claim", "auxiliary")
OPS = ("<", "<=", "=", ">", ">=")


@dataclass
class Relation:
    coeffs: dict[str, Fraction]
    op: str
    rhs: Fraction
    label: str
    role: str = "axiom"
    provenance: str = ""

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown relation operator {self.op!r}")
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        self.coeffs = {v: Fraction(c) for v, c in self.coeffs.items() if Fraction(c) != 0}
        self.rhs = Fraction(self.rhs)

    def negated(self) -> "Relation":
        """The negation (equalities negate to 'differs', not supported)."""
        flip = {"<": ">=", "<=": ">", ">": "<=", ">=": "<"}
        if self.op == "=":
            raise ValueError("cannot negate an equality into one inequality")
        return Relation(dict(self.coeffs), flip[self.op], self.rhs,
                        f"not({self.label})", self.role, self.provenance)

    def substitute(self, point: dict[str, Fraction]) -> bool:
        lhs = sum((c * point.get(v, Fraction(0)) for v, c in self.coeffs.items()),
                  Fraction(0))
        return {"<": lhs < self.rhs, "<=": lhs <= self.rhs, "=": lhs == self.rhs,
                ">": lhs > self.rhs, ">=": lhs >= self.rhs}[self.op]

    def pretty(self) -> str:
        terms = " + ".join(
            (f"{c}*{v}" if c != 1 else v)
            for v, c in sorted(self.coeffs.items())) or "0"
        return f"{terms} {self.op} {self.rhs}"

    def to_json(self) -> dict:
        return {"label": self.label, "relation": self.pretty(), "role": self.role,
                "provenance": self.provenance}


@dataclass
class IneqSystem:
    variables: list[str]
    relations: list[Relation] = dc_field(default_factory=list)
    name: str = ""
    normalization: str = "all multiplicities and degrees divided by n (n = 1)"

    def __post_init__(self):
        for r in self.relations:
            missing = set(r.coeffs) - set(self.variables)
            if missing:
                raise ValueError(f"relation {r.label} uses unknown variables {missing}")

    def add(self, coeffs: dict, op: str, rhs, label: str, role: str = "axiom",
            provenance: str = "") -> None:
        rel = Relation({v: Fraction(c) for v, c in coeffs.items()}, op, Fraction(rhs),
                       label, role, provenance)
        missing = set(rel.coeffs) - set(self.variables)
        if missing:
            raise ValueError(f"relation {label} uses unknown variables {missing}")
        self.relations.append(rel)

    def by_role(self, *roles: str) -> list[Relation]:
        return [r for r in self.relations if r.role in roles]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "variables": self.variables,
            "normalization": self.normalization,
            "relations": [r.to_json() for r in self.relations],
        }


# internal normal form: coeffs . x <= rhs (strict flag), with lineage over
# the original relation list: lineage[i] = multiplier of original i
@dataclass
class _Row:
    coeffs: dict[str, Fraction]
    rhs: Fraction
    strict: bool
    lineage: dict[int, Fraction]


def _rows_of(relations: list[Relation]) -> list[_Row]:
    rows = []
    for i, r in enumerate(relations):
        c, b = r.coeffs, r.rhs
        neg = {v: -x for v, x in c.items()}
        if r.op in ("<", "<="):
            rows.append(_Row(dict(c), b, r.op == "<", {i: Fraction(1)}))
        elif r.op in (">", ">="):
            rows.append(_Row(neg, -b, r.op == ">", {i: Fraction(-1)}))
        else:  # equality: two non-strict rows
            rows.append(_Row(dict(c), b, False, {i: Fraction(1)}))
            rows.append(_Row(neg, -b, False, {i: Fraction(-1)}))
    return rows


def _combine(a: _Row, b: _Row, ca: Fraction, cb: Fraction) -> _Row:
    coeffs: dict[str, Fraction] = {}
    for v, x in a.coeffs.items():
        coeffs[v] = coeffs.get(v, Fraction(0)) + ca * x
    for v, x in b.coeffs.items():
        coeffs[v] = coeffs.get(v, Fraction(0)) + cb * x
    coeffs = {v: x for v, x in coeffs.items() if x != 0}
    lineage: dict[int, Fraction] = dict()
    for i, m in a.lineage.items():
        lineage[i] = lineage.get(i, Fraction(0)) + ca * m
    for i, m in b.lineage.items():
        lineage[i] = lineage.get(i, Fraction(0)) + cb * m
    return _Row(coeffs, ca * a.rhs + cb * b.rhs, a.strict or b.strict, lineage)


def _dedup(rows: list[_Row]) -> list[_Row]:
    seen = {}
    for row in rows:
        key = (tuple(sorted(row.coeffs.items())), row.rhs, row.strict)
        if key not in seen:
            seen[key] = row
    return list(seen.values())


@dataclass
class FMCertificate:
    verdict: str  # infeasible | feasible-with-witness | implication-gap
    elimination_order: list[str]
    contradiction: dict | None = None   # lineage + ground relation
    witness: dict | None = None
    gaps: list[dict] = dc_field(default_factory=list)
    branch_certificates: list["FMCertificate"] | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "elimination_order": self.elimination_order,
            "contradiction": self.contradiction,
            "witness": self.witness,
            "gaps": self.gaps,
        }
        if self.branch_certificates is not None:
            out["branches"] = [c.to_json() for c in self.branch_certificates]
        return out


def fourier_motzkin(relations: list[Relation], variables: list[str]):
    """Eliminate all variables.  Returns (contradiction_row | None, stages).

    ``stages`` holds, per elimination step, the variable and the surviving
    rows (used for witness back-substitution).
    """
    rows = _rows_of(relations)
    stages: list[tuple[str, list[_Row]]] = []
    for var in variables:
        stages.append((var, rows))
        pos = [r for r in rows if r.coeffs.get(var, 0) > 0]
        neg = [r for r in rows if r.coeffs.get(var, 0) < 0]
        none = [r for r in rows if var not in r.coeffs]
        fresh = list(none)
        for a in pos:
            for b in neg:
                fresh.append(_combine(a, b, 1 / a.coeffs[var], -1 / b.coeffs[var]))
        rows = _dedup(fresh)
    for row in rows:
        if row.coeffs:
            raise AssertionError("elimination left a variable")
        if row.rhs < 0 or (row.rhs == 0 and row.strict):
            return row, stages
    stages.append(("", rows))
    return None, stages


def _witness_from_stages(stages, variables: list[str]) -> dict[str, Fraction]:
    point: dict[str, Fraction] = {}
    for var, rows in reversed(stages[:len(variables)]):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for r in rows:
            a = r.coeffs.get(var, Fraction(0))
            if a == 0:
                continue
            rest = sum((c * point[v] for v, c in r.coeffs.items() if v != var),
                       Fraction(0))
            bound = (r.rhs - rest) / a
            if a > 0:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_strict = bound, r.strict
            else:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_strict = bound, r.strict
        if lo is None and hi is None:
            point[var] = Fraction(0)
        elif lo is None:
            point[var] = hi - 1 if hi_strict else hi
        elif hi is None:
            point[var] = lo + 1 if lo_strict else lo
        else:
            point[var] = (lo + hi) / 2
    return point


def check_feasibility(relations: list[Relation], variables: list[str]) -> FMCertificate:
    """Pure feasibility of a relation list (no role logic, no claims audit)."""
    contradiction, stages = fourier_motzkin(relations, variables)
    if contradiction is not None:
        ground = f"0 {'<' if contradiction.strict else '<='} {contradiction.rhs}"
        cert = FMCertificate(
            "infeasible", list(variables),
            contradiction={
                "ground_relation": ground,
                "lineage": {relations[i].label: str(m)
                            for i, m in sorted(contradiction.lineage.items())},
            })
        if not replay_contradiction(relations, contradiction.lineage):
            raise AssertionError("certificate failed to replay")
        return cert
    point = _witness_from_stages(stages, variables)
    bad = [r.label for r in relations if not r.substitute(point)]
    if bad:
        raise AssertionError(f"witness violates {bad}")
    return FMCertificate(
        "feasible-with-witness", list(variables),
        witness={v: str(point.get(v, Fraction(0))) for v in variables})


def replay_contradiction(relations: list[Relation], lineage: dict[int, Fraction]) -> bool:
    """Recombine original relations with the certificate multipliers and
    verify the result is a contradictory ground relation."""
    coeffs: dict[str, Fraction] = {}
    rhs = Fraction(0)
    strict = False
    for i, m in lineage.items():
        rel = relations[i]
        if m == 0:
            continue
        # multiplier sign must match the relation orientation; equalities
        # may be scaled by either sign
        if rel.op in ("<", "<=") and m < 0:
            return False
        if rel.op in (">", ">=") and m > 0:
            return False
        for v, c in rel.coeffs.items():
            coeffs[v] = coeffs.get(v, Fraction(0)) + m * c
        rhs += m * rel.rhs
        if rel.op in ("<", ">"):
            strict = True
    coeffs = {v: c for v, c in coeffs.items() if c != 0}
    if coeffs:
        return False
    return rhs < 0 or (rhs == 0 and strict)


def certify(system: IneqSystem, audit_roles: tuple = ("axiom", "cap")) -> FMCertificate:
    """Full certification: audit each claim in order, then decide feasibility.

    A claim is audited against the relations of ``audit_roles`` plus all
    prior claims: it is implied iff adding its negation is infeasible.
    Unimplied claims are recorded as gaps, noting whether the flagged
    auxiliary relations close them.  The final verdict uses every relation:
    ``infeasible`` when the stated relations contradict and every gap (if
    any) is closed by a declared auxiliary, ``implication-gap`` when the
    contradiction leans on an unjustified step, ``feasible-with-witness``
    otherwise.
    """
    if not system.relations:
        raise ValueError("empty system")
    gaps = []
    base = system.by_role(*audit_roles)
    auxiliaries = system.by_role("auxiliary")
    prior: list[Relation] = []
    for claim in system.by_role("claim"):
        probe = base + prior + [claim.negated()]
        res = check_feasibility(probe, system.variables)
        if res.verdict != "infeasible":
            closed = None
            if auxiliaries:
                probe_aux = base + auxiliaries + prior + [claim.negated()]
                res_aux = check_feasibility(probe_aux, system.variables)
                closed = [a.label for a in auxiliaries] if res_aux.verdict == "infeasible" else None
            gaps.append({
                "claim": claim.label,
                "relation": claim.pretty(),
                "free_point": res.witness,
                "closed_by_auxiliary": closed,
            })
        prior.append(claim)
    full = check_feasibility(system.relations, system.variables)
    if full.verdict == "infeasible" and any(g["closed_by_auxiliary"] is None for g in gaps):
        return FMCertificate("implication-gap", full.elimination_order,
                             contradiction=full.contradiction, gaps=gaps)
    full.gaps = gaps
    return full
