"""Transcriptions of the singular-point exclusion arguments as linear
inequality systems, and their batch certification.

Everything is normalized by n = 1 (the divisor is D ~ nH and all
multiplicities are divided by n).  Variable glossary:

* ``nu``    order of the divisor along the exceptional quadric
* ``mu``    multiplicity along the non-log-canonical centre S
* ``gamma`` multiplicity along the hyperplane section through S (case 1)
* ``a``     multiplicity of the special component split off on restriction
* ``mu_S``, ``beta``  multiplicities along S before/after its blow-up
* ``m``     degree coefficient of the residual divisor (case 2), m = 1 - a
* ``d_S``   degree of the hypersurface cutting S on the quadric
* ``t``     multiplicity at the point of the auxiliary intersection cycle

Derived steps of the source argument are entered as ``claim`` relations to
be audited, never as axioms; the known gap (the steps needing nu > n) is
surfaced by ``certify`` and closed only by the flagged auxiliary mu <= nu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chains import chain_bound
from .ineq import FMCertificate, IneqSystem, certify

CASE_IDS = ("divisorial", "case1-general", "case1-special", "case2")

MIN_M = 9  # all three chain caps are valid from here on


@dataclass
class CaseSystem:
    case_id: str
    M: int
    include_auxiliary: bool
    branches: list[IneqSystem]

    def to_json(self) -> dict:
        return {
            "case": self.case_id,
            "M": self.M,
            "include_auxiliary": self.include_auxiliary,
            "branches": [b.to_json() for b in self.branches],
        }


def _preamble(s: IneqSystem, with_gamma: bool) -> None:
    s.add({"mu": 1}, ">", 1, "mu>n", "axiom",
          "multiplicity along a non-log-canonical centre exceeds n")
    s.add({"mu": 1, "nu": -2}, "<=", 0, "mu<=2nu", "axiom",
          "restriction of the divisor to the exceptional quadric")
    s.add({"nu": 1}, "<=", Fraction(4, 3), "nu<=4/3", "axiom",
          "point multiplicity cap 8/3 for the divisor, halved at the quadric point")
    if with_gamma:
        s.add({"gamma": 3, "mu": -2, "nu": 1}, ">=", 0, "3gamma>=2mu-nu", "axiom",
              "secant-line count on the exceptional quadric")


def _auxiliary(s: IneqSystem) -> None:
    s.add({"mu": 1, "nu": -1}, "<=", 0, "mu<=nu", "auxiliary",
          "not stated in the source argument; closes the nu>n gap")


def build_case(case_id: str, M: int, include_auxiliary: bool = True) -> CaseSystem:
    """Transcribe one exclusion case at parameter M (n normalized to 1)."""
    if case_id not in CASE_IDS:
        raise ValueError(f"unknown case id {case_id!r}")
    if M < MIN_M:
        raise ValueError(f"the multiplicity caps need M >= {MIN_M}")
    builder = {
        "divisorial": _build_divisorial,
        "case1-general": _build_case1_general,
        "case1-special": _build_case1_special,
        "case2": _build_case2,
    }[case_id]
    return CaseSystem(case_id, M, include_auxiliary, builder(M, include_auxiliary))


def _build_divisorial(M: int, include_auxiliary: bool) -> list[IneqSystem]:
    branches = []
    for branch, ds_rel in (("d_S=1", ("=", 1)), ("d_S>=2", (">=", 2))):
        s = IneqSystem(["nu", "mu", "d_S", "t"], name=f"divisorial[{branch}]")
        _preamble(s, with_gamma=False)
        op, val = ds_rel
        s.add({"d_S": 1}, op, val, f"d_S{op}{val}", "axiom",
              "integral degree of the divisor cut on the quadric")
        s.add({"nu": 1, "d_S": -1}, ">", 0, "nu>d_S", "axiom",
              "the restricted divisor contains the degree-d_S cut")
        s.add({"t": 1, "nu": -2, "mu": -2}, ">=", 0, "t>=2nu+2mu", "axiom",
              "multiplicity of the intersection with the hyperplane section")
        s.add({"t": 1}, "<=", 4, "t<=4", "cap",
              "codimension-2 chain cap 4/M at degree M")
        s.add({"t": 1}, ">", 4, "t>4", "claim",
              "the argument's displayed strict bound")
        if include_auxiliary:
            _auxiliary(s)
        branches.append(s)
    return branches


def _build_case1_general(M: int, include_auxiliary: bool) -> list[IneqSystem]:
    s = IneqSystem(["nu", "mu", "gamma", "a", "mu_S", "beta"], name="case1-general")
    _preamble(s, with_gamma=True)
    s.add({"a": 1}, ">=", 0, "a>=0", "axiom", "component multiplicity is non-negative")
    s.add({"beta": 1}, ">=", 0, "beta>=0", "axiom", "multiplicity is non-negative")
    s.add({"mu_S": 1, "beta": -1}, ">=", 0, "mu_S>=beta", "axiom",
          "strict transforms only lower multiplicities")
    s.add({"mu_S": 2, "nu": -1, "a": -1}, "<=", 0, "2mu_S<=nu+a", "axiom",
          "degree cap for containing S, cut by degree d_S >= 2")
    s.add({"mu_S": 1, "beta": 1, "a": 1}, ">", 2, "mu_S+beta+a>2", "axiom",
          "blow-up of S: general position form of the adjunction bound")
    s.add({"nu": 2, "a": 2}, "<=", 3, "2(nu+a)<=3", "cap",
          "hyperplane-section chain cap 3/M at degree M")
    s.add({"mu_S": 2, "a": 1}, ">", 2, "2mu_S+a>2", "claim",
          "first derived step")
    s.add({"nu": 1, "a": 2}, ">", 2, "nu+2a>2", "claim",
          "second derived step")
    s.add({"nu": 1}, ">", 1, "nu>1", "claim",
          "the step 'greater than 3n' needs nu > n")
    s.add({"nu": 2, "a": 2}, ">", 3, "2(nu+a)>3", "claim",
          "multiplicity of the restricted divisor exceeds 3n")
    if include_auxiliary:
        _auxiliary(s)
    return [s]


def _build_case1_special(M: int, include_auxiliary: bool) -> list[IneqSystem]:
    s = IneqSystem(["nu", "mu", "gamma", "a", "mu_S", "beta"], name="case1-special")
    _preamble(s, with_gamma=True)
    s.add({"a": 1}, ">=", 0, "a>=0", "axiom", "component multiplicity is non-negative")
    s.add({"beta": 1}, ">=", 0, "beta>=0", "axiom", "multiplicity is non-negative")
    s.add({"mu_S": 1, "beta": -1}, ">=", 0, "mu_S>=beta", "axiom",
          "strict transforms only lower multiplicities")
    s.add({"mu_S": 1, "beta": 1, "a": 2}, ">", 2, "mu_S+beta+2a>2", "axiom",
          "blow-up of S: special position form of the adjunction bound")
    s.add({"mu_S": 2, "beta": 2, "nu": -1, "a": -1}, "<=", 0, "2mu_S+2beta<=nu+a", "axiom",
          "restriction to the hyperplane section contains S with multiplicity mu_S+beta")
    s.add({"nu": 2, "a": 2}, "<=", 3, "2(nu+a)<=3", "cap",
          "hyperplane-section chain cap 3/M at degree M")
    s.add({"nu": 1, "a": 5}, ">", 4, "nu+5a>4", "claim", "first derived step")
    s.add({"nu": 5, "a": 5}, ">", 8, "5(nu+a)>8", "claim",
          "second derived step; needs nu > n")
    if include_auxiliary:
        _auxiliary(s)
    return [s]


def _build_case2(M: int, include_auxiliary: bool) -> list[IneqSystem]:
    s = IneqSystem(["nu", "mu", "a", "m", "t"], name="case2")
    _preamble(s, with_gamma=False)
    s.add({"a": 1}, ">=", 0, "a>=0", "axiom", "component multiplicity is non-negative")
    s.add({"nu": 1, "a": -1}, ">=", 0, "nu>=a", "axiom",
          "the residual strict transform has non-negative exceptional order")
    s.add({"m": 1, "a": 1}, "=", 1, "m=1-a", "axiom",
          "degree bookkeeping for the residual divisor")
    s.add({"mu": 1, "a": -1, "m": -1}, ">", 0, "mu-a>m", "axiom",
          "multiplicity of the residual divisor along S")
    s.add({"t": 1, "nu": -2, "mu": -2, "a": 4}, ">=", 0, "t>=2(nu-a)+2(mu-a)", "axiom",
          "multiplicity of the intersection with the codim-2 section")
    s.add({"t": 1, "m": -4}, "<=", 0, "t<=4m", "cap",
          "codim-2 section chain cap 4/M at degree mM")
    s.add({"t": 1, "m": -4}, ">", 0, "t>4m", "claim",
          "the displayed strict bound; needs nu >= n")
    if include_auxiliary:
        _auxiliary(s)
    return [s]


@dataclass
class CaseCertificate:
    case: CaseSystem
    branch_certificates: list[FMCertificate]

    @property
    def infeasible(self) -> bool:
        return all(c.verdict in ("infeasible", "implication-gap")
                   and c.contradiction is not None
                   for c in self.branch_certificates)

    @property
    def verdict(self) -> str:
        if not self.infeasible:
            return "feasible-with-witness"
        if any(c.verdict == "implication-gap" for c in self.branch_certificates):
            return "implication-gap"
        return "infeasible"

    def gaps(self) -> list[dict]:
        return [g for c in self.branch_certificates for g in c.gaps]

    def to_json(self) -> dict:
        return {
            "case": self.case.case_id,
            "M": self.case.M,
            "verdict": self.verdict,
            "gaps": self.gaps(),
            "branches": [c.to_json() for c in self.branch_certificates],
        }


def certify_case(case: CaseSystem) -> CaseCertificate:
    return CaseCertificate(case, [certify(branch) for branch in case.branches])


def caps_valid(M: int) -> dict:
    """Cross-check with the chain module that every cap used above holds."""
    return {
        "divisorial_and_case2": str(chain_bound(M, "i")) + " <= " + str(Fraction(4, M)),
        "variant_i_ok": chain_bound(M, "i") <= Fraction(4, M),
        "variant_ii_ok": chain_bound(M, "ii") <= Fraction(3, M),
        "variant_iii_ok": chain_bound(M, "iii") <= Fraction(4, M),
    }


def replay_all(m_range, include_auxiliary: bool = True) -> dict:
    """Certify all four cases for each M; gaps are reported, never patched
    silently."""
    out: dict = {"cases": {}, "caps": {}, "all_infeasible": True}
    for M in m_range:
        caps = caps_valid(M)
        out["caps"][str(M)] = caps
        if not (caps["variant_i_ok"] and caps["variant_ii_ok"] and caps["variant_iii_ok"]):
            raise ValueError(f"chain caps do not hold at M={M}")
        per_case = {}
        for cid in CASE_IDS:
            cert = certify_case(build_case(cid, M, include_auxiliary))
            per_case[cid] = cert.to_json()
            if not cert.infeasible:
                out["all_infeasible"] = False
        out["cases"][str(M)] = per_case
    return out
