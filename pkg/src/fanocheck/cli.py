"""Command-line interface: subcommand dispatch and deterministic reports.

Exit codes: 0 for pass/holds/expected-infeasible verdicts, 2 when a check
fails or an exclusion system turns out feasible, 1 for usage and input
errors.  Budget exhaustion is reported inside the report (verdict
``inconclusive``) with exit 0.  Reports are byte-identical for identical
configurations: all randomness is seed-derived and no timestamps appear.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bidegree import FibreSpaceSpec, condition_iii_value, dimension_gate, rigidity_threshold
from .bounds import BoundDomainError, bound_table
from .chains import build_chain, d2_ratio, mult_bound_prop32
from .conditions import check_R1, check_R2, check_W1, check_W2
from .dimension import DEFAULT_BUDGET
from .exclusion import CASE_IDS, build_case, certify_case, replay_all
from .expansion import expand_at_point
from .fields import Field, FieldError, FieldSpec
from .inputs import InputError, load_input
from .survey import SurveyConfig, survey

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 2


def _parse_field(text: str) -> Field:
    if text == "rational":
        return Field.rationals()
    if text.startswith("p:"):
        return Field.prime(int(text[2:]))
    raise FieldError(f"field must be 'rational' or 'p:<prime>', got {text!r}")


def _parse_thresholds(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for piece in text.split(","):
        key, _, val = piece.partition("=")
        if not val:
            raise InputError(f"bad threshold {piece!r}; use NAME=INT")
        out[key.strip()] = int(val)
    return out


def _emit(report: dict, args, status: int) -> int:
    payload = {
        "tool": {"name": "fanocheck", "version": __version__},
        **report,
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "text", False):
        sys.stdout.write(_render_text(payload))
    return status


def _render_text(payload: dict) -> str:
    lines = ["-" * 60]
    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}{k}.", obj[k])
        elif isinstance(obj, list):
            lines.append(f"{prefix[:-1]:<42} [{len(obj)} items]")
        else:
            lines.append(f"{prefix[:-1]:<42} {obj}")
    walk("", payload)
    lines.append("-" * 60)
    return "\n".join(lines) + "\n"


def _cmd_bounds(args) -> int:
    table = bound_table(args.M, args.family)
    return _emit({"command": "bounds", "config": {"M": args.M, "family": args.family},
                  "results": table}, args, EXIT_OK)


def _cmd_chain(args) -> int:
    chain = build_chain(args.M, args.variant)
    results = {
        "chain": chain.to_json(),
        "bound": str(chain.bound),
        "point_mult_bound": {k: str(v) for k, v in mult_bound_prop32(args.M, args.n).items()},
        "quadratic_divisor_ratio": {k: str(v) for k, v in d2_ratio(args.M).items()},
    }
    return _emit({"command": "chain",
                  "config": {"M": args.M, "variant": args.variant, "n": args.n},
                  "results": results}, args, EXIT_OK)


def _cmd_exclude(args) -> int:
    if args.case == "all":
        m_lo, m_hi = args.M, args.M_max if args.M_max else max(args.M, 30)
        rep = replay_all(range(m_lo, m_hi + 1), include_auxiliary=not args.no_auxiliary)
        status = EXIT_OK if rep["all_infeasible"] else EXIT_FAIL
        return _emit({"command": "exclude",
                      "config": {"case": "all", "M": m_lo, "M_max": m_hi,
                                 "auxiliary": not args.no_auxiliary},
                      "results": rep}, args, status)
    cert = certify_case(build_case(args.case, args.M, not args.no_auxiliary))
    status = EXIT_OK if cert.infeasible else EXIT_FAIL
    return _emit({"command": "exclude",
                  "config": {"case": args.case, "M": args.M,
                             "auxiliary": not args.no_auxiliary},
                  "results": cert.to_json()}, args, status)


def _cmd_fibre(args) -> int:
    results: dict = {"gate": dimension_gate(args.family, args.M, args.m)}
    if args.l is None:
        results["threshold"] = rigidity_threshold(args.family, args.M, args.m)
        holds = True
    else:
        value = condition_iii_value(FibreSpaceSpec(args.family, args.M, args.m, args.l))
        results["value"] = value
        results["threshold"] = rigidity_threshold(args.family, args.M, args.m)
        holds = value["holds"]
    status = EXIT_OK if holds else EXIT_FAIL
    return _emit({"command": "fibre",
                  "config": {"family": args.family, "M": args.M, "m": args.m, "l": args.l},
                  "results": results}, args, status)


def _cmd_survey(args) -> int:
    field = _parse_field(args.field)
    cfg = SurveyConfig(
        family=args.family, M=args.M, field=field, samples=args.samples,
        seed=args.seed, conditions=tuple(args.conditions.split(",")),
        thresholds=_parse_thresholds(args.thresholds), mode=args.mode)
    rep = survey(cfg)
    return _emit({"command": "survey", "config": {"seed": args.seed}, "results": rep},
                 args, EXIT_OK)


def _cmd_check(args) -> int:
    data = load_input(args.input)
    thresholds = _parse_thresholds(args.thresholds)
    affine = data.affine_chart()
    results = []
    any_fail = False
    any_inconclusive = False
    for idx, pt in enumerate(data.points):
        aff_pt = data.affine_point(pt)
        exp = expand_at_point(affine, aff_pt, M=data.M, family=data.family,
                              source=f"point {idx}, chart {data.chart}")
        if data.family == "double":
            reports = [check_W1(exp, thresholds.get("W1"))
                       if exp.point_kind == "nonsingular"
                       else check_W2(exp, thresholds.get("W2"))]
        elif exp.point_kind == "nonsingular":
            reports = check_R1(exp, sampled_hyperplanes=args.samples, seed=args.seed,
                               thresholds=thresholds, budget=args.budget)
        else:
            reports = check_R2(exp, subspace_samples=args.samples, seed=args.seed,
                               thresholds=thresholds, budget=args.budget)
        for rep in reports:
            rep.seed = args.seed
            if rep.verdict == "fail":
                any_fail = True
            if rep.verdict == "inconclusive":
                any_inconclusive = True
        results.append({
            "point": idx,
            "point_kind": exp.point_kind,
            "reports": [r.to_json() for r in reports],
        })
    status = EXIT_FAIL if any_fail else EXIT_OK
    report = {
        "command": "check",
        "config": {
            "input": args.input, "seed": args.seed, "budget": args.budget,
            "samples": args.samples, "thresholds": thresholds,
            "field": data.field.spec.to_json(), "family": data.family,
            "M": data.M, "chart": data.chart,
        },
        "results": results,
        "inconclusive": any_inconclusive,
    }
    return _emit(report, args, status)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fanocheck",
        description="Exact-arithmetic checks for Fano fibre-space numerics")
    ap.add_argument("--version", action="version", version=f"fanocheck {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--text", action="store_true", help="also render an aligned text table")

    p = sub.add_parser("bounds", help="exact codimension-count tables")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--family", choices=("double", "hypersurface"), required=True)
    common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("chain", help="multiplicity/degree chain bounds")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--variant", choices=("i", "ii", "iii"), required=True)
    p.add_argument("--n", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("exclude", help="linear-inequality exclusion certificates")
    p.add_argument("--case", choices=CASE_IDS + ("all",), required=True)
    p.add_argument("--M", type=int, default=10)
    p.add_argument("--M-max", type=int, dest="M_max")
    p.add_argument("--no-auxiliary", action="store_true",
                   help="omit the flagged auxiliary relation mu <= nu")
    common(p)
    p.set_defaults(func=_cmd_exclude)

    p = sub.add_parser("fibre", help="twistedness condition on product fibre spaces")
    p.add_argument("--family", choices=("double", "hypersurface"), required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int)
    common(p)
    p.set_defaults(func=_cmd_fibre)

    p = sub.add_parser("survey", help="seeded surveys of condition failures")
    p.add_argument("--family", choices=("double", "hypersurface"), required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--field", default="p:101", help="rational or p:<prime>")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conditions", default="W1", help="comma list, e.g. W1 or W2")
    p.add_argument("--thresholds", help="comma list NAME=INT, e.g. W2=3")
    p.add_argument("--mode", choices=("random", "exhaustive"), default="random")
    common(p)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("check", help="regularity battery on a polynomial file")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=12,
                   help="sampled hyperplanes/subspaces per condition")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--thresholds", help="comma list NAME=INT, e.g. R1.2=3,R2.2=4")
    common(p)
    p.set_defaults(func=_cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (InputError, FieldError, BoundDomainError, ValueError) as exc:
        sys.stderr.write(f"fanocheck: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
