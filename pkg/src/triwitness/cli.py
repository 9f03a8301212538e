"""Command-line front end: sweeps, thresholds, optimization, verification.

Subcommands map one-to-one onto the things the library can produce:

* ``sweep``       witness and entropy curves on a coupling grid (CSV/JSON)
* ``thresholds``  the double-violation window of a witness family
* ``optimize``    multi-start search for the qubit maxima
* ``randomness``  entropy report rows on a grid or at one angle
* ``table``       the full 64-entry joint distribution as JSON
* ``verify``      simulation-versus-closed-form gate; exit 1 on failure

Angles are radians everywhere. All numeric output is rounded to 12
significant digits, which makes repeated runs byte-identical.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import pi
from pathlib import Path

import numpy as np

from . import randomness as rnd
from . import witness as wit
from .explore import OptimizeConfig, find_violation_window, optimize_settings
from .scenario import (
    ProbTable,
    Scenario,
    build_table,
    canonical_w1_scenario,
    canonical_w2_scenario,
    p_bob_given_z,
    p_bob_plus_closed_form,
    p_charlie,
    p_charlie_plus_closed_form,
)

__all__ = ["main", "run_sweep", "run_verify", "sweep_row", "SWEEP_COLUMNS"]

SWEEP_COLUMNS = (
    "epsilon",
    "w1_ab",
    "w1_ac",
    "w2_ab",
    "w2_ac",
    "w1_ab_z0",
    "w2_ab_z0",
    "h_bob_w1",
    "h_bob_w2",
    "h_charlie",
    "hmin_global_exact",
    "hmin_global_bound",
)


def _sci(v: float) -> str:
    return f"{v:.11e}"


def _round12(v: float) -> float:
    return float(_sci(v))


def _round_values(d: dict) -> dict:
    return {k: (_round12(v) if isinstance(v, float) else v) for k, v in d.items()}


def sweep_row(table: ProbTable) -> dict:
    """All sweep columns evaluated on one simulated table."""
    w1_z0 = wit.w1_given_z(table, 0).value
    w2_z0 = wit.w2_given_z(table, 0).value
    return {
        "epsilon": table.eps,
        "w1_ab": wit.w1(table, "ab").value,
        "w1_ac": wit.w1(table, "ac").value,
        "w2_ab": wit.w2(table, "ab").value,
        "w2_ac": wit.w2(table, "ac").value,
        "w1_ab_z0": w1_z0,
        "w2_ab_z0": w2_z0,
        "h_bob_w1": rnd.h_from_w1(w1_z0),
        "h_bob_w2": rnd.h_from_w2(w2_z0),
        "h_charlie": rnd.h_from_w1(wit.w1(table, "ac").value),
        "hmin_global_exact": rnd.hmin_global_exact(table),
        "hmin_global_bound": rnd.hmin_global_bound(table),
    }


def run_sweep(scenario: Scenario, eps_start: float, eps_end: float, steps: int) -> list[dict]:
    """One sweep row per grid point, inclusive endpoints, uniform spacing."""
    grid = np.linspace(eps_start, eps_end, steps)
    return [sweep_row(build_table(scenario, float(e))) for e in grid]


def _write_rows(rows: list[dict], columns: tuple, fmt: str, out) -> None:
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_sci(row[c]) if isinstance(row[c], float) else str(row[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps([_round_values(r) for r in rows], indent=2) + "\n"
    _emit(text, out)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_scenario(args) -> Scenario:
    if getattr(args, "scenario_file", None):
        return Scenario.load(args.scenario_file)
    return canonical_w1_scenario() if args.scenario == "w1" else canonical_w2_scenario()


# -- verify ---------------------------------------------------------------


def _check(name: str, epsilon: float, expected: float, actual: float, tolerance: float) -> dict:
    err = abs(actual - expected)
    return {
        "check_name": name,
        "epsilon": _round12(float(epsilon)),
        "expected": _round12(float(expected)),
        "actual": _round12(float(actual)),
        "abs_error": _round12(float(err)),
        "pass": bool(err <= tolerance),
    }


def _worst(name: str, grid, expected_fn, actual_fn, tolerance: float) -> dict:
    """One report row carrying the worst grid point of a curve comparison."""
    errs = [(abs(actual_fn(e) - expected_fn(e)), e) for e in grid]
    err, eps = max(errs)
    return _check(name, eps, expected_fn(eps), actual_fn(eps), tolerance)


def run_verify(grid_steps: int = 101, tolerance: float = 1e-9) -> tuple[list[dict], bool]:
    """Compare the simulation against every analytic curve and invariant.

    Returns (report rows, all passed). Each row records the worst grid
    point of one named check. The factorized entropy expression is checked
    for dominance only on the determinant scenario; on the linear-witness
    scenario it is known to exceed the exact min-entropy in a window of
    coupling angles, which is reported informationally per scenario in the
    row named ``entropy_bound_excess_w1_scenario_info``.
    """
    grid = np.linspace(0.0, pi, grid_steps)
    report: list[dict] = []

    tables = {}
    for label, scn in (("w1", canonical_w1_scenario()), ("w2", canonical_w2_scenario())):
        tables[label] = {float(e): build_table(scn, float(e)) for e in grid}

    # the six analytic witness curves (z-conditioned ones for both z)
    curve_specs = [
        ("w1", "closed_form[w1_ab]", "w1_ab", lambda t: wit.w1(t, "ab").value),
        ("w1", "closed_form[w1_ac]", "w1_ac", lambda t: wit.w1(t, "ac").value),
        ("w2", "closed_form[w2_ab]", "w2_ab", lambda t: wit.w2(t, "ab").value),
        ("w2", "closed_form[w2_ac]", "w2_ac", lambda t: wit.w2(t, "ac").value),
    ]
    for z in (0, 1):
        curve_specs.append(("w1", f"closed_form[w1_ab_z{z}]", "w1_ab_z", lambda t, z=z: wit.w1_given_z(t, z).value))
        curve_specs.append(("w2", f"closed_form[w2_ab_z{z}]", "w2_ab_z", lambda t, z=z: wit.w2_given_z(t, z).value))
    for label, name, kind, sim in curve_specs:
        report.append(
            _worst(
                name,
                grid,
                lambda e, kind=kind: wit.closed_form(kind, e),
                lambda e, sim=sim, label=label: sim(tables[label][float(e)]),
                tolerance,
            )
        )

    # special points
    for name, eps, expected, actual in [
        ("special[w1_ab@0]", 0.0, wit.QUANTUM_BOUND_W1, wit.w1(tables["w1"][0.0], "ab").value),
        ("special[w1_ac@0]", 0.0, 0.0, wit.w1(tables["w1"][0.0], "ac").value),
        ("special[w2_ab@0]", 0.0, 1.0, wit.w2(tables["w2"][0.0], "ab").value),
        ("special[w2_ac@0]", 0.0, 0.0, wit.w2(tables["w2"][0.0], "ac").value),
    ]:
        report.append(_check(name, eps, expected, actual, tolerance))
    t_mid = build_table(canonical_w1_scenario(), pi / 2.0)
    report.append(
        _check("special[w1_ac@pi/2]", pi / 2.0, wit.QUANTUM_BOUND_W1, wit.w1(t_mid, "ac").value, tolerance)
    )

    # independent Bloch-algebra oracle for every marginal probability
    for label in ("w1", "w2"):
        scn = tables[label][0.0].scenario

        def bob_err(e, label=label, scn=scn):
            t = tables[label][float(e)]
            return max(
                abs(t.p_bob_plus_given_z(x, y, z) - p_bob_plus_closed_form(scn, float(e), x, y, z))
                for x in range(4)
                for y in range(2)
                for z in range(2)
            )

        def charlie_err(e, label=label, scn=scn):
            t = tables[label][float(e)]
            return max(
                abs(t.p_charlie_plus(x, z) - p_charlie_plus_closed_form(scn, float(e), x, z))
                for x in range(4)
                for z in range(2)
            )

        report.append(_worst(f"bloch_oracle_bob[{label}_scenario]", grid, lambda e: 0.0, bob_err, tolerance))
        report.append(_worst(f"bloch_oracle_charlie[{label}_scenario]", grid, lambda e: 0.0, charlie_err, tolerance))

    # table invariants
    for label in ("w1", "w2"):

        def norm_err(e, label=label):
            return float(np.abs(tables[label][float(e)].probs.sum(axis=(3, 4)) - 1.0).max())

        def nosig_err(e, label=label):
            p = tables[label][float(e)].probs
            return float(np.abs(p[:, 0].sum(axis=2) - p[:, 1].sum(axis=2)).max())

        def marg_err(e, label=label):
            t = tables[label][float(e)]
            s = t.scenario
            worst = 0.0
            for x in range(4):
                for z in range(2):
                    worst = max(worst, np.abs(t.charlie_marginal(x, z) - p_charlie(s, float(e), x, z)).max())
                    for y in range(2):
                        worst = max(
                            worst, np.abs(t.bob_marginal_given_z(x, y, z) - p_bob_given_z(s, float(e), x, y, z)).max()
                        )
            return worst

        report.append(_worst(f"table_normalization[{label}_scenario]", grid, lambda e: 0.0, norm_err, tolerance))
        report.append(_worst(f"no_signaling_to_charlie[{label}_scenario]", grid, lambda e: 0.0, nosig_err, tolerance))
        report.append(_worst(f"marginal_consistency[{label}_scenario]", grid, lambda e: 0.0, marg_err, tolerance))

    # z-independence of the conditioned witnesses
    report.append(
        _worst(
            "z_independence[w1_ab_z]",
            grid,
            lambda e: 0.0,
            lambda e: abs(wit.w1_given_z(tables["w1"][float(e)], 0).value - wit.w1_given_z(tables["w1"][float(e)], 1).value),
            tolerance,
        )
    )
    report.append(
        _worst(
            "z_independence[w2_ab_z]",
            grid,
            lambda e: 0.0,
            lambda e: abs(wit.w2_given_z(tables["w2"][float(e)], 0).value - wit.w2_given_z(tables["w2"][float(e)], 1).value),
            tolerance,
        )
    )

    # entropy bound dominance holds throughout the determinant scenario
    def bound_excess(label):
        def f(e):
            t = tables[label][float(e)]
            return max(0.0, rnd.hmin_global_bound(t) - rnd.hmin_global_exact(t))

        return f

    report.append(_worst("entropy_bound_dominance[w2_scenario]", grid, lambda e: 0.0, bound_excess("w2"), tolerance))
    # informational only: the known window where the factorized expression
    # exceeds the exact value on the linear-witness scenario (paper-formula
    # defect; see README). Always marked as passing.
    excess_row = _worst("entropy_bound_excess_w1_scenario_info", grid, lambda e: 0.0, bound_excess("w1"), np.inf)
    report.append(excess_row)

    passed = all(row["pass"] for row in report)
    return report, passed


# -- argument parsing ------------------------------------------------------


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", choices=("w1", "w2"), default="w1", help="canonical scenario family")
    p.add_argument("--scenario-file", help="JSON scenario document overriding --scenario")


def _add_range_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps-start", type=float, default=0.0, help="grid start, radians")
    p.add_argument("--eps-end", type=float, default=pi, help="grid end, radians")
    p.add_argument("--steps", type=int, default=101, help="number of grid points (>= 2)")


def _validate_range(parser: argparse.ArgumentParser, args) -> None:
    if not (0.0 <= args.eps_start < args.eps_end <= pi):
        parser.error(f"need 0 <= eps-start < eps-end <= pi, got [{args.eps_start}, {args.eps_end}]")
    if args.steps < 2:
        parser.error(f"steps must be >= 2, got {args.steps}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triwitness", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="witness/entropy curves over a coupling grid")
    _add_scenario_args(p)
    _add_range_args(p)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("thresholds", help="locate the double-violation window")
    p.add_argument("--scenario", choices=("w1", "w2"), default="w1")
    p.add_argument("--tol", type=float, default=1e-12, help="bisection interval tolerance")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("optimize", help="multi-start search for the qubit maxima")
    p.add_argument("--target", choices=("w1_ab", "w1_ac", "w2_ab", "w2_ac"), default="w1_ab")
    p.add_argument("--eps", type=float, default=0.0, help="coupling angle, radians")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9, help="simplex value tolerance")
    p.add_argument("--allow-mixed", action="store_true", help="let preparations be mixed states")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("randomness", help="entropy report at one angle or over a grid")
    _add_scenario_args(p)
    p.add_argument("--eps", type=float, help="single coupling angle (overrides the grid)")
    _add_range_args(p)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("table", help="dump the 64-entry joint distribution as JSON")
    _add_scenario_args(p)
    p.add_argument("--eps", type=float, required=True, help="coupling angle, radians")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("verify", help="simulation-versus-closed-form gate")
    p.add_argument("--steps", type=int, default=101, help="grid points (>= 2)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", help="write the JSON report here as well")
    return parser


# -- handlers --------------------------------------------------------------


def _cmd_sweep(parser, args) -> int:
    _validate_range(parser, args)
    scenario = _load_scenario(args)
    rows = run_sweep(scenario, args.eps_start, args.eps_end, args.steps)
    _write_rows(rows, SWEEP_COLUMNS, args.format, args.out)
    return 0


def _cmd_thresholds(parser, args) -> int:
    if args.tol <= 0:
        parser.error("tol must be positive")
    window = find_violation_window(args.scenario, tol=args.tol)
    mid = 0.5 * (window.lo + window.hi)
    scn = canonical_w1_scenario() if args.scenario == "w1" else canonical_w2_scenario()
    table = build_table(scn, mid)
    evaluator = wit.w1 if args.scenario == "w1" else wit.w2
    row = {
        "kind": window.kind,
        "lo": window.lo,
        "hi": window.hi,
        "midpoint": mid,
        "value_ab_mid": evaluator(table, "ab").value,
        "value_ac_mid": evaluator(table, "ac").value,
    }
    _write_rows([row], tuple(row), args.format, args.out)
    return 0


def _cmd_optimize(parser, args) -> int:
    if args.restarts < 1:
        parser.error("restarts must be >= 1")
    if args.tol <= 0:
        parser.error("tol must be positive")
    cfg = OptimizeConfig(
        target=args.target,
        eps=args.eps,
        restarts=args.restarts,
        seed=args.seed,
        tolerance=args.tol,
        allow_mixed=args.allow_mixed,
    )
    result = optimize_settings(cfg)
    summary = {
        "target": cfg.target,
        "epsilon": cfg.eps,
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "value": result.value,
        "converged": result.converged,
        "restart_index": result.restart_index,
        "evaluations": result.evaluations,
        "max_evaluated": result.max_evaluated,
    }
    if args.format == "csv":
        _write_rows([summary], tuple(summary), "csv", args.out)
    else:
        payload = dict(_round_values(summary))
        payload["scenario"] = result.scenario.to_dict()
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_randomness(parser, args) -> int:
    scenario = _load_scenario(args)
    if args.eps is not None:
        grid = [args.eps]
    else:
        _validate_range(parser, args)
        grid = [float(e) for e in np.linspace(args.eps_start, args.eps_end, args.steps)]
    rows = []
    for e in grid:
        report = rnd.entropy_report(build_table(scenario, e))
        row = {"epsilon": e}
        row.update({name: getattr(report, name) for name in report.__dataclass_fields__})
        rows.append(row)
    _write_rows(rows, tuple(rows[0]), args.format, args.out)
    return 0


def _cmd_table(parser, args) -> int:
    scenario = _load_scenario(args)
    table = build_table(scenario, args.eps)
    labels = {0: "+1", 1: "-1"}
    payload = {}
    for x in range(4):
        for y in range(2):
            for z in range(2):
                cell = {
                    f"b={labels[ib]},c={labels[ic]}": _round12(float(table.probs[x, y, z, ib, ic]))
                    for ib in range(2)
                    for ic in range(2)
                }
                payload[f"x={x >> 1}{x & 1},y={y},z={z}"] = cell
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_verify(parser, args) -> int:
    if args.steps < 2:
        parser.error("steps must be >= 2")
    if args.tol <= 0:
        parser.error("tol must be positive")
    report, passed = run_verify(grid_steps=args.steps, tolerance=args.tol)
    width = max(len(r["check_name"]) for r in report)
    for r in report:
        status = "PASS" if r["pass"] else "FAIL"
        print(f"{status}  {r['check_name']:<{width}}  |err|={r['abs_error']:.3e}  eps={r['epsilon']:.6f}")
    n_fail = sum(not r["pass"] for r in report)
    print(f"{'OK' if passed else 'FAILED'}: {len(report) - n_fail}/{len(report)} checks passed "
          f"(grid={args.steps}, tol={args.tol:g})")
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "thresholds": _cmd_thresholds,
        "optimize": _cmd_optimize,
        "randomness": _cmd_randomness,
        "table": _cmd_table,
        "verify": _cmd_verify,
    }
    return handlers[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
