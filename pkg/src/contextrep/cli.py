"""Command-line front end.

Subcommands
-----------
represent     counts file -> simplex vector + complex amplitudes (JSON)
simulate      counts file -> hidden-variable Monte Carlo vs target (JSON)
entanglement  joint counts file -> product/entangled report + joint vectors
scenario      built-in pipelines: animal-acts, vessels

Counts files are CSV (`label,count`) or JSON (`{"label": count}`); joint
counts are CSV (`row_label,col_label,count`) or JSON
(`{rows, cols, counts}`).  Format is picked by extension, falling back to
content sniffing.  All reports are JSON, embed the configuration that
produced them, and are byte-identical across runs with equal inputs.

Exit codes: 0 success, 2 unreadable or unparseable input, 3 semantic error
(invalid counts, mismatched labels, bad configuration).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .errors import ContextRepError, InvalidPhases, ParseError
from .hilbert import PhaseAssignment, build_complex_context
from .joint import (
    FLOAT_TOLERANCE,
    JointTable,
    build_joint_vectors,
    is_product,
    parse_joint_csv,
    parse_joint_json,
)
from .probability import (
    ContextId,
    CountTable,
    ProbabilityVector,
    Value,
    display_rounded,
    is_exact_value,
    parse_counts_csv,
    parse_counts_json,
    probabilities_from_counts,
)
from .scenarios import (
    VesselsConfig,
    animal_acts_tables,
    simulate_vessels,
    vessels_joint_table,
)
from .simplex import build_real_context, monte_carlo_measurement

DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class RunConfig:
    """Execution knobs embedded verbatim in every report."""

    tolerance: Optional[float] = None
    arithmetic: Optional[str] = None  # "exact" | "float" | None = table default
    seed: Optional[int] = None
    trials: Optional[int] = None
    phases: Optional[str] = None
    output: Optional[str] = None

    def __post_init__(self) -> None:
        if self.tolerance is not None and not (self.tolerance >= 0):
            raise ValueError(f"tolerance must be nonnegative, got {self.tolerance}")
        if self.trials is not None and self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.arithmetic not in (None, "exact", "float"):
            raise ValueError(f"arithmetic must be 'exact' or 'float', got {self.arithmetic!r}")

    def as_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "arithmetic": self.arithmetic,
            "seed": self.seed,
            "trials": self.trials,
            "phases": self.phases,
        }


def _value_entry(x: Value) -> dict:
    return {
        "value": float(x),
        "display": display_rounded(x),
        "exact": str(Fraction(x)) if is_exact_value(x) else None,
    }


def _vector_entries(p: ProbabilityVector) -> dict:
    return {label: _value_entry(x) for label, x in zip(p.outcomes.labels, p.probs)}


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _parse_counts_file(path: str) -> CountTable:
    text = _read_text(path)
    if path.endswith(".json") or (not path.endswith(".csv") and text.lstrip()[:1] == "{"):
        return parse_counts_json(text)
    return parse_counts_csv(text)


def _parse_joint_file(path: str) -> JointTable:
    text = _read_text(path)
    if path.endswith(".json") or (not path.endswith(".csv") and text.lstrip()[:1] == "{"):
        return parse_joint_json(text)
    return parse_joint_csv(text)


def _load_phases(path: str, labels: Sequence[str]) -> PhaseAssignment:
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid phases JSON: {exc.msg}", line=exc.lineno, column=exc.colno
        ) from None
    if not isinstance(data, dict):
        raise InvalidPhases("phases file must be a JSON object mapping labels to radians")
    return PhaseAssignment.from_mapping(data, labels)


def _context_for(path: str, measurement: str) -> ContextId:
    return ContextId(entity=Path(path).stem, state="observed", measurement=measurement)


def _table_dict(t: JointTable) -> dict:
    return {
        "rows": list(t.row_outcomes.labels),
        "cols": list(t.col_outcomes.labels),
        "counts": [list(r) for r in t.counts] if t.counts is not None else None,
        "probabilities": [[_value_entry(p) for p in row] for row in t.probs],
    }


def _apply_arithmetic(t: JointTable, cfg: RunConfig) -> JointTable:
    if cfg.arithmetic == "float" and t.is_exact:
        return JointTable(t.row_outcomes, t.col_outcomes, t.as_floats())
    return t


def cmd_represent(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    counts = _parse_counts_file(args.input)
    p = probabilities_from_counts(counts)
    ctx = _context_for(args.input, "outcome-counts")
    phases = None
    if cfg.phases is not None:
        phases = _load_phases(cfg.phases, counts.outcomes.labels)
    w = build_complex_context(p, ctx, phases=phases)
    return {
        "command": "represent",
        "config": cfg.as_dict(),
        "context": ctx.as_dict(),
        "counts": counts.as_mapping(),
        "total": counts.total,
        "real_vector": _vector_entries(p),
        "complex_vector": w.to_json_dict(),
        "moduli": {
            label: _value_entry(mod)
            for label, mod in zip(counts.outcomes.labels, w.moduli())
        },
        "born_probabilities": dict(zip(counts.outcomes.labels, w.probabilities())),
    }


def cmd_simulate(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    counts = _parse_counts_file(args.input)
    p = probabilities_from_counts(counts)
    ctx = _context_for(args.input, "outcome-counts")
    v = build_real_context(p, ctx)
    trials = cfg.trials if cfg.trials is not None else DEFAULT_TRIALS
    seed = cfg.seed if cfg.seed is not None else 0
    mc = monte_carlo_measurement(v, trials, seed)
    bounds = {
        label: 3.0 * math.sqrt(float(q) * (1.0 - float(q)) / trials)
        for label, q in zip(counts.outcomes.labels, p.probs)
    }
    freqs = mc.frequencies.as_floats()
    passed = all(
        abs(f - float(q)) <= bounds[label]
        for label, f, q in zip(counts.outcomes.labels, freqs, p.probs)
    )
    report = mc.to_json_dict()
    return {
        "command": "simulate",
        "config": cfg.as_dict(),
        **report,
        "three_sigma_bounds": bounds,
        "pass": passed,
    }


def cmd_entanglement(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    t = _apply_arithmetic(_parse_joint_file(args.input), cfg)
    report = is_product(t, tol=cfg.tolerance)
    phases = None
    if cfg.phases is not None:
        phases = _load_phases(cfg.phases, t.combined_labels())
    real, w = build_joint_vectors(t, phases)
    return {
        "command": "entanglement",
        "config": cfg.as_dict(),
        "table": _table_dict(t),
        "report": report.to_json_dict(),
        "joint_real_vector": {
            label: _value_entry(x) for label, x in zip(t.combined_labels(), real)
        },
        "joint_complex_vector": w.to_json_dict(),
    }


def cmd_scenario_animal_acts(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    tables = animal_acts_tables()
    animal_ctx = ContextId("animal-acts", "survey", "animal")
    act_ctx = ContextId("animal-acts", "survey", "act")
    w_animal = build_complex_context(tables.animal, animal_ctx)
    w_act = build_complex_context(tables.act, act_ctx)
    report = is_product(tables.joint, tol=cfg.tolerance)
    real, w_joint = build_joint_vectors(tables.joint)
    return {
        "command": "scenario animal-acts",
        "config": cfg.as_dict(),
        "animal": {
            "counts": {"Horse": 43, "Bear": 38},
            "real_vector": _vector_entries(tables.animal),
            "moduli": {
                label: _value_entry(mod)
                for label, mod in zip(tables.animal.outcomes.labels, w_animal.moduli())
            },
        },
        "act": {
            "counts": {"Growls": 39, "Whinnies": 42},
            "real_vector": _vector_entries(tables.act),
            "moduli": {
                label: _value_entry(mod)
                for label, mod in zip(tables.act.outcomes.labels, w_act.moduli())
            },
        },
        "joint": _table_dict(tables.joint),
        "report": report.to_json_dict(),
        "joint_real_vector": {
            label: _value_entry(x)
            for label, x in zip(tables.joint.combined_labels(), real)
        },
        "joint_complex_vector": w_joint.to_json_dict(),
    }


def cmd_scenario_vessels(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    vessels_cfg = VesselsConfig(
        mode=args.mode,
        trials=cfg.trials if cfg.trials is not None else DEFAULT_TRIALS,
        seed=cfg.seed if cfg.seed is not None else 0,
        capacity=args.capacity,
        threshold=args.threshold,
    )
    outcome_counts = simulate_vessels(vessels_cfg)
    t = _apply_arithmetic(vessels_joint_table(outcome_counts), cfg)
    report = is_product(t, tol=cfg.tolerance)
    real, w_joint = build_joint_vectors(t)
    return {
        "command": "scenario vessels",
        "config": cfg.as_dict(),
        "vessels": {
            "mode": vessels_cfg.mode,
            "trials": vessels_cfg.trials,
            "seed": vessels_cfg.seed,
            "capacity": vessels_cfg.capacity,
            "threshold": vessels_cfg.threshold,
        },
        "outcome_counts": outcome_counts.as_mapping(),
        "joint": _table_dict(t),
        "report": report.to_json_dict(),
        "joint_real_vector": {
            label: _value_entry(x) for label, x in zip(t.combined_labels(), real)
        },
        "joint_complex_vector": w_joint.to_json_dict(),
    }


def _config_from(args: argparse.Namespace) -> RunConfig:
    arithmetic = None
    if getattr(args, "exact", False):
        arithmetic = "exact"
    elif getattr(args, "float", False):
        arithmetic = "float"
    tolerance = getattr(args, "tolerance", None)
    if tolerance is None and arithmetic == "float":
        tolerance = FLOAT_TOLERANCE
    return RunConfig(
        tolerance=tolerance,
        arithmetic=arithmetic,
        seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", None),
        phases=getattr(args, "phases", None),
        output=getattr(args, "output", None),
    )


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None,
                        help="product-test tolerance (default: 0 exact, 1e-9 float)")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="keep exact rational arithmetic (default for counts)")
    mode.add_argument("--float", action="store_true",
                      help="convert tables to floating point before analysis")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    common.add_argument("--trials", type=int, default=None,
                        help=f"simulation trials (default {DEFAULT_TRIALS})")
    common.add_argument("--phases", metavar="FILE", default=None,
                        help="JSON file mapping basis labels to phase angles in radians")
    common.add_argument("--output", metavar="PATH", default=None,
                        help="write the JSON report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="contextrep",
        description="Simplex and Hilbert representations of measurement data, "
        "with a product/entangled decision for joint statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rep = sub.add_parser("represent", parents=[common],
                           help="build real and complex vectors from a counts file")
    p_rep.add_argument("input", help="counts file (CSV label,count or JSON object)")
    p_rep.set_defaults(handler=cmd_represent)

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="Monte Carlo hidden-variable measurement vs target")
    p_sim.add_argument("input", help="counts file (CSV label,count or JSON object)")
    p_sim.set_defaults(handler=cmd_simulate)

    p_ent = sub.add_parser("entanglement", parents=[common],
                           help="decide product vs entangled for a joint counts file")
    p_ent.add_argument("input", help="joint counts file (CSV row,col,count or JSON)")
    p_ent.set_defaults(handler=cmd_entanglement)

    p_scn = sub.add_parser("scenario", help="run a built-in scenario")
    scn_sub = p_scn.add_subparsers(dest="scenario", required=True)

    p_aa = scn_sub.add_parser("animal-acts", parents=[common],
                              help="embedded survey dataset, full pipeline")
    p_aa.set_defaults(handler=cmd_scenario_animal_acts)

    p_vs = scn_sub.add_parser("vessels", parents=[common],
                              help="two-vessel water experiment simulation")
    p_vs.add_argument("--mode", choices=("separate", "connected"), required=True)
    p_vs.add_argument("--capacity", type=float, default=20.0,
                      help="vessel capacity in liters (default 20)")
    p_vs.add_argument("--threshold", type=float, default=10.0,
                      help="more/less threshold in liters (default 10)")
    p_vs.set_defaults(handler=cmd_scenario_vessels)

    return parser


def _emit(report: dict, output: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
        _emit(report, getattr(args, "output", None))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ContextRepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
