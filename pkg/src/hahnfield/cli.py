"""Command-line workbench.

Structured output (``--format json``) is one JSON document on stdout; human
text always goes to stderr.  Exit status: 0 when nothing failed, 1 on a
failed check (or an inconclusive one unless ``--allow-inconclusive``), 2 on
bad input.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__
from .couples import AsymptoticCouple, crosscheck_decisions, extend_psi, validate_axioms
from .derivation import DerivationContext, check_hfield, extract_couple
from .errors import HahnFieldError
from .groups import GroupElement
from .hahn import HahnSeries, TruncationBudget
from .loghyper import format_log_series, h_map, verify_isomorphism
from .couples import example_couple
from .report import CheckResult, CoupleReport, _jsonable
from .towers import ValuationTower, verify_tower

COMMANDS = ("validate-couple", "derive", "check-hfield", "tower", "loghyper", "extend-psi", "crosscheck")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    samples: int = 200
    seed: int = 0
    budget: int = 8
    format: str = "text"
    allow_inconclusive: bool = False
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.samples < 0:
            raise InputError("--samples must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise InputError("--seed must be a 64-bit unsigned integer")
        if self.budget < 1:
            raise InputError("--budget must be >= 1")
        if self.format not in ("text", "json"):
            raise InputError("--format must be text or json")

    def echo(self) -> dict[str, Any]:
        d = asdict(self)
        d["inputs"] = [os.path.basename(p) for p in self.inputs]
        return d


def exit_status(report: CoupleReport, allow_inconclusive: bool = False) -> int:
    statuses = {c.status for c in report.checks}
    if "fail" in statuses:
        return 1
    if "inconclusive" in statuses and not allow_inconclusive:
        return 1
    return 0


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_couple(path: str) -> AsymptoticCouple:
    try:
        return AsymptoticCouple.from_json(load_json(path))
    except HahnFieldError as exc:
        raise InputError(f"{path}: {exc}") from None


# ------------------------------------------------------------------ commands


def cmd_validate_couple(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    couple = load_couple(cfg.inputs[0])
    return validate_axioms(couple, cfg.samples, cfg.seed), {"couple": couple.to_json()}


def _context(couple: AsymptoticCouple) -> DerivationContext:
    try:
        return DerivationContext(couple)
    except HahnFieldError as exc:
        raise InputError(f"invalid couple: {exc}") from None


def cmd_derive(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    couple = load_couple(cfg.inputs[0])
    ctx = _context(couple)
    try:
        f = HahnSeries.from_json(load_json(cfg.inputs[1]), couple.size)
    except HahnFieldError as exc:
        raise InputError(f"{cfg.inputs[1]}: {exc}") from None
    result: dict[str, Any] = {"derivative": ctx.derive(f).to_json()}
    report = CoupleReport()
    report.add(CheckResult("derive", "pass"))
    if cfg.options.get("dagger"):
        if f.is_zero():
            raise InputError("logarithmic derivative of the zero series is undefined")
        dag, bound = ctx.log_derivative(f, TruncationBudget(cfg.budget))
        result["dagger"] = dag.to_json()
        result["residual_bound"] = "exact" if bound is None else bound.to_json()
        report.add(CheckResult("dagger", "pass"))
    return report, result


def cmd_check_hfield(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    couple = load_couple(cfg.inputs[0])
    ctx = _context(couple)
    report = check_hfield(ctx, cfg.samples, cfg.seed)
    report.extend(extract_couple(ctx, cfg.samples, cfg.seed, TruncationBudget(2), budget_ceiling=cfg.budget))
    return report, {}


def cmd_tower(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    try:
        tower = ValuationTower.from_json(load_json(cfg.inputs[0]))
    except HahnFieldError as exc:
        raise InputError(f"{cfg.inputs[0]}: {exc}") from None
    return verify_tower(tower, cfg.samples, cfg.seed), {}


def cmd_loghyper(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    n = cfg.options.get("index_size")
    if not isinstance(n, int) or n < 1:
        raise InputError("--index-size must be a positive integer")
    ctx = DerivationContext(example_couple(n))
    report = verify_isomorphism(ctx, cfg.samples, cfg.seed)
    ells = {f"l{i}": format_log_series(h_map(ctx.log_derivative(
        HahnSeries.monomial(GroupElement.basis(i, n).scale(-1)))[0]), n) for i in range(n)}
    return report, {"dagger_of_l": ells}


def cmd_extend_psi(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    data = load_json(cfg.inputs[0])
    if not isinstance(data, dict) or set(data) != {"index_size", "generators"}:
        raise InputError('generators config must be {"index_size": n, "generators": [...]}')
    n = data["index_size"]
    try:
        gens = []
        for g in data["generators"]:
            if not isinstance(g, dict) or set(g) != {"element", "psi"}:
                raise InputError('each generator must be {"element": [...], "psi": [...]}')
            gens.append((GroupElement.from_json(g["element"]), GroupElement.from_json(g["psi"])))
    except HahnFieldError as exc:
        raise InputError(str(exc)) from None
    report = CoupleReport()
    try:
        couple = extend_psi(gens, n)
    except HahnFieldError as exc:
        report.add(CheckResult("extend_psi", "fail", detail=str(exc)))
        return report, {}
    back = all(couple.psi(g) == v for g, v in gens)
    report.add(CheckResult("extend_psi", "pass"))
    report.add(CheckResult("restriction_round_trip", "pass" if back else "fail"))
    report.extend(validate_axioms(couple, cfg.samples, cfg.seed))
    return report, {"couple": couple.to_json()}


def cmd_crosscheck(cfg: RunConfig) -> tuple[CoupleReport, dict]:
    return crosscheck_decisions(cfg.samples, cfg.seed, cfg.options.get("max_size") or 3), {}


HANDLERS = {
    "validate-couple": cmd_validate_couple,
    "derive": cmd_derive,
    "check-hfield": cmd_check_hfield,
    "tower": cmd_tower,
    "loghyper": cmd_loghyper,
    "extend-psi": cmd_extend_psi,
    "crosscheck": cmd_crosscheck,
}


def build_report(cfg: RunConfig, report: CoupleReport, result: dict, status: int) -> dict[str, Any]:
    body = report.to_json()
    return {
        "tool": "hahnfield",
        "version": __version__,
        "config": cfg.echo(),
        "checks": body["checks"],
        "flags": body["flags"],
        "result": _jsonable(result),
        "exit_status": status,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }


def render_text(doc: dict[str, Any]) -> str:
    lines = [f"hahnfield {doc['version']} {doc['config']['command']}"]
    for c in doc["checks"]:
        line = f"  {c['status'].upper():<13} {c['name']}"
        if "detail" in c:
            line += f"  ({c['detail']})"
        lines.append(line)
        if "witness" in c:
            lines.append(f"      witness: {json.dumps(c['witness'])}")
    if doc["result"]:
        lines.append("  result: " + json.dumps(doc["result"]))
    lines.append(f"exit status {doc['exit_status']}")
    return "\n".join(lines)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=8, help="truncation budget (max terms)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--allow-inconclusive", action="store_true")

    p = argparse.ArgumentParser(prog="hahnfield", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hahnfield {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate-couple", parents=[common], help="check (A1)-(A3), Hardy/Hahn type, small derivation")
    s.add_argument("couple")
    s = sub.add_parser("derive", parents=[common], help="differentiate a series")
    s.add_argument("couple")
    s.add_argument("series")
    s.add_argument("--dagger", action="store_true", help="also emit the logarithmic derivative")
    s = sub.add_parser("check-hfield", parents=[common], help="H-field axioms and psi(vh) = v(h-dagger)")
    s.add_argument("couple")
    s = sub.add_parser("tower", parents=[common], help="verify a composed valuation")
    s.add_argument("tower")
    s = sub.add_parser("loghyper", parents=[common], help="check the log-hyperseries isomorphism")
    s.add_argument("--index-size", type=int, required=True)
    s = sub.add_parser("extend-psi", parents=[common], help="extend psi from generators")
    s.add_argument("generators")
    s = sub.add_parser("crosscheck", parents=[common], help="exact decisions vs brute-force grids")
    s.add_argument("--max-size", type=int, default=3)
    return p


def parse_config(argv: list[str] | None) -> RunConfig:
    ns = make_parser().parse_args(argv)
    inputs = [getattr(ns, k) for k in ("couple", "series", "tower", "generators") if getattr(ns, k, None)]
    options = {k: getattr(ns, k) for k in ("dagger", "index_size", "max_size") if hasattr(ns, k)}
    return RunConfig(ns.command, inputs, ns.samples, ns.seed, ns.budget, ns.format,
                     ns.allow_inconclusive, options)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report, result = HANDLERS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    status = exit_status(report, cfg.allow_inconclusive)
    doc = build_report(cfg, report, result, status)
    if cfg.format == "json":
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        n_fail = sum(c["status"] != "pass" for c in doc["checks"])
        print(f"{cfg.command}: {len(doc['checks'])} checks, {n_fail} not passing, exit {status}", file=sys.stderr)
    else:
        print(render_text(doc), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
