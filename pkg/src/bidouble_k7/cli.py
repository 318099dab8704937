"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from .construction import (
    check_conditions_A_B,
    check_conditions_I_II,
    choose_fiber,
    fiber_parameter,
    free_point,
    w_configuration,
)
from .curves import build_standard_catalog
from .lattice import format_rational, parse_class_spec, parse_rational
from .riemann_roch import h0
from .verifier import verify

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: Fraction = Fraction(2)
    beta: Fraction = Fraction(3)
    fiber_param: Fraction | None = None  # None: pick a generic fibre
    seed: int = 0
    output_path: str | None = None

    @property
    def point(self):
        return free_point(self.alpha, self.beta)

    def fiber(self):
        return fiber_parameter(self.fiber_param) if self.fiber_param is not None else None


def load_config_file(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"missing config: {path}")
    text = p.read_bytes()
    try:
        if p.suffix == ".toml":
            data = tomllib.loads(text.decode())
        else:
            data = json.loads(text)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"unreadable config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a table of settings")
    return data


def _rational(value, what: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def build_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        data = load_config_file(args.config)
        known = {"alpha", "beta", "fiber_param", "fiber", "seed", "output_path"}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "alpha" in data:
            cfg = replace(cfg, alpha=_rational(data["alpha"], "alpha"))
        if "beta" in data:
            cfg = replace(cfg, beta=_rational(data["beta"], "beta"))
        fib = data.get("fiber_param", data.get("fiber"))
        if fib is not None:
            cfg = replace(cfg, fiber_param=_rational(fib, "fiber"))
        if "seed" in data:
            if not isinstance(data["seed"], int) or isinstance(data["seed"], bool):
                raise UsageError("seed must be an integer")
            cfg = replace(cfg, seed=data["seed"])
        if "output_path" in data:
            cfg = replace(cfg, output_path=str(data["output_path"]))
    if args.alpha is not None:
        cfg = replace(cfg, alpha=_rational(args.alpha, "alpha"))
    if args.beta is not None:
        cfg = replace(cfg, beta=_rational(args.beta, "beta"))
    if args.fiber is not None:
        cfg = replace(cfg, fiber_param=_rational(args.fiber, "fiber"))
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.out is not None:
        cfg = replace(cfg, output_path=args.out)
    return cfg


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- subcommands ---------------------------------------------------------------

def cmd_verify(cfg: RunConfig, args) -> int:
    report = verify(cfg.point, cfg.fiber())
    emit(report.to_json(), cfg)
    s = report.to_dict()["summary"]
    print(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped: {s['overall']}",
          file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_conditions(cfg: RunConfig, args) -> int:
    p = cfg.point
    c12 = check_conditions_I_II(p)
    out = {"p": [format_rational(x) for x in p], "I_II": {"ok": c12.ok, "violations": c12.violations}}
    ok = c12.ok
    if c12.ok:
        b = cfg.fiber() or choose_fiber(p)
        cab = check_conditions_A_B(p, b)
        out["b"] = [format_rational(x) for x in b]
        out["A_B"] = {"ok": cab.ok, "violations": cab.violations}
        ok = cab.ok
    emit(dump(out), cfg)
    for v in out["I_II"]["violations"] + out.get("A_B", {}).get("violations", []):
        print(f"violated: {v}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _catalog(cfg: RunConfig):
    p = cfg.point
    c12 = check_conditions_I_II(p)
    if not c12:
        raise UsageError("free point is not admissible: " + "; ".join(c12.violations))
    config = w_configuration(p)
    b = cfg.fiber() or choose_fiber(p)
    return config, build_standard_catalog(config, b)


def cmd_h0(cfg: RunConfig, args) -> int:
    config, catalog = _catalog(cfg)
    try:
        d = parse_class_spec(args.class_spec, config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = h0(d, catalog, config)
    if args.trace:
        emit(dump({"h0": result.value, "trace": result.trace.to_dict()}), cfg)
    else:
        emit(f"{result.value}\n", cfg)
    return EXIT_OK


def cmd_catalog(cfg: RunConfig, args) -> int:
    _, catalog = _catalog(cfg)
    emit(catalog.to_json() + "\n", cfg)
    return EXIT_OK


def cmd_invariants(cfg: RunConfig, args) -> int:
    report = verify(cfg.point, cfg.fiber(), ["cond.", "cover."])
    emit(report.to_json(), cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_section6(cfg: RunConfig, args) -> int:
    report = verify(cfg.point, cfg.fiber(), ["presets."])
    emit(report.to_json(), cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


def random_admissible(rng: random.Random, size: int = 9):
    """A random free point passing (I)/(II) and a random fibre passing (A)/(B)."""
    while True:
        alpha = Fraction(rng.randint(-size, size), rng.randint(1, 5))
        beta = Fraction(rng.randint(-size, size), rng.randint(1, 5))
        p = free_point(alpha, beta)
        if not check_conditions_I_II(p):
            continue
        for _ in range(20):
            b = fiber_parameter(Fraction(rng.randint(-size, size), rng.randint(1, 5)))
            if check_conditions_A_B(p, b):
                return alpha, beta, b


def cmd_sweep(cfg: RunConfig, args) -> int:
    rng = random.Random(cfg.seed)
    rows = []
    ok = True
    for _ in range(args.count):
        alpha, beta, b = random_admissible(rng)
        report = verify(free_point(alpha, beta), b)
        ok &= report.passed
        rows.append({
            "alpha": format_rational(alpha),
            "beta": format_rational(beta),
            "b": [format_rational(x) for x in b],
            "overall": report.overall,
            "failed": [c.claim_id for c in report.claims if c.status == "fail"],
        })
    emit(dump({"seed": cfg.seed, "runs": rows}), cfg)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", help="second coordinate of the free point (rational)")
    common.add_argument("--beta", help="third coordinate of the free point (rational)")
    common.add_argument("--fiber", help="fibre parameter b, the line through p0 and (b:1:0)")
    common.add_argument("--config", help="JSON or TOML file with run settings")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="bidouble-k7", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run every check and print the report")
    sub.add_parser("conditions", parents=[common], help="check the genericity conditions only")
    p_h0 = sub.add_parser("h0", parents=[common], help="dimension of sections of one class")
    p_h0.add_argument("class_spec", help='class as "x;a0,a1,a1\',a2,a2\',a3,a3\',a"')
    p_h0.add_argument("--trace", action="store_true", help="also print the reduction trace")
    sub.add_parser("catalog", parents=[common], help="print the certified curve catalog")
    sub.add_parser("invariants", parents=[common], help="cover invariants only")
    sub.add_parser("section6", parents=[common], help="checks on the six-point presets")
    p_sweep = sub.add_parser("sweep", parents=[common], help="verify random admissible parameters")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--count", type=int, default=10)
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "conditions": cmd_conditions,
    "h0": cmd_h0,
    "catalog": cmd_catalog,
    "invariants": cmd_invariants,
    "section6": cmd_section6,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_run_config(args)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
