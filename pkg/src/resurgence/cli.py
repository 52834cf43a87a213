"""Command-line front end.

    resurgence invariants  --scheme S [--m-max K]
    resurgence containment --scheme S --m M --r R
    resurgence sweep       --scheme S --m M_MAX --r R_MAX
    resurgence resurgence  --scheme S [--m-max K]
    resurgence reproduce   TABLE

Exit codes: 0 success (Contained for containment), 1 NotContained or a
reproduction mismatch, 2 bad input, 3 resource budget exceeded, 4 Unknown.
"""

from __future__ import annotations

import argparse
import copy
import csv
import importlib.resources
import io
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .criteria import (
    CONTAINED,
    NOT_CONTAINED,
    check_containment,
    grid_to_csv,
    resurgence_bracket,
    sweep,
)
from .ideal import Budget, ResourceError
from .invariants import alpha, gamma_bracket, omega, tau_sigma
from .reproduce import TABLES, reproduce
from .ring import DEFAULT_PRIME, is_prime
from .schemes import ConsistencyError, SchemeError, derive_seeds, scheme_degree, scheme_from_json

EXIT_OK, EXIT_NOT_CONTAINED, EXIT_PARSE, EXIT_RESOURCE, EXIT_UNKNOWN = 0, 1, 2, 3, 4

RANDOMIZED_KINDS = {"generic_points", "skeleton"}


@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    seeds_consensus: int = 3
    max_degree: int = 60
    max_spairs: int = 200_000
    output: str = "json"

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.seeds_consensus < 1:
            raise ValueError("consensus needs at least one run")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")

    @property
    def budget(self) -> Budget:
        return Budget(max_spairs=self.max_spairs, max_degree=self.max_degree)


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas: scheme, invariants, containment, sweep, resurgence, reproduce."""
    text = importlib.resources.files("resurgence").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


class InputError(ValueError):
    """Malformed command-line input; exit code 2."""


def _env_int(name: str):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name}={raw!r} is not an integer") from None


def resolve_config(args) -> RunConfig:
    """Flags win over RESURGENCE_* environment variables, which win over defaults."""
    base = RunConfig()

    def pick(flag, env):
        return flag if flag is not None else _env_int(env)

    prime = pick(args.prime, "RESURGENCE_PRIME")
    seed = pick(args.seed, "RESURGENCE_SEED")
    try:
        return RunConfig(
            prime=base.prime if prime is None else prime,
            seed=base.seed if seed is None else seed,
            seeds_consensus=base.seeds_consensus if args.consensus is None else args.consensus,
            max_degree=base.max_degree if args.max_degree is None else args.max_degree,
            max_spairs=base.max_spairs if args.budget_spairs is None else args.budget_spairs,
            output=args.format or base.output,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def load_scheme_json(text: str) -> dict:
    """--scheme accepts a path to a JSON file or the JSON itself."""
    if text is None:
        raise InputError("--scheme is required")
    stripped = text.strip()
    if not stripped.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise InputError(f"no such scheme file: {text}")
        stripped = path.read_text()
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise InputError(f"scheme is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("scheme JSON must be an object")
    return data


def _randomized(data: dict) -> bool:
    if data.get("kind") in RANDOMIZED_KINDS:
        return True
    return data.get("kind") == "cone" and isinstance(data.get("inner"), dict) and _randomized(data["inner"])


def _with_seed(data: dict, seed: int) -> dict:
    out = copy.deepcopy(data)
    node = out
    while node.get("kind") == "cone":
        node = node["inner"]
    node["seed"] = seed
    return out


def _build(data: dict, cfg: RunConfig):
    try:
        return scheme_from_json(data, cfg.prime)
    except (SchemeError, ValueError, TypeError) as exc:
        raise InputError(f"bad scheme: {exc}") from None


def _runs(data: dict, cfg: RunConfig) -> list:
    """Scheme variants to evaluate: one per consensus seed for randomized kinds."""
    if not _randomized(data):
        return [_build(data, cfg)]
    node = data
    while node.get("kind") == "cone":
        node = node["inner"]
    base = int(node.get("seed", cfg.seed))
    seeds = [base] if cfg.seeds_consensus == 1 else derive_seeds(base, cfg.seeds_consensus)
    return [_build(_with_seed(data, s), cfg) for s in seeds]


def _vote(keys: list):
    winner, votes = Counter(keys).most_common(1)[0]
    if 2 * votes <= len(keys):
        raise ConsistencyError(f"no majority among {len(keys)} seeded runs")
    return winner, votes


def _majority(payloads: list, strip=("source",)) -> dict:
    def key(p):
        return json.dumps({k: v for k, v in p.items() if k not in strip}, sort_keys=True)

    keys = [key(p) for p in payloads]
    winner, votes = _vote(keys)
    chosen = copy.deepcopy(payloads[keys.index(winner)])
    chosen["consensus"] = {"runs": len(payloads), "agreeing": votes}
    return chosen


# ---------------------------------------------------------------------------
# commands


def _invariants_payload(Z, m_max: int, budget: Budget, partial: dict) -> dict:
    partial["source"] = Z.source.to_json() if Z.source else None
    partial["alpha"] = alpha(Z, 1, budget)
    if Z.is_fat_points():
        tau, sigma = tau_sigma(Z, budget=budget)
        partial.update(tau=tau, sigma=sigma, satdeg=0, reg=sigma)
    partial["omega"] = omega(Z, budget=budget)
    if Z.is_fat_points():
        partial["degree"] = scheme_degree(Z)
    partial["gamma"] = gamma_bracket(Z, m_max, budget).to_json()
    return partial


def cmd_invariants(data: dict, cfg: RunConfig, m_max: int = 8) -> tuple:
    payloads = []
    for Z in _runs(data, cfg):
        partial = {}
        try:
            payloads.append(_invariants_payload(Z, m_max, cfg.budget, partial))
        except ResourceError as exc:
            partial["error"] = f"resource: {exc}"
            return partial, EXIT_RESOURCE
    return _majority(payloads), EXIT_OK


def cmd_containment(data: dict, m: int, r: int, cfg: RunConfig) -> tuple:
    if m is None or r is None or m < 1 or r < 1:
        raise InputError("containment needs --m and --r, both >= 1")
    payloads = [check_containment(Z, m, r, cfg.budget).to_json() for Z in _runs(data, cfg)]
    out = _majority(payloads, strip=("notes",))
    code = {CONTAINED: EXIT_OK, NOT_CONTAINED: EXIT_NOT_CONTAINED}.get(out["verdict"], EXIT_UNKNOWN)
    return out, code


def cmd_sweep(data: dict, m_max: int, r_max: int, cfg: RunConfig) -> tuple:
    if m_max is None or r_max is None or m_max < 1 or r_max < 1:
        raise InputError("sweep needs --m and --r (grid maxima), both >= 1")
    grids = [sweep(Z, m_max, r_max, cfg.budget) for Z in _runs(data, cfg)]
    csvs = [grid_to_csv(g) for g in grids]
    winner, votes = _vote(csvs)
    grid = grids[csvs.index(winner)]
    return {"grid": [v.to_json() for v in grid], "csv": winner,
            "consensus": {"runs": len(grids), "agreeing": votes}}, EXIT_OK


def cmd_resurgence(data: dict, cfg: RunConfig, m_max: int = 8) -> tuple:
    payloads = []
    for Z in _runs(data, cfg):
        try:
            payloads.append(resurgence_bracket(Z, m_max, cfg.budget).to_json())
        except ResourceError as exc:
            return {"error": f"resource: {exc}"}, EXIT_RESOURCE
    return _majority(payloads), EXIT_OK


def cmd_reproduce(table: str, cfg: RunConfig) -> tuple:
    if table not in TABLES:
        raise InputError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")
    try:
        report = reproduce(table, cfg.seed, cfg.seeds_consensus)
    except ResourceError as exc:
        return {"table": table, "error": f"resource: {exc}"}, EXIT_RESOURCE
    return report, EXIT_OK if report.all_match else EXIT_NOT_CONTAINED


# ---------------------------------------------------------------------------
# rendering


def _flatten(d: dict, prefix: str = "") -> list:
    items = []
    for k, v in d.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            items.extend(_flatten(v, name + "."))
        elif isinstance(v, list):
            items.append((name, json.dumps(v)))
        else:
            items.append((name, v))
    return items


def render(command: str, payload, fmt: str) -> str:
    if command == "reproduce" and hasattr(payload, "to_json"):
        if fmt == "text":
            return payload.to_text() + "\n"
        payload = payload.to_json()
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "expected", "computed", "match", "source"])
            for row in payload["rows"]:
                w.writerow([row["key"], json.dumps(row["expected"]), json.dumps(row["computed"]),
                            row["match"], row["source"]])
            return buf.getvalue()
    if command == "sweep" and "csv" in payload:
        if fmt == "csv":
            return payload["csv"]
        if fmt == "text":
            return "\n".join(f"m={v['m']} r={v['r']}: {v['verdict']} ({v['criterion']})"
                             for v in payload["grid"]) + "\n"
        return json.dumps({"grid": payload["grid"], "consensus": payload["consensus"]}, indent=2) + "\n"
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    items = _flatten(payload)
    if fmt == "text":
        return "".join(f"{k}: {'' if v is None else v}\n" for k, v in items)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([k for k, _ in items])
    w.writerow(["" if v is None else v for _, v in items])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, help="field characteristic (default 32003)")
    common.add_argument("--seed", type=int, help="base random seed (default 0)")
    common.add_argument("--consensus", type=int, help="number of seeded reruns (default 3)")
    common.add_argument("--max-degree", type=int, help="degree cap for scans and bases (default 60)")
    common.add_argument("--budget-spairs", type=int, help="S-pair budget per basis (default 200000)")
    common.add_argument("--format", choices=("json", "csv", "text"), help="output format (default json)")

    parser = argparse.ArgumentParser(prog="resurgence",
                                     description="Symbolic powers, containment and resurgence of fat flats.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="alpha, tau, sigma, reg, omega, deg and gamma")
    p.add_argument("--scheme", required=True, help="scheme JSON or a path to a JSON file")
    p.add_argument("--m-max", type=int, default=8, help="largest m sampled for the gamma bracket")

    p = sub.add_parser("containment", parents=[common], help="decide I^(m) in I^r")
    p.add_argument("--scheme", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("sweep", parents=[common], help="verdict grid for m <= M, r <= R")
    p.add_argument("--scheme", required=True)
    p.add_argument("--m", type=int, required=True, help="largest m")
    p.add_argument("--r", type=int, required=True, help="largest r")

    p = sub.add_parser("resurgence", parents=[common], help="two-sided bracket for rho")
    p.add_argument("--scheme", required=True)
    p.add_argument("--m-max", type=int, default=8)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a reference table")
    p.add_argument("table", help=", ".join(TABLES))
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "reproduce":
            payload, code = cmd_reproduce(args.table, cfg)
        else:
            data = load_scheme_json(args.scheme)
            if args.command == "invariants":
                payload, code = cmd_invariants(data, cfg, args.m_max)
            elif args.command == "containment":
                payload, code = cmd_containment(data, args.m, args.r, cfg)
            elif args.command == "sweep":
                payload, code = cmd_sweep(data, args.m, args.r, cfg)
            else:
                payload, code = cmd_resurgence(data, cfg, args.m_max)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"error: resource: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"error: consistency: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    stdout.write(render(args.command, payload, cfg.output))
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
