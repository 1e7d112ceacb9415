"""Command-line front end.

Subcommands::

    sidonpairs construct --config run.json [--out result.json] [--seed N]
    sidonpairs verify result.json
    sidonpairs witness result.json --m 3 --seed 7 [--budget N] [--trivial]
    sidonpairs oracle result.json [--grid N]

Exit codes: 0 success, 1 mathematical failure or inconclusive search,
2 usage, configuration or parse error.  Errors are printed as JSON objects.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize as ser
from .constructions import (
    ConstructionConfig,
    Sampling,
    build_pair,
    check_invariants,
    non_i0_witness,
    random_spec,
    trivial_spec,
)
from .errors import InvalidConfig, SearchBudget, SidonPairsError
from .groups import AmbientGroup, ElementStream, stream_from_description
from .oracle import DEFAULT_GRID, brute_force_minimax, cross_check, space_for

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_TOP_KEYS = {"ambient", "F", "q", "rounds", "budgets", "seed", "output", "branch", "infinite_index", "sampling",
             "q_cap", "target_denominator", "independence_max_subset"}
_BUDGET_KEYS = {"stream", "probe", "difference", "oracle_grid"}


@dataclass(frozen=True)
class RunConfig:
    """Everything a ``construct`` run needs, as read from a JSON config file."""

    ambient: AmbientGroup
    F: ElementStream
    construction: ConstructionConfig
    budgets: dict = field(default_factory=dict)
    output: str | None = None

    @classmethod
    def from_dict(cls, doc: dict, seed: int | None = None, output: str | None = None) -> "RunConfig":
        if not isinstance(doc, dict):
            raise InvalidConfig("config must be a JSON object")
        unknown = set(doc) - _TOP_KEYS
        if unknown:
            raise InvalidConfig(f"unknown config keys {sorted(unknown)}")
        budgets = {"stream": 1000, "probe": 64, "difference": 128, "oracle_grid": DEFAULT_GRID}
        given = doc.get("budgets", {})
        if not isinstance(given, dict) or set(given) - _BUDGET_KEYS:
            raise InvalidConfig(f"budgets must be an object with keys among {sorted(_BUDGET_KEYS)}")
        budgets.update(given)
        for k, v in budgets.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidConfig(f"budget {k!r} must be an integer >= 1")
        ambient = ser.ambient_from_json(_required(doc, "ambient"))
        F = stream_from_description(ambient, _required(doc, "F"), budgets["stream"])
        seed = doc.get("seed", 0) if seed is None else seed
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise InvalidConfig("seed must be an integer")
        sampling = doc.get("sampling", {})
        try:
            sampling = Sampling(**sampling)
        except TypeError as exc:
            raise InvalidConfig(f"bad sampling parameters: {exc}") from None
        extra = {k: doc[k] for k in ("q", "rounds", "branch", "infinite_index", "q_cap", "target_denominator",
                                     "independence_max_subset") if k in doc}
        for k in ("q", "rounds"):
            if k in extra and (not isinstance(extra[k], int) or isinstance(extra[k], bool)):
                raise InvalidConfig(f"{k} must be an integer")
        construction = ConstructionConfig(seed=seed, probe_budget=budgets["probe"],
                                          difference_budget=budgets["difference"], sampling=sampling, **extra)
        return cls(ambient, F, construction, budgets, output if output is not None else doc.get("output"))

    def echo(self) -> dict:
        """The effective configuration, with defaults filled in."""
        c = self.construction
        return {
            "ambient": ser.ambient_to_json(self.ambient),
            "F": ser.plain(self.F.describe),
            "q": c.q,
            "rounds": c.rounds,
            "seed": c.seed,
            "branch": c.branch,
            "infinite_index": c.infinite_index,
            "budgets": dict(self.budgets),
            "sampling": ser.plain(c.sampling),
            "q_cap": c.q_cap,
            "target_denominator": c.target_denominator,
            "independence_max_subset": c.independence_max_subset,
        }


def _required(doc, key):
    if key not in doc:
        raise InvalidConfig(f"config is missing {key!r}")
    return doc[key]


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read {path}: {exc.strerror}") from None
    return ser.loads(text)


def _emit(doc, out: str | None):
    text = ser.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error(exc: SidonPairsError, **extra) -> dict:
    return {**exc.to_dict(), **extra}


def cmd_construct(args) -> int:
    run = RunConfig.from_dict(_read_json(args.config), seed=args.seed, output=args.out)
    result = build_pair(run.F, run.construction)
    doc = ser.construction_to_json(result)
    doc["config"] = run.echo()
    _emit(doc, run.output)
    if run.output:
        print(doc["summary"])
    return EXIT_OK


def verify_document(doc) -> dict:
    """Exact re-check of a construction or certificate document."""
    problems = []
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == ser.FORMAT_CONSTRUCTION:
        result = ser.construction_from_json(doc)
        for name, cert in (("E", result.cert_E), ("Eprime", result.cert_Eprime)):
            problems += _violations(name, cert)
        for name, listed, derived in (("E", doc.get("E"), result.E), ("Eprime", doc.get("Eprime"), result.Eprime)):
            enc = [ser.element_to_json(x) for x in derived]
            if listed != enc:
                k = next((i for i, (a, b) in enumerate(zip(listed or [], enc)) if a != b), min(len(listed or []), len(enc)))
                problems.append({"set": name, "position": k + 1, "reason": f"listed {name} disagrees with the pairs"})
        # certificate failures are already itemised above
        for msg in check_invariants(result):
            if not msg.startswith("certificate for"):
                problems.append({"set": None, "position": None, "reason": msg})
    elif fmt == ser.FORMAT_CERTIFICATE:
        A = ser.ambient_from_json(doc["ambient"]) if "ambient" in doc else None
        cert = ser.certificate_from_json(ser._need(doc, "certificate", dict), A)
        problems += _violations(cert.label or "certificate", cert)
    else:
        raise InvalidConfig(f"cannot verify a document of format {fmt!r}")
    return {"ok": not problems, "violations": problems}


def _violations(name, cert) -> list[dict]:
    out = []
    for v in cert.verify():
        elem = v.element
        out.append({
            "set": name,
            "position": v.position + 1,
            "element": None if elem is None else (str(elem) if not hasattr(elem, "support") else ser.element_to_json(elem)),
            "target": ser.format_rational(v.target.turns),
            "value": None if v.value is None else ser.format_rational(v.value.turns),
            "distance": None if v.distance is None else ser.format_rational(v.distance),
            "bound": ser.format_rational(cert.bound),
            "reason": v.reason,
        })
    return out


def cmd_verify(args) -> int:
    report = verify_document(_read_json(args.path))
    sys.stdout.write(ser.dumps(report))
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_witness(args) -> int:
    doc = _read_json(args.path)
    result = ser.construction_from_json(doc)
    if args.m < 1:
        raise InvalidConfig("--m must be >= 1")
    spec = trivial_spec(args.m) if args.trivial else random_spec(result.ambient, args.m, args.seed)
    context = {"m": args.m, "seed": args.seed, "trivial": args.trivial, "budget": args.budget,
               "pairs": len(result.pairs)}
    try:
        report = non_i0_witness(result, spec, args.budget)
    except SidonPairsError as exc:
        if exc.code != "BudgetExhausted":
            raise
        _emit({"format": ser.FORMAT_WITNESS, "inconclusive": True, **_error(exc), "context": context}, args.out)
        return EXIT_FAIL
    _emit(ser.witness_to_json(report, context), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = _read_json(args.path)
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == ser.FORMAT_CONSTRUCTION:
        result = ser.construction_from_json(doc)
        certs = {"E": result.cert_E, "Eprime": result.cert_Eprime}
    elif fmt == ser.FORMAT_CERTIFICATE:
        A = ser.ambient_from_json(doc["ambient"]) if "ambient" in doc else None
        cert = ser.certificate_from_json(ser._need(doc, "certificate", dict), A)
        certs = {cert.label or "certificate": cert}
    else:
        raise InvalidConfig(f"cannot run the oracle on a document of format {fmt!r}")
    report = {"format": ser.FORMAT_ORACLE, "version": ser.VERSION, "grid": args.grid, "checks": {}}
    contradiction = False
    for name, cert in certs.items():
        try:
            points, space = space_for(cert, args.grid)
            res = brute_force_minimax(points, cert.targets, space)
        except (SearchBudget, InvalidConfig) as exc:
            report["checks"][name] = {"skipped": True, **_error(exc)}
            continue
        check = ser.plain(cross_check(cert, res))
        check["candidates"] = res.candidates
        check["oracle_witness"] = ser.character_to_json(res.witness)
        report["checks"][name] = check
        contradiction |= check["contradiction"]
    report["ok"] = not contradiction
    _emit(report, args.out)
    return EXIT_FAIL if contradiction else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sidonpairs", description="Build and check Kronecker pairs whose union is not I0.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run a construction from a JSON config")
    c.add_argument("--config", required=True)
    c.add_argument("--out")
    c.add_argument("--seed", type=int)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="re-check a construction or certificate file exactly")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="find a non-I0 witness pair for seeded sample points")
    w.add_argument("path")
    w.add_argument("--m", type=int, default=2)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--budget", type=int)
    w.add_argument("--trivial", action="store_true", help="use m copies of the trivial dual point")
    w.add_argument("--out")
    w.set_defaults(func=cmd_witness)

    o = sub.add_parser("oracle", help="cross-check certificates by brute force")
    o.add_argument("path")
    o.add_argument("--grid", type=int, default=DEFAULT_GRID)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidConfig as exc:
        sys.stdout.write(ser.dumps(_error(exc)))
        return EXIT_USAGE
    except SidonPairsError as exc:
        sys.stdout.write(ser.dumps(_error(exc)))
        return EXIT_FAIL
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        sys.stdout.write(ser.dumps({"error": "ParseError", "message": f"{type(exc).__name__}: {exc}"}))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
