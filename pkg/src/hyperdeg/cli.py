"""Command-line interface: ``hyperdeg {count,sample,estimate,verify}``.

Output is JSON by default (one object, or JSON lines for ``sample``) or CSV.
Errors are reported as a JSON object ``{"error": ..., "message": ...}`` with
exit code 1.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from importlib import resources
from fractions import Fraction
from typing import Optional

from . import core, mc, oracle, summation, switching
from .configuration import HypergraphView
from .core import DegreeSequence


@dataclass
class RunConfig:
    degrees: DegreeSequence
    seed: int = 0
    workers: int = 1
    format: str = "json"
    cap_M: Optional[int] = None
    regular: Optional[tuple[int, int]] = None


def load_schema(name: str) -> dict:
    """JSON Schema shipped for an output record: census, count, estimate, sample,
    verify, error or switching."""
    return json.loads((resources.files("hyperdeg") / "schemas" / f"{name}.json").read_text())


def parse_degrees(text: str) -> list[int]:
    """Comma list ``2,2,1,1`` or ``@path`` to a file with one integer per line."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return [int(line) for line in fh if line.strip()]
    return [int(tok) for tok in text.replace(" ", "").split(",") if tok]


def parse_regular(text: str) -> tuple[int, int]:
    """``NxK``: N vertices of degree K."""
    n, _, deg = text.lower().partition("x")
    if not deg:
        raise argparse.ArgumentTypeError(f"expected NxK, got {text!r}")
    return int(n), int(deg)


def _fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _float(x: float):
    return x if math.isfinite(x) else None


def cmd_count(cfg: RunConfig, mode: str = "asymptotic") -> dict:
    k = cfg.degrees
    k.require_divisible()
    out: dict = {"command": "count", "degrees": list(k.degrees), "r": k.r, "M": k.M, "mode": mode}
    estimate = None
    if mode in ("asymptotic", "both"):
        if cfg.regular is not None:
            res = core.asymptotic_count_regular(cfg.regular[0], cfg.regular[1], k.r)
        else:
            res = core.asymptotic_count(k)
        estimate = res.estimate
        out.update(leading_term=_fraction(res.leading_term), leading_term_float=float(res.leading_term),
                   log_correction=res.log_correction, estimate=_float(res.estimate))
    if mode in ("exact", "both"):
        c = oracle.census(k, cap=cfg.cap_M, workers=cfg.workers)
        out["census"] = c.to_dict()
        out["exact"] = c.hypergraph_count
        if estimate is not None:
            out["ratio"] = estimate / c.hypergraph_count if c.hypergraph_count else None
    return out


def cmd_sample(cfg: RunConfig, count: int, simple: bool = False, max_tries: int = 10_000) -> list[dict]:
    k = cfg.degrees
    k.require_divisible()
    records = []
    for i, item in enumerate(mc.iter_samples(k, count, cfg.seed, simple, max_tries)):
        if isinstance(item, mc.ExhaustedError):
            records.append({"index": i, "error": "exhausted", "tries": item.tries})
        elif isinstance(item, HypergraphView):
            records.append({"index": i, "seed": cfg.seed, "hypergraph": [list(e) for e in item.edges]})
        else:
            records.append({"index": i, "seed": cfg.seed, "partition": [list(U) for U in item.parts]})
    return records


def cmd_estimate(cfg: RunConfig, samples: int) -> dict:
    k = cfg.degrees
    rep = mc.estimate_p_simple(k, samples, cfg.seed, cfg.workers)
    out = {"command": "estimate", "degrees": list(k.degrees), "r": k.r}
    out.update(rep.to_dict())
    if k.r >= 3 and k.M >= 1:
        out["model_p"] = summation.p_simple_from_switching_model(k).estimate
    if k.M <= oracle.cap_M(cfg.cap_M):
        c = oracle.census(k, cap=cfg.cap_M, workers=cfg.workers)
        out["exact_p"] = _fraction(c.p_simple)
        out["exact_p_float"] = float(c.p_simple)
    return out


def _verify_ratios(k: DegreeSequence, cfg: RunConfig) -> tuple[Optional[bool], list]:
    c = oracle.census(k, cap=cfg.cap_M, workers=cfg.workers)
    records = []
    for ell in range(1, max(c.class_sizes, default=0) + 1):
        pred = switching.ratio_prediction(k, ell)
        rec = {"ell": ell, "C_ell": c.class_size(ell), "C_prev": c.class_size(ell - 1), "predicted": pred}
        if c.class_size(ell - 1):
            q = oracle.exact_ratio(k, ell, c)
            rec.update(exact=_fraction(q), exact_float=float(q),
                       relative_deviation=float(q) / pred - 1 if pred else None)
        records.append(rec)
    return None, records


def _verify_double_count(k, cfg):
    t = oracle.switching_tally(k, cap=cfg.cap_M)
    records = [{"ell": ell, "forward_legal": lev.forward_legal, "reverse_legal": lev.reverse_legal,
                "equal": lev.forward_legal == lev.reverse_legal} for ell, lev in t.levels.items()]
    return t.double_count_holds(), records


def _counterexample_record(item) -> dict:
    edges, idx, cells = item
    return {"hypergraph": [list(e) for e in edges], "parts": list(idx), "y_cells": list(cells)}


def _verify_conditions(k, cfg, reverse: bool):
    t = oracle.switching_tally(k, cap=cfg.cap_M)
    found = t.reverse_counterexamples if reverse else t.forward_counterexamples
    key = "reverse" if reverse else "forward"
    records = [{"ell": ell, "tuples": getattr(lev, f"{key}_tuples"),
                "legal": getattr(lev, f"{key}_legal")} for ell, lev in t.levels.items()]
    records.extend({"counterexample": _counterexample_record(c)} for c in found)
    return not found, records


def _verify_summation(k, cfg):
    res = summation.p_simple_from_switching_model(k)
    if res.summation is None:
        return False, [{"admissible": False}]
    s = res.summation
    return s.sigma1 <= s.total <= s.sigma2, [{
        "N": len(s.n) - 1, "total": s.total, "sigma1": s.sigma1, "sigma2": s.sigma2,
        "estimate": res.estimate, "lower": res.lower, "upper": res.upper}]


def _verify_identity(k, cfg):
    c = oracle.census(k, cap=cfg.cap_M, workers=cfg.workers)
    h = oracle.enumerate_simple_hypergraphs(k, cap=cfg.cap_M)
    mult = core.configuration_multiplicity(k)
    space = core.partition_space_size(k)
    rec = {"hypergraphs": h, "multiplicity": mult, "simple_partitions": c.simple_partitions,
           "partitions": c.lambda_size, "partition_formula": space}
    return h * mult == c.simple_partitions and c.lambda_size == space, [rec]


VERIFIERS = {
    "ratios": _verify_ratios,
    "double-count": _verify_double_count,
    "lemma5": lambda k, cfg: _verify_conditions(k, cfg, reverse=False),
    "lemma6": lambda k, cfg: _verify_conditions(k, cfg, reverse=True),
    "summation": _verify_summation,
    "identity": _verify_identity,
}


def cmd_verify(cfg: RunConfig, what: str) -> dict:
    k = cfg.degrees
    k.require_divisible()
    passed, records = VERIFIERS[what](k, cfg)
    return {"command": "verify", "check": what, "degrees": list(k.degrees), "r": k.r,
            "pass": passed, "records": records}


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for key, val in d.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, name + "."))
        elif isinstance(val, list):
            out[name] = json.dumps(val)
        else:
            out[name] = "" if val is None else val
    return out


def to_csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    fields = list(dict.fromkeys(f for r in flat for f in r))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--degrees", help="comma-separated degrees, or @file with one per line")
    src.add_argument("--regular", type=parse_regular, help="NxK: N vertices of degree K")
    common.add_argument("-r", type=int, required=True, help="edge size")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cap-M", type=int, default=None, help="exhaustive enumeration limit on M")

    parser = argparse.ArgumentParser(prog="hyperdeg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("count", parents=[common])
    p.add_argument("--mode", choices=("exact", "asymptotic", "both"), default="asymptotic")
    p = sub.add_parser("sample", parents=[common])
    p.add_argument("-n", "--count", type=int, default=1)
    p.add_argument("--simple", action="store_true", help="rejection-sample simple hypergraphs")
    p.add_argument("--max-tries", type=int, default=10_000)
    p = sub.add_parser("estimate", parents=[common])
    p.add_argument("--samples", type=int, default=100_000)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("what", choices=sorted(VERIFIERS))
    return parser


def _config(args) -> RunConfig:
    if args.regular is not None:
        n, deg = args.regular
        k = DegreeSequence.regular(n, deg, args.r)
    else:
        k = DegreeSequence(parse_degrees(args.degrees), args.r)
    return RunConfig(k, args.seed, args.workers, args.format, args.cap_M, args.regular)


def _emit(rows: list[dict], fmt: str, lines: bool, out) -> None:
    if fmt == "csv":
        out.write(to_csv(rows))
    elif lines:
        for row in rows:
            out.write(json.dumps(row) + "\n")
    else:
        out.write(json.dumps(rows[0]) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "count":
            rows, lines = [cmd_count(cfg, args.mode)], False
        elif args.command == "sample":
            rows, lines = cmd_sample(cfg, args.count, args.simple, args.max_tries), True
        elif args.command == "estimate":
            rows, lines = [cmd_estimate(cfg, args.samples)], False
        else:
            rows, lines = [cmd_verify(cfg, args.what)], False
    except (ValueError, ZeroDivisionError, OSError) as err:
        out.write(json.dumps({"error": type(err).__name__, "message": str(err)}) + "\n")
        return 1
    _emit(rows, cfg.format, lines, out)
    if any("error" in row for row in rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
