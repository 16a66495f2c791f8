"""Command-line interface: ``symball <command> [flags]``.

Payloads are JSON documents read from ``--in`` or standard input; results are
JSON documents written to ``--out`` or standard output.  Exit status is 0 on
success, 1 when a check fails and 2 on usage, schema or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import jsonio
from .ball import automorphism_eval
from .embedding import embedding_dimension, multi_indices, segre_whitney
from .errors import (
    DimensionError,
    NotInducedError,
    OutsideBallError,
    SchemaError,
    TooLargeError,
)
from .induced import check_sm_invariance, extract_generator, induced_eval, roundtrip_error
from .sampling import make_rng, random_ordered_config, random_sym_config
from .sympower import (
    MAX_FIBER_M,
    SymConfig,
    classify_stratum,
    covering_degree,
    fiber,
    fiber_size,
    project,
    stratum_codimension,
)
from .verify import run_suites

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

COMMANDS = ("dim", "indices", "embed", "project", "fiber", "degree", "classify",
            "aut-eval", "sym-apply", "recover", "invariance", "verify")
NEEDS_PAYLOAD = {"embed", "project", "fiber", "classify", "aut-eval", "sym-apply",
                 "recover", "invariance"}


@dataclass
class RunConfig:
    command: str
    m: Optional[int] = None
    s: Optional[int] = None
    seed: int = 0
    tol: Optional[float] = None
    partition: Optional[list] = None
    jobs: int = 1
    input: Optional[str] = None
    output: Optional[str] = None
    extra: dict = field(default_factory=dict)


class UsageError(ValueError):
    pass


def _need_ms(cfg, payload):
    m = cfg.m if cfg.m is not None else (payload or {}).get("m")
    s = cfg.s if cfg.s is not None else (payload or {}).get("s")
    if m is None or s is None:
        raise UsageError(f"'{cfg.command}' needs --m and --s")
    for name, v in (("m", m), ("s", s)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise UsageError(f"{name} must be a positive integer, got {v!r}")
    return m, s


def _require(payload, key):
    if not isinstance(payload, dict) or key not in payload:
        raise SchemaError(f"payload needs a '{key}' member")
    return payload[key]


def _tol(cfg, default):
    return default if cfg.tol is None else cfg.tol


def _cmd_dim(cfg, payload):
    m, s = _need_ms(cfg, payload)
    return {"N": embedding_dimension(m, s)}


def _cmd_indices(cfg, payload):
    m, s = _need_ms(cfg, payload)
    idx = multi_indices(m, s)
    return {"m": m, "s": s, "count": len(idx), "indices": [list(mu) for mu in idx]}


def _cmd_embed(cfg, payload):
    return jsonio.encode_embedding(segre_whitney(jsonio.decode_sym_config(payload)))


def _cmd_project(cfg, payload):
    return jsonio.encode_sym_config(project(jsonio.decode_ordered_config(payload)))


def _cmd_fiber(cfg, payload):
    c = jsonio.decode_sym_config(payload)
    doc = {"m": c.m, "s": c.s, "degree": fiber_size(c)}
    if c.m <= MAX_FIBER_M:
        tuples = sorted(fiber(c), key=lambda t: t.points.tobytes())
        doc["tuples"] = [jsonio.encode_ordered_config(t)["points"] for t in tuples]
    return doc


def _cmd_degree(cfg, payload):
    parts = cfg.partition if cfg.partition is not None else payload
    if parts is None:
        raise UsageError("'degree' needs --partition or a partition payload")
    return {"degree": covering_degree(jsonio.decode_partition(parts))}


def _cmd_classify(cfg, payload):
    c = jsonio.decode_sym_config(payload)
    p = classify_stratum(c, _tol(cfg, 0.0))
    return {"partition": list(p), "codimension": stratum_codimension(p, c.s)}


def _cmd_aut_eval(cfg, payload):
    g = jsonio.decode_automorphism(_require(payload, "automorphism"))
    if "points" in payload:
        pts = [jsonio.decode_point(p) for p in payload["points"]]
        return {"points": [jsonio.encode_vector(automorphism_eval(g, z)) for z in pts]}
    z = jsonio.decode_point(_require(payload, "point"))
    return {"point": jsonio.encode_vector(automorphism_eval(g, z))}


def _cmd_sym_apply(cfg, payload):
    f = jsonio.decode_induced_map(_require(payload, "map"))
    c = jsonio.decode_sym_config(_require(payload, "config"))
    return jsonio.encode_sym_config(induced_eval(f, c))


def _cmd_recover(cfg, payload):
    f = jsonio.decode_induced_map(payload)
    tol = _tol(cfg, 1e-8)
    g = extract_generator(f, f.s, f.power, tol=tol, seed=cfg.seed)
    rng = make_rng(cfg.seed, "recover-report")
    configs = [random_sym_config(rng, f.power, f.s) for _ in range(100)]
    return {"generator": jsonio.encode_automorphism(g),
            "roundtrip_error": roundtrip_error(f, g, configs)}


def _cmd_invariance(cfg, payload):
    h = jsonio.decode_tuple_map(_require(payload, "tuple_map"))
    if "samples" in payload:
        samples = [jsonio.decode_ordered_config(d) for d in payload["samples"]]
    else:
        rng = make_rng(cfg.seed, "invariance")
        samples = [random_ordered_config(rng, h.m, h.s) for _ in range(20)]
    ok = check_sm_invariance(h, samples, _tol(cfg, 1e-10))
    return {"invariant": ok, "samples": len(samples)}


def _cmd_verify(cfg, payload):
    m = 3 if cfg.m is None else cfg.m
    s = 2 if cfg.s is None else cfg.s
    results = run_suites(cfg.seed, m=m, s=s, jobs=cfg.jobs)
    return {"seed": cfg.seed, "m": m, "s": s,
            "passed": all(r.passed for r in results),
            "suites": [r.to_json() for r in results]}


HANDLERS = {
    "dim": _cmd_dim,
    "indices": _cmd_indices,
    "embed": _cmd_embed,
    "project": _cmd_project,
    "fiber": _cmd_fiber,
    "degree": _cmd_degree,
    "classify": _cmd_classify,
    "aut-eval": _cmd_aut_eval,
    "sym-apply": _cmd_sym_apply,
    "recover": _cmd_recover,
    "invariance": _cmd_invariance,
    "verify": _cmd_verify,
}


def _error(kind, exc, **extra):
    err = {"kind": kind, "message": str(exc)}
    err.update(extra)
    return {"error": err}


def run(cfg: RunConfig, payload=None):
    """Dispatch one command; returns ``(document, exit_status)``."""
    try:
        if cfg.command not in HANDLERS:
            raise UsageError(f"unknown command {cfg.command!r}")
        if cfg.tol is not None and not cfg.tol > 0:
            raise UsageError(f"--tol must be positive, got {cfg.tol}")
        if cfg.command in NEEDS_PAYLOAD and payload is None:
            raise UsageError(f"'{cfg.command}' needs a JSON payload on stdin or via --in")
        doc = HANDLERS[cfg.command](cfg, payload)
    except SchemaError as exc:
        return _error("schema", exc, path=list(exc.path)), EXIT_USAGE
    except OutsideBallError as exc:
        coords = None if exc.coords is None else jsonio.encode_vector(exc.coords)
        norm = None if exc.norm is None or exc.norm != exc.norm else exc.norm
        return _error("outside_ball", exc, index=exc.index, coords=coords, norm=norm), EXIT_USAGE
    except NotInducedError as exc:
        return _error("not_induced", exc), EXIT_CHECK
    except (UsageError, DimensionError, TooLargeError) as exc:
        return _error("usage", exc), EXIT_USAGE
    except ValueError as exc:
        return _error("domain", exc), EXIT_USAGE
    status = EXIT_CHECK if cfg.command == "verify" and not doc["passed"] else EXIT_OK
    return doc, status


def _partition_arg(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symball",
        description="Symmetric powers of the unit ball: embeddings, strata and induced maps.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--m", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float)
        p.add_argument("--in", dest="input", metavar="FILE")
        p.add_argument("--out", dest="output", metavar="FILE")
        p.add_argument("--partition", type=_partition_arg, metavar="LIST")
        if name == "verify":
            p.add_argument("--jobs", type=int, default=1)
    return parser


def _read_payload(cfg):
    if cfg.input is not None:
        with open(cfg.input, encoding="utf-8") as fh:
            text = fh.read()
    elif cfg.command in NEEDS_PAYLOAD or (cfg.command == "degree" and cfg.partition is None):
        text = sys.stdin.read()
    else:
        return None
    if not text.strip():
        return None
    return json.loads(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, m=args.m, s=args.s, seed=args.seed,
                    tol=args.tol, partition=args.partition,
                    jobs=getattr(args, "jobs", 1), input=args.input, output=args.output)
    try:
        payload = _read_payload(cfg)
    except json.JSONDecodeError as exc:
        doc, status = _error("schema", f"payload is not valid JSON: {exc}", path=[]), EXIT_USAGE
    except OSError as exc:
        doc, status = _error("usage", exc), EXIT_USAGE
    else:
        doc, status = run(cfg, payload)
    text = jsonio.dumps(doc) + "\n"
    if cfg.output is not None and "error" not in doc:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
