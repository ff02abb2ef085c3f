"""Command-line entry point: ``cayrep <command> ...``.

Exit codes: 0 success, 1 bad input (a JSON error object is printed),
2 budget exhausted (partial JSON with ``"exact": false``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from importlib import resources

from . import perm as P
from .atlas import DEFAULT_ELEMENT_CAP, aut_of, build_group
from .autgroup import aut_group, classify_type
from .cayley import CayleyGraph, is_central, parse_connection
from .errors import BudgetExceeded, CapExceeded, CayrepError
from .gbase import ELEMENT_CAP, g_base
from .twisted import verify_twisted_family
from .verify import DEFAULT_SEED, d2_sizes, property_suites, simple_sweep

log = logging.getLogger("cayrep")

ENV_ELEMENT_CAP = "CAYREP_ELEMENT_CAP"
ENV_CLOSURE_CAP = "CAYREP_CLOSURE_CAP"
ENV_TIME_LIMIT = "CAYREP_TIME_LIMIT"


class InputError(CayrepError):
    pass


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    connection: str | None = None
    element_cap: int = DEFAULT_ELEMENT_CAP
    closure_cap: int = ELEMENT_CAP
    time_limit: float = 0.0
    out: str | None = None
    threads: int = 1
    seed: int = DEFAULT_SEED
    m: int = 8
    all_class_unions: bool = False

    def __post_init__(self):
        if self.element_cap <= 0 or self.closure_cap <= 0 or self.time_limit < 0:
            raise InputError("budgets must be positive")
        if self.threads < 1:
            raise InputError("thread count must be at least 1")


def _env_number(name, default, kind=int):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return kind(raw)
    except ValueError:
        raise InputError(f"{name} must be a number, got {raw!r}") from None


def load_schema() -> dict:
    return json.loads(resources.files("cayrep").joinpath("schema.json").read_text())


@contextmanager
def time_budget(seconds: float):
    if not seconds:
        yield
        return

    def fire(signum, frame):
        raise BudgetExceeded(f"time limit of {seconds} s reached")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- commands -----------------------------------------------------------------------------

def _graph(cfg: RunConfig):
    if not cfg.group:
        raise InputError("--group is required")
    g = build_group(cfg.group, cfg.element_cap)
    if cfg.connection is None:
        raise InputError("--connection is required")
    x = parse_connection(g, cfg.connection)
    if not is_central(g, x):
        raise InputError("connection set not normal")
    return g, CayleyGraph(g, x)


def cmd_group_info(cfg: RunConfig) -> dict:
    if not cfg.group:
        raise InputError("--group is required")
    g = build_group(cfg.group, cfg.element_cap)
    out = {"kind": "group-info", "group": g.name, "order": g.n, "degree": g.degree,
           "classes": [{"size": c.size, "element_order": c.element_order,
                        "representative": g.fmt(c.rep)} for c in g.classes],
           "simple": g.is_simple}
    if len(g.center) == 1:
        aut = aut_of(g)
        out["socle_order"] = len(g.socle)
        out["aut_order"] = len(aut)
        out["out_order"] = aut.out_order
    return out


def _k_summary(k) -> dict:
    return {"order": k.order_json(), "strategy": k.strategy}


def cmd_autgroup(cfg: RunConfig) -> dict:
    g, gam = _graph(cfg)
    k = aut_group(gam)
    tag = classify_type(k, g) if not g.is_simple and len(g.center) == 1 else None
    out = {"kind": "autgroup", "group": g.name, "connection_size": len(gam.connection),
           "order": k.order_json(), "strategy": k.strategy,
           "generators": [P.format_perm(s) for s in k.generators],
           "exact": k.exact}
    if tag is not None:
        out["type"] = tag.kind
        out["minimal_block_order"] = len(tag.block)
    return out


def cmd_reps(cfg: RunConfig) -> dict:
    g, gam = _graph(cfg)
    gb = g_base(gam)
    classes = []
    for c in gb.classes:
        classes.append({
            "label": c.rep.label,
            "connection": [g.fmt(x) for x in c.connection],
            "subgroup_generators": [P.format_perm(s) for s in c.rep.generators],
            "equivalent_to_input": c.contains_right_regular,
            "class_members_seen": c.members,
            "generators_in_k": all(c.in_k),
        })
    return {"kind": "reps", "group": g.name, "b": gb.b, "classes": classes,
            "k": _k_summary(gb.k), "route": gb.route,
            "type": gb.type_tag.kind if gb.type_tag else None,
            "pairwise_evidence": gb.evidence, "exact": gb.exact}


def cmd_verify(cfg: RunConfig, which: str) -> dict:
    if which == "simple-sweep":
        if not cfg.group:
            raise InputError("--group is required")
        rep = simple_sweep(cfg.group)
    elif which == "twisted":
        rep = verify_twisted_family(cfg.m, cfg.time_limit or None)
    elif which == "lemmas":
        rep = property_suites(cfg.seed)
    elif which == "d2-sizes":
        rep = d2_sizes()
    else:
        raise InputError(f"unknown verification {which!r}")
    return {"kind": "verify", "suite": which, "report": rep, "pass": rep["pass"]}


# -- argument handling -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayrep",
                                description="Cayley representations of central Cayley graphs")
    p.add_argument("--json-schema", action="store_true", help="print the output schema")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--element-cap", type=int)
    p.add_argument("--closure-cap", type=int)
    p.add_argument("--time-limit", type=float, help="seconds; 0 disables")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command")

    grp = sub.add_parser("group", help="group information")
    grp.add_argument("what", choices=["info"])
    grp.add_argument("--group", required=True)

    for name in ("autgroup", "reps"):
        c = sub.add_parser(name)
        c.add_argument("--group", required=True)
        c.add_argument("--connection", required=True,
                       help='JSON: {"elements": [...]}, {"classes": [...]} or {"named": ...}')

    ver = sub.add_parser("verify", help="bundled verification suites")
    ver.add_argument("which", choices=["simple-sweep", "twisted", "lemmas", "d2-sizes"])
    ver.add_argument("--group")
    ver.add_argument("--m", type=int, default=8)
    ver.add_argument("--all-class-unions", action="store_true",
                     help="accepted for clarity; the sweep always covers every union")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        group=getattr(args, "group", None),
        connection=getattr(args, "connection", None),
        element_cap=args.element_cap or _env_number(ENV_ELEMENT_CAP, DEFAULT_ELEMENT_CAP),
        closure_cap=args.closure_cap or _env_number(ENV_CLOSURE_CAP, ELEMENT_CAP),
        time_limit=(args.time_limit if args.time_limit is not None
                    else _env_number(ENV_TIME_LIMIT, 0.0, float)),
        out=args.out, threads=args.threads, seed=args.seed,
        m=getattr(args, "m", 8),
        all_class_unions=getattr(args, "all_class_unions", False))


def run(cfg: RunConfig, which: str | None = None) -> tuple[int, dict]:
    from . import gbase
    gbase.ELEMENT_CAP = cfg.closure_cap
    try:
        with time_budget(cfg.time_limit if cfg.command != "verify" else 0):
            if cfg.command == "group":
                doc = cmd_group_info(cfg)
            elif cfg.command == "autgroup":
                doc = cmd_autgroup(cfg)
            elif cfg.command == "reps":
                doc = cmd_reps(cfg)
            else:
                doc = cmd_verify(cfg, which)
    except (BudgetExceeded, CapExceeded) as exc:
        partial = getattr(exc, "partial", None)
        return 2, {"kind": "budget", "error": str(exc), "exact": False,
                   "partial": partial if isinstance(partial, dict) else None}
    except (CayrepError, ValueError) as exc:
        return 1, {"kind": "error", "error": str(exc), "type": type(exc).__name__}
    code = 0 if doc.get("pass", True) else 3
    return code, doc


def dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.json_schema:
        print(dump(load_schema()))
        return 0
    if not args.command:
        parser.print_help()
        return 1
    try:
        cfg = config_from_args(args)
    except InputError as exc:
        print(dump({"kind": "error", "error": str(exc), "type": "InputError"}))
        return 1
    code, doc = run(cfg, getattr(args, "which", None))
    text = dump(doc)
    if cfg.out and code == 0:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
