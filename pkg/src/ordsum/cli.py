"""Command-line interface.

Exit codes: 0 success, 1 property failure, 2 parse error, 3 domain error.
``--format machine`` prints sorted-key JSON with ordinals in the text notation.
"""

import argparse
import json
import os
import sys

from .errors import DomainError, ParseError
from .notation import (
    format_ordinal,
    format_sequence,
    parse_expression,
    parse_ordinal,
    parse_sequence,
    parse_tree,
)
from .ordinal import compare, nat
from .realize import check_ormf, locate, plan_lines, realize, stacked_plan
from .sums import children_size_sum, decompose, sum_h, sum_s, sum_s1, sum_s2, tree_size
from .verify import FIXED_SUITES, SUITES, run_suite

SEED_ENV = "ORDSUM_SEED"

DEFAULTS = {"trials": 100, "seed": 0, "prefix": 8, "sample_budget": 64, "suite": "all"}

OPS = {"s": sum_s, "s1": sum_s1, "s2": sum_s2, "h": sum_h}


class Output:
    def __init__(self, machine):
        self.machine = machine
        self.lines = []
        self.data = {}

    def line(self, text):
        self.lines.append(text)

    def put(self, key, value):
        self.data[key] = value

    def flush(self, stream):
        if self.machine:
            stream.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            for line in self.lines:
                stream.write(line + "\n")


def load_config(path):
    cfg = dict(DEFAULTS)
    if path:
        with open(path) as f:
            data = json.load(f)
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(data)
    if os.environ.get(SEED_ENV):
        try:
            cfg["seed"] = int(os.environ[SEED_ENV])
        except ValueError:
            raise DomainError(f"{SEED_ENV} must be an integer") from None
    return cfg


def _pick(args, cfg, name):
    value = getattr(args, name, None)
    return cfg[name] if value is None else value


def cmd_eval(args, cfg, out):
    value = parse_expression(args.expr)
    out.line(format_ordinal(value))
    out.put("value", format_ordinal(value))


def _decomposition(d):
    def pairs(xs):
        return [[i, format_ordinal(x)] for i, x in xs]

    return {
        "zeta": format_ordinal(d.zeta),
        "epsilon": format_ordinal(d.epsilon),
        "z_special": pairs(d.z_special),
        "e_special": pairs(d.e_special),
        "hearts": pairs(d.hearts),
        "diamonds": None if d.diamonds is None else pairs(d.diamonds),
        "clause": d.clause,
    }


def cmd_infsum(args, cfg, out):
    s = parse_sequence(args.seq)
    if args.op == "all":
        values = {}
        for name, f in OPS.items():
            try:
                values[name] = format_ordinal(f(s))
            except DomainError:
                values[name] = None
            out.line(f"{name}: {values[name] if values[name] is not None else 'undefined'}")
        out.put("values", values)
    else:
        value = format_ordinal(OPS[args.op](s))
        out.line(value)
        out.put("value", value)
    if args.explain:
        d = _decomposition(decompose(s))
        out.put("decomposition", d)
        out.line(f"zeta = {d['zeta']}")
        out.line(f"epsilon = {d['epsilon']}")
        for key in ("z_special", "e_special", "hearts", "diamonds"):
            if d[key] is None:
                out.line(f"{key}: undefined")
            else:
                items = ", ".join(f"{i}: {x}" for i, x in d[key])
                out.line(f"{key}: {items or 'none'}")
        out.line(f"clause {d['clause']}")


def cmd_realize(args, cfg, out):
    s = parse_sequence(args.seq)
    budget = _pick(args, cfg, "prefix")
    plan = stacked_plan(s) if args.stacked else realize(s)
    lines = plan_lines(plan)
    report = check_ormf(plan, cfg["sample_budget"], cfg["seed"])
    out.line(f"sequence {format_sequence(s)}")
    for line in lines:
        out.line(line)
    witness = None
    if report.witness is not None:
        eta, desc = report.witness
        witness = {"position": None if eta is None else format_ordinal(eta), "detail": desc}
    out.line(f"ormf {report.verdict} ({report.sampled} sampled positions)")
    if witness:
        out.line(f"witness {witness['position']}: {witness['detail']}")
    located = []
    n = 0
    total = plan.claimed_total
    while n < budget and compare(nat(n), total) < 0:
        src, rank = locate(plan, nat(n))
        located.append([n, src, format_ordinal(rank)])
        out.line(f"position {n} -> source {src} rank {format_ordinal(rank)}")
        n += 1
    out.put("sequence", format_sequence(s))
    out.put("plan", lines)
    out.put("ormf", {"verdict": report.verdict, "sampled": report.sampled, "witness": witness})
    out.put("positions", located)


def cmd_locate(args, cfg, out):
    s = parse_sequence(args.seq)
    eta = parse_ordinal(args.eta)
    src, rank = locate(realize(s), eta)
    out.line(f"source {src} rank {format_ordinal(rank)}")
    out.put("source", src)
    out.put("rank", format_ordinal(rank))


def cmd_tree_size(args, cfg, out):
    if args.child_sizes is not None:
        if args.tree is not None:
            raise DomainError("give either a tree or --child-sizes, not both")
        value = children_size_sum(parse_sequence(args.child_sizes), args.op)
    elif args.tree is not None:
        value = tree_size(parse_tree(args.tree), args.mode, args.op)
    else:
        raise DomainError("tree-size needs a tree or --child-sizes")
    out.line(format_ordinal(value))
    out.put("value", format_ordinal(value))


def cmd_verify(args, cfg, out):
    suite = _pick(args, cfg, "suite")
    trials = _pick(args, cfg, "trials")
    seed = args.seed if args.seed is not None else cfg["seed"]
    reports = run_suite(suite, trials, seed)
    for r in reports:
        out.line(r.summary())
        for f in r.failures:
            out.line(f"  seed {f.seed}: {f.input}: {f.detail}")
    out.put("suite", suite)
    out.put("seed", seed)
    out.put("reports", [r.as_dict() for r in reports])
    return 0 if all(r.ok for r in reports) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="ordsum", description="Infinite natural sums of ordinals.")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--config", help="JSON file with harness defaults")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("eval", help="evaluate an ordinal expression")
    q.add_argument("expr")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("infsum", help="infinite sum of a sequence")
    q.add_argument("seq")
    q.add_argument("--op", choices=tuple(OPS) + ("all",), default="s")
    q.add_argument("--explain", action="store_true")
    q.set_defaults(func=cmd_infsum)

    q = sub.add_parser("realize", help="block plan realizing the mixed sum")
    q.add_argument("seq")
    q.add_argument("--prefix", type=int, help="number of leading positions to locate")
    q.add_argument(
        "--stacked",
        action="store_true",
        help="dump the interleaved-chains plan instead (not order respecting)",
    )
    q.set_defaults(func=cmd_realize)

    q = sub.add_parser("locate", help="source and rank at a position of the realization")
    q.add_argument("seq")
    q.add_argument("eta")
    q.set_defaults(func=cmd_locate)

    q = sub.add_parser("tree-size", help="size of a tree")
    q.add_argument("tree", nargs="?")
    q.add_argument("--mode", choices=("tree", "formula-root"), default="tree")
    q.add_argument("--op", choices=tuple(OPS), default="s")
    q.add_argument("--child-sizes", help="sizes of a connective's children, as a sequence")
    q.set_defaults(func=cmd_tree_size)

    q = sub.add_parser("verify", help="run property suites")
    q.add_argument("--suite", choices=tuple(SUITES) + tuple(FIXED_SUITES) + ("all",))
    q.add_argument("--trials", type=int)
    q.add_argument("--seed", type=int)
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    out = Output(args.format == "machine")
    try:
        cfg = load_config(args.config)
        code = args.func(args, cfg, out) or 0
    except ParseError as e:
        stderr.write(f"parse error: {e}\n")
        return 2
    except (DomainError, OSError, json.JSONDecodeError) as e:
        stderr.write(f"error: {e}\n")
        return 3
    out.flush(stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
