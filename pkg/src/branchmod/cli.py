"""Command-line front end.

    branchmod apery n=4 b=6,7
    branchmod dimension n=6 b=9,10 --json
    branchmod batch --count 200 --seed 7

Exit codes: 0 all checks hold, 1 a cross-check or internal assertion failed,
2 usage error, 3 invalid class.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import errors
from .apery import apery_orders, semimodule, singular_semimodule
from .blowup import trajectory
from .branch import derive_invariants, exponent_ladder, parse_class
from .harness import SUITE_SEED, run_batch
from .moduli import dimension_report
from .oracle import module_apery, specialize, verify_class

DEFAULT_SEEDS = (1, 2, 3)
DEFAULT_BATCH_SEED = SUITE_SEED


def _table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _ints(values) -> str:
    return " ".join(str(v) for v in values)


def _env_seed():
    raw = os.environ.get("BRANCHMOD_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"BRANCHMOD_SEED must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (document, text, exit code)


def cmd_invariants(args, pair):
    sgd = derive_invariants(pair)
    doc = {"class": pair.as_dict(), **sgd.as_dict()}
    text = "\n".join([
        f"class       {pair}",
        f"e           {_ints(sgd.e)}",
        f"n_j         {_ints(sgd.n_seq)}",
        f"nu_j        {_ints(sgd.nu)}",
        f"bar beta    {_ints(sgd.bar_betas)}",
        f"conductor   {sgd.conductor}",
    ])
    return doc, text, 0


def cmd_exponents(args, pair):
    ladder = exponent_ladder(pair)
    members = ladder.members(args.upto)
    doc = {"class": pair.as_dict(), **ladder.as_dict(), "upto": args.upto, "members": members}
    strata = ", ".join(f"{m}Z >= {s}" for s, m in ladder.entries)
    return doc, f"strata   {strata}\nmembers  {_ints(members)}", 0


def cmd_apery(args, pair):
    table = apery_orders(pair)
    doc = {"class": pair.as_dict(), **table.as_dict()}
    rows = [(j + 1, a, b, "*" if j < pair.n else "") for j, (a, b) in enumerate(zip(table.a, table.b))]
    text = _table(["j", "a(j)", "b(j)", "basis"], rows) + f"\nApéry set {_ints(table.apery)}"
    return doc, text, 0


def cmd_semimodule(args, pair):
    mod = singular_semimodule(pair) if args.singular else semimodule(pair)
    members = mod.members(args.upto)
    start = min(mod.apery_values)
    gaps = [m for m in range(start, min(args.upto, max(mod.apery_values)) + 1) if m not in mod]
    doc = {"class": pair.as_dict(), **mod.as_dict(), "upto": args.upto,
           "members": members, "gaps": gaps}
    text = (f"{mod.kind} semimodule, Apéry set {_ints(sorted(mod.apery_values))}\n"
            f"members  {_ints(members)}\ngaps     {_ints(gaps)}")
    return doc, text, 0


def cmd_trajectory(args, pair):
    traj = trajectory(pair, args.extra)
    doc = {"class": pair.as_dict(), **traj.as_dict()}
    rows = []
    for i, st in enumerate(traj.states):
        p = st.pair
        rows.append((i, p.n, p.beta0, ",".join(map(str, p.betas)) or "-",
                     p.delta_x, p.delta_y, st.n, st.delta))
    text = _table(["step", "n", "b0", "chars", "dx", "dy", "nu_j", "delta_j"], rows)
    return doc, text + f"\nsmooth from step {traj.stop}", 0


def cmd_dimension(args, pair):
    report = dimension_report(pair)
    doc = {"class": pair.as_dict(), **report.as_dict()}
    text = "\n".join([
        f"genzmer     {report.genzmer}",
        f"geometric   {'-' if report.geometric is None else report.geometric}",
        f"sigma       {_ints(report.per_step_sigma)}",
        f"increments  {_ints(report.per_step_theta_increments)}",
        f"agree       {str(report.agree).lower()}",
    ])
    return doc, text, 0 if report.agree else 1


def cmd_verify(args, pair):
    seeds = args.seeds
    if seeds is None:
        env = _env_seed()
        seeds = [env] if env is not None else list(DEFAULT_SEEDS)
    report = verify_class(pair, seeds, args.precision)
    doc = report.as_dict()
    rows = [(r.seed, _ints(r.apery), "yes" if r.matches else "NO", "yes" if r.stable else "NO")
            for r in report.results]
    text = f"expected {_ints(report.expected)}\n" + _table(["seed", "curve", "match", "stable"], rows)
    if args.emit_forms:
        forms = {}
        for seed in seeds:
            _, combos = module_apery(specialize(pair, seed, args.precision))
            forms[str(seed)] = [c.as_dict() for c in combos]
        with open(args.emit_forms, "w") as fh:
            json.dump({"class": pair.as_dict(), "forms": forms}, fh, indent=1)
        text += f"\nforms written to {args.emit_forms}"
        doc["formsFile"] = args.emit_forms
    return doc, text, 0 if report.ok else 1


def cmd_batch(args, _pair=None):
    seed = args.seed
    if seed is None:
        env = _env_seed()
        seed = DEFAULT_BATCH_SEED if env is None else env
    reports = run_batch(args.count, seed, args.max_n, args.max_g)
    failed = [r for r in reports if not r.ok]
    doc = {"seed": seed, "count": args.count, "failures": len(failed),
           "classes": [r.as_dict() for r in reports]}
    lines = [f"{len(reports)} classes (seed {seed}), {len(failed)} with failures"]
    for r in failed:
        for name, msg in r.failures.items():
            lines.append(f"  {r.pair}: {name}: {msg}")
    return doc, "\n".join(lines), 0 if not failed else 1


COMMANDS = {
    "invariants": cmd_invariants,
    "exponents": cmd_exponents,
    "apery": cmd_apery,
    "semimodule": cmd_semimodule,
    "trajectory": cmd_trajectory,
    "dimension": cmd_dimension,
    "verify": cmd_verify,
    "batch": cmd_batch,
}


def _seed_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchmod",
                                     description="Semimodules and moduli of plane branch classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_class(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("klass", nargs="+", metavar="FIELD",
                       help="class literal, e.g. n=6 b=9,10 b0=9 dx=0 dy=0, or a JSON object")
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    with_class("invariants", "gcd chain, semigroup generators and conductor")
    p = with_class("exponents", "exponent ladder")
    p.add_argument("--upto", type=int, required=True)
    with_class("apery", "orders of the generic Apéry basis")
    p = with_class("semimodule", "membership listing and gaps")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--singular", action="store_true", help="forms vanishing at the origin")
    p = with_class("trajectory", "infinitely near points")
    p.add_argument("--extra", type=int, default=0, help="steps past the first smooth point")
    with_class("dimension", "generic moduli dimension, both ways")
    p = with_class("verify", "compare with curves drawn from the class")
    p.add_argument("--seeds", type=_seed_list)
    p.add_argument("--precision", type=int)
    p.add_argument("--emit-forms", metavar="PATH")

    p = sub.add_parser("batch", help="cross-checks on random classes")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-n", type=int, default=24)
    p.add_argument("--max-g", type=int, default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    return parser


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        pair = parse_class(" ".join(args.klass)) if hasattr(args, "klass") else None
        doc, text, code = COMMANDS[args.command](args, pair)
    except errors.BranchError as exc:
        code = 3 if isinstance(exc, ValueError) else 1
        if args.json:
            print(json.dumps(exc.as_dict()), file=out)
        print(f"error: {exc.code}: {exc}", file=err)
        return code
    print(json.dumps(doc) if args.json else text, file=out)
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
