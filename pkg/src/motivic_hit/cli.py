"""Command-line entry point: ``mhl <command> ...``.

Exit codes: 0 verified/computed, 1 a mathematical check failed, 2 usage
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import arithmetic, steenrod, toplayer
from .monomial import InvalidArgs, enumerate_degree
from .steenrod import Limits, ResourceLimit

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    args: argparse.Namespace
    output_format: str = "json"
    cache_dir: str | None = None
    max_cols: int = 1 << 22
    max_rows: int = 1 << 24
    seed: int = 0

    @property
    def limits(self) -> Limits:
        return Limits(self.max_cols, self.max_rows)


class _UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return v


def _positive(text: str) -> int:
    v = _natural(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _emit(cfg: RunConfig, payload, rows: list[dict] | None = None, text: str | None = None) -> str:
    if cfg.output_format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output_format == "csv":
        rows = rows if rows is not None else [{k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
        buf = io.StringIO()
        fields = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if text is not None:
        return text if text.endswith("\n") else text + "\n"
    return "".join(f"{k}: {v}\n" for k, v in sorted(payload.items()))


def cmd_beta(cfg: RunConfig) -> tuple[int, str]:
    d = cfg.args.d
    if d < 1:
        raise _UsageError("beta needs d >= 1")
    b = arithmetic.beta_of(d)
    payload = {"d": str(d), "beta": b, "alpha_d": arithmetic.alpha_of(d),
               "s": b, "alpha_d_plus_s": arithmetic.alpha_of(d + b)}
    return EXIT_OK, _emit(cfg, payload)


def cmd_hit_dim(cfg: RunConfig) -> tuple[int, str]:
    n, d = cfg.args.n, cfg.args.d
    basis = enumerate_degree(n, d)
    cfg.limits.check_cols(len(basis))
    if d == 0:
        rank = 0
    else:
        rank = steenrod.hit_subspace(n, d, cfg.limits, cfg.cache_dir).rank
    payload = {"n": n, "d": d, "ambient_dim": len(basis), "hit_rank": rank, "quotient_dim": len(basis) - rank}
    return EXIT_OK, _emit(cfg, payload)


def cmd_classical_qdim(cfg: RunConfig) -> tuple[int, str]:
    n, d = cfg.args.n, cfg.args.d
    dim = steenrod.classical_hit_quotient_dim(n, d, cfg.limits)
    exceeds = d >= 1 and arithmetic.beta_of(d) > n
    violation = exceeds and dim > 0
    payload = {"n": n, "d": d, "quotient_dim": dim, "beta_exceeds_n": exceeds, "wood_violation": violation}
    return (EXIT_FAIL if violation else EXIT_OK), _emit(cfg, payload)


def cmd_scan_family(cfg: RunConfig) -> tuple[int, str]:
    a = cfg.args
    if a.lo > a.hi:
        raise _UsageError("empty range")
    if a.kind == "nm4":
        if a.lo < 1:
            raise _UsageError("r starts at 1")
        records = arithmetic.scan_family_nm4(a.lo, a.hi)
    else:
        if a.lo < 4:
            raise _UsageError("the nm3 family needs n >= 4")
        records = [arithmetic.check_family_nm3(n) for n in range(a.lo, a.hi + 1)]
    bad = any(r.contradiction for r in records)
    dicts = [r.to_dict() for r in records]
    if cfg.output_format == "json":
        out = arithmetic.records_to_json(records) + "\n"
    elif cfg.output_format == "csv":
        out = arithmetic.records_to_csv(records)
    else:
        out = "".join(
            f"{x['family']} r={x['r']} n={x['n']} k={x['k']} d={x['d']} alpha(d+n)={x['alpha_d_plus_n']}"
            f" beta>n={x['beta_exceeds_n']} hypothesis={x['kameko_condition']}\n"
            for x in dicts
        )
    return (EXIT_FAIL if bad else EXIT_OK), out


def cmd_verify_parity(cfg: RunConfig) -> tuple[int, str]:
    n, k = cfg.args.n, cfg.args.k
    if not 1 <= k < n:
        raise _UsageError(f"need 1 <= k < n, got n={n}, k={k}")
    ctx = toplayer.build_context(n, k, cfg.limits, cfg.cache_dir)
    reports = [
        toplayer.verify_parity_theorem(n, k, ctx, seed=cfg.seed),
        toplayer.verify_q0_edge_structure(ctx),
        toplayer.verify_reduced_power_vanishing(ctx),
        toplayer.johnson_orbit_check(n, k),
        toplayer.s_n_equivariance_check(ctx, trials=cfg.args.trials, seed=cfg.seed),
    ]
    ok = all(r.passed for r in reports)
    payload = {
        "n": n, "k": k, "d": ctx.d, "N": ctx.N, "passed": ok,
        "context": {"component_dim": len(ctx.component), "quotient_dim": ctx.quotient_dim,
                    "m0_size": len(ctx.m0), "direct_sum": True},
        "reports": [r.to_dict() for r in reports],
    }
    if cfg.output_format == "csv":
        rows = [{"check": f"{r.name}.{c}", "passed": v} for r in reports for c, v in r.checks.items()]
        out = _emit(cfg, payload, rows=rows)
    else:
        lines = [f"verify-parity n={n} k={k} d={ctx.d} N={ctx.N}"]
        for r in reports:
            for c, v in r.checks.items():
                lines.append(f"  {'PASS' if v else 'FAIL'} {r.name}.{c}")
        lines.append("all checks passed" if ok else "SOME CHECKS FAILED")
        out = _emit(cfg, payload, text="\n".join(lines))
    return (EXIT_OK if ok else EXIT_FAIL), out


COMMANDS = {
    "beta": cmd_beta,
    "verify-parity": cmd_verify_parity,
    "hit-dim": cmd_hit_dim,
    "scan-family": cmd_scan_family,
    "classical-qdim": cmd_classical_qdim,
}


def _common(suppress: bool) -> argparse.ArgumentParser:
    # Subcommand copies suppress defaults so flags given before the command survive.
    def default(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=default("json"), dest="output_format")
    common.add_argument("--cache-dir", default=default(None), help="subspace cache directory (default: $MHL_CACHE_DIR)")
    common.add_argument("--max-cols", type=_positive, default=default(Limits.max_cols))
    common.add_argument("--max-rows", type=_positive, default=default(Limits.max_rows))
    common.add_argument("--seed", type=_natural, default=default(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    p = argparse.ArgumentParser(prog="mhl", description="Motivic hit problem: top-layer parity checks.",
                                parents=[_common(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("beta", parents=[common], help="beta(d) and alpha(d)")
    s.add_argument("d", type=_natural)

    s = sub.add_parser("verify-parity", parents=[common], help="verify the top-layer parity theorem at (n, k)")
    s.add_argument("n", type=_positive)
    s.add_argument("k", type=_positive)
    s.add_argument("--trials", type=_natural, default=100)

    s = sub.add_parser("hit-dim", parents=[common], help="dimension of the hit subspace of N_n in degree d")
    s.add_argument("n", type=_positive)
    s.add_argument("d", type=_natural)

    s = sub.add_parser("scan-family", parents=[common], help="certify the beta(d) > n families")
    s.add_argument("kind", choices=["nm4", "nm3"])
    s.add_argument("lo", type=_natural)
    s.add_argument("hi", type=_natural, nargs="?")

    s = sub.add_parser("classical-qdim", parents=[common], help="dim QP_n^d through y_i -> x_i")
    s.add_argument("n", type=_positive)
    s.add_argument("d", type=_natural)
    return p


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "hi", None) is None and args.command == "scan-family":
        args.hi = args.lo
    cfg = RunConfig(
        command=args.command, args=args, output_format=args.output_format,
        cache_dir=args.cache_dir or os.environ.get("MHL_CACHE_DIR") or None,
        max_cols=args.max_cols, max_rows=args.max_rows, seed=args.seed,
    )
    try:
        code, out = COMMANDS[args.command](cfg)
    except (_UsageError, InvalidArgs) as e:
        print(f"mhl {args.command}: error: {e}", file=stderr)
        return EXIT_USAGE
    except ResourceLimit as e:
        print(f"mhl {args.command}: resource limit: {e}", file=stderr)
        return EXIT_RESOURCE
    except toplayer.DecompositionFailure as e:
        print(f"mhl {args.command}: decomposition failure: {e}", file=stderr)
        return EXIT_FAIL
    stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
