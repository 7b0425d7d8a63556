"""
Command-line entry point.

    dwd enumerate -n 4
    dwd verify -n 3 --report results/verify_3.json
    dwd express -n 4 --word "R1 R3 R2 B2 R1 R3 R2 B1 B3 B2 B1 B3" --minor "14|12"
    dwd worker --config configs/worker_w1.json

Results are printed as JSON on stdout; logs go to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

import argparse
import json
import logging
import os
import random
import sys
from typing import List, Optional

from .config import Config, load_config
from .errors import (ConfigError, DwdError, FingerprintModeRequired, FormatTooLarge, NotDivisible,
                     ScopeTooLarge, SearchBudgetExceeded, WordError)
from .export import ExportFormat, export_graph
from .hamiltonian import hamiltonian_cycle, is_hamiltonian_cycle
from .labels import ChamberLabel, class_key, decode_key, format_labels
from .oracle import oracle_check
from .phi_graph import EnumerateOptions, compare_with_published, enumerate_phi
from .positivity import (Scope, express_minor, numeric_check, symb_identity_check, tp_matrix,
                         verify_conjecture)
from .quiver import detect_moves, move_to_text
from .remote import RemotePool
from .wiring import chamber_labels, read_word_arg, standard_word

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

MAX_N = 5
LONG_ENUMERATE_N = 5
LONG_VERIFY_N = 4

logger = logging.getLogger("dwd")


class UsageError(Exception):
    pass


def setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dwd", description="Double wiring diagram move graphs and minor positivity")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="number of strings per color")
    common.add_argument("--config", help="JSON process config")
    common.add_argument("--threads", type=int, help="local worker processes")
    common.add_argument("--seed", type=int, help="random seed (u64)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--confirm-long", action="store_true", help="allow long-running jobs")
    common.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("enumerate", "stats"):
        p = sub.add_parser(name, parents=[common], help="enumerate Φ_n and print its statistics")
        p.add_argument("--fingerprint", action="store_true", help="store 128-bit fingerprints (n = 5)")
        p.add_argument("--checkpoint", help="checkpoint file, resumed when it exists")
        p.add_argument("--remote", action="store_true", help="expand on the config's neighbor workers")

    p = sub.add_parser("export", parents=[common], help="write Φ_n as an edge list, DOT file or stats JSON")
    p.add_argument("--format", choices=[f.value for f in ExportFormat], default=ExportFormat.EDGELIST.value)

    sub.add_parser("hamiltonian", parents=[common], help="search for a Hamiltonian cycle of Φ_n")

    p = sub.add_parser("express", parents=[common], help="write a minor as a Laurent polynomial over a base class")
    p.add_argument("--word", help="base word as tokens or a file path (default: standard word)")
    p.add_argument("--minor", required=True, help='target minor as "<rows>|<cols>", e.g. "14|12"')
    p.add_argument("--check", action="store_true", help="also evaluate on a totally positive matrix")

    p = sub.add_parser("verify", parents=[common], help="check positivity of every minor over every class")
    p.add_argument("--sample", type=int, help="random (class, minor) pairs instead of all")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--remote", action="store_true", help="verify on the config's neighbor workers")

    p = sub.add_parser("oracle-check", parents=[common], help="compare quiver and word move detection")
    p.add_argument("--sample", type=int, help="random classes instead of all")

    p = sub.add_parser("identity-check", parents=[common], help="expand exchange identities symbolically")
    p.add_argument("--sample", type=int, help="random moves instead of all")

    sub.add_parser("worker", parents=[common], help="serve expansion and verification over gRPC")
    return parser


def _config(args) -> Config:
    config = load_config(args.config)
    return config.with_overrides(
        threads=args.threads,
        seed=args.seed,
        output_dir=args.out,
        fingerprint_mode=True if getattr(args, "fingerprint", False) else None,
        checkpoint_path=getattr(args, "checkpoint", None),
    )


def _require_n(args) -> int:
    if args.n is None:
        raise UsageError("-n is required")
    if args.n < 2:
        raise UsageError(f"-n must be at least 2, got {args.n}")
    return args.n


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _write_json(path: str, data) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def cmd_enumerate(args, config: Config) -> int:
    n = _require_n(args)
    if n > MAX_N:
        raise ScopeTooLarge(f"Φ_{n} is beyond exact enumeration; n <= {MAX_N} is supported")
    if n >= LONG_ENUMERATE_N and not args.confirm_long:
        raise UsageError(f"enumerating Φ_{n} takes hours; pass --confirm-long")
    opts = EnumerateOptions(threads=config.threads, fingerprint_mode=config.fingerprint_mode,
                            checkpoint_path=config.checkpoint_path,
                            memory_budget_bytes=config.memory_budget_bytes, keep_graph=False)
    if args.remote:
        opts.expander = RemotePool(config).expand(n)
    _, stats = enumerate_phi(n, opts)
    out = stats.to_json()
    out["published"] = compare_with_published(stats)
    _emit(out)
    return EXIT_OK


def cmd_export(args, config: Config) -> int:
    n = _require_n(args)
    if n >= LONG_ENUMERATE_N:
        raise FormatTooLarge(f"Φ_{n} is too large to export; use enumerate for its statistics")
    graph, stats = enumerate_phi(n, EnumerateOptions(threads=config.threads))
    out_dir = os.path.join(config.output_dir, f"phi_{n}")
    files = export_graph(graph, ExportFormat(args.format), out_dir)
    _emit({"n": n, "vertices": stats.vertices, "files": files})
    return EXIT_OK


def cmd_hamiltonian(args, config: Config) -> int:
    n = _require_n(args)
    if n >= LONG_ENUMERATE_N:
        raise ScopeTooLarge("the Hamiltonian search is meant for small graphs")
    graph, _ = enumerate_phi(n, EnumerateOptions(threads=config.threads))
    try:
        cycle = hamiltonian_cycle(graph, config.hamiltonian_node_budget)
    except SearchBudgetExceeded as e:
        _emit({"n": n, "vertices": graph.vertex_count, "result": "budget_exceeded", "detail": str(e)})
        return EXIT_FAILURE
    if cycle is None:
        _emit({"n": n, "vertices": graph.vertex_count, "result": "none"})
        return EXIT_OK
    _emit({"n": n, "vertices": graph.vertex_count, "result": "cycle", "cycle": cycle,
           "valid": is_hamiltonian_cycle(graph, cycle)})
    return EXIT_OK


def cmd_express(args, config: Config) -> int:
    n = _require_n(args)
    word = read_word_arg(args.word, n) if args.word else standard_word(n)
    try:
        target = ChamberLabel.parse(args.minor)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if target.is_unit or target.red >> n or target.blue >> n:
        raise UsageError(f"{args.minor} is not a minor of an {n}x{n} matrix")
    base = class_key(chamber_labels(word))
    report = express_minor(base, target)

    print(f"base: {format_labels(decode_key(base))}")
    for step in report.path.steps:
        print(move_to_text(step))
    print(f"{target.minor_name()} = {report.expression}")
    print(f"terms: {report.term_count}  positive: {report.positive}")
    ok = report.positive
    if args.check:
        matched = numeric_check(base, report, tp_matrix(n, config.seed))
        print(f"numeric check: {matched}")
        ok = ok and matched
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_verify(args, config: Config) -> int:
    n = _require_n(args)
    scope = Scope(args.sample)
    if scope.is_full and n >= LONG_VERIFY_N and not args.confirm_long:
        raise UsageError(f"full verification for n={n} is long; pass --confirm-long or use --sample")
    runner = RemotePool(config).verify(n) if args.remote else None
    report = verify_conjecture(n, scope, seed=config.seed, threads=config.threads, runner=runner)
    data = report.to_json()
    if args.report:
        _write_json(args.report, data)
    _emit(data)
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_oracle(args, config: Config) -> int:
    n = _require_n(args)
    if n > MAX_N:
        raise ScopeTooLarge(f"oracle checks run for n <= {MAX_N}")
    report = oracle_check(n, args.sample, config.seed)
    _emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_identity(args, config: Config) -> int:
    n = _require_n(args)
    if n > LONG_VERIFY_N:
        raise ScopeTooLarge(f"symbolic identity checks run for n <= {LONG_VERIFY_N}")
    graph, _ = enumerate_phi(n, EnumerateOptions(threads=config.threads))
    items = [(key, move) for key in graph.keys for move in detect_moves(decode_key(key))]
    if args.sample is not None and args.sample < len(items):
        items = random.Random(config.seed).sample(items, args.sample)
    failures = [move_to_text(move) for key, move in items if not symb_identity_check(decode_key(key), move, n)]
    _emit({"n": n, "moves": len(items), "failures": failures})
    return EXIT_OK if not failures else EXIT_FAILURE


def cmd_worker(args, config: Config) -> int:
    from .worker import serve

    serve(config)
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "stats": cmd_enumerate,
    "export": cmd_export,
    "hamiltonian": cmd_hamiltonian,
    "express": cmd_express,
    "verify": cmd_verify,
    "oracle-check": cmd_oracle,
    "identity-check": cmd_identity,
    "worker": cmd_worker,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    setup_logging(args.verbose)
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except (UsageError, ConfigError, ScopeTooLarge, FingerprintModeRequired, FormatTooLarge, WordError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except NotDivisible as e:
        logger.error(f"exchange division failed: {e}")
        return EXIT_FAILURE
    except DwdError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        logger.warning("interrupted")
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())
