"""Command-line interface.

Exit codes: 0 success, 1 bad input or usage, 2 a violated internal invariant.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, kernels
from .analyze import SuiteReport, report, reports_csv, summarize, verify
from .canon import normal_form
from .classify import default_jobs, run_classification
from .classlist import ClassList, export_classes, import_classes, iter_polytopes
from .enumeration import fano_oracle, reflexive_classes
from .errors import FanoError, InvariantError

log = logging.getLogger("toricfano")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for invariant violations here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out: Path, command: list[str], inputs: list, counts: dict, started: float, jobs: int) -> Path:
    manifest = {
        "command": command,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "output": {"path": str(out), "sha256": _sha256(out), **counts},
        "wall_time_s": round(time.perf_counter() - started, 3),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "workers": jobs,
        "version": __version__,
        "kernel_backend": kernels.BACKEND,
    }
    path = out.with_name(out.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _jobs(args) -> int:
    return args.jobs if args.jobs is not None else default_jobs()


def cmd_reflexive(args) -> int:
    if args.dim > 2:
        raise UsageError("reflexive polytopes are built in only for dimension <= 2; "
                         "supply a database with 'classify --reflexive-db' instead")
    classes = reflexive_classes(args.dim)
    export_classes(classes, args.out, header=f"reflexive polytopes of dimension {args.dim}")
    print(f"{len(classes)} reflexive {args.dim}-polytope classes written to {args.out}")
    return 0


def cmd_classify(args, argv) -> int:
    started = time.perf_counter()
    d = args.dim
    if d < 1:
        raise UsageError("--dim must be positive")
    inputs = []
    if args.reflexive_db:
        inputs.append(args.reflexive_db)
        reflexive = import_classes(args.reflexive_db, dim=d - 1, transpose=args.transpose)
    elif d <= 3:
        reflexive = reflexive_classes(d - 1) if d > 1 else None
    else:
        raise UsageError(f"--dim {d} needs --reflexive-db with the reflexive {d - 1}-polytopes")
    jobs = _jobs(args)
    classes, stats = run_classification(d, reflexive, jobs=jobs)
    out = Path(args.out)
    export_classes(classes, out, header=f"Fano polytopes of dimension {d}")
    print(f"reflexive inputs      {stats.inputs}")
    print(f"admissible inputs     {stats.admissible}")
    print(f"base simplices        {stats.base_simplices}")
    print(f"candidates generated  {stats.candidates}")
    print(f"fano survivors        {stats.fano}")
    print(f"unique classes        {stats.classes}")
    write_manifest(out, argv, inputs, {"classes": len(classes), "admissible": stats.admissible,
                                       "candidates": stats.candidates, "fano": stats.fano},
                   started, jobs)
    return 0


def cmd_oracle(args, argv) -> int:
    started = time.perf_counter()
    jobs = _jobs(args)
    classes = fano_oracle(args.dim, jobs=jobs)
    out = Path(args.out)
    export_classes(classes, out, header=f"Fano polytopes of dimension {args.dim} (vertex-subset search)")
    print(f"{len(classes)} classes written to {out}")
    write_manifest(out, argv, [], {"classes": len(classes)}, started, jobs)
    return 0


def _load(path, transpose=False) -> ClassList:
    return import_classes(path, transpose=transpose)


def cmd_normal_form(args) -> int:
    for p in iter_polytopes(args.file, transpose=args.transpose):
        print(normal_form(p).key)
    return 0


def cmd_stats(args) -> int:
    classes = _load(args.file, args.transpose)
    reports = [report(p) for p in classes]
    print(summarize(classes, reports).format())
    if args.csv:
        text = reports_csv(reports)
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            Path(args.csv).write_text(text, encoding="utf-8")
    return 0


def cmd_verify(args) -> int:
    classes = _load(args.file, args.transpose)
    total = SuiteReport()
    for key, p in classes.items():
        total.merge(verify(p, key))
    print(total.format())
    return 0 if total.ok else 2


def cmd_diff(args) -> int:
    a = _load(args.a, args.transpose).key_set()
    b = _load(args.b, args.transpose).key_set()
    for key in sorted(a - b):
        print(f"< {key}")
    for key in sorted(b - a):
        print(f"> {key}")
    print(f"{len(a & b)} common, {len(a - b)} only in {args.a}, {len(b - a)} only in {args.b}")
    return 0 if a == b else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricfano", description="Classify smooth Fano polytopes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_jobs(p):
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default: $FANO_JOBS or CPU count)")

    p = sub.add_parser("reflexive", help="write the reflexive polytopes of dimension 1 or 2")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("classify", help="classify Fano polytopes of a given dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--reflexive-db", help="vertex-block file of all reflexive (dim-1)-polytopes")
    p.add_argument("--transpose", action="store_true", help="blocks are d rows of n columns")
    p.add_argument("--out", required=True)
    add_jobs(p)

    p = sub.add_parser("oracle", help="brute-force Fano classification for dim <= 3")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", required=True)
    add_jobs(p)

    for name, help_text in (("normal-form", "print the normal-form key of every block"),
                            ("stats", "print invariant maxima and histograms"),
                            ("verify", "run the theorem checks on every class")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--transpose", action="store_true")
        if name == "stats":
            p.add_argument("--csv", help="write per-class invariants as CSV ('-' for stdout)")

    p = sub.add_parser("diff", help="compare the classes in two files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--transpose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else 1
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {
        "reflexive": lambda: cmd_reflexive(args),
        "classify": lambda: cmd_classify(args, ["toricfano"] + argv),
        "oracle": lambda: cmd_oracle(args, ["toricfano"] + argv),
        "normal-form": lambda: cmd_normal_form(args),
        "stats": lambda: cmd_stats(args),
        "verify": lambda: cmd_verify(args),
        "diff": lambda: cmd_diff(args),
    }
    try:
        return handlers[args.command]()
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (UsageError, FanoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
