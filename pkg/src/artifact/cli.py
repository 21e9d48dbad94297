"""Batch command-line interface.

    smltt check <path>...     check files, or a directory with a manifest
    smltt type <name>         print a declaration's type in normal form
    smltt normalize <expr>    print the normal form of an expression
    smltt axioms <name>       print the axioms a declaration rests on
    smltt model-test <file>   run model-oracle test vectors

Declaration names are file-qualified: examples.zero is the declaration
zero in the corpus file examples.smltt.  Unqualified names refer to the
prelude.  Expressions for normalize are parsed against the prelude.

Exit codes: 0 success, 1 failed check or unknown name, 2 parse error,
3 missing input.  The prelude location can be overridden through the
SMLTT_PRELUDE environment variable.  Checking is sequential, so output
order always follows input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import check_corpus
from .errors import KernelError, ParseError, UnknownName
from .kernel import infer, run_deep, used_axioms
from .loader import Loader, default_prelude_path
from .semantics import readback
from .surface import elaborate_term, parse_term, print_term
from .vectors import run_vector_file

DEFAULT_FUEL = 100_000


def _print_diag(err: KernelError, json_on: bool) -> None:
    file = getattr(err, "file", None)
    decl = getattr(err, "decl", None)
    if json_on:
        payload = {
            "file": file,
            "decl": decl,
            "kind": err.kind,
            "message": err.message,
            "span": list(err.span) if err.span else None,
        }
        print(json.dumps(payload), file=sys.stderr)
    else:
        where = ":".join(s for s in (file, decl) if s)
        prefix = f"{where}: " if where else ""
        print(f"{prefix}{err.kind}: {err.message}", file=sys.stderr)


def _io_error(path: Path, json_on: bool) -> int:
    if json_on:
        payload = {
            "file": str(path),
            "decl": None,
            "kind": "IOError",
            "message": "no such file",
            "span": None,
        }
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"{path}: IOError: no such file", file=sys.stderr)
    return 3


def _err_exit(err: KernelError) -> int:
    return 2 if isinstance(err, ParseError) else 1


def run_check(paths: list[str], allow_axioms: bool, json_on: bool) -> int:
    loader = Loader(allow_axioms=allow_axioms)
    checked_files = 0
    try:
        for raw in paths:
            p = Path(raw)
            if p.is_dir():
                manifest = p / "manifest"
                if manifest.exists():
                    report = run_deep(check_corpus, manifest)
                    for v in report.violations:
                        print(v, file=sys.stderr)
                    if not report.ok:
                        return 1
                    print(
                        f"ok: {len(report.entries)} files, "
                        f"{len(report.decls)} declarations "
                        f"({report.elapsed:.1f}s)"
                    )
                    continue
                files = sorted(p.glob("*.smltt"))
                if not files:
                    return _io_error(p, json_on)
            elif p.exists():
                files = [p]
            else:
                return _io_error(p, json_on)
            for f in files:
                run_deep(loader.load, f)
                checked_files += 1
    except KernelError as e:
        _print_diag(e, json_on)
        return _err_exit(e)
    if checked_files:
        print(f"ok: {checked_files} files, {len(loader.decls)} declarations")
    return 0


def _load_for_name(name: str) -> tuple[Loader, str]:
    loader = Loader()
    if "." in name:
        stem, decl = name.split(".", 1)
        target = default_prelude_path().parent / f"{stem}.smltt"
        if not target.exists():
            raise UnknownName(f"no corpus file for {stem}")
        run_deep(loader.load, target)
        return loader, decl
    run_deep(loader.ensure_prelude)
    return loader, name


def run_query(command: str, arg: str, json_on: bool) -> int:
    try:
        if command == "normalize":
            loader = Loader()
            run_deep(loader.ensure_prelude)
            ctx = loader.ctx
            term = elaborate_term(parse_term(arg), set(ctx.globals))
            run_deep(infer, ctx, term)
            print(print_term(run_deep(readback, 0, ctx.eval(term))))
            return 0
        loader, decl = _load_for_name(arg)
        ctx = loader.ctx
        entry = ctx.globals.get(decl)
        if entry is None:
            raise UnknownName(f"unknown declaration {decl}")
        if command == "type":
            print(print_term(run_deep(readback, 0, entry.ty)))
        else:
            names = sorted(used_axioms(ctx, decl))
            print("{" + ", ".join(names) + "}")
        return 0
    except KernelError as e:
        _print_diag(e, json_on)
        return _err_exit(e)


def run_model_tests(path: str, fuel: int, json_on: bool) -> int:
    p = Path(path)
    if not p.exists():
        return _io_error(p, json_on)
    try:
        ok, report = run_vector_file(p, fuel)
    except KernelError as e:
        _print_diag(e, json_on)
        return _err_exit(e)
    for line in report:
        print(line)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-axioms", action="store_true",
                        help="permit axiom declarations outside the prelude")
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                        help="reduction budget for model checks")
    common.add_argument("--json-diagnostics", action="store_true",
                        help="print diagnostics as JSON objects")
    parser = argparse.ArgumentParser(prog="smltt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common])
    p.add_argument("paths", nargs="+")
    p = sub.add_parser("type", parents=[common])
    p.add_argument("name")
    p = sub.add_parser("normalize", parents=[common])
    p.add_argument("expr", nargs="+")
    p = sub.add_parser("axioms", parents=[common])
    p.add_argument("name")
    p = sub.add_parser("model-test", parents=[common])
    p.add_argument("vectors")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.fuel < 0:
        print("fuel must be a natural number", file=sys.stderr)
        return 2
    if args.command == "check":
        return run_check(args.paths, args.allow_axioms, args.json_diagnostics)
    if args.command == "model-test":
        return run_model_tests(args.vectors, args.fuel, args.json_diagnostics)
    if args.command == "normalize":
        return run_query("normalize", " ".join(args.expr),
                         args.json_diagnostics)
    return run_query(args.command, args.name, args.json_diagnostics)


if __name__ == "__main__":
    sys.exit(main())
