"""Command-line interface.

Subcommands: parse (echo canonical form), check (parse + typecheck),
process (rewrite asserts, optionally emitting certificates), verify
(check a certificate, optionally cross-checked by the oracle).

Exit codes: 0 success; 1 parse or sort error; 2 I/O error; 3 divergence;
4 invalid certificate; 5 valid but containing trusted steps (unless
--allow-trust).  Multiple files are handled in parallel with output
buffered and printed in input order.
"""

import argparse
import concurrent.futures
import io
import os
import sys

from . import calculus, core, oracle, processor, surface, typecheck
from .sexpr import SourceError

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_IO_ERROR = 2
EXIT_DIVERGENCE = 3
EXIT_INVALID = 4
EXIT_TRUSTED = 5


def _read(path):
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as fh:
        return fh.read(), path


def _run_parse(path, args, out, err):
    text, name = _read(path)
    cmds = surface.parse_script(text, name)
    out.write(surface.print_script(cmds))
    return EXIT_OK


def _run_check(path, args, out, err):
    text, name = _read(path)
    cmds = surface.parse_script(text, name)
    checked = typecheck.check_script(cmds, name)
    if args.verbose:
        for i, t in enumerate(checked.asserts, 1):
            out.write(f"; assert {i}: {typecheck.print_core(t)}\n")
    out.write(f"{name}: ok ({len(checked.asserts)} assertion(s))\n")
    return EXIT_OK


def _proof_path(base, index, count):
    if count == 1:
        return base
    root, ext = os.path.splitext(base)
    return f"{root}.{index}{ext or '.hoproof'}"


def _run_process(path, args, out, err):
    text, name = _read(path)
    cmds = surface.parse_script(text, name)
    checked = typecheck.check_script(cmds, name)
    n = 0
    for c in checked.commands:
        if isinstance(c, surface.CAssert):
            n += 1
            term = checked.asserts[n - 1]
            result = processor.process(term, checked.signature,
                                       max_steps=args.max_steps)
            out.write(surface.print_command(
                surface.CAssert(typecheck.erase(result.term))) + "\n")
            if args.proof:
                dest = _proof_path(args.proof, n, len(checked.asserts))
                with open(dest, "w", encoding="utf-8") as fh:
                    fh.write(calculus.print_certificate(result.certificate))
        else:
            out.write(surface.print_command(c) + "\n")
    return EXIT_OK


def _run_verify(path, args, out, err):
    text, name = _read(path)
    cert = calculus.parse_certificate(text, filename=name)
    report = calculus.check_certificate(cert)
    if report.verdict == "invalid":
        fail = report.first_failure
        err.write(f"{name}: invalid: {fail.message}\n")
        return EXIT_INVALID
    if args.oracle:
        for step_id, verdict in oracle.check_certificate_oracle(
                cert, max_steps=args.max_steps):
            if verdict != "lambda-valid":
                out.write(f"{name}: oracle: step {step_id} is {verdict}\n")
                break
        else:
            out.write(f"{name}: oracle: all steps lambda-valid\n")
    if report.verdict == "valid-with-trust":
        out.write(f"{name}: valid with {report.trusted_count} trusted step(s)\n")
        return EXIT_OK if args.allow_trust else EXIT_TRUSTED
    out.write(f"{name}: valid ({len(cert.steps)} steps)\n")
    return EXIT_OK


_COMMANDS = {
    "parse": _run_parse,
    "check": _run_check,
    "process": _run_process,
    "verify": _run_verify,
}


def _run_one(command, path, args):
    out, err = io.StringIO(), io.StringIO()
    try:
        code = _COMMANDS[command](path, args, out, err)
    except SourceError as e:
        err.write(str(e) + "\n")
        code = EXIT_INPUT_ERROR
    except core.DivergenceError as e:
        err.write(f"{path}: error: {e}\n")
        code = EXIT_DIVERGENCE
    except OSError as e:
        err.write(f"{path}: error: {e}\n")
        code = EXIT_IO_ERROR
    except ValueError as e:
        err.write(f"{path}: error: {e}\n")
        code = EXIT_INPUT_ERROR
    return code, out.getvalue(), err.getvalue()


def make_parser():
    ap = argparse.ArgumentParser(prog="hosmt",
                                 description="Higher-order SMT-LIB frontend "
                                             "and proof certificate tools")
    sub = ap.add_subparsers(dest="command", required=True)
    specs = {
        "parse": "parse scripts and echo their canonical form",
        "check": "parse and typecheck scripts",
        "process": "process assertions, optionally emitting certificates",
        "verify": "check proof certificates",
    }
    for name, help_ in specs.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("files", nargs="+", help="input files, or - for stdin")
        p.add_argument("--verbose", action="store_true")
        p.add_argument("--max-steps", type=int, default=core.DEFAULT_STEP_CAP,
                       help="beta-reduction step cap")
        if name == "process":
            p.add_argument("--proof", metavar="PATH",
                           help="write one certificate per assertion; with "
                                "several assertions an index is inserted "
                                "before the extension")
        if name == "verify":
            p.add_argument("--oracle", action="store_true",
                           help="cross-check every step with the encoding oracle")
            p.add_argument("--allow-trust", action="store_true",
                           help="exit 0 even when trusted steps are present")
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    files = args.files
    if len(files) == 1:
        results = [_run_one(args.command, files[0], args)]
    else:
        with concurrent.futures.ThreadPoolExecutor() as pool:
            results = list(pool.map(
                lambda f: _run_one(args.command, f, args), files))
    code = EXIT_OK
    for c, out, err in results:
        sys.stdout.write(out)
        sys.stderr.write(err)
        if code == EXIT_OK:
            code = c
    return code


if __name__ == "__main__":
    sys.exit(main())
