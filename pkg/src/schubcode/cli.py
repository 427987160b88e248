"""Command-line entry point: ``schubcode <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .codecore import CodeError, build_code
from .formats import (
    FormatError,
    Header,
    code_from_generator,
    read_checksets,
    read_generator,
    read_words,
    write_checksets,
    write_generator,
    write_words,
)
from .mldecoder import DecodeError, DecoderTable
from .oracleverify import DEFAULT_SEED, SUITES, monte_carlo_decode_test, run_suite
from .orthoset import OrthosetError, J_lower_bound, build_all
from .schubgeo import SchubertError, grassmann_params, schubert_params

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _alpha(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schubcode", description="Schubert codes over GF(q) with majority-logic decoding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cfg(sp, alpha_required=False):
        sp.add_argument("--q", type=int, required=True, help="field size (prime, 4, 8 or 9)")
        sp.add_argument("--m", type=int, required=True, help="ambient dimension")
        sp.add_argument("--l", type=int, default=2, dest="ell", help="subspace dimension (default 2)")
        sp.add_argument("--alpha", type=_alpha, required=alpha_required, help="e.g. 2,4; omit for the Grassmann code")

    sp = sub.add_parser("params", help="print n, k, d and the decoding radius")
    cfg(sp)

    sp = sub.add_parser("build", help="write the generator matrix")
    cfg(sp)
    sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("checks", help="write orthogonal check sets for every coordinate")
    cfg(sp, alpha_required=True)
    sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("decode", help="majority-logic decode a word file")
    sp.add_argument("--generator", required=True, help="generator file from 'build'")
    sp.add_argument("--checks", required=True, help="check-set file from 'checks'")
    sp.add_argument("--in", dest="inp", required=True, help="word file, one received word per line")
    sp.add_argument("--out", help="corrected words (default stdout)")
    sp.add_argument("--log", help="per-word correction log")

    sp = sub.add_parser("simulate", help="Monte Carlo decoding with random errors of weight t")
    cfg(sp, alpha_required=True)
    sp.add_argument("--t", type=int, help="error weight (default: the guaranteed radius)")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out", help="also write the report here")

    sp = sub.add_parser("verify", help="run oracle suites")
    cfg(sp)
    sp.add_argument("--suite", default="all", choices=("all",) + SUITES)
    sp.add_argument("--t", type=int, help="error weight for the decode suite")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out", help="also write the report here")
    return p


def _code(args):
    return build_code(args.q, args.m, args.ell, args.alpha)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_params(args) -> int:
    q, m, ell, alpha = args.q, args.m, args.ell, args.alpha
    _code_spec_check(args)
    par = schubert_params(alpha, ell, m, q) if alpha else grassmann_params(ell, m, q)
    fields = [f"n={par.n}", f"k={par.k}", f"d={par.d}", f"delta={par.delta}"]
    if ell == 2 and alpha and alpha[1] == m and alpha[0] >= 2:
        J = J_lower_bound(q, m, alpha[0])
        fields += [f"J={J}", f"t={J // 2}"]
    else:
        fields += ["J=-", "t=-"]
    fields.append(f"t_d={(par.d - 1) // 2}")
    print(" ".join(fields))
    return EXIT_OK


def _code_spec_check(args) -> None:
    from .codecore import CodeSpec
    from .fieldcore import gf

    CodeSpec(args.ell, args.m, gf(args.q), args.alpha)


def cmd_build(args) -> int:
    _write(write_generator(_code(args)), args.out)
    return EXIT_OK


def cmd_checks(args) -> int:
    code = _code(args)
    sets = build_all(code)
    _write(write_checksets(Header(args.q, args.m, args.ell, args.alpha), sets), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    ghdr, G = read_generator(args.generator)
    chdr, sets = read_checksets(args.checks)
    if ghdr != chdr:
        raise UsageError(f"generator header {ghdr.tokens()} does not match check-set header {chdr.tokens()}")
    code = code_from_generator(ghdr, G)
    table = DecoderTable(code, sets)
    F = code.field
    words = read_words(args.inp, code.n, F.q)
    corrected = np.empty_like(words)
    log = []
    for i, r in enumerate(words):
        est, votes = table.estimates(r[None, :])
        c = F.vadd(r, F.vneg(est[0]))
        corrected[i] = c
        ok = bool(code.is_codeword(c)[0])
        fixes = [
            f"{p}:{int(est[0, p])}({int(votes[0, p, est[0, p]])}/{int(table.sizes[p])})"
            for p in np.flatnonzero(est[0])
        ]
        log.append(f"word {i} in_code={int(ok)} corrections={len(fixes)} " + " ".join(fixes))
    _write(write_words(corrected) if len(words) else "", args.out)
    if args.log:
        Path(args.log).write_text("\n".join(s.rstrip() for s in log) + "\n")
    return EXIT_OK


def _report(rep, out) -> int:
    text = rep.text()
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_simulate(args) -> int:
    code = _code(args)
    table = DecoderTable.build(code)
    t = table.t_max if args.t is None else args.t
    if t < 0 or t > code.n:
        raise UsageError(f"t must lie in 0..{code.n}")
    return _report(monte_carlo_decode_test(code, t, args.trials, args.seed, table), args.out)


def cmd_verify(args) -> int:
    code = _code(args)
    return _report(run_suite(args.suite, code, args.seed, args.t, args.trials), args.out)


COMMANDS = {
    "params": cmd_params,
    "build": cmd_build,
    "checks": cmd_checks,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FormatError, OSError) as exc:
        print(f"schubcode: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, CodeError, SchubertError, OrthosetError, DecodeError, ValueError) as exc:
        print(f"schubcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
