"""Command-line front end.

Exit codes: 0 success, 1 violation found, 2 usage or input error,
3 enumeration cap or search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .duality import orthogonal, spectrum_table
from .errors import BudgetExceeded, CapExceeded, NoCompletion
from .exactmat import format_matrix, parse_matrix, parse_vector, rank
from .gf import FieldCtx
from .spaces import DEFAULT_CAP, AffineMatrixSpace, format_space, parse_space, random_subspace, span
from .structure import Status, classify_rank_one_space, classify_singular_space, complete_to_full_rank, exceptional_space

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field size (a prime)")
    common.add_argument("--n", type=int, help="number of rows")
    common.add_argument("--p", type=int, help="number of columns")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for --random spaces")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default 2^24)")
    return common


def _space_args(sp: argparse.ArgumentParser):
    sp.add_argument("source", nargs="?", help="space file, or '-' for stdin")
    sp.add_argument("--gen", action="append", default=[], metavar="MATRIX",
                    help="inline generator such as '1 0; 0 0' (repeatable; needs --n --p --q)")
    sp.add_argument("--point", metavar="MATRIX", help="affine point for inline generators")
    sp.add_argument("--random", type=int, metavar="DIM", help="random linear space of this dimension")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="singspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rank", parents=[common], help="rank of one matrix")
    sp.add_argument("matrix", help="matrix text, rows separated by ';'")

    for name, text in [
        ("schur", "classify a space of rank <= 1 operators"),
        ("dualize", "trace-orthogonal complement of a space"),
        ("spectrum", "evaluation-operator ranks and S_(y) dimensions"),
        ("classify", "classify a singular affine space"),
    ]:
        _space_args(sub.add_parser(name, parents=[common], help=text))

    sp = sub.add_parser("complete", parents=[common], help="full-rank completion of a border")
    sp.add_argument("--row", required=True, help="first row entries")
    sp.add_argument("--col", required=True, help="first column entries")

    sp = sub.add_parser("verify", parents=[common], help="exhaustive verification")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--bound", action="store_true", help="dimension bound scan")
    mode.add_argument("--equality", action="store_true", help="equality-case classification scan")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    sub.add_parser("demo-exceptional", parents=[common], help="the exceptional F_2 space and its classification")
    return parser


def _field(args) -> FieldCtx:
    if args.q is None:
        raise UsageError("--q is required")
    try:
        return FieldCtx(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_space(args) -> AffineMatrixSpace:
    if args.random is not None:
        if None in (args.n, args.p):
            raise UsageError("--random needs --n, --p and --q")
        rng = np.random.default_rng(args.seed)
        return random_subspace(args.n, args.p, args.random, _field(args), rng).as_affine()
    if args.gen or args.point:
        if None in (args.n, args.p):
            raise UsageError("inline generators need --n, --p and --q")
        field = _field(args)
        shape = (args.n, args.p)
        gens = [parse_matrix(g, field, shape) for g in args.gen]
        direction = span(gens, shape, field)
        point = parse_matrix(args.point, field, shape) if args.point else direction.zero()
        return AffineMatrixSpace(point, direction)
    if args.source is None:
        raise UsageError("give a space file, '-', --gen or --random")
    text = sys.stdin.read() if args.source == "-" else open(args.source).read()
    return parse_space(text)


def _linear(space: AffineMatrixSpace):
    if not space.is_linear:
        print("note: using the translation space of a non-linear affine space", file=sys.stderr)
    return space.direction


def _vec(v) -> str:
    return " ".join(str(x) for x in v)


def cmd_rank(args):
    M = parse_matrix(args.matrix, _field(args))
    r = rank(M)
    print(json.dumps({"rank": r}) if args.json else r)
    return EXIT_OK


def cmd_schur(args):
    S = _linear(_load_space(args))
    c = classify_rank_one_space(S)
    d = {"kind": c.kind.value}
    if c.witness_f is not None:
        d["f"] = list(c.witness_f)
    if c.witness_y is not None:
        d["y"] = list(c.witness_y)
    if c.complement_space is not None:
        d["complement_basis"] = [list(B.entries) for B in c.complement_space.basis]
    if c.rank2_certificate is not None:
        d["rank2_certificate"] = format_matrix(c.rank2_certificate)
    if args.json:
        print(json.dumps(d))
    else:
        print(f"kind: {c.kind.value}")
        for key in ("f", "y"):
            if key in d:
                print(f"{key}: {_vec(d[key])}")
        if "complement_basis" in d:
            label = "V_0" if c.kind.value == "FixedForm" else "U'_0"
            print(f"{label} basis:")
            for b in d["complement_basis"]:
                print(f"  {_vec(b)}")
        if "rank2_certificate" in d:
            print(f"rank2_certificate: {d['rank2_certificate']}")
    return EXIT_OK


def cmd_complete(args):
    field = _field(args)
    if None in (args.n, args.p):
        raise UsageError("complete needs --n and --p")
    try:
        M = complete_to_full_rank(parse_vector(args.row, field), parse_vector(args.col, field), args.n, args.p, field)
    except NoCompletion as exc:
        print(json.dumps({"completion": None, "reason": str(exc)}) if args.json else f"NoCompletion: {exc}")
        return EXIT_USAGE
    print(json.dumps({"completion": format_matrix(M)}) if args.json else format_matrix(M))
    return EXIT_OK


def cmd_dualize(args):
    Sperp = orthogonal(_linear(_load_space(args)))
    if args.json:
        print(json.dumps({"shape": list(Sperp.shape), "q": Sperp.q, "basis": [format_matrix(B) for B in Sperp.basis]}))
    else:
        print(format_space(Sperp), end="")
    return EXIT_OK


def cmd_spectrum(args):
    S = _linear(_load_space(args))
    table = spectrum_table(S, args.cap)
    spectrum = sorted(rk for _, _, rk in table)
    if args.json:
        rows = [{"y": list(y), "dim_s_sub_y": dsy, "rank_yhat": rk} for y, dsy, rk in table]
        print(json.dumps({"spectrum": spectrum, "table": rows}))
    else:
        print(f"spectrum: {_vec(spectrum)}")
        print("y | dim S_(y) | rank yhat")
        for y, dsy, rk in table:
            print(f"{_vec(y)} | {dsy} | {rk}")
    return EXIT_OK


def _outcome_text(outcome) -> str:
    lines = [f"status: {outcome.status.value}", f"dim: {outcome.dim}", f"max_rank: {outcome.max_rank_found}", "witnesses:"]
    for w in outcome.witnesses:
        lines.append(f"  {w.kind.value}" + (f" {_vec(w.vector)}" if w.vector is not None else ""))
    return "\n".join(lines)


def cmd_classify(args):
    outcome = classify_singular_space(_load_space(args), args.cap)
    print(json.dumps(outcome.to_dict()) if args.json else _outcome_text(outcome))
    return EXIT_VIOLATION if outcome.status is Status.THEOREM_VIOLATION else EXIT_OK


def cmd_verify(args):
    from .search import verify_dimension_bound, verify_equality_classification

    if None in (args.n, args.p, args.q):
        raise UsageError("verify needs --n, --p and --q")
    run = verify_dimension_bound if args.bound else verify_equality_classification
    report = run(args.n, args.p, args.q, jobs=max(1, args.jobs))
    print(json.dumps(report.to_dict(), indent=2) if args.json else report.summary())
    print(f"wall_time: {report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK if report.confirmed else EXIT_VIOLATION


def cmd_demo_exceptional(args):
    space = exceptional_space()
    outcome = classify_singular_space(space)
    if args.json:
        print(json.dumps({"space": format_space(space), "classification": outcome.to_dict()}))
    else:
        print(format_space(space), end="")
        for line in _outcome_text(outcome).splitlines():
            print(f"# {line}")
    return EXIT_OK


COMMANDS = {
    "rank": cmd_rank,
    "schur": cmd_schur,
    "complete": cmd_complete,
    "dualize": cmd_dualize,
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "demo-exceptional": cmd_demo_exceptional,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
