"""Command-line interface: ``symgame <command> ...``.

Commands that judge a game exit 0 when it is symmetric, 1 when it is not, and 2
on any input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .basis import dimension, project_symmetric, random_symmetric_game, symmetric_subspace_basis
from .check import (
    DEFAULT_TOL,
    build_full_system,
    build_minimal_system,
    check_full_system,
    check_minimal,
    check_proposition1,
    minimal_system_rows,
)
from .game import load_game, save_game
from .linalg import write_triplets
from .oracle import find_violation

EXIT_SYMMETRIC = 0
EXIT_ASYMMETRIC = 1
EXIT_ERROR = 2

PATTERN_LIMIT = 128
MAX_LISTED_VIOLATIONS = 10


class CliError(Exception):
    pass


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError("tolerance must be positive and finite")
    return x


def _players(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("need at least 2 players")
    return n


def _strategies(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("need at least 1 strategy")
    return k


def _emit(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _read_game(path: str, exact: bool):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None
    return load_game(raw, exact=exact)


def _format_pattern(n: int, k: int, symbol: str = "a") -> str:
    pat = symmetric_subspace_basis(n, k).pattern()
    cells = [[f"{symbol}{j}" for j in row] for row in pat]
    width = max(len(c) for row in cells for c in row)
    lines = [f"V_{i + 1}: [" + " ".join(c.rjust(width) for c in row) + "]" for i, row in enumerate(cells)]
    return "\n".join(lines)


def _report_human(rep) -> str:
    lines = [
        f"method: {rep.method}",
        f"symmetric: {'yes' if rep.symmetric else 'no'}",
        f"max residual: {rep.max_residual}",
    ]
    if rep.violations:
        lines.append(f"violations: {len(rep.violations)}")
        for v in rep.violations[:MAX_LISTED_VIOLATIONS]:
            lines.append(
                f"  {v.equation}: V_{v.lhs[0]}[{v.lhs[1]}] - V_{v.rhs[0]}[{v.rhs[1]}] = {v.difference}"
            )
        if len(rep.violations) > MAX_LISTED_VIOLATIONS:
            lines.append(f"  ... {len(rep.violations) - MAX_LISTED_VIOLATIONS} more")
    return "\n".join(lines)


def cmd_check(args) -> int:
    g = _read_game(args.game, args.exact)
    runners = {
        "prop1": [check_proposition1],
        "minimal": [check_minimal],
        "full": [check_full_system],
        "both": [check_proposition1, check_minimal],
    }[args.method]
    reports = [f(g, args.tol) for f in runners]
    if args.format == "json":
        print(json.dumps({"players": g.n, "strategies": g.k,
                          "reports": [r.to_dict() for r in reports]}, indent=2))
    else:
        print(f"game: n={g.n}, k={g.k}")
        print("\n\n".join(_report_human(r) for r in reports))
    verdicts = {r.symmetric for r in reports}
    if len(verdicts) > 1:
        raise CliError("methods disagree; please report this game")
    return EXIT_SYMMETRIC if verdicts.pop() else EXIT_ASYMMETRIC


def cmd_oracle_check(args) -> int:
    g = _read_game(args.game, args.exact)
    w = find_violation(g, args.tol, generators_only=args.generators_only)
    if args.format == "json":
        doc = {"symmetric": w is None, "method": "oracle", "witness": None}
        if w is not None:
            doc["witness"] = {
                "sigma": list(w.sigma.mapping), "player": w.player,
                "profile": list(w.profile), "permuted_profile": list(w.permuted_profile),
                "lhs": str(w.lhs), "rhs": str(w.rhs),
            }
        print(json.dumps(doc, indent=2))
    else:
        print(f"game: n={g.n}, k={g.k}")
        print(f"symmetric: {'yes' if w is None else 'no'}")
        if w is not None:
            print(
                f"witness: sigma={list(w.sigma.mapping)} player {w.player}: "
                f"c_{w.player}{w.profile} = {w.lhs} but "
                f"c_{w.sigma(w.player)}{w.permuted_profile} = {w.rhs}"
            )
    return EXIT_SYMMETRIC if w is None else EXIT_ASYMMETRIC


def cmd_dim(args) -> int:
    n, k = args.n, args.k
    classes = math.comb(k + n - 2, n - 1)
    info = {
        "players": n,
        "strategies": k,
        "dimension": dimension(n, k),
        "classes": classes,
        "minimal_system_rows": minimal_system_rows(n, k),
        "game_space_dimension": n * k**n,
    }
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        print(f"dim S[{n};{k}] = {info['dimension']}")
        print(f"C({k + n - 2},{n - 1}) = {classes}")
        print(f"minimal testing system rows = {info['minimal_system_rows']}")
        print(f"ambient game space dimension = {info['game_space_dimension']}")
        if n * k**n <= PATTERN_LIMIT:
            print("symmetric payoff pattern:")
            print(_format_pattern(n, k))
    return 0


def cmd_basis(args) -> int:
    b = symmetric_subspace_basis(args.n, args.k)
    header = {"kind": "symmetric_subspace_basis", "n": args.n, "k": args.k,
              "column_labels": b.labels()}
    _emit(write_triplets(b.basis, header), args.out)
    if args.classes:
        Path(args.classes).write_text(json.dumps(b.class_index_json(), indent=2) + "\n", encoding="utf-8")
    if args.out not in (None, "-") and args.format == "human":
        print(f"wrote {b.basis.shape[0]}x{b.dim} basis to {args.out}")
        if b.basis.shape[0] <= PATTERN_LIMIT:
            print(_format_pattern(args.n, args.k))
    return 0


def cmd_system(args) -> int:
    n, k = args.n, args.k
    mat = build_minimal_system(n, k) if args.kind == "minimal" else build_full_system(n, k)
    kn = k**n
    labels = [f"V{i}[{j}]" for i in range(1, n + 1) for j in range(1, kn + 1)]
    header = {"kind": f"{args.kind}_system", "n": n, "k": k, "column_labels": labels}
    _emit(write_triplets(mat, header), args.out)
    if args.out not in (None, "-") and args.format == "human":
        print(f"wrote {mat.shape[0]}x{mat.shape[1]} {args.kind} system to {args.out}")
    return 0


def cmd_project(args) -> int:
    g = _read_game(args.game, args.exact)
    proj, dist = project_symmetric(g)
    if args.out is not None:
        Path(args.out).write_bytes(save_game(proj))
    if args.format == "json":
        doc = {"distance": dist}
        if args.out is None:
            doc["game"] = json.loads(save_game(proj))
        print(json.dumps(doc, indent=2))
    else:
        if args.out is None:
            sys.stdout.write(save_game(proj).decode("utf-8"))
        print(f"distance: {dist!r}")
    return 0


def cmd_generate(args) -> int:
    if args.low > args.high:
        raise CliError("--low must not exceed --high")
    g = random_symmetric_game(args.n, args.k, seed=args.seed, low=args.low, high=args.high,
                              integer=not args.real)
    _emit(save_game(g), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symgame", description="Test finite games for symmetry and build symmetric-game bases."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=False, out=False, exact=False):
        p.add_argument("--format", choices=("human", "json"), default="human")
        if tol:
            p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                           help="absolute tolerance on payoff differences (default %(default)g)")
        if out:
            p.add_argument("--out", metavar="PATH", default=None)
        if exact:
            p.add_argument("--exact", action="store_true",
                           help="read payoffs as exact rationals")

    p = sub.add_parser("check", help="test a game document for symmetry")
    p.add_argument("game")
    p.add_argument("--method", choices=("prop1", "minimal", "both", "full"), default="both")
    common(p, tol=True, exact=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle-check", help="brute-force test over all player permutations")
    p.add_argument("game")
    p.add_argument("--generators-only", action="store_true",
                   help="only check adjacent transpositions")
    common(p, tol=True, exact=True)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("dim", help="dimension of the symmetric subspace and system sizes")
    p.add_argument("n", type=_players)
    p.add_argument("k", type=_strategies)
    common(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("basis", help="export the symmetric subspace basis as triplets")
    p.add_argument("n", type=_players)
    p.add_argument("k", type=_strategies)
    p.add_argument("--classes", metavar="PATH", help="also write the column class index as JSON")
    common(p, out=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("system", help="export a testing system as triplets")
    p.add_argument("n", type=_players)
    p.add_argument("k", type=_strategies)
    p.add_argument("--kind", choices=("minimal", "full"), default="minimal")
    common(p, out=True)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("project", help="nearest symmetric game and distance to it")
    p.add_argument("game")
    common(p, out=True, exact=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("generate", help="random symmetric game document")
    p.add_argument("n", type=_players)
    p.add_argument("k", type=_strategies)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--low", type=float, default=-10)
    p.add_argument("--high", type=float, default=10)
    p.add_argument("--real", action="store_true", help="draw real coefficients instead of integers")
    common(p, out=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"symgame: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
