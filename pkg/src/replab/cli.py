"""
Command-line interface: ``replab <subcommand> [options]``.

Every subcommand prints aligned text, or a JSON record with ``--json``. The exit
code is 0 on success, 1 when a verification fails and 2 on bad usage or input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import random
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from replab import braid as braid_
from replab import gf, homfly, knotlib, oracles, pathsets, repcount, ruling, satellite
from replab import utils
from replab.braid import BraidWord
from replab.errors import ParseError, ReplabError
from replab.knotlib import KnotRecord
from replab.ncdga import (
    NcMatrix,
    NcPoly,
    chi_k,
    degree_distribution,
    format_distribution,
    sigma_m,
    split_basepoint,
    stabilize,
)
from replab.sqrtq import SqrtQ

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

SUITES = ("quick", "full", "paper")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        utils.configure_logging(args.log_level)
        threads = utils.get_threads(args.threads)
        return args.func(args, threads)
    except (ReplabError, ValueError, OSError) as err:
        print(f"replab: error: {err}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON record")
    common.add_argument(
        "--threads", type=int, default=None,
        help=f"worker processes (default: ${utils.ENV_THREADS} or 1)",
    )
    common.add_argument(
        "--log-level", default=None,
        help=f"logging level (default: ${utils.ENV_LOG_LEVEL} or WARNING)",
    )
    parser = argparse.ArgumentParser(
        prog="replab",
        description=(
            "Exact representation and augmentation counts of Legendrian knot DGAs "
            "over finite fields."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    p = add("path-matrix", "print a braid's path matrix")
    p.add_argument("--braid", required=True)
    p.add_argument("--n", type=int, default=None, help="strand count")
    p.add_argument("--mu", default=None)
    p.add_argument("--flavor", choices=("xz", "xy", "inverse"), default="xz")
    p.set_defaults(func=cmd_path_matrix)

    p = add("bruhat", "Bruhat cells of GL(n, F_q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--matrix", default=None, help="row-major entries, e.g. '0,1,1,0'")
    p.set_defaults(func=cmd_bruhat)

    p = add("count-reps", "count representations")
    _add_knot_arg(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--degrees", default=None, help="basis degrees of V, e.g. '0,1'")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--d", choices=("zero", "auto"), default="zero")
    p.add_argument(
        "--target", default="gl", help="gl, pathset:<braid> or a matrix file"
    )
    p.add_argument("--mu", default=None, help="Maslov values for a pathset target")
    p.set_defaults(func=cmd_count_reps)

    p = add("count-augs", "count augmentations")
    _add_knot_arg(p)
    p.add_argument("--satellite", default=None, help="pattern braid, e.g. 's1'")
    p.add_argument("--n", type=int, default=None, help="strand count of the pattern")
    p.add_argument("--mu", default=None)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_count_augs)

    p = add("satellite", "build a satellite DGA")
    _add_knot_arg(p)
    p.add_argument("--braid", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--m", type=int, default=0, help="modulus for sigma_m")
    p.add_argument("--dump", action="store_true", help="print the presentation")
    p.set_defaults(func=cmd_satellite)

    p = add("theorem-a", "check the satellite formula")
    _add_knot_arg(p)
    p.add_argument("--braid", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_theorem_a)

    p = add("ruling-interp", "interpolate a ruling polynomial")
    _add_knot_arg(p)
    p.add_argument("--braid", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--window", default=None, help="exponent range, e.g. --window=-2:6")
    p.add_argument("--qs", default=None, help="field orders, e.g. '2,3,4,5'")
    p.add_argument("--integral", action="store_true")
    p.set_defaults(func=cmd_ruling_interp)

    p = add("colored-ruling", "colored ruling polynomial at q")
    _add_knot_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--route", choices=ruling.ROUTES, default="satellite")
    p.set_defaults(func=cmd_colored_ruling)

    p = add("homfly-compare", "compare HOMFLY-PT data")
    p.add_argument("--poly", required=True)
    _add_knot_arg(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--qs", default="2,3")
    p.set_defaults(func=cmd_homfly_compare)

    p = add("verify", "run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def _add_knot_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--knot", required=True,
        help=f"built-in knot ({', '.join(knotlib.names())}) or a .dga file",
    )


def load_knot(name: str) -> KnotRecord:
    """A built-in knot by name, or a knot read from a ``.dga`` file."""
    if name in knotlib.names():
        return knotlib.builtin(name)
    return knotlib.load_dga(name)


def parse_ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, not '{text}'")


def parse_window(text: str) -> Tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ParseError(f"window must look like '-2:6', not '{text}'")


def parse_matrix(text: str, n: int) -> gf.Matrix:
    entries = parse_ints(text)
    if len(entries) != n * n:
        raise ParseError(
            f"need {n * n} entries for a {n}x{n} matrix, got {len(entries)}"
        )
    return tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))


def load_matrix_file(fpath: str, n: int) -> List[gf.Matrix]:
    """One matrix per non-empty line, entries in row-major order."""
    with utils.to_path(fpath).open(mode="rt", encoding="utf-8") as f:
        return [
            parse_matrix(line, n)
            for line in f
            if line.strip() and not line.lstrip().startswith("#")
        ]


def _braid_and_mu(args) -> Tuple[BraidWord, Tuple[int, ...]]:
    b = BraidWord.parse(args.braid or "", n=args.n)
    mu = braid_.parse_mu(args.mu) if args.mu else (0,) * b.n
    return b, mu


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, SqrtQ):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (ruling.LaurentZ,)):
        return {"polynomial": str(obj), "coeffs": obj.to_json()}
    if isinstance(obj, (homfly.TwoVarPoly, BraidWord, NcMatrix)):
        return str(obj)
    if isinstance(obj, pd.Series):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit(record: Dict[str, Any], as_json: bool) -> None:
    if as_json:
        print(json.dumps(to_jsonable(record), sort_keys=True, indent=2))
        return
    width = max((len(k) for k in record), default=0)
    for key, value in record.items():
        if isinstance(value, str) and "\n" in value:
            print(f"{key}:")
            print(value)
        else:
            print(f"{key:<{width}}  {value}")


def cmd_path_matrix(args, threads: int) -> int:
    b, mu = _braid_and_mu(args)
    if args.flavor == "xz":
        P = braid_.path_matrix_xz(b, mu)
    elif args.flavor == "xy":
        P = braid_.path_matrix_xy(b, mu)
    else:
        P = braid_.path_matrix_inverse(braid_.path_matrix_xz(b, mu))
    emit(
        {
            "braid": str(b),
            "mu": list(mu),
            "flavor": P.flavor,
            "reduced": braid_.is_reduced(b),
            "matrix": str(P),
        },
        args.json,
    )
    return EXIT_OK


def cmd_bruhat(args, threads: int) -> int:
    field = gf.field_make(args.q)
    if args.matrix:
        A = parse_matrix(args.matrix, args.n)
        perm, D, U, S = pathsets.bruhat_reduce(A, field)
        emit(
            {
                "permutation": list(perm),
                "cell": braid_.cycle_notation(perm),
                "braid": str(braid_.reduced_word(perm)),
                "D": D,
                "U": U,
                "S": S,
            },
            args.json,
        )
        return EXIT_OK
    report = pathsets.verify_bruhat_partition(args.n, args.q, threads=threads)
    emit(
        {
            **report.drop("cell_sizes").to_dict(),
            "cell_sizes": {
                braid_.cycle_notation(p): s for p, s in report["cell_sizes"].items()
            },
        },
        args.json,
    )
    return EXIT_OK if report["partition"] else EXIT_MISMATCH


def cmd_count_reps(args, threads: int) -> int:
    record = load_knot(args.knot)
    field = gf.field_make(args.q)
    degrees = parse_ints(args.degrees) if args.degrees else [0] * args.n
    space = repcount.GradedVS(degrees, field)
    n = space.n
    if args.target == "gl":
        target = None
    elif args.target.startswith("pathset:"):
        b = BraidWord.parse(args.target.split(":", 1)[1], n=n)
        mu = braid_.parse_mu(args.mu) if args.mu else tuple(degrees)
        target = pathsets.PathSubsetSpec(b, mu, args.m, field)
    else:
        target = load_matrix_file(args.target, n)
    targets = [target] * len(record.dga.components)
    if args.d == "zero":
        differentials = [repcount.UTDifferential.zero(space, args.m)]
    else:
        differentials = repcount.enumerate_differentials(space, args.m)
    out = []
    for d in differentials:
        problem = repcount.RepProblem(record.dga, space, d, args.m, targets=targets)
        report = repcount.rep_report(problem, threads=threads)
        out.append({"d": d.matrix, **report.to_dict()})
    if len(out) == 1:
        result = {"knot": record.name, "citation": record.citation, **out[0]}
    else:
        result = {"knot": record.name, "citation": record.citation, "records": out}
    emit(result, args.json)
    return EXIT_OK


def cmd_count_augs(args, threads: int) -> int:
    record = load_knot(args.knot)
    dga = record.dga
    if args.satellite is not None:
        b = BraidWord.parse(args.satellite, n=args.n)
        mu = braid_.parse_mu(args.mu) if args.mu else None
        dga = satellite.build_satellite(dga, b, mu).dga
    field = gf.field_make(args.q)
    space = repcount.GradedVS.concentrated(1, field)
    problem = repcount.RepProblem(dga, space, m=args.m)
    report = repcount.rep_report(problem, threads=threads)
    emit(
        {
            "knot": dga.name,
            "count": report["count"],
            "aug_number": report["rep_number"],
        },
        args.json,
    )
    return EXIT_OK


def cmd_satellite(args, threads: int) -> int:
    record = load_knot(args.knot)
    b, mu = _braid_and_mu(args)
    sat = satellite.build_satellite(record.dga, b, mu)
    if args.dump:
        meta = homfly.KnotMeta(rotation=sat.dga.rotation)
        text = knotlib.serialize(KnotRecord(sat.dga, meta, record.citation))
        print(text, end="")
        return EXIT_OK
    dist = degree_distribution(sat.dga)
    x_a, x_xy, x_p = satellite.sigma_decomposition(sat, args.m)
    emit(
        {
            "name": sat.dga.name,
            "generators": len(sat.dga.generators),
            "components": len(sat.dga.components),
            "degree_distribution": format_distribution(dist),
            "chi_0": chi_k(dist, 0),
            "sigma_lattice": x_a,
            "sigma_dip": x_xy,
            "sigma_crossing": x_p,
        },
        args.json,
    )
    return EXIT_OK


def cmd_theorem_a(args, threads: int) -> int:
    record = load_knot(args.knot)
    b, mu = _braid_and_mu(args)
    report = ruling.theorem_A_check(record.dga, b, mu, args.m, args.q, threads=threads)
    emit(report.to_dict(), args.json)
    return EXIT_OK if report["equal"] else EXIT_MISMATCH


def cmd_ruling_interp(args, threads: int) -> int:
    record = load_knot(args.knot)
    dga = record.dga
    if args.braid is not None:
        b, mu = _braid_and_mu(args)
        dga = satellite.build_satellite(dga, b, mu).dga
    qs = tuple(parse_ints(args.qs)) if args.qs else None
    if args.window:
        window = parse_window(args.window)
    else:
        qs = qs or ruling.default_qs(args.m, ruling.default_window(dga))
        window = ruling.default_window(dga, qs)
    qs = qs or ruling.default_qs(args.m, window)
    values = [(q, repcount.aug_number(dga, args.m, q, threads=threads)) for q in qs]
    poly = ruling.interpolate_ruling(values, window, integral=args.integral)
    emit(
        {
            "knot": dga.name,
            "m": args.m,
            "window": list(window),
            "qs": qs,
            "ruling": poly,
        },
        args.json,
    )
    return EXIT_OK


def cmd_colored_ruling(args, threads: int) -> int:
    record = load_knot(args.knot)
    result = ruling.colored_ruling(
        record.dga, args.n, args.m, args.q, route=args.route, threads=threads
    )
    emit(
        {
            "knot": record.name,
            "n": args.n,
            "m": args.m,
            "q": args.q,
            "satellite": result.satellite,
            "representation": result.representation,
            "agree": result.agree,
            "breakdown": result.breakdown,
        },
        args.json,
    )
    return EXIT_MISMATCH if result.agree is False else EXIT_OK


def cmd_homfly_compare(args, threads: int) -> int:
    record = load_knot(args.knot)
    data = homfly.load_poly(args.poly)
    n = args.n or data.n
    compare = homfly.compare_with_rep(
        data.poly, record.dga, n, parse_ints(args.qs), threads=threads
    )
    bounds = homfly.check_degree_bounds(data.poly, record.meta, n, dga=record.dga)
    emit(
        {
            "knot": record.name,
            "n": n,
            "framing": data.framing,
            "equal": compare["equal"],
            "mismatches": compare["mismatches"],
            "values": {
                q: {"homfly": lhs, "rep": rhs}
                for q, (lhs, rhs) in compare["values"].items()
            },
            "bounds": bounds,
        },
        args.json,
    )
    return EXIT_OK if compare["equal"] else EXIT_MISMATCH


Case = Tuple[str, Callable[[], bool]]


def verification_cases(suite: str, threads: int = 1) -> List[Case]:
    """
    Named checks of the ``quick`` (q <= 3) or ``full`` suite (alias ``paper``); each
    returns True when it passes.
    """
    full = suite in ("full", "paper")
    small_qs = (2, 3, 4, 5) if full else (2, 3)
    cases: List[Case] = []
    f2 = gf.field_make(2)
    trefoil = knotlib.builtin("trefoil").dga
    m52 = knotlib.builtin("m52").dga
    unknot = knotlib.builtin("unknot").dga
    a2 = BraidWord(2, [1])
    ruling_73_8 = SqrtQ(0, Fraction(73, 8), 2)

    def add(name: str, check: Callable[[], bool]) -> None:
        cases.append((name, check))

    def path_matrix_regression() -> bool:
        p1, p2, p3, p4 = (NcPoly.gen(braid_.p_name(j)) for j in range(1, 5))
        for mu in itertools.product((0, 1), repeat=4):
            _, s2, s3, s4 = ((-1) ** x for x in mu)
            unreduced = NcMatrix(
                [
                    [s3 * p2 + s2 * s3 * p1 * p3, s2 * p1, s4 * p4, 1],
                    [s3 * p3, 1, 0, 0],
                    [1, 0, 0, 0],
                    [0, 0, 1, 0],
                ]
            )
            reduced = NcMatrix(
                [
                    [s3 * p2, s2 * p3, s4 * p4, 1],
                    [s3 * p1, 1, 0, 0],
                    [1, 0, 0, 0],
                    [0, 0, 1, 0],
                ]
            )
            if braid_.path_matrix_xz(BraidWord.parse("s1 s2 s1 s3"), mu) != unreduced:
                return False
            if braid_.path_matrix_xz(BraidWord.parse("s2 s1 s2 s3"), mu) != reduced:
                return False
        return True

    add("path matrices of s1 s2 s1 s3 and s2 s1 s2 s3", path_matrix_regression)

    def kalman(n: int) -> bool:
        for perm in itertools.permutations(range(1, n + 1)):
            b = braid_.reduced_word(perm)
            P = braid_.path_matrix_xz(b, (0,) * n)
            if not (braid_.is_reduced(b) and braid_.kalman_form_check(P, perm)):
                return False
            inverse = braid_.path_matrix_inverse(P)
            if n <= 4 and P * inverse != NcMatrix.identity(n):
                return False
        return True

    for n in (2, 3, 4, 5) if full else (2, 3):
        add(f"kalman form, n={n}", lambda n=n: kalman(n))

    def bruhat(n: int, q: int, total: int) -> bool:
        report = pathsets.verify_bruhat_partition(n, q, threads=threads)
        return bool(report["partition"]) and report["total"] == total

    gl_totals = {(2, 2): 6, (2, 3): 48, (3, 2): 168, (3, 3): 11232}
    for (n, q), total in gl_totals.items():
        if (n, q) == (3, 3) and not full:
            continue
        add(
            f"bruhat partition GL({n},{q})",
            lambda n=n, q=q, total=total: bruhat(n, q, total),
        )

    def one_crossing_subset() -> bool:
        spec = pathsets.PathSubsetSpec(a2, (0, 0), 0, f2)
        return len(pathsets.enumerate_path_subset(spec)) == 4

    add("path subset of s1 over F_2 has 4 matrices", one_crossing_subset)

    def satellite_structure() -> bool:
        sat = satellite.build_satellite(trefoil, a2, (0, 0))
        dist = degree_distribution(sat.dga)
        dp = -NcPoly.word(("t1", -1), "y_1_2", "t2")
        return (
            dist == {-1: 1, 0: 14, 1: 8}
            and chi_k(dist, 0) == 7
            and sat.dga.d("p1") == dp
        )

    add("satellite of trefoil by s1: degrees and chi_0", satellite_structure)

    def bijection(q: int, round_trip: bool) -> bool:
        field = gf.field_make(q)
        sat = satellite.build_satellite(trefoil, a2, (0, 0))
        augs = repcount.RepProblem(sat.dga, repcount.GradedVS.concentrated(1, field))
        images = set()
        num_augs = 0
        for aug in repcount.iter_reps(augs):
            num_augs += 1
            if not round_trip:
                continue
            eps = {gname: mat[0][0] for gname, mat in aug.items()}
            d, f = satellite.aug_to_rep(sat, eps, field, 0)
            if satellite.rep_to_aug(sat, d, f, field, 0) != eps:
                return False
            images.add((d, tuple(sorted(f.items()))))
        space = repcount.GradedVS(sat.mu, field)
        spec = pathsets.PathSubsetSpec(a2, sat.mu, 0, field)
        num_reps = sum(
            repcount.count_reps(
                repcount.RepProblem(trefoil, space, d, m=0, targets=[spec]),
                threads=threads,
            )
            for d in repcount.enumerate_differentials(space, 0)
        )
        if round_trip and len(images) != num_augs:
            return False
        return num_augs == num_reps

    add(
        "satellite augmentations biject onto representations, q=2",
        lambda: bijection(2, True),
    )
    add(
        "satellite augmentations and representations agree, q=3",
        lambda: bijection(3, False),
    )

    def satellite_augs() -> bool:
        sat = satellite.build_satellite(trefoil, a2, (0, 0))
        space = repcount.GradedVS.concentrated(1, f2)
        problem = repcount.RepProblem(sat.dga, space, m=0)
        count = repcount.count_reps(problem, threads=threads)
        value = repcount.aug_number(sat.dga, 0, 2, threads=threads)
        return count == 146 and value == ruling_73_8

    add("augmentations of trefoil satellite over F_2", satellite_augs)

    def rep_split() -> bool:
        spec = pathsets.PathSubsetSpec(a2, (0, 0), 0, f2)
        space = repcount.GradedVS.concentrated(2, f2)
        problem = repcount.RepProblem(trefoil, space, m=0, targets=[spec])
        split = repcount.count_by_target(problem, threads=threads)
        reduced = repcount.reduced_rep_number(problem, threads=threads)
        return sorted(split.tolist()) == [33, 33, 40, 40] and reduced == Fraction(73, 8)

    add("trefoil representation split 40/33/40/33", rep_split)

    def m52_count(q: int) -> bool:
        space = repcount.GradedVS.concentrated(2, gf.field_make(q))
        problem = repcount.RepProblem(m52, space, m=2)
        count = repcount.count_reps(problem, threads=threads)
        return count == oracles.m52_pair_count_formula(q)

    for q in small_qs:
        add(f"m52 2-dim count at q={q}", lambda q=q: m52_count(q))
    add(
        "m52 pair oracle at q=2",
        lambda: oracles.count_eigenvalue_free_pairs(f2, 2) == 124,
    )

    def homfly_m52() -> bool:
        data = homfly.load_poly("m52_n2.poly")
        report = homfly.compare_with_rep(data.poly, m52, 2, small_qs, threads=threads)
        return bool(report["equal"])

    add("HOMFLY-PT of m52 at a^-1 = 0", homfly_m52)

    def unknot_normalized(q: int) -> bool:
        field = gf.field_make(q)
        for degrees in ((0,), (0, 0), (1, 0)):
            problem = repcount.RepProblem(unknot, repcount.GradedVS(degrees, field))
            if repcount.reduced_rep_number(problem, threads=threads) != 1:
                return False
        return True

    for q in (2, 3):
        add(f"unknot reduced number is 1 at q={q}", lambda q=q: unknot_normalized(q))

    def satellite_formula(dga, b: BraidWord, m: int, q: int) -> bool:
        report = ruling.theorem_A_check(dga, b, (0, 0), m, q, threads=threads)
        return bool(report["equal"])

    for name, dga in (("unknot", unknot), ("trefoil", trefoil), ("m52", m52)):
        for b in (BraidWord.identity(2), a2):
            for m, q in itertools.product((0, 2), small_qs):
                add(
                    f"satellite formula {name}, '{b or 'id'}', m={m}, q={q}",
                    lambda dga=dga, b=b, m=m, q=q: satellite_formula(dga, b, m, q),
                )

    def knot_ruling() -> bool:
        value = ruling.ruling_polynomial(
            trefoil, 0, qs=(2, 3), window=(-1, 1), threads=threads
        )
        return value == ruling.LaurentZ({-1: 2, 1: 1})

    add("ruling polynomial of trefoil", knot_ruling)

    if full:

        def satellite_ruling() -> bool:
            sat = satellite.build_satellite(trefoil, a2, (0, 0))
            values = [
                (q, repcount.aug_number(sat.dga, 0, q, threads=threads))
                for q in (2, 3, 4, 5, 7, 8, 9)
            ]
            expected = ruling.LaurentZ({-1: 3, 1: 9, 3: 6, 5: 1})
            return ruling.interpolate_ruling(values, (-2, 6)) == expected

        add("ruling polynomial of trefoil satellite", satellite_ruling)

    def stabilization_invariance(dga, m: int) -> bool:
        for q in (2, 3):
            before = repcount.aug_number(dga, m, q, threads=threads)
            for degree in (-1, 0, 1, 3):
                stable = stabilize(dga, degree)
                if repcount.aug_number(stable, m, q, threads=threads) != before:
                    return False
        return True

    def split_invariance(dga, m: int) -> bool:
        for q in (2, 3):
            before = repcount.aug_number(dga, m, q, threads=threads)
            for pieces in (2, 3):
                split = split_basepoint(dga, "t", pieces)
                if repcount.aug_number(split, m, q, threads=threads) != before:
                    return False
        return True

    for name, dga in (("unknot", unknot), ("trefoil", trefoil), ("m52", m52)):
        for m in (0, 2):
            add(
                f"stabilization invariance {name}, m={m}",
                lambda dga=dga, m=m: stabilization_invariance(dga, m),
            )
            add(
                f"basepoint split invariance {name}, m={m}",
                lambda dga=dga, m=m: split_invariance(dga, m),
            )

    def sigma_closed_form() -> bool:
        # sigma_m asserts that the partial sums and the closed form agree
        rng = random.Random(20)
        for _ in range(200):
            degrees = rng.sample(range(-5, 6), rng.randint(1, 5))
            dist = {deg: rng.randint(1, 3) for deg in degrees}
            for m in (0, 2, 3, 4, 5):
                sigma_m(dist, m)
        return True

    add("sigma_m partial sums match the closed form", sigma_closed_form)

    def sigma_split() -> bool:
        # sigma_decomposition asserts each part against its closed form
        patterns = [BraidWord.identity(2), a2]
        for name, dga in (("unknot", unknot), ("trefoil", trefoil), ("m52", m52)):
            for b, mu in itertools.product(patterns, ((0, 0), (1, 0))):
                sat = satellite.build_satellite(dga, b, mu)
                for m in (0, 2):
                    satellite.sigma_decomposition(sat, m)
        return True

    add("sigma_m of satellites splits by generator family", sigma_split)

    def colored(dga, n: int, m: int, q: int) -> bool:
        value = ruling.colored_ruling(dga, n, m, q, route="both", threads=threads)
        return bool(value.agree)

    colors = [(2, q) for q in small_qs] + ([(3, 2)] if full else [])
    for name, dga in (("trefoil", trefoil), ("m52", m52)):
        for (n, q), m in itertools.product(colors, (0, 2)):
            add(
                f"colored ruling {name}, n={n}, m={m}, q={q}",
                lambda dga=dga, n=n, m=m, q=q: colored(dga, n, m, q),
            )
    return cases


def run_verification(suite: str, threads: int = 1) -> pd.DataFrame:
    """Run a suite; one row per case with its verdict, runtime and any error."""
    rows = []
    for name, check in verification_cases(suite, threads=threads):
        start = time.perf_counter()
        error = ""
        try:
            passed = bool(check())
        except (ReplabError, AssertionError) as err:
            passed, error = False, f"{type(err).__name__}: {err}"
        rows.append(
            {
                "case": name,
                "passed": passed,
                "seconds": round(time.perf_counter() - start, 3),
                "error": error,
            }
        )
        LOGGER.info("%s: %s", name, "pass" if passed else "FAIL")
    return pd.DataFrame(rows, columns=["case", "passed", "seconds", "error"])


def cmd_verify(args, threads: int) -> int:
    table = run_verification(args.suite, threads=threads)
    if args.json:
        records = table.drop(columns="seconds").to_dict(orient="records")
        print(json.dumps(to_jsonable(records), sort_keys=True, indent=2))
    else:
        print(table.drop(columns="seconds").to_string(index=False))
        print(f"\n{int(table['passed'].sum())}/{len(table)} cases passed")
    return EXIT_OK if table["passed"].all() else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
