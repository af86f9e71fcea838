"""Command line interface: ``python -m prism_surgery <command> ...``.

Exit codes: 0 success, 2 usage error, 3 domain violation, 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path
from typing import Optional, Sequence

from .alexander import alex_poly, torsion_coeffs
from .bergekang import PSFParams, psf_result
from .dtype import PrismParams, dtype_from_pq
from .embed import realizable
from .errors import ConstraintViolation, DomainError, InvariantError, NotPrism, PrismError
from .families import TAGS, enumerate_members, membership, pneg_membership
from .tables import TABLE_NAMES, generate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4

CACHE_ENV = "PRISM_SCAN_CACHE"
CACHE_FILE = "realizable.jsonl"


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj: object) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _alex_report(sigma: Sequence[int]) -> dict:
    t = torsion_coeffs(sigma)
    poly = alex_poly(t)
    return {"sigma": list(sigma), "q": -sum(s * s for s in sigma) // 4, "torsion": list(t), "poly": list(poly.coeffs),
            "poly_text": str(poly)}


def cmd_classify(args: argparse.Namespace) -> int:
    p, q = args.p, args.q
    if p % 2 == 0:
        raise DomainError(f"p must be odd, got {p}")
    pp = PrismParams(p, q)
    if q >= 0:
        raise DomainError("classification by changemakers needs q < 0")
    sigmas = _cached_realizable(pp, normalized=args.normalized)
    _emit({
        "p": p,
        "q": q,
        "dtype_norms": list(dtype_from_pq(pp).norms),
        "realizable": bool(sigmas),
        "changemakers": [list(s) for s in sigmas],
        "families": [fi.label() for fi in pneg_membership(pp)],
        "alexander": [_alex_report(s) for s in sigmas],
    })
    return EXIT_OK


def _scan_pairs(qmax: int) -> list[tuple[int, int]]:
    return [(p, -qa) for qa in range(1, qmax + 1) for p in range(3, 4 * qa, 2) if gcd(p, qa) == 1]


def _scan_one(pair: tuple[int, int]) -> tuple[int, int, list[list[int]]]:
    p, q = pair
    return p, q, [list(s) for s in realizable(PrismParams(p, q))]


def _cache_path() -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    return Path(root) / CACHE_FILE if root else None


def _load_cache() -> dict[tuple[int, int], list[list[int]]]:
    path = _cache_path()
    out: dict[tuple[int, int], list[list[int]]] = {}
    if path is None or not path.exists():
        return out
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            rec = json.loads(line)
            out[(rec["p"], rec["q"])] = rec["changemakers"]
    return out


def _store_cache(records: list[tuple[int, int, list[list[int]]]]) -> None:
    path = _cache_path()
    if path is None or not records:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        for p, q, sig in records:
            fh.write(json.dumps({"p": p, "q": q, "changemakers": sig}) + "\n")


def _cached_realizable(pp: PrismParams, normalized: bool = False) -> list[tuple[int, ...]]:
    cache = _load_cache()
    key = (pp.p, pp.q)
    if key in cache:
        return [tuple(s) for s in cache[key]]
    result = realizable(pp, normalized=normalized)
    if not normalized:
        _store_cache([(pp.p, pp.q, [list(s) for s in result])])
    return result


def run_scan(qmax: int, jobs: int = 1) -> dict:
    """Realizability against family membership for every pair with ``|q| <= qmax``, in (|q|, p) order."""
    pairs = _scan_pairs(qmax)
    cache = _load_cache()
    todo = [pair for pair in pairs if pair not in cache]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_scan_one, todo, chunksize=4))
    else:
        fresh = [_scan_one(pair) for pair in todo]
    _store_cache(fresh)
    results = dict(cache)
    results.update({(p, q): sig for p, q, sig in fresh})
    disagreements = []
    realizable_pairs = 0
    for p, q in pairs:
        sig = results[(p, q)]
        fams = [fi.label() for fi in pneg_membership(PrismParams(p, q))]
        realizable_pairs += bool(sig)
        if bool(sig) != bool(fams):
            disagreements.append({"p": p, "q": q, "changemakers": sig, "families": fams})
    return {"qmax": qmax, "pairs": len(pairs), "realizable_pairs": realizable_pairs, "disagreements": disagreements}


def cmd_scan(args: argparse.Namespace) -> int:
    report = run_scan(args.qmax, args.jobs)
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "q", "changemakers", "families"])
        for d in report["disagreements"]:
            writer.writerow([d["p"], d["q"], " ".join(map(str, d["changemakers"])), " ".join(d["families"])])
        sys.stdout.write(buf.getvalue())
    else:
        _emit(report)
    return EXIT_OK


def cmd_family(args: argparse.Namespace) -> int:
    if args.type not in TAGS:
        raise UsageError(f"unknown family type {args.type!r}; choose from {', '.join(TAGS)}")
    if args.type not in ("1A", "1B", "Spor") and args.r is None:
        raise UsageError(f"family {args.type} needs --r")
    members = enumerate_members(args.type, args.pmax, negative=not args.positive, r=args.r)
    _emit({
        "type": args.type,
        "r": args.r,
        "sign": "+" if args.positive else "-",
        "members": [{"p": pp.p, "q": pp.q, "r": fi.r} for pp, fi in members],
    })
    return EXIT_OK


def cmd_alex(args: argparse.Namespace) -> int:
    _emit(_alex_report(args.sigma))
    return EXIT_OK


def cmd_bk(args: argparse.Namespace) -> int:
    try:
        params = PSFParams(args.family, args.params)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    res = psf_result(params)
    report: dict = {"family": params.family, "params": list(params.params)}
    if res is None:
        report.update({"prism": None, "reason": "no table row fixes the sign of q"})
    else:
        pp = res.prism
        report.update({
            "gamma": res.gamma,
            "fibers": list(res.fibers),
            "p": pp.p,
            "q": pp.q,
            "sign_source": res.sign_source,
            "row": res.row_id,
            "families": [fi.label() for fi in membership(pp)],
        })
    _emit(report)
    return EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    names = args.which or list(TABLE_NAMES)
    for name in names:
        if name not in TABLE_NAMES:
            raise UsageError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)}")
    out = Path(args.out)
    mismatched = []
    for name in names:
        text = generate(name)
        path = out / f"{name}.csv"
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                mismatched.append(name)
        else:
            out.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
    _emit({"tables": names, "directory": str(out), "checked": args.check, "mismatched": mismatched})
    return EXIT_INTERNAL if mismatched else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prism-surgery", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide realizability of P(p, q), q < 0")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--normalized", action="store_true", help="fix X_* = e_0 - e_1 in the embedding search")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="compare realizability with family membership for |q| <= qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="emit the disagreements as CSV")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("family", help="list members of one family")
    p.add_argument("--type", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--pmax", type=int, default=60)
    p.add_argument("--positive", action="store_true", help="use the q > 0 table")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("alex", help="torsion coefficients and Alexander polynomial of a changemaker")
    p.add_argument("--sigma", type=_int_list, required=True)
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("bk", help="evaluate a Berge-Kang P/SF knot")
    p.add_argument("--family", required=True)
    p.add_argument("--params", type=_int_list, required=True)
    p.set_defaults(func=cmd_bk)

    p = sub.add_parser("tables", help="regenerate (or check) the golden CSV tables")
    p.add_argument("--which", nargs="*", help=f"subset of {', '.join(TABLE_NAMES)}")
    p.add_argument("--out", default="tables")
    p.add_argument("--check", action="store_true", help="compare with the files instead of writing")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, ConstraintViolation, NotPrism) as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except InvariantError as exc:
        sys.stderr.write(f"invariant failure: {exc}\n")
        return EXIT_INTERNAL
    except PrismError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
