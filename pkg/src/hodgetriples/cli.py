"""Command-line front end.

Subcommands:

* ``compute``: one Hodge (or Poincare) polynomial for a single parameter
  choice, as text or JSON;
* ``chambers``: the stability interval, walls and chamber representatives
  of a triple family;
* ``table``: batch sweeps over parameter ranges, one record per
  (parameter, chamber) pair, as JSON lines, CSV or LaTeX rows, with an
  optional record cache;
* ``verify``: the invariant suite of :mod:`hodgetriples.verify`.

Exit codes: 0 on success (and all checks passing), 1 on an internal
inconsistency (an exact division that must succeed failed), 2 on user
errors: unparsable input, wall values without a side tag, empty families.
All stability parameters are exact rationals like ``19/2`` with an optional
``+``/``-`` side suffix; no floating point is accepted or produced.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import blocks, triples, verify
from .laurent import LaurentPoly, NotDivisible, UniPoly

CACHE_ENV = "HODGETRIPLES_CACHE"
SCHEMA_VERSION = 1

TARGETS = ("triple", "pair", "pair-fixed", "bundle", "bundle-fixed")


class UserError(Exception):
    """Invalid request; reported on stderr with exit code 2."""


def _parse_rank(text: str) -> tuple[int, int]:
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) == 2:
        try:
            rank = (int(parts[0]), int(parts[1]))
        except ValueError:
            rank = None
        if rank in ((2, 1), (1, 2)):
            return rank
    raise UserError(f"rank must be 2,1 or 1,2, got {text!r}")


def _parse_range(text: str) -> list[int]:
    """Integer ranges: "3", "1..8", "1..9:2"."""
    step = 1
    if ":" in text:
        text, step_text = text.split(":", 1)
        try:
            step = int(step_text)
        except ValueError as exc:
            raise UserError(f"cannot parse range step {step_text!r}") from exc
        if step <= 0:
            raise UserError(f"range step must be positive, got {step}")
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError as exc:
            raise UserError(f"cannot parse range {text!r}") from exc
        return list(range(lo, hi + 1, step))
    try:
        return [int(text)]
    except ValueError as exc:
        raise UserError(f"cannot parse range {text!r}") from exc


def _parse_stability(text: str) -> triples.StabilityValue:
    try:
        return triples.StabilityValue.parse(text)
    except ValueError as exc:
        raise UserError(str(exc)) from exc


# -- output records ---------------------------------------------------------


def _poly_terms_json(poly) -> list[dict]:
    return [{"u": a, "v": b, "c": str(c)} for (a, b), c in poly.terms()]


def _poincare_json(poincare: UniPoly) -> list[dict]:
    return [{"t": k, "c": str(c)} for k, c in poincare.terms()]


def _record(request: dict, result: triples.HodgeResult, poincare: Optional[UniPoly]) -> dict:
    rec = {
        "request": request,
        "dim": result.complex_dim,
        "terms": _poly_terms_json(result.poly),
    }
    rec["poincare"] = _poincare_json(result.poly.diagonal() if poincare is None else poincare)
    return rec


def _compute_record(target: str, g: int, args: dict) -> dict:
    """Evaluate one target and package the result with its request echo."""
    if target == "triple":
        rank = args["rank"]
        spec = triples.TripleSpec(g, rank, args["d1"], args["d2"])
        sigma = args["sigma"]
        result = triples.hodge_triples_closed(spec, sigma)
        d0 = None if result.is_empty else triples.chamber_d0(spec, sigma).d0
        request = {
            "target": target,
            "genus": g,
            "rank": f"{rank[0]},{rank[1]}",
            "d1": args["d1"],
            "d2": args["d2"],
            "sigma": str(sigma),
            "d0": d0,
        }
        return _record(request, result, None)
    if target in ("pair", "pair-fixed"):
        d = args["degree"]
        tau = args["tau"]
        fixed = target == "pair-fixed"
        result = triples.hodge_pairs(g, d, tau, fixed_det=fixed)
        fl = triples._pair_chamber(d, tau)
        request = {
            "target": target,
            "genus": g,
            "degree": d,
            "tau": str(tau),
            "d0": None if fl is None else fl + 1,
        }
        poincare = triples.poincare_pairs_fixed_det_thaddeus(g, d, tau) if fixed else None
        return _record(request, result, poincare)
    if target in ("bundle", "bundle-fixed"):
        d = args["degree"]
        result = triples.hodge_bundles_odd(g, d, fixed_det=target == "bundle-fixed")
        request = {"target": target, "genus": g, "degree": d}
        return _record(request, result, None)
    raise UserError(f"unknown target {target!r}")


def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _record_text(rec: dict, poincare: bool) -> str:
    if poincare:
        return UniPoly({int(t["t"]): int(t["c"]) for t in rec["poincare"]}).text()
    return LaurentPoly({(t["u"], t["v"]): int(t["c"]) for t in rec["terms"]}).text()


# -- compute ---------------------------------------------------------------


def _cmd_compute(args: argparse.Namespace) -> int:
    target = args.target
    params: dict = {}
    if target == "triple":
        if args.d1 is None or args.d2 is None or args.sigma is None:
            raise UserError("triple target needs --d1, --d2 and --sigma")
        params = {
            "rank": _parse_rank(args.rank),
            "d1": args.d1,
            "d2": args.d2,
            "sigma": _parse_stability(args.sigma),
        }
    elif target in ("pair", "pair-fixed"):
        if args.degree is None or args.tau is None:
            raise UserError(f"{target} target needs --degree and --tau")
        params = {"degree": args.degree, "tau": _parse_stability(args.tau)}
    else:
        if args.degree is None:
            raise UserError(f"{target} target needs --degree")
        params = {"degree": args.degree}
    rec = _compute_record(target, args.genus, params)
    if args.format == "json":
        out = dict(rec)
        if not args.poincare:
            out.pop("poincare")
        print(_dump_json(out))
    else:
        print(_record_text(rec, args.poincare))
    return 0


# -- chambers ---------------------------------------------------------------


def _cmd_chambers(args: argparse.Namespace) -> int:
    spec = triples.TripleSpec(args.genus, _parse_rank(args.rank), args.d1, args.d2)
    interval = triples.sigma_interval(spec)
    if interval is None:
        raise UserError("moduli empty: mu1 < mu2")
    walls = triples.critical_values(spec)
    print(f"rank ({spec.rank_pair[0]},{spec.rank_pair[1]}) genus {spec.g} d1={spec.d1} d2={spec.d2}")
    print(f"sigma_m = {interval[0]}")
    print(f"sigma_M = {interval[1]}")
    print("walls:")
    for sigma_c, d_m in walls:
        note = ""
        if sigma_c == interval[0]:
            note = "  (= sigma_m)"
        elif sigma_c == interval[1]:
            note = "  (= sigma_M)"
        print(f"  sigma_c = {sigma_c}  d_M = {d_m}{note}")
    print("chambers:")
    bounds = [interval[0]] + [sc for sc, _ in walls if sc > interval[0]]
    for lo, hi in zip(bounds, bounds[1:]):
        print(f"  ({lo}, {hi}): representative sigma = {(lo + hi) / 2}")
    return 0


# -- table -----------------------------------------------------------------


def _table_rows(args: argparse.Namespace) -> list[tuple[str, tuple[str, int, dict]]]:
    """(cache key, request) for every (parameter, chamber) pair, in canonical order."""
    target = args.target
    rows: list[tuple[str, tuple[str, int, dict]]] = []
    for g in _parse_range(args.genus):
        if target == "triple":
            if args.d1 is None or args.d2 is None:
                raise UserError("triple target needs --d1 and --d2 ranges")
            rank = _parse_rank(args.rank)
            for d1 in _parse_range(args.d1):
                for d2 in _parse_range(args.d2):
                    spec = triples.TripleSpec(g, rank, d1, d2)
                    if spec.is_empty_family:
                        continue
                    for sigma in triples.chamber_representatives(spec):
                        d0 = triples.chamber_d0(spec, sigma).d0
                        key = f"{target}:{rank[0]}{rank[1]}:g={g}:d1={d1}:d2={d2}:d0={d0}"
                        rows.append((key, ("triple", g, {"rank": rank, "d1": d1, "d2": d2, "sigma": sigma})))
        elif target in ("pair", "pair-fixed"):
            if args.degree is None:
                raise UserError(f"{target} target needs a --degree range")
            for d in _parse_range(args.degree):
                for tau in triples.pair_chamber_representatives(d):
                    d0 = triples._pair_chamber(d, tau) + 1
                    key = f"{target}:g={g}:d={d}:d0={d0}"
                    rows.append((key, (target, g, {"degree": d, "tau": tau})))
        else:
            if args.degree is None:
                raise UserError(f"{target} target needs a --degree range")
            for d in _parse_range(args.degree):
                if d % 2 == 0:
                    continue  # the closed forms cover odd degree only
                key = f"{target}:g={g}:d={d}"
                rows.append((key, (target, g, {"degree": d})))
    return rows


def _load_cache(path: str) -> dict[str, dict]:
    cache: dict[str, dict] = {}
    if not path or not os.path.exists(path):
        return cache
    corrupt = False
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    if entry.get("schema_version") != SCHEMA_VERSION:
                        raise ValueError("schema version mismatch")
                    cache[entry["key"]] = entry["record"]
                except (ValueError, KeyError, TypeError):
                    corrupt = True
    except OSError:
        corrupt = True
    if corrupt:
        print(f"warning: cache file {path} is corrupt; recomputing and overwriting", file=sys.stderr)
        return {}
    return cache


def _save_cache(path: str, cache: dict[str, dict]) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            for key in sorted(cache):
                handle.write(_dump_json({"schema_version": SCHEMA_VERSION, "key": key, "record": cache[key]}))
                handle.write("\n")
    except OSError as exc:
        print(f"warning: could not write cache file {path}: {exc}", file=sys.stderr)


def _latex_row(rec: dict) -> str:
    req = rec["request"]
    poly = LaurentPoly({(t["u"], t["v"]): int(t["c"]) for t in rec["terms"]})
    label = [f"g={req['genus']}"]
    if "degree" in req:
        label.append(f"d={req['degree']}")
    else:
        label.append(f"d_1={req['d1']}, d_2={req['d2']}")
    if "sigma" in req:
        label.append(f"\\sigma={req['sigma']}")
    if "tau" in req:
        label.append(f"\\tau={req['tau']}")
    return f"${', '.join(label)}$ & ${poly.latex()}$ \\\\"


def _cmd_table(args: argparse.Namespace) -> int:
    cache_path = args.cache if args.cache is not None else os.environ.get(CACHE_ENV, "")
    cache = _load_cache(cache_path)
    fresh = False
    records: list[dict] = []
    for key, request in _table_rows(args):
        if key in cache:
            records.append(cache[key])
            continue
        target, g, params = request
        rec = _compute_record(target, g, params)
        cache[key] = rec
        records.append(rec)
        fresh = True
    if cache_path and fresh:
        _save_cache(cache_path, cache)

    if args.format == "json-lines":
        for rec in records:
            out = dict(rec)
            if not args.poincare:
                out.pop("poincare")
            print(_dump_json(out))
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = ["target", "genus", "rank", "d1", "d2", "degree", "stability", "d0", "dim", "poly"]
        if args.poincare:
            header.append("poincare")
        writer.writerow(header)
        for rec in records:
            req = rec["request"]
            poly_cell = ";".join(f"{t['u']},{t['v']},{t['c']}" for t in rec["terms"])
            row = [
                req["target"],
                req["genus"],
                req.get("rank", ""),
                req.get("d1", ""),
                req.get("d2", ""),
                req.get("degree", ""),
                req.get("sigma", req.get("tau", "")),
                req.get("d0", ""),
                "" if rec["dim"] is None else rec["dim"],
                poly_cell,
            ]
            if args.poincare:
                row.append(";".join(f"{t['t']},{t['c']}" for t in rec["poincare"]))
            writer.writerow(row)
        sys.stdout.write(buffer.getvalue())
    else:  # latex
        for rec in records:
            print(_latex_row(rec))
    return 0


# -- verify ------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    checks: Optional[tuple[str, ...]] = None
    if args.checks:
        checks = tuple(name for chunk in args.checks for name in chunk.split(",") if name)
    try:
        grid = verify.VerifyGrid(
            g_values=tuple(_parse_range(args.g)),
            d2_values=tuple(_parse_range(args.d2)),
            d1_values=tuple(_parse_range(args.d1)) if args.d1 is not None else None,
            checks=checks,
            seed=args.seed,
        )
        reports = verify.run_suite(grid)
    except (ValueError, blocks.GenusOutOfRange) as exc:
        raise UserError(str(exc)) from exc
    for report in reports:
        print(report.line())
    print(verify.summarize(reports))
    return 0 if all(r.status == "pass" for r in reports) else 1


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgetriples",
        description="Exact Hodge and Poincare polynomials of moduli of rank-2 pairs and rank-(2,1)/(1,2) triples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute a single Hodge polynomial")
    compute.add_argument("target", choices=TARGETS)
    compute.add_argument("--genus", type=int, required=True)
    compute.add_argument("--rank", default="2,1", help="rank pair for triples: 2,1 or 1,2")
    compute.add_argument("--d1", type=int)
    compute.add_argument("--d2", type=int)
    compute.add_argument("--degree", type=int)
    compute.add_argument("--sigma", help='stability parameter, e.g. "19/2", "7+", "7-"')
    compute.add_argument("--tau", help='stability parameter, e.g. "3/4"')
    compute.add_argument("--format", choices=("text", "json"), default="text")
    compute.add_argument("--poincare", action="store_true", help="emit the diagonal (Poincare) specialization")
    compute.set_defaults(func=_cmd_compute)

    chambers = sub.add_parser("chambers", help="list walls and chambers of a triple family")
    chambers.add_argument("--genus", type=int, required=True)
    chambers.add_argument("--rank", default="2,1")
    chambers.add_argument("--d1", type=int, required=True)
    chambers.add_argument("--d2", type=int, required=True)
    chambers.set_defaults(func=_cmd_chambers)

    table = sub.add_parser("table", help="batch tables over parameter ranges")
    table.add_argument("--target", choices=TARGETS, required=True)
    table.add_argument("--genus", required=True, help='range, e.g. "2" or "2..4"')
    table.add_argument("--rank", default="2,1")
    table.add_argument("--d1", help='range, e.g. "1..8"')
    table.add_argument("--d2", help='range; write negative ranges as --d2=-2..0')
    table.add_argument("--degree", help='range, e.g. "1..5:2" (bundles skip even degrees)')
    table.add_argument("--format", choices=("json-lines", "csv", "latex"), default="json-lines")
    table.add_argument("--poincare", action="store_true")
    table.add_argument("--cache", help=f"cache file path (default: ${CACHE_ENV} if set)")
    table.set_defaults(func=_cmd_table)

    check = sub.add_parser("verify", help="run the invariant suite")
    check.add_argument("--g", default="2..3", help='genus range, e.g. "2..3"')
    check.add_argument("--d1", help="d1 range (default: 2*d2+1 .. 2*d2+8 per d2)")
    check.add_argument("--d2", default="-2..0", help="d2 range")
    check.add_argument("--checks", action="append", help="comma-separated check names (default: all)")
    check.add_argument("--seed", type=int, default=0)
    check.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (NotDivisible, AssertionError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1
    except (UserError, blocks.GenusOutOfRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())
