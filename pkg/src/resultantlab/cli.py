"""Command-line surface: exact polynomial arithmetic, certified measures,
the approximation lab, and the verification suites.

File-producing commands (search, classify, spectra, verify) also write a
run manifest with the command line, configuration snapshot, and sha256
digests of every output file; identical (command, seed, precision) runs
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bigreal import DEFAULT_PREC_CAP, PrecisionExhausted, const_parse
from .polycore import IntPoly, cauchy_mul, content_primitive, height, poly_format, poly_parse
from .resultant import box_circle, box_minus, box_plus, box_times, ratmap_parse
from .measures import mahler_measure, theta_measures
from .approx import ClassThresholds, classify_mahler, exponent_table, spectra_grid
from .report import (
    APPROX_CSV_FIELDS,
    RunManifest,
    plot_classify,
    plot_search,
    plot_spectra,
    write_csv,
    write_json,
)
from .suites import SUITES

ENV_OUT_DIR = "RESULTANTLAB_OUT_DIR"


def _load_config(path: str | None) -> dict:
    cfg = {}
    if path:
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit(f"config line without '=': {line!r}")
            k, v = line.split("=", 1)
            cfg[k.strip()] = v.strip()
    return cfg


def _resolve(args, cfg):
    out_dir = args.out_dir or os.environ.get(ENV_OUT_DIR) or cfg.get("out_dir", ".")
    cap = args.precision_cap or int(cfg.get("precision_cap", DEFAULT_PREC_CAP))
    threads = int(cfg.get("threads", 1))  # recorded; dispatch is sequential
    return Path(out_dir), cap, {"out_dir": str(out_dir), "precision_cap": cap,
                                "threads": threads}


def _parse_poly_arg(text: str) -> IntPoly:
    text = text.strip()
    if text.startswith("["):
        return IntPoly.make(int(str(t)) for t in json.loads(text))
    return poly_parse(text, normalize=True)


def _print_json(payload) -> None:
    from .report import _jsonify
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, default=_jsonify)
    sys.stdout.write("\n")


def cmd_poly(args, cfg) -> int:
    lhs = _parse_poly_arg(args.lhs)
    if args.op == "boxcircle":
        num, den = args.rhs.split("/")
        r = ratmap_parse(num, den)
        out = box_circle(lhs, r)
    else:
        rhs = _parse_poly_arg(args.rhs)
        op = {"boxtimes": box_times, "boxplus": box_plus,
              "boxminus": box_minus, "cauchy": cauchy_mul}[args.op]
        out = op(lhs, rhs)
    payload = {
        "op": args.op,
        "result": poly_format(out),
        "coeffs": list(out.coeffs),
        "degree": None if out.is_zero else out.degree,
        "height": None if out.is_zero else height(out),
        "lead": None if out.is_zero else out.lead,
    }
    if args.canonical and not out.is_zero:
        c, prim = content_primitive(out)
        payload["canonical"] = {"content": c, "primitive": poly_format(prim)}
    _print_json(payload)
    return 0


def cmd_measure(args, cfg) -> int:
    f = _parse_poly_arg(args.poly)
    cap = args.precision_cap or int(cfg.get("precision_cap", DEFAULT_PREC_CAP))
    payload = {"poly": poly_format(f), "height": height(f),
               "precision_bits": args.precision}
    payload["mahler"] = mahler_measure(f, args.precision, cap)
    if args.theta:
        rho = Fraction(args.rho) if args.rho else Fraction(1)
        rep = theta_measures(f, const_parse(args.theta), rho, args.precision, cap)
        payload.update({
            "theta": args.theta,
            "theta_mahler": rep.theta_mahler,
            "disk_measure": rep.disk_measure,
            "zeta_rho": rep.zeta_rho,
            "abs_value": rep.abs_value,
            "rho": str(rep.rho),
            "rho_boundary_flag": rep.rho_boundary_flag,
            "disk_root_count": len(rep.disk_root_indexes),
            "working_precision_bits": rep.precision,
        })
    _print_json(payload)
    return 0


def _schedule_from(args) -> list[int]:
    if args.heights:
        return [int(h) for h in args.heights.split(",")]
    base, count = (int(x) for x in args.schedule.split(","))
    return [base**k for k in range(1, count + 1)]


def cmd_search(args, cfg) -> int:
    out_dir, cap, snapshot = _resolve(args, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(sys.argv[1:], snapshot, cap, None, __version__)
    t0 = time.time()
    theta = const_parse(args.theta)
    schedule = _schedule_from(args)
    records, e_of_d = exponent_table(theta, args.deg, schedule, cap)
    rows = [r.as_row() for r in records]
    csv_path = out_dir / "search.csv"
    write_csv(csv_path, rows, APPROX_CSV_FIELDS)
    manifest.record(csv_path)
    if args.plot:
        png = out_dir / "search.png"
        plot_search(rows, png)
        manifest.record(png)
    manifest.wall_clock_s = time.time() - t0
    manifest.write(out_dir / "search_manifest.json")
    print(f"wrote {csv_path} ({len(rows)} rows)")
    return 0


def cmd_classify(args, cfg) -> int:
    out_dir, cap, snapshot = _resolve(args, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(sys.argv[1:], snapshot, cap, None, __version__)
    t0 = time.time()
    th = ClassThresholds()
    if args.divergence:
        th.divergence = float(args.divergence)
    rep = classify_mahler(const_parse(args.theta), args.max_deg,
                          args.max_height, th, cap)
    payload = {
        "theta": rep.theta_spec,
        "verdict": rep.verdict,
        "d_frak": rep.d_frak,
        "e_global": rep.e_global,
        "type_estimate": rep.type_estimate,
        "witness": None if rep.witness is None else poly_format(rep.witness),
        "knobs": rep.knobs,
        "e_of_d": {str(d): info for d, info in rep.e_of_d.items()},
    }
    json_path = out_dir / "classify.json"
    write_json(json_path, payload)
    manifest.record(json_path)
    if rep.table:
        csv_path = out_dir / "classify_table.csv"
        write_csv(csv_path, [r.as_row() for r in rep.table], APPROX_CSV_FIELDS)
        manifest.record(csv_path)
    if args.plot and rep.e_of_d:
        png = out_dir / "classify.png"
        plot_classify(rep.e_of_d, png)
        manifest.record(png)
    manifest.wall_clock_s = time.time() - t0
    manifest.write(out_dir / "classify_manifest.json")
    print(f"{rep.theta_spec}: {rep.verdict}"
          + (f" (witness {poly_format(rep.witness)})" if rep.witness else ""))
    return 0


def cmd_spectra(args, cfg) -> int:
    out_dir, cap, snapshot = _resolve(args, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(sys.argv[1:], snapshot, cap, None, __version__)
    t0 = time.time()
    grid_a = [float(x) for x in args.grid_a.split(",")]
    grid_b = [float(x) for x in args.grid_b.split(",")]
    grid = [(a, b) for a in grid_a for b in grid_b]
    rows = spectra_grid(const_parse(args.theta), args.deg, grid, args.h_max, cap)
    csv_path = out_dir / "spectra.csv"
    write_csv(csv_path, rows, ["a", "b", "attainable"])
    manifest.record(csv_path)
    if args.plot:
        png = out_dir / "spectra.png"
        plot_spectra(rows, png)
        manifest.record(png)
    manifest.wall_clock_s = time.time() - t0
    manifest.write(out_dir / "spectra_manifest.json")
    print(f"wrote {csv_path} ({len(rows)} cells)")
    return 0


def cmd_verify(args, cfg) -> int:
    out_dir, cap, snapshot = _resolve(args, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(sys.argv[1:], snapshot, cap, args.seed, __version__)
    t0 = time.time()
    fn = SUITES[args.suite]
    kwargs = {"seed": args.seed}
    if args.count:
        if args.suite == "productlaw":
            kwargs = {"convergents": args.count}
        else:
            kwargs["count"] = args.count
    if args.suite == "productlaw" and "seed" in kwargs and not args.count:
        kwargs = {}
    rep = fn(**kwargs)
    json_path = out_dir / f"verify_{args.suite}.json"
    write_json(json_path, rep)
    manifest.record(json_path)
    manifest.wall_clock_s = time.time() - t0
    manifest.write(out_dir / f"verify_{args.suite}_manifest.json")
    print(f"{args.suite}: {rep['status']} "
          f"({rep['total'] - rep['failed']}/{rep['total']})")
    return 0 if rep["status"] == "PASS" else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="resultantlab",
        description="Exact resultant arithmetic on integer polynomials and a "
                    "polynomial diophantine-approximation lab.",
        epilog="Constants: rat:p/q | quad:a,b,c,sign | e | pi | liouville:b | "
               "champernowne:b | dec:<digits>.  Polynomials: ascending "
               "comma-separated integer coefficients, or a JSON array of "
               "decimal strings.")
    ap.add_argument("--config", help="key=value config file "
                    "(precision_cap, out_dir, threads)")
    ap.add_argument("--out-dir", help=f"output directory (or ${ENV_OUT_DIR})")
    ap.add_argument("--precision-cap", type=int,
                    help=f"enclosure bit cap (default {DEFAULT_PREC_CAP})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="binary polynomial operations")
    p.add_argument("--op", required=True,
                   choices=["boxtimes", "boxplus", "boxminus", "cauchy", "boxcircle"])
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True,
                   help="polynomial, or num/den pair for boxcircle")
    p.add_argument("--canonical", action="store_true",
                   help="also print the content-primitive form")
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("measure", help="Mahler and point-relative measures")
    p.add_argument("--poly", required=True)
    p.add_argument("--theta")
    p.add_argument("--rho", help="disk radius as p/q in (0,1], default 1")
    p.add_argument("--precision", type=int, default=64)
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("search", help="best-polynomial table over a height schedule")
    p.add_argument("--theta", required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--heights", help="comma-separated increasing heights")
    p.add_argument("--schedule", default="10,3",
                   help="geometric schedule base,count (default 10,3)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("classify", help="class/type diagnostic")
    p.add_argument("--theta", required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--max-height", type=int, required=True)
    p.add_argument("--divergence", help="override the divergence threshold")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("spectra", help="empirical nonvanishing portrait")
    p.add_argument("--theta", required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--h-max", type=int, default=1000)
    p.add_argument("--grid-a", default="0.25,0.5,0.75,1.0")
    p.add_argument("--grid-b", default="0.25,0.5,0.75,1.0,1.25,1.5,1.75,2.0,2.5,3.0")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=cmd_spectra)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, help="override the instance count")
    p.set_defaults(fn=cmd_verify)
    return ap


_DASH_VALUE_FLAGS = {"--lhs", "--rhs", "--poly", "--heights", "--grid-a",
                     "--grid-b", "--divergence"}


def _merge_dash_values(argv):
    """Join flag/value pairs whose value begins with '-' (for example a
    polynomial with a negative constant term) so argparse accepts them."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_merge_dash_values(list(sys.argv[1:] if argv is None else argv)))
    cfg = _load_config(args.config)
    try:
        return args.fn(args, cfg)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
