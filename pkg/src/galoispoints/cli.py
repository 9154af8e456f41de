"""Command-line driver: single runs, grid sweeps, reports and figures.

Exit codes: 0 when every executed check passes, 1 when any check fails,
2 for configuration errors.  Re-running with an identical configuration
produces byte-identical JSON (timings are nulled there unless --timing is
given; the text table always shows measured times).
"""

from __future__ import annotations

import argparse
import os
import sys

from .runner import ConfigError, run_selector
from .report import (checks_to_csv, report_to_json, report_to_text,
                     sweep_to_csv, sweep_to_json)

# smallest legal parameters per statement
DEFAULT_GRID = [
    {"p": 3, "n": 1, "mr": 2, "selector": "thm1a"},
    {"p": 3, "n": 1, "mr": 2, "selector": "lemma1"},
    {"p": 3, "n": 1, "mr": 2, "selector": "thm1b"},
    {"p": 2, "n": 1, "mr": 2, "selector": "thm2"},
    {"p": 5, "n": 1, "mr": 2, "selector": "prop1"},
]


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="galois-points",
        description="Exact verification of two-Galois-point plane models of "
                    "two Artin-Schreier-type curve families over finite fields.")
    ap.add_argument("--p", type=int, help="characteristic (prime)")
    ap.add_argument("--n", type=int, default=1, help="q = p^n (default n=1)")
    ap.add_argument("--m", type=int, help="exponent m for the y^m = x^q + x family")
    ap.add_argument("--r", type=int, help="tower exponent r for y^(q^r+1) = x^q + x")
    ap.add_argument("--check", default="all",
                    choices=["thm1a", "thm1b", "thm2", "lemma1", "prop1", "all"],
                    help="which statement to verify (default: all applicable)")
    ap.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    ap.add_argument("--ext-cap", type=int, default=64,
                    help="cap on auxiliary extension degree over the base field")
    ap.add_argument("--precision", type=int, default=None,
                    help="branch expansion precision override")
    ap.add_argument("--json", metavar="PATH", help="write the JSON report here")
    ap.add_argument("--grid", metavar="FILE",
                    help="sweep file: one 'p n m|r selector' tuple per line, # comments")
    ap.add_argument("--report-dir", metavar="DIR",
                    help="write report.json, checks.csv and figures into DIR")
    ap.add_argument("--timing", action="store_true",
                    help="include measured millis in the JSON output")
    return ap


def parse_grid(path: str) -> list:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ConfigError(f"{path}:{lineno}: expected 'p n m|r selector'")
            try:
                p, n, mr = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from exc
            rows.append({"p": p, "n": n, "mr": mr, "selector": parts[3]})
    return rows


def run_grid(rows, args):
    entries = []
    for row in rows:
        sel = row["selector"]
        params = {"p": row["p"], "n": row["n"], "selector": sel}
        m = r = None
        if sel == "thm2":
            r = row["mr"]
            params["r"] = r
        else:
            m = row["mr"]
            params["m"] = m
        try:
            reports = run_selector(sel, row["p"], row["n"], m=m, r=r,
                                   seed=args.seed, ext_cap=args.ext_cap,
                                   precision=args.precision)
            verdict = "pass" if all(rp.passed() for rp in reports) else "fail"
        except ConfigError as exc:
            reports = None
            verdict = "rejected"
            params["reason"] = str(exc)
        entries.append((params, verdict, reports))
    return entries


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)

    if args.grid:
        try:
            rows = parse_grid(args.grid)
        except (ConfigError, OSError) as exc:
            print(f"configuration error: {exc}", file=sys.stderr)
            return 2
        entries = run_grid(rows, args)
        for params, verdict, reports in entries:
            if reports:
                sys.stdout.write(report_to_text(reports))
            line = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
            print(f"-- {line}: {verdict.upper()}")
        doc = sweep_to_json(entries, with_timing=args.timing)
        if args.json:
            _write(args.json, doc)
        if args.report_dir:
            _write_sweep_dir(args.report_dir, entries, doc)
        return 1 if any(v == "fail" for _, v, _ in entries) else 0

    if args.p is None and args.m is None and args.r is None:
        # built-in default grid: the smallest legal parameters per statement
        entries = run_grid(DEFAULT_GRID, args)
        for params, verdict, reports in entries:
            if reports:
                sys.stdout.write(report_to_text(reports))
            line = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
            print(f"-- {line}: {verdict.upper()}")
        doc = sweep_to_json(entries, with_timing=args.timing)
        if args.json:
            _write(args.json, doc)
        if args.report_dir:
            _write_sweep_dir(args.report_dir, entries, doc)
        return 1 if any(v == "fail" for _, v, _ in entries) else 0

    if args.p is None or (args.m is None and args.r is None):
        print("configuration error: need --p with --m and/or --r (or --grid)",
              file=sys.stderr)
        return 2
    try:
        reports = run_selector(args.check, args.p, args.n, m=args.m, r=args.r,
                               seed=args.seed, ext_cap=args.ext_cap,
                               precision=args.precision)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report_to_text(reports))
    doc = report_to_json(reports, with_timing=args.timing)
    if args.json:
        _write(args.json, doc)
    if args.report_dir:
        _write_run_dir(args.report_dir, reports, doc)
    return 0 if all(r.passed() for r in reports) else 1


def _write(path: str, text: str):
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _write_run_dir(directory: str, reports, json_doc: str):
    os.makedirs(directory, exist_ok=True)
    _write(os.path.join(directory, "report.json"), json_doc)
    _write(os.path.join(directory, "checks.csv"), checks_to_csv(reports))
    from .figures import render_run_figures
    for rep in reports:
        render_run_figures(rep, directory)


def _write_sweep_dir(directory: str, entries, json_doc: str):
    os.makedirs(directory, exist_ok=True)
    _write(os.path.join(directory, "report.json"), json_doc)
    _write(os.path.join(directory, "sweep.csv"), sweep_to_csv(entries))
    all_reports = [rp for _, _, reports in entries if reports for rp in reports]
    if all_reports:
        _write(os.path.join(directory, "checks.csv"), checks_to_csv(all_reports))
    from .figures import render_run_figures, render_sweep_matrix
    render_sweep_matrix(entries, os.path.join(directory, "sweep.png"))
    for rep in all_reports:
        render_run_figures(rep, directory)


if __name__ == "__main__":
    raise SystemExit(main())
