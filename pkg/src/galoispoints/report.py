"""Report serialization: stable JSON, a text table and delimited output.

JSON documents have the shape {config, checks: [{name, anchor, status,
witness, millis}], verdict} with sorted keys, so identical configurations
reproduce byte-identical files.  Timing is real but, being nondeterministic,
is nulled in the JSON by default; ``with_timing=True`` (the --timing flag)
switches the measured values on.  The text table always shows timings.
"""

from __future__ import annotations

import csv
import io
import json


def report_to_json(reports, with_timing: bool = False) -> str:
    if len(reports) == 1:
        doc = reports[0].as_dict(with_timing)
    else:
        doc = {"runs": [r.as_dict(with_timing) for r in reports],
               "verdict": "pass" if all(r.passed() for r in reports) else "fail"}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def sweep_to_json(entries, with_timing: bool = False) -> str:
    """Aggregate document for a grid of runs.

    Each entry is (params_dict, verdict_string, reports_or_None)."""
    matrix = []
    runs = []
    for params, verdict, reports in entries:
        matrix.append({"params": params, "verdict": verdict})
        if reports:
            runs.extend(r.as_dict(with_timing) for r in reports)
    overall = "pass" if all(v != "fail" for _, v, _ in entries) else "fail"
    doc = {"matrix": matrix, "runs": runs, "verdict": overall}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def report_to_text(reports) -> str:
    out = io.StringIO()
    for rep in reports:
        cfg = rep.config
        head = ", ".join(f"{k}={v}" for k, v in sorted(cfg.items()) if v is not None)
        out.write(f"== {rep.selector}  [{head}]\n")
        width = max((len(c.name) for c in rep.checks), default=10) + 2
        for c in rep.checks:
            mark = {"pass": "ok", "fail": "FAIL", "skip": "skip",
                    "external": "ext"}.get(c.status, c.status)
            out.write(f"  {c.name:<{width}} {mark:<5} {c.millis:9.1f} ms  {c.anchor}\n")
            if c.status == "fail" and c.witness is not None:
                out.write(f"  {'':{width}} `- {c.witness}\n")
        out.write(f"  verdict: {rep.verdict.upper()}\n")
    return out.getvalue()


def checks_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["selector", "check", "status", "millis", "anchor"])
    for rep in reports:
        for c in rep.checks:
            w.writerow([rep.selector, c.name, c.status, f"{c.millis:.1f}", c.anchor])
    return buf.getvalue()


def sweep_to_csv(entries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["p", "n", "param", "selector", "verdict"])
    for params, verdict, _ in entries:
        w.writerow([params.get("p"), params.get("n"),
                    params.get("m", params.get("r")),
                    params.get("selector"), verdict])
    return buf.getvalue()
