"""Run suites and assemble schema-1 JSON reports.

The report body is deterministic for a fixed configuration; wall times are
kept in a separate ``timings`` field that is excluded from ``digest``.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .suites import Context, build_suite

SCHEMA = 1
RESIDUAL_LIMIT = 4096


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def run_check(suite: str, check: str, ctx: Context) -> dict:
    """Run one named check; never raises."""
    t0 = time.perf_counter()
    try:
        thunks = dict(build_suite(suite, ctx))
        result = _jsonable(thunks[check]())
        status = "pass" if result.get("ok") else "fail"
    except Exception as exc:  # reported, not raised
        result = {"error": f"{type(exc).__name__}: {exc}", "traceback": traceback.format_exc(limit=5)}
        status = "error"
    return {"status": status, "result": result, "seconds": time.perf_counter() - t0}


def _summary(result: dict) -> str:
    body = {k: v for k, v in result.items() if k not in ("ok", "traceback")}
    s = json.dumps(body, sort_keys=True)
    if len(s) > RESIDUAL_LIMIT:
        s = s[:RESIDUAL_LIMIT] + "...[truncated]"
    return s


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.=-]+", "_", name)


def _run_all(tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [run_check(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [ex.submit(run_check, *t) for t in tasks]
        return [f.result() for f in futures]


def verify(suites, ctx: Context, qnumeric=None, jobs: int = 1, dump_dir=None) -> dict:
    """Run the named suites; with ``qnumeric`` every check also runs over the
    field with q fixed to that rational, first, as a falsifier."""
    plan = []
    for name in suites:
        for check, _ in build_suite(name, ctx):
            plan.append((name, check))
    tasks = []
    nctx = replace(ctx, qvalue=qnumeric) if qnumeric is not None else None
    if nctx is not None:
        tasks += [(s, c, nctx) for s, c in plan]
    tasks += [(s, c, ctx) for s, c in plan]
    results = _run_all(tasks, jobs)
    numeric = results[: len(plan)] if nctx is not None else [None] * len(plan)
    exact = results[len(plan):] if nctx is not None else results

    reports: dict = {}
    timings: dict = {}
    for (suite, check), ex, nu in zip(plan, exact, numeric):
        entry = {"name": check, "status": ex["status"], "residual": _summary(ex["result"])}
        if nu is not None:
            entry["numeric"] = {"q": str(qnumeric), "status": nu["status"], "agrees": nu["status"] == ex["status"]}
        reports.setdefault(suite, []).append(entry)
        timings[f"{suite}/{check}"] = round(ex["seconds"], 4)
        if nu is not None:
            timings[f"{suite}/{check}@q={qnumeric}"] = round(nu["seconds"], 4)
        if dump_dir:
            path = os.path.join(dump_dir, _safe(suite))
            os.makedirs(path, exist_ok=True)
            with open(os.path.join(path, _safe(check) + ".json"), "w") as fh:
                json.dump({"exact": ex["result"], "numeric": nu["result"] if nu else None}, fh, indent=1, sort_keys=True)

    suite_list = []
    for suite in suites:
        checks = reports.get(suite, [])
        suite_list.append({
            "suite": suite,
            "checks": checks,
            "passed": sum(c["status"] == "pass" for c in checks),
            "failed": sum(c["status"] == "fail" for c in checks),
            "errors": sum(c["status"] == "error" for c in checks),
            "ok": all(c["status"] == "pass" for c in checks),
        })
    body = {
        "schema": SCHEMA,
        "config": ctx.to_json(),
        "q_numeric": None if qnumeric is None else str(qnumeric),
        "suites": suite_list,
        "ok": all(s["ok"] for s in suite_list),
    }
    if qnumeric is not None:
        body["numeric_agrees"] = all(c["numeric"]["agrees"] for s in suite_list for c in s["checks"])
    body["digest"] = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
    body["timings"] = timings
    return body
