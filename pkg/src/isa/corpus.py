"""Per-semigroup analysis pipeline and the corpus report."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

from .algebra import ideal_closure_crosscheck, ideal_I
from .cohomology import FiniteBimodule, h1_dimension
from .congruence import induced_actions_trivial, quotient_group
from .diagonal import (
    ConstructionFailed,
    PushforwardInvalid,
    diagonal_from_mean,
    find_classical_diagonal,
    find_module_diagonal,
    pushforward_diagonal,
    verify_diagonal,
)
from .mean import find_invariant_mean, verify_mean
from .semigroup import FiniteInverseSemigroup, SemigroupError, builtin_corpus, dump, load

DEFAULT_MAX_ORDER = 40


def max_order() -> int:
    raw = os.environ.get("ISA_MAX_ORDER", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        return DEFAULT_MAX_ORDER


def analyze(S: FiniteInverseSemigroup, timings: bool = False, one_sided: bool = False) -> dict:
    """Run every decision procedure on S and collect verdicts plus the
    certificates that back them."""
    start = time.perf_counter()
    G = quotient_group(S)
    ideals = ideal_I(S)
    certs: Dict[str, object] = {}

    mean = find_invariant_mean(S)
    certs["mean"] = mean.to_json() if mean else {"feasible": False}
    mean_ok = mean is not None and not verify_mean(S, mean)

    right_mean = find_invariant_mean(S, side="right")
    mean_diag_ok = False
    if right_mean is not None:
        try:
            d = diagonal_from_mean(S, right_mean, ideals)
            mean_diag_ok = d.valid
            certs["mean_diagonal"] = d.to_json()
        except ConstructionFailed as exc:
            certs["mean_diagonal"] = {"error": str(exc)}

    module = find_module_diagonal(S, ideals)
    certs["module_diagonal"] = module.to_json() if module else {"feasible": False}

    classical = find_classical_diagonal(S, one_sided=one_sided)
    certs["classical_diagonal"] = classical.to_json() if classical else {"feasible": False}
    prop23 = classical is None or not verify_diagonal(S, classical.M, "module", ideals)

    pushforward_ok = False
    if module is not None and module.valid:
        try:
            pf = pushforward_diagonal(S, G, module.M)
            pushforward_ok = pf.valid
            certs["pushforward"] = pf.to_json()
        except PushforwardInvalid as exc:
            certs["pushforward"] = {"error": str(exc)}

    h1 = h1_dimension(S, FiniteBimodule.regular(S))
    zero = S.zero()
    record = {
        "name": S.name,
        "status": "ok",
        "order": S.order,
        "num_idempotents": len(S.idempotents),
        "group_image_order": G.order,
        "has_identity": S.identity() is not None,
        "has_zero": zero is not None,
        "mean_feasible": mean_ok,
        "mean_diagonal_ok": mean_diag_ok,
        "module_diagonal": module is not None and module.valid,
        "classical_diagonal": classical is not None and classical.valid,
        "classical_implies_module": prop23,
        "pushforward_ok": pushforward_ok,
        "induced_actions_trivial": induced_actions_trivial(S, G),
        "crosscheck_ok": ideal_closure_crosscheck(S, ideals),
        "ideal_dims": ideals.dims(),
        "h1_regular": h1.to_json(),
        "group_image": G.to_json(),
        "certificates": certs,
        "wall_time": round(time.perf_counter() - start, 3) if timings else None,
    }
    record["invariant_failures"] = invariant_failures(record)
    return record


def invariant_failures(record: dict) -> List[str]:
    if record.get("status") != "ok":
        return []
    bad = []
    for key in (
        "mean_feasible",
        "mean_diagonal_ok",
        "module_diagonal",
        "classical_implies_module",
        "pushforward_ok",
        "induced_actions_trivial",
        "crosscheck_ok",
    ):
        if not record[key]:
            bad.append(key)
    if record["mean_feasible"] != record["module_diagonal"]:
        bad.append("mean_iff_module_diagonal")
    if record["h1_regular"]["dim_H1"] != 0:
        bad.append("h1_regular")
    if record["has_zero"] and record["group_image_order"] != 1:
        bad.append("zero_collapses_group_image")
    return bad


def _analyze_file(path: str, timings: bool) -> dict:
    name = Path(path).stem
    try:
        S = load(path)
        if S.order > max_order():
            raise SemigroupError(f"order {S.order} exceeds ISA_MAX_ORDER={max_order()}")
    except (OSError, SemigroupError) as exc:
        return {"name": name, "file": Path(path).name, "status": "invalid", "error": str(exc)}
    rec = analyze(S, timings=timings)
    rec["file"] = Path(path).name
    return rec


def report_directory(directory, timings: bool = False, jobs: int = 1) -> dict:
    """Analyze every *.json in ``directory``; records are ordered by file name
    and invalid files are recorded rather than aborting the run."""
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_analyze_file, files, [timings] * len(files)))
    else:
        records = [_analyze_file(f, timings) for f in files]
    return _summarize(records)


def report_builtin(timings: bool = False, names: Optional[List[str]] = None) -> dict:
    corpus = builtin_corpus()
    records = [analyze(S, timings=timings) for name, S in corpus.items() if names is None or name in names]
    return _summarize(records)


def _summarize(records: List[dict]) -> dict:
    failing = [r["name"] for r in records if r.get("invariant_failures")]
    return {
        "records": records,
        "summary": {
            "count": len(records),
            "invalid": sum(1 for r in records if r.get("status") != "ok"),
            "failing": failing,
            "ok": not failing,
        },
    }


def write_corpus(directory):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, S in builtin_corpus().items():
        dump(S, out / f"{name}.json")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
