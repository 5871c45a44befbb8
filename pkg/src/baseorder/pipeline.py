"""Orchestration behind the command line: critical counts, checks, builders, catalogs.

Every command returns ``(report, exit_code)``; reports are plain JSON-able
dicts so the CLI layer only formats and writes them. Parallel work goes
through an order-preserving pool map, so reports do not depend on ``jobs``.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .core import BudgetError, DomainError, Matroid, uniform
from .critical import (
    CriticalGraph,
    build_m_delta,
    conjecture_report,
    enumerate_critical_graphs,
    enumerate_shape,
    find_obstructions,
    shapes,
)
from .exchange import (
    first_failing_pair,
    has_exchange_ordering,
    is_kl_base_orderable,
    property_test,
    sbo_strength,
)
from .families import AlphaTuple, BetaTuple, alpha_tuples, beta_tuples, build_m_alpha, build_m_beta

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

# (s, t) -> (orientations with no obstruction, with an obstruction)
CRITICAL_COUNTS = {
    3: {(2, 2): (1, 0)},
    4: {(2, 3): (1, 0)},
    5: {(2, 4): (2, 0), (3, 3): (3, 0)},
    6: {(2, 5): (2, 0), (3, 4): (15, 0)},
    7: {(2, 6): (3, 0), (3, 5): (34, 0), (4, 4): (43, 1)},
    8: {(2, 7): (3, 0), (3, 6): (68, 0), (4, 5): (331, 3)},
    9: {(2, 8): (4, 0), (3, 7): (120, 0), (4, 6): (1111, 8), (5, 5): (1203, 10)},
}
DEFAULT_MAX_RANK = 7


def default_jobs() -> int:
    return os.cpu_count() or 1


def pool_map(fn, items, jobs: int):
    """Order-preserving map, in-process when jobs <= 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------------
# critical graph counts


def _obstructed(d: CriticalGraph) -> bool:
    return find_obstructions(d)[1] is not None


def _verify_graph(d: CriticalGraph) -> dict:
    return conjecture_report(d)


def cmd_table1(r: int, verify: bool = False, jobs: int = 1, long: bool = False):
    if r not in CRITICAL_COUNTS:
        raise DomainError(f"rank must lie in {min(CRITICAL_COUNTS)}..{max(CRITICAL_COUNTS)}")
    if r > DEFAULT_MAX_RANK and not long:
        raise BudgetError(f"rank {r} needs --long")
    rows, graphs = [], []
    for s, t in shapes(r):
        found = enumerate_shape(s, t)
        flags = pool_map(_obstructed, found, jobs)
        with_obs = sum(flags)
        rows.append({"shape": [s, t], "no_obstruction": len(found) - with_obs,
                     "with_obstruction": with_obs, "total": len(found)})
        graphs.extend(found)
    expected = [{"shape": [s, t], "no_obstruction": a, "with_obstruction": b, "total": a + b}
                 for (s, t), (a, b) in CRITICAL_COUNTS[r].items()]
    report = {"r": r, "rows": rows, "expected": expected, "matches": rows == expected}
    if verify:
        checks = pool_map(_verify_graph, graphs, jobs)
        report["verification"] = checks
        report["all_consistent"] = all(c["consistent"] for c in checks)
    ok = report["matches"] and report.get("all_consistent", True)
    return report, EXIT_TRUE if ok else EXIT_FALSE


# ----------------------------------------------------------------------------
# check


def parse_property(spec: str):
    """'bo', 'sbo', 'kbo=K', 'kl=K,L', 'transversal', 'paving', ... -> (name, k, l)."""
    name, _, arg = spec.partition("=")
    try:
        if name == "kbo":
            return name, int(arg), None
        if name == "kl":
            k, l = (int(x) for x in arg.split(","))
            return name, k, l
    except ValueError:
        raise DomainError(f"cannot parse property {spec!r}") from None
    if arg:
        raise DomainError(f"property {name!r} takes no argument")
    property_test(name)  # rejects unknown names
    return name, None, None


def check_matroid(m: Matroid, spec: str) -> dict:
    name, k, l = parse_property(spec)
    if name == "kl":
        verdict = is_kl_base_orderable(m, k, l)
    else:
        verdict = bool(property_test(name, k, l)(m))
    report = {"property": spec, "verdict": verdict, "certificate": None}
    if name in ("bo", "sbo", "kbo"):
        kk = {"bo": 1, "sbo": sbo_strength(m)}.get(name, k)
        pair = first_failing_pair(m, kk) if not verdict else None
        if pair is not None:
            cert = {"kind": "failing-pair", "basis_a": m.names(pair[0]),
                    "basis_b": m.names(pair[1]), "strength": kk}
            if kk == 1:
                _ok, block = has_exchange_ordering(m, *pair)
                cert["blocking"] = block.to_dict(m)
            report["certificate"] = cert
    return report


def cmd_check(path, spec: str):
    m = io.load(path)
    report = check_matroid(m, spec)
    return report, EXIT_TRUE if report["verdict"] else EXIT_FALSE


# ----------------------------------------------------------------------------
# construct


def _ints(params) -> list[int]:
    out = []
    for p in params:
        for piece in str(p).replace("=", ",").split(","):
            piece = piece.strip()
            if piece and piece.lstrip("-").isdigit():
                out.append(int(piece))
    return out


def construct(family: str, params) -> tuple[Matroid, dict]:
    from .catalog import mk4

    if family == "mk4":
        return mk4(), {"family": "mk4"}
    if family == "mdelta":
        if len(params) != 1:
            raise DomainError("mdelta takes one critical-graph JSON file")
        g = CriticalGraph.from_dict(json.loads(Path(params[0]).read_text()))
        return build_m_delta(g), {"family": "mdelta", "graph": g.to_dict()}
    nums = _ints(params)
    if family == "uniform":
        if len(nums) != 2:
            raise DomainError("uniform takes r n")
        return uniform(*nums), {"family": "uniform", "r": nums[0], "n": nums[1]}
    if family == "malpha":
        if len(nums) != 6:
            raise DomainError("malpha takes six block sizes |A|,|B|,|C|,|D|,|E|,|F|")
        t = AlphaTuple(*nums)
        return build_m_alpha(t), {"family": "malpha", "sizes": t.sizes()}
    if family == "mbeta":
        if len(nums) != 5:
            raise DomainError("mbeta takes k and four block sizes |A|,|B|,|D|,|E|")
        t = BetaTuple(*nums)
        return build_m_beta(t), {"family": "mbeta", "k": t.k, "sizes": t.sizes()}
    raise DomainError(f"unknown family {family!r}")


def cmd_construct(family: str, params):
    m, prov = construct(family, params)
    return {"provenance": prov, **io.matroid_to_dict(m)}, EXIT_TRUE


# ----------------------------------------------------------------------------
# enumerate-critical


def cmd_enumerate_critical(r: int, long: bool = False):
    if r > DEFAULT_MAX_RANK and not long:
        raise BudgetError(f"rank {r} needs --long")
    records = []
    for d in enumerate_critical_graphs(r):
        _all, lo, hi = find_obstructions(d)
        rec = d.to_dict()
        rec["obstruction"] = None if lo is None else {"minimum": lo.names(d), "maximum": hi.names(d)}
        records.append(rec)
    return records, EXIT_TRUE


# ----------------------------------------------------------------------------
# catalog store


CATALOG_PROPERTIES = ("bo", "sbo", "transversal", "paving")


def default_recipes() -> list[dict]:
    recipes = []
    for r in range(3, 7):
        for d in enumerate_critical_graphs(r):
            recipes.append({"family": "mdelta", "graph": d.to_dict()})
    for r in range(3, 6):
        for t in alpha_tuples(r):
            recipes.append({"family": "malpha", "sizes": list(t.sizes().values())})
    for k in (2, 3):
        for t in beta_tuples(k):
            recipes.append({"family": "mbeta", "sizes": [t.k, t.a, t.b, t.d, t.e]})
    return recipes


def realize(recipe: dict) -> Matroid:
    fam = recipe["family"]
    if fam == "mdelta":
        return build_m_delta(CriticalGraph.from_dict(recipe["graph"]))
    if fam == "malpha":
        return build_m_alpha(AlphaTuple(*recipe["sizes"]))
    if fam == "mbeta":
        return build_m_beta(BetaTuple(*recipe["sizes"]))
    raise DomainError(f"unknown family {fam!r}")


def _catalog_record(recipe: dict) -> tuple[dict, dict]:
    m = realize(recipe)
    verdicts, certs = {}, {}
    for name in CATALOG_PROPERTIES:
        report = check_matroid(m, name)
        text = io.canonical_json(report)
        ref = hashlib.sha256(text.encode()).hexdigest()
        certs[ref] = report
        verdicts[name] = {"verdict": report["verdict"], "certificate": ref}
    rec = {"id": io.canonical_hash(m), "matroid": io.matroid_to_dict(m),
           "provenance": recipe, "verdicts": verdicts}
    return rec, certs


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def catalog_build(store, jobs: int = 1, recipes=None) -> dict:
    store = Path(store)
    (store / "records").mkdir(parents=True, exist_ok=True)
    (store / "certificates").mkdir(exist_ok=True)
    results = pool_map(_catalog_record, recipes or default_recipes(), jobs)
    index = []
    for rec, certs in results:
        _write_json(store / "records" / f"{rec['id']}.json", rec)
        for ref, cert in certs.items():
            _write_json(store / "certificates" / f"{ref}.json", cert)
        index.append({"id": rec["id"], "family": rec["provenance"]["family"],
                      "verdicts": {k: v["verdict"] for k, v in rec["verdicts"].items()}})
    _write_json(store / "index.json", index)
    return {"store": str(store), "records": len(index),
            "families": {f: sum(1 for x in index if x["family"] == f)
                         for f in sorted({x["family"] for x in index})}}


def load_records(store) -> list[dict]:
    store = Path(store)
    index = json.loads((store / "index.json").read_text())
    out = []
    for entry in index:
        rec = json.loads((store / "records" / f"{entry['id']}.json").read_text())
        if io.canonical_hash(io.matroid_from_dict(rec["matroid"])) != rec["id"]:
            raise DomainError(f"record {entry['id']} does not match its hash")
        out.append(rec)
    return out


def catalog_query(store, prop: str | None = None, verdict: bool | None = None,
                  family: str | None = None) -> list[dict]:
    index = json.loads((Path(store) / "index.json").read_text())
    out = []
    for entry in index:
        if family is not None and entry["family"] != family:
            continue
        if prop is not None:
            if prop not in entry["verdicts"]:
                raise DomainError(f"property {prop!r} is not recorded in the catalog")
            if verdict is not None and entry["verdicts"][prop] != verdict:
                continue
        out.append(entry)
    return out


def catalog_diff(store_a, store_b) -> list[dict]:
    def by_id(store):
        return {r["id"]: r for r in load_records(store)}

    a, b = by_id(store_a), by_id(store_b)
    diffs = []
    for key in sorted(set(a) | set(b)):
        if key not in a:
            diffs.append({"id": key, "change": "added"})
        elif key not in b:
            diffs.append({"id": key, "change": "removed"})
        elif a[key] != b[key]:
            changed = sorted(p for p in set(a[key]["verdicts"]) | set(b[key]["verdicts"])
                             if a[key]["verdicts"].get(p) != b[key]["verdicts"].get(p))
            diffs.append({"id": key, "change": "modified", "verdicts": changed})
    return diffs


def cmd_catalog(action: str, store, other=None, prop=None, verdict=None, family=None, jobs=1):
    if action == "build":
        return catalog_build(store, jobs), EXIT_TRUE
    if action == "query":
        hits = catalog_query(store, prop, verdict, family)
        return {"matches": hits, "count": len(hits)}, EXIT_TRUE
    if action == "diff":
        if other is None:
            raise DomainError("diff needs two stores")
        d = catalog_diff(store, other)
        return {"differences": d}, EXIT_TRUE if not d else EXIT_FALSE
    raise DomainError(f"unknown catalog action {action!r}")

