"""Verification runs for the f(k) theorem, with replayable JSON reports."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, TypeVar

from .connectivity import (
    PathSystem,
    check_path_system,
    max_edge_disjoint_paths,
    max_independent_paths,
    oracle_max_independent,
    verify_cut,
)
from .construct import find_three_independent, find_two_independent
from .diamond import generate_diamond, structural_upper_bound
from .errors import GraphTooLargeError, PreconditionError
from .graph import Graph, build_graph, serialize_graph
from .rng import SplitMix64

DEFAULT_SCAN_ORDER = 3
MAX_SCAN_ORDER = 4

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    s: str
    t: str
    planted_k: int
    seed: int


@dataclass
class Report:
    experiment: str
    params: dict[str, Any]
    attempted: int = 0
    passed: int = 0
    max_observed: int | None = None
    fallbacks: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    seed: int | None = None
    details: dict[str, Any] = field(default_factory=dict)
    duration_s: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        doc = {
            "experiment": self.experiment,
            "params": self.params,
            "attempted": self.attempted,
            "passed": self.passed,
            "max_observed": self.max_observed,
            "fallbacks": self.fallbacks,
            "counterexamples": sorted(self.counterexamples, key=_canonical),
            "seed": self.seed,
            "details": self.details,
        }
        if include_timing:
            doc["duration_s"] = round(self.duration_s, 3)
        return doc

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> Report:
        return cls(
            experiment=doc["experiment"],
            params=doc["params"],
            attempted=doc["attempted"],
            passed=doc["passed"],
            max_observed=doc["max_observed"],
            fallbacks=doc["fallbacks"],
            counterexamples=doc["counterexamples"],
            seed=doc["seed"],
            details=doc.get("details", {}),
            duration_s=doc.get("duration_s", 0.0),
        )


def _canonical(item: Any) -> str:
    return json.dumps(item, sort_keys=True)


def _map(fn: Callable[[T], R], items: Sequence[T], workers: int | None) -> list[R]:
    # Results come back in input order either way, so reports do not depend on workers.
    if not workers or workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _vertex_names(count: int) -> list[str]:
    width = len(str(max(count - 1, 0)))
    return [f"v{i:0{width}d}" for i in range(count)]


def plant_paths_graph(
    seed: int, n: int, k: int, extra_edge_fraction: float | Fraction = 0
) -> PlantedInstance:
    """Random graph on n vertices built around k internally disjoint s-t paths.

    The n-2 interior vertices ``v0..`` are shuffled, then dealt to the k paths
    in contiguous runs whose lengths differ by at most one (earlier paths get
    the extra vertex). Afterwards every absent pair, in sorted order, becomes
    an edge when ``random() < extra_edge_fraction``.
    """
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    if n < k + 2:
        raise PreconditionError(f"n={n} too small for {k} internally disjoint paths (need {k + 2})")
    if not 0 <= extra_edge_fraction <= 1:
        raise PreconditionError(f"extra_edge_fraction must lie in [0, 1], got {extra_edge_fraction}")
    rng = SplitMix64(seed)
    interior = _vertex_names(n - 2)
    rng.shuffle(interior)
    base, rem = divmod(n - 2, k)
    edges: list[tuple[str, str]] = []
    start = 0
    for i in range(k):
        size = base + (1 if i < rem else 0)
        chain = ["s", *interior[start:start + size], "t"]
        start += size
        edges += zip(chain, chain[1:])
    g = build_graph(edges)
    if extra_edge_fraction > 0:
        threshold = float(extra_edge_fraction)
        vs = g.vertices
        extra = [
            (a, b)
            for i, a in enumerate(vs)
            for b in vs[i + 1:]
            if not g.has_edge(a, b) and rng.random() < threshold
        ]
        g = build_graph(edges + extra)
    return PlantedInstance(g, "s", "t", k, seed)


def _instance_record(inst: PlantedInstance, **extra: Any) -> dict[str, Any]:
    return {
        "seed": inst.seed,
        "n": len(inst.graph),
        "planted_k": inst.planted_k,
        "graph": serialize_graph(inst.graph),
        **extra,
    }


def _construction_trials(
    name: str,
    construct: Callable[[Graph, str, str], Any],
    paths_needed: int,
    trials: int,
    seed: int,
    k: int,
    n_min: int,
    n_max: int,
    extra_fractions: Sequence[float],
    workers: int | None,
) -> Report:
    if trials < 1:
        raise PreconditionError(f"trials must be at least 1, got {trials}")
    if n_min < k + 2 or n_max < n_min:
        raise PreconditionError(f"bad size range n in [{n_min}, {n_max}] for k={k}")
    started = time.perf_counter()
    rng = SplitMix64(seed)
    plans = []
    for i in range(trials):
        trial_seed = rng.next_u64()
        n = n_min + rng.below(n_max - n_min + 1)
        plans.append((trial_seed, n, extra_fractions[i % len(extra_fractions)]))

    def run(plan: tuple[int, int, float]) -> tuple[str, dict[str, Any]]:
        trial_seed, n, frac = plan
        inst = plant_paths_graph(trial_seed, n, k, frac)
        try:
            witness = construct(inst.graph, inst.s, inst.t)
        except PreconditionError as exc:
            return "precondition", _instance_record(inst, extra=frac, reason=str(exc))
        problems = list(check_path_system(inst.graph, witness.system).failures)
        if len(witness.system) != paths_needed:
            problems.append(f"witness has {len(witness.system)} paths, expected {paths_needed}")
        if witness.u != inst.s:
            problems.append(f"witness u={witness.u!r}, expected s")
        # Independent cross-check of the witness pair by flow, with Menger duality.
        ps, cert = max_independent_paths(inst.graph, witness.u, witness.v)
        if len(ps) < paths_needed:
            problems.append(f"flow finds only {len(ps)} independent paths for the witness pair")
        duality = not inst.graph.has_edge(witness.u, witness.v)
        if duality and len(ps) != cert.bound:
            problems.append(f"Menger duality broken: {len(ps)} paths vs cut {cert.bound}")
        record = {"lambda": witness.trace.get("edge_connectivity"), "duality": duality}
        if problems:
            return "fail", _instance_record(inst, extra=frac, u=witness.u, v=witness.v,
                                            failures=problems)
        return "pass", record

    outcomes = _map(run, plans, workers)
    report = Report(
        experiment=name,
        params={"trials": trials, "k": k, "n_min": n_min, "n_max": n_max,
                "extra_edge_fractions": list(extra_fractions)},
        seed=seed,
    )
    skipped = [rec for status, rec in outcomes if status == "precondition"]
    passed = [rec for status, rec in outcomes if status == "pass"]
    report.counterexamples = [rec for status, rec in outcomes if status == "fail"]
    report.attempted = len(outcomes) - len(skipped)
    report.passed = len(passed)
    report.max_observed = max((rec["lambda"] for rec in passed), default=None)
    report.details = {
        "precondition_violations": sorted(skipped, key=_canonical),
        "duality_checks": sum(rec["duality"] for rec in passed),
    }
    report.duration_s = time.perf_counter() - started
    return report


def verify_lemma1(
    trials: int,
    seed: int,
    n_min: int = 5,
    n_max: int = 60,
    extra_fractions: Sequence[float] = (0.0, 0.05, 0.2),
    k: int = 3,
    workers: int | None = None,
) -> Report:
    """Plant k edge-disjoint s-t paths per trial and extract 3 independent paths.

    Trials whose measured s-t edge connectivity is below 3 (possible only when
    ``k < 3``) are recorded as precondition violations, not failures.
    """
    return _construction_trials("lemma1", find_three_independent, 3, trials, seed, k,
                                n_min, n_max, extra_fractions, workers)


def verify_two_paths(
    trials: int,
    seed: int,
    n_min: int = 4,
    n_max: int = 60,
    extra_fractions: Sequence[float] = (0.0, 0.05, 0.2),
    workers: int | None = None,
) -> Report:
    return _construction_trials("two-paths", find_two_independent, 2, trials, seed, 2,
                                n_min, n_max, extra_fractions, workers)


def _pairs(vertices: Sequence[str]) -> list[tuple[str, str]]:
    return [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]]


def verify_lemma2(p: int, max_order: int = DEFAULT_SCAN_ORDER, workers: int | None = None) -> Report:
    """All-pairs scan of G_p: flow count, structural certificate, and their consistency."""
    if max_order > MAX_SCAN_ORDER:
        raise GraphTooLargeError(f"all-pairs scans are capped at order {MAX_SCAN_ORDER}", max_order)
    if p > max_order:
        raise GraphTooLargeError(f"all-pairs scan of G_{p} exceeds the order limit {max_order}", p)
    started = time.perf_counter()
    g, h = generate_diamond(p)
    _ = h.vertex_index  # fill the lookup cache before any worker threads start

    def run(pair: tuple[str, str]) -> dict[str, Any]:
        u, v = pair
        ps, cert = max_independent_paths(g, u, v)
        sc = structural_upper_bound(h, g, u, v)
        problems = list(check_path_system(g, ps).failures)
        problems += verify_cut(g, u, v, cert).failures
        problems += verify_cut(g, u, v, sc).failures
        count = len(ps)
        adjacent = g.has_edge(u, v)
        if count >= 4:
            problems.append(f"{count} independent paths")
        if sc.bound > 3:
            problems.append(f"structural bound {sc.bound} > 3")
        if count > sc.bound:
            problems.append(f"flow count {count} exceeds structural bound {sc.bound}")
        if not adjacent and count != cert.bound:
            problems.append(f"Menger duality broken: {count} paths vs cut {cert.bound}")
        return {"u": u, "v": v, "count": count, "bound": sc.bound, "variant": sc.variant,
                "fallback": sc.fallback, "adjacent": adjacent, "problems": problems}

    rows = _map(run, _pairs(g.vertices), workers)
    st = max_edge_disjoint_paths(g, "s", "t")
    report = Report(experiment="lemma2", params={"order": p, "max_order": max_order})
    report.attempted = len(rows)
    report.passed = sum(not r["problems"] for r in rows)
    report.max_observed = max((r["count"] for r in rows), default=0)
    report.fallbacks = sum(r["fallback"] for r in rows)
    report.counterexamples = [
        {"u": r["u"], "v": r["v"], "count": r["count"], "bound": r["bound"], "failures": r["problems"]}
        for r in rows if r["problems"]
    ]
    histogram: dict[str, int] = {}
    for r in rows:
        histogram[str(r["bound"])] = histogram.get(str(r["bound"]), 0) + 1
    report.details = {
        "vertices": len(g),
        "edges": len(g.edges),
        "st_edge_disjoint_paths": len(st),
        "pairs_with_4_or_more": sum(r["count"] >= 4 for r in rows),
        "count_histogram": _histogram(r["count"] for r in rows),
        "bound_histogram": _histogram(r["bound"] for r in rows),
        "duality_checks": sum(not r["adjacent"] for r in rows),
        "fallback_pairs": [[r["u"], r["v"]] for r in rows if r["fallback"]],
    }
    report.duration_s = time.perf_counter() - started
    return report


def _histogram(values: Iterable[int]) -> dict[str, int]:
    out: dict[int, int] = {}
    for x in values:
        out[x] = out.get(x, 0) + 1
    return {str(k): out[k] for k in sorted(out)}


def _structural_max(p: int) -> tuple[int, int]:
    g, h = generate_diamond(p)
    bounds = [structural_upper_bound(h, g, u, v) for u, v in _pairs(g.vertices)]
    return max(c.bound for c in bounds), sum(c.fallback for c in bounds)


def expected_f(k: int) -> int:
    return k if k <= 2 else 3


def f_table(k_max: int, seed: int = 0, scan_limit: int = DEFAULT_SCAN_ORDER) -> Report:
    """Lower and upper witnesses for f(1..k_max).

    Lower: a planted graph with k edge-disjoint s-t paths and an explicit
    independent path system (one path, the two-path construction, or the
    three-path construction). Upper: the diamond G_p with p = ceil(log2 k),
    which has 2^p >= k edge-disjoint s-t paths; its all-pairs independent
    maximum comes from a flow scan when p <= scan_limit and otherwise from
    structural certificates alone.
    """
    if k_max < 1:
        raise PreconditionError(f"k_max must be at least 1, got {k_max}")
    started = time.perf_counter()
    report = Report(experiment="f-table", params={"k_max": k_max, "scan_limit": scan_limit}, seed=seed)
    scans: dict[int, dict[str, Any]] = {}
    rows = []
    for k in range(1, k_max + 1):
        lower = _lower_witness(k, seed)
        p = (k - 1).bit_length()
        if p not in scans:
            scans[p] = _upper_witness(p, scan_limit)
            report.fallbacks += scans[p]["fallbacks"]
        upper = scans[p]
        problems = list(lower["failures"]) + list(upper["failures"])
        if upper["st_edge_disjoint_paths"] < k:
            problems.append(f"G_{p} has only {upper['st_edge_disjoint_paths']} edge-disjoint s-t paths")
        f = lower["value"] if lower["value"] == upper["max_independent"] else None
        if f is None:
            problems.append(f"lower bound {lower['value']} != upper bound {upper['max_independent']}")
        elif f != expected_f(k):
            problems.append(f"f({k}) = {f}, formula says {expected_f(k)}")
        rows.append({"k": k, "f": f, "lower": lower, "upper": upper})
        report.attempted += 1
        if problems:
            report.counterexamples.append({"k": k, "failures": problems})
        else:
            report.passed += 1
    report.max_observed = max((r["f"] for r in rows if r["f"] is not None), default=None)
    report.details = {
        "rows": rows,
        "table": {str(r["k"]): r["f"] for r in rows},
    }
    report.duration_s = time.perf_counter() - started
    return report


def _lower_witness(k: int, seed: int) -> dict[str, Any]:
    n = 3 * k + 2
    inst = plant_paths_graph(seed, n, k, 0.1 if k > 1 else 0)
    g = inst.graph
    lam = len(max_edge_disjoint_paths(g, inst.s, inst.t))
    failures = []
    if lam < k:
        failures.append(f"planted instance has only {lam} edge-disjoint paths")
    if k == 1:
        path = max_edge_disjoint_paths(g, inst.s, inst.t).paths[0]
        system = PathSystem(inst.s, inst.t, (path,))
        u, v = inst.s, inst.t
    else:
        witness = (find_two_independent if k == 2 else find_three_independent)(g, inst.s, inst.t)
        system, u, v = witness.system, witness.u, witness.v
    failures += check_path_system(g, system).failures
    return {
        "instance": {"seed": seed, "n": n, "planted_k": k, "edge_connectivity": lam},
        "u": u,
        "v": v,
        "paths": [list(x) for x in system.paths],
        "value": len(system),
        "failures": failures,
    }


def _upper_witness(p: int, scan_limit: int) -> dict[str, Any]:
    if p <= scan_limit:
        scan = verify_lemma2(p, max_order=max(scan_limit, p))
        failures = []
        if scan.counterexamples:
            failures.append(f"lemma2 scan of G_{p}: {len(scan.counterexamples)} counterexamples")
        return {
            "order": p,
            "st_edge_disjoint_paths": scan.details["st_edge_disjoint_paths"],
            "max_independent": scan.max_observed,
            "certified_by": "flow scan + structural cuts",
            "fallbacks": scan.fallbacks,
            "failures": failures,
        }
    g, _ = generate_diamond(p)
    bound, fallbacks = _structural_max(p)
    return {
        "order": p,
        "st_edge_disjoint_paths": len(max_edge_disjoint_paths(g, "s", "t")),
        "max_independent": bound,
        "certified_by": "structural cuts only",
        "fallbacks": fallbacks,
        "failures": [],
    }


def verify_oracle(
    graphs: int,
    seed: int,
    n_max: int = 8,
    edge_probability: float = 0.4,
    workers: int | None = None,
) -> Report:
    """Flow count versus brute-force enumeration over all pairs of small random graphs."""
    if n_max > 12:
        raise GraphTooLargeError(f"oracle graphs are limited to 12 vertices, asked for {n_max}", n_max)
    started = time.perf_counter()
    rng = SplitMix64(seed)
    plans = []
    for _ in range(graphs):
        n = 2 + rng.below(n_max - 1)
        names = _vertex_names(n)
        edges = [(a, b) for a, b in _pairs(names) if rng.random() < edge_probability]
        plans.append(build_graph(edges, names))

    def run(g: Graph) -> dict[str, Any]:
        problems = []
        bad_pairs = duality = top = 0
        for u, v in _pairs(g.vertices):
            ps, cert = max_independent_paths(g, u, v)
            expected = oracle_max_independent(g, u, v)
            top = max(top, len(ps))
            found = check_path_system(g, ps).failures + verify_cut(g, u, v, cert).failures
            if len(ps) != expected:
                found.append(f"flow {len(ps)} != oracle {expected}")
            if not g.has_edge(u, v):
                duality += 1
                if len(ps) != cert.bound:
                    found.append("Menger duality broken")
            bad_pairs += bool(found)
            problems += [f"({u}, {v}): {m}" for m in found]
        return {"pairs": len(g) * (len(g) - 1) // 2, "bad_pairs": bad_pairs, "duality": duality,
                "max": top, "problems": problems, "graph": serialize_graph(g)}

    rows = _map(run, plans, workers)
    report = Report(
        experiment="oracle",
        params={"graphs": graphs, "n_max": n_max, "edge_probability": edge_probability},
        seed=seed,
    )
    report.attempted = sum(r["pairs"] for r in rows)
    report.passed = report.attempted - sum(r["bad_pairs"] for r in rows)
    report.max_observed = max(r["max"] for r in rows) if rows else None
    report.counterexamples = [{"graph": r["graph"], "failures": r["problems"]} for r in rows if r["problems"]]
    report.details = {"graphs": graphs, "duality_checks": sum(r["duality"] for r in rows)}
    report.duration_s = time.perf_counter() - started
    return report
