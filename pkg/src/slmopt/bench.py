"""Algorithm x objective benchmark matrix with deterministic emitters.

Rows are produced objective-major, then algorithm, then seed. The
subdivision search is deterministic, so its rows repeat identically
across seeds; the baselines consume the seed. Markdown output mirrors
the comparison-table layout (Algorithm | Iterations | Optimal point |
Deviation); csv and json-lines are lossless and round-trip every field.
All output is byte-deterministic except the wall_time_ms column.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from typing import Sequence

from .baselines import (
    BaselineConfig,
    random_search,
    random_search_walk,
    simulated_annealing,
)
from .engine import SlmConfig, run_slm
from .geometry import Point
from .objectives import ObjectiveSpec, registry_lookup

FORMATS = ("markdown", "csv", "json-lines")
DEFAULT_ITERATIONS = {"rs": 1000, "rsw": 500, "sa": 150}
_BASELINE_FNS = {
    "rs": random_search,
    "rsw": random_search_walk,
    "sa": simulated_annealing,
}


@dataclass(frozen=True)
class AlgorithmSpec:
    """One column of the benchmark matrix.

    kind is one of slm, rs, rsw, sa. iterations applies to the
    baselines (defaults per DEFAULT_ITERATIONS); tolerance applies to
    slm (default: widest domain side / 2**10).
    """

    kind: str
    iterations: int | None = None
    tolerance: float | None = None
    explore_all: bool = False
    initial_point: Point | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("slm",) + tuple(_BASELINE_FNS):
            raise ValueError(f"unknown algorithm kind {self.kind!r}")


@dataclass(frozen=True)
class BenchSpec:
    objectives: tuple[str, ...]
    algorithms: tuple[AlgorithmSpec, ...]
    repeats: int = 1
    output_format: str = "markdown"

    def __post_init__(self) -> None:
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    objective: str
    iterations: int
    found_point: Point
    found_value: float
    deviation: tuple[float, ...]
    wall_time_ms: float
    seed: int


def deviation(found: Point, optima: Sequence[Point]) -> tuple[float, ...]:
    """Componentwise |found - o| against the optimum o nearest to found
    in Euclidean distance (ties to the lexicographically smallest o)."""
    if not optima:
        raise ValueError("need at least one known optimum")
    nearest = min(
        optima,
        key=lambda o: (sum((a - b) ** 2 for a, b in zip(found, o)), o),
    )
    return tuple(abs(a - b) for a, b in zip(found, nearest))


def default_tolerance(spec: ObjectiveSpec) -> float:
    return max(spec.domain.widths()) / 2**10


def _run_one(ospec: ObjectiveSpec, algo: AlgorithmSpec, seed: int) -> BenchRow:
    start = time.perf_counter()
    if algo.kind == "slm":
        cfg = SlmConfig(
            sense=ospec.sense,
            tolerance=algo.tolerance if algo.tolerance is not None else default_tolerance(ospec),
            explore_all=algo.explore_all,
        )
        res = run_slm(ospec.evaluator, ospec.domain, cfg)
        found, value = res.best_point, res.best_value
        iterations = res.generations[-1].index
    else:
        cfg = BaselineConfig(
            iterations=algo.iterations if algo.iterations is not None else DEFAULT_ITERATIONS[algo.kind],
            seed=seed,
            initial_point=algo.initial_point,
        )
        res = _BASELINE_FNS[algo.kind](ospec, cfg)
        found, value = res.best_point, res.best_value
        iterations = cfg.iterations
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return BenchRow(
        algorithm=algo.kind,
        objective=ospec.name,
        iterations=iterations,
        found_point=found,
        found_value=value,
        deviation=deviation(found, [p for p, _ in ospec.known_optima]),
        wall_time_ms=elapsed_ms,
        seed=seed,
    )


def run_bench(spec: BenchSpec) -> list[BenchRow]:
    """One row per (objective, algorithm, seed), in that nesting order.
    Unknown objective names abort before any run starts."""
    specs = [registry_lookup(name) for name in spec.objectives]
    rows = []
    for ospec in specs:
        for algo in spec.algorithms:
            for seed in range(spec.repeats):
                rows.append(_run_one(ospec, algo, seed))
    return rows


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _fmt_point(p: Sequence[float]) -> str:
    return "(" + ", ".join(_fmt_num(v) for v in p) + ")"


def emit_markdown(rows: Sequence[BenchRow]) -> str:
    by_objective: dict[str, list[BenchRow]] = {}
    for row in rows:
        by_objective.setdefault(row.objective, []).append(row)
    out = []
    for objective, group in by_objective.items():
        out.append(f"## {objective}")
        out.append("")
        out.append("| Algorithm | Iterations | Optimal point | Deviation |")
        out.append("| --- | --- | --- | --- |")
        for row in group:
            out.append(
                f"| {row.algorithm} | {row.iterations} "
                f"| {_fmt_point(row.found_point)} | {_fmt_point(row.deviation)} |"
            )
        out.append("")
    return "\n".join(out)


FIELD_NAMES = (
    "algorithm", "objective", "iterations", "found_point",
    "found_value", "deviation", "wall_time_ms", "seed",
)


def _row_dict(row: BenchRow) -> dict:
    return {
        "algorithm": row.algorithm,
        "objective": row.objective,
        "iterations": row.iterations,
        "found_point": list(row.found_point),
        "found_value": row.found_value,
        "deviation": list(row.deviation),
        "wall_time_ms": row.wall_time_ms,
        "seed": row.seed,
    }


def emit_csv(rows: Sequence[BenchRow]) -> str:
    """Vector fields are JSON arrays inside csv cells; floats use repr
    digits, so parse_csv recovers every field exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELD_NAMES)
    for row in rows:
        d = _row_dict(row)
        writer.writerow([
            d["algorithm"], d["objective"], d["iterations"],
            json.dumps(d["found_point"]), repr(d["found_value"]),
            json.dumps(d["deviation"]), repr(d["wall_time_ms"]), d["seed"],
        ])
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != FIELD_NAMES:
        raise ValueError(f"unexpected csv header: {header!r}")
    rows = []
    for rec in reader:
        rows.append(BenchRow(
            algorithm=rec[0],
            objective=rec[1],
            iterations=int(rec[2]),
            found_point=tuple(json.loads(rec[3])),
            found_value=float(rec[4]),
            deviation=tuple(json.loads(rec[5])),
            wall_time_ms=float(rec[6]),
            seed=int(rec[7]),
        ))
    return rows


def emit_json_lines(rows: Sequence[BenchRow]) -> str:
    return "\n".join(json.dumps(_row_dict(row)) for row in rows) + ("\n" if rows else "")


def emit_table(rows: Sequence[BenchRow], output_format: str) -> str:
    if output_format == "markdown":
        return emit_markdown(rows)
    if output_format == "csv":
        return emit_csv(rows)
    if output_format == "json-lines":
        return emit_json_lines(rows)
    raise ValueError(f"unknown output format {output_format!r}")
