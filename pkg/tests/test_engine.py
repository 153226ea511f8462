"""Subdivision search: cell selection, descent trajectories, stopping."""

import math

import pytest

from slmopt.engine import (
    GENERATION_CAP,
    NO_COMPLETE_CELL,
    TOLERANCE_REACHED,
    SlmConfig,
    complete_cells,
    generation_bound,
    run_slm,
    select_cell,
)
from slmopt.geometry import SearchBox, subdivide
from slmopt.labeling import ObjectiveEvaluationError, Sense, label_grid
from slmopt.objectives import registry_lookup

TRIG_FAMILY = tuple(
    (float(x1), float(x2)) for x1 in (-6, -2, 2, 6) for x2 in (-3, 1, 5)
)


def run_builtin(name, tolerance, **kwargs):
    spec = registry_lookup(name)
    cfg = SlmConfig(sense=spec.sense, tolerance=tolerance, **kwargs)
    return run_slm(spec.evaluator, spec.domain, cfg), spec


# ---------------------------------------------------------------------------
# Cell bookkeeping
# ---------------------------------------------------------------------------

def test_complete_cells_requires_full_label_set():
    box = SearchBox((0.0, 0.0), (2.0, 2.0))
    _, cells = subdivide(box)
    # cell 0 has grid indices (0, 1, 3, 4): give them labels 0, 1, 2
    labels = [0, 1, 0, 2, 0, 0, 0, 0, 0]
    kept = complete_cells(cells, labels)
    assert kept == (cells[0],)
    assert complete_cells(cells, [0] * 9) == ()
    assert complete_cells((), []) == ()


def test_complete_cells_keeps_input_order():
    box = SearchBox((0.0, 0.0), (2.0, 2.0))
    _, cells = subdivide(box)
    # grid indices: cell 0 reads (0,1,3,4) -> {0,1,2}, cell 3 reads
    # (4,5,7,8) -> {0,1,2}; cells 1 and 2 miss a label
    labels = [0, 1, 0, 2, 0, 1, 0, 2, 0]
    kept = complete_cells(cells, labels)
    assert kept == (cells[0], cells[3])


def test_select_cell_prefers_best_vertex_then_lex():
    spec = registry_lookup("sphere_min")
    domain = spec.domain
    grid, cells = subdivide(domain)
    vertices = label_grid(spec.evaluator, grid, (1.0, 1.0), domain, spec.sense)
    labels = [v.label for v in vertices]
    kept = complete_cells(cells, labels)
    chosen = select_cell(kept, vertices, spec.sense)
    assert chosen.box.lo == (0.0, 0.0) and chosen.box.hi == (2.0, 2.0)
    # constant surface: every cell ties, lex-smallest lower corner wins
    flat = label_grid(lambda p: 1.0, grid, (1.0, 1.0), domain, Sense.MINIMIZE)
    assert select_cell(cells, flat, Sense.MINIMIZE) is cells[0]
    with pytest.raises(ValueError):
        select_cell((), vertices, spec.sense)


# ---------------------------------------------------------------------------
# generation_bound
# ---------------------------------------------------------------------------

def test_generation_bound_values():
    sphere = SearchBox((-2.0, -2.0), (2.0, 2.0))
    assert generation_bound(sphere, 0.0625) == 6
    shekel = SearchBox((-65.536, -65.536), (65.536, 65.536))
    assert generation_bound(shekel, 0.512) == 8
    assert generation_bound(sphere, 4.0) == 0
    assert generation_bound(sphere, 100.0) == 0
    with pytest.raises(ValueError):
        generation_bound(sphere, 0.0)


def test_generation_bound_matches_runs():
    for k in (3, 5, 9):
        res, spec = run_builtin("sphere_min", 4.0 / 2 ** k)
        assert res.generations[-1].index == k
        assert generation_bound(spec.domain, 4.0 / 2 ** k) == k


# ---------------------------------------------------------------------------
# Descent runs on the builtins
# ---------------------------------------------------------------------------

def test_sphere_descent():
    res, spec = run_builtin("sphere_min", 0.0625)
    assert res.termination == TOLERANCE_REACHED
    assert abs(res.best_point[0] - 0.0) <= 0.0625
    assert abs(res.best_point[1] - 0.4) <= 0.0625
    assert 5 <= res.generations[-1].index <= 8
    assert res.best_value == spec.evaluator(res.best_point)
    assert res.candidates == ()  # explore_all off


def test_sphere_chosen_box_trajectory():
    res, _ = run_builtin("sphere_min", 0.0625)
    boxes = [(g.chosen.box.lo, g.chosen.box.hi) for g in res.generations[:3]]
    assert boxes == [
        ((-2.0, -2.0), (2.0, 2.0)),
        ((0.0, 0.0), (2.0, 2.0)),
        ((0.0, 0.0), (1.0, 1.0)),
    ]
    assert res.generations[-1].chosen is None


def test_sphere_spacing_halves_every_generation():
    res, _ = run_builtin("sphere_min", 0.0625)
    for i, g in enumerate(res.generations):
        assert g.index == i
        assert g.spacing == (4.0 / 2 ** i, 4.0 / 2 ** i)


def test_single_path_boxes_nest():
    for name, tol in (("sphere_min", 0.01), ("shekel", 0.5)):
        res, _ = run_builtin(name, tol)
        for prev, cur in zip(res.generations, res.generations[1:]):
            assert all(a <= b for a, b in zip(prev.box.lo, cur.box.lo))
            assert all(a <= b for a, b in zip(cur.box.hi, prev.box.hi))
            if prev.index > 0:
                # (a+b)/2 - a and (b-a)/2 can differ by an ulp when the
                # bounds are not binary fractions (65.536 is not)
                for got, want in zip(cur.box.widths(), prev.box.widths()):
                    assert math.isclose(got, want / 2, rel_tol=1e-12)


def test_sphere_max_descent():
    res, _ = run_builtin("sphere_max", 0.01)
    assert res.best_point == (-2.0, -2.0)
    assert math.isclose(res.best_value, 9.76, rel_tol=1e-12)
    assert res.termination == TOLERANCE_REACHED


def test_rosenbrock_descent():
    res, _ = run_builtin("rosenbrock", 0.008)
    assert res.best_point == (1.0, 1.0)
    assert res.best_value == 0.0


def test_shekel_descent():
    res, _ = run_builtin("shekel", 0.5)
    assert res.best_point == (-32.0, -32.0)
    assert math.isclose(res.best_value, 0.9980038388186492, rel_tol=1e-12)


def test_best_tracks_every_evaluation():
    spec = registry_lookup("sphere_min")
    seen = []

    def counted(p):
        v = spec.evaluator(p)
        seen.append(v)
        return v

    cfg = SlmConfig(sense=spec.sense, tolerance=0.0625)
    res = run_slm(counted, spec.domain, cfg)
    assert res.evaluations == len(seen)
    assert res.best_value == min(seen)


def test_evaluation_budget_per_generation():
    # n = 2: at most 3^2 vertices per box per generation, each probing
    # at most 3^2 points including itself
    for name, tol in (("sphere_min", 0.01), ("trig", 0.5)):
        res, _ = run_builtin(name, tol)
        for g in res.generations:
            assert len(g.vertices) <= 9
        assert res.evaluations <= len(res.generations) * 81


# ---------------------------------------------------------------------------
# Explore-all mode
# ---------------------------------------------------------------------------

def test_explore_all_finds_separated_minima():
    res, spec = run_builtin("trig", 14.0 / 2 ** 10, explore_all=True,
                            cell_budget=32)
    assert res.termination == TOLERANCE_REACHED
    assert len(res.candidates) == 32
    ranked = sorted(res.candidates, key=lambda pv: (pv[1], pv[0]))
    assert list(res.candidates) == ranked
    for point, value in res.candidates:
        assert math.isclose(value, spec.evaluator(point), rel_tol=1e-12)
    qualifying = [
        (p, v) for p, v in res.candidates
        if v <= -1.85 and min(math.dist(p, m) for m in TRIG_FAMILY) <= 0.25
    ]
    assert len(qualifying) >= 4
    assert len(set(p for p, _ in qualifying)) == len(qualifying)


def test_explore_all_frontier_respects_budget():
    budget = 8
    res, _ = run_builtin("trig", 14.0 / 2 ** 8, explore_all=True,
                         cell_budget=budget)
    per_gen = {}
    for g in res.generations:
        per_gen[g.index] = per_gen.get(g.index, 0) + 1
    assert max(per_gen.values()) <= budget
    assert len(res.candidates) <= budget


def test_explore_all_boxes_nest_in_parents():
    res, _ = run_builtin("trig", 14.0 / 2 ** 6, explore_all=True, cell_budget=16)
    by_gen = {}
    for g in res.generations:
        by_gen.setdefault(g.index, []).append(g.box)
    for i in range(1, max(by_gen)):
        for child in by_gen[i + 1]:
            assert any(
                all(a <= c for a, c in zip(parent.lo, child.lo))
                and all(c <= b for c, b in zip(child.hi, parent.hi))
                for parent in by_gen[i]
            )


def test_explore_all_budget_one_matches_single_path():
    single, _ = run_builtin("sphere_min", 0.0625)
    multi, _ = run_builtin("sphere_min", 0.0625, explore_all=True, cell_budget=1)
    assert multi.best_point == single.best_point
    assert multi.best_value == single.best_value
    assert [g.box for g in multi.generations] == [g.box for g in single.generations]


# ---------------------------------------------------------------------------
# Stopping and failure modes
# ---------------------------------------------------------------------------

def test_constant_objective_hits_generation_cap():
    domain = SearchBox((0.0, 0.0), (1.0, 1.0))
    cfg = SlmConfig(sense=Sense.MINIMIZE, tolerance=1e-9, max_generations=4)
    res = run_slm(lambda p: 5.0, domain, cfg)
    assert res.termination == GENERATION_CAP
    assert res.generations[-1].index == 4
    for g in res.generations:
        assert g.fallback_used
        assert all(v.label == 0 for v in g.vertices)
    assert all(g.chosen is not None for g in res.generations[:-1])


def test_unsplittable_box_stops_cleanly():
    width = 2 ** -49
    domain = SearchBox((1.0, 1.0), (1.0 + width, 1.0 + width))
    cfg = SlmConfig(sense=Sense.MINIMIZE, tolerance=2 ** -80)
    res = run_slm(lambda p: p[0] + p[1], domain, cfg)
    assert res.termination == NO_COMPLETE_CELL
    assert res.generations[-1].index == 3


def test_non_finite_value_reports_generation():
    domain = SearchBox((-2.0, -2.0), (2.0, 2.0))

    def f(p):
        if p == (1.0, 1.0):  # first reachable by generation-1 probes
            return math.inf
        return p[0] ** 2 + (p[1] - 0.4) ** 2

    with pytest.raises(ObjectiveEvaluationError) as err:
        run_slm(f, domain, SlmConfig(sense=Sense.MINIMIZE, tolerance=0.0625))
    assert err.value.generation == 1
    assert err.value.point == (1.0, 1.0)


def test_runs_are_deterministic():
    a, _ = run_builtin("trig", 0.25, explore_all=True, cell_budget=16)
    b, _ = run_builtin("trig", 0.25, explore_all=True, cell_budget=16)
    assert a == b
    assert repr(a) == repr(b)


def test_config_validation():
    with pytest.raises(ValueError):
        SlmConfig(sense=Sense.MINIMIZE, tolerance=0.0)
    with pytest.raises(ValueError):
        SlmConfig(sense=Sense.MINIMIZE, tolerance=1.0, max_generations=0)
    with pytest.raises(ValueError):
        SlmConfig(sense=Sense.MINIMIZE, tolerance=1.0, cell_budget=0)
