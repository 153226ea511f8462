"""Benchmark objectives and the name registry.

Five builtins, all 2-D:

  sphere_min   x1^2 + (x2-0.4)^2 on [-2,2]^2, minimize
  trig         cos(pi*x1/2) - sin(pi*x2/2) on [-7,7]^2, minimize
  sphere_max   same surface as sphere_min, maximize
  rosenbrock   100*(x0^2 - x1)^2 + (1 - x0)^2 on [-2.048,2.048]^2, minimize
  shekel       De Jong f5 (Shekel's Foxholes) on [-65.536,65.536]^2, minimize

Custom objectives can be added at runtime with register_objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .geometry import Point, SearchBox
from .labeling import Sense


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    dimension: int
    domain: SearchBox
    sense: Sense
    known_optima: tuple[tuple[Point, float], ...]
    evaluator: Callable[[Point], float]


class UnknownObjectiveError(KeyError):
    def __init__(self, name: str, available: Sequence[str]):
        self.unknown_name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown objective {name!r}; available: {', '.join(available)}"
        )


def _need_2d(p: Sequence[float]) -> None:
    if len(p) != 2:
        raise ValueError(f"expected a 2-D point, got {len(p)} coordinates")


def eval_sphere_min(p: Sequence[float]) -> float:
    _need_2d(p)
    return p[0] ** 2 + (p[1] - 0.4) ** 2


def eval_sphere_max(p: Sequence[float]) -> float:
    """Same surface as eval_sphere_min; registered with maximize sense."""
    return eval_sphere_min(p)


def eval_trig(p: Sequence[float]) -> float:
    _need_2d(p)
    return math.cos(math.pi * p[0] / 2.0) - math.sin(math.pi * p[1] / 2.0)


def eval_rosenbrock(p: Sequence[float]) -> float:
    _need_2d(p)
    return 100.0 * (p[0] ** 2 - p[1]) ** 2 + (1.0 - p[0]) ** 2


_SHEKEL_BASE = (-32.0, -16.0, 0.0, 16.0, 32.0)


def shekel_coeff(i: int) -> tuple[float, float]:
    """Well center i of the 5x5 foxhole grid: column by i mod 5, row by
    i div 5."""
    if not 0 <= i <= 24:
        raise ValueError(f"well index {i} out of range 0..24")
    return _SHEKEL_BASE[i % 5], _SHEKEL_BASE[i // 5]


SHEKEL_TABLE: tuple[tuple[float, float], ...] = tuple(shekel_coeff(i) for i in range(25))


def eval_shekel(p: Sequence[float]) -> float:
    """De Jong f5: 1 / (0.002 + sum_j 1/(j + dist_j^6)), wells j = 1..25.

    Every denominator is >= 1, so the function is finite everywhere,
    ranges over roughly (0.99, 500.05), and bottoms out at
    f(-32,-32) = 0.998004 in the deepest well.
    """
    _need_2d(p)
    total = 0.0
    for i, (a0, a1) in enumerate(SHEKEL_TABLE):
        total += 1.0 / ((i + 1) + (p[0] - a0) ** 6 + (p[1] - a1) ** 6)
    return 1.0 / (0.002 + total)


_TRIG_OPTIMA = tuple(
    ((float(x1), float(x2)), -2.0)
    for x1 in (-6, -2, 2, 6)
    for x2 in (-3, 1, 5)
)

_REGISTRY: dict[str, ObjectiveSpec] = {}


def register_objective(spec: ObjectiveSpec) -> None:
    """Add a custom objective; rejects duplicate names."""
    if spec.name in _REGISTRY:
        raise ValueError(f"objective {spec.name!r} is already registered")
    for point, _ in spec.known_optima:
        if not spec.domain.contains(point):
            raise ValueError(f"known optimum {point!r} lies outside the domain")
    _REGISTRY[spec.name] = spec


def registry_lookup(name: str) -> ObjectiveSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownObjectiveError(name, builtin_names()) from None


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTINS)


def all_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


_BUILTINS = ("sphere_min", "trig", "sphere_max", "rosenbrock", "shekel")

register_objective(ObjectiveSpec(
    name="sphere_min",
    dimension=2,
    domain=SearchBox((-2.0, -2.0), (2.0, 2.0)),
    sense=Sense.MINIMIZE,
    known_optima=(((0.0, 0.4), 0.0),),
    evaluator=eval_sphere_min,
))
register_objective(ObjectiveSpec(
    name="trig",
    dimension=2,
    domain=SearchBox((-7.0, -7.0), (7.0, 7.0)),
    sense=Sense.MINIMIZE,
    known_optima=_TRIG_OPTIMA,
    evaluator=eval_trig,
))
# the closed box has two maximizers of the sphere surface, both kept so
# deviation is measured against whichever one a run actually found
register_objective(ObjectiveSpec(
    name="sphere_max",
    dimension=2,
    domain=SearchBox((-2.0, -2.0), (2.0, 2.0)),
    sense=Sense.MAXIMIZE,
    known_optima=(((-2.0, -2.0), 9.76), ((2.0, -2.0), 9.76)),
    evaluator=eval_sphere_max,
))
register_objective(ObjectiveSpec(
    name="rosenbrock",
    dimension=2,
    domain=SearchBox((-2.048, -2.048), (2.048, 2.048)),
    sense=Sense.MINIMIZE,
    known_optima=(((1.0, 1.0), 0.0),),
    evaluator=eval_rosenbrock,
))
register_objective(ObjectiveSpec(
    name="shekel",
    dimension=2,
    domain=SearchBox((-65.536, -65.536), (65.536, 65.536)),
    sense=Sense.MINIMIZE,
    known_optima=(((-32.0, -32.0), eval_shekel((-32.0, -32.0))),),
    evaluator=eval_shekel,
))
