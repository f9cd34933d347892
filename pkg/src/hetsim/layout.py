"""Static simulation geometry: field rectangle, cluster grid, node placement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle. Containment is half-open so adjacent grid
    cells never both claim a boundary point."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x < self.x1 and self.y0 <= y < self.y1

    def circumradius(self) -> float:
        """Radius of the circle through the rectangle's corners (half diagonal).
        A broadcast at this power from anywhere inside reaches the whole cell."""
        return math.hypot(self.width, self.height) / 2.0


@dataclass(frozen=True)
class HeterogeneityConfig:
    """Two-level energy population: fraction m of nodes carry (1+a) times
    the base energy e0."""

    m: float = 0.1
    a: float = 0.0
    e0: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.m <= 1.0:
            raise ValueError(f"m must be in [0, 1], got {self.m}")
        if self.a < 0.0:
            raise ValueError(f"a must be nonnegative, got {self.a}")
        if self.e0 <= 0.0:
            raise ValueError(f"e0 must be positive, got {self.e0}")


@dataclass(slots=True)
class NodeState:
    """One sensor node: position, energy book-keeping and election state."""

    id: int
    x: float
    y: float
    advanced: bool
    e_init: float
    e_residual: float
    cluster_id: int
    alive: bool = True
    ineligible_until: int = 0  # round index; eligible for election iff r >= this
    is_ch_this_round: bool = False


@dataclass(frozen=True)
class FieldLayout:
    """Field rectangle, base station at the exact center, and a static
    cluster partition that tiles the field."""

    width: float
    height: float
    bs_x: float
    bs_y: float
    clusters: tuple[Rect, ...]
    q: int

    @classmethod
    def create(cls, width: float, height: float, q: int) -> "FieldLayout":
        cells = partition_field(width, height, q)
        return cls(
            width=width,
            height=height,
            bs_x=width / 2.0,
            bs_y=height / 2.0,
            clusters=tuple(cells),
            q=q,
        )

    @property
    def bounds(self) -> Rect:
        return Rect(0.0, 0.0, self.width, self.height)

    def cluster_of(self, x: float, y: float) -> int:
        for i, cell in enumerate(self.clusters):
            if cell.contains(x, y):
                return i
        raise ValueError(f"point ({x}, {y}) outside the field")


def _grid_shape(q: int) -> tuple[int, int]:
    """Factor q into (rows, cols) with the grid shape nearest square,
    ties broken toward more columns."""
    best = None
    for rows in range(1, q + 1):
        if q % rows:
            continue
        cols = q // rows
        score = (max(rows, cols) / min(rows, cols), -cols)
        if best is None or score < best[0]:
            best = (score, rows, cols)
    return best[1], best[2]


def partition_field(width: float, height: float, q: int) -> list[Rect]:
    """Split the field into a rows x cols grid of q equal cells.

    The factor pair is chosen so the grid is as close to square as the
    divisors of q allow; a prime q degenerates to a 1 x q strip.
    """
    if q < 1:
        raise ValueError(f"cluster count q must be >= 1, got {q}")
    if width <= 0 or height <= 0:
        raise ValueError(f"field dimensions must be positive, got {width} x {height}")
    rows, cols = _grid_shape(q)
    xs = np.linspace(0.0, width, cols + 1)
    ys = np.linspace(0.0, height, rows + 1)
    cells = []
    for r in range(rows):
        for c in range(cols):
            cells.append(Rect(float(xs[c]), float(ys[r]), float(xs[c + 1]), float(ys[r + 1])))
    return cells


def place_nodes(
    layout: FieldLayout,
    n: int,
    het: HeterogeneityConfig,
    rng: np.random.Generator,
) -> list[NodeState]:
    """Scatter n nodes uniformly over the field.

    Exactly round(m*n) of them, drawn uniformly without replacement, are
    advanced nodes with e_init = e0*(1+a); the rest start at e0. Every node
    is assigned to the static cluster containing its position.
    """
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    xs = rng.uniform(0.0, layout.width, n).tolist()
    ys = rng.uniform(0.0, layout.height, n).tolist()
    n_advanced = round(het.m * n)
    advanced_ids = set(rng.choice(n, size=n_advanced, replace=False).tolist())
    nodes = []
    for i in range(n):
        adv = i in advanced_ids
        e_init = het.e0 * (1.0 + het.a) if adv else het.e0
        nodes.append(
            NodeState(
                id=i,
                x=xs[i],
                y=ys[i],
                advanced=adv,
                e_init=e_init,
                e_residual=e_init,
                cluster_id=layout.cluster_of(xs[i], ys[i]),
            )
        )
    return nodes


def total_initial_energy(nodes: list[NodeState]) -> float:
    """Sum of initial energies over the whole population."""
    if not nodes:
        raise ValueError("node list is empty")
    return math.fsum(node.e_init for node in nodes)
