"""Spatial analyses over a node snapshot: grid-sampled coverage and the radio graph.

Both the sensing and the radio model use a closed disk: a point or neighbor at
exactly range distance counts as covered / connected.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import NetworkConfig, Role, SensorNode


@dataclass(frozen=True)
class CoverageResult:
    covered_fraction: float
    k_covered_fraction: float
    targets_covered: int = 0
    targets_total: int = 0


@dataclass(frozen=True)
class ConnectivityResult:
    component_count: int
    largest_component_size: int
    fraction_with_sink_path: float
    is_fully_connected: bool


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _alive_positions(nodes: list[SensorNode]) -> tuple[np.ndarray, np.ndarray]:
    xs = np.array([n.x for n in nodes if n.alive], dtype=np.float64)
    ys = np.array([n.y for n in nodes if n.alive], dtype=np.float64)
    return xs, ys


def area_coverage(nodes: list[SensorNode], config: NetworkConfig, k: int = 1) -> CoverageResult:
    """Coverage fractions over the grid_resolution^2 lattice of cell centers.

    A lattice point is j-covered when at least j alive nodes lie within
    sensing_range of it. Each sensing disk meets a lattice row in a contiguous
    column interval, so cover counts accumulate through per-row interval
    difference arrays instead of a full point-by-node distance matrix.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    res = config.grid_resolution
    total = res * res
    xs, ys = _alive_positions(nodes)
    m = xs.shape[0]
    if m == 0:
        return CoverageResult(0.0, 0.0)

    cx = (np.arange(res) + 0.5) * (config.width / res)
    cy = (np.arange(res) + 0.5) * (config.height / res)
    r2 = config.sensing_range * config.sensing_range

    dx = cx[None, :] - xs[:, None]                 # (m, res) row offsets
    s2 = r2 - dx * dx
    valid = s2 >= 0.0                              # rows the disk reaches
    half = np.sqrt(np.where(valid, s2, 0.0))
    lo = np.searchsorted(cy, (ys[:, None] - half)[valid], side="left")
    hi = np.searchsorted(cy, (ys[:, None] + half)[valid], side="right")
    rows = np.broadcast_to(np.arange(res), (m, res))[valid]

    diff = np.zeros((res, res + 1), dtype=np.int64)
    np.add.at(diff, (rows, lo), 1)
    np.add.at(diff, (rows, hi), -1)
    counts = np.cumsum(diff[:, :-1], axis=1)

    covered = int((counts >= 1).sum())
    k_covered = int((counts >= k).sum())
    return CoverageResult(covered / total, k_covered / total)


def target_coverage(
    nodes: list[SensorNode],
    targets: list[tuple[float, float]],
    sensing_range: float,
) -> tuple[int, bool]:
    """Count targets within sensing_range of some alive node.

    Returns (targets_covered, all_covered); an empty target list is vacuously
    all covered.
    """
    alive = [(n.x, n.y) for n in nodes if n.alive]
    r2 = sensing_range * sensing_range
    covered = 0
    for tx, ty in targets:
        if any((ax - tx) ** 2 + (ay - ty) ** 2 <= r2 for ax, ay in alive):
            covered += 1
    return covered, covered == len(targets)


def build_connectivity(nodes: list[SensorNode], config: NetworkConfig) -> ConnectivityResult:
    """Connected components of the radio graph over alive nodes.

    Nodes are adjacent when their Euclidean distance is <= radio_range.
    fraction_with_sink_path is the share of alive nodes whose component
    contains at least one alive sink (0 when nothing is alive), and the graph
    counts as fully connected when there is at most one component.
    """
    alive = [n for n in nodes if n.alive]
    m = len(alive)
    if m == 0:
        return ConnectivityResult(0, 0, 0.0, True)

    xs = np.array([n.x for n in alive], dtype=np.float64)
    ys = np.array([n.y for n in alive], dtype=np.float64)
    r2 = config.radio_range * config.radio_range
    d2 = (xs[:, None] - xs[None, :]) ** 2 + (ys[:, None] - ys[None, :]) ** 2
    edge_i, edge_j = np.nonzero(np.triu(d2 <= r2, k=1))

    dsu = DisjointSet(m)
    for a, b in zip(edge_i.tolist(), edge_j.tolist()):
        dsu.union(a, b)

    roots = [dsu.find(i) for i in range(m)]
    component_sizes = Counter(roots)
    sink_roots = {roots[i] for i, n in enumerate(alive) if n.role is Role.SINK}
    reachable = sum(size for root, size in component_sizes.items() if root in sink_roots)

    return ConnectivityResult(
        component_count=len(component_sizes),
        largest_component_size=max(component_sizes.values()),
        fraction_with_sink_path=reachable / m,
        is_fully_connected=len(component_sizes) <= 1,
    )
