"""Maximal unit sets via clique search on the unit-difference graph.

Vertices are the units of a ring; two are adjacent when their difference
is again a unit.  Cliques of this graph are exactly the admissible sets
for building mutually unbiased families, so the maximum clique size is
the best family size this ring can certify.

The exact solver is a deterministic branch-and-bound: vertices are
explored in ascending index order with a greedy-coloring upper bound,
and the incumbent is only replaced by strictly larger cliques, which
makes the result the lexicographically smallest maximum clique.  A
subset-DP brute force (capped at 20 vertices) serves as the independent
test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NodeLimitExceeded
from .ring import Ring

DEFAULT_NODE_LIMIT = 10_000_000


@dataclass(frozen=True)
class DifferenceGraph:
    """Symmetric unit-difference graph on the units of a ring."""

    vertices: tuple
    adjacency: tuple[tuple[bool, ...], ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def edge(self, i: int, j: int) -> bool:
        return self.adjacency[i][j]

    def neighbor_masks(self) -> list[int]:
        masks = []
        for row in self.adjacency:
            m = 0
            for j, bit in enumerate(row):
                if bit:
                    m |= 1 << j
            masks.append(m)
        return masks


def difference_graph(ring: Ring) -> DifferenceGraph:
    units = ring.units()
    n = len(units)
    adjacency = tuple(
        tuple(i != j and ring.is_unit(ring.sub(units[i], units[j])) for j in range(n))
        for i in range(n)
    )
    return DifferenceGraph(vertices=tuple(units), adjacency=adjacency)


def _color_bound(cand: int, nbr: list[int]) -> int:
    """Greedy coloring of the candidate subgraph; class count bounds the clique."""
    classes: list[int] = []
    m = cand
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        for k, cls in enumerate(classes):
            if not cls & nbr[v]:
                classes[k] = cls | (1 << v)
                break
        else:
            classes.append(1 << v)
    return len(classes)


def max_clique(graph: DifferenceGraph, node_limit: int = DEFAULT_NODE_LIMIT) -> list:
    """Lexicographically smallest maximum clique, as ring elements.

    Raises NodeLimitExceeded (carrying the best clique found) when the
    branch count passes node_limit.
    """
    n = graph.order
    if n == 0:
        return []
    nbr = graph.neighbor_masks()
    best: list[int] = []
    nodes = 0

    def expand(current: list[int], cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_limit:
            raise NodeLimitExceeded(
                f"exceeded {node_limit} branch nodes", [graph.vertices[i] for i in best]
            )
        if len(current) > len(best):
            best = current.copy()
        if not cand:
            return
        if len(current) + bin(cand).count("1") <= len(best):
            return
        if len(current) + _color_bound(cand, nbr) <= len(best):
            return
        m = cand
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            # everything still in m is above v, so sequences stay ascending
            if len(current) + 1 + bin(m).count("1") <= len(best):
                return
            current.append(v)
            expand(current, m & nbr[v])
            current.pop()

    expand([], (1 << n) - 1)
    return [graph.vertices[i] for i in best]


def greedy_set(graph: DifferenceGraph) -> list:
    """Maximal (not necessarily maximum) clique, lowest index first."""
    chosen: list[int] = []
    for v in range(graph.order):
        if all(graph.adjacency[v][u] for u in chosen):
            chosen.append(v)
    return [graph.vertices[i] for i in chosen]


def brute_force_max_clique(graph: DifferenceGraph) -> list:
    """Independent oracle: subset DP over all vertex masks.  |V| <= 20."""
    n = graph.order
    if n > 20:
        raise ValueError(f"brute force capped at 20 vertices, got {n}")
    if n == 0:
        return []
    nbr = graph.neighbor_masks()
    is_clique = bytearray(1 << n)
    is_clique[0] = 1
    best: tuple[int, tuple[int, ...]] = (0, ())
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        ok = is_clique[rest] and (rest & nbr[v]) == rest
        is_clique[mask] = 1 if ok else 0
        if ok:
            size = bin(mask).count("1")
            if size > best[0]:
                members = tuple(i for i in range(n) if mask >> i & 1)
                best = (size, members)
            elif size == best[0]:
                members = tuple(i for i in range(n) if mask >> i & 1)
                if members < best[1]:
                    best = (size, members)
    return [graph.vertices[i] for i in best[1]]
