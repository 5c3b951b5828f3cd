"""
Proper Path Search
Vertex-weighted shortest paths and exhaustive path enumeration between two
vertex sets, with a set of vertices that may not appear inside a path.
"""

import heapq
from typing import Callable, Collection, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from src.core.types import VertexId

Neighbors = Mapping[VertexId, Sequence[VertexId]]
PathResult = Tuple[Tuple[VertexId, ...], float]


def shortest_path(
    neighbors: Neighbors,
    cost: Callable[[VertexId], float],
    sources: Collection[VertexId],
    targets: Collection[VertexId],
    blocked: Collection[VertexId] = (),
    allow_trivial: bool = False,
) -> Optional[PathResult]:
    """
    Cheapest path from a source to a target whose inner vertices avoid
    blocked, sources and targets.

    The length of a path is the sum of cost over all of its vertices,
    endpoints included. Ties go to the lexicographically smallest vertex
    sequence. A single vertex in both sets counts as a path only when
    allow_trivial is set.

    Returns:
        (path, length) or None when no such path exists
    """
    source_set = set(sources)
    target_set = set(targets)
    stop = set(blocked) | source_set | target_set

    heap: List[Tuple[float, Tuple[VertexId, ...]]] = []
    for s in sorted(source_set):
        heapq.heappush(heap, (cost(s), (s,)))

    settled: Set[VertexId] = set()
    while heap:
        length, path = heapq.heappop(heap)
        u = path[-1]
        if len(path) > 1 or allow_trivial:
            if u in target_set:
                return path, length
        if len(path) > 1 and u in stop:
            continue
        key = u if len(path) > 1 else ("<start>", u)
        if key in settled:
            continue
        settled.add(key)
        for w in neighbors[u]:
            if w in path:
                continue
            if w in target_set or w not in stop:
                if w not in settled or w in target_set:
                    heapq.heappush(heap, (length + cost(w), path + (w,)))
    return None


def has_path(
    neighbors: Neighbors,
    sources: Collection[VertexId],
    targets: Collection[VertexId],
    blocked: Collection[VertexId] = (),
) -> bool:
    """True when some non-trivial path of the same kind exists."""
    return shortest_path(neighbors, lambda _: 0.0, sources, targets, blocked) is not None


def enumerate_paths(
    neighbors: Neighbors,
    sources: Collection[VertexId],
    targets: Collection[VertexId],
    blocked: Collection[VertexId] = (),
) -> Iterator[Tuple[VertexId, ...]]:
    """Every simple non-trivial path of the same kind, depth first."""
    source_set = set(sources)
    target_set = set(targets)
    stop = set(blocked) | source_set | target_set

    def extend(path: List[VertexId], on_path: Set[VertexId]) -> Iterator[Tuple[VertexId, ...]]:
        u = path[-1]
        for w in neighbors[u]:
            if w in on_path:
                continue
            if w in target_set:
                yield tuple(path) + (w,)
            elif w not in stop:
                path.append(w)
                on_path.add(w)
                yield from extend(path, on_path)
                on_path.discard(w)
                path.pop()

    for s in sorted(source_set):
        yield from extend([s], {s})
