"""Heap colorings of ribbon diagrams.

A coloring assigns a heap element to every boundary arc so that each
under-passage satisfies out = T(in, u, v) with (u, v) the over-side arcs
in crossing order.  Enumeration is backtracking with constraint
propagation; all four positions of a crossing relation propagate (the
heap identities make each of in/out/u/v determined by the other three).
"""

from __future__ import annotations

from typing import Iterator, List, Optional

from .diagram import BoundaryStructure, RibbonDiagram, boundary
from .heaps import FiniteHeap


def _constraints(b: BoundaryStructure):
    cons = []
    for ev in b.events:
        cons.append((ev.in_p, ev.out_p, ev.u_arc, ev.v_arc))
        cons.append((ev.in_q, ev.out_q, ev.u_arc, ev.v_arc))
    return cons


def _variable_order(b: BoundaryStructure, cons):
    incidence = [0] * b.arc_count
    for c in cons:
        for a in set(c):
            incidence[a] += 1
    return sorted(range(b.arc_count), key=lambda a: (-incidence[a], a))


def _propagate(heap, cons, by_arc, assign, queue):
    """Fire constraints whose arcs became known; returns the trail of
    newly assigned arcs, or None on contradiction."""
    t = heap.t
    trail = []
    while queue:
        ci = queue.pop()
        a_in, a_out, u, v = cons[ci]
        vals = [assign[a_in], assign[a_out], assign[u], assign[v]]
        known = sum(1 for x in vals if x is not None)
        if known == 4:
            if t(vals[0], vals[2], vals[3]) != vals[1]:
                for a in trail:
                    assign[a] = None
                return None
            continue
        if known != 3:
            continue
        if vals[0] is None:
            target, value = a_in, t(vals[1], vals[3], vals[2])
        elif vals[1] is None:
            target, value = a_out, t(vals[0], vals[2], vals[3])
        elif vals[2] is None:
            target, value = u, t(vals[3], vals[1], vals[0])
        else:
            target, value = v, t(vals[2], vals[0], vals[1])
        if assign[target] is not None:
            if assign[target] != value:
                for a in trail:
                    assign[a] = None
                return None
            continue
        assign[target] = value
        trail.append(target)
        queue.extend(by_arc[target])
    return trail


def enumerate_colorings(
    d: RibbonDiagram, heap: FiniteHeap, limit: Optional[int] = None
) -> Iterator[List[int]]:
    """Yield colorings as arc-indexed lists, in deterministic order."""
    b = boundary(d)
    cons = _constraints(b)
    by_arc = [[] for _ in range(b.arc_count)]
    for ci, c in enumerate(cons):
        for a in set(c):
            by_arc[a].append(ci)
    order = _variable_order(b, cons)
    assign: List[Optional[int]] = [None] * b.arc_count
    size = heap.size
    yielded = 0

    def rec(pos):
        nonlocal yielded
        if limit is not None and yielded >= limit:
            return
        while pos < len(order) and assign[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            yield list(assign)
            yielded += 1
            return
        arc = order[pos]
        for value in range(size):
            assign[arc] = value
            trail = _propagate(heap, cons, by_arc, assign, list(by_arc[arc]))
            if trail is not None:
                yield from rec(pos + 1)
                for a in trail:
                    assign[a] = None
            assign[arc] = None
            if limit is not None and yielded >= limit:
                return

    yield from rec(0)


def count_colorings(d: RibbonDiagram, heap: FiniteHeap) -> int:
    """Number of colorings, streamed without storing them."""
    n = 0
    for _ in enumerate_colorings(d, heap):
        n += 1
    return n
