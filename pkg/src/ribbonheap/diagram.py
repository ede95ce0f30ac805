"""Combinatorial surface-ribbon diagrams.

A diagram is a fattened trivalent graph with band crossings:

* trivalent vertices with ports "1","2","3" in counterclockwise order,
* crossings with ports "oi","oo" (over strand) and "ui","uo" (under
  strand) plus a side_order flag selecting which over-boundary arc is
  read first in the crossing relation,
* edges joining two ports, or free loops (closed bands with no nodes),
* isolated disks.

Boundary curves are walked combinatorially; no planar embedding is
stored, crossings alone carry the spatial information.  Each boundary
curve additionally carries an orientation, stored as one direction bit
per edge side (`side_dirs`); builders fix these and rewrites preserve
them, which is what makes the weight bookkeeping of the invariant stable
under moves.

Boundary side conventions (all checks downstream calibrate to these):
* edge between ports P and Q: side s at P is side 1-s at Q,
* vertex with ccw ports (p1,p2,p3): side 0 of p_i joins side 1 of p_{i+1},
* crossing: sides pass straight through both strands; the under-strand
  sides are cut, producing the arcs and the crossing relations
  out = in * u^-1 * v with (u,v) the over sides ordered by side_order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


class DiagramError(ValueError):
    pass


class SrdParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__("line %d: %s" % (lineno, message))


VERTEX_PORTS = ("1", "2", "3")
CROSSING_PORTS = ("oi", "oo", "ui", "uo")


@dataclass
class RibbonDiagram:
    vertices: Dict[str, bool] = field(default_factory=dict)  # id -> True
    crossings: Dict[str, int] = field(default_factory=dict)  # id -> side_order
    edges: Dict[str, Optional[tuple]] = field(default_factory=dict)
    # edge id -> ((node,port),(node,port)) or None for a free loop
    disks: List[str] = field(default_factory=list)
    side_dirs: Dict[tuple, int] = field(default_factory=dict)
    # (edge_id, side) -> +1 flow end0->end1, -1 reverse

    def copy(self) -> "RibbonDiagram":
        return RibbonDiagram(
            dict(self.vertices),
            dict(self.crossings),
            dict(self.edges),
            list(self.disks),
            dict(self.side_dirs),
        )

    def port_map(self) -> Dict[tuple, tuple]:
        """(node,port) -> (edge_id, end_index); raises on duplicates."""
        pm = {}
        for eid, ends in self.edges.items():
            if ends is None:
                continue
            for k, (node, port) in enumerate(ends):
                if (node, port) in pm:
                    raise DiagramError(
                        "port %s.%s used by edges %s and %s"
                        % (node, port, pm[(node, port)][0], eid)
                    )
                pm[(node, port)] = (eid, k)
        return pm

    def fresh_id(self, prefix: str) -> str:
        i = 0
        while True:
            cand = "%s%d" % (prefix, i)
            if (
                cand not in self.vertices
                and cand not in self.crossings
                and cand not in self.edges
                and cand not in self.disks
            ):
                return cand
            i += 1


@dataclass(frozen=True)
class ComponentSummary:
    euler: int
    boundary_count: int
    genus: int


@dataclass(frozen=True)
class TopologySummary:
    components: Tuple[ComponentSummary, ...]

    @property
    def nu(self) -> int:
        return len(self.components)

    def as_tuples(self):
        return tuple((c.euler, c.boundary_count, c.genus) for c in self.components)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _vertex_steps(diagram):
    """Node-step terminal pairing at vertices (no cuts)."""
    steps = {}
    for vid in diagram.vertices:
        for i in range(3):
            a = (vid, VERTEX_PORTS[i], 0)
            b = (vid, VERTEX_PORTS[(i + 1) % 3], 1)
            steps[a] = b
            steps[b] = a
    return steps


def _crossing_steps(diagram):
    """Node-step pairing at crossings; under pairs are marked as cuts."""
    steps, cuts = {}, set()
    for cid in diagram.crossings:
        for s in (0, 1):
            a, b = (cid, "oi", s), (cid, "oo", 1 - s)
            steps[a] = b
            steps[b] = a
            a, b = (cid, "ui", s), (cid, "uo", 1 - s)
            steps[a] = b
            steps[b] = a
            cuts.add(frozenset((a, b)))
    return steps, cuts


def _edge_steps(diagram):
    steps = {}
    for eid, ends in diagram.edges.items():
        if ends is None:
            continue
        (n0, p0), (n1, p1) = ends
        for s in (0, 1):
            a, b = (n0, p0, s), (n1, p1, 1 - s)
            steps[a] = b
            steps[b] = a
    return steps


@dataclass(frozen=True)
class CrossingEvents:
    """Per-crossing arc data: two under-passage events and the over pair."""

    crossing: str
    in_p: int
    out_p: int
    in_q: int
    out_q: int
    u_arc: int
    v_arc: int
    over_component: int
    under_component: int


@dataclass
class BoundaryStructure:
    """Arcs, boundary circles and under-passage events of a diagram.

    Arcs are indexed 0..n-1 in a canonical order; circles are lists of
    arc indices in traversal order (following the stored orientation),
    grouped per surface component.
    """

    arc_count: int
    arc_names: List[str]
    circles: List[tuple]  # tuple of arc indices, traversal order
    circle_component: List[int]
    component_count: int
    events: List[CrossingEvents]
    circle_events: List[list]  # per circle: [(event_index, side, aligned)]
    arc_of_terminal: Dict[tuple, int]
    edge_component: Dict[str, int]

    def component_circles(self, comp: int) -> List[int]:
        return [i for i, c in enumerate(self.circle_component) if c == comp]

    def events_on_circle(self, ci: int):
        return self.circle_events[ci]


def _component_structure(diagram):
    """Spine components and per-component Euler characteristic data.

    Returns (component index per edge/vertex/disk, ordered component keys,
    per-component euler characteristic).
    """
    uf = _UnionFind()
    items = []
    for eid in diagram.edges:
        uf.add(("e", eid))
        items.append(("e", eid))
    for vid in diagram.vertices:
        uf.add(("v", vid))
        items.append(("v", vid))
    for did in diagram.disks:
        uf.add(("d", did))
        items.append(("d", did))
    pm = diagram.port_map()
    for vid in diagram.vertices:
        for p in VERTEX_PORTS:
            if (vid, p) not in pm:
                raise DiagramError("vertex %s port %s is dangling" % (vid, p))
            uf.union(("v", vid), ("e", pm[(vid, p)][0]))
    for cid in diagram.crossings:
        for p in CROSSING_PORTS:
            if (cid, p) not in pm:
                raise DiagramError("crossing %s port %s is dangling" % (cid, p))
        # over and under strands may belong to different surface components
        uf.union(("e", pm[(cid, "oi")][0]), ("e", pm[(cid, "oo")][0]))
        uf.union(("e", pm[(cid, "ui")][0]), ("e", pm[(cid, "uo")][0]))

    # component order: first appearance among edges, then vertices, disks
    comp_of = {}
    order = []
    for item in items:
        root = uf.find(item)
        if root not in comp_of:
            comp_of[root] = len(order)
            order.append(root)
    item_comp = {item: comp_of[uf.find(item)] for item in items}

    # spine edge classes: merge diagram edges through crossings only
    ufe = _UnionFind()
    for eid in diagram.edges:
        ufe.add(eid)
    for cid in diagram.crossings:
        ufe.union(pm[(cid, "oi")][0], pm[(cid, "oo")][0])
        ufe.union(pm[(cid, "ui")][0], pm[(cid, "uo")][0])
    # a strand class is "closed" when no end of it lands on a vertex
    class_has_vertex_end = {}
    for eid, ends in diagram.edges.items():
        root = ufe.find(eid)
        class_has_vertex_end.setdefault(root, 0)
        if ends is None:
            continue
        for node, _port in ends:
            if node in diagram.vertices:
                class_has_vertex_end[root] += 1
    # Euler characteristic per component: V - #path classes (each path
    # class has exactly two vertex ends); closed strands contribute 0;
    # an isolated disk contributes 1.
    euler = [0] * len(order)
    for vid in diagram.vertices:
        euler[item_comp[("v", vid)]] += 1
    seen_class = set()
    for eid in diagram.edges:
        root = ufe.find(eid)
        if root in seen_class:
            continue
        seen_class.add(root)
        nends = class_has_vertex_end[root]
        if nends not in (0, 2):
            raise DiagramError("strand through %s has %d vertex ends" % (root, nends))
        if nends == 2:
            euler[item_comp[("e", eid)]] -= 1
    for did in diagram.disks:
        euler[item_comp[("d", did)]] += 1
    return item_comp, order, euler


def boundary(diagram: RibbonDiagram) -> BoundaryStructure:
    """Arc enumeration plus boundary-circle traversal with events."""
    pm = diagram.port_map()
    for vid in diagram.vertices:
        for p in VERTEX_PORTS:
            if (vid, p) not in pm:
                raise DiagramError("vertex %s port %s is dangling" % (vid, p))
    for cid in diagram.crossings:
        for p in CROSSING_PORTS:
            if (cid, p) not in pm:
                raise DiagramError("crossing %s port %s is dangling" % (cid, p))

    item_comp, _order, _euler = _component_structure(diagram)

    esteps = _edge_steps(diagram)
    nsteps = {}
    nsteps.update(_vertex_steps(diagram))
    csteps, cuts = _crossing_steps(diagram)
    nsteps.update(csteps)

    terminals = sorted(esteps.keys())
    # arcs: components under edge steps + node steps minus under cuts
    ufa = _UnionFind()
    for t in terminals:
        ufa.add(t)
    for t, t2 in esteps.items():
        ufa.union(t, t2)
    for t, t2 in nsteps.items():
        if frozenset((t, t2)) not in cuts:
            ufa.union(t, t2)
    arc_root_order = []
    seen = {}
    for t in terminals:
        r = ufa.find(t)
        if r not in seen:
            seen[r] = len(arc_root_order)
            arc_root_order.append(r)
    arc_of_terminal = {t: seen[ufa.find(t)] for t in terminals}
    n_arcs = len(arc_root_order)
    arc_names = ["a%d" % i for i in range(n_arcs)]

    def edge_of_terminal(t):
        return pm[(t[0], t[1])][0]

    def side_index(t):
        eid, k = pm[(t[0], t[1])]
        return t[2] if k == 0 else 1 - t[2]

    def flows_in(t):
        """True when the boundary flow enters the node at terminal t."""
        eid, k = pm[(t[0], t[1])]
        d = diagram.side_dirs.get((eid, side_index(t)))
        if d is None:
            raise DiagramError("edge %s side %d has no orientation" % (eid, side_index(t)))
        return d == 1 if k == 1 else d == -1

    # orientation consistency: each node-step pair must have one inflow
    for t, t2 in nsteps.items():
        if flows_in(t) == flows_in(t2):
            raise DiagramError(
                "inconsistent boundary orientation at %s / %s" % (t, t2)
            )

    # circles: walk following the stored orientation
    circles = []
    circle_of_arc = {}
    visited = set()
    for t0 in terminals:
        if t0 in visited:
            continue
        # start from a terminal where flow leaves the node
        t = t0 if not flows_in(t0) else nsteps[t0]
        seq = []
        start = t
        while True:
            visited.add(t)
            seq.append(arc_of_terminal[t])
            t2 = esteps[t]  # run along the edge side
            visited.add(t2)
            seq.append(arc_of_terminal[t2])
            t = nsteps[t2]  # through the node
            if t == start:
                break
        # compress consecutive duplicates into traversal order of arcs
        arcs_in_order = []
        for a in seq:
            if not arcs_in_order or arcs_in_order[-1] != a:
                arcs_in_order.append(a)
        if len(arcs_in_order) > 1 and arcs_in_order[0] == arcs_in_order[-1]:
            arcs_in_order.pop()
        circles.append(tuple(arcs_in_order))
    # synthetic arcs/circles for free loops and disks
    loop_like = []
    for eid, ends in sorted(diagram.edges.items()):
        if ends is None:
            for s in (0, 1):
                loop_like.append(("loop", eid, s, item_comp[("e", eid)]))
    for did in diagram.disks:
        loop_like.append(("disk", did, 0, item_comp[("d", did)]))
    for kind, ident, s, comp in loop_like:
        idx = len(arc_names)
        arc_names.append("a%d" % idx)
        circles.append((idx,))
        circle_of_arc[idx] = len(circles) - 1

    # order circles canonically: by minimal arc index
    order_idx = sorted(range(len(circles)), key=lambda i: min(circles[i]))
    circles = [circles[i] for i in order_idx]

    # circle components
    arc_edge_comp = {}
    for t in terminals:
        arc_edge_comp[arc_of_terminal[t]] = item_comp[("e", edge_of_terminal(t))]
    k = n_arcs
    for kind, ident, s, comp in loop_like:
        arc_edge_comp[k] = comp
        k += 1
    circle_component = [arc_edge_comp[c[0]] for c in circles]
    component_count = 1 + max(item_comp.values()) if item_comp else 0

    # events
    events = []
    circle_of = {}
    for ci, c in enumerate(circles):
        for a in c:
            circle_of[a] = ci
    edge_component = {
        eid: item_comp[("e", eid)] for eid in diagram.edges
    }
    for cid in sorted(diagram.crossings):
        flag = diagram.crossings[cid]
        m_arc = arc_of_terminal[(cid, "oi", 0)]
        m_arc2 = arc_of_terminal[(cid, "oo", 1)]
        if m_arc != m_arc2:
            raise DiagramError("over side of %s is inconsistently glued" % cid)
        n_arc = arc_of_terminal[(cid, "oi", 1)]
        u_arc, v_arc = (m_arc, n_arc) if flag == 0 else (n_arc, m_arc)
        in_p = arc_of_terminal[(cid, "ui", 0)]
        out_p = arc_of_terminal[(cid, "uo", 1)]
        in_q = arc_of_terminal[(cid, "ui", 1)]
        out_q = arc_of_terminal[(cid, "uo", 0)]
        over_comp = edge_component[pm[(cid, "oi")][0]]
        under_comp = edge_component[pm[(cid, "ui")][0]]
        events.append(
            CrossingEvents(
                cid, in_p, out_p, in_q, out_q, u_arc, v_arc, over_comp, under_comp
            )
        )

    circle_events = [[] for _ in circles]
    for ei, ev in enumerate(events):
        cid = ev.crossing
        for side, (tin, a_in) in (
            ("p", ((cid, "ui", 0), ev.in_p)),
            ("q", ((cid, "ui", 1), ev.in_q)),
        ):
            aligned = flows_in(tin)
            circle_events[circle_of[a_in]].append((ei, side, aligned))
    return BoundaryStructure(
        arc_count=len(arc_names),
        arc_names=arc_names,
        circles=circles,
        circle_component=circle_component,
        component_count=component_count,
        events=events,
        circle_events=circle_events,
        arc_of_terminal=arc_of_terminal,
        edge_component=edge_component,
    )


def validate(diagram: RibbonDiagram) -> TopologySummary:
    """Check structural consistency and compute (chi, b, g) per component."""
    if (
        not diagram.edges
        and not diagram.vertices
        and not diagram.crossings
        and not diagram.disks
    ):
        raise DiagramError("empty diagram")
    item_comp, order, euler = _component_structure(diagram)
    b = boundary(diagram)
    ncomp = len(order)
    bcounts = [0] * ncomp
    for ci in range(len(b.circles)):
        bcounts[b.circle_component[ci]] += 1
    comps = []
    for i in range(ncomp):
        chi = euler[i]
        bc = bcounts[i]
        if bc == 0:
            raise DiagramError("component %d has no boundary" % i)
        g2 = 2 - chi - bc
        if g2 < 0 or g2 % 2 != 0:
            raise DiagramError(
                "component %d has invalid genus (chi=%d, b=%d)" % (i, chi, bc)
            )
        comps.append(ComponentSummary(chi, bc, g2 // 2))
    return TopologySummary(tuple(comps))


def complete_side_dirs(diagram: RibbonDiagram, seeds: Optional[dict] = None):
    """Fill in boundary orientations, propagating from seeds.

    Seeds map (edge_id, side) -> +-1.  Unconstrained circles get a
    canonical direction (walk from their minimal terminal).
    """
    pm = diagram.port_map()
    for vid in diagram.vertices:
        for p in VERTEX_PORTS:
            if (vid, p) not in pm:
                raise DiagramError("vertex %s port %s is dangling" % (vid, p))
    for cid in diagram.crossings:
        for p in CROSSING_PORTS:
            if (cid, p) not in pm:
                raise DiagramError("crossing %s port %s is dangling" % (cid, p))
    esteps = _edge_steps(diagram)
    nsteps = {}
    nsteps.update(_vertex_steps(diagram))
    csteps, _cuts = _crossing_steps(diagram)
    nsteps.update(csteps)

    dirs = dict(seeds or {})

    def side_index(t):
        eid, k = pm[(t[0], t[1])]
        return t[2] if k == 0 else 1 - t[2]

    def edge_of(t):
        return pm[(t[0], t[1])][0]

    def set_outflow(t):
        """Record that flow leaves the node at terminal t, walk the circle."""
        while True:
            eid, k = pm[(t[0], t[1])]
            s = side_index(t)
            d = 1 if k == 0 else -1  # leaving end k means flowing away from it
            if (eid, s) in dirs:
                if dirs[(eid, s)] != d:
                    raise DiagramError("conflicting boundary orientations on %s" % eid)
                return
            dirs[(eid, s)] = d
            t2 = esteps[t]
            t = nsteps[t2]

    # propagate from seeds
    for (eid, s), d in list(dirs.items()):
        ends = diagram.edges.get(eid)
        if ends is None:
            continue
        (n0, p0), (n1, p1) = ends
        # terminal at which this side leaves its node, per the seed
        t = (n0, p0, s) if d == 1 else (n1, p1, 1 - s)
        del dirs[(eid, s)]
        set_outflow(t)

    for t0 in sorted(esteps.keys()):
        if (edge_of(t0), side_index(t0)) not in dirs:
            set_outflow(t0)
    for eid, ends in diagram.edges.items():
        if ends is None:
            dirs.setdefault((eid, 0), 1)
            dirs.setdefault((eid, 1), 1)
    diagram.side_dirs = dirs
    return diagram


# --- .srd text format ---------------------------------------------------


def srd_dumps(diagram: RibbonDiagram) -> str:
    lines = ["srd 1"]
    for vid in diagram.vertices:
        lines.append("vertex %s" % vid)
    for cid, flag in diagram.crossings.items():
        lines.append("crossing %s %d" % (cid, flag))
    for eid, ends in diagram.edges.items():
        if ends is None:
            lines.append("loop %s" % eid)
        else:
            (n0, p0), (n1, p1) = ends
            lines.append("edge %s %s.%s %s.%s" % (eid, n0, p0, n1, p1))
    for did in diagram.disks:
        lines.append("disk %s" % did)
    return "\n".join(lines) + "\n"


def srd_loads(text: str) -> RibbonDiagram:
    d = RibbonDiagram()
    used_ports = {}
    lines = text.splitlines()
    if not lines or lines[0].strip() != "srd 1":
        raise SrdParseError(1, "expected header 'srd 1'")
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "vertex":
            if len(toks) != 2:
                raise SrdParseError(lineno, "vertex takes one id")
            d.vertices[toks[1]] = True
        elif kind == "crossing":
            if len(toks) != 3 or toks[2] not in ("0", "1"):
                raise SrdParseError(lineno, "crossing takes an id and side_order 0|1")
            d.crossings[toks[1]] = int(toks[2])
        elif kind == "loop":
            if len(toks) != 2:
                raise SrdParseError(lineno, "loop takes one id")
            d.edges[toks[1]] = None
        elif kind == "disk":
            if len(toks) != 2:
                raise SrdParseError(lineno, "disk takes one id")
            d.disks.append(toks[1])
        elif kind == "edge":
            if len(toks) != 4:
                raise SrdParseError(lineno, "edge takes an id and two node.port refs")
            ends = []
            for ref in toks[2:4]:
                if "." not in ref:
                    raise SrdParseError(lineno, "bad port reference %r" % ref)
                node, port = ref.rsplit(".", 1)
                ends.append((node, port))
            for node, port in ends:
                if (node, port) in used_ports:
                    raise SrdParseError(
                        lineno,
                        "port %s.%s already used on line %d"
                        % (node, port, used_ports[(node, port)]),
                    )
                used_ports[(node, port)] = lineno
            d.edges[toks[1]] = (ends[0], ends[1])
        else:
            raise SrdParseError(lineno, "unknown record %r" % kind)
    # structural port checks with parser-grade errors
    for (node, port), lineno in used_ports.items():
        if node in d.vertices:
            if port not in VERTEX_PORTS:
                raise SrdParseError(lineno, "vertex port must be 1|2|3, got %r" % port)
        elif node in d.crossings:
            if port not in CROSSING_PORTS:
                raise SrdParseError(
                    lineno, "crossing port must be oi|oo|ui|uo, got %r" % port
                )
        else:
            raise SrdParseError(lineno, "unknown node %r" % node)
    complete_side_dirs(d)
    return d


def srd_load(path: str) -> RibbonDiagram:
    with open(path) as fh:
        return srd_loads(fh.read())


def srd_dump(diagram: RibbonDiagram, path: str):
    with open(path, "w") as fh:
        fh.write(srd_dumps(diagram))
