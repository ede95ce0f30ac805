"""Constructors for the standard surface-ribbon diagrams.

All builders return validated diagrams with boundary orientations
already fixed.  Conventions: a trivalent foot on a base band has
counterclockwise ports (1 = base-left, 2 = base-right, 3 = band); a kink
(full twist) is a self-crossing whose loop edge runs uo -> oi; bands
enter crossings at the "in" ports along their travel direction.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .diagram import DiagramError, RibbonDiagram, complete_side_dirs, validate


def _finish(d: RibbonDiagram, seeds=None) -> RibbonDiagram:
    complete_side_dirs(d, seeds)
    validate(d)
    return d


def disk() -> RibbonDiagram:
    d = RibbonDiagram()
    d.disks.append("d0")
    return _finish(d)


def annulus() -> RibbonDiagram:
    d = RibbonDiagram()
    d.edges["e0"] = None
    return _finish(d)


class _Chain:
    """A band under construction; nodes are appended left to right."""

    def __init__(self, d: RibbonDiagram, start: Optional[tuple] = None):
        self.d = d
        self.start = start
        self.pending = start

    def through(self, entry: tuple, exit_: tuple):
        if self.pending is None:
            self.start = entry
        else:
            eid = self.d.fresh_id("e")
            self.d.edges[eid] = (self.pending, entry)
        self.pending = exit_

    def end(self, attachment: tuple):
        eid = self.d.fresh_id("e")
        self.d.edges[eid] = (self.pending, attachment)

    def close(self):
        if self.start is None:
            raise DiagramError("empty chain")
        self.end(self.start)


def _add_kink(d: RibbonDiagram, chain: _Chain, flag: int):
    cid = d.fresh_id("k")
    d.crossings[cid] = flag
    chain.through((cid, "ui"), (cid, "uo"))
    lid = d.fresh_id("e")
    d.edges[lid] = ((cid, "uo"), (cid, "oi"))  # the little loop returns over
    chain.pending = (cid, "oo")


def looped_band(m: int, flag: int = 0) -> RibbonDiagram:
    """Closed band with m full twists (kinks); an annulus as a surface."""
    if m < 0:
        raise DiagramError("twist count must be >= 0")
    if m == 0:
        return annulus()
    d = RibbonDiagram()
    chain = _Chain(d)
    for _ in range(m):
        _add_kink(d, chain, flag)
    chain.close()
    return _finish(d)


def _feet_row(d: RibbonDiagram, count: int):
    """Feet f1..f(count-2) along a base path; the two end feet smooth away.

    Returns attach(idx) giving the (node, port) where the band of foot
    idx hooks in, for idx 0..count-1.
    """
    names = {}
    for idx in range(count):
        if idx in (0, count - 1):
            continue
        names[idx] = "f%d" % idx
        d.vertices[names[idx]] = True
    interior = sorted(names)
    for a, b in zip(interior, interior[1:]):
        eid = d.fresh_id("e")
        d.edges[eid] = ((names[a], "2"), (names[b], "1"))

    def attach(idx):
        if idx == 0:
            return (names[interior[0]], "1")
        if idx == count - 1:
            return (names[interior[-1]], "2")
        return (names[idx], "3")

    return interior, attach


def trivial_band_closure(m: int, n: int) -> RibbonDiagram:
    """Closure of m trivial bands and n crossed band pairs on a disk.

    Surface: genus n, m+1 boundary circles, chi = 1 - m - 2n; the
    fundamental heap is free of rank m+n+1.
    """
    if m < 0 or n < 0:
        raise DiagramError("band counts must be nonnegative")
    if m == 0 and n == 0:
        return disk()
    feet_specs: List[tuple] = []
    for i in range(m):
        feet_specs += [("arch", i), ("arch", i)]
    for j in range(n):
        feet_specs += [("ca", j), ("cb", j), ("ca", j), ("cb", j)]
    k = len(feet_specs)
    d = RibbonDiagram()
    interior, attach = _feet_row(d, k)
    if not interior:  # single arch: everything smooths to a free loop
        d.edges["e0"] = None
        return _finish(d)
    pos = {}
    for idx, spec in enumerate(feet_specs):
        pos.setdefault(spec, []).append(idx)
    for i in range(m):
        a, b = pos[("arch", i)]
        eid = d.fresh_id("e")
        d.edges[eid] = (attach(a), attach(b))
    for j in range(n):
        a0, a1 = pos[("ca", j)]
        b0, b1 = pos[("cb", j)]
        cid = d.fresh_id("c")
        d.crossings[cid] = 0
        chain = _Chain(d, attach(a0))
        chain.through((cid, "oi"), (cid, "oo"))
        chain.end(attach(a1))
        chain = _Chain(d, attach(b0))
        chain.through((cid, "ui"), (cid, "uo"))
        chain.end(attach(b1))
    return _finish(d)


def punctured_disk(loop_counts: Sequence[int], k: int) -> RibbonDiagram:
    """Disk with looped bands (m_i kinks each) plus k trivial bands.

    Fundamental heap: free of rank k+1 times the product of Z_{m_i}.
    """
    loop_counts = list(loop_counts)
    if any(m < 1 for m in loop_counts):
        raise DiagramError("loop counts must be >= 1")
    if k < 0:
        raise DiagramError("trivial band count must be >= 0")
    r = len(loop_counts)
    if r + k == 0:
        return disk()
    if r + k == 1:
        return looped_band(loop_counts[0] if r else 0)
    d = RibbonDiagram()
    interior, attach = _feet_row(d, 2 * (r + k))
    for i in range(r + k):
        a, b = 2 * i, 2 * i + 1
        chain = _Chain(d, attach(a))
        for _ in range(loop_counts[i] if i < r else 0):
            _add_kink(d, chain, 0)
        chain.end(attach(b))
    return _finish(d)


def torus_t1(k: int) -> RibbonDiagram:
    """Punctured torus: two interleaved handles braided 2k+1 times."""
    if k < 0:
        raise DiagramError("braiding parameter must be >= 0")
    d = RibbonDiagram()
    f1 = "f1"  # foot of the second handle end (b)
    f2 = "f2"  # foot of the first handle's far end (a')
    d.vertices[f1] = True
    d.vertices[f2] = True
    d.edges["base"] = ((f1, "2"), (f2, "1"))
    pa = (f1, "1")  # strand A, smoothed first foot
    pb = (f1, "3")  # strand B
    for _ in range(2 * k + 1):
        cid = d.fresh_id("c")
        d.crossings[cid] = 0
        e1 = d.fresh_id("e")
        d.edges[e1] = (pa, (cid, "oi"))  # position-1 strand crosses over
        e2 = d.fresh_id("e")
        d.edges[e2] = (pb, (cid, "ui"))
        pa, pb = (cid, "uo"), (cid, "oo")  # positions swap
    e1 = d.fresh_id("e")
    d.edges[e1] = (pb, (f2, "3"))  # strand A ends at its interleaved foot
    e2 = d.fresh_id("e")
    d.edges[e2] = (pa, (f2, "2"))  # strand B smooths into the base end
    return _finish(d)


def three_annuli_chain() -> RibbonDiagram:
    """A middle annulus linked by two mutually unlinked annuli.

    Component order: middle, first ring, second ring.  Both boundary
    circles of the middle band are co-oriented with the band at the
    crossing under the first ring; the worked invariant values are
    computed with that orientation.
    """
    d = RibbonDiagram()
    for cid in ("k1", "k2", "k3", "k4"):
        d.crossings[cid] = 0
    # middle band: under k1, over k2, under k3, over k4
    d.edges["m0"] = (("k1", "uo"), ("k2", "oi"))
    d.edges["m1"] = (("k2", "oo"), ("k3", "ui"))
    d.edges["m2"] = (("k3", "uo"), ("k4", "oi"))
    d.edges["m3"] = (("k4", "oo"), ("k1", "ui"))
    # ring A: over k1, under k2
    d.edges["r0"] = (("k1", "oo"), ("k2", "ui"))
    d.edges["r1"] = (("k2", "uo"), ("k1", "oi"))
    # ring B: over k3, under k4
    d.edges["s0"] = (("k3", "oo"), ("k4", "ui"))
    d.edges["s1"] = (("k4", "uo"), ("k3", "oi"))
    seeds = {("m0", 0): 1, ("m0", 1): 1}
    return _finish(d, seeds)


def hopf_annuli() -> RibbonDiagram:
    """Two annuli linked once (each band over the other exactly once)."""
    d = RibbonDiagram()
    d.crossings["c0"] = 0  # A over B
    d.crossings["c1"] = 0  # B over A
    d.edges["a0"] = (("c0", "oo"), ("c1", "ui"))
    d.edges["a1"] = (("c1", "uo"), ("c0", "oi"))
    d.edges["b0"] = (("c1", "oo"), ("c0", "ui"))
    d.edges["b1"] = (("c0", "uo"), ("c1", "oi"))
    return _finish(d)


def disjoint_union(d1: RibbonDiagram, d2: RibbonDiagram) -> RibbonDiagram:
    out = RibbonDiagram()

    def pull(d, tag):
        ren = {}
        for vid in d.vertices:
            ren[vid] = "%s.%s" % (tag, vid)
            out.vertices[ren[vid]] = True
        for cid, flag in d.crossings.items():
            ren[cid] = "%s.%s" % (tag, cid)
            out.crossings[ren[cid]] = flag
        for eid, ends in d.edges.items():
            name = "%s.%s" % (tag, eid)
            if ends is None:
                out.edges[name] = None
            else:
                (n0, p0), (n1, p1) = ends
                out.edges[name] = ((ren[n0], p0), (ren[n1], p1))
            for s in (0, 1):
                if (eid, s) in d.side_dirs:
                    out.side_dirs[(name, s)] = d.side_dirs[(eid, s)]
        for did in d.disks:
            out.disks.append("%s.%s" % (tag, did))

    pull(d1, "u")
    pull(d2, "v")
    validate(out)
    return out


def _edge_dirs(d: RibbonDiagram, eid: str):
    return d.side_dirs.get((eid, 0), 1), d.side_dirs.get((eid, 1), -1)


def _insert_one_foot(d: RibbonDiagram, eid: str, side: int = 0):
    """Split edge eid once with a trivalent foot on the chosen side.

    Returns (vertex, left_edge, right_edge); the band port is "3".
    side selects which boundary side of the band the foot interrupts.
    """
    ends = d.edges[eid]
    v = d.fresh_id("t")
    d.vertices[v] = True
    d0, d1 = _edge_dirs(d, eid)
    del d.edges[eid]
    d.side_dirs.pop((eid, 0), None)
    d.side_dirs.pop((eid, 1), None)
    pa, pb = ("1", "2") if side == 0 else ("2", "1")
    if ends is None:
        outer = d.fresh_id("e")
        d.edges[outer] = ((v, pb), (v, pa))
        d.side_dirs[(outer, 0)] = d0
        d.side_dirs[(outer, 1)] = d1
        return v, outer, outer
    (n0, p0), (n1, p1) = ends
    left = d.fresh_id("e")
    d.edges[left] = ((n0, p0), (v, pa))
    right = d.fresh_id("e")
    d.edges[right] = ((v, pb), (n1, p1))
    for child in (left, right):
        d.side_dirs[(child, 0)] = d0
        d.side_dirs[(child, 1)] = d1
    return v, left, right


def _insert_two_feet(d: RibbonDiagram, eid: str):
    """Split edge eid at two points; bands of both feet sit on one side.

    Returns (v1, v2, mid_edge).
    """
    v1, _left, right = _insert_one_foot(d, eid)
    v2, mid, _right2 = _insert_one_foot(d, right)
    return v1, v2, mid


def _complete_with_fallback(out: RibbonDiagram) -> RibbonDiagram:
    """Seeded orientation completion; constructions that merge boundary
    circles may leave conflicting old bits, in which case orientations
    are reassigned from scratch."""
    try:
        complete_side_dirs(out, dict(out.side_dirs))
    except DiagramError:
        out.side_dirs = {}
        complete_side_dirs(out)
    validate(out)
    return out


def _band_site(site):
    """Normalize a band attachment site to (edge_id, side)."""
    if isinstance(site, tuple):
        return site
    return (site, 0)


def add_twisted_band(d: RibbonDiagram, site1, site2, sign: int = 0) -> RibbonDiagram:
    """Attach a band with one full twist between two boundary sites of
    one surface component (sites are edge ids or (edge, side) pairs).

    The twist is realized by the connecting band passing once over the
    target band next to its second foot, which pins the new arcs to the
    old ones.  Preserves the fundamental heap; the boundary circle count
    changes by one (up when both sites lie on one boundary circle, down
    otherwise).
    """
    edge1, side1 = _band_site(site1)
    edge2, side2 = _band_site(site2)
    out = d.copy()
    if edge1 not in out.edges or edge2 not in out.edges:
        raise DiagramError("unknown edge site")
    if edge1 == edge2:
        v1, _l, right = _insert_one_foot(out, edge1, side1)
        v2, _m, _r = _insert_one_foot(out, right, side2)
    else:
        v1, _a, _b = _insert_one_foot(out, edge1, side1)
        v2, _c, _e = _insert_one_foot(out, edge2, side2)
    cid = out.fresh_id("k")
    out.crossings[cid] = 1 if sign else 0
    # the band segment entering v2's first base port dips under the bridge
    pm = out.port_map()
    base_port = "1" if side2 == 0 else "2"
    seg, k = pm[(v2, base_port)]
    ends = out.edges.pop(seg)
    dirs = (out.side_dirs.pop((seg, 0), None), out.side_dirs.pop((seg, 1), None))
    far = ends[1 - k]
    if k == 1:
        ea = _link_with_dirs(out, far, (cid, "ui"), dirs)
    else:
        ea = _link_with_dirs(out, (cid, "ui"), far, dirs)
    _link_with_dirs(out, (cid, "uo"), (v2, base_port), dirs)
    b1 = out.fresh_id("e")
    out.edges[b1] = ((v1, "3"), (cid, "oi"))
    b2 = out.fresh_id("e")
    out.edges[b2] = ((cid, "oo"), (v2, "3"))
    return _complete_with_fallback(out)


def _link_with_dirs(d: RibbonDiagram, end_a, end_b, dirs):
    eid = d.fresh_id("e")
    d.edges[eid] = (end_a, end_b)
    for s in (0, 1):
        if dirs[s] is not None:
            d.side_dirs[(eid, s)] = dirs[s]
    return eid


def boundary_connected_sum(
    d1: RibbonDiagram, edge1: str, d2: RibbonDiagram, edge2: str
) -> RibbonDiagram:
    """Join two diagrams by a plain band between two edge sites.

    Part orientations are kept; when the two glued circles run
    incompatibly through the band, every circle of the second part is
    reversed instead (checked by callers comparing weights).
    """
    for flip in (False, True):
        base2 = d2.copy()
        if flip:
            base2.side_dirs = {k: -v for k, v in base2.side_dirs.items()}
        out = disjoint_union(d1, base2)
        v1, _l1, _r1 = _insert_one_foot(out, "u.%s" % edge1)
        v2, _l2, _r2 = _insert_one_foot(out, "v.%s" % edge2)
        bid = out.fresh_id("e")
        out.edges[bid] = ((v1, "3"), (v2, "3"))
        try:
            complete_side_dirs(out, dict(out.side_dirs))
        except DiagramError:
            if flip:
                raise
            continue
        validate(out)
        return out
    raise DiagramError("unreachable")


def stabilize(d: RibbonDiagram, edge: str) -> RibbonDiagram:
    """Stabilize at a band: a long ribbon wrapping the band (its four
    cut relations equate the band's two sides) plus a short trivial
    ribbon carrying a fresh free generator."""
    out = d.copy()
    if edge not in out.edges:
        raise DiagramError("unknown edge site")
    v1, v2, mid = _insert_two_feet(out, edge)
    c1 = out.fresh_id("c")
    out.crossings[c1] = 0  # bridge over band
    c2 = out.fresh_id("c")
    out.crossings[c2] = 1  # band over bridge
    m0, m1 = out.edges[mid]
    del out.edges[mid]
    out.side_dirs.pop((mid, 0), None)
    out.side_dirs.pop((mid, 1), None)
    e1 = out.fresh_id("e")
    out.edges[e1] = (m0, (c1, "ui"))
    e2 = out.fresh_id("e")
    out.edges[e2] = ((c1, "uo"), (c2, "oi"))
    e3 = out.fresh_id("e")
    out.edges[e3] = ((c2, "oo"), m1)
    b1 = out.fresh_id("e")
    out.edges[b1] = ((v1, "3"), (c1, "oi"))
    b2 = out.fresh_id("e")
    out.edges[b2] = ((c1, "oo"), (c2, "ui"))
    b3 = out.fresh_id("e")
    out.edges[b3] = ((c2, "uo"), (v2, "3"))
    # the short ribbon: a plain arch on the segment right of the wrap
    w1, _wl, wr = _insert_one_foot(out, e3)
    w2, _w2l, _w2r = _insert_one_foot(out, wr)
    arch = out.fresh_id("e")
    out.edges[arch] = ((w1, "3"), (w2, "3"))
    return _complete_with_fallback(out)


def stabilize_all_crossings(d: RibbonDiagram) -> RibbonDiagram:
    """Stabilize every strand segment adjacent to every crossing."""
    out = d.copy()
    for cid in list(d.crossings):
        seen = set()
        for port in ("ui", "oi", "oo"):
            pm = out.port_map()
            eid = pm[(cid, port)][0]
            if eid in seen:
                continue
            seen.add(eid)
            out = stabilize(out, eid)
    return out


def realize_group(
    generators: Sequence[str], relators: Sequence[Sequence[int]]
) -> RibbonDiagram:
    """A surface ribbon whose fundamental heap is free of rank
    (#generators + #relators + 1) times the presented group.

    Relators are words over signed 1-based generator indices.  Each
    generator gets an annular band; each relator gets a ring threading
    the bands per its word (one under-passage per letter, sign by the
    crossing flag); each ring is tied to the band of its first letter by
    a plain band, and one spare disk completes the free part.
    """
    n = len(generators)
    words = [list(w) for w in relators if len(w) > 0]
    m = len(words)
    d = RibbonDiagram()
    passes_per_gen: List[list] = [[] for _ in range(n)]
    ring_cross = []
    for j, word in enumerate(words):
        crosses = []
        for t, letter in enumerate(word):
            g = abs(letter) - 1
            if not (0 <= g < n):
                raise DiagramError("relator letter out of range")
            cid = "c%d_%d" % (j, t)
            d.crossings[cid] = 0 if letter > 0 else 1
            passes_per_gen[g].append(cid)
            crosses.append(cid)
        ring_cross.append(crosses)
    for g in range(n):
        crosses = passes_per_gen[g]
        if not crosses:
            d.edges["g%d" % g] = None
            continue
        for idx, cid in enumerate(crosses):
            nxt = crosses[(idx + 1) % len(crosses)]
            eid = d.fresh_id("e")
            d.edges[eid] = ((cid, "oo"), (nxt, "oi"))
    for crosses in ring_cross:
        for idx, cid in enumerate(crosses):
            nxt = crosses[(idx + 1) % len(crosses)]
            eid = d.fresh_id("e")
            d.edges[eid] = ((cid, "uo"), (nxt, "ui"))
    complete_side_dirs(d)
    for j, word in enumerate(words):
        pm = d.port_map()
        ring_edge = pm[("c%d_0" % j, "uo")][0]
        band_edge = pm[("c%d_0" % j, "oo")][0]
        v1, _a, _b = _insert_one_foot(d, ring_edge)
        v2, _c, _e = _insert_one_foot(d, band_edge)
        bid = d.fresh_id("e")
        d.edges[bid] = ((v1, "3"), (v2, "3"))
        complete_side_dirs(d, dict(d.side_dirs))
    d.disks.append("base")
    complete_side_dirs(d, dict(d.side_dirs))
    validate(d)
    return d


def builder_from_spec(spec: str) -> RibbonDiagram:
    """Builder specs used by the CLI: disk, annulus, bands:m,n,
    loops:m1,..;k, torus:k, rings3, hopf."""
    if spec == "disk":
        return disk()
    if spec == "annulus":
        return annulus()
    if spec == "rings3":
        return three_annuli_chain()
    if spec == "hopf":
        return hopf_annuli()
    if spec.startswith("bands:"):
        m, n = (int(t) for t in spec.split(":")[1].split(","))
        return trivial_band_closure(m, n)
    if spec.startswith("loops:"):
        body = spec.split(":", 1)[1]
        if ";" in body:
            ms, ks = body.split(";")
            return punctured_disk([int(t) for t in ms.split(",") if t], int(ks))
        return punctured_disk([int(t) for t in body.split(",") if t], 0)
    if spec.startswith("torus:"):
        return torus_t1(int(spec.split(":")[1]))
    raise DiagramError("unknown builder spec %r" % spec)
