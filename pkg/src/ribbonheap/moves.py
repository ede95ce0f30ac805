"""Local rewriting by the diagram moves: RII, RIII, CL, IH, YI, IY.

Each move is an explicit port-level template with a matcher and a
rewriter; backward directions are separate templates.  Rewrites keep
edge end-order wherever an edge survives, so boundary-orientation bits
transfer verbatim and colorings and cocycle invariants compare
bit-identically across moves.

Kinds: "RII+"/"RII-" (cancelling crossing pair), "CL+"/"CL-" (opposite
kink pair), "IH" (bar rotation between two vertices), "RIII"/"RIII-"
(triangle slide and its inverse), "YI+"/"YI-" (strand under a vertex:
one crossing on the stem vs two on the arms), "IY+"/"IY-" (the mirror
slide with the vertex legs passing under an overpassing band).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .diagram import RibbonDiagram, complete_side_dirs, validate


class MoveError(ValueError):
    pass


MOVE_KINDS = (
    "RII+",
    "RII-",
    "CL+",
    "CL-",
    "IH",
    "RIII",
    "RIII-",
    "YI+",
    "YI-",
    "IY+",
    "IY-",
)

_SHRINKERS = ("CL-", "IY-", "RII-", "YI-")

_PORT_INDEX = {"1": 0, "2": 1, "3": 2}
_PORTS = ("1", "2", "3")


@dataclass(frozen=True)
class MoveSite:
    kind: str
    payload: tuple

    def __lt__(self, other):
        return (self.kind, self.payload) < (other.kind, other.payload)


# --- surgery helpers -------------------------------------------------------


def _cut(d: RibbonDiagram, eid: str):
    ends = d.edges.pop(eid)
    dirs = (d.side_dirs.pop((eid, 0), None), d.side_dirs.pop((eid, 1), None))
    return ends, dirs


def _link(d: RibbonDiagram, end_a, end_b, dirs=None) -> str:
    eid = d.fresh_id("e")
    d.edges[eid] = (end_a, end_b)
    if dirs is not None:
        if dirs[0] is not None:
            d.side_dirs[(eid, 0)] = dirs[0]
        if dirs[1] is not None:
            d.side_dirs[(eid, 1)] = dirs[1]
    return eid


def _repoint(d: RibbonDiagram, old_end, new_end):
    """Move one edge end to a new port; end order and dirs unchanged."""
    pm = d.port_map()
    eid, k = pm[old_end]
    ends = list(d.edges[eid])
    ends[k] = new_end
    d.edges[eid] = (ends[0], ends[1])
    return eid


def _rewire(d: RibbonDiagram, role_old: Dict[str, tuple], role_new: Dict[str, tuple]):
    """Simultaneously re-point pattern ports (two-phase, collision free)."""
    for role in sorted(role_old):
        _repoint(d, role_old[role], ("~tmp", role))
    for role in sorted(role_new):
        _repoint(d, ("~tmp", role), role_new[role])


def _weld(d: RibbonDiagram, port_a, port_b):
    """Remove a pass-through: the edges at the two ports merge into one
    edge joining their far ends (a free loop when they are one edge)."""
    pm = d.port_map()
    e1, k1 = pm[port_a]
    e2, k2 = pm[port_b]
    if e1 == e2:
        _cut(d, e1)
        lid = d.fresh_id("e")
        d.edges[lid] = None
        d.side_dirs[(lid, 0)] = 1
        d.side_dirs[(lid, 1)] = 1
        return lid
    ends1, dirs1 = _cut(d, e1)
    ends2, dirs2 = _cut(d, e2)
    far1 = ends1[1 - k1]
    far2 = ends2[1 - k2]
    if 1 - k1 == 0:
        merged = (dirs1[0], dirs1[1])
    else:
        # far1 moves from end 1 to end 0: sides swap, flow reverses
        merged = (
            -dirs1[1] if dirs1[1] is not None else None,
            -dirs1[0] if dirs1[0] is not None else None,
        )
    return _link(d, far1, far2, merged)


def _split(d: RibbonDiagram, eid: str, inner_a, inner_b):
    """Route edge eid through the gap inner_a .. inner_b.

    (X, Y) becomes (X, inner_a) and (inner_b, Y); X and Y keep their end
    indices so direction bits copy verbatim.  A free loop becomes the
    single return edge (inner_b, inner_a)."""
    ends, dirs = _cut(d, eid)
    if ends is None:
        _link(d, inner_b, inner_a, dirs)
        return
    x, y = ends
    _link(d, x, inner_a, dirs)
    _link(d, inner_b, y, dirs)


def _finalize(d: RibbonDiagram) -> RibbonDiagram:
    complete_side_dirs(d, dict(d.side_dirs))
    validate(d)
    return d


def _direct(d: RibbonDiagram, pm, port_a, port_b):
    """Edge id when port_a connects straight to port_b, else None."""
    eid, k = pm[port_a]
    ends = d.edges[eid]
    if ends is None:
        return None
    return eid if ends[1 - k] == port_b else None


# --- RII -------------------------------------------------------------------


def _rii_plus_sites(d: RibbonDiagram) -> List[MoveSite]:
    edges = sorted(d.edges)
    return [
        MoveSite("RII+", (eo, eu, flag))
        for eo in edges
        for eu in edges
        for flag in (0, 1)
    ]


def _apply_rii_plus(d: RibbonDiagram, payload) -> RibbonDiagram:
    eo, eu, flag = payload
    out = d.copy()
    if eo not in out.edges or eu not in out.edges:
        raise MoveError("stale RII+ site")
    c1 = out.fresh_id("c")
    out.crossings[c1] = flag
    c2 = out.fresh_id("c")
    out.crossings[c2] = 1 - flag
    if eo != eu:
        _split(out, eo, (c1, "oi"), (c2, "oo"))
        _link(out, (c1, "oo"), (c2, "oi"))
        _split(out, eu, (c1, "ui"), (c2, "uo"))
        _link(out, (c1, "uo"), (c2, "ui"))
    else:
        # self-poke: over c1, over c2, fold back, under c1, under c2
        ends, dirs = _cut(out, eo)
        if ends is None:
            _link(out, (c2, "uo"), (c1, "oi"), dirs)
        else:
            _link(out, ends[0], (c1, "oi"), dirs)
            _link(out, (c2, "uo"), ends[1], dirs)
        _link(out, (c1, "oo"), (c2, "oi"))
        _link(out, (c2, "oo"), (c1, "ui"))
        _link(out, (c1, "uo"), (c2, "ui"))
    return _finalize(out)


def _rii_minus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for c1 in sorted(d.crossings):
        for c2 in sorted(d.crossings):
            if c1 == c2:
                continue
            if d.crossings[c1] + d.crossings[c2] != 1:
                continue
            e_over = _direct(d, pm, (c1, "oo"), (c2, "oi"))
            e_under = _direct(d, pm, (c1, "uo"), (c2, "ui"))
            if e_over is None or e_under is None:
                continue
            outer = {pm[(c1, "oi")][0], pm[(c2, "oo")][0],
                     pm[(c1, "ui")][0], pm[(c2, "uo")][0]}
            if outer & {e_over, e_under}:
                continue
            sites.append(MoveSite("RII-", (c1, c2)))
    return sites


def _apply_rii_minus(d: RibbonDiagram, payload) -> RibbonDiagram:
    c1, c2 = payload
    out = d.copy()
    pm = out.port_map()
    if c1 not in out.crossings or c2 not in out.crossings:
        raise MoveError("stale RII- site")
    if _direct(out, pm, (c1, "oo"), (c2, "oi")) is None:
        raise MoveError("stale RII- site")
    _cut(out, pm[(c1, "oo")][0])
    _cut(out, pm[(c1, "uo")][0])
    del out.crossings[c1]
    del out.crossings[c2]
    _weld(out, (c1, "oi"), (c2, "oo"))
    _weld(out, (c1, "ui"), (c2, "uo"))
    return _finalize(out)


# --- CL (kinks) ------------------------------------------------------------


def _is_kink(d: RibbonDiagram, cid: str, pm) -> bool:
    return _direct(d, pm, (cid, "uo"), (cid, "oi")) is not None


def _cl_plus_sites(d: RibbonDiagram) -> List[MoveSite]:
    return [MoveSite("CL+", (eid, flag)) for eid in sorted(d.edges) for flag in (0, 1)]


def _apply_cl_plus(d: RibbonDiagram, payload) -> RibbonDiagram:
    eid, flag = payload
    out = d.copy()
    if eid not in out.edges:
        raise MoveError("stale CL+ site")
    k1 = out.fresh_id("c")
    out.crossings[k1] = flag
    k2 = out.fresh_id("c")
    out.crossings[k2] = 1 - flag
    _split(out, eid, (k1, "ui"), (k2, "oo"))
    _link(out, (k1, "uo"), (k1, "oi"))
    _link(out, (k1, "oo"), (k2, "ui"))
    _link(out, (k2, "uo"), (k2, "oi"))
    return _finalize(out)


def _cl_minus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for k1 in sorted(d.crossings):
        if not _is_kink(d, k1, pm):
            continue
        for k2 in sorted(d.crossings):
            if k2 == k1 or not _is_kink(d, k2, pm):
                continue
            if d.crossings[k1] + d.crossings[k2] != 1:
                continue
            link = _direct(d, pm, (k1, "oo"), (k2, "ui"))
            if link is None:
                continue
            outer = {pm[(k1, "ui")][0], pm[(k2, "oo")][0]}
            loops = {pm[(k1, "uo")][0], pm[(k2, "uo")][0]}
            if outer & (loops | {link}):
                continue
            sites.append(MoveSite("CL-", (k1, k2)))
    return sites


def _apply_cl_minus(d: RibbonDiagram, payload) -> RibbonDiagram:
    k1, k2 = payload
    out = d.copy()
    pm = out.port_map()
    if k1 not in out.crossings or k2 not in out.crossings:
        raise MoveError("stale CL- site")
    if not (_is_kink(out, k1, pm) and _is_kink(out, k2, pm)):
        raise MoveError("stale CL- site")
    _cut(out, pm[(k1, "uo")][0])
    _cut(out, pm[(k2, "uo")][0])
    _cut(out, pm[(k1, "oo")][0])
    del out.crossings[k1]
    del out.crossings[k2]
    _weld(out, (k1, "ui"), (k2, "oo"))
    return _finalize(out)


# --- IH ---------------------------------------------------------------------


def _ih_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    for eid, ends in sorted(d.edges.items()):
        if ends is None:
            continue
        (n0, _p0), (n1, _p1) = ends
        if n0 in d.vertices and n1 in d.vertices and n0 != n1:
            sites.append(MoveSite("IH", (eid,)))
    return sites


def _apply_ih(d: RibbonDiagram, payload) -> RibbonDiagram:
    (eid,) = payload
    out = d.copy()
    ends = out.edges.get(eid)
    if ends is None:
        raise MoveError("stale IH site")
    (v1, pm1), (v2, pm2) = ends
    if v1 not in out.vertices or v2 not in out.vertices or v1 == v2:
        raise MoveError("stale IH site")
    i1 = _PORT_INDEX[pm1]
    i2 = _PORT_INDEX[pm2]
    # ccw from the bar: v1 = (mid, a, b), v2 = (mid, c, d); the rotated H
    # regroups to v1' = (mid, d, a), v2' = (mid, b, c)
    a = (v1, _PORTS[(i1 + 1) % 3])
    b = (v1, _PORTS[(i1 + 2) % 3])
    c = (v2, _PORTS[(i2 + 1) % 3])
    e = (v2, _PORTS[(i2 + 2) % 3])
    _cut(out, eid)
    _rewire(
        out,
        {"a": a, "b": b, "c": c, "d": e},
        {
            "d": (v1, _PORTS[(i1 + 1) % 3]),
            "a": (v1, _PORTS[(i1 + 2) % 3]),
            "b": (v2, _PORTS[(i2 + 1) % 3]),
            "c": (v2, _PORTS[(i2 + 2) % 3]),
        },
    )
    _link(out, (v1, pm1), (v2, pm2))
    return _finalize(out)


# --- vertex tables for YI / IY ---------------------------------------------


def _over_attachment(d: RibbonDiagram, cid: str, pm):
    """(vertex, leg, u_idx, v_idx) when the over strand of cid attaches
    directly to a vertex.  Arc i joins (leg i, side 0) to (leg i+1,
    side 1); the returned indices give the crossing's (u, v) pair as
    vertex arcs."""
    for port in ("oo", "oi"):
        eid, k = pm[(cid, port)]
        ends = d.edges[eid]
        if ends is None:
            continue
        node, nport = ends[1 - k]
        if node in d.vertices:
            leg = _PORT_INDEX[nport]
            if port == "oo":
                m_idx, n_idx = leg, (leg - 1) % 3
            else:
                m_idx, n_idx = (leg - 1) % 3, leg
            if d.crossings[cid] == 0:
                return node, leg, m_idx, n_idx
            return node, leg, n_idx, m_idx
    return None


def _under_attachment(d: RibbonDiagram, cid: str, pm):
    """(vertex, leg, port) when the under strand of cid attaches directly
    to a vertex; port records whether the strand flows into ("uo") or out
    of ("ui") the vertex."""
    for port in ("uo", "ui"):
        eid, k = pm[(cid, port)]
        ends = d.edges[eid]
        if ends is None:
            continue
        node, nport = ends[1 - k]
        if node in d.vertices:
            return node, _PORT_INDEX[nport], port
    return None


def _strand_edges_distinct(d, cid, pm) -> bool:
    """Over and under strands of cid share no edge (excludes kinks)."""
    under = {pm[(cid, "ui")][0], pm[(cid, "uo")][0]}
    over = {pm[(cid, "oi")][0], pm[(cid, "oo")][0]}
    return not (under & over)


def _leg_with_sides(i_idx, j_idx):
    """Leg whose vertex-arc sides are A_i and A_j (leg k has sides A_k
    and A_{k-1})."""
    for leg in range(3):
        if {leg, (leg - 1) % 3} == {i_idx, j_idx}:
            return leg
    raise MoveError("arcs do not share a leg")


def _attach_over_leg(out, cid, vertex, leg, want_u_idx, want_v_idx):
    """Split the leg's edge so cid passes over it next to the vertex,
    flag chosen to realize the wanted (u, v) vertex arcs."""
    pm = out.port_map()
    leg_port = (vertex, _PORTS[leg])
    eid, k = pm[leg_port]
    if k == 1:
        _split(out, eid, (cid, "oi"), (cid, "oo"))
    else:
        _split(out, eid, (cid, "oo"), (cid, "oi"))
    # with oo toward the vertex: M side = A_leg, N side = A_{leg-1}
    m_idx, n_idx = leg, (leg - 1) % 3
    if (want_u_idx, want_v_idx) == (m_idx, n_idx):
        out.crossings[cid] = 0
    elif (want_u_idx, want_v_idx) == (n_idx, m_idx):
        out.crossings[cid] = 1
    else:
        raise MoveError("over pair does not match the leg")


def _attach_under_leg(out, cid, vertex, leg, into_vertex=True):
    """Split the leg's edge so cid cuts it next to the vertex, the under
    strand directed into or out of the vertex."""
    pm = out.port_map()
    leg_port = (vertex, _PORTS[leg])
    eid, k = pm[leg_port]
    pin, pout = ("ui", "uo") if into_vertex else ("uo", "ui")
    if k == 1:
        _split(out, eid, (cid, pin), (cid, pout))
    else:
        _split(out, eid, (cid, pout), (cid, pin))


# --- YI ---------------------------------------------------------------------


def _yi_plus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for cid in sorted(d.crossings):
        if not _strand_edges_distinct(d, cid, pm):
            continue
        if _over_attachment(d, cid, pm) is not None:
            sites.append(MoveSite("YI+", (cid,)))
    return sites


def _apply_yi_plus(d: RibbonDiagram, payload) -> RibbonDiagram:
    (cid,) = payload
    out = d.copy()
    pm = out.port_map()
    if cid not in out.crossings or not _strand_edges_distinct(out, cid, pm):
        raise MoveError("stale YI+ site")
    att = _over_attachment(out, cid, pm)
    if att is None:
        raise MoveError("stale YI+ site")
    vertex, _leg, u_idx, v_idx = att
    t_idx = next(i for i in range(3) if i not in (u_idx, v_idx))
    c1 = out.fresh_id("c")
    out.crossings[c1] = 0
    c2 = out.fresh_id("c")
    out.crossings[c2] = 0
    _rewire(
        out,
        {"uin": (cid, "ui"), "uout": (cid, "uo")},
        {"uin": (c1, "ui"), "uout": (c2, "uo")},
    )
    _link(out, (c1, "uo"), (c2, "ui"))
    _weld(out, (cid, "oi"), (cid, "oo"))
    del out.crossings[cid]
    first_leg = _leg_with_sides(u_idx, t_idx)
    second_leg = _leg_with_sides(t_idx, v_idx)
    _attach_over_leg(out, c1, vertex, first_leg, u_idx, t_idx)
    _attach_over_leg(out, c2, vertex, second_leg, t_idx, v_idx)
    return _finalize(out)


def _yi_minus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for c1 in sorted(d.crossings):
        a1 = _over_attachment(d, c1, pm)
        if a1 is None or not _strand_edges_distinct(d, c1, pm):
            continue
        for c2 in sorted(d.crossings):
            if c2 == c1:
                continue
            a2 = _over_attachment(d, c2, pm)
            if a2 is None or not _strand_edges_distinct(d, c2, pm):
                continue
            link = _direct(d, pm, (c1, "uo"), (c2, "ui"))
            if link is None:
                continue
            v1, leg1, u1, t1 = a1
            v2, leg2, t2, v2_idx = a2
            if v1 != v2 or leg1 == leg2 or t1 != t2:
                continue
            try:
                if _leg_with_sides(u1, t1) != leg1 or _leg_with_sides(t1, v2_idx) != leg2:
                    continue
            except MoveError:
                continue
            if u1 == t1 or v2_idx == t1:
                continue
            outer = {pm[(c1, "ui")][0], pm[(c2, "uo")][0],
                     pm[(c1, "oi")][0], pm[(c1, "oo")][0],
                     pm[(c2, "oi")][0], pm[(c2, "oo")][0]}
            if link in outer:
                continue
            sites.append(MoveSite("YI-", (c1, c2)))
    return sites


def _apply_yi_minus(d: RibbonDiagram, payload) -> RibbonDiagram:
    c1, c2 = payload
    out = d.copy()
    pm = out.port_map()
    if c1 not in out.crossings or c2 not in out.crossings:
        raise MoveError("stale YI- site")
    a1 = _over_attachment(out, c1, pm)
    a2 = _over_attachment(out, c2, pm)
    if a1 is None or a2 is None:
        raise MoveError("stale YI- site")
    vertex, _l1, u_idx, t_idx = a1
    _v2, _l2, _t2, v_idx = a2
    stem = _leg_with_sides(u_idx, v_idx)
    cnew = out.fresh_id("c")
    out.crossings[cnew] = 0
    _rewire(
        out,
        {"uin": (c1, "ui"), "uout": (c2, "uo")},
        {"uin": (cnew, "ui"), "uout": (cnew, "uo")},
    )
    _cut(out, pm[(c1, "uo")][0])  # the direct under link
    _weld(out, (c1, "oi"), (c1, "oo"))
    _weld(out, (c2, "oi"), (c2, "oo"))
    del out.crossings[c1]
    del out.crossings[c2]
    # pull the rerouted under strand out of the new crossing again: the
    # strand now runs in -> cnew.ui, cnew.uo -> out, and cnew sits over
    # the stem leg
    _attach_over_leg_reroute(out, cnew, vertex, stem, u_idx, v_idx)
    return _finalize(out)


def _attach_over_leg_reroute(out, cnew, vertex, stem, u_idx, v_idx):
    _attach_over_leg(out, cnew, vertex, stem, u_idx, v_idx)


# --- IY ---------------------------------------------------------------------


def _iy_plus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for cid in sorted(d.crossings):
        if not _strand_edges_distinct(d, cid, pm):
            continue
        if _under_attachment(d, cid, pm) is not None:
            sites.append(MoveSite("IY+", (cid,)))
    return sites


def _apply_iy_plus(d: RibbonDiagram, payload) -> RibbonDiagram:
    (cid,) = payload
    out = d.copy()
    pm = out.port_map()
    if cid not in out.crossings or not _strand_edges_distinct(out, cid, pm):
        raise MoveError("stale IY+ site")
    att = _under_attachment(out, cid, pm)
    if att is None:
        raise MoveError("stale IY+ site")
    vertex, stem, stem_port = att
    flag = out.crossings[cid]
    d1 = out.fresh_id("c")
    out.crossings[d1] = flag
    d2 = out.fresh_id("c")
    out.crossings[d2] = flag
    _rewire(
        out,
        {"oin": (cid, "oi"), "oout": (cid, "oo")},
        {"oin": (d1, "oi"), "oout": (d2, "oo")},
    )
    _link(out, (d1, "oo"), (d2, "oi"))
    _weld(out, (cid, "ui"), (cid, "uo"))
    del out.crossings[cid]
    # relation shape mirrors the stem's flow: stem into the vertex means
    # the legs' vertex-side pieces feed the crossings (strands outward)
    into = stem_port == "ui"
    _attach_under_leg(out, d1, vertex, (stem + 1) % 3, into)
    _attach_under_leg(out, d2, vertex, (stem + 2) % 3, into)
    return _finalize(out)


def _iy_minus_sites(d: RibbonDiagram) -> List[MoveSite]:
    sites = []
    pm = d.port_map()
    for c1 in sorted(d.crossings):
        a1 = _under_attachment(d, c1, pm)
        if a1 is None or not _strand_edges_distinct(d, c1, pm):
            continue
        for c2 in sorted(d.crossings):
            if c2 == c1 or d.crossings[c1] + d.crossings[c2] != 1:
                continue
            a2 = _under_attachment(d, c2, pm)
            if a2 is None or not _strand_edges_distinct(d, c2, pm):
                continue
            link = _direct(d, pm, (c1, "oo"), (c2, "oi"))
            if link is None:
                continue
            v1, leg1 = a1
            v2, leg2 = a2
            if v1 != v2 or leg1 == leg2:
                continue
            outer = {pm[(c1, "oi")][0], pm[(c2, "oo")][0],
                     pm[(c1, "ui")][0], pm[(c1, "uo")][0],
                     pm[(c2, "ui")][0], pm[(c2, "uo")][0]}
            if link in outer:
                continue
            sites.append(MoveSite("IY-", (c1, c2)))
    return sites


def _apply_iy_minus(d: RibbonDiagram, payload) -> RibbonDiagram:
    c1, c2 = payload
    out = d.copy()
    pm = out.port_map()
    if c1 not in out.crossings or c2 not in out.crossings:
        raise MoveError("stale IY- site")
    a1 = _under_attachment(out, c1, pm)
    a2 = _under_attachment(out, c2, pm)
    if a1 is None or a2 is None:
        raise MoveError("stale IY- site")
    vertex, leg1 = a1
    _v, leg2 = a2
    stem = next(i for i in range(3) if i not in (leg1, leg2))
    flag = out.crossings[c1]
    cnew = out.fresh_id("c")
    out.crossings[cnew] = flag
    _rewire(
        out,
        {"oin": (c1, "oi"), "oout": (c2, "oo")},
        {"oin": (cnew, "oi"), "oout": (cnew, "oo")},
    )
    _cut(out, pm[(c1, "oo")][0])  # over link
    _weld(out, (c1, "ui"), (c1, "uo"))
    _weld(out, (c2, "ui"), (c2, "uo"))
    del out.crossings[c1]
    del out.crossings[c2]
    _attach_under_leg(out, cnew, vertex, stem)
    return _finalize(out)


# --- RIII -------------------------------------------------------------------


def _riii_sites(d: RibbonDiagram, reverse: bool) -> List[MoveSite]:
    """Triangle slides.  Forward: strand B passes under M (c1) then
    under T (c2) with M under T at c3 behind the strand; reverse is the
    slid configuration."""
    sites = []
    pm = d.port_map()
    kind = "RIII-" if reverse else "RIII"
    for c1 in sorted(d.crossings):
        for c2 in sorted(d.crossings):
            if c1 == c2:
                continue
            e_b = _direct(d, pm, (c1, "uo"), (c2, "ui"))
            if e_b is None:
                continue
            for c3 in sorted(d.crossings):
                if c3 in (c1, c2):
                    continue
                if not reverse:
                    e_m = _direct(d, pm, (c1, "oo"), (c3, "ui"))
                    e_t = _direct(d, pm, (c3, "oo"), (c2, "oi"))
                    outer_ports = [(c1, "ui"), (c2, "uo"), (c1, "oi"),
                                   (c3, "uo"), (c3, "oi"), (c2, "oo")]
                else:
                    e_t = _direct(d, pm, (c1, "oo"), (c3, "oi"))
                    e_m = _direct(d, pm, (c3, "uo"), (c2, "oi"))
                    outer_ports = [(c1, "ui"), (c2, "uo"), (c1, "oi"),
                                   (c3, "ui"), (c3, "oo"), (c2, "oo")]
                if e_m is None or e_t is None:
                    continue
                links = {e_b, e_m, e_t}
                if len(links) != 3:
                    continue
                if any(pm[port][0] in links for port in outer_ports):
                    continue
                sites.append(MoveSite(kind, (c1, c2, c3)))
    return sites


def _apply_riii(d: RibbonDiagram, payload, reverse: bool) -> RibbonDiagram:
    c1, c2, c3 = payload
    out = d.copy()
    pm = out.port_map()
    for c in payload:
        if c not in out.crossings:
            raise MoveError("stale RIII site")
    if not reverse:
        old = {
            "b_in": (c1, "ui"), "b_out": (c2, "uo"),
            "m_in": (c1, "oi"), "m_out": (c3, "uo"),
            "t_in": (c3, "oi"), "t_out": (c2, "oo"),
        }
        links = [pm[(c1, "uo")][0], pm[(c1, "oo")][0], pm[(c3, "oo")][0]]
        new = {
            "b_in": (c1, "ui"), "b_out": (c2, "uo"),
            "t_in": (c1, "oi"), "t_out": (c3, "oo"),
            "m_in": (c3, "ui"), "m_out": (c2, "oo"),
        }
        new_links = [((c1, "uo"), (c2, "ui")),
                     ((c1, "oo"), (c3, "oi")),
                     ((c3, "uo"), (c2, "oi"))]
    else:
        old = {
            "b_in": (c1, "ui"), "b_out": (c2, "uo"),
            "t_in": (c1, "oi"), "t_out": (c3, "oo"),
            "m_in": (c3, "ui"), "m_out": (c2, "oo"),
        }
        links = [pm[(c1, "uo")][0], pm[(c1, "oo")][0], pm[(c3, "uo")][0]]
        new = {
            "b_in": (c1, "ui"), "b_out": (c2, "uo"),
            "m_in": (c1, "oi"), "m_out": (c3, "uo"),
            "t_in": (c3, "oi"), "t_out": (c2, "oo"),
        }
        new_links = [((c1, "uo"), (c2, "ui")),
                     ((c1, "oo"), (c3, "ui")),
                     ((c3, "oo"), (c2, "oi"))]
    for eid in links:
        _cut(out, eid)
    _rewire(out, old, new)
    for end_a, end_b in new_links:
        _link(out, end_a, end_b)
    f1, f2 = out.crossings[c1], out.crossings[c2]
    out.crossings[c1] = f2
    out.crossings[c2] = f1
    return _finalize(out)


# --- public API -------------------------------------------------------------


def find_sites(d: RibbonDiagram, kind: str) -> List[MoveSite]:
    """All sites of a move kind, in deterministic order."""
    if kind == "RII+":
        return _rii_plus_sites(d)
    if kind == "RII-":
        return _rii_minus_sites(d)
    if kind == "CL+":
        return _cl_plus_sites(d)
    if kind == "CL-":
        return _cl_minus_sites(d)
    if kind == "IH":
        return _ih_sites(d)
    if kind == "RIII":
        return _riii_sites(d, reverse=False)
    if kind == "RIII-":
        return _riii_sites(d, reverse=True)
    if kind == "YI+":
        return _yi_plus_sites(d)
    if kind == "YI-":
        return _yi_minus_sites(d)
    if kind == "IY+":
        return _iy_plus_sites(d)
    if kind == "IY-":
        return _iy_minus_sites(d)
    raise MoveError("unknown move kind %r" % kind)


_APPLY = {
    "RII+": _apply_rii_plus,
    "RII-": _apply_rii_minus,
    "CL+": _apply_cl_plus,
    "CL-": _apply_cl_minus,
    "IH": _apply_ih,
}


def apply_move(d: RibbonDiagram, site: MoveSite) -> RibbonDiagram:
    if site.kind in _APPLY:
        return _APPLY[site.kind](d, site.payload)
    if site.kind == "RIII":
        return _apply_riii(d, site.payload, reverse=False)
    if site.kind == "RIII-":
        return _apply_riii(d, site.payload, reverse=True)
    if site.kind == "YI+":
        return _apply_yi_plus(d, site.payload)
    if site.kind == "YI-":
        return _apply_yi_minus(d, site.payload)
    if site.kind == "IY+":
        return _apply_iy_plus(d, site.payload)
    if site.kind == "IY-":
        return _apply_iy_minus(d, site.payload)
    raise MoveError("unknown move kind %r" % site.kind)


def fuzz(
    d: RibbonDiagram, seed: int, steps: int, size_cap: int = 200
) -> Tuple[RibbonDiagram, List[MoveSite]]:
    """Apply `steps` random applicable moves from a seeded generator.

    Above half the size cap only size-reducing moves are tried first.
    Returns the rewritten diagram and the move trace; identical seeds
    give identical traces.
    """
    rng = random.Random(seed)
    trace: List[MoveSite] = []
    cur = d
    for _ in range(steps):
        site = None
        if len(cur.edges) > size_cap // 2:
            shrink: List[MoveSite] = []
            for kind in _SHRINKERS:
                shrink.extend(find_sites(cur, kind))
            if shrink:
                site = rng.choice(sorted(shrink))
        if site is None:
            available = []
            for kind in MOVE_KINDS:
                if kind in ("RII+", "CL+"):
                    available.append(kind)  # always applicable on an edge
                    continue
                if find_sites(cur, kind):
                    available.append(kind)
            kind = rng.choice(available)
            if kind == "RII+":
                edges = sorted(cur.edges)
                site = MoveSite(
                    "RII+",
                    (rng.choice(edges), rng.choice(edges), rng.randrange(2)),
                )
            elif kind == "CL+":
                site = MoveSite("CL+", (rng.choice(sorted(cur.edges)), rng.randrange(2)))
            else:
                site = rng.choice(sorted(find_sites(cur, kind)))
        cur = apply_move(cur, site)
        trace.append(site)
    return cur, trace
