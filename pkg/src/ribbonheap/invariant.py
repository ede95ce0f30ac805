"""The 2-cocycle invariant of surface ribbons.

A decoration assigns one reversible-additive 2-cocycle per surface
component, with every pair mutually distributive (checked, never
assumed).  For each coloring, every boundary circle accumulates a weight
in A: at each under-passage the cocycle of the overpassing component is
evaluated on (incoming arc, u, v), read along the circle's stored
orientation (traversals against the crossing direction read the inverse
passage (out, v, u)).  The value is the formal sum over colorings of the
per-component tensors, each tensor a multiset of circle weights.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cochains import Cochain2, check_cocycle_conditions, is_mutually_distributive
from .coloring import enumerate_colorings
from .diagram import BoundaryStructure, RibbonDiagram, boundary
from .groups import AbelianGroup
from .heaps import FiniteHeap


class DecorationError(ValueError):
    pass


@dataclass(frozen=True)
class Decoration:
    heap: FiniteHeap
    coeffs: AbelianGroup
    cochains: Tuple[Cochain2, ...]

    def cocycle_for(self, component: int) -> Cochain2:
        return self.cochains[component]


def make_decoration(cochains: Sequence[Cochain2], check: bool = True) -> Decoration:
    """Bundle per-component cocycles; verifies admissibility by default."""
    if not cochains:
        raise DecorationError("decoration needs at least one cocycle")
    heap = cochains[0].heap
    coeffs = cochains[0].coeffs
    for i, psi in enumerate(cochains):
        if psi.heap.op.table != heap.op.table:
            raise DecorationError("cocycle %d lives on a different heap" % i)
        if psi.coeffs.invariant_factors != coeffs.invariant_factors:
            raise DecorationError("cocycle %d has a different coefficient group" % i)
    if check:
        for i, psi in enumerate(cochains):
            rep = check_cocycle_conditions(psi)
            if not rep.is_cocycle:
                raise DecorationError(
                    "entry %d is not a 2-cocycle (witness %s)"
                    % (i, rep.witnesses.get("cocycle"))
                )
            if not (rep.is_reversible and rep.is_additive):
                raise DecorationError(
                    "entry %d is not reversible-additive (witnesses %s)"
                    % (i, rep.witnesses)
                )
        for i in range(len(cochains)):
            for j in range(i + 1, len(cochains)):
                ok, wit = is_mutually_distributive(
                    cochains[i], cochains[j], witness=True
                )
                if not ok:
                    raise DecorationError(
                        "entries %d and %d are not mutually distributive (witness %s)"
                        % (i, j, wit)
                    )
    return Decoration(heap, coeffs, tuple(cochains))


@dataclass(frozen=True)
class InvariantValue:
    """Formal integer combination of per-component weight tensors.

    Terms are tuples over surface components; each entry is the sorted
    tuple of that component's boundary-circle weights (tensor factors up
    to permutation).  Multiplicities count colorings.
    """

    coeffs: AbelianGroup
    terms: tuple  # sorted tuple of (term, multiplicity)

    @staticmethod
    def from_counter(coeffs: AbelianGroup, counter: Counter) -> "InvariantValue":
        return InvariantValue(coeffs, tuple(sorted(counter.items())))

    def counter(self) -> Counter:
        return Counter(dict(self.terms))

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.terms)

    def is_trivial_multiple(self) -> bool:
        """True when the value is an integer multiple of the trivial tensor."""
        if len(self.terms) != 1:
            return False
        term, _ = self.terms[0]
        zero = self.coeffs.zero()
        return all(all(w == zero for w in entry) for entry in term)

    def format_lines(self) -> List[str]:
        out = []
        for term, mult in self.terms:
            entries = []
            for ci, entry in enumerate(term):
                names = ",".join(self.coeffs.name(w) for w in entry)
                entries.append("[comp%d: (%s)]" % (ci, names))
            out.append("%d x %s" % (mult, " ".join(entries)))
        return out


def boltzmann(
    b: BoundaryStructure,
    coloring: Sequence[int],
    circle_index: int,
    decoration: Decoration,
) -> tuple:
    """Weight of one boundary circle under one coloring."""
    A = decoration.coeffs
    acc = A.zero()
    for ev_index, side, aligned in b.circle_events[circle_index]:
        ev = b.events[ev_index]
        psi = decoration.cocycle_for(ev.over_component)
        a_in, a_out = (ev.in_p, ev.out_p) if side == "p" else (ev.in_q, ev.out_q)
        u, v = coloring[ev.u_arc], coloring[ev.v_arc]
        if aligned:
            w = psi(coloring[a_in], u, v)
        else:
            w = psi(coloring[a_out], v, u)
        acc = A.add(acc, w)
    return acc


def cocycle_invariant(
    d: RibbonDiagram, decoration: Decoration, precomputed: Optional[BoundaryStructure] = None
) -> InvariantValue:
    b = precomputed if precomputed is not None else boundary(d)
    if len(decoration.cochains) != b.component_count:
        raise DecorationError(
            "decoration has %d entries for %d components"
            % (len(decoration.cochains), b.component_count)
        )
    per_comp = [b.component_circles(c) for c in range(b.component_count)]
    counter: Counter = Counter()
    for coloring in enumerate_colorings(d, decoration.heap):
        term = tuple(
            tuple(sorted(boltzmann(b, coloring, ci, decoration) for ci in circles))
            for circles in per_comp
        )
        counter[term] += 1
    return InvariantValue.from_counter(decoration.coeffs, counter)


def expected_trivial_value(
    d: RibbonDiagram, decoration: Decoration, count: int
) -> InvariantValue:
    """count times the all-trivial tensor, shaped like the diagram."""
    b = boundary(d)
    zero = decoration.coeffs.zero()
    term = tuple(
        tuple(zero for _ in b.component_circles(c)) for c in range(b.component_count)
    )
    return InvariantValue.from_counter(decoration.coeffs, Counter({term: count}))


@dataclass(frozen=True)
class ConnectedSumReport:
    direct: InvariantValue
    product_plus_residual: InvariantValue
    residual_count: int
    matches: bool


def connected_sum_check(
    d1: RibbonDiagram,
    edge1: str,
    dec1: Decoration,
    d2: RibbonDiagram,
    edge2: str,
    dec2: Decoration,
) -> ConnectedSumReport:
    """Compare the invariant of a boundary connected sum with the glued
    product of the parts' invariants plus residual-coloring terms.

    The parts are glued along the boundary circles carrying the chosen
    edge sides; the decorations of the glued components must agree.
    """
    from .builders import boundary_connected_sum

    b1, b2 = boundary(d1), boundary(d2)
    glued = boundary_connected_sum(d1, edge1, d2, edge2)
    bg = boundary(glued)

    comp1 = b1.edge_component[edge1]
    comp2 = b2.edge_component[edge2]
    if dec1.cochains[comp1].table != dec2.cochains[comp2].table:
        raise DecorationError("glued components carry different cocycles")
    if dec1.heap.op.table != dec2.heap.op.table or (
        dec1.coeffs.invariant_factors != dec2.coeffs.invariant_factors
    ):
        raise DecorationError("incompatible decorations")

    # decoration of the sum: components of d1 then d2, with the two glued
    # components now one (the merged component keeps comp1's cocycle)
    merged = []
    comp_map = {}  # (part, old component) -> merged component index
    for c in range(b1.component_count):
        comp_map[("u", c)] = len(merged)
        merged.append(dec1.cochains[c])
    for c in range(b2.component_count):
        if c == comp2:
            comp_map[("v", c)] = comp_map[("u", comp1)]
        else:
            comp_map[("v", c)] = len(merged)
            merged.append(dec2.cochains[c])
    # map the merged diagram's components onto that numbering via edges
    renumber = {}
    for eid in glued.edges:
        part = eid[0]  # "u" or "v" prefix from disjoint_union (feet/bridge are fresh)
        if "." not in eid:
            continue
        tag, orig = eid.split(".", 1)
        base = d1 if tag == "u" else d2
        if orig in base.edges:
            src = b1 if tag == "u" else b2
            renumber[bg.edge_component[eid]] = comp_map[(tag, src.edge_component[orig])]
    order = [None] * bg.component_count
    for gcomp, mcomp in renumber.items():
        order[gcomp] = mcomp
    if any(x is None for x in order):
        raise DecorationError("could not align components of the glued diagram")
    dec_glued = make_decoration([merged[order[c]] for c in range(bg.component_count)], check=False)
    direct = cocycle_invariant(glued, dec_glued)

    # product side: pair colorings of the parts agreeing on the glued arcs
    arc1 = _arc_of_edge_band_side(d1, b1, edge1)
    arc2 = _arc_of_edge_band_side(d2, b2, edge2)
    circ1 = _circle_of_arc(b1, arc1)
    circ2 = _circle_of_arc(b2, arc2)
    A = dec1.coeffs
    colorings1 = list(enumerate_colorings(d1, dec1.heap))
    colorings2 = list(enumerate_colorings(d2, dec2.heap))
    counter: Counter = Counter()
    n_pairs = 0
    for c1 in colorings1:
        for c2 in colorings2:
            if c1[arc1] != c2[arc2]:
                continue
            n_pairs += 1
            entries = []
            # merged component: product of the two glued circles' weights,
            # tensored with the remaining circles of both glued components
            w1 = [boltzmann(b1, c1, ci, dec1) for ci in b1.component_circles(comp1)]
            w2 = [boltzmann(b2, c2, ci, dec2) for ci in b2.component_circles(comp2)]
            i1 = b1.component_circles(comp1).index(circ1)
            i2 = b2.component_circles(comp2).index(circ2)
            fused = A.add(w1[i1], w2[i2])
            rest = [w for k, w in enumerate(w1) if k != i1]
            rest += [w for k, w in enumerate(w2) if k != i2]
            merged_entry = tuple(sorted([fused] + rest))
            # remaining components in merged order
            term = [None] * len(merged)
            term[comp_map[("u", comp1)]] = merged_entry
            for c in range(b1.component_count):
                if c == comp1:
                    continue
                term[comp_map[("u", c)]] = tuple(
                    sorted(boltzmann(b1, c1, ci, dec1) for ci in b1.component_circles(c))
                )
            for c in range(b2.component_count):
                if c == comp2:
                    continue
                term[comp_map[("v", c)]] = tuple(
                    sorted(boltzmann(b2, c2, ci, dec2) for ci in b2.component_circles(c))
                )
            counter[tuple(term)] += 1
    product = InvariantValue.from_counter(A, counter)
    residual = direct.total_multiplicity - n_pairs
    # reorder the direct value's components into the merged numbering
    direct_reordered = _reorder_components(direct, order, len(merged))
    matches = residual == 0 and direct_reordered.terms == product.terms
    return ConnectedSumReport(direct_reordered, product, residual, matches)


def _reorder_components(value: InvariantValue, order, n_merged) -> InvariantValue:
    counter: Counter = Counter()
    for term, mult in value.terms:
        new = [None] * n_merged
        for gcomp, entry in enumerate(term):
            new[order[gcomp]] = entry
        counter[tuple(new)] += mult
    return InvariantValue.from_counter(value.coeffs, counter)


def _arc_of_edge_band_side(d: RibbonDiagram, b: BoundaryStructure, eid: str) -> int:
    """Arc on the side of the edge where a connecting band would attach
    (the side detoured through port 3 of an inserted foot)."""
    ends = d.edges[eid]
    if ends is None:
        # loop side 1 is where the foot's band port lands
        for t, arc in b.arc_of_terminal.items():
            pass
        # free loops have synthetic arcs; use the second one
        circles = [ci for ci, _ in enumerate(b.circles)]
        # synthetic arcs are appended after ported arcs in arc order
        raise DecorationError("connected sums on bare loops need a split edge first")
    (n0, p0), (n1, p1) = ends
    # side containing terminal (n1, p1, 0): matches _insert_one_foot wiring,
    # where port 3's detour interrupts the side through (v,"2",0)=(n1-end)
    return b.arc_of_terminal[(n0, p0, 1)]


def _circle_of_arc(b: BoundaryStructure, arc: int) -> int:
    for ci, circle in enumerate(b.circles):
        if arc in circle:
            return ci
    raise DecorationError("arc not on any circle")
