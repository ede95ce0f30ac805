"""Ternary operations, heaps and their axiom checkers.

All checks are exhaustive table scans; carriers stay small (<= ~24) so
exhaustiveness is the verification contract, not a bottleneck.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groups import AbelianGroup, FiniteGroup


class HeapError(ValueError):
    pass


@dataclass(frozen=True)
class TernaryOp:
    """A total ternary operation on {0..carrier_size-1} as a flat table."""

    carrier_size: int
    table: tuple  # flat, index x*S*S + y*S + z

    def __post_init__(self):
        s = self.carrier_size
        if len(self.table) != s * s * s:
            raise HeapError("table must have carrier_size^3 entries")
        if any(not (0 <= v < s) for v in self.table):
            raise HeapError("table entry out of carrier range")

    def __call__(self, x: int, y: int, z: int) -> int:
        s = self.carrier_size
        return self.table[(x * s + y) * s + z]


def ternary_from_fn(size: int, fn) -> TernaryOp:
    tbl = []
    for x in range(size):
        for y in range(size):
            for z in range(size):
                tbl.append(fn(x, y, z))
    return TernaryOp(size, tuple(tbl))


def is_heap(op: TernaryOp) -> bool:
    """Para-associativity (all three equalities) plus both degeneracies."""
    s = op.carrier_size
    t = op
    for x in range(s):
        for y in range(s):
            if t(x, x, y) != y or t(x, y, y) != x:
                return False
    rng = range(s)
    for x1 in rng:
        for x2 in rng:
            for x3 in rng:
                a = t(x1, x2, x3)
                for x4 in rng:
                    m = t(x4, x3, x2)
                    for x5 in rng:
                        v = t(a, x4, x5)
                        if v != t(x1, m, x5):
                            return False
                        if v != t(x1, x2, t(x3, x4, x5)):
                            return False
    return True


def is_tsd(op: TernaryOp) -> bool:
    """Ternary self-distributivity over all 5-tuples."""
    s = op.carrier_size
    t = op
    rng = range(s)
    for x in rng:
        for y in rng:
            for z in rng:
                a = t(x, y, z)
                for u in rng:
                    for v in rng:
                        if t(a, u, v) != t(t(x, u, v), t(y, u, v), t(z, u, v)):
                            return False
    return True


@dataclass(frozen=True)
class OpConditionReport:
    idempotency: bool
    reversibility: bool
    additivity: bool
    idempotency_witness: Optional[tuple] = None
    reversibility_witness: Optional[tuple] = None
    additivity_witness: Optional[tuple] = None


def check_op_conditions(op: TernaryOp) -> OpConditionReport:
    """Check T(w,x,x)=w, T(T(w,x,y),y,x)=w and T(T(w,x,y),y,z)=T(w,x,z).

    Witnesses are the first failing tuples in lexicographic order.
    """
    s = op.carrier_size
    t = op
    rng = range(s)
    idem, idem_w = True, None
    for w in rng:
        for x in rng:
            if t(w, x, x) != w:
                idem, idem_w = False, (w, x)
                break
        if not idem:
            break
    rev, rev_w = True, None
    for w in rng:
        for x in rng:
            for y in rng:
                if t(t(w, x, y), y, x) != w:
                    rev, rev_w = False, (w, x, y)
                    break
            if not rev:
                break
        if not rev:
            break
    add, add_w = True, None
    for w in rng:
        for x in rng:
            for y in rng:
                a = t(w, x, y)
                for z in rng:
                    if t(a, y, z) != t(w, x, z):
                        add, add_w = False, (w, x, y, z)
                        break
                if not add:
                    break
            if not add:
                break
        if not add:
            break
    return OpConditionReport(idem, rev, add, idem_w, rev_w, add_w)


@dataclass(frozen=True)
class FiniteHeap:
    """A finite heap: ternary op verified to satisfy the heap axioms.

    source_group is set when built from a group via x y^-1 z.
    """

    op: TernaryOp
    source_group: Optional[FiniteGroup] = None

    def __post_init__(self):
        if not is_heap(self.op):
            raise HeapError("operation does not satisfy the heap axioms")

    @property
    def size(self) -> int:
        return self.op.carrier_size

    def t(self, x: int, y: int, z: int) -> int:
        return self.op(x, y, z)

    def element_name(self, x: int) -> str:
        if self.source_group is not None:
            return self.source_group.name(x)
        return str(x)


def group_heap(group: FiniteGroup) -> FiniteHeap:
    """The heap (x,y,z) -> x y^-1 z on a finite group."""
    op = ternary_from_fn(group.order, group.conj_heap)
    return FiniteHeap(op, source_group=group)


def heap_from_raw_table(op: TernaryOp) -> FiniteHeap:
    return FiniteHeap(op, source_group=None)


def group_from_heap(heap: FiniteHeap, e: int) -> FiniteGroup:
    """Recover the group with identity e via x*y = T(x,e,y)."""
    s = heap.size
    mul = [[heap.t(x, e, y) for y in range(s)] for x in range(s)]
    inv = [heap.t(e, x, e) for x in range(s)]
    from .groups import FiniteGroup as FG

    return FG(
        order=s,
        mul=tuple(tuple(r) for r in mul),
        inv=tuple(inv),
        identity=e,
        element_names=tuple(str(i) for i in range(s)),
    )


def affine_op(n: int, t: int, s: int) -> TernaryOp:
    """T(x,y,z) = t x + s y + (1-t-s) z on Z_n (generally not a heap)."""
    u = (1 - t - s) % n
    return ternary_from_fn(n, lambda x, y, z: (t * x + s * y + u * z) % n)


def extension_tsd(heap_op: TernaryOp, coeffs: AbelianGroup, cochain_table) -> TernaryOp:
    """Extend a ternary op on X by a cochain into an op on X x A:
    ((x,a),(y,b),(z,c)) -> (T(x,y,z), a + psi(x,y,z)).

    cochain_table maps (x,y,z) to an element tuple of coeffs.
    """
    sx = heap_op.carrier_size
    elems = coeffs.elements()
    sa = len(elems)
    if sx * sa > 64:
        raise HeapError("extension carrier too large (%d)" % (sx * sa))
    index_of = {a: i for i, a in enumerate(elems)}

    def fn(p, q, r):
        x, a = divmod(p, sa)
        y, b = divmod(q, sa)
        z, c = divmod(r, sa)
        tx = heap_op(x, y, z)
        ta = coeffs.add(elems[a], cochain_table[(x, y, z)])
        return tx * sa + index_of[ta]

    return ternary_from_fn(sx * sa, fn)
