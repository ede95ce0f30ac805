"""2-cochains on group heaps with finite abelian coefficients.

Tables are dense over X^3.  Predicates (cocycle condition, reversibility,
additivity, nondegeneracy, separability, mutual distributivity) are
exhaustive scans with early exit and first-witness reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .groups import AbelianGroup, cyclic_group, dihedral_group, cyclic_coefficients
from .heaps import FiniteHeap, group_heap


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class Cochain2:
    """A map X^3 -> A, stored as a flat tuple of A-element tuples."""

    heap: FiniteHeap
    coeffs: AbelianGroup
    table: tuple

    def __post_init__(self):
        s = self.heap.size
        if len(self.table) != s ** 3:
            raise CochainError("cochain table must have |X|^3 entries")
        r = len(self.coeffs.invariant_factors)
        for v in self.table:
            if len(v) != r:
                raise CochainError("cochain value has wrong coefficient rank")

    def __call__(self, x: int, y: int, z: int) -> tuple:
        s = self.heap.size
        return self.table[(x * s + y) * s + z]

    def __add__(self, other: "Cochain2") -> "Cochain2":
        _require_compatible(self, other)
        add = self.coeffs.add
        return Cochain2(
            self.heap,
            self.coeffs,
            tuple(add(a, b) for a, b in zip(self.table, other.table)),
        )

    def __neg__(self) -> "Cochain2":
        neg = self.coeffs.neg
        return Cochain2(self.heap, self.coeffs, tuple(neg(a) for a in self.table))

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return self + (-other)

    def scaled(self, k: int) -> "Cochain2":
        sc = self.coeffs.scale
        return Cochain2(self.heap, self.coeffs, tuple(sc(k, a) for a in self.table))

    def is_zero(self) -> bool:
        zero = self.coeffs.zero()
        return all(v == zero for v in self.table)


def _require_compatible(a: Cochain2, b: Cochain2):
    if a.heap.size != b.heap.size or a.heap.op.table != b.heap.op.table:
        raise CochainError("cochains live on different heaps")
    if a.coeffs.invariant_factors != b.coeffs.invariant_factors:
        raise CochainError("cochains have different coefficient groups")


def cochain_from_fn(heap: FiniteHeap, coeffs: AbelianGroup, fn: Callable) -> Cochain2:
    s = heap.size
    tbl = []
    for x in range(s):
        for y in range(s):
            for z in range(s):
                tbl.append(fn(x, y, z))
    return Cochain2(heap, coeffs, tuple(tbl))


def zero_cochain(heap: FiniteHeap, coeffs: AbelianGroup) -> Cochain2:
    z = coeffs.zero()
    return Cochain2(heap, coeffs, tuple(z for _ in range(heap.size ** 3)))


def is_cocycle(psi: Cochain2, witness: bool = False):
    """The TSD 2-cocycle condition
    psi(x,y,z) - psi(T(x,u,v),T(y,u,v),T(z,u,v)) - psi(x,u,v) + psi(T(x,y,z),u,v) = 0
    over all 5-tuples."""
    heap, A = psi.heap, psi.coeffs
    t = heap.t
    s = heap.size
    zero = A.zero()
    add, sub = A.add, A.sub
    rng = range(s)
    for x in rng:
        for y in rng:
            for z in rng:
                xyz = t(x, y, z)
                pxyz = psi(x, y, z)
                for u in rng:
                    for v in rng:
                        val = sub(
                            add(pxyz, psi(xyz, u, v)),
                            add(psi(t(x, u, v), t(y, u, v), t(z, u, v)), psi(x, u, v)),
                        )
                        if val != zero:
                            return (False, (x, y, z, u, v)) if witness else False
    return (True, None) if witness else True


@dataclass(frozen=True)
class CocycleReport:
    is_cocycle: bool
    is_nondegenerate: bool
    is_reversible: bool
    is_additive: bool
    is_separable: bool
    witnesses: dict

    @property
    def is_ra(self) -> bool:
        return self.is_cocycle and self.is_reversible and self.is_additive


def _check_nondegenerate(psi):
    A = psi.coeffs
    zero = A.zero()
    s = psi.heap.size
    for x in range(s):
        for y in range(s):
            if psi(x, y, y) != zero:
                return False, (x, y)
    return True, None


def _check_reversible(psi):
    heap, A = psi.heap, psi.coeffs
    zero = A.zero()
    s = heap.size
    t = heap.t
    for w in range(s):
        for x in range(s):
            for y in range(s):
                if A.add(psi(w, x, y), psi(t(w, x, y), y, x)) != zero:
                    return False, (w, x, y)
    return True, None


def _check_additive(psi):
    heap, A = psi.heap, psi.coeffs
    s = heap.size
    t = heap.t
    for w in range(s):
        for x in range(s):
            for y in range(s):
                wxy = t(w, x, y)
                pwxy = psi(w, x, y)
                for z in range(s):
                    if A.add(pwxy, psi(wxy, y, z)) != psi(w, x, z):
                        return False, (w, x, y, z)
    return True, None


def _check_separable(psi):
    """Separability: psi is mutually distributive with the zero cocycle,
    i.e. psi(T(x,y,z),u,v) = psi(x,u,v) and psi(x,y,z) = psi(Tx,Ty,Tz .. u,v)."""
    heap = psi.heap
    s = heap.size
    t = heap.t
    rng = range(s)
    for x in rng:
        for u in rng:
            for v in rng:
                pxuv = psi(x, u, v)
                for y in rng:
                    for z in rng:
                        if psi(t(x, y, z), u, v) != pxuv:
                            return False, (x, y, z, u, v)
                        if psi(x, y, z) != psi(t(x, u, v), t(y, u, v), t(z, u, v)):
                            return False, (x, y, z, u, v)
    return True, None


def check_cocycle_conditions(psi: Cochain2) -> CocycleReport:
    cocy, w_cocy = is_cocycle(psi, witness=True)
    nondeg, w_nd = _check_nondegenerate(psi)
    rev, w_rev = _check_reversible(psi)
    add, w_add = _check_additive(psi)
    sep, w_sep = _check_separable(psi)
    # nondegenerate + additive forces reversible; cross-check the scans agree
    if nondeg and add and not rev:
        raise CochainError("inconsistent scan: nondegenerate+additive but not reversible")
    witnesses = {
        k: w
        for k, w in (
            ("cocycle", w_cocy),
            ("nondegenerate", w_nd),
            ("reversible", w_rev),
            ("additive", w_add),
            ("separable", w_sep),
        )
        if w is not None
    }
    return CocycleReport(cocy, nondeg, rev, add, sep, witnesses)


def is_mutually_distributive(psi1: Cochain2, psi2: Cochain2, witness: bool = False):
    """Both exchange identities

    psi1(x,y,z) + psi2(T(x,y,z),u,v) = psi2(x,u,v) + psi1(Txuv,Tyuv,Tzuv)
    psi2(x,y,z) + psi1(T(x,y,z),u,v) = psi1(x,u,v) + psi2(Txuv,Tyuv,Tzuv)
    """
    _require_compatible(psi1, psi2)
    heap, A = psi1.heap, psi1.coeffs
    s = heap.size
    t = heap.t
    add = A.add
    rng = range(s)
    for x in rng:
        for y in rng:
            for z in rng:
                xyz = t(x, y, z)
                p1 = psi1(x, y, z)
                p2 = psi2(x, y, z)
                for u in rng:
                    for v in rng:
                        tx, ty, tz = t(x, u, v), t(y, u, v), t(z, u, v)
                        if add(p1, psi2(xyz, u, v)) != add(psi2(x, u, v), psi1(tx, ty, tz)):
                            return (False, (x, y, z, u, v)) if witness else False
                        if add(p2, psi1(xyz, u, v)) != add(psi1(x, u, v), psi2(tx, ty, tz)):
                            return (False, (x, y, z, u, v)) if witness else False
    return (True, None) if witness else True


def coboundary(heap: FiniteHeap, coeffs: AbelianGroup, f) -> Cochain2:
    """delta f (x,y,z) = f(x) - f(T(x,y,z)) for a 1-cochain f: X -> A."""
    t = heap.t

    def fn(x, y, z):
        return coeffs.sub(f[x], f[t(x, y, z)])

    return cochain_from_fn(heap, coeffs, fn)


def phi_i(n: int, i: int) -> Cochain2:
    """Indicator cocycle on Z_n with A = Z_n: value g exactly on triples
    (x, z^j, z^{j+i})."""
    if not (1 <= i <= n - 1):
        raise CochainError("index must satisfy 1 <= i <= n-1")
    heap = group_heap(cyclic_group(n))
    A = cyclic_coefficients(n)

    def fn(x, y, z):
        return (1,) if (z - y) % n == i else (0,)

    return cochain_from_fn(heap, A, fn)


def psi_i_dihedral(n: int, i: int) -> Cochain2:
    """Indicator cocycle on D_n with A = Z_n: value g on rotation pairs
    (x, z^j, z^{j+i}) and reflection pairs (x, a z^{-j}, a z^{-j-i})."""
    if not (1 <= i <= n - 1):
        raise CochainError("index must satisfy 1 <= i <= n-1")
    heap = group_heap(dihedral_group(n))
    A = cyclic_coefficients(n)

    def fn(x, y, z):
        fy, jy = divmod(y, n)
        fz, jz = divmod(z, n)
        if fy == 0 and fz == 0 and (jz - jy) % n == i:
            return (1,)
        # a z^{-j} -> a z^{-j-i} reads z = y * z^{-i} in the a z^j chart
        if fy == 1 and fz == 1 and (jz - jy) % n == (-i) % n:
            return (1,)
        return (0,)

    return cochain_from_fn(heap, A, fn)


def _vec_combination(n: int, avec, family) -> Cochain2:
    if len(avec) != n:
        raise CochainError("coefficient vector must have length n")
    if avec[0] % n != 0:
        raise CochainError("a_0 must be 0")
    result = None
    for i in range(1, n):
        ai = avec[i] % n
        if ai == 0:
            continue
        term = family(n, i).scaled(ai)
        result = term if result is None else result + term
    if result is None:
        base = family(n, 1)
        return zero_cochain(base.heap, base.coeffs)
    return result


def phi_vec(n: int, avec) -> Cochain2:
    """Sum a_i * phi_i on Z_n; a_0 must be 0."""
    return _vec_combination(n, avec, phi_i)


def psi_vec(n: int, avec) -> Cochain2:
    """Sum a_i * psi_i on D_n; a_0 must be 0."""
    return _vec_combination(n, avec, psi_i_dihedral)


def additive_vector_predicate(n: int, avec) -> bool:
    """a_{k+l} = a_k + a_l for all k,l mod n (the RA criterion)."""
    return all(
        avec[(k + l) % n] % n == (avec[k] + avec[l]) % n
        for k in range(n)
        for l in range(n)
    )


def ring_cocycle(n: int, a: int, b: int) -> Cochain2:
    """psi(x,y,z) = (a x + b (z - y)) (z - y) on the additive heap Z_n."""
    heap = group_heap(cyclic_group(n))
    A = cyclic_coefficients(n)

    def fn(x, y, z):
        d = (z - y) % n
        return (((a * x + b * d) * d) % n,)

    return cochain_from_fn(heap, A, fn)


def is_labeled_coboundary(cochains, max_search=5) -> Optional[list]:
    """Search for a single 1-cochain f with delta f equal to every entry.

    Exhaustive over all f when |A|^|X| is small; returns f or None.
    """
    if not cochains:
        return None
    heap, A = cochains[0].heap, cochains[0].coeffs
    for psi in cochains[1:]:
        _require_compatible(cochains[0], psi)
    if A.order > max_search or heap.size > max_search:
        raise CochainError("carrier too large for exhaustive coboundary search")
    elems = A.elements()

    def rec(prefix):
        if len(prefix) == heap.size:
            df = coboundary(heap, A, prefix)
            if all(psi.table == df.table for psi in cochains):
                return list(prefix)
            return None
        for a in elems:
            got = rec(prefix + [a])
            if got is not None:
                return got
        return None

    return rec([])


def parse_cocycle_spec(spec: str, heap: FiniteHeap, coeffs: AbelianGroup) -> Cochain2:
    """CLI cocycle specs: zero, phi:n:i, phivec:n:a0,a1,..., psiD:n:i,
    ring:n:a,b, cobdy:<f-table-file>, table:<file>."""
    if spec == "zero":
        return zero_cochain(heap, coeffs)
    if spec.startswith("phi:"):
        _, n, i = spec.split(":")
        return phi_i(int(n), int(i))
    if spec.startswith("phivec:"):
        _, n, av = spec.split(":")
        return phi_vec(int(n), [int(t) for t in av.split(",")])
    if spec.startswith("psivec:"):
        _, n, av = spec.split(":")
        return psi_vec(int(n), [int(t) for t in av.split(",")])
    if spec.startswith("psiD:"):
        _, n, i = spec.split(":")
        return psi_i_dihedral(int(n), int(i))
    if spec.startswith("ring:"):
        _, n, ab = spec.split(":")
        a, b = (int(t) for t in ab.split(","))
        return ring_cocycle(int(n), a, b)
    if spec.startswith("cobdy:"):
        path = spec.split(":", 1)[1]
        f = _parse_one_cochain_file(path, heap, coeffs)
        return coboundary(heap, coeffs, f)
    if spec.startswith("table:"):
        path = spec.split(":", 1)[1]
        return _parse_cochain_table_file(path, heap, coeffs)
    raise CochainError("unknown cocycle spec %r" % spec)


def _parse_one_cochain_file(path, heap, coeffs):
    """One line per element: `x value...` with value componentwise ints."""
    f = [coeffs.zero()] * heap.size
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            x = int(toks[0])
            val = tuple(int(t) % d for t, d in zip(toks[1:], coeffs.invariant_factors))
            if not (0 <= x < heap.size):
                raise CochainError("line %d: element out of range" % lineno)
            f[x] = val
    return f


def _parse_cochain_table_file(path, heap, coeffs):
    """One line per triple: `x y z value...`."""
    s = heap.size
    tbl = {(x, y, z): coeffs.zero() for x in range(s) for y in range(s) for z in range(s)}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            x, y, z = (int(t) for t in toks[:3])
            if not all(0 <= v < s for v in (x, y, z)):
                raise CochainError("line %d: triple out of range" % lineno)
            tbl[(x, y, z)] = tuple(
                int(t) % d for t, d in zip(toks[3:], coeffs.invariant_factors)
            )
    return cochain_from_fn(heap, coeffs, lambda x, y, z: tbl[(x, y, z)])
