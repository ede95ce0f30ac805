"""Finite groups and finite abelian coefficient groups, table-driven.

Elements are dense indices 0..order-1.  The canonical constructors are
cyclic and dihedral groups; arbitrary groups load from multiplication
tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    mul[a][b] is the index of a*b, inv[a] the index of a^-1.
    """

    order: int
    mul: tuple
    inv: tuple
    identity: int
    element_names: tuple

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise GroupError("group order must be positive")
        e = self.identity
        for a in range(n):
            if self.mul[e][a] != a or self.mul[a][e] != a:
                raise GroupError("identity is not two-sided")
            if self.mul[self.inv[a]][a] != e:
                raise GroupError("inverse table is wrong at %d" % a)
        # associativity: cheap for the orders used here (<= ~24)
        mul = self.mul
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                for c in range(n):
                    if mul[ab][c] != mul[a][mul[b][c]]:
                        raise GroupError("multiplication is not associative")

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj_heap(self, x: int, y: int, z: int) -> int:
        """The group heap operation x y^-1 z."""
        return self.mul[self.mul[x][self.inv[y]]][z]

    def name(self, a: int) -> str:
        return self.element_names[a]

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(self.order)
        )

    def center(self) -> list:
        return [
            a
            for a in range(self.order)
            if all(self.mul[a][b] == self.mul[b][a] for b in range(self.order))
        ]


def _group_from_mul(mul, names):
    n = len(mul)
    identity = None
    for e in range(n):
        if all(mul[e][a] == a and mul[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupError("no identity element in table")
    inv = []
    for a in range(n):
        found = [b for b in range(n) if mul[a][b] == identity]
        if len(found) != 1:
            raise GroupError("element %d has no unique inverse" % a)
        inv.append(found[0])
    return FiniteGroup(
        order=n,
        mul=tuple(tuple(row) for row in mul),
        inv=tuple(inv),
        identity=identity,
        element_names=tuple(names),
    )


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n in multiplicative notation; element 1 is the generator."""
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + ["z" if j == 1 else "z^%d" % j for j in range(1, n)]
    return _group_from_mul(mul, names[:n])


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations z^j (indices 0..n-1) and
    reflections a z^j (indices n..2n-1), with a z a = z^-1."""
    if n < 1:
        raise GroupError("dihedral parameter must be >= 1")

    def mulfn(x, y):
        fx, jx = divmod(x, n)
        fy, jy = divmod(y, n)
        # (a^fx z^jx)(a^fy z^jy); push z^jx through a^fy
        j = (jy + (jx if fy == 0 else -jx)) % n
        return ((fx + fy) % 2) * n + j

    mul = [[mulfn(x, y) for y in range(2 * n)] for x in range(2 * n)]
    names = []
    for f in ("", "a"):
        for j in range(n):
            if f == "" and j == 0:
                names.append("1")
            elif j == 0:
                names.append("a")
            elif j == 1:
                names.append(f + "z")
            else:
                names.append(f + "z^%d" % j)
    return _group_from_mul(mul, names)


def group_from_table_text(text: str) -> FiniteGroup:
    """Parse a multiplication table, one row per line, space separated."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise GroupError("line %d: not an integer row" % lineno)
    n = len(rows)
    if n == 0:
        raise GroupError("empty multiplication table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise GroupError("row %d has %d entries, expected %d" % (i, len(row), n))
        if any(not (0 <= v < n) for v in row):
            raise GroupError("row %d has out-of-range entries" % i)
    return _group_from_mul(rows, ["g%d" % i for i in range(n)])


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group Z_d1 + ... + Z_dr, elements are tuples."""

    invariant_factors: tuple

    def __post_init__(self):
        if any(d < 1 for d in self.invariant_factors):
            raise GroupError("invariant factors must be positive")

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def zero(self) -> tuple:
        return tuple(0 for _ in self.invariant_factors)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: tuple) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def sub(self, a: tuple, b: tuple) -> tuple:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: tuple) -> tuple:
        return tuple((k * x) % d for x, d in zip(a, self.invariant_factors))

    def elements(self):
        def rec(i):
            if i == len(self.invariant_factors):
                yield ()
                return
            for rest in rec(i + 1):
                for v in range(self.invariant_factors[i]):
                    yield (v,) + rest

        return list(rec(0))

    def name(self, a: tuple) -> str:
        if all(x == 0 for x in a):
            return "e"
        parts = []
        for i, x in enumerate(a):
            if x == 0:
                continue
            g = "g" if len(self.invariant_factors) == 1 else "g%d" % (i + 1)
            parts.append(g if x == 1 else "%s^%d" % (g, x))
        return "*".join(parts)


def cyclic_coefficients(n: int) -> AbelianGroup:
    return AbelianGroup((n,))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse `cyclic:n`, `dihedral:n`, or `table:<path>`."""
    if spec.startswith("cyclic:"):
        return cyclic_group(int(spec.split(":", 1)[1]))
    if spec.startswith("dihedral:"):
        return dihedral_group(int(spec.split(":", 1)[1]))
    if spec.startswith("table:"):
        path = spec.split(":", 1)[1]
        with open(path) as fh:
            return group_from_table_text(fh.read())
    raise GroupError("unknown group spec %r" % spec)
