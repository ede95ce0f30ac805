"""Fundamental heap presentations, Tietze simplification, abelianization.

Words are tuples of nonzero signed 1-based generator indices; a
presentation is generators (names) plus relator words.  Abelianization
goes through an exact integer Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .diagram import BoundaryStructure, RibbonDiagram, boundary


class PresentationError(ValueError):
    pass


def free_reduce(word: Sequence[int]) -> tuple:
    out: List[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> tuple:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(word))


@dataclass
class GroupPresentation:
    generators: List[str]
    relators: List[tuple]

    def __post_init__(self):
        n = len(self.generators)
        for rel in self.relators:
            if any(x == 0 or abs(x) > n for x in rel):
                raise PresentationError("relator letter out of range")

    def copy(self) -> "GroupPresentation":
        return GroupPresentation(list(self.generators), [tuple(r) for r in self.relators])

    def __str__(self) -> str:
        return format_presentation(self)


def fundamental_presentation(d: RibbonDiagram) -> GroupPresentation:
    """Generators are the boundary arcs; each crossing contributes the two
    relations out = in * u^-1 * v for its two under-passages."""
    b = boundary(d)
    gens = list(b.arc_names)
    rels = []
    for ev in b.events:
        for a_in, a_out in ((ev.in_p, ev.out_p), (ev.in_q, ev.out_q)):
            # relator: in * u^-1 * v * out^-1
            word = free_reduce(
                (a_in + 1, -(ev.u_arc + 1), ev.v_arc + 1, -(a_out + 1))
            )
            if word:
                rels.append(word)
    return GroupPresentation(gens, rels)


def _substitute(word, gen, repl):
    """Replace generator index gen (1-based) by the word repl."""
    out = []
    for letter in word:
        if letter == gen:
            out.extend(repl)
        elif letter == -gen:
            out.extend(invert_word(repl))
        else:
            out.append(letter)
    return free_reduce(out)


def _try_expose(rels, gen):
    """Rewrite every other generator y as gen * beta_y; succeeds when all
    relators become gen-free after cyclic reduction (then gen generates a
    free factor and the remaining letters denote the new basis)."""
    new = []
    for rel in rels:
        w = []
        for letter in rel:
            g = abs(letter)
            if g == gen:
                w.append(letter)
            elif letter > 0:
                w.extend((gen, g))
            else:
                w.extend((-g, -gen))
        w = cyclic_reduce(w)
        if any(abs(x) == gen for x in w):
            return None
        new.append(w)
    return new


def tietze_simplify(p: GroupPresentation, budget: int = 0) -> GroupPresentation:
    """Eliminate generators defined by relators in which they occur once;
    between eliminations, change basis to ribbon terms (y -> x * beta_y)
    whenever that frees a generator from every relator.

    Deterministic (shortest eligible relator, lowest generator index);
    never increases the generator count.  budget <= 0 means the default
    of 10 passes per generator.
    """
    gens = list(p.generators)
    rels = [cyclic_reduce(r) for r in p.relators]
    if budget <= 0:
        budget = 10 * max(1, len(gens))
    for _ in range(budget):
        rels = sorted(set(r for r in (cyclic_reduce(r) for r in rels) if r))
        # find a relator with a generator occurring exactly once, power 1
        best = None
        for rel in sorted(rels, key=lambda r: (len(r), r)):
            counts: Dict[int, int] = {}
            for letter in rel:
                counts[abs(letter)] = counts.get(abs(letter), 0) + 1
            for letter in rel:
                g = abs(letter)
                if counts[g] == 1:
                    best = (rel, g)
                    break
            if best:
                break
        if best:
            rel, g = best
            # rotate so the relator reads g * w^-1 (or g^-1 * w)
            i = next(k for k, letter in enumerate(rel) if abs(letter) == g)
            rot = rel[i:] + rel[:i]
            if rot[0] == g:
                repl = invert_word(rot[1:])  # g = (rest)^-1
            else:
                repl = tuple(rot[1:])  # g^-1 * rest = 1 -> g = rest
            rels.remove(rel)
            rels = [_substitute(r, g, repl) for r in rels]
            # drop the generator: renumber everything above g down by one
            del gens[g - 1]

            def shift(letter):
                a = abs(letter)
                s = 1 if letter > 0 else -1
                return s * (a - 1) if a > g else letter

            rels = [tuple(shift(x) for x in r) for r in rels]
            continue
        # no elimination available: try to expose a free factor
        used = sorted({abs(x) for r in rels for x in r})
        exposed = None
        for g in used:
            new = _try_expose(rels, g)
            if new is not None:
                exposed = new
                break
        if exposed is None:
            break
        rels = exposed
    rels = sorted(set(r for r in (cyclic_reduce(r) for r in rels) if r))
    return GroupPresentation(gens, rels)


def split_free_factor(p: GroupPresentation) -> Tuple[int, GroupPresentation]:
    """Peel off generators that appear in no relator (a syntactic free
    factor); returns (count, remaining presentation)."""
    used = set()
    for rel in p.relators:
        for letter in rel:
            used.add(abs(letter))
    keep = [i for i in range(1, len(p.generators) + 1) if i in used]
    remap = {old: new + 1 for new, old in enumerate(keep)}
    gens = [p.generators[i - 1] for i in keep]
    rels = [
        tuple((1 if x > 0 else -1) * remap[abs(x)] for x in rel) for rel in p.relators
    ]
    return len(p.generators) - len(keep), GroupPresentation(gens, rels)


def smith_normal_form(rows: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal invariant factors d_1 | d_2 | ... of an integer matrix.

    Exact arithmetic; pivots chosen with minimal absolute value.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        # minimal nonzero entry in the remaining block
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        changed = True
        while changed:
            changed = False
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    for j in range(t, nc):
                        m[i][j] -= q * m[t][j]
                    if m[i][t] != 0:  # remainder smaller than pivot: swap up
                        m[t], m[i] = m[i], m[t]
                        changed = True
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    for i in range(t, nr):
                        m[i][j] -= q * m[i][t]
                    if m[t][j] != 0:
                        for i in range(t, nr):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        changed = True
        # divisibility: pivot must divide the rest of the block
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(t, nc):
                m[t][j] += m[bad][j]
            continue
        diag.append(abs(m[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple  # invariant factors d_1 | d_2 | ..., all >= 2

    def __str__(self):
        parts = ["Z"] * self.free_rank + ["Z_%d" % d for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    """Exponent-sum matrix reduced to Smith normal form."""
    n = len(p.generators)
    rows = []
    for rel in p.relators:
        row = [0] * n
        for letter in rel:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    if not rows or n == 0:
        return AbelianInvariants(n, ())
    diag = smith_normal_form(rows)
    diag = [d for d in diag if d != 0]
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(n - len(diag), torsion)


def abelian_invariants_of_factors(factors: Sequence[int]) -> tuple:
    """Divisibility-chain form of Z_{f1} + Z_{f2} + ... (an independent
    oracle for expected torsion, via the diagonal matrix)."""
    rows = []
    n = len(factors)
    for i, f in enumerate(factors):
        row = [0] * n
        row[i] = f
        rows.append(row)
    diag = smith_normal_form(rows)
    return tuple(d for d in diag if d > 1)


def count_presentation_homs(p: GroupPresentation, group) -> int:
    """Number of assignments of group elements to generators satisfying
    every relator (pruned depth-first enumeration)."""
    n = len(p.generators)
    order = group.order
    mul, inv, e = group.mul, group.inv, group.identity
    # relators checked as soon as their support is assigned
    by_last = [[] for _ in range(n + 1)]
    for rel in p.relators:
        support = max(abs(x) for x in rel) if rel else 0
        by_last[support].append(rel)

    def evaluate(rel, assign):
        acc = e
        for letter in rel:
            g = assign[abs(letter) - 1]
            acc = mul[acc][g if letter > 0 else inv[g]]
        return acc

    count = 0
    assign = [0] * n
    empty_bad = any(evaluate(r, assign) != e for r in by_last[0])
    if empty_bad:
        return 0

    def rec(i):
        nonlocal count
        if i == n:
            count += 1
            return
        for g in range(order):
            assign[i] = g
            if all(evaluate(r, assign) == e for r in by_last[i + 1]):
                rec(i + 1)

    rec(0)
    return count


# --- text format ----------------------------------------------------------


def format_presentation(p: GroupPresentation) -> str:
    """`gens: a b c` then one `rel:` line per relator, capitals inverse."""
    lines = ["gens: " + " ".join(p.generators)]
    for rel in p.relators:
        toks = []
        for letter in rel:
            name = p.generators[abs(letter) - 1]
            toks.append(name if letter > 0 else name.upper())
        lines.append("rel: " + " ".join(toks))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> GroupPresentation:
    gens: List[str] = []
    rels: List[tuple] = []
    index: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            gens = line[len("gens:") :].split()
            if any(g != g.lower() for g in gens):
                raise PresentationError("line %d: generator names must be lowercase" % lineno)
            index = {g: i + 1 for i, g in enumerate(gens)}
        elif line.startswith("rel:"):
            word = []
            for tok in line[len("rel:") :].split():
                name = tok.lower()
                if name not in index:
                    raise PresentationError("line %d: unknown generator %r" % (lineno, tok))
                word.append(index[name] if tok == name else -index[name])
            rels.append(tuple(word))
        else:
            raise PresentationError("line %d: expected gens: or rel:" % lineno)
    if not gens and rels:
        raise PresentationError("relator before generator list")
    return GroupPresentation(gens, rels)
