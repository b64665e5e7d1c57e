"""The Catalan-family lattices.

Dyck paths under pointwise height dominance, the Tamari lattice of binary
trees under rotation, and a symbolic model of the torsion classes of the
linearly oriented type-A path algebra on interval supports.
"""

from __future__ import annotations

from functools import lru_cache

from .lattice import FinLattice
from .poset import Ideal, Poset, interval_poset

__all__ = [
    "DyckPath",
    "dyck_paths",
    "dyck_lattice",
    "dyck_to_ideal",
    "binary_trees",
    "tree_to_parens",
    "parens_to_tree",
    "tamari_lattice",
    "typeA_torsion_classes",
    "typeA_torsion_lattice",
    "brick_forcing_poset",
    "rel_star_poset",
]


def _heights(steps):
    h = 0
    out = [0]
    for s in steps:
        h += 1 if s == "U" else -1
        out.append(h)
    return tuple(out)


class DyckPath:
    """A balanced U/D path of 2n steps staying at nonnegative height."""

    __slots__ = ("steps", "heights")

    def __init__(self, steps):
        steps = str(steps)
        if any(s not in "UD" for s in steps):
            raise ValueError("steps must consist of 'U' and 'D'")
        h = _heights(steps)
        if min(h) < 0 or h[-1] != 0:
            raise ValueError(f"not a Dyck path: {steps!r}")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "heights", h)

    def __setattr__(self, name, value):
        raise AttributeError("DyckPath is immutable")

    @property
    def n(self):
        return len(self.steps) // 2

    def dominates(self, other):
        return all(a >= b for a, b in zip(self.heights, other.heights))

    def __le__(self, other):
        return other.dominates(self)

    def __eq__(self, other):
        if not isinstance(other, DyckPath):
            return NotImplemented
        return self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return f"DyckPath({self.steps!r})"


def dyck_paths(n):
    """All Dyck paths with n up-steps, in a fixed deterministic order."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = []

    def build(prefix, ups, downs):
        if ups == n and downs == n:
            out.append("".join(prefix))
            return
        if ups < n:
            prefix.append("U")
            build(prefix, ups + 1, downs)
            prefix.pop()
        if downs < ups:
            prefix.append("D")
            build(prefix, ups, downs + 1)
            prefix.pop()

    build([], 0, 0)
    return sorted(out, key=_heights)


def dyck_lattice(n):
    """Dyck paths with n up-steps under pointwise height dominance.

    Meets and joins are the pointwise min/max of the height profiles; the
    tables produced from the order are checked against that description.
    """
    paths = dyck_paths(n)
    hs = [_heights(s) for s in paths]
    k = len(paths)
    index = {h: i for i, h in enumerate(hs)}
    up = []
    for i in range(k):
        m = 0
        for j in range(k):
            if all(a <= b for a, b in zip(hs[i], hs[j])):
                m |= 1 << j
        up.append(m)
    L = FinLattice.from_order(up, labels=paths)
    for a in range(k):
        for b in range(a, k):
            lo = tuple(min(x, y) for x, y in zip(hs[a], hs[b]))
            hi = tuple(max(x, y) for x, y in zip(hs[a], hs[b]))
            assert L.meet[a, b] == index[lo] and L.join[a, b] == index[hi]
    return L


def dyck_to_ideal(path, n=None, target=None):
    """Order ideal of interval_poset(n-1) formed by the boxes under the path.

    The box [i, j] (1 <= i <= j <= n-1) lies strictly between the zigzag
    and the path exactly when the height at step i+j is at least j-i+2.
    This is a bijection onto the ideals, and an order isomorphism from the
    dominance order (checked exhaustively in the tests).
    """
    if not isinstance(path, DyckPath):
        path = DyckPath(path)
    if n is None:
        n = path.n
    if path.n != n:
        raise ValueError("path has wrong semilength")
    if target is None:
        target = interval_poset(n - 1) if n >= 2 else Poset.antichain(0)
    h = path.heights
    mask = 0
    for k, lab in enumerate(target.labels):
        i, j = lab.strip("[]").split(",")
        i, j = int(i), int(j)
        if h[i + j] >= j - i + 2:
            mask |= 1 << k
    return Ideal(target, mask)


# -- binary trees and the Tamari lattice -------------------------------------


@lru_cache(maxsize=None)
def binary_trees(n):
    """All binary trees with n internal nodes (leaf = None, node = (l, r))."""
    if n == 0:
        return (None,)
    out = []
    for k in range(n):
        for l in binary_trees(k):
            for r in binary_trees(n - 1 - k):
                out.append((l, r))
    return tuple(out)


def tree_to_parens(t):
    """The classical bijection onto balanced strings: (l, r) -> '(' l ')' r."""
    return "" if t is None else "(" + tree_to_parens(t[0]) + ")" + tree_to_parens(t[1])


def parens_to_tree(s):
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(s) or s[pos] != "(":
            return None
        pos += 1
        l = parse()
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"unbalanced parenthesis string {s!r}")
        pos += 1
        r = parse()
        return (l, r)

    t = parse()
    if pos != len(s):
        raise ValueError(f"trailing characters in {s!r}")
    return t


def _rotations_up(t):
    """All trees obtained by one rotation ((A,B),C) -> (A,(B,C)) somewhere."""
    out = []
    if t is None:
        return out
    l, r = t
    if l is not None:
        a, b = l
        out.append((a, (b, r)))
    for l2 in _rotations_up(l):
        out.append((l2, r))
    for r2 in _rotations_up(r):
        out.append((l, r2))
    return out


def tamari_lattice(n):
    """Binary trees with n internal nodes; covers are single rotations.

    The order is the transitive closure of the rotation covers, computed by
    breadth-first search; the result is validated against the lattice
    axioms by construction of the meet/join tables.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    trees = sorted(binary_trees(n), key=tree_to_parens)
    index = {t: i for i, t in enumerate(trees)}
    succ = [[index[t2] for t2 in _rotations_up(t)] for t in trees]
    k = len(trees)
    up = []
    for i in range(k):
        reach = 1 << i
        stack = [i]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if not (reach >> y) & 1:
                    reach |= 1 << y
                    stack.append(y)
        up.append(reach)
    return FinLattice.from_order(up, labels=[tree_to_parens(t) for t in trees])


# -- symbolic type-A torsion classes ------------------------------------------


def _interval_index(n):
    ivs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    return ivs, {iv: k for k, iv in enumerate(ivs)}


def typeA_torsion_classes(n):
    """Subsets of the interval modules closed under quotients and extensions.

    Quotients of the interval [i,j] are the prefixes [i,k]; the extension of
    adjacent intervals [i,j], [j+1,l] has middle term [i,l].  Returned as
    bitmasks over the intervals in lexicographic order.
    """
    if not 1 <= n <= 6:
        raise ValueError("symbolic type-A model limited to 1 <= n <= 6")
    ivs, idx = _interval_index(n)
    k = len(ivs)
    quot_mask = []
    for (i, j) in ivs:
        m = 0
        for kk in range(i, j + 1):
            m |= 1 << idx[(i, kk)]
        quot_mask.append(m)
    ext_rule = []
    for (i, j) in ivs:
        for l in range(j + 1, n + 1):
            ext_rule.append((idx[(i, j)], idx[(j + 1, l)], idx[(i, l)]))

    def closure(mask):
        while True:
            new = mask
            for t in range(k):
                if (new >> t) & 1:
                    new |= quot_mask[t]
            for a, b, c in ext_rule:
                if (new >> a) & 1 and (new >> b) & 1:
                    new |= 1 << c
            if new == mask:
                return mask
            mask = new

    gens = [closure(1 << t) for t in range(k)]
    found = {0}
    frontier = [0]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            j = closure(cur | g)
            if j not in found:
                found.add(j)
                frontier.append(j)
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def typeA_torsion_lattice(n):
    """The lattice of symbolic type-A torsion classes, ordered by inclusion."""
    classes = typeA_torsion_classes(n)
    ivs, _ = _interval_index(n)
    k = len(classes)
    up = []
    for a in range(k):
        m = 0
        for b in range(k):
            if classes[a] & ~classes[b] == 0:
                m |= 1 << b
        up.append(m)
    labels = []
    for c in classes:
        mem = [f"M[{ivs[t][0]},{ivs[t][1]}]" for t in range(len(ivs)) if (c >> t) & 1]
        labels.append("{" + ",".join(mem) + "}")
    return FinLattice.from_order(up, labels=labels)


def brick_forcing_poset(n):
    """Intervals of [n] under reverse containment."""
    return interval_poset(n).opposite()


def rel_star_poset(n):
    """Intervals [a,b], a < b, of a total order with n elements, by containment.

    Identified with interval_poset(n-1) via [a,b] -> [a,b-1].
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return interval_poset(n - 1)
