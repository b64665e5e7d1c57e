"""Finite lattice structure theory.

Lattice axioms, (semi)distributivity, join-irreducibles, congruences, the
congruence lattice and the forcing poset of join-irreducible congruences.
Meet/join tables are dense numpy arrays; orders are bitmask rows as in
``poset``.
"""

from __future__ import annotations

import json

import numpy as np

from .poset import Poset, bits, covers_from_up, poset_isos

__all__ = [
    "NotALattice",
    "FinLattice",
    "Congruence",
    "principal_congruence",
    "congruence_join",
    "all_congruences",
    "congruence_lattice",
    "brute_force_congruences",
    "forcing_poset",
    "is_congruence_uniform",
    "lattice_isomorphic",
]


class NotALattice(Exception):
    def __init__(self, a, b, kind):
        super().__init__(f"elements {a} and {b} have no {kind}")
        self.pair = (a, b)
        self.kind = kind


class FinLattice:
    __slots__ = ("n", "up", "meet", "join", "labels", "_down")

    def __init__(self, up, meet, join, labels):
        object.__setattr__(self, "n", len(up))
        object.__setattr__(self, "up", tuple(int(m) for m in up))
        meet = np.asarray(meet, dtype=np.int32)
        join = np.asarray(join, dtype=np.int32)
        meet.setflags(write=False)
        join.setflags(write=False)
        object.__setattr__(self, "meet", meet)
        object.__setattr__(self, "join", join)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "_down", None)

    def __setattr__(self, name, value):
        raise AttributeError("FinLattice is immutable")

    @classmethod
    def from_order(cls, up, labels=None):
        """Build a lattice from an order relation; raises NotALattice.

        ``up`` may be a Poset or a sequence of up-set bitmasks.
        """
        if isinstance(up, Poset):
            if labels is None:
                labels = up.labels
            up = up.up
        up = [int(m) for m in up]
        n = len(up)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if n == 0:
            raise NotALattice(None, None, "bottom (empty order)")
        Poset(labels, up)  # validates the order axioms

        down = [1 << i for i in range(n)]
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        # work along a linear extension so lub = lowest set bit, glb = highest
        order = sorted(range(n), key=lambda i: bin(down[i]).count("1"))
        new_of_old = [0] * n
        for k, i in enumerate(order):
            new_of_old[i] = k

        def translate(mask):
            out = 0
            for j in bits(mask):
                out |= 1 << new_of_old[j]
            return out

        up2 = [translate(up[order[k]]) for k in range(n)]
        dn2 = [translate(down[order[k]]) for k in range(n)]
        meet = np.zeros((n, n), dtype=np.int32)
        join = np.zeros((n, n), dtype=np.int32)
        for a in range(n):
            for b in range(a, n):
                m = up2[a] & up2[b]
                if m == 0:
                    raise NotALattice(labels[order[a]], labels[order[b]], "join")
                g = (m & -m).bit_length() - 1
                if m & ~up2[g]:
                    raise NotALattice(labels[order[a]], labels[order[b]], "join")
                join[order[a], order[b]] = join[order[b], order[a]] = order[g]
                m = dn2[a] & dn2[b]
                if m == 0:
                    raise NotALattice(labels[order[a]], labels[order[b]], "meet")
                g = m.bit_length() - 1
                if m & ~dn2[g]:
                    raise NotALattice(labels[order[a]], labels[order[b]], "meet")
                meet[order[a], order[b]] = meet[order[b], order[a]] = order[g]
        return cls(up, meet, join, labels)

    # -- order queries -----------------------------------------------------

    def leq(self, a, b):
        return bool((self.up[a] >> b) & 1)

    def down(self):
        if self._down is None:
            dn = [0] * self.n
            for i in range(self.n):
                for j in bits(self.up[i]):
                    dn[j] |= 1 << i
            object.__setattr__(self, "_down", tuple(dn))
        return self._down

    def bottom(self):
        for i in range(self.n):
            if self.up[i] == (1 << self.n) - 1:
                return i
        raise AssertionError("lattice without bottom")

    def top(self):
        for i in range(self.n):
            if self.up[i] == 1 << i:
                return i
        raise AssertionError("lattice without top")

    def covers(self):
        return tuple(covers_from_up(self.up))

    def cover_pairs(self):
        cov = self.covers()
        return [(i, j) for i in range(self.n) for j in bits(cov[i])]

    def to_poset(self):
        return Poset(self.labels, self.up, _checked=True)

    def opposite(self):
        """The order-dual lattice: meets and joins exchanged."""
        return FinLattice(self.down(), self.join, self.meet, self.labels)

    def join_of(self, elems):
        acc = self.bottom()
        for e in elems:
            acc = int(self.join[acc, e])
        return acc

    def meet_of(self, elems):
        acc = self.top()
        for e in elems:
            acc = int(self.meet[acc, e])
        return acc

    def __eq__(self, other):
        if not isinstance(other, FinLattice):
            return NotImplemented
        return self.up == other.up and self.labels == other.labels

    def __hash__(self):
        return hash((self.up, self.labels))

    def __repr__(self):
        return f"FinLattice(n={self.n})"

    # -- structural predicates ----------------------------------------------

    def is_distributive(self):
        M, J = self.meet, self.join
        for a in range(self.n):
            lhs = M[a][J]
            ma = M[a]
            rhs = J[ma[:, None], ma[None, :]]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_semidistributive(self):
        M, J = self.meet, self.join
        for a in range(self.n):
            ja = J[a]
            eq = ja[:, None] == ja[None, :]
            if not (~eq | (ja[M] == ja[:, None])).all():
                return False
            ma = M[a]
            eq = ma[:, None] == ma[None, :]
            if not (~eq | (ma[J] == ma[:, None])).all():
                return False
        return True

    def join_irreducibles(self):
        """Elements with exactly one lower cover, as (element, its cover)."""
        cov = self.covers()
        below = [[] for _ in range(self.n)]
        for a in range(self.n):
            for b in bits(cov[a]):
                below[b].append(a)
        return [(x, lows[0]) for x, lows in enumerate(below) if len(lows) == 1]

    def meet_irreducibles(self):
        """Elements with exactly one upper cover, as (element, its cover)."""
        cov = self.covers()
        return [(x, next(bits(cov[x]))) for x in range(self.n) if bin(cov[x]).count("1") == 1]

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "size": self.n,
            "leq": [[i, j] for i in range(self.n) for j in bits(self.up[i])],
        }

    @classmethod
    def from_json(cls, data, labels=None):
        if isinstance(data, str):
            data = json.loads(data)
        n = data["size"]
        up = [1 << i for i in range(n)]
        for i, j in data["leq"]:
            up[i] |= 1 << j
        return cls.from_order(up, labels=labels)

    def to_dot(self, name="lattice"):
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for i, j in self.cover_pairs():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


# -- congruences -------------------------------------------------------------


class Congruence:
    """A lattice congruence stored as a canonical partition.

    ``block[i]`` is the least element of i's block, so equality of
    congruences is equality of tuples.
    """

    __slots__ = ("block",)

    def __init__(self, block):
        object.__setattr__(self, "block", tuple(int(b) for b in block))

    def __setattr__(self, name, value):
        raise AttributeError("Congruence is immutable")

    @property
    def n(self):
        return len(self.block)

    def collapses(self, a, b):
        return self.block[a] == self.block[b]

    def num_blocks(self):
        return len(set(self.block))

    def blocks(self):
        out = {}
        for i, b in enumerate(self.block):
            out.setdefault(b, []).append(i)
        return [out[k] for k in sorted(out)]

    def refines(self, other):
        """self <= other in the congruence lattice (every block within a block)."""
        ob = other.block
        return all(ob[i] == ob[self.block[i]] for i in range(len(ob)))

    def is_discrete(self):
        return self.block == tuple(range(len(self.block)))

    def is_full(self):
        return all(b == 0 for b in self.block)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.block == other.block

    def __hash__(self):
        return hash(self.block)

    def __repr__(self):
        return "Congruence(" + "|".join(",".join(map(str, blk)) for blk in self.blocks()) + ")"


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def to_congruence(self):
        n = len(self.parent)
        root_min = {}
        for i in range(n):
            r = self.find(i)
            if r not in root_min or i < root_min[r]:
                root_min[r] = i
        return Congruence([root_min[self.find(i)] for i in range(n)])


def principal_congruence(L, a, b):
    """Smallest congruence of L identifying a and b.

    Union-find fixpoint: whenever x ~ y is merged, (x^c, y^c) and
    (x v c, y v c) are merged for every c.
    """
    n = L.n
    uf = _UnionFind(n)
    queue = []
    if uf.union(a, b):
        queue.append((a, b))
    M, J = L.meet, L.join
    while queue:
        x, y = queue.pop()
        mx, my = M[x], M[y]
        jx, jy = J[x], J[y]
        for c in range(n):
            u, v = int(mx[c]), int(my[c])
            if uf.find(u) != uf.find(v):
                uf.union(u, v)
                queue.append((u, v))
            u, v = int(jx[c]), int(jy[c])
            if uf.find(u) != uf.find(v):
                uf.union(u, v)
                queue.append((u, v))
    return uf.to_congruence()


def congruence_join(c1, c2):
    """Join in the congruence lattice = transitive closure of the union."""
    n = c1.n
    uf = _UnionFind(n)
    for i in range(n):
        uf.union(i, c1.block[i])
        uf.union(i, c2.block[i])
    return uf.to_congruence()


def _congruence_sort_key(c):
    return (-c.num_blocks(), c.block)


def all_congruences(L):
    """Every congruence of L, via join-closure of cover principal congruences."""
    principals = set()
    for a, b in L.cover_pairs():
        principals.add(principal_congruence(L, a, b))
    discrete = Congruence(range(L.n))
    found = {discrete} | principals
    frontier = list(found)
    while frontier:
        theta = frontier.pop()
        for g in principals:
            j = congruence_join(theta, g)
            if j not in found:
                found.add(j)
                frontier.append(j)
    return sorted(found, key=_congruence_sort_key)


def congruence_lattice(L):
    """The lattice of all congruences of L, presented in the coarsening order.

    The element set is exactly all_congruences(L); x <= y here means y
    refines x, so the full congruence sits at the bottom and the discrete
    one at the top.  This dual presentation is the one under which the
    congruence lattice of the Tamari lattice matches the dominance order
    on Dyck paths; the refinement-ordered lattice is its opposite, the
    ideal lattice of the forcing poset.
    """
    congs = all_congruences(L)
    k = len(congs)
    up = [0] * k
    for i, ci in enumerate(congs):
        for j, cj in enumerate(congs):
            if cj.refines(ci):
                up[i] |= 1 << j
    labels = ["|".join(",".join(map(str, blk)) for blk in c.blocks()) for c in congs]
    return FinLattice.from_order(up, labels=labels)


def _set_partitions(n):
    """Restricted-growth strings: every partition of {0..n-1} as a block-id list."""
    if n == 0:
        yield []
        return
    a = [0] * n
    while True:
        yield list(a)
        j = n - 1
        while j > 0 and a[j] > max(a[:j]):
            j -= 1
        if j == 0:
            return
        a[j] += 1
        for k in range(j + 1, n):
            a[k] = 0


def brute_force_congruences(L):
    """Oracle: filter all set partitions for meet/join compatibility.

    Only sensible for small lattices (|L| <= 9 or so).
    """
    if L.n > 10:
        raise ValueError("brute force congruence oracle limited to |L| <= 10")
    M, J = L.meet, L.join
    n = L.n
    out = []
    for rgs in _set_partitions(n):
        ok = True
        for x in range(n):
            for y in range(x + 1, n):
                if rgs[x] != rgs[y]:
                    continue
                for c in range(n):
                    if rgs[M[x, c]] != rgs[M[y, c]] or rgs[J[x, c]] != rgs[J[y, c]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            first = {}
            canon = []
            for i, b in enumerate(rgs):
                first.setdefault(b, i)
                canon.append(first[b])
            out.append(Congruence(canon))
    return sorted(set(out), key=_congruence_sort_key)


def _join_irreducible_principals(L):
    """Join-irreducible congruences with a generating cover for labelling."""
    gen = {}
    for a, b in L.cover_pairs():
        c = principal_congruence(L, a, b)
        gen.setdefault(c, (a, b))
    cands = sorted(gen, key=_congruence_sort_key)
    discrete = Congruence(range(L.n))
    ji = []
    for theta in cands:
        acc = discrete
        for sigma in cands:
            if sigma != theta and sigma.refines(theta):
                acc = congruence_join(acc, sigma)
        if acc != theta:
            ji.append(theta)
    return ji, gen


def forcing_poset(L):
    """Join-irreducible congruences of L ordered by refinement.

    Con(L) is the lattice of order ideals of this poset (Birkhoff); for
    congruence-uniform lattices the elements biject with both the
    join-irreducible elements and the cover classes of L.
    """
    ji, gen = _join_irreducible_principals(L)
    up = [0] * len(ji)
    for i, ci in enumerate(ji):
        for j, cj in enumerate(ji):
            if ci.refines(cj):
                up[i] |= 1 << j
    labels = ["cg({},{})".format(*gen[c]) for c in ji]
    return Poset(labels, up)


def is_congruence_uniform(L):
    """Both irreducible-element maps j -> cg(j*, j) biject onto JI congruences."""
    ji_congs, _ = _join_irreducible_principals(L)
    ji_set = set(ji_congs)

    for pairs in (
        [(low, x) for x, low in L.join_irreducibles()],
        [(x, upp) for x, upp in L.meet_irreducibles()],
    ):
        images = [principal_congruence(L, a, b) for a, b in pairs]
        if len(set(images)) != len(images):
            return False
        if set(images) != ji_set:
            return False
    return True


def lattice_isomorphic(L, M):
    """A lattice isomorphism L -> M as a list, or None.

    Searches order isomorphisms between the join-irreducible subposets and
    lifts via joins (any lattice iso is determined by its JI restriction),
    then verifies the lift against both meet and join tables.
    """
    if L.n != M.n:
        return None
    if L.n == 1:
        return [0]
    jiL = [x for x, _ in L.join_irreducibles()]
    jiM = [x for x, _ in M.join_irreducibles()]
    if len(jiL) != len(jiM):
        return None

    def restrict(lat, elems):
        pos = {e: k for k, e in enumerate(elems)}
        up = []
        for e in elems:
            m = 0
            for f in elems:
                if lat.leq(e, f):
                    m |= 1 << pos[f]
            up.append(m)
        return Poset([lat.labels[e] for e in elems], up, _checked=True)

    PL, PM = restrict(L, jiL), restrict(M, jiM)
    dnL = L.down()
    for phi in poset_isos(PL, PM):
        img = [0] * L.n
        ok = True
        seen = set()
        for x in range(L.n):
            y = M.bottom()
            for k, j in enumerate(jiL):
                if (dnL[x] >> j) & 1:
                    y = int(M.join[y, jiM[phi[k]]])
            if y in seen:
                ok = False
                break
            seen.add(y)
            img[x] = y
        if not ok:
            continue
        arr = np.array(img, dtype=np.int32)
        if np.array_equal(arr[L.meet], M.meet[arr[:, None], arr[None, :]]) and np.array_equal(
            arr[L.join], M.join[arr[:, None], arr[None, :]]
        ):
            return img
    return None
