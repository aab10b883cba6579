"""Recognition of the finite diagram families and canonical templates.

The recognized families, in order, are A_n (n>=1), B_n (n>=3), D_n
(n>=4), E6, E7, E8, F4, H3, H4, and I2(m) for 4 <= m < infinity.  Any
connected labeled graph isomorphic to none of these classifies as
NotECoxeter.  Only the underlying labeled graph matters, never the
individual amplitudes.

Canonical template numbering (0-based), fixed here once and used by the
bundled corpus, by the relabeling maps, and by the adjacency tables:

* A_n: path 0-1-...-(n-1), all labels 3.
* B_n: path 0-...-(n-1), label 4 on the last edge {n-2, n-1}.
* D_n: path 0-...-(n-3) plus leaves n-2 and n-1 attached to node n-3.
* E6/E7/E8: path 0-...-(n-2) plus node n-1 attached to node 2, so the
  branch node has arms of sizes 2, n-4, and 1.
* F4: path 0-1-2-3 with labels 3, 4, 3.
* H3: path 0-1-2 with labels 5, 3.  H4: path 0-1-2-3 with labels 5, 3, 3.
* I2(m): nodes 0, 1 with one edge of label m.

Ties (a one-node graph, or a two-node graph with label 3) resolve to the
earliest family in the order above, so they are A_1 and A_2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotConnected
from .graphs import EGCMGraph

FAMILY_ORDER = ("A", "B", "D", "E6", "E7", "E8", "F4", "H3", "H4", "I2")


@dataclass(frozen=True)
class FamilyTag:
    """Recognition result: family, rank, I2 label, and relabeling map.

    `relabeling[v]` is the canonical template index of original node v.
    For NotECoxeter the relabeling is None.
    """

    family: str
    rank: int
    m: object = None
    relabeling: tuple = None

    @property
    def matched(self) -> bool:
        return self.family != "NotECoxeter"

    @property
    def name(self) -> str:
        if self.family == "NotECoxeter":
            return "NotECoxeter"
        if self.family == "I2":
            return f"I2({self.m})"
        if self.family in ("A", "B", "D"):
            return f"{self.family}{self.rank}"
        return self.family

    def to_canonical(self, nodes):
        return frozenset(self.relabeling[v] for v in nodes)

    def from_canonical(self, canon_nodes):
        inv = {c: v for v, c in enumerate(self.relabeling)}
        return frozenset(inv[c] for c in canon_nodes)


def _not_ecoxeter(n: int) -> FamilyTag:
    return FamilyTag(family="NotECoxeter", rank=n)


def _walk_path(g: EGCMGraph, start: int) -> list:
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in g.neighbors[cur] if u != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def _classify_path(g: EGCMGraph) -> FamilyTag:
    n = g.n
    ends = [v for v in range(n) if len(g.neighbors[v]) == 1]
    order = _walk_path(g, min(ends))
    seq = [g.label(a, b) for a, b in zip(order, order[1:])]

    if n == 2:
        m = seq[0]
        if m == 3:
            return FamilyTag("A", 2, relabeling=_relab(order, n))
        if m == math.inf or m < 4:
            return _not_ecoxeter(n)
        return FamilyTag("I2", 2, m=m, relabeling=_relab(order, n))

    if all(m == 3 for m in seq):
        return FamilyTag("A", n, relabeling=_relab(order, n))

    def oriented(target):
        if seq == target:
            return order
        if seq == target[::-1]:
            return order[::-1]
        return None

    if seq.count(4) == 1 and all(m in (3, 4) for m in seq):
        o = oriented([3] * (n - 2) + [4])
        if o is not None:
            return FamilyTag("B", n, relabeling=_relab(o, n))
        if n == 4:
            o = oriented([3, 4, 3])
            if o is not None:
                return FamilyTag("F4", 4, relabeling=_relab(o, n))
        return _not_ecoxeter(n)

    if seq.count(5) == 1 and all(m in (3, 5) for m in seq) and n in (3, 4):
        o = oriented([5] + [3] * (n - 2))
        if o is not None:
            family = "H3" if n == 3 else "H4"
            return FamilyTag(family, n, relabeling=_relab(o, n))
    return _not_ecoxeter(n)


def _relab(order, n) -> tuple:
    relab = [None] * n
    for canon, orig in enumerate(order):
        relab[orig] = canon
    return tuple(relab)


def _classify_branched(g: EGCMGraph, center: int) -> FamilyTag:
    n = g.n
    if any(g.label(i, j) != 3 for i, j in g.edges):
        return _not_ecoxeter(n)
    arms = []
    for first in g.neighbors[center]:
        arm = [first]
        prev, cur = center, first
        while True:
            nxt = [u for u in g.neighbors[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a[-1]))
    lens = [len(a) for a in arms]

    if lens[0] == 1 and lens[1] == 1:
        # two leaves plus a tail: tail end is canonical 0, leaves are n-2, n-1
        tail = arms[0] if lens[2] == 1 else arms[2]
        order = list(reversed(tail)) + [center]
        relab = [None] * n
        for canon, orig in enumerate(order):
            relab[orig] = canon
        leaf_arms = [a for a in arms if a is not tail]
        leaves = sorted((leaf_arms[0][0], leaf_arms[1][0]))
        relab[leaves[0]] = n - 2
        relab[leaves[1]] = n - 1
        return FamilyTag("D", n, relabeling=tuple(relab))

    if lens == [1, 2, 2] or lens == [1, 2, 3] or lens == [1, 2, 4]:
        family = {4: "E6", 5: "E7", 6: "E8"}[lens[1] + lens[2]]
        two_arm, long_arm = arms[1], arms[2]
        if lens[1] == lens[2]:
            # symmetric pair of arms: the smaller leaf index goes first
            if arms[1][-1] > arms[2][-1]:
                two_arm, long_arm = arms[2], arms[1]
        order = list(reversed(two_arm)) + [center] + long_arm
        relab = [None] * n
        for canon, orig in enumerate(order):
            relab[orig] = canon
        relab[arms[0][0]] = n - 1
        return FamilyTag(family, n, relabeling=tuple(relab))

    return _not_ecoxeter(n)


def finite_type(g: EGCMGraph) -> bool:
    """Whether every connected component matches a family template.

    This is the exact finiteness test for the associated group; play
    alone cannot certify it, since geometric decay on wild graphs can
    underflow the snapping threshold and stop a divergent game.
    """
    for comp in g.connected_components():
        if len(comp) == g.n:
            return classify(g).matched
        sub, _ = g.induced(comp)
        if not classify(sub).matched:
            return False
    return True


def classify(g: EGCMGraph) -> FamilyTag:
    """Match a connected graph against the family templates."""
    if not g.is_connected():
        raise NotConnected("classification is defined for connected graphs")
    n = g.n
    if n == 1:
        return FamilyTag("A", 1, relabeling=(0,))
    if len(g.edges) != n - 1:
        return _not_ecoxeter(n)
    degrees = [len(g.neighbors[v]) for v in range(n)]
    if max(degrees) > 3:
        return _not_ecoxeter(n)
    branch = [v for v in range(n) if degrees[v] == 3]
    if len(branch) > 1:
        return _not_ecoxeter(n)
    if not branch:
        return _classify_path(g)
    return _classify_branched(g, branch[0])


# ---- canonical instances ----

def _path_matrix(n, special=()):
    M = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for k in range(n - 1):
        M[k][k + 1] = M[k + 1][k] = -1.0
    for (i, j, p, q) in special:
        M[i][j] = -p
        M[j][i] = -q
    return M


def template(family: str, rank: int = None, m: int = None) -> EGCMGraph:
    """Build the canonical instance of a family at the given rank.

    Integer amplitudes are used whenever the labels allow it; label-5
    edges get the symmetric amplitude -2cos(pi/5) on both directions.
    """
    phi = 2.0 * math.cos(math.pi / 5.0)
    if family == "A":
        return EGCMGraph(_path_matrix(rank))
    if family == "B":
        if rank < 3:
            raise ValueError("B requires rank >= 3")
        return EGCMGraph(_path_matrix(rank, special=[(rank - 2, rank - 1, 1.0, 2.0)]))
    if family == "D":
        if rank < 4:
            raise ValueError("D requires rank >= 4")
        M = _path_matrix(rank)
        for k in (rank - 2, rank - 1):
            M[k][rank - 3] = M[rank - 3][k] = -1.0
            for other in range(rank):
                if other not in (k, rank - 3):
                    M[k][other] = M[other][k] = 0.0
            M[k][k] = 2.0
        return EGCMGraph(M)
    if family in ("E6", "E7", "E8"):
        n = int(family[1])
        M = _path_matrix(n)
        M[n - 1][n - 2] = M[n - 2][n - 1] = 0.0
        M[n - 1][2] = M[2][n - 1] = -1.0
        return EGCMGraph(M)
    if family == "F4":
        return EGCMGraph(_path_matrix(4, special=[(1, 2, 1.0, 2.0)]))
    if family == "H3":
        return EGCMGraph(_path_matrix(3, special=[(0, 1, phi, phi)]))
    if family == "H4":
        return EGCMGraph(_path_matrix(4, special=[(0, 1, phi, phi)]))
    if family == "I2":
        if m is None or m < 4:
            raise ValueError("I2 requires a label m >= 4")
        if m == math.inf:
            return EGCMGraph([[2.0, -2.0], [-2.0, 2.0]])
        product = 4.0 * math.cos(math.pi / m) ** 2
        if m % 2 == 0:
            return EGCMGraph([[2.0, -1.0], [-product, 2.0]])
        amp = 2.0 * math.cos(math.pi / m)
        return EGCMGraph([[2.0, -amp], [-amp, 2.0]])
    raise ValueError(f"unknown family {family!r}")
