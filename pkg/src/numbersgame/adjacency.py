"""Positions whose games never put positive numbers on adjacent nodes.

Two routes decide the property.  The exhaustive route walks every
position reachable by legal play and inspects each for an adjacent
positive pair; every reachable position is an intermediate of some
maximal game, so this is equivalent to checking all games.  The quotient
route decides it algebraically: for a position with zeros exactly on J,
adjacency-freeness is equivalent to every minimal coset representative
being fully commutative (for finite groups, in both directions).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CapExceeded
from .families import FamilyTag, classify
from .game import (
    GameRecord,
    Status,
    default_step_cap,
    fire_unchecked,
    fireable,
    snap,
    snap_scale,
)
from .graphs import EGCMGraph
from .numeric import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_LENGTH, KEY_GRID, quantize
from .words import enumerate_quotient, is_fully_commutative


class Verdict(str, enum.Enum):
    ADJACENCY_FREE = "adjacency-free"
    NOT_ADJACENCY_FREE = "not-adjacency-free"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class AdjacencyReport:
    position: tuple
    verdict: Verdict
    method: str
    witness: GameRecord = None
    witness_step: int = None
    witness_pair: tuple = None
    positions_checked: int = 0

    def to_json(self) -> dict:
        doc = {
            "position": list(self.position),
            "verdict": self.verdict.value,
            "method": self.method,
            "positions_checked": self.positions_checked,
        }
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
            doc["witness_step"] = self.witness_step
            doc["witness_pair"] = [x + 1 for x in self.witness_pair]
        return doc


def adjacent_positive_pair(g: EGCMGraph, lam, eps):
    for i, j in g.edges:
        if lam[i] > eps and lam[j] > eps:
            return (i, j)
    return None


def record_is_adjacency_free(g: EGCMGraph, rec: GameRecord) -> bool:
    """No intermediate position of the record, including the first, holds
    positive values on two adjacent nodes."""
    eps = snap_scale(rec.initial)
    return all(
        adjacent_positive_pair(g, pos, eps) is None for pos in rec.intermediates
    )


def position_is_adjacency_free(g: EGCMGraph, lam, step_cap=None) -> AdjacencyReport:
    """Exhaustive verdict for one start, with a witness prefix on failure."""
    if step_cap is None:
        step_cap = default_step_cap(g)
    eps = snap_scale(lam)
    start = snap(lam, eps)

    seen = {quantize(start, KEY_GRID): None}  # key -> (parent key, fired node)
    order = [start]
    frontier = [(start, 0)]
    bad = None
    exceeded = False
    while frontier and bad is None:
        nxt = []
        for pos, depth in frontier:
            pair = adjacent_positive_pair(g, pos, eps)
            if pair is not None:
                bad = (pos, pair)
                break
            moves = fireable(g, pos, eps)
            if moves and depth >= step_cap:
                exceeded = True
                continue
            for i in moves:
                child = snap(fire_unchecked(g, pos, i), eps)
                key = quantize(child, KEY_GRID)
                if key not in seen:
                    seen[key] = (quantize(pos, KEY_GRID), i)
                    order.append(child)
                    nxt.append((child, depth + 1))
        frontier = nxt

    if bad is not None:
        pos, pair = bad
        firings = []
        key = quantize(pos, KEY_GRID)
        while seen[key] is not None:
            parent_key, fired = seen[key]
            firings.append(fired)
            key = parent_key
        firings.reverse()
        intermediates = [start]
        values = []
        cur = start
        for i in firings:
            values.append(cur[i])
            cur = snap(fire_unchecked(g, cur, i), eps)
            intermediates.append(cur)
        witness = GameRecord(
            initial=start,
            firings=tuple(firings),
            intermediates=tuple(intermediates),
            fired_values=tuple(values),
            status=Status.HALTED,
        )
        return AdjacencyReport(
            position=start,
            verdict=Verdict.NOT_ADJACENCY_FREE,
            method="exhaustive-games",
            witness=witness,
            witness_step=len(firings),
            witness_pair=pair,
            positions_checked=len(seen),
        )
    if exceeded:
        return AdjacencyReport(
            position=start,
            verdict=Verdict.UNDECIDED,
            method="exhaustive-games",
            positions_checked=len(seen),
        )
    return AdjacencyReport(
        position=start,
        verdict=Verdict.ADJACENCY_FREE,
        method="exhaustive-games",
        positions_checked=len(seen),
    )


def quotient_is_fully_commutative(g: EGCMGraph, J,
                                  max_elements: int = DEFAULT_MAX_ELEMENTS,
                                  max_length: int = DEFAULT_MAX_LENGTH) -> bool:
    """Whether every minimal coset representative is fully commutative.

    Scans representatives in length order and stops at the first failure,
    so negative answers on large quotients come back quickly.
    """
    qt = enumerate_quotient(g, J, max_elements, max_length)
    if not qt.complete:
        raise CapExceeded(f"quotient for J={sorted(J)} incomplete within caps")
    for element in qt.elements.values():
        if not is_fully_commutative(g, element):
            return False
    return True


def adjacency_free_fundamentals(g: EGCMGraph,
                                max_elements: int = DEFAULT_MAX_ELEMENTS,
                                max_length: int = DEFAULT_MAX_LENGTH,
                                step_cap=None) -> frozenset:
    """Nodes whose 1-at-one-node position is adjacency-free.

    Uses the quotient route when the graph matches a family (finite
    group, so the equivalence holds in both directions); otherwise falls
    back to exhaustive games per node and raises CapExceeded on any
    undecided node.
    """
    tag = classify(g)
    out = set()
    if tag.matched:
        for i in range(g.n):
            J = frozenset(range(g.n)) - {i}
            if quotient_is_fully_commutative(g, J, max_elements, max_length):
                out.add(i)
        return frozenset(out)
    for i in range(g.n):
        lam = tuple(1.0 if v == i else 0.0 for v in range(g.n))
        report = position_is_adjacency_free(g, lam, step_cap=step_cap)
        if report.verdict is Verdict.UNDECIDED:
            raise CapExceeded(f"node {i} undecided within the step cap")
        if report.verdict is Verdict.ADJACENCY_FREE:
            out.add(i)
    return frozenset(out)


# Canonical-template positions of the adjacency-free one-hot starts per
# family.  B/D/I2 mark their end nodes, the A family marks every node, and
# the sporadic families mark fixed template nodes (verified against the
# quotient route by the tests).
def expected_fundamentals(tag: FamilyTag):
    if not tag.matched:
        return None
    n = tag.rank
    if tag.family == "A":
        canon = set(range(n))
    elif tag.family == "B":
        canon = {0, n - 1}
    elif tag.family == "D":
        canon = {0, n - 2, n - 1}
    elif tag.family == "I2":
        canon = {0, 1}
    elif tag.family == "E6":
        canon = {0, 4}
    elif tag.family == "E7":
        canon = {5}
    elif tag.family == "H3":
        canon = {2}
    else:  # E8, F4, H4
        canon = set()
    return tag.from_canonical(canon)
