"""Firing dynamics: single moves, played games, exhaustive game analysis.

Firing node i from position lam sends lam[j] to lam[j] - M[i][j]*lam[i]
for every j (so the fired node's value flips sign) and is legal only
while lam[i] > 0.  A game keeps firing until no node is positive.

Values are snapped to zero against a threshold derived from the initial
position so float cancellation cannot leave phantom fireable nodes.
"""

from __future__ import annotations

import enum
import math
import random
import sys
from dataclasses import dataclass

from .errors import (
    IllegalScriptedFiring,
    NodeNotFireable,
    NotUnitProductLoop,
    WrongGraphShape,
)
from .families import classify
from .graphs import EGCMGraph
from .numeric import DEFAULT_STEP_CAP, KEY_GRID, quantize, snap, snap_scale


def _raise_recursion_limit(step_cap: int) -> None:
    if step_cap * 3 + 100 > sys.getrecursionlimit():
        sys.setrecursionlimit(step_cap * 3 + 100)


class Status(str, enum.Enum):
    TERMINAL = "terminal"
    BOUND_EXCEEDED = "bound-exceeded"
    HALTED = "halted"


@dataclass(frozen=True)
class GameRecord:
    """One played firing sequence with every intermediate position."""

    initial: tuple
    firings: tuple
    intermediates: tuple
    fired_values: tuple
    status: Status

    @property
    def final(self) -> tuple:
        return self.intermediates[-1]

    def __len__(self) -> int:
        return len(self.firings)

    def to_json(self) -> dict:
        return {
            "initial": list(self.initial),
            "firings": [i + 1 for i in self.firings],
            "intermediates": [list(p) for p in self.intermediates],
            "fired_values": list(self.fired_values),
            "status": self.status.value,
        }


def is_dominant(lam, eps=0.0) -> bool:
    return all(v >= -eps for v in lam)


def is_strongly_dominant(lam, eps=0.0) -> bool:
    return all(v > eps for v in lam)


def zero_set(lam, eps=None) -> frozenset:
    """Nodes holding a (snapped) zero."""
    if eps is None:
        eps = snap_scale(lam)
    return frozenset(i for i, v in enumerate(lam) if abs(v) <= eps)


def fireable(g: EGCMGraph, lam, eps=None) -> tuple:
    """Nodes with a positive snapped value."""
    if eps is None:
        eps = snap_scale(lam)
    return tuple(i for i, v in enumerate(lam) if v > eps)


def fire_unchecked(g: EGCMGraph, lam, i) -> tuple:
    """The firing transformation with no legality check (the dual action)."""
    row = g.rows[i]
    v = lam[i]
    return tuple(x - row[j] * v for j, x in enumerate(lam))


def fire(g: EGCMGraph, lam, i, eps=None) -> tuple:
    if eps is None:
        eps = snap_scale(lam)
    if not (0 <= i < g.n) or lam[i] <= eps:
        raise NodeNotFireable(f"node {i} holds {lam[i] if 0 <= i < g.n else None!r}")
    return snap(fire_unchecked(g, lam, i), eps)


def dual_apply(g: EGCMGraph, word, lam) -> tuple:
    """Act on a position by a word, firing letters in order, legality ignored."""
    for i in word:
        lam = fire_unchecked(g, lam, i)
    return tuple(lam)


_STEP_CAP_CACHE: dict = {}


def default_step_cap(g: EGCMGraph) -> int:
    """4x the greedy game length from the all-ones position when the graph
    matches a family; otherwise a flat default."""
    key = g.amplitudes.tobytes()
    if key not in _STEP_CAP_CACHE:
        cap = DEFAULT_STEP_CAP
        if g.is_connected() and classify(g).matched:
            rec = play(g, (1.0,) * g.n, step_cap=100_000)
            if rec.status is Status.TERMINAL:
                cap = max(4 * len(rec.firings), 4)
        _STEP_CAP_CACHE[key] = cap
    return _STEP_CAP_CACHE[key]


def play(g: EGCMGraph, lam, strategy: str = "greedy", *, seed=None, script=None,
         step_cap=None) -> GameRecord:
    """Play one game: greedy (lowest fireable index), seeded random, or scripted.

    A scripted game fires exactly the given sequence and raises
    IllegalScriptedFiring if a move is illegal; it reports HALTED if
    positions remain fireable after the script runs out.
    """
    eps = snap_scale(lam)
    lam = snap(lam, eps)
    if step_cap is None:
        step_cap = len(script) if script is not None else default_step_cap(g)
    rng = random.Random(seed)
    initial = lam
    intermediates = [lam]
    firings = []
    values = []
    script = list(script) if script is not None else None

    status = Status.TERMINAL
    while True:
        frontier = fireable(g, lam, eps)
        if script is not None and len(firings) == len(script):
            status = Status.HALTED if frontier else Status.TERMINAL
            break
        if not frontier:
            if script is not None:
                raise IllegalScriptedFiring(len(firings), script[len(firings)])
            status = Status.TERMINAL
            break
        if len(firings) >= step_cap:
            status = Status.BOUND_EXCEEDED
            break
        if script is not None:
            i = script[len(firings)]
            if i not in frontier:
                raise IllegalScriptedFiring(len(firings), i)
        elif strategy == "greedy":
            i = frontier[0]
        elif strategy == "random":
            i = rng.choice(frontier)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        values.append(lam[i])
        lam = snap(fire_unchecked(g, lam, i), eps)
        firings.append(i)
        intermediates.append(lam)

    return GameRecord(
        initial=initial,
        firings=tuple(firings),
        intermediates=tuple(intermediates),
        fired_values=tuple(values),
        status=status,
    )


def enumerate_games(g: EGCMGraph, lam, step_cap=None) -> tuple:
    """All maximal legal firing sequences from a position, as GameRecords.

    Branches exceeding the step cap are reported with BOUND_EXCEEDED
    status.  Repeated subtrees are shared through a (position, depth)
    memo, which is sound because equal positions at equal depth have
    identical continuations.
    """
    if step_cap is None:
        step_cap = default_step_cap(g)
    eps = snap_scale(lam)
    start = snap(lam, eps)

    memo: dict = {}

    def tails(pos, depth):
        key = (quantize(pos, KEY_GRID), depth)
        if key in memo:
            return memo[key]
        frontier = fireable(g, pos, eps)
        if not frontier:
            result = (((), Status.TERMINAL),)
        elif depth >= step_cap:
            result = (((), Status.BOUND_EXCEEDED),)
        else:
            result = tuple(
                ((i,) + suffix, status)
                for i in frontier
                for suffix, status in tails(snap(fire_unchecked(g, pos, i), eps), depth + 1)
            )
        memo[key] = result
        return result

    _raise_recursion_limit(step_cap)

    records = []
    for firings, status in tails(start, 0):
        pos = start
        intermediates = [pos]
        values = []
        for i in firings:
            values.append(pos[i])
            pos = snap(fire_unchecked(g, pos, i), eps)
            intermediates.append(pos)
        records.append(GameRecord(
            initial=start,
            firings=firings,
            intermediates=tuple(intermediates),
            fired_values=tuple(values),
            status=status,
        ))
    return tuple(records)


@dataclass(frozen=True)
class ConvergenceReport:
    """Aggregate over every maximal game from one start."""

    consistent: bool
    game_count: int
    lengths: tuple
    terminals: tuple
    bound_exceeded: bool
    positions_seen: int

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "game_count": self.game_count,
            "lengths": list(self.lengths),
            "terminals": [list(t) for t in self.terminals],
            "bound_exceeded": self.bound_exceeded,
            "positions_seen": self.positions_seen,
        }


def check_strong_convergence(g: EGCMGraph, lam, step_cap=None,
                             grid: float = KEY_GRID) -> ConvergenceReport:
    """Whether all maximal games from lam share one terminal and one length.

    Walks the directed acyclic graph of reachable positions instead of
    materializing every game, counting games by multiplying along paths.
    """
    if step_cap is None:
        step_cap = default_step_cap(g)
    eps = snap_scale(lam)
    start = snap(lam, eps)

    memo: dict = {}
    positions = set()

    def analyze(pos, depth):
        key = (quantize(pos, grid), depth)
        if key in memo:
            return memo[key]
        positions.add(key[0])
        frontier = fireable(g, pos, eps)
        outcomes: dict = {}
        exceeded = False
        if not frontier:
            outcomes[(tuple(pos), 0)] = 1
        elif depth >= step_cap:
            exceeded = True
        else:
            for i in frontier:
                sub, sub_exceeded = analyze(snap(fire_unchecked(g, pos, i), eps), depth + 1)
                exceeded = exceeded or sub_exceeded
                for (terminal, length), count in sub.items():
                    k = (terminal, length + 1)
                    outcomes[k] = outcomes.get(k, 0) + count
        memo[key] = (outcomes, exceeded)
        return memo[key]

    _raise_recursion_limit(step_cap)

    outcomes, exceeded = analyze(start, 0)
    lengths = sorted({length for (_, length) in outcomes})
    terminal_keys = {}
    for (terminal, _length) in outcomes:
        terminal_keys[quantize(terminal, grid)] = terminal
    consistent = not exceeded and len(lengths) <= 1 and len(terminal_keys) <= 1
    return ConvergenceReport(
        consistent=consistent,
        game_count=sum(outcomes.values()),
        lengths=tuple(lengths),
        terminals=tuple(terminal_keys.values()),
        bound_exceeded=exceeded,
        positions_seen=len(positions),
    )


# ---- pumping schemes on non-admissible shapes ----

@dataclass(frozen=True)
class PumpScheme:
    """A firing cycle that can be repeated forever, with its closed form.

    `predicted(k)` gives the exact position after the prefix plus k full
    cycles, so simulation can be checked against the formula.
    """

    initial: tuple
    prefix: tuple
    cycle: tuple
    loop_order: tuple
    cycle_product: float

    def predicted(self, k: int) -> tuple:
        raise NotImplementedError

    def simulate(self, g: EGCMGraph, k: int) -> tuple:
        lam = self.initial
        eps = snap_scale(lam)
        lam = snap(lam, eps)
        for i in self.prefix:
            lam = fire(g, lam, i, eps)
        for _ in range(k):
            for i in self.cycle:
                lam = fire(g, lam, i, eps)
        return lam


@dataclass(frozen=True)
class LoopPumpScheme(PumpScheme):
    amplitudes_first_row: tuple = ()

    def predicted(self, k: int) -> tuple:
        o = self.loop_order
        n = len(o)
        pi = self.cycle_product
        lam = [0.0] * n
        lam[o[0]] = 1.0 + sum(pi ** j + pi ** (-j) for j in range(1, k + 1))
        m_12 = self.amplitudes_first_row[o[1]]
        m_1n = self.amplitudes_first_row[o[-1]]
        lam[o[1]] = m_12 * sum(pi ** (-j) for j in range(1, k + 1))
        lam[o[-1]] = m_1n * sum(pi ** j for j in range(1, k + 1))
        return tuple(lam)


def _loop_order(g: EGCMGraph):
    if any(len(g.neighbors[v]) != 2 for v in range(g.n)) or not g.is_connected():
        return None
    order = [0, min(g.neighbors[0])]
    while len(order) < g.n:
        nxt = [u for u in g.neighbors[order[-1]] if u != order[-2]]
        order.append(nxt[0])
    return tuple(order)


def loop_divergence(g: EGCMGraph) -> LoopPumpScheme:
    """The divergent pump for loops whose edges all have unit amplitude product.

    Starting from 1 at the first node of the loop, one round trip out and
    back around the loop returns to a position of the same shape with
    strictly larger values; the closed form tracks the three nonzero
    coordinates after k rounds.  The stored cycle product is oriented
    against the firing direction; with that convention the first node
    carries 1 + sum(pi^j + pi^-j), its forward neighbor carries
    M[first][second] * sum(pi^-j), and its backward neighbor carries
    M[first][last] * sum(pi^j).
    """
    if g.n < 3:
        raise NotUnitProductLoop(f"a loop needs at least 3 nodes, got {g.n}")
    order = _loop_order(g)
    if order is None:
        raise NotUnitProductLoop("underlying graph is not a single loop")
    for i, j in g.edges:
        product = g.amplitudes[i, j] * g.amplitudes[j, i]
        if not math.isclose(product, 1.0, rel_tol=1e-9, abs_tol=1e-9):
            raise NotUnitProductLoop(f"edge {{{i},{j}}} has amplitude product {product}")

    forward = g.on_path(order + (order[0],)).product
    cycle = order + tuple(reversed(order[1:-1]))
    initial = tuple(1.0 if v == order[0] else 0.0 for v in range(g.n))
    return LoopPumpScheme(
        initial=initial,
        prefix=(),
        cycle=cycle,
        loop_order=order,
        cycle_product=1.0 / forward,
        amplitudes_first_row=g.rows[order[0]],
    )


def four_cycle_step(g: EGCMGraph, lam):
    """One legal round of (0,1,2,3) on the 4-loop with a single label-5 edge.

    The graph must be the 4-cycle 0-1-2-3-0 in canonical numbering with
    label 5 on edge {0,1} and unit amplitude products on the other three
    edges.  A position (a,b,c,d) qualifies when a > 0, b >= 0, c >= 0,
    d <= 0, a*w + d >= 0, and a*p*r*t + b*r*t + c*t + d > 0, where
    p,q,r,s,t,u,v,w are the amplitude magnitudes read around the cycle.
    Returns (True, next position) after firing 0,1,2,3 when the position
    qualifies, else (False, None).
    """
    expected_edges = {(0, 1), (1, 2), (2, 3), (0, 3)}
    if g.n != 4 or set(g.edges) != expected_edges:
        raise WrongGraphShape("expected the 4-cycle 0-1-2-3-0")
    if g.label(0, 1) != 5:
        raise WrongGraphShape("edge {0,1} must carry label 5")
    for i, j in ((1, 2), (2, 3), (3, 0)):
        product = g.amplitudes[i, j] * g.amplitudes[j, i]
        if not math.isclose(product, 1.0, rel_tol=1e-9, abs_tol=1e-9):
            raise WrongGraphShape(f"edge {{{i},{j}}} must have unit amplitude product")

    a, b, c, d = lam
    p = -g.amplitudes[0, 1]
    r = -g.amplitudes[1, 2]
    t = -g.amplitudes[2, 3]
    w = -g.amplitudes[0, 3]
    eps = snap_scale(lam)
    meets = (
        a > eps
        and b >= -eps
        and c >= -eps
        and d <= eps
        and a * w + d >= -eps
        and a * p * r * t + b * r * t + c * t + d > eps
    )
    if not meets:
        return False, None
    rec = play(g, lam, script=(0, 1, 2, 3))
    return True, rec.final
