"""Words over node indices, the word problem, and orbit enumeration.

A word (i1,...,ip) names the group element s_ip ... s_i1, matching the
firing-sequence order: playing the word from the all-ones reference
position is legal exactly when the word is reduced.  Group elements are
identified by their action on that reference position, quantized to a
fixed grid; the stabilizer of a strictly positive position is trivial,
so the key is faithful.

The word problem is solved two independent ways: exact integer search
over elementary simplifications (braid replacements and doubled-letter
deletions), and comparison of action keys.  Tests hold the two routes
against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    CapExceeded,
    GroupNotFiniteWithinCaps,
    ParabolicNotFinite,
    SearchBudgetExceeded,
)
from .game import dual_apply, fire_unchecked, fireable, snap, snap_scale
from .graphs import EGCMGraph
from .numeric import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_LENGTH,
    KEY_GRID,
    TITS_BUDGET,
    quantize,
)

Word = tuple


def rho(n: int) -> tuple:
    """The reference strictly positive position: all ones."""
    return (1.0,) * n


def element_key(lam, eps) -> tuple:
    return quantize(snap(lam, eps), KEY_GRID)


@dataclass(frozen=True)
class GroupElement:
    """A group element: its action key on the reference position, one
    reduced word witnessing it, and its length."""

    key: tuple
    position: tuple
    witness: Word
    length: int

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def to_json(self) -> dict:
        return {
            "key": list(self.key),
            "position": list(self.position),
            "witness": [i + 1 for i in self.witness],
            "length": self.length,
        }


def identity_element(g: EGCMGraph) -> GroupElement:
    start = rho(g.n)
    return GroupElement(element_key(start, snap_scale(start)), start, (), 0)


def element_of(g: EGCMGraph, word: Word) -> GroupElement:
    """The element named by an arbitrary word, witnessed by a reduced word."""
    start = rho(g.n)
    pos = dual_apply(g, word, start)
    reduced = simplify(g, word)
    return GroupElement(element_key(pos, snap_scale(start)), pos, reduced, len(reduced))


def is_reduced(g: EGCMGraph, word: Word) -> bool:
    """A word is reduced exactly when it plays legally from all ones."""
    lam = rho(g.n)
    eps = snap_scale(lam)
    for i in word:
        if not (0 <= i < g.n) or lam[i] <= eps:
            return False
        lam = snap(fire_unchecked(g, lam, i), eps)
    return True


# ---- elementary simplifications ----

def _chain(x, y, m):
    return tuple(x if k % 2 == 0 else y for k in range(m))


def braid_moves(g: EGCMGraph, word: Word, only_commuting: bool = False):
    """All single braid replacements of the word.

    A braid replacement swaps an alternating run <x,y> of length m_xy for
    <y,x>; with only_commuting the run length is restricted to 2.
    """
    n = len(word)
    for k in range(n - 1):
        x, y = word[k], word[k + 1]
        if x == y:
            continue
        m = g.label(x, y)
        if m == math.inf or (only_commuting and m != 2):
            continue
        if k + m > n:
            continue
        if word[k:k + m] == _chain(x, y, m):
            yield word[:k] + _chain(y, x, m) + word[k + m:]


def _doubled_at(word: Word):
    for k in range(len(word) - 1):
        if word[k] == word[k + 1]:
            return k
    return None


def simplify(g: EGCMGraph, word: Word, budget: int = TITS_BUDGET) -> Word:
    """A reduced word for the element of the given word.

    Expands the braid closure; whenever any member shows a doubled
    letter, deletes the leftmost such pair in the first word found and
    restarts from the shortened word.  Words are explored shortest-seed
    first in insertion order, so the result is deterministic.
    """
    current = tuple(word)
    spent = 0
    while True:
        k = _doubled_at(current)
        if k is not None:
            current = current[:k] + current[k + 2:]
            continue
        seen = {current}
        frontier = [current]
        shortened = None
        while frontier and shortened is None:
            nxt = []
            for w in frontier:
                for moved in braid_moves(g, w):
                    if moved in seen:
                        continue
                    seen.add(moved)
                    spent += 1
                    if spent > budget:
                        raise SearchBudgetExceeded(
                            f"simplification budget {budget} exhausted"
                        )
                    k = _doubled_at(moved)
                    if k is not None:
                        shortened = moved[:k] + moved[k + 2:]
                        break
                    nxt.append(moved)
                if shortened is not None:
                    break
            frontier = nxt
        if shortened is None:
            return min(seen) if seen else current
        current = shortened


def tits_equal(g: EGCMGraph, s: Word, t: Word, budget: int = TITS_BUDGET) -> bool:
    """Word-problem equality by bidirectional simplification search.

    Grows the simplification closures of both words together and reports
    equality as soon as they intersect; if both closures complete without
    meeting, the elements differ.
    """
    s, t = tuple(s), tuple(t)
    if s == t:
        return True
    closures = [{s}, {t}]
    frontiers = [[s], [t]]
    spent = 0
    while frontiers[0] or frontiers[1]:
        side = 0 if (frontiers[0] and (not frontiers[1] or len(closures[0]) <= len(closures[1]))) else 1
        nxt = []
        for w in frontiers[side]:
            children = list(braid_moves(g, w))
            k = _doubled_at(w)
            if k is not None:
                children.append(w[:k] + w[k + 2:])
            for child in children:
                if child in closures[side]:
                    continue
                if child in closures[1 - side]:
                    return True
                closures[side].add(child)
                nxt.append(child)
                spent += 1
                if spent > budget:
                    raise SearchBudgetExceeded(f"word-problem budget {budget} exhausted")
        frontiers[side] = nxt
    return False


def reduced_words(g: EGCMGraph, element_or_word, budget: int = TITS_BUDGET) -> frozenset:
    """All reduced words of an element: braid closure of a reduced witness."""
    witness = _witness(g, element_or_word)
    seen = {witness}
    frontier = [witness]
    while frontier:
        nxt = []
        for w in frontier:
            for moved in braid_moves(g, w):
                if moved not in seen:
                    seen.add(moved)
                    nxt.append(moved)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"reduced-word closure exceeded {budget}")
        frontier = nxt
    return frozenset(seen)


def _witness(g, element_or_word) -> Word:
    if isinstance(element_or_word, GroupElement):
        return element_or_word.witness
    word = tuple(element_or_word)
    if not is_reduced(g, word):
        word = simplify(g, word)
    return word


def commutativity_classes(g: EGCMGraph, element_or_word,
                          budget: int = TITS_BUDGET) -> tuple:
    """Partition of the reduced words under adjacent commuting swaps."""
    words = sorted(reduced_words(g, element_or_word, budget))
    remaining = set(words)
    classes = []
    for w in words:
        if w not in remaining:
            continue
        cls = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for u in frontier:
                for moved in braid_moves(g, u, only_commuting=True):
                    if moved not in cls:
                        cls.add(moved)
                        nxt.append(moved)
            frontier = nxt
        remaining -= cls
        classes.append(frozenset(cls))
    return tuple(classes)


def _has_long_chain(g: EGCMGraph, word: Word) -> bool:
    n = len(word)
    for k in range(n - 1):
        x, y = word[k], word[k + 1]
        if x == y:
            continue
        m = g.label(x, y)
        if m == math.inf or m < 3 or k + m > n:
            continue
        if word[k:k + m] == _chain(x, y, m):
            return True
    return False


def is_fully_commutative(g: EGCMGraph, element_or_word,
                         budget: int = TITS_BUDGET) -> bool:
    """Whether the reduced words form a single commutativity class.

    Equivalent test, run on the commutativity class of one witness: no
    member may contain an alternating run <x,y> of length m_xy >= 3.  If
    none does, no long braid move ever applies, so the class already
    exhausts the reduced words.
    """
    witness = _witness(g, element_or_word)
    seen = {witness}
    frontier = [witness]
    while frontier:
        nxt = []
        for w in frontier:
            if _has_long_chain(g, w):
                return False
            for moved in braid_moves(g, w, only_commuting=True):
                if moved not in seen:
                    seen.add(moved)
                    nxt.append(moved)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"commutativity closure exceeded {budget}")
        frontier = nxt
    return True


# ---- orbit enumeration ----

@dataclass
class GroupTable:
    """Elements found by breadth-first legal play from the reference position."""

    graph: EGCMGraph
    elements: dict  # key -> GroupElement, insertion ordered by length
    complete: bool
    max_length_seen: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def by_length(self) -> dict:
        out: dict = {}
        for e in self.elements.values():
            out.setdefault(e.length, []).append(e)
        return out

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "complete": self.complete,
            "longest_length": self.max_length_seen,
            "elements": [e.to_json() for e in self.elements.values()],
        }


def _bfs_positions(g: EGCMGraph, start, max_elements, max_length):
    eps = snap_scale(rho(g.n))
    start = snap(start, eps)
    first = GroupElement(element_key(start, eps), start, (), 0)
    elements = {first.key: first}
    frontier = [first]
    complete = True
    depth = 0
    while frontier:
        if depth >= max_length:
            complete = False
            break
        nxt = []
        for e in frontier:
            for i in fireable(g, e.position, eps):
                pos = snap(fire_unchecked(g, e.position, i), eps)
                key = element_key(pos, eps)
                if key in elements:
                    continue
                child = GroupElement(key, pos, e.witness + (i,), depth + 1)
                elements[key] = child
                nxt.append(child)
                if len(elements) > max_elements:
                    return elements, False, depth + 1
        frontier = nxt
        depth += 1
    max_seen = max((e.length for e in elements.values()), default=0)
    return elements, complete, max_seen


def enumerate_group(g: EGCMGraph, max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_length: int = DEFAULT_MAX_LENGTH) -> GroupTable:
    """Every group element as a distinct position in the orbit of all ones.

    Breadth-first legal play: depth equals length because legal firing
    sequences are exactly the reduced words.  The table is complete when
    the frontier empties within the caps.
    """
    elements, complete, max_seen = _bfs_positions(
        g, rho(g.n), max_elements, max_length
    )
    return GroupTable(graph=g, elements=elements, complete=complete,
                      max_length_seen=max_seen)


def longest_element(g: EGCMGraph, max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_length: int = DEFAULT_MAX_LENGTH) -> GroupElement:
    table = enumerate_group(g, max_elements, max_length)
    if not table.complete:
        raise GroupNotFiniteWithinCaps(
            f"group not finite within caps ({max_elements} elements, length {max_length})"
        )
    top = [e for e in table.elements.values() if e.length == table.max_length_seen]
    if len(top) != 1:
        raise GroupNotFiniteWithinCaps(f"{len(top)} elements share the maximal length")
    return top[0]


@dataclass
class QuotientTable:
    """Minimal coset representatives for a parabolic subgroup.

    Obtained by breadth-first play from the position with ones exactly
    off J; positions correspond to representatives and depth to length.
    `longest` is the unique representative with no legal firing, present
    when the table is complete and the whole group is finite.
    """

    graph: EGCMGraph
    J: frozenset
    elements: dict
    complete: bool
    parabolic: GroupTable
    parabolic_map: tuple
    longest: GroupElement = None

    @property
    def size(self) -> int:
        return len(self.elements)

    def parabolic_longest_length(self) -> int:
        return self.parabolic.max_length_seen

    def to_json(self) -> dict:
        return {
            "J": sorted(j + 1 for j in self.J),
            "size": self.size,
            "complete": self.complete,
            "parabolic_order": self.parabolic.order,
            "parabolic_longest_length": self.parabolic.max_length_seen,
            "elements": [e.to_json() for e in self.elements.values()],
        }


def masked_ones(n: int, J) -> tuple:
    return tuple(0.0 if i in J else 1.0 for i in range(n))


def _trivial_table(g: EGCMGraph) -> GroupTable:
    e = identity_element(g)
    return GroupTable(graph=g, elements={e.key: e}, complete=True, max_length_seen=0)


def enumerate_parabolic(g: EGCMGraph, J, max_elements=DEFAULT_MAX_ELEMENTS,
                        max_length=DEFAULT_MAX_LENGTH):
    """Group table of the subgroup generated by J, with the node mapping.

    Runs on the induced subgraph; witnesses are in subgraph indices and
    `mapping[k]` translates them back.
    """
    J = sorted(J)
    if not J:
        return _trivial_table(g), ()
    sub, mapping = g.induced(J)
    table = enumerate_group(sub, max_elements, max_length)
    return table, mapping


def enumerate_quotient(g: EGCMGraph, J, max_elements: int = DEFAULT_MAX_ELEMENTS,
                       max_length: int = DEFAULT_MAX_LENGTH) -> QuotientTable:
    J = frozenset(J)
    parabolic, mapping = enumerate_parabolic(g, J, max_elements, max_length)
    if not parabolic.complete:
        raise ParabolicNotFinite(
            f"subgroup on {sorted(J)} not finite within caps"
        )
    elements, complete, _ = _bfs_positions(g, masked_ones(g.n, J), max_elements,
                                           max_length)
    longest = None
    if complete:
        eps = snap_scale(rho(g.n))
        stuck = [e for e in elements.values() if not fireable(g, e.position, eps)]
        if len(stuck) == 1:
            longest = stuck[0]
    return QuotientTable(graph=g, J=J, elements=elements, complete=complete,
                         parabolic=parabolic, parabolic_map=mapping,
                         longest=longest)


def translate_word(word: Word, mapping) -> Word:
    return tuple(mapping[i] for i in word)


def coset_decompose(g: EGCMGraph, word: Word, J,
                    max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_length: int = DEFAULT_MAX_LENGTH):
    """Split the element of `word` as (representative, parabolic part).

    The representative is read off by acting on the position with ones
    off J; the parabolic part is found by searching the finite subgroup
    for the unique complement.
    """
    J = frozenset(J)
    qt = enumerate_quotient(g, J, max_elements, max_length)
    if not qt.complete:
        raise CapExceeded("quotient enumeration incomplete")
    eps = snap_scale(rho(g.n))
    target_quotient_key = element_key(dual_apply(g, word, masked_ones(g.n, J)), eps)
    if target_quotient_key not in qt.elements:
        raise CapExceeded("word leads outside the enumerated quotient")
    rep = qt.elements[target_quotient_key]

    target_key = element_key(dual_apply(g, word, rho(g.n)), eps)
    for v in qt.parabolic.elements.values():
        v_word = translate_word(v.witness, qt.parabolic_map)
        candidate = v_word + rep.witness
        if element_key(dual_apply(g, candidate, rho(g.n)), eps) == target_key:
            part = GroupElement(
                element_key(dual_apply(g, v_word, rho(g.n)), eps),
                dual_apply(g, v_word, rho(g.n)),
                v_word,
                v.length,
            )
            return rep, part
    raise CapExceeded("no parabolic complement found; caps too small?")
