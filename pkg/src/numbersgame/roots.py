"""The geometric representation: reflections, roots, and root functionals.

The representation space is spanned by one simple root per node, with
the (possibly asymmetric) form B(alpha_i, alpha_j) = M[i][j] / 2 and
simple reflections S_i(v) = v - 2 B(alpha_i, v) alpha_i.  Words act with
their first letter applied first, so a word read as a firing sequence
(i1,...,ip) acts as the group element s_ip ... s_i1.

Every root generated from the simple ones is entirely nonnegative or
entirely nonpositive in coordinates; anything else is a bug and raises.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    GroupNotFiniteWithinCaps,
    IllegalFiringAt,
    IncompleteRootSystem,
    NotUnitalONCyclic,
    SignConsistencyError,
)
from .game import Status, fire_unchecked, play, snap, snap_scale
from .graphs import EGCMGraph
from .numeric import KEY_GRID, ROOT_CAP, SIGN_TOL, quantize

POSITIVE = "positive"
NEGATIVE = "negative"


def simple_root(g: EGCMGraph, i) -> tuple:
    return tuple(1.0 if j == i else 0.0 for j in range(g.n))


def bilinear_form(g: EGCMGraph, u, v) -> float:
    if len(u) != g.n or len(v) != g.n:
        raise DimensionMismatch(f"expected vectors of length {g.n}")
    total = 0.0
    for i, ui in enumerate(u):
        if ui != 0.0:
            row = g.rows[i]
            total += ui * sum(row[j] * v[j] for j in range(g.n) if v[j] != 0.0)
    return 0.5 * total


def reflect(g: EGCMGraph, i, v) -> tuple:
    """S_i(v): only the i-th coordinate changes."""
    row = g.rows[i]
    c = sum(row[j] * v[j] for j in range(g.n) if v[j] != 0.0)
    out = list(v)
    out[i] = v[i] - c
    return tuple(out)


def act(g: EGCMGraph, word, v) -> tuple:
    """Apply the group element of a firing-order word to a vector."""
    for i in word:
        v = reflect(g, i, v)
    return v


def act_product(g: EGCMGraph, factors, v) -> tuple:
    """Apply a product of reflections written left to right (rightmost first)."""
    for i in reversed(factors):
        v = reflect(g, i, v)
    return v


def root_sign(coeffs, tol: float = SIGN_TOL) -> str:
    has_pos = any(c > tol for c in coeffs)
    has_neg = any(c < -tol for c in coeffs)
    if has_pos and has_neg:
        raise SignConsistencyError(f"mixed-sign root {coeffs}")
    if not has_pos and not has_neg:
        raise SignConsistencyError(f"zero vector is not a root {coeffs}")
    return POSITIVE if has_pos else NEGATIVE


class RootSystem:
    """Closure of the simple roots under all reflections, positives only."""

    def __init__(self, graph: EGCMGraph, positives, complete: bool, cap_used: int):
        self.graph = graph
        self.positives = positives  # dict: quantized key -> coefficient tuple
        self.complete = complete
        self.cap_used = cap_used

    def __len__(self):
        return len(self.positives)

    def __iter__(self):
        return iter(self.positives.values())

    def contains(self, coeffs) -> bool:
        return quantize(coeffs, KEY_GRID) in self.positives

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "count": len(self.positives),
            "positive_roots": [
                {"coeffs": list(v), "sign": POSITIVE} for v in self.positives.values()
            ],
        }


def generate_root_system(g: EGCMGraph, cap: int = ROOT_CAP) -> RootSystem:
    """Breadth-first closure of the simple roots, stored up to sign."""
    positives = {}
    queue = []
    for i in range(g.n):
        alpha = simple_root(g, i)
        key = quantize(alpha, KEY_GRID)
        positives[key] = alpha
        queue.append(alpha)
    complete = True
    while queue:
        if len(positives) > cap:
            complete = False
            break
        batch = queue
        queue = []
        for root in batch:
            for i in range(g.n):
                image = reflect(g, i, root)
                if root_sign(image) == NEGATIVE:
                    image = tuple(-c for c in image)
                key = quantize(image, KEY_GRID)
                if key not in positives:
                    positives[key] = image
                    queue.append(image)
    return RootSystem(g, positives, complete, cap)


def _scalar_multiple(u, v, tol: float = 1e-6):
    """K with v = K*u, or None."""
    j = max(range(len(u)), key=lambda k: abs(u[k]))
    if u[j] == 0.0:
        return None
    k = v[j] / u[j]
    scale = 1.0 + max(abs(x) for x in v)
    if all(abs(v[idx] - k * u[idx]) <= tol * scale for idx in range(len(u))):
        return k
    return None


def positive_multiples(rs: RootSystem, alpha) -> tuple:
    """All positive roots that are real scalar multiples of alpha."""
    if not rs.complete:
        raise IncompleteRootSystem("scalar-multiple sets need a complete root system")
    return tuple(v for v in rs if _scalar_multiple(alpha, v) is not None)


def f_value(rs: RootSystem, component) -> int:
    """Common count of positive multiples of the simple roots in a component.

    Defined only when the component is unital for odd-edge cycles; the
    count is then independent of the chosen node.
    """
    g = rs.graph
    ok, witness = g.is_unital_on_cyclic(component)
    if not ok:
        raise NotUnitalONCyclic(
            f"component {sorted(component)} has a cycle with product {witness.product}"
        )
    if not rs.complete:
        raise IncompleteRootSystem("f-values need a complete root system")
    sizes = {x: len(positive_multiples(rs, simple_root(g, x))) for x in component}
    values = set(sizes.values())
    if len(values) != 1:
        raise SignConsistencyError(f"unequal multiple counts in one component: {sizes}")
    return values.pop()


def f_bounds(rs: RootSystem, nodes) -> tuple:
    """(min, max) of the f-values over the components touching the node set."""
    g = rs.graph
    touched = [comp for comp in g.on_components() if comp & set(nodes)]
    values = [f_value(rs, comp) for comp in touched]
    if not values:
        return (1, 1)
    return (min(values), max(values))


def inversion_set(rs: RootSystem, word) -> tuple:
    """Positive roots sent negative by the element of the given word."""
    if not rs.complete:
        raise IncompleteRootSystem("inversion sets need a complete root system")
    g = rs.graph
    out = []
    for root in rs:
        if root_sign(act(g, word, root)) == NEGATIVE:
            out.append(root)
    return tuple(out)


def root_functionals(g: EGCMGraph, lam, firings) -> tuple:
    """The roots paired with the values fired along a legal sequence.

    Entry q is (beta_q, value) where beta_q is the positive root carried
    to the fired node by the preceding firings and value is the pairing
    of the initial position with beta_q.  The values reproduce the
    numbers the game engine fires.
    """
    eps = snap_scale(lam)
    pos = snap(lam, eps)
    out = []
    firings = tuple(firings)
    for q, i in enumerate(firings):
        if pos[i] <= eps:
            raise IllegalFiringAt(q)
        beta = act_product(g, firings[:q], simple_root(g, i))
        value = sum(lam[j] * beta[j] for j in range(g.n))
        out.append((beta, value))
        pos = snap(fire_unchecked(g, pos, i), eps)
    return tuple(out)


@dataclass(frozen=True)
class LongestWordReport:
    """The five equivalent finiteness conditions, evaluated independently.

    no_odd_asymmetries:    the graph has none.
    all_components_f1:     every odd-edge component is unital with f = 1.
    betas_cover_positives: the roots along one longest reduced word are
                           exactly the positive roots.
    length_matches:        the longest length equals the positive root count.
    functionals_cover:     every positive root shows up as a root functional
                           along one maximal game from the all-ones position.
    """

    no_odd_asymmetries: bool
    all_components_f1: bool
    betas_cover_positives: bool
    length_matches: bool
    functionals_cover: bool
    longest_length: int
    positive_count: int

    @property
    def conditions(self) -> tuple:
        return (
            self.no_odd_asymmetries,
            self.all_components_f1,
            self.betas_cover_positives,
            self.length_matches,
            self.functionals_cover,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1

    def to_json(self) -> dict:
        return {
            "no_odd_asymmetries": self.no_odd_asymmetries,
            "all_components_f1": self.all_components_f1,
            "betas_cover_positives": self.betas_cover_positives,
            "length_matches": self.length_matches,
            "functionals_cover": self.functionals_cover,
            "longest_length": self.longest_length,
            "positive_count": self.positive_count,
            "agree": self.agree,
        }


def longest_word_report(g: EGCMGraph, step_cap: int = 100_000,
                        root_cap: int = ROOT_CAP) -> LongestWordReport:
    """Evaluate the five conditions on a graph whose group is finite.

    A maximal greedy game from the all-ones position doubles as a reduced
    word for the longest element.  Finiteness is certified by diagram
    classification, not by play: on wild graphs geometric decay can
    underflow the zero-snapping threshold and stop a divergent game.
    """
    from .families import finite_type

    if not finite_type(g):
        raise GroupNotFiniteWithinCaps("graph is not of finite type")
    rec = play(g, (1.0,) * g.n, step_cap=step_cap)
    if rec.status is not Status.TERMINAL:
        raise GroupNotFiniteWithinCaps(
            f"no terminal game within {step_cap} firings from the all-ones position"
        )
    rs = generate_root_system(g, cap=root_cap)
    if not rs.complete:
        raise GroupNotFiniteWithinCaps(f"root closure exceeded {root_cap} vectors")

    cond1 = not g.odd_asymmetries()
    cond2 = True
    for comp in g.on_components():
        ok, _ = g.is_unital_on_cyclic(comp)
        if not ok or f_value(rs, comp) != 1:
            cond2 = False
            break

    word = rec.firings
    betas = set()
    for q, i in enumerate(word):
        betas.add(quantize(act_product(g, word[:q], simple_root(g, i)), KEY_GRID))
    positive_keys = set(rs.positives)
    cond3 = betas == positive_keys
    cond4 = len(word) == len(rs)

    functionals = root_functionals(g, rec.initial, word)
    seen = {quantize(beta, KEY_GRID) for beta, _ in functionals}
    cond5 = positive_keys <= seen

    return LongestWordReport(
        no_odd_asymmetries=cond1,
        all_components_f1=cond2,
        betas_cover_positives=cond3,
        length_matches=cond4,
        functionals_cover=cond5,
        longest_length=len(word),
        positive_count=len(rs),
    )
