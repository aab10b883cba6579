"""Amplitude-matrix graphs and their odd-neighbor structure.

A graph here is an n x n real matrix M with 2 on the diagonal and
nonpositive entries elsewhere, zero-symmetric off the diagonal, where
every nonzero transpose product M_ij * M_ji is either >= 4 or equals
4cos^2(pi/k) for an integer k >= 3.  The decoded k (or infinity) is the
edge label; non-adjacent pairs have label 2.

Edges whose label is odd and finite are "odd edges".  Paths through odd
edges transport simple directions with a multiplicative factor; cycles
of odd edges have a product that is either always 1 ("unital") or not,
which is what separates tame graphs from wild ones downstream.

Node indices are 0-based throughout the Python API.  The JSON file
formats (see `to_json` / `from_json`) are 1-based.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetricZeroPattern,
    BadDiagonal,
    InvalidAmplitudeProduct,
    NotOddNeighborly,
    ParseError,
    PositiveOffDiagonal,
    SameNode,
)
from .numeric import (
    EXPLICIT_LABEL_TOL,
    LABEL_SCAN_MAX,
    LABEL_TOL,
    UNITAL_TOL,
    infer_label,
    label_product,
)

DIAG_TOL = 1e-12


@dataclass(frozen=True)
class ONPath:
    """A walk through odd edges: its nodes, transport factor, and word.

    `product` is the accumulated transport factor from the start node's
    simple direction to the end node's.  `word` is the firing-order word
    realizing the transport: acting with it on the start simple root
    yields `product` times the end simple root.
    """

    nodes: tuple
    product: float
    word: tuple

    @property
    def start(self):
        return self.nodes[0]

    @property
    def end(self):
        return self.nodes[-1]


class EGCMGraph:
    """Validated amplitude matrix with derived edges and labels.

    Immutable by convention: the amplitude array is write-protected and
    all derived structure is computed once at construction.
    """

    def __init__(self, amplitudes, node_names=None, explicit_labels=None):
        M = np.array(amplitudes, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise BadDiagonal(f"expected a square matrix with n >= 1, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ParseError("amplitude matrix contains non-finite entries")
        n = M.shape[0]

        for i in range(n):
            if abs(M[i, i] - 2.0) > DIAG_TOL:
                raise BadDiagonal(f"diagonal entry at node {i} is {M[i, i]}, expected 2")
        for i in range(n):
            for j in range(n):
                if i != j and M[i, j] > 0.0:
                    raise PositiveOffDiagonal(f"M[{i}][{j}] = {M[i, j]} is positive")
        for i in range(n):
            for j in range(i + 1, n):
                if (M[i, j] == 0.0) != (M[j, i] == 0.0):
                    raise AsymmetricZeroPattern(
                        f"exactly one of M[{i}][{j}], M[{j}][{i}] is zero"
                    )

        explicit = {}
        for key, m in (explicit_labels or {}).items():
            i, j = sorted(key)
            if not (isinstance(m, int) and m >= 3) and m != math.inf:
                raise InvalidAmplitudeProduct(f"explicit label {m!r} on edge {{{i},{j}}}")
            explicit[(i, j)] = m

        labels = {}
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if M[i, j] == 0.0:
                    continue
                product = M[i, j] * M[j, i]
                if (i, j) in explicit:
                    m = explicit[(i, j)]
                    if abs(product - label_product(m)) > EXPLICIT_LABEL_TOL:
                        raise InvalidAmplitudeProduct(
                            f"edge {{{i},{j}}}: product {product} does not match "
                            f"declared label {m}"
                        )
                else:
                    m = infer_label(product, LABEL_TOL, LABEL_SCAN_MAX)
                    if m is None:
                        raise InvalidAmplitudeProduct(
                            f"edge {{{i},{j}}}: product {product} is below 4 and matches "
                            f"no 4cos^2(pi/k) for k = 3..{LABEL_SCAN_MAX}"
                        )
                edges.append((i, j))
                labels[(i, j)] = m

        M.setflags(write=False)
        self.n = n
        self.amplitudes = M
        self.rows = tuple(tuple(float(x) for x in M[i]) for i in range(n))
        self.node_names = tuple(node_names) if node_names else tuple(
            str(i + 1) for i in range(n)
        )
        if len(self.node_names) != n:
            raise ParseError(f"expected {n} node names, got {len(self.node_names)}")
        self.edges = tuple(edges)
        self._labels = labels
        nb = [[] for _ in range(n)]
        for i, j in edges:
            nb[i].append(j)
            nb[j].append(i)
        self.neighbors = tuple(tuple(sorted(v)) for v in nb)
        self._on_components = None

    # ---- labels and adjacency ----

    def label(self, i, j):
        """Coxeter label m_ij: 2 for non-adjacent pairs, k or infinity otherwise."""
        if i == j:
            raise SameNode(f"label is undefined for a node paired with itself ({i})")
        return self._labels.get((min(i, j), max(i, j)), 2)

    def adjacent(self, i, j) -> bool:
        return (min(i, j), max(i, j)) in self._labels

    def odd_edges(self):
        """Edges whose label is odd and finite."""
        return tuple(
            e for e in self.edges
            if self._labels[e] != math.inf and self._labels[e] % 2 == 1
        )

    def odd_asymmetries(self):
        """Odd edges carrying unequal amplitudes in the two directions."""
        out = []
        for i, j in self.odd_edges():
            if self.amplitudes[i, j] != self.amplitudes[j, i]:
                out.append((i, j))
        return tuple(out)

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    def connected_components(self):
        seen = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self.neighbors[v]:
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    # ---- odd-neighbor structure ----

    def on_components(self):
        """Partition of the nodes into maximal classes joined by odd edges."""
        if self._on_components is None:
            odd_nb = [[] for _ in range(self.n)]
            for i, j in self.odd_edges():
                odd_nb[i].append(j)
                odd_nb[j].append(i)
            seen = set()
            comps = []
            for start in range(self.n):
                if start in seen:
                    continue
                comp = {start}
                stack = [start]
                while stack:
                    v = stack.pop()
                    for u in odd_nb[v]:
                        if u not in comp:
                            comp.add(u)
                            stack.append(u)
                seen |= comp
                comps.append(frozenset(comp))
            self._on_components = tuple(comps)
        return self._on_components

    def transport_factor(self, frm, to) -> float:
        """Multiplier picked up when carrying a simple direction across an odd edge."""
        m = self.label(frm, to)
        if m == math.inf or m % 2 == 0:
            raise NotOddNeighborly(f"nodes {frm} and {to} are not odd neighbors")
        return -self.amplitudes[to, frm] / (2.0 * math.cos(math.pi / m))

    def transport_word(self, frm, to) -> tuple:
        """Firing-order word realizing the transport across one odd edge."""
        m = self.label(frm, to)
        if m == math.inf or m % 2 == 0:
            raise NotOddNeighborly(f"nodes {frm} and {to} are not odd neighbors")
        word = []
        for k in range(m - 1):
            word.append(to if k % 2 == 0 else frm)
        return tuple(word)

    def on_path(self, nodes) -> ONPath:
        """Fold a node walk into an ONPath with its product and word."""
        nodes = tuple(nodes)
        if not nodes:
            raise NotOddNeighborly("an odd-neighbor path needs at least one node")
        product = 1.0
        word = []
        for a, b in zip(nodes, nodes[1:]):
            product *= self.transport_factor(a, b)
            word.extend(self.transport_word(a, b))
        return ONPath(nodes=nodes, product=product, word=tuple(word))

    def is_unital_on_cyclic(self, component=None):
        """Check that all odd-edge cycles in a component have product 1.

        Uses spanning-tree potentials: each node gets the tree transport
        product from a root, and every non-tree odd edge must close up.
        Returns (True, None) or (False, witness) where the witness is a
        simple cycle as an ONPath with product != 1, normalized so the
        product is > 1.
        """
        comps = [component] if component is not None else self.on_components()
        for comp in comps:
            comp = sorted(comp)
            root = comp[0]
            odd_nb = {v: [] for v in comp}
            for i, j in self.odd_edges():
                if i in odd_nb and j in odd_nb:
                    odd_nb[i].append(j)
                    odd_nb[j].append(i)
            potential = {root: 1.0}
            parent = {root: None}
            order = [root]
            queue = [root]
            tree_edges = set()
            while queue:
                v = queue.pop(0)
                for u in odd_nb[v]:
                    if u not in potential:
                        potential[u] = potential[v] * self.transport_factor(v, u)
                        parent[u] = v
                        tree_edges.add((min(u, v), max(u, v)))
                        order.append(u)
                        queue.append(u)
            for i, j in self.odd_edges():
                if i not in potential or j not in potential:
                    continue
                if (min(i, j), max(i, j)) in tree_edges:
                    continue
                carried = potential[i] * self.transport_factor(i, j)
                if not math.isclose(carried, potential[j], rel_tol=UNITAL_TOL, abs_tol=UNITAL_TOL):
                    cycle = self._witness_cycle(i, j, parent)
                    path = self.on_path(cycle)
                    if path.product < 1.0:
                        path = self.on_path(tuple(reversed(cycle)))
                    return False, path
        return True, None

    def _witness_cycle(self, i, j, parent):
        def chain(v):
            out = [v]
            while parent[v] is not None:
                v = parent[v]
                out.append(v)
            return out

        up_i = chain(i)
        up_j = chain(j)
        common = None
        in_i = set(up_i)
        for v in up_j:
            if v in in_i:
                common = v
                break
        i_leg = up_i[: up_i.index(common) + 1]
        j_leg = up_j[: up_j.index(common) + 1]
        # i -> ... -> common -> ... -> j -> i
        return tuple(i_leg + list(reversed(j_leg))[1:] + [i])

    # ---- restriction and permutation ----

    def induced(self, nodes):
        """Subgraph on the given nodes (sorted) with the inherited amplitudes.

        Returns (graph, mapping) where mapping[k] is the original index of
        the new node k.
        """
        nodes = sorted(nodes)
        sub = self.amplitudes[np.ix_(nodes, nodes)]
        expl = {}
        for (i, j), m in self._labels.items():
            if i in nodes and j in nodes:
                expl[(nodes.index(i), nodes.index(j))] = m
        g = EGCMGraph(sub, node_names=[self.node_names[v] for v in nodes],
                      explicit_labels=expl)
        return g, tuple(nodes)

    def permuted(self, perm):
        """Graph with node i renamed perm[i]."""
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        M = self.amplitudes[np.ix_(inv, inv)]
        expl = {(perm[i], perm[j]): m for (i, j), m in self._labels.items()}
        return EGCMGraph(M, node_names=[self.node_names[inv[k]] for k in range(self.n)],
                         explicit_labels=expl)

    # ---- serialization (1-based on the wire) ----

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "amplitudes": [[float(x) for x in row] for row in self.rows],
        }
        if any(name != str(i + 1) for i, name in enumerate(self.node_names)):
            doc["node_names"] = list(self.node_names)
        explicit = [
            {"i": i + 1, "j": j + 1, "m": m}
            for (i, j), m in sorted(self._labels.items())
            if m != math.inf and m > LABEL_SCAN_MAX
        ]
        if explicit:
            doc["labels"] = explicit
        return doc

    @classmethod
    def from_json(cls, doc) -> "EGCMGraph":
        if not isinstance(doc, dict) or "n" not in doc:
            raise ParseError("graph document must be an object with an 'n' field")
        n = doc["n"]
        if not isinstance(n, int) or n < 1:
            raise ParseError(f"bad node count {n!r}")
        names = doc.get("node_names")
        explicit = {}
        for entry in doc.get("labels", []):
            explicit[(entry["i"] - 1, entry["j"] - 1)] = entry["m"]
        if "amplitudes" in doc:
            M = doc["amplitudes"]
            if len(M) != n or any(len(row) != n for row in M):
                raise ParseError("amplitude matrix shape does not match n")
            return cls(M, node_names=names, explicit_labels=explicit)
        if "edges" in doc:
            M = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
            for e in doc["edges"]:
                try:
                    i, j = e["i"] - 1, e["j"] - 1
                    p, q = float(e["p"]), float(e["q"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise ParseError(f"bad edge entry {e!r}") from exc
                if not (0 <= i < n and 0 <= j < n):
                    raise ParseError(f"edge endpoints {e!r} out of range")
                M[i][j] = -p
                M[j][i] = -q
                if "m" in e and e["m"] is not None:
                    explicit[(min(i, j), max(i, j))] = e["m"]
            return cls(M, node_names=names, explicit_labels=explicit)
        raise ParseError("graph document needs 'amplitudes' or 'edges'")

    @classmethod
    def from_file(cls, path) -> "EGCMGraph":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read graph file {path}: {exc}") from exc
        return cls.from_json(doc)

    def __repr__(self):
        return f"EGCMGraph(n={self.n}, edges={len(self.edges)})"


def validate_matrix(M, node_names=None, explicit_labels=None) -> EGCMGraph:
    """Validate an amplitude matrix and derive edges and labels."""
    return EGCMGraph(M, node_names=node_names, explicit_labels=explicit_labels)
