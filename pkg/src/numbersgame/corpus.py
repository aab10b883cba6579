"""Bundled graph corpus: one canonical instance per family at minimal
rank, the two worked two-node matrices, and the non-admissible loop and
four-cycle shapes used by the divergence suites.

Instances are shipped as JSON files in the canonical graph format under
`data/` and loaded lazily.  `asymmetric_variant` derives an odd-asymmetric
twin of a graph by rebalancing each odd edge's amplitudes.
"""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .graphs import EGCMGraph


def _phi():
    return 2.0 * math.cos(math.pi / 5.0)


def preset_specs():
    """Ordered preset metadata: id -> (display name, description, default position)."""
    return {
        "a1": ("A1", "One node, one move", None),
        "a2": ("A2", "Two nodes, unlabeled edge", None),
        "a3": ("A3", "Path of three unlabeled edges", None),
        "a4": ("A4", "Path of four nodes", None),
        "b3": ("B3", "Path with the label-4 edge at the far end", None),
        "b4": ("B4", "Rank-4 path with one label-4 end edge", None),
        "d4": ("D4", "Three leaves on one center", None),
        "e6": ("E6", "Branched rank-6 diagram", None),
        "e7": ("E7", "Branched rank-7 diagram", None),
        "e8": ("E8", "Branched rank-8 diagram", None),
        "f4": ("F4", "Path with the label-4 edge in the middle", None),
        "h3": ("H3", "Path with one label-5 end edge", None),
        "h4": ("H4", "Rank-4 path with one label-5 end edge", None),
        "i2-4": ("I2(4)", "Two nodes, label 4", None),
        "i2-4-figure2": ("I2(4) Figure-2", "The worked two-node game tree", [1.0, 1.0]),
        "i2-5": ("I2(5)", "Two nodes, label 5, symmetric amplitudes", None),
        "i2-6": ("I2(6)", "Two nodes, label 6", None),
        "i2-7": ("I2(7)", "Two nodes, label 7, symmetric amplitudes", None),
        "a2-asymmetric": ("A2 asymmetric", "Unit product split as 1/2 and 2", None),
        "loop-3": ("Loop 3", "Triangle, all unit products, no asymmetry", [1.0, 0.0, 0.0]),
        "loop-4": ("Loop 4", "Square, all unit products", [1.0, 0.0, 0.0, 0.0]),
        "loop-5": ("Loop 5", "Pentagon, all unit products", [1.0, 0.0, 0.0, 0.0, 0.0]),
        "loop-3-pi8": ("Loop 3 (product 8)", "Triangle with cycle transport 8",
                       [1.0, 0.0, 0.0]),
        "four-cycle-m5": ("4-cycle with a label-5 edge",
                          "Square with one label-5 edge, unit products elsewhere",
                          [1.0, 0.0, 0.0, 0.0]),
    }


def build_graph(preset_id: str) -> EGCMGraph:
    """Construct a preset from scratch (used to generate the data files)."""
    from .families import template

    phi = _phi()
    builders = {
        "a1": lambda: template("A", 1),
        "a2": lambda: template("A", 2),
        "a3": lambda: template("A", 3),
        "a4": lambda: template("A", 4),
        "b3": lambda: template("B", 3),
        "b4": lambda: template("B", 4),
        "d4": lambda: template("D", 4),
        "e6": lambda: template("E6"),
        "e7": lambda: template("E7"),
        "e8": lambda: template("E8"),
        "f4": lambda: template("F4"),
        "h3": lambda: template("H3"),
        "h4": lambda: template("H4"),
        "i2-4": lambda: template("I2", m=4),
        "i2-4-figure2": lambda: EGCMGraph([[2.0, -1.0], [-2.0, 2.0]]),
        "i2-5": lambda: template("I2", m=5),
        "i2-6": lambda: template("I2", m=6),
        "i2-7": lambda: template("I2", m=7),
        "a2-asymmetric": lambda: EGCMGraph([[2.0, -0.5], [-2.0, 2.0]]),
        "loop-3": lambda: unit_loop(3, 1.0),
        "loop-4": lambda: unit_loop(4, 1.0),
        "loop-5": lambda: unit_loop(5, 1.0),
        "loop-3-pi8": lambda: unit_loop(3, 8.0),
        "four-cycle-m5": lambda: EGCMGraph(
            [
                [2.0, -phi, 0.0, -1.0],
                [-phi, 2.0, -1.0, 0.0],
                [0.0, -1.0, 2.0, -1.0],
                [-1.0, 0.0, -1.0, 2.0],
            ]
        ),
    }
    return builders[preset_id]()


def unit_loop(n: int, forward_product: float) -> EGCMGraph:
    """A loop of n nodes, all edge products 1, with the given transport
    product when walking 0 -> 1 -> ... -> n-1 -> 0."""
    q = forward_product ** (1.0 / n)
    M = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for k in range(n):
        a, b = k, (k + 1) % n
        M[a][b] = -1.0 / q
        M[b][a] = -q
    return EGCMGraph(M)


def asymmetric_variant(g: EGCMGraph) -> EGCMGraph:
    """Rebalance every odd edge to amplitudes (product/2, 2), keeping the
    labels; returns None when the graph has no odd edges."""
    odd = g.odd_edges()
    if not odd:
        return None
    M = np.array(g.amplitudes, dtype=float)
    for i, j in odd:
        product = M[i, j] * M[j, i]
        M[i, j] = -product / 2.0
        M[j, i] = -2.0
    return EGCMGraph(M)


_CACHE: dict = {}


def load_graph(preset_id: str) -> EGCMGraph:
    if preset_id not in _CACHE:
        specs = preset_specs()
        if preset_id not in specs:
            raise KeyError(f"unknown preset {preset_id!r}")
        path = resources.files("numbersgame").joinpath(f"data/{preset_id}.json")
        _CACHE[preset_id] = EGCMGraph.from_json(json.loads(path.read_text()))
    return _CACHE[preset_id]


def default_position(preset_id: str, g: EGCMGraph = None) -> tuple:
    specs = preset_specs()
    _, _, pos = specs[preset_id]
    if pos is not None:
        return tuple(pos)
    g = g or load_graph(preset_id)
    return (1.0,) * g.n


def preset_ids() -> tuple:
    return tuple(preset_specs())


def write_data_files(directory) -> None:
    """Regenerate the shipped corpus files (development helper)."""
    import pathlib

    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for pid in preset_ids():
        doc = build_graph(pid).to_json()
        (directory / f"{pid}.json").write_text(json.dumps(doc, indent=1) + "\n")
