"""Command-line surface: inspect graphs, play games, enumerate structure,
and run the verification suites.

Payloads are JSON on stdout with floats printed to 9 significant digits;
errors go to stderr as JSON.  Exit codes: 0 success, 1 negative finding
(a failed check, a non-family graph, a capped game), 2 error.  All node
indices on the wire are 1-based.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import corpus
from .errors import GameError, GraphError, NumbersGameError, ParseError
from .families import classify, finite_type
from .game import Status, play
from .graphs import EGCMGraph
from .numeric import ROOT_CAP, TOLERANCES
from .roots import f_value, generate_root_system, root_functionals
from .verify import SUITES, run_suite
from .words import (
    commutativity_classes,
    enumerate_group,
    enumerate_quotient,
    longest_element,
    reduced_words,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def emit(payload) -> None:
    print(json.dumps(_round_floats(payload), indent=1))


def fail(code: str, message: str) -> int:
    print(json.dumps({"error": code, "message": message}), file=sys.stderr)
    return EXIT_ERROR


def load_graph_arg(spec: str) -> EGCMGraph:
    if spec.startswith("preset:"):
        return corpus.load_graph(spec[len("preset:"):])
    return EGCMGraph.from_file(spec)


def load_position_arg(spec: str, n: int) -> tuple:
    if spec.strip().startswith("["):
        values = json.loads(spec)
    else:
        with open(spec) as fh:
            values = json.load(fh)
    if not isinstance(values, list) or len(values) != n:
        raise ParseError(f"position must be a JSON array of {n} reals")
    return tuple(float(v) for v in values)


def _label_json(m):
    return "inf" if m == math.inf else m


def _edges_json(g: EGCMGraph) -> list:
    return [
        {
            "i": i + 1,
            "j": j + 1,
            "p": -g.amplitudes[i, j],
            "q": -g.amplitudes[j, i],
            "m": _label_json(g.label(i, j)),
        }
        for i, j in g.edges
    ]


def cmd_inspect(args) -> int:
    try:
        g = load_graph_arg(args.graph)
    except GraphError as exc:
        return fail(type(exc).__name__, str(exc))
    tag = classify(g) if g.is_connected() else None

    unital = []
    for comp in g.on_components():
        ok, witness = g.is_unital_on_cyclic(comp)
        entry = {"component": sorted(v + 1 for v in comp), "unital": ok}
        if witness is not None:
            entry["witness_cycle"] = [v + 1 for v in witness.nodes]
            entry["witness_product"] = witness.product
        unital.append(entry)

    group: dict = {"order": None, "longest_length": None, "positive_roots": None,
                   "f_values": None}
    rec = play(g, (1.0,) * g.n, step_cap=args.cap) if finite_type(g) else None
    if rec is not None and rec.status is Status.TERMINAL:
        group["longest_length"] = len(rec.firings)
        rs = generate_root_system(g, cap=ROOT_CAP)
        if rs.complete:
            group["positive_roots"] = len(rs)
            fvals = {}
            for comp in g.on_components():
                ok, _ = g.is_unital_on_cyclic(comp)
                key = ",".join(str(v + 1) for v in sorted(comp))
                fvals[key] = f_value(rs, comp) if ok else None
            group["f_values"] = fvals
        table = enumerate_group(g, max_elements=args.max_elements)
        if table.complete:
            group["order"] = table.order

    payload = {
        "valid": True,
        "n": g.n,
        "edges": _edges_json(g),
        "on_components": [sorted(v + 1 for v in comp) for comp in g.on_components()],
        "unital_on_cyclic": unital,
        "odd_asymmetries": [[i + 1, j + 1] for i, j in g.odd_asymmetries()],
        "connected": g.is_connected(),
        "family": tag.name if tag else None,
        "relabeling": (
            {str(v + 1): c + 1 for v, c in enumerate(tag.relabeling)}
            if tag and tag.matched else None
        ),
        "admissible": bool(tag and tag.matched),
        "group": group,
        "tolerances": TOLERANCES,
    }
    emit(payload)
    return EXIT_OK if payload["admissible"] else EXIT_NEGATIVE


def cmd_play(args) -> int:
    try:
        g = load_graph_arg(args.graph)
        lam = load_position_arg(args.position, g.n)
        script = None
        if args.script:
            script = tuple(int(x) - 1 for x in args.script.replace(" ", "").split(","))
        rec = play(g, lam, strategy=args.strategy, seed=args.seed, script=script,
                   step_cap=args.cap)
    except (GraphError, GameError, ValueError) as exc:
        return fail(type(exc).__name__, str(exc))

    functionals = [
        {"root": list(beta), "value": value}
        for beta, value in root_functionals(g, rec.initial, rec.firings)
    ]
    payload = rec.to_json()
    payload["root_functionals"] = functionals
    payload["tolerances"] = TOLERANCES
    emit(payload)
    return EXIT_OK if rec.status is Status.TERMINAL else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        return fail("UnknownSuite", f"choose from {sorted(SUITES)}")
    kwargs = {}
    if args.suite in ("strong-convergence", "word-duality", "divergence-schemes"):
        kwargs["seed"] = args.seed
        if args.trials is not None:
            kwargs["trials"] = args.trials
    if args.suite in ("strong-convergence", "bridge") and args.rank_cap is not None:
        kwargs["rank_cap"] = args.rank_cap
    result = run_suite(args.suite, **kwargs)
    payload = result.to_json()
    payload["params"] = {"seed": args.seed, "trials": args.trials,
                         "rank_cap": args.rank_cap}
    payload["tolerances"] = TOLERANCES
    emit(payload)
    return EXIT_OK if result.passed else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    try:
        g = load_graph_arg(args.graph)
    except GraphError as exc:
        return fail(type(exc).__name__, str(exc))
    payload: dict = {"n": g.n, "tolerances": TOLERANCES}
    code = EXIT_OK
    try:
        if args.roots:
            rs = generate_root_system(g, cap=args.max or ROOT_CAP)
            payload["root_system"] = rs.to_json()
            if not rs.complete:
                code = EXIT_NEGATIVE
        elif args.reduced_words is not None:
            if args.reduced_words == "w0":
                element = longest_element(g, max_elements=args.max or 200_000)
                word = element.witness
            else:
                word = tuple(int(x) - 1 for x in json.loads(args.reduced_words))
            words = reduced_words(g, word)
            classes = commutativity_classes(g, word)
            payload["element_witness"] = [i + 1 for i in word]
            payload["reduced_words"] = sorted([i + 1 for i in w] for w in words)
            payload["commutativity_classes"] = [
                sorted([i + 1 for i in w] for w in cls) for cls in classes
            ]
        elif args.quotient is not None:
            J = frozenset(
                int(x) - 1 for x in args.quotient.replace(" ", "").split(",") if x
            )
            qt = enumerate_quotient(g, J, max_elements=args.max or 200_000)
            payload["quotient"] = qt.to_json()
            if not qt.complete:
                code = EXIT_NEGATIVE
        else:
            table = enumerate_group(g, max_elements=args.max or 200_000)
            payload["group"] = table.to_json()
            if not table.complete:
                code = EXIT_NEGATIVE
    except NumbersGameError as exc:
        return fail(type(exc).__name__, str(exc))
    emit(payload)
    return code


def cmd_presets(args) -> int:
    out = []
    for pid, (name, description, _) in corpus.preset_specs().items():
        g = corpus.load_graph(pid)
        tag = classify(g) if g.is_connected() else None
        out.append({
            "id": pid,
            "name": name,
            "description": description,
            "n": g.n,
            "family": tag.name if tag else None,
            "default_position": list(corpus.default_position(pid, g)),
        })
    emit({"presets": out})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numbersgame",
        description="Play and analyze the numbers game on amplitude-matrix graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="validate a graph and report its structure")
    p.add_argument("graph", help="graph file, or preset:<id>")
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("--max-elements", type=int, default=200_000)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("play", help="play one game from a position")
    p.add_argument("graph")
    p.add_argument("position", help="JSON array or a file containing one")
    p.add_argument("--strategy", choices=["greedy", "random"], default="greedy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--script", default=None, help="comma-separated 1-based nodes")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--rank-cap", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate group, quotient, roots, or words")
    p.add_argument("graph")
    p.add_argument("--quotient", default=None, help="comma-separated 1-based nodes")
    p.add_argument("--roots", action="store_true")
    p.add_argument("--reduced-words", default=None,
                   help="'w0' or a JSON array of 1-based letters")
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("presets", help="list the bundled graph corpus")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumbersGameError as exc:
        return fail(type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
