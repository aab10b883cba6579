"""Reproducible verification suites over the bundled corpus.

Each suite runs a battery of independent checks and reports one line per
check.  The suites back the command-line `verify` command and the
acceptance test module; suite names are part of the CLI contract.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import corpus
from .adjacency import adjacency_free_fundamentals, expected_fundamentals
from .errors import NumbersGameError
from .families import classify
from .game import (
    Status,
    check_strong_convergence,
    dual_apply,
    enumerate_games,
    four_cycle_step,
    loop_divergence,
    play,
    snap_scale,
)
from .graphs import EGCMGraph
from .numeric import KEY_GRID, quantize
from .roots import (
    NEGATIVE,
    POSITIVE,
    act,
    act_product,
    f_bounds,
    f_value,
    generate_root_system,
    inversion_set,
    longest_word_report,
    positive_multiples,
    reflect,
    root_sign,
    simple_root,
)
from .words import (
    element_key,
    enumerate_group,
    enumerate_parabolic,
    enumerate_quotient,
    is_reduced,
    reduced_words,
    rho,
    simplify,
    tits_equal,
    translate_word,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _random_dominant(rng: random.Random, n: int) -> tuple:
    while True:
        lam = tuple(float(rng.randint(0, 3)) for _ in range(n))
        if any(v > 0 for v in lam):
            return lam


def suite_strong_convergence(seed: int = 0, trials: int = 20,
                             rank_cap: int = 4) -> SuiteResult:
    """Every maximal game from a dominant start has one terminal and one length."""
    result = SuiteResult("strong-convergence")
    ids = ["a1", "a2", "a3", "a4", "b3", "d4", "i2-4", "i2-5", "i2-6", "i2-7", "h3"]
    rng = random.Random(seed)
    for pid in ids:
        g = corpus.load_graph(pid)
        if g.n > rank_cap:
            continue
        variants = [(pid, g)]
        twin = corpus.asymmetric_variant(g)
        if twin is not None:
            variants.append((pid + "+asym", twin))
        for name, graph in variants:
            cap = len(play(graph, (1.0,) * graph.n, step_cap=100_000).firings)
            bad = None
            for _ in range(trials):
                lam = _random_dominant(rng, graph.n)
                report = check_strong_convergence(graph, lam, step_cap=cap)
                if not report.consistent:
                    bad = (lam, report)
                    break
            result.add(
                f"{name}: {trials} dominant starts",
                bad is None,
                "" if bad is None else f"start {bad[0]} gave {bad[1].to_json()}",
            )
    return result


def _all_words(n: int, max_len: int):
    for length in range(max_len + 1):
        yield from itertools.product(range(n), repeat=length)


def _canonical_reduced(g: EGCMGraph, word):
    return min(reduced_words(g, simplify(g, word)))


def suite_word_duality(max_len: int = 6, seed: int = 0, trials: int = 300) -> SuiteResult:
    """Reducedness and equality agree between game play, the simplification
    search, and action keys, over all short words."""
    result = SuiteResult("word-duality")
    rng = random.Random(seed)
    for pid in ("a3", "b3"):
        g = corpus.load_graph(pid)
        eps = snap_scale(rho(g.n))
        words = list(_all_words(g.n, max_len))
        keys = {w: element_key(dual_apply(g, w, rho(g.n)), eps) for w in words}
        min_len: dict = {}
        for w in words:
            k = keys[w]
            min_len[k] = min(min_len.get(k, len(w)), len(w))

        mismatch = [w for w in words if is_reduced(g, w) != (len(w) == min_len[keys[w]])]
        result.add(
            f"{pid}: legality equals minimality over {len(words)} words",
            not mismatch,
            "" if not mismatch else f"first mismatch {mismatch[0]}",
        )

        by_search = [
            w for w in words if is_reduced(g, w) != (len(simplify(g, w)) == len(w))
        ]
        result.add(
            f"{pid}: legality equals simplification-search reducedness",
            not by_search,
            "" if not by_search else f"first mismatch {by_search[0]}",
        )

        canons = {w: _canonical_reduced(g, w) for w in words}
        canon_by_key: dict = {}
        consistent = True
        for w in words:
            canon_by_key.setdefault(keys[w], set()).add(canons[w])
        consistent = all(len(v) == 1 for v in canon_by_key.values())
        canon_keys: dict = {}
        for w in words:
            canon_keys.setdefault(canons[w], set()).add(keys[w])
        consistent = consistent and all(len(v) == 1 for v in canon_keys.values())
        result.add(f"{pid}: simplification classes match action-key classes", consistent)

        sample_bad = None
        for _ in range(trials):
            s, t = rng.choice(words), rng.choice(words)
            if tits_equal(g, s, t) != (keys[s] == keys[t]):
                sample_bad = (s, t)
                break
        result.add(
            f"{pid}: word-problem search agrees with keys on {trials} sampled pairs",
            sample_bad is None,
            "" if sample_bad is None else f"pair {sample_bad}",
        )
    return result


def suite_quotient_lengths() -> SuiteResult:
    """Games from masked starts all have the quotient length and realize the
    longest representative."""
    result = SuiteResult("quotient-lengths")
    for pid in ("a3", "b3"):
        g = corpus.load_graph(pid)
        eps = snap_scale(rho(g.n))
        full = enumerate_group(g)
        lw0 = full.max_length_seen
        for r in range(g.n + 1):
            for J in itertools.combinations(range(g.n), r):
                J = frozenset(J)
                parabolic, _ = enumerate_parabolic(g, J)
                expected = lw0 - parabolic.max_length_seen
                qt = enumerate_quotient(g, J)
                lam = tuple(0.0 if i in J else 1.0 for i in range(g.n))
                games = enumerate_games(g, lam, step_cap=lw0)
                ok = all(
                    rec.status is Status.TERMINAL and len(rec.firings) == expected
                    for rec in games
                )
                detail = f"{len(games)} games, expected length {expected}"
                if ok and expected > 0:
                    target = element_key(dual_apply(g, qt.longest.witness, rho(g.n)), eps)
                    ok = all(
                        element_key(dual_apply(g, rec.firings, rho(g.n)), eps) == target
                        for rec in games
                    )
                    detail += ", all equal the longest representative"
                result.add(f"{pid} J={sorted(i + 1 for i in J)}", ok, detail)
    return result


def suite_fundamental_table() -> SuiteResult:
    """Adjacency-free one-hot starts match the classification table."""
    result = SuiteResult("theorem43")
    for pid in ("a1", "a2", "a3", "a4", "b3", "b4", "d4", "i2-5", "h3", "f4", "e6"):
        g = corpus.load_graph(pid)
        tag = classify(g)
        expected = expected_fundamentals(tag)
        got = adjacency_free_fundamentals(g)
        result.add(
            f"{pid}: adjacency-free one-hot nodes",
            got == expected,
            f"got {sorted(x + 1 for x in got)}, expected {sorted(x + 1 for x in expected)}",
        )
    return result


def suite_bridge(rank_cap: int = 3) -> SuiteResult:
    """Exhaustive-game verdicts equal quotient full-commutativity verdicts."""
    from .adjacency import Verdict, position_is_adjacency_free, quotient_is_fully_commutative

    result = SuiteResult("bridge")
    for pid in ("a1", "a2", "a3", "b3", "h3", "i2-4", "i2-5", "i2-6", "i2-7",
                "a4", "b4", "d4", "f4", "h4"):
        g = corpus.load_graph(pid)
        if g.n > rank_cap:
            continue
        agree = True
        detail = ""
        for i in range(g.n):
            lam = tuple(1.0 if v == i else 0.0 for v in range(g.n))
            by_games = position_is_adjacency_free(g, lam).verdict is Verdict.ADJACENCY_FREE
            by_fc = quotient_is_fully_commutative(g, frozenset(range(g.n)) - {i})
            if by_games != by_fc:
                agree = False
                detail = f"node {i + 1}: games {by_games}, quotient {by_fc}"
                break
        result.add(f"{pid}: both routes agree on every node", agree, detail)
    return result


def suite_longest_word() -> SuiteResult:
    """The five finiteness conditions agree: all true on integer-amplitude
    instances, all false on the asymmetric two-node instance."""
    result = SuiteResult("theorem52")
    integer_ids = ("a1", "a2", "a3", "a4", "b3", "b4", "d4", "e6", "e7", "e8",
                   "f4", "i2-4", "i2-6")
    for pid in integer_ids:
        g = corpus.load_graph(pid)
        report = longest_word_report(g)
        result.add(
            f"{pid}: all five conditions true",
            report.agree and report.conditions[0],
            f"conditions {report.conditions}, longest {report.longest_length}, "
            f"positives {report.positive_count}",
        )
    g = corpus.load_graph("a2-asymmetric")
    report = longest_word_report(g)
    result.add(
        "a2-asymmetric: all five conditions false",
        report.agree and not report.conditions[0],
        f"conditions {report.conditions}, longest {report.longest_length}, "
        f"positives {report.positive_count}",
    )
    return result


def _keyset(roots):
    return {quantize(r, KEY_GRID) for r in roots}


def suite_inversion_identities() -> SuiteResult:
    """Inversion-set recursions, size bounds, and fired-root containment over
    whole small groups."""
    result = SuiteResult("inversion-identities")
    for pid in ("a3", "b3", "i2-5", "a2-asymmetric"):
        g = corpus.load_graph(pid)
        rs = generate_root_system(g)
        table = enumerate_group(g)
        elements = list(table.elements.values())
        positive_keys = set(rs.positives)

        smult = {
            i: _keyset(positive_multiples(rs, simple_root(g, i))) for i in range(g.n)
        }
        comp_f = {}
        for comp in g.on_components():
            value = f_value(rs, comp)
            for x in comp:
                comp_f[x] = value

        recursion_ok = True
        bounds_ok = True
        fired_ok = True
        detail = ""
        for w in elements:
            nw = inversion_set(rs, w.witness)
            nw_keys = _keyset(nw)
            f1, f2 = f_bounds(rs, set(w.witness))
            if not (f1 * w.length <= len(nw) <= f2 * w.length):
                bounds_ok = False
                detail = f"bounds fail at length {w.length}"

            for i in range(g.n):
                extended = (i,) + w.witness
                n_ext = _keyset(inversion_set(rs, extended))
                if root_sign(act(g, w.witness, simple_root(g, i))) == POSITIVE:
                    mapped = _keyset(reflect(g, i, root) for root in nw)
                    if n_ext != mapped | smult[i] or (mapped & smult[i]):
                        recursion_ok = False
                        detail = f"positive-case recursion fails at length {w.length}"
                else:
                    mapped = _keyset(
                        reflect(g, i, root) for root in nw
                        if quantize(root, KEY_GRID) not in smult[i]
                    )
                    if n_ext != mapped:
                        recursion_ok = False
                        detail = f"negative-case recursion fails at length {w.length}"

            if w.length > 0:
                betas = [
                    quantize(
                        act_product(g, w.witness[:q], simple_root(g, w.witness[q])),
                        KEY_GRID,
                    )
                    for q in range(w.length)
                ]
                if len(set(betas)) != w.length or not set(betas) <= nw_keys:
                    fired_ok = False
                    detail = "fired roots not distinct or escape the inversion set"
                all_f1 = all(comp_f[i] == 1 for i in set(w.witness))
                if (set(betas) == nw_keys) != all_f1:
                    fired_ok = False
                    detail = "fired-root equality mismatches the f criterion"

        result.add(f"{pid}: extension recursion over {len(elements)} elements",
                   recursion_ok, detail if not recursion_ok else "")
        result.add(f"{pid}: size bounds", bounds_ok, detail if not bounds_ok else "")
        result.add(f"{pid}: fired-root containment and equality criterion",
                   fired_ok, detail if not fired_ok else "")

        longest = max(elements, key=lambda e: e.length)
        result.add(
            f"{pid}: longest element inverts every positive root",
            _keyset(inversion_set(rs, longest.witness)) == positive_keys,
        )

        parabolic_ok = True
        for r in range(1, g.n + 1):
            for J in itertools.combinations(range(g.n), r):
                parabolic, mapping = enumerate_parabolic(g, J)
                w0j = max(parabolic.elements.values(), key=lambda e: e.length)
                word = translate_word(w0j.witness, mapping)
                span = set(J)
                for root in rs:
                    supported = all(
                        abs(root[k]) < 1e-9 or k in span for k in range(g.n)
                    )
                    if supported and root_sign(act(g, word, root)) != NEGATIVE:
                        parabolic_ok = False
        result.add(f"{pid}: parabolic longest elements negate supported roots",
                   parabolic_ok)
    return result


def suite_divergence_schemes(seed: int = 0, trials: int = 100) -> SuiteResult:
    """Closed-form pump values match simulation; the four-cycle invariant is
    preserved; both shapes classify outside the families."""
    result = SuiteResult("divergence-schemes")
    for n in (3, 4, 5):
        for product in (1.0, 8.0):
            g = corpus.unit_loop(n, product)
            scheme = loop_divergence(g)
            ok = True
            detail = ""
            for k in range(1, 6):
                sim = scheme.simulate(g, k)
                pred = scheme.predicted(k)
                err = max(abs(s - p) / (1.0 + abs(p)) for s, p in zip(sim, pred))
                if err > 1e-6:
                    ok = False
                    detail = f"k={k}: relative error {err}"
                    break
            result.add(f"loop n={n} product {product:g}: closed form matches simulation",
                       ok, detail)
            result.add(f"loop n={n} product {product:g}: not a family graph",
                       not classify(g).matched)

    g = corpus.load_graph("four-cycle-m5")
    result.add("four-cycle: not a family graph", not classify(g).matched)
    meets, _ = four_cycle_step(g, (1.0, 0.0, 0.0, 0.0))
    result.add("four-cycle: one-hot start meets the invariant", meets)

    rng = random.Random(seed)
    w_amp = -g.amplitudes[0, 3]
    preserved = True
    detail = ""
    for _ in range(trials):
        a = rng.uniform(0.1, 5.0)
        b = rng.uniform(0.0, 5.0)
        c = rng.uniform(0.0, 5.0)
        d = -rng.uniform(0.0, 1.0) * a * w_amp
        lam = (a, b, c, d)
        meets, nxt = four_cycle_step(g, lam)
        if not meets:
            preserved = False
            detail = f"seeded position {lam} rejected"
            break
        meets_next, _ = four_cycle_step(g, nxt)
        if not meets_next:
            preserved = False
            detail = f"invariant lost after one round from {lam}"
            break
    result.add(f"four-cycle: invariant preserved on {trials} seeded starts",
               preserved, detail)
    return result


SUITES = {
    "strong-convergence": suite_strong_convergence,
    "word-duality": suite_word_duality,
    "quotient-lengths": suite_quotient_lengths,
    "theorem43": suite_fundamental_table,
    "theorem52": suite_longest_word,
    "inversion-identities": suite_inversion_identities,
    "divergence-schemes": suite_divergence_schemes,
    "bridge": suite_bridge,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise NumbersGameError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**kwargs)
