import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numbersgame import (
    EGCMGraph,
    Status,
    check_strong_convergence,
    dual_apply,
    enumerate_games,
    fire,
    fireable,
    four_cycle_step,
    loop_divergence,
    play,
)
from numbersgame.corpus import load_graph, unit_loop
from numbersgame.errors import (
    IllegalScriptedFiring,
    NodeNotFireable,
    NotUnitProductLoop,
    WrongGraphShape,
)

from conftest import tree_graphs


def brute_force_games(g, lam, cap):
    """Independent maximal-game enumerator: plain recursion, no sharing."""
    eps = 1e-9 * (1 + max(abs(v) for v in lam))

    def step(pos, i):
        row = g.rows[i]
        nxt = tuple(x - row[j] * pos[i] for j, x in enumerate(pos))
        return tuple(0.0 if abs(x) <= eps else x for x in nxt)

    out = []

    def rec(pos, prefix):
        moves = [i for i in range(g.n) if pos[i] > eps]
        if not moves:
            out.append((tuple(prefix), pos))
            return
        if len(prefix) >= cap:
            out.append((tuple(prefix), None))
            return
        for i in moves:
            rec(step(pos, i), prefix + [i])

    rec(tuple(0.0 if abs(v) <= eps else float(v) for v in lam), [])
    return out


class TestFire:
    def test_fire_first_node(self, fig2):
        assert fire(fig2, (1.0, 1.0), 0) == (-1.0, 2.0)

    def test_fire_second_node(self, fig2):
        assert fire(fig2, (1.0, 1.0), 1) == (3.0, -1.0)

    def test_nonpositive_refused(self, fig2):
        with pytest.raises(NodeNotFireable):
            fire(fig2, (3.0, -1.0), 1)

    def test_fired_node_negates(self, fig2):
        lam = (0.7, 0.3)
        assert fire(fig2, lam, 0)[0] == pytest.approx(-0.7)

    def test_fireable_sets(self, fig2):
        assert fireable(fig2, (1.0, 1.0)) == (0, 1)
        assert fireable(fig2, (-1.0, 2.0)) == (1,)
        assert fireable(fig2, (-1.0, -1.0)) == ()

    @settings(max_examples=25, deadline=None)
    @given(tree_graphs(), st.integers(0, 10_000))
    def test_firing_is_linear(self, g, seed):
        rng = random.Random(seed)
        lam = tuple(rng.uniform(0.2, 2.0) for _ in range(g.n))
        mu = tuple(rng.uniform(-0.15, 1.0) for _ in range(g.n))
        i = rng.randrange(g.n)
        both = fire(g, tuple(a + b for a, b in zip(lam, mu)), i)
        split = tuple(
            a + b for a, b in zip(fire(g, lam, i), dual_apply(g, (i,), mu))
        )
        assert both == pytest.approx(split, abs=1e-8)


class TestPlay:
    def test_greedy_on_two_nodes(self, fig2):
        rec = play(fig2, (1.0, 1.0))
        assert rec.status is Status.TERMINAL
        assert len(rec.firings) == 4
        assert rec.final == (-1.0, -1.0)

    def test_one_node_game(self):
        g = EGCMGraph([[2.0]])
        rec = play(g, (1.0,))
        assert rec.firings == (0,) and rec.final == (-1.0,)

    def test_scripted_game_records_values(self, fig2):
        rec = play(fig2, (1.0, 1.0), script=(1, 0, 1, 0))
        assert rec.fired_values == (1.0, 3.0, 2.0, 1.0)
        assert rec.status is Status.TERMINAL

    def test_illegal_script_reports_index(self, fig2):
        with pytest.raises(IllegalScriptedFiring) as info:
            play(fig2, (1.0, 1.0), script=(1, 1))
        assert info.value.index == 1

    def test_script_halts_early(self, fig2):
        rec = play(fig2, (1.0, 1.0), script=(0,))
        assert rec.status is Status.HALTED

    def test_random_strategy_terminates_with_same_length(self, fig2):
        lengths = {
            len(play(fig2, (1.0, 1.0), strategy="random", seed=s).firings)
            for s in range(10)
        }
        assert lengths == {4}

    def test_cap_reported_on_divergent_loop(self):
        g = unit_loop(3, 8.0)
        rec = play(g, (1.0, 0.0, 0.0), step_cap=50)
        assert rec.status is Status.BOUND_EXCEEDED
        assert len(rec.firings) == 50


class TestEnumerate:
    def test_two_games_on_fig2(self, fig2):
        games = enumerate_games(fig2, (1.0, 1.0))
        assert len(games) == 2
        assert all(len(r.firings) == 4 for r in games)
        assert all(r.final == (-1.0, -1.0) for r in games)

    def test_zero_position_one_empty_game(self, fig2):
        games = enumerate_games(fig2, (0.0, 0.0))
        assert len(games) == 1
        assert games[0].firings == ()
        assert games[0].status is Status.TERMINAL

    def test_symmetric_a2_two_games_of_three(self):
        g = EGCMGraph([[2, -1], [-1, 2]])
        games = enumerate_games(g, (1.0, 1.0))
        assert sorted(len(r.firings) for r in games) == [3, 3]

    @pytest.mark.parametrize("pid", ["a2", "a3", "b3", "i2-5", "a2-asymmetric"])
    def test_matches_brute_force(self, pid):
        g = load_graph(pid)
        lam = tuple(1.0 for _ in range(g.n))
        fast = {(r.firings, r.final) for r in enumerate_games(g, lam, step_cap=20)}
        slow = {(f, p) for f, p in brute_force_games(g, lam, 20)}
        assert fast == slow

    def test_records_replay_cleanly(self, fig2):
        for rec in enumerate_games(fig2, (1.0, 1.0)):
            pos = rec.initial
            for k, i in enumerate(rec.firings):
                assert rec.fired_values[k] == pos[i]
                pos = fire(fig2, pos, i)
                assert pos == rec.intermediates[k + 1]


class TestEveryNodeFires:
    @pytest.mark.parametrize("pid", ["a2", "a3", "b3", "d4", "h3", "i2-6"])
    def test_terminal_games_touch_every_node(self, pid):
        # connected graph, nonzero dominant start: no node sits a game out
        g = load_graph(pid)
        rng = random.Random(3)
        for _ in range(5):
            lam = tuple(float(rng.randint(0, 2)) for _ in range(g.n))
            if all(v == 0 for v in lam):
                lam = (1.0,) + lam[1:]
            rec = play(g, lam, strategy="random", seed=rng.randint(0, 99))
            assert rec.status is Status.TERMINAL
            assert set(rec.firings) == set(range(g.n))


class TestConvergence:
    def test_fig2_consistent(self, fig2):
        report = check_strong_convergence(fig2, (1.0, 1.0))
        assert report.consistent
        assert report.game_count == 2
        assert report.lengths == (4,)
        assert report.terminals[0] == pytest.approx((-1.0, -1.0))

    def test_trivial_when_nothing_fireable(self, fig2):
        report = check_strong_convergence(fig2, (-1.0, 0.0))
        assert report.consistent and report.lengths == (0,)

    def test_a3_random_dominant_consistent(self):
        g = load_graph("a3")
        rng = random.Random(7)
        for _ in range(5):
            lam = tuple(float(rng.randint(0, 3)) for _ in range(3))
            report = check_strong_convergence(g, lam, step_cap=10)
            assert report.consistent

    def test_divergent_loop_reports_cap(self):
        g = unit_loop(3, 8.0)
        report = check_strong_convergence(g, (1.0, 0.0, 0.0), step_cap=12)
        assert not report.consistent and report.bound_exceeded

    def test_game_count_equals_enumeration(self):
        g = load_graph("b3")
        lam = (1.0, 1.0, 1.0)
        report = check_strong_convergence(g, lam)
        assert report.game_count == len(enumerate_games(g, lam))


class TestLoopPump:
    def test_rejects_non_loop(self, fig2):
        with pytest.raises(NotUnitProductLoop):
            loop_divergence(fig2)

    def test_rejects_loop_with_nonunit_product(self):
        M = [[2.0 if i == j else 0.0 for j in range(3)] for i in range(3)]
        for a, b in ((0, 1), (1, 2), (2, 0)):
            M[a][b] = M[b][a] = -1.0
        M[0][1], M[1][0] = -1.0, -2.0  # label 4 edge
        with pytest.raises(NotUnitProductLoop):
            loop_divergence(EGCMGraph(M))

    def test_symmetric_triangle_closed_form(self):
        g = unit_loop(3, 1.0)
        scheme = loop_divergence(g)
        for k in (1, 2, 3):
            first = scheme.predicted(k)[scheme.loop_order[0]]
            assert first == pytest.approx(1.0 + 2 * k)

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("product", [1.0, 8.0])
    def test_simulation_matches_closed_form(self, n, product):
        g = unit_loop(n, product)
        scheme = loop_divergence(g)
        for k in range(1, 6):
            sim = scheme.simulate(g, k)
            pred = scheme.predicted(k)
            for s, p in zip(sim, pred):
                assert s == pytest.approx(p, rel=1e-6, abs=1e-9)

    def test_product_8_first_node_value(self):
        g = unit_loop(3, 8.0)
        scheme = loop_divergence(g)
        expected = 1 + 8 + 1 / 8 + 64 + 1 / 64
        assert scheme.predicted(2)[scheme.loop_order[0]] == pytest.approx(expected)


class TestFourCycle:
    @pytest.fixture
    def square(self):
        return load_graph("four-cycle-m5")

    def test_shape_validation(self, fig2):
        with pytest.raises(WrongGraphShape):
            four_cycle_step(fig2, (1.0, 1.0))

    def test_wrong_label_rejected(self):
        g = unit_loop(4, 1.0)
        with pytest.raises(WrongGraphShape):
            four_cycle_step(g, (1.0, 0.0, 0.0, 0.0))

    def test_one_hot_start_qualifies(self, square):
        meets, nxt = four_cycle_step(square, (1.0, 0.0, 0.0, 0.0))
        assert meets and nxt is not None

    def test_negative_first_coordinate_fails(self, square):
        meets, nxt = four_cycle_step(square, (-1.0, 1.0, 1.0, 0.0))
        assert not meets and nxt is None

    def test_new_coordinates_follow_the_recursion(self, square):
        # after one round, second entry is s*c and third is u*(a*w + d)
        a, b, c, d = 2.0, 0.5, 0.75, -0.25
        s = -square.amplitudes[2, 1]
        u = -square.amplitudes[3, 2]
        w = -square.amplitudes[0, 3]
        meets, nxt = four_cycle_step(square, (a, b, c, d))
        assert meets
        assert nxt[1] == pytest.approx(s * c)
        assert nxt[2] == pytest.approx(u * (a * w + d))

    def test_second_one_hot_reaches_the_invariant(self, square):
        # playing (1,2,3) from the second one-hot start lands on
        # (q + r*t*v, 0, 0, -r*t), which qualifies
        rec = play(square, (0.0, 1.0, 0.0, 0.0), script=(1, 2, 3))
        q = -square.amplitudes[1, 0]
        r = -square.amplitudes[1, 2]
        t = -square.amplitudes[2, 3]
        v = -square.amplitudes[3, 0]
        assert rec.final == pytest.approx((q + r * t * v, 0.0, 0.0, -r * t))
        meets, _ = four_cycle_step(square, rec.final)
        assert meets

    def test_rounds_stay_legal_forever(self, square):
        lam = (1.0, 0.0, 0.0, 0.0)
        for _ in range(30):
            meets, lam = four_cycle_step(square, lam)
            assert meets
        assert max(lam) > 1e6
