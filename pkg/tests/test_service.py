import json

import pytest
from fastapi.testclient import TestClient

from numbersgame.service import create_app


@pytest.fixture
def client(tmp_path):
    app = create_app(store_dir=tmp_path)
    with TestClient(app) as c:
        c.store_dir = tmp_path
        yield c


def make_session(client, preset="i2-4-figure2", position=None):
    body = {"preset": preset}
    if position is not None:
        body["position"] = position
    r = client.post("/sessions", json=body)
    assert r.status_code == 200
    return r.json()


class TestCreate:
    def test_preset_session(self, client):
        s = make_session(client)
        assert s["status"] == "Active"
        assert s["fireable"] == [1, 2]
        assert s["current"] == [1.0, 1.0]

    def test_terminal_at_creation(self, client):
        s = make_session(client, position=[-1.0, -1.0])
        assert s["status"] == "Terminal"
        assert s["fireable"] == []

    def test_inline_graph(self, client):
        r = client.post("/sessions", json={
            "graph": {"n": 1, "amplitudes": [[2.0]]},
            "position": [1.0],
        })
        assert r.status_code == 200

    def test_malformed_graph_rejected(self, client):
        r = client.post("/sessions", json={
            "graph": {"n": 2, "amplitudes": [[2, -1], [-2.5, 2]]},
            "position": [1, 1],
        })
        assert r.status_code == 400
        assert r.json()["error"] == "ValidationError"

    def test_wrong_position_length(self, client):
        r = client.post("/sessions", json={"preset": "a3", "position": [1.0]})
        assert r.status_code == 400

    def test_unknown_preset(self, client):
        r = client.post("/sessions", json={"preset": "zzz"})
        assert r.status_code == 404


class TestFire:
    def test_full_figure_two_line(self, client):
        s = make_session(client)
        sid = s["id"]
        values = []
        for node in (2, 1, 2, 1):
            r = client.post(f"/sessions/{sid}/fire", json={"node": node})
            assert r.status_code == 200
            s = r.json()
            values = s["analysis"]["functional_values"]
        assert values == [1.0, 3.0, 2.0, 1.0]
        assert s["status"] == "Terminal"
        assert s["current"] == [-1.0, -1.0]
        assert s["analysis"]["word_so_far"] == [2, 1, 2, 1]

    def test_unfireable_node_409(self, client):
        s = make_session(client)
        sid = s["id"]
        client.post(f"/sessions/{sid}/fire", json={"node": 2})
        r = client.post(f"/sessions/{sid}/fire", json={"node": 2})
        assert r.status_code == 409
        assert r.json()["error"] == "NodeNotFireable"

    def test_unknown_session_404(self, client):
        r = client.post("/sessions/deadbeef/fire", json={"node": 1})
        assert r.status_code == 404

    def test_prediction_counts_down(self, client):
        s = make_session(client)
        assert s["analysis"]["terminal_prediction"] == 4
        r = client.post(f"/sessions/{s['id']}/fire", json={"node": 1})
        assert r.json()["analysis"]["terminal_prediction"] == 3


class TestWhatIf:
    def test_preview_matches_fire(self, client):
        s = make_session(client)
        sid = s["id"]
        preview = client.post(f"/sessions/{sid}/whatif", json={"node": 1}).json()
        assert preview["position"] == [-1.0, 2.0]
        fired = client.post(f"/sessions/{sid}/fire", json={"node": 1}).json()
        assert fired["current"] == preview["position"]

    def test_preview_does_not_mutate(self, client):
        s = make_session(client)
        sid = s["id"]
        client.post(f"/sessions/{sid}/whatif", json={"node": 1})
        assert client.get(f"/sessions/{sid}").json()["current"] == [1.0, 1.0]

    def test_preview_on_terminal_409(self, client):
        s = make_session(client, position=[-1.0, -1.0])
        r = client.post(f"/sessions/{s['id']}/whatif", json={"node": 1})
        assert r.status_code == 409


class TestUndo:
    def test_restores_bit_for_bit(self, client):
        s = make_session(client)
        sid = s["id"]
        client.post(f"/sessions/{sid}/fire", json={"node": 2})
        r = client.post(f"/sessions/{sid}/undo")
        assert r.json()["current"] == [1.0, 1.0]
        assert r.json()["history"] == []

    def test_undo_on_fresh_session_409(self, client):
        s = make_session(client)
        r = client.post(f"/sessions/{s['id']}/undo")
        assert r.status_code == 409
        assert r.json()["error"] == "NothingToUndo"

    def test_three_fires_two_undos(self, client):
        s = make_session(client)
        sid = s["id"]
        for node in (2, 1, 2):
            client.post(f"/sessions/{sid}/fire", json={"node": node})
        client.post(f"/sessions/{sid}/undo")
        r = client.post(f"/sessions/{sid}/undo")
        assert len(r.json()["history"]) == 1


class TestAutoplay:
    def test_greedy_completes(self, client):
        s = make_session(client)
        sid = s["id"]
        client.post(f"/sessions/{sid}/fire", json={"node": 1})
        r = client.post(f"/sessions/{sid}/autoplay",
                        json={"strategy": "greedy", "steps": 100})
        s = r.json()
        assert s["status"] == "Terminal"
        assert len(s["history"]) == 4

    def test_zero_steps_no_change(self, client):
        s = make_session(client)
        r = client.post(f"/sessions/{s['id']}/autoplay",
                        json={"strategy": "greedy", "steps": 0})
        assert r.json()["history"] == []

    def test_unknown_strategy_400(self, client):
        s = make_session(client)
        r = client.post(f"/sessions/{s['id']}/autoplay",
                        json={"strategy": "clever", "steps": 1})
        assert r.status_code == 400
        assert r.json()["error"] == "UnknownStrategy"

    def test_loop_hits_server_cap(self, tmp_path):
        app = create_app(store_dir=tmp_path / "caps", step_cap=25)
        with TestClient(app) as client:
            s = make_session(client, preset="loop-3-pi8", position=[1, 0, 0])
            r = client.post(f"/sessions/{s['id']}/autoplay",
                            json={"strategy": "greedy", "steps": 500})
            body = r.json()
            assert body["status"] == "BoundExceeded"
            assert len(body["history"]) == 25
            r = client.post(f"/sessions/{s['id']}/fire", json={"node": 1})
            assert r.status_code == 409


class TestPersistence:
    def test_log_replay_reproduces_state(self, client):
        s = make_session(client)
        sid = s["id"]
        for node in (2, 1):
            client.post(f"/sessions/{sid}/fire", json={"node": node})
        client.post(f"/sessions/{sid}/undo")
        current = client.get(f"/sessions/{sid}").json()["current"]

        app2 = create_app(store_dir=client.store_dir)
        with TestClient(app2) as fresh:
            again = fresh.get(f"/sessions/{sid}").json()
            assert again["current"] == current
            assert again["history"] == client.get(f"/sessions/{sid}").json()["history"]

    def test_log_is_append_only(self, client):
        s = make_session(client)
        sid = s["id"]
        client.post(f"/sessions/{sid}/fire", json={"node": 2})
        client.post(f"/sessions/{sid}/undo")
        lines = (client.store_dir / f"{sid}.jsonl").read_text().splitlines()
        events = [json.loads(line) for line in lines[1:]]
        assert events == [{"fire": 2}, {"undo": True}]


def test_presets_endpoint(client):
    r = client.get("/presets")
    assert r.status_code == 200
    presets = {p["id"]: p for p in r.json()["presets"]}
    assert presets["i2-4-figure2"]["default_position"] == [1.0, 1.0]
    assert presets["a2-asymmetric"]["family"] == "A2"


def test_analysis_endpoint(client):
    s = make_session(client, preset="b3", position=[1, 1, 1])
    r = client.get(f"/sessions/{s['id']}/analysis")
    body = r.json()
    assert body["is_reduced"] is True
    assert body["adjacency_flag"] is True
    assert body["terminal_prediction"] == 9


def test_any_play_hits_the_predicted_length(client):
    # random autoplay on a family graph always ends after the predicted
    # number of moves, whatever the choices were
    for seed in range(4):
        s = make_session(client, preset="b3", position=[1, 0, 1])
        predicted = s["analysis"]["terminal_prediction"]
        r = client.post(f"/sessions/{s['id']}/autoplay",
                        json={"strategy": "random", "steps": 500, "seed": seed})
        body = r.json()
        assert body["status"] == "Terminal"
        assert len(body["history"]) == predicted
