"""HTTP API tests: schemas, status codes, equivalence with the library."""

import json
import re
from importlib import resources

import pytest
from fastapi.testclient import TestClient

from fairplay.imputation import build_context, impute_bayes_blup
from fairplay.service import create_app
from fairplay.tournament_io import bucharest_fixture


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def bucharest_doc():
    return json.loads(
        resources.files("fairplay.data").joinpath("bucharest_2026.json").read_text()
    )


class TestHealth:
    def test_ok(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.text == "ok"

    def test_available_before_any_impute(self):
        fresh = TestClient(create_app())
        assert fresh.get("/api/health").text == "ok"

    def test_stable_under_repeated_calls(self, client):
        assert {client.get("/api/health").text for _ in range(5)} == {"ok"}


class TestImpute:
    def test_bayes_table_values(self, client, bucharest_doc):
        response = client.post("/api/impute", json={**bucharest_doc, "method": "bayes"})
        assert response.status_code == 200
        body = response.json()
        scores = {i["opponentId"]: i["score"] for i in body["imputations"]}
        assert scores["keymer"] == pytest.approx(0.700, abs=2e-3)
        assert scores["deac"] == pytest.approx(0.551, abs=2e-3)
        assert set(scores) == {"keymer", "so", "vanforeest", "deac"}
        assert body["weight"] == pytest.approx(0.625, abs=1e-12)
        assert body["posterior"]["alpha"] == pytest.approx(2.53, abs=0.01)
        assert body["posterior"]["beta"] == pytest.approx(5.47, abs=0.01)
        intervals = [i["interval"] for i in body["imputations"]]
        assert all(iv is not None and iv[0] <= iv[1] for iv in intervals)

    def test_forfeit_all_ones(self, client, bucharest_doc):
        response = client.post("/api/impute", json={**bucharest_doc, "method": "forfeit"})
        body = response.json()
        assert all(i["score"] == 1.0 for i in body["imputations"])
        assert all(i["interval"] is None for i in body["imputations"])

    def test_malformed_rating_names_field(self, client, bucharest_doc):
        doc = json.loads(json.dumps(bucharest_doc))
        doc["players"][0]["rating"] = "29OO"
        response = client.post("/api/impute", json=doc)
        assert response.status_code == 400
        assert response.json()["path"] == "players[0].rating"

    def test_unknown_method_is_schema_error(self, client, bucharest_doc):
        response = client.post("/api/impute", json={**bucharest_doc, "method": "dice"})
        assert response.status_code == 400
        assert response.json()["path"] == "method"

    def test_domain_error_is_422(self, client):
        doc = {
            "players": [
                {"id": "w", "name": "W", "rating": 2700},
                {"id": "a", "name": "A", "rating": 2650},
            ],
            "games": [{"white": "w", "black": "a", "result": "1-0", "round": 1}],
            "withdrawn": "w",
        }
        # withdrawn played everyone: nothing to impute is fine, but a
        # performance request with no completed games must 422 via compare
        response = client.post("/api/compare", json={"tournament": {**doc, "games": []}})
        assert response.status_code == 422

    def test_matches_library_to_1e9(self, client, bucharest_doc):
        response = client.post("/api/impute", json=bucharest_doc)
        scores = {i["opponentId"]: i["score"] for i in response.json()["imputations"]}
        tournament = bucharest_fixture()
        ctx = build_context(tournament.crosstable, "firouzja")
        for pid, api_score in scores.items():
            direct = impute_bayes_blup(ctx, tournament.crosstable.player(pid), 3.0).score
            assert api_score == pytest.approx(direct, abs=1e-9)

    def test_numeric_precision_at_least_six_digits(self, client, bucharest_doc):
        raw = client.post("/api/impute", json=bucharest_doc).text
        floats = re.findall(r'"score":\s*(0\.\d{6,})', raw)
        assert floats, f"scores not serialized at full precision: {raw[:200]}"

    def test_content_type_enforced(self, client, bucharest_doc):
        response = client.post(
            "/api/impute",
            content=json.dumps(bucharest_doc),
            headers={"content-type": "text/plain"},
        )
        assert response.status_code == 400

    def test_degenerate_tournament_falls_back(self, client):
        doc = {
            "players": [
                {"id": "w", "name": "W", "rating": 2700},
                {"id": "a", "name": "A", "rating": 2650},
                {"id": "b", "name": "B", "rating": 2600},
            ],
            "games": [],
            "withdrawn": "w",
        }
        response = client.post("/api/impute", json={**doc, "method": "bayes"})
        assert response.status_code == 200
        body = response.json()
        assert body["weight"] == 0.0
        scores = {i["opponentId"]: i["score"] for i in body["imputations"]}
        assert scores["a"] == pytest.approx(0.4285, abs=1e-3)


class TestSensitivity:
    def test_five_rows(self, client, bucharest_doc):
        response = client.post(
            "/api/sensitivity",
            json={"tournament": bucharest_doc, "kValues": [1, 2, 3, 4, 5]},
        )
        assert response.status_code == 200
        body = response.json()
        assert len(body["rows"]) == 5
        k3 = body["rows"][2]
        assert k3["scores"]["keymer"] == pytest.approx(0.700, abs=2e-3)
        assert k3["scores"]["deac"] == pytest.approx(0.551, abs=2e-3)
        assert body["spread"] == pytest.approx(0.149, abs=2e-3)

    def test_empty_k_list_is_400(self, client, bucharest_doc):
        response = client.post(
            "/api/sensitivity", json={"tournament": bucharest_doc, "kValues": []}
        )
        assert response.status_code == 400
        assert response.json()["path"] == "kValues"

    def test_duplicate_k_idempotent(self, client, bucharest_doc):
        response = client.post(
            "/api/sensitivity", json={"tournament": bucharest_doc, "kValues": [3, 3]}
        )
        rows = response.json()["rows"]
        assert rows[0] == rows[1]


class TestCompare:
    def test_forfeit_vs_bayes_ranges(self, client, bucharest_doc):
        response = client.post("/api/compare", json={"tournament": bucharest_doc})
        assert response.status_code == 200
        body = response.json()
        per_opp = {row["opponentId"]: row["perMethod"] for row in body["imputations"]}
        for pid in ("keymer", "so", "vanforeest", "deac"):
            assert per_opp[pid]["forfeit"] == 1.0
            assert 0.549 <= per_opp[pid]["bayes"] <= 0.702
        # no games besides the withdrawn player's: annulment cell is null
        assert all(row["perMethod"]["annulment"] is None for row in body["imputations"])

    def test_annulment_standings_drop_withdrawn_row(self, client, bucharest_doc):
        body = client.post("/api/compare", json={"tournament": bucharest_doc}).json()
        assert len(body["methods"]["annulment"]) == 9
        assert len(body["methods"]["bayes"]) == 10

    def test_identical_player_ordering_across_methods(self, client, bucharest_doc):
        body = client.post("/api/compare", json={"tournament": bucharest_doc}).json()
        orders = {
            label: [row["playerId"] for row in rows]
            for label, rows in body["methods"].items()
        }
        full = orders["bayes"]
        assert orders["forfeit"] == full == orders["elo"] == orders["performance"]
        assert orders["annulment"] == [p for p in full if p != "firouzja"]

    def test_methods_agree_when_nothing_unplayed(self, client):
        doc = {
            "players": [
                {"id": "w", "name": "W", "rating": 2700},
                {"id": "a", "name": "A", "rating": 2650},
                {"id": "b", "name": "B", "rating": 2600},
            ],
            "games": [
                {"white": "w", "black": "a", "result": "1-0", "round": 1},
                {"white": "w", "black": "b", "result": "1/2-1/2", "round": 2},
                {"white": "a", "black": "b", "result": "0-1", "round": 3},
            ],
            "withdrawn": "w",
        }
        body = client.post("/api/compare", json={"tournament": doc}).json()
        assert body["imputations"] == []
        totals = {
            label: [row["total"] for row in rows]
            for label, rows in body["methods"].items()
            if label != "annulment"
        }
        reference = totals.pop("bayes")
        assert all(values == reference for values in totals.values())


class TestStatelessness:
    def test_request_order_does_not_matter(self, client, bucharest_doc):
        first = client.post("/api/impute", json=bucharest_doc).json()
        client.post("/api/compare", json={"tournament": bucharest_doc})
        client.post(
            "/api/sensitivity", json={"tournament": bucharest_doc, "kValues": [1, 9]}
        )
        second = client.post("/api/impute", json=bucharest_doc).json()
        assert first == second

    def test_root_404_without_ui_bundle(self, client):
        assert client.get("/").status_code == 404
