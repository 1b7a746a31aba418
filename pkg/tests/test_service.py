"""HTTP layer over the core package, exercised in process."""

import pytest
from fastapi.testclient import TestClient

from sl2unitals.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    res = client.get("/health")
    assert res.status_code == 200
    assert res.json() == {"status": "ok"}


def test_field_info(client):
    res = client.post("/field/info", json={"p": 3, "e": 2})
    body = res.json()
    assert body["q"] == 9
    assert len(body["squares"]) == 5


def test_field_info_rejects_nonprime(client):
    res = client.post("/field/info", json={"p": 4})
    assert res.status_code == 422


def test_para_generate_verify_round_trip(client):
    res = client.post("/para/generate", json={"q": 3, "kind": "odd"})
    text = res.json()["text"]
    res = client.post("/para/verify", json={"text": text})
    assert res.json() == {"ok": True, "problems": []}


def test_para_verify_rejects_garbage(client):
    res = client.post("/para/verify", json={"text": "not a parallelism"})
    assert res.status_code == 422


def test_para_stabilizer(client):
    text = client.post("/para/generate", json={"q": 3, "kind": "odd"}).json()["text"]
    res = client.post("/para/stabilizer", json={"text": text})
    assert res.json() == {"order": 24, "orbit": 24}


def test_close_and_design_verify(client):
    res = client.post("/close", json={"unital": "3", "kind": "flat"})
    text = res.json()["text"]
    res = client.post("/design/verify", json={"text": text, "n": 3})
    assert res.json() == {"ok": True, "problems": []}
    res = client.post("/iso/aut", json={"text": text})
    assert res.json() == {"order": 192}
    res = client.post("/iso/compare", json={"first": text, "second": text})
    assert res.json() == {"isomorphic": True}


def test_close_rejects_mismatched_para_text(client):
    para_text = client.post("/para/generate", json={"q": 4, "kind": "sq"}).json()["text"]
    res = client.post("/close", json={"unital": "3", "para_text": para_text})
    assert res.status_code == 422


def test_close_needs_a_parallelism(client):
    res = client.post("/close", json={"unital": "3"})
    assert res.status_code == 422


def test_trans_report(client):
    res = client.post("/trans/report", json={"unital": "3", "kind": "natural"})
    reports = res.json()["reports"]
    assert len(reports) == 4
    assert all(r["order"] == 3 for r in reports)
    assert all(r["structure"] == "C3" for r in reports)
    assert all(r["is_translation_center"] for r in reports)
    assert [r["center"] for r in reports] == [24, 25, 26, 27]


def test_repro_endpoint(client):
    res = client.get("/repro/counts", params={"q": 3})
    body = res.json()
    assert body["ok"] is True
    assert any("26" in line for line in body["lines"])
    assert client.get("/repro/bogus").status_code == 422
