import base64

import pytest
from fastapi.testclient import TestClient

from cogkit.png import decode_png
from cogkit.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(default_seed=7, page_limit=64))


def test_healthz(client):
    response = client.get("/v1/healthz")
    assert response.status_code == 200
    assert response.text == "ok"


def test_tasks_listing(client):
    response = client.get("/v1/tasks")
    assert response.status_code == 200
    body = response.json()
    assert len(body["tasks"]) == 44
    by_name = {t["name"]: t for t in body["tasks"]}
    assert by_name["Exist"]["chance_level"] == 0.5
    assert by_name["AndCompareColor"]["nodes"] == 11


def test_episode_determinism(client):
    body = {"tasks": ["GetShape"], "count": 2, "start_index": 0}
    first = client.post("/v1/episodes", json=body)
    second = client.post("/v1/episodes", json=body)
    assert first.status_code == 200
    assert first.content == second.content


def test_statelessness_across_instances():
    body = {"tasks": ["CompareColor"], "count": 2}
    a = TestClient(create_app(default_seed=7)).post("/v1/episodes", json=body)
    b = TestClient(create_app(default_seed=7)).post("/v1/episodes", json=body)
    assert a.content == b.content


def test_pagination_consistency(client):
    pages = []
    for start in (0, 3):
        response = client.post("/v1/episodes", json={
            "tasks": ["Exist"], "count": 3, "start_index": start})
        pages.extend(response.json()["episodes"])
    combined = client.post("/v1/episodes", json={
        "tasks": ["Exist"], "count": 6, "start_index": 0}).json()["episodes"]
    assert pages == combined


def test_base64_png_encoding(client):
    response = client.post("/v1/episodes", json={
        "tasks": ["Go"], "count": 1, "encoding": "base64-png"})
    episode = response.json()["episodes"][0]
    assert len(episode["images_b64"]) == 4
    image = decode_png(base64.b64decode(episode["images_b64"][0]))
    assert image.shape == (112, 112, 3)


def test_score_oracle_answers(client):
    episodes = client.post("/v1/episodes", json={
        "tasks": ["CompareColor", "GoColor"], "count": 3,
    }).json()["episodes"]
    answers = []
    invalid = 0
    for episode in episodes:
        for t, target in enumerate(episode["targets"]):
            if target["kind"] == "invalid":
                invalid += 1
            answers.append({"task": episode["task"], "index": episode["index"],
                            "frame": t, "response": target})
    report = client.post("/v1/score", json={"answers": answers}).json()
    assert report["overall"] == 1.0
    assert report["skipped"] == invalid
    assert set(report["per_task"]) == {"CompareColor", "GoColor"}


def test_score_wrong_answers(client):
    episodes = client.post("/v1/episodes", json={
        "tasks": ["GetColor"], "count": 2}).json()["episodes"]
    answers = []
    for episode in episodes:
        for t, target in enumerate(episode["targets"]):
            answers.append({
                "task": episode["task"], "index": episode["index"], "frame": t,
                "response": {"kind": "point", "x": 0.5, "y": 0.5}})
    report = client.post("/v1/score", json={"answers": answers}).json()
    assert report["overall"] == 0.0


def test_unknown_task_404(client):
    assert client.post("/v1/episodes", json={
        "tasks": ["Nope"], "count": 1}).status_code == 404
    assert client.post("/v1/score", json={
        "answers": [{"task": "Nope", "index": 0, "frame": 0,
                     "response": {"kind": "verbal", "word": "red"}}],
    }).status_code == 404


def test_page_limit_413(client):
    assert client.post("/v1/episodes", json={
        "tasks": "all", "count": 2}).status_code == 413


def test_malformed_request_400(client):
    assert client.post("/v1/episodes", json={"count": "many"}).status_code == 400
    assert client.post("/v1/score", json={"answers": [{"task": "Exist"}]},
                       ).status_code == 400
    response = client.post("/v1/score", json={"answers": [
        {"task": "Exist", "index": 0, "frame": 99,
         "response": {"kind": "verbal", "word": "true"}}]})
    assert response.status_code == 400


def test_seed_override_changes_content(client):
    base = client.post("/v1/episodes", json={
        "tasks": ["Go"], "count": 1}).json()
    seeded = client.post("/v1/episodes", json={
        "tasks": ["Go"], "count": 1, "config": {"seed": 123}}).json()
    assert base["episodes"] != seeded["episodes"]
