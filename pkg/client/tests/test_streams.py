import httpx
import numpy as np
import pytest

from cogclient import ProtocolError, TransportError, open_dataset, stream_episodes

from conftest import EPISODES_PER_TASK, SEED, TASKS

CONFIG = {"frames": 4, "max_memory": 3, "max_distractors": 1, "seed": SEED}


def test_stream_replays_identically(server_endpoint):
    first = list(stream_episodes(server_endpoint, ["Exist"], 5, config=CONFIG))
    second = list(stream_episodes(server_endpoint, ["Exist"], 5, config=CONFIG))
    assert len(first) == 5
    for a, b in zip(first, second):
        assert a.instruction == b.instruction
        assert a.targets == b.targets
        assert np.array_equal(a.mask, b.mask)


def test_pagination_is_seamless(server_endpoint):
    paged = list(stream_episodes(server_endpoint, ["GoColor"], 10,
                                 config=CONFIG, page_size=3))
    direct = list(stream_episodes(server_endpoint, ["GoColor"], 10,
                                  config=CONFIG, page_size=10))
    assert [(b.task, b.index) for b in paged] == \
        [(b.task, b.index) for b in direct]
    for a, b in zip(paged, direct):
        assert a.targets == b.targets


def test_disk_and_network_paths_agree(rendered_dataset, server_endpoint):
    """Acceptance: 100 episodes read from disk equal the same episodes
    streamed from the server, images included."""
    disk = {(b.task, b.index): b for b in open_dataset(rendered_dataset)}
    assert len(disk) == 100
    streamed = list(stream_episodes(
        server_endpoint, TASKS, EPISODES_PER_TASK,
        config=CONFIG, encoding="base64-png"))
    assert len(streamed) == 100
    for batch in streamed:
        ref = disk[(batch.task, batch.index)]
        assert batch.instruction == ref.instruction
        assert batch.targets == ref.targets
        assert np.array_equal(batch.mask, ref.mask)
        assert batch.images.shape == (4, 112, 112, 3)
        assert np.array_equal(batch.images, ref.images)


def test_score_round_trip_of_oracle_answers(server_endpoint):
    batches = list(stream_episodes(server_endpoint, ["CompareColor", "GoColor"],
                                   10, config=CONFIG))
    answers = []
    invalid = 0
    for batch in batches:
        for t, target in enumerate(batch.targets):
            if not batch.mask[t]:
                invalid += 1
            answers.append({"task": batch.task, "index": batch.index,
                            "frame": t, "response": target})
    response = httpx.post(f"{server_endpoint}/v1/score", json={
        "config": CONFIG, "answers": answers}, timeout=60)
    assert response.status_code == 200
    report = response.json()
    assert report["overall"] == 1.0
    assert report["skipped"] == invalid


def test_transport_error_is_distinct():
    with pytest.raises(TransportError):
        list(stream_episodes("http://127.0.0.1:9", ["Exist"], 1,
                             config=CONFIG, timeout=0.5))


def test_protocol_error_is_distinct(server_endpoint):
    with pytest.raises(ProtocolError):
        list(stream_episodes(server_endpoint, ["NotATask"], 1, config=CONFIG))
