import hashlib
import json
from pathlib import Path

import pytest

from cogkit.dataset import (
    DatasetManifest,
    episode_to_record,
    read_dataset,
    record_to_episode,
    write_dataset,
)
from cogkit.episodes import episode_for, episode_stream
from cogkit.errors import ChecksumError, FormatVersionError
from cogkit.generation import verify_episode
from cogkit.png import decode_png
from cogkit.render import rasterize_frame
from cogkit.types import GenerationConfig

TASKS = ["Exist", "GoColor"]


def _write(tmp_path, mode="symbolic", seed=9, count=4, tasks=TASKS):
    config = GenerationConfig.canonical(seed=seed)
    out = tmp_path / f"ds-{mode}-{seed}"
    manifest = write_dataset(
        episode_stream(tasks, config, count), out, mode,
        config=config, tasks=tasks, episodes_per_task=count)
    return out, manifest


def test_round_trip_structural_equality(tmp_path):
    out, manifest = _write(tmp_path)
    reader = read_dataset(out)
    episodes = list(reader)
    assert len(episodes) == len(TASKS) * 4
    config = GenerationConfig.canonical(seed=9)
    for episode in episodes:
        original = episode_for(episode.task_name, config, episode.seed_path[1])
        assert episode.instruction == original.instruction
        assert episode.targets == original.targets
        assert [f.objects for f in episode.frames] == \
            [f.objects for f in original.frames]
        assert verify_episode(episode).ok


def test_record_serialization_round_trip():
    config = GenerationConfig.canonical(seed=3)
    episode = episode_for("CompareColor", config, 5)
    record = episode_to_record(episode)
    back = record_to_episode(json.loads(json.dumps(record)), config, "v1")
    assert back.instruction == episode.instruction
    assert back.targets == episode.targets
    assert back.instance.bindings == episode.instance.bindings


def test_identical_writes_identical_checksums(tmp_path):
    _, m1 = _write(tmp_path / "a")
    _, m2 = _write(tmp_path / "b")
    assert m1.checksums == m2.checksums
    assert m1.created_at != "" and m2.created_at != ""


def test_tampered_shard_is_named(tmp_path):
    out, _ = _write(tmp_path)
    shard = out / "Exist.jsonl"
    shard.write_text(shard.read_text().replace("true", "false", 1))
    with pytest.raises(ChecksumError) as err:
        read_dataset(out)
    assert "Exist.jsonl" in str(err.value)


def test_empty_dataset_is_valid(tmp_path):
    config = GenerationConfig.canonical(seed=1)
    out = tmp_path / "empty"
    manifest = write_dataset(iter(()), out, "symbolic", config=config,
                             tasks=TASKS, episodes_per_task=0)
    assert set(manifest.checksums) == {"Exist.jsonl", "GoColor.jsonl"}
    assert list(read_dataset(out)) == []


def test_format_version_rejected(tmp_path):
    out, _ = _write(tmp_path)
    path = out / "manifest.json"
    obj = json.loads(path.read_text())
    obj["format_version"] = 999
    path.write_text(json.dumps(obj))
    with pytest.raises(FormatVersionError):
        read_dataset(out)


def test_rendered_mode_writes_pngs(tmp_path):
    out, manifest = _write(tmp_path, mode="rendered", count=2)
    png_entries = [k for k in manifest.checksums if k.endswith(".png")]
    assert len(png_entries) == len(TASKS) * 2 * 4  # tasks * episodes * frames
    reader = read_dataset(out)
    for record in reader.records():
        assert len(record["images"]) == 4
        for rel in record["images"]:
            assert (out / rel).exists()


def test_symbolic_rerender_matches_rendered_pngs(tmp_path):
    out_r, _ = _write(tmp_path / "r", mode="rendered", count=2)
    out_s, _ = _write(tmp_path / "s", mode="symbolic", count=2)
    rendered = read_dataset(out_r)
    symbolic = list(read_dataset(out_s))
    for record, episode in zip(rendered.records(), symbolic):
        for rel, frame in zip(record["images"], episode.frames):
            on_disk = decode_png((out_r / rel).read_bytes())
            re_rendered = rasterize_frame(frame, episode.config.canvas)
            assert hashlib.sha256(on_disk.tobytes()).hexdigest() == \
                hashlib.sha256(re_rendered.tobytes()).hexdigest()


def test_manifest_regenerates_dataset(tmp_path):
    out, manifest = _write(tmp_path)
    obj = json.loads((out / "manifest.json").read_text())
    restored = DatasetManifest.from_obj(obj)
    config = restored.config
    out2 = tmp_path / "regen"
    manifest2 = write_dataset(
        episode_stream(list(restored.tasks), config,
                       restored.episodes_per_task),
        out2, restored.mode, config=config, tasks=list(restored.tasks),
        episodes_per_task=restored.episodes_per_task)
    assert manifest2.checksums == manifest.checksums


def test_reading_is_lazy(tmp_path):
    out, _ = _write(tmp_path)
    reader = read_dataset(out)
    iterator = iter(reader)
    first = next(iterator)
    assert first.task_name == "Exist"
