import json

from click.testing import CliRunner

from cogkit.cli import main
from cogkit.png import decode_png


def _run(*args, **kwargs):
    return CliRunner().invoke(main, list(args), **kwargs)


def test_generate_then_verify(tmp_path):
    out = str(tmp_path / "ds")
    result = _run("generate", "--tasks", "Exist,GoColor",
                  "--episodes-per-task", "3", "--seed", "4", "--out", out)
    assert result.exit_code == 0, result.output
    result = _run("verify", out)
    assert result.exit_code == 0, result.output
    assert "all targets consistent" in result.output


def test_verify_tampered_dataset_fails(tmp_path):
    out = tmp_path / "ds"
    assert _run("generate", "--tasks", "Exist", "--episodes-per-task", "2",
                "--seed", "4", "--out", str(out)).exit_code == 0
    shard = out / "Exist.jsonl"
    # Re-hash so the corruption reaches the semantic verifier.
    text = shard.read_text().replace('"true"', '"false"', 1)
    shard.write_text(text)
    import hashlib
    manifest = json.loads((out / "manifest.json").read_text())
    manifest["checksums"]["Exist.jsonl"] = hashlib.sha256(
        shard.read_bytes()).hexdigest()
    (out / "manifest.json").write_text(json.dumps(manifest))
    result = _run("verify", str(out))
    assert result.exit_code == 1
    assert "failed verification" in result.output


def test_verify_checksum_failure_exits_one(tmp_path):
    out = tmp_path / "ds"
    assert _run("generate", "--tasks", "Exist", "--episodes-per-task", "2",
                "--seed", "4", "--out", str(out)).exit_code == 0
    (out / "Exist.jsonl").write_text("garbage\n")
    result = _run("verify", str(out))
    assert result.exit_code == 1
    assert "invalid dataset" in result.output


def test_generate_twice_identical_modulo_timestamp(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert _run("generate", "--tasks", "GoColor", "--episodes-per-task",
                    "3", "--seed", "11", "--out", str(out)).exit_code == 0
    assert (a / "GoColor.jsonl").read_bytes() == (b / "GoColor.jsonl").read_bytes()
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    ma.pop("created_at"), mb.pop("created_at")
    assert ma == mb


def test_generate_unknown_task_is_usage_error(tmp_path):
    result = _run("generate", "--tasks", "NotATask", "--out",
                  str(tmp_path / "x"))
    assert result.exit_code == 2


def test_generate_requires_out(tmp_path, monkeypatch):
    monkeypatch.delenv("COGKIT_OUT_DIR", raising=False)
    assert _run("generate", "--tasks", "Exist").exit_code == 2
    monkeypatch.setenv("COGKIT_OUT_DIR", str(tmp_path / "env-ds"))
    result = _run("generate", "--tasks", "Exist", "--episodes-per-task", "1")
    assert result.exit_code == 0
    assert (tmp_path / "env-ds" / "manifest.json").exists()


def test_count_reports_total_and_note():
    result = _run("count", "--grid", "8")
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["grid"] == 8
    assert report["total"] == sum(report["per_task"].values())
    assert "discretize" in report["note"]


def test_audit_outputs_json():
    result = _run("audit", "--task", "ExistColor", "--n", "50", "--seed", "2")
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["task"] == "ExistColor"
    assert report["episodes"] == 50


def test_audit_unknown_task():
    assert _run("audit", "--task", "Nope", "--n", "5").exit_code == 2


def test_preview_writes_contact_sheet(tmp_path):
    out = tmp_path / "sheet.png"
    result = _run("preview", "--task", "Go", "--seed", "3", "--out", str(out))
    assert result.exit_code == 0, result.output
    image = decode_png(out.read_bytes())
    assert image.shape[0] == 112
    assert result.output.strip().splitlines()[0].startswith("point to")


def test_usage_error_exit_code():
    assert _run("generate", "--format", "wat", "--out", "/tmp/x").exit_code == 2
