"""Fixtures that provision the producer side strictly through its external
interfaces: the ``cogkit`` CLI for on-disk datasets and the ``serve``
subcommand for the HTTP endpoint."""

import socket
import subprocess
import sys
import time

import httpx
import pytest

SEED = 4242
TASKS = ["CompareColor", "Exist", "GetShape", "GoColor", "GoColorOf"]
EPISODES_PER_TASK = 20  # 5 tasks x 20 = 100 episodes


def _run_cli(*args):
    result = subprocess.run(
        [sys.executable, "-m", "cogkit.cli", *args],
        capture_output=True, text=True)
    assert result.returncode == 0, result.stderr or result.stdout
    return result


@pytest.fixture(scope="session")
def rendered_dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("ds") / "rendered"
    _run_cli("generate", "--tasks", ",".join(TASKS),
             "--episodes-per-task", str(EPISODES_PER_TASK),
             "--seed", str(SEED), "--format", "rendered", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def symbolic_dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("ds") / "symbolic"
    _run_cli("generate", "--tasks", ",".join(TASKS),
             "--episodes-per-task", str(EPISODES_PER_TASK),
             "--seed", str(SEED), "--format", "symbolic", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def server_endpoint():
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
    process = subprocess.Popen(
        [sys.executable, "-m", "cogkit.cli", "serve",
         "--port", str(port), "--seed", str(SEED)],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    endpoint = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                if httpx.get(f"{endpoint}/v1/healthz", timeout=2).text == "ok":
                    break
            except httpx.HTTPError:
                time.sleep(0.1)
        else:
            raise RuntimeError("episode server did not come up")
        yield endpoint
    finally:
        process.terminate()
        process.wait(timeout=10)
