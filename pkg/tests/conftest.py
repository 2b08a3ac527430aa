from __future__ import annotations

import socket
import threading
import time

import pytest

from avyview.config import AppConfig
from avyview.ingest import SynthConfig, generate_synthetic


@pytest.fixture(scope="session")
def app_config() -> AppConfig:
    return AppConfig()


@pytest.fixture(scope="session")
def seed42():
    """The canonical demo dataset: seed 42, 4 operations, 3 days."""
    return generate_synthetic(SynthConfig(seed=42))


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class UvicornThread:
    """A real HTTP server for end-to-end tests, on an ephemeral port."""

    def __init__(self, app):
        import uvicorn

        self.port = free_port()
        cfg = uvicorn.Config(app, host="127.0.0.1", port=self.port, log_level="error")
        self.server = uvicorn.Server(cfg)
        self.thread = threading.Thread(target=self.server.run, daemon=True)

    @property
    def base(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def __enter__(self):
        self.thread.start()
        deadline = time.monotonic() + 10.0
        while not self.server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("uvicorn did not start in time")
            time.sleep(0.02)
        return self

    def __exit__(self, *exc):
        self.server.should_exit = True
        self.thread.join(timeout=10.0)
