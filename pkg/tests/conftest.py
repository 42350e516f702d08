from __future__ import annotations

import json
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "goldens"


def pytest_addoption(parser):
    parser.addoption("--regen-goldens", action="store_true", default=False,
                     help="rewrite golden files from the current implementation")


@pytest.fixture
def golden(request):
    """Compare a document against its golden file (or rewrite it)."""

    regen = request.config.getoption("--regen-goldens")

    def check(name: str, doc: dict) -> None:
        path = GOLDEN_DIR / name
        if regen:
            path.write_text(json.dumps(doc, indent=1) + "\n")
            return
        assert path.exists(), f"golden file {name} missing; run with --regen-goldens"
        stored = json.loads(path.read_text())
        assert doc == stored, f"{name} drifted from golden copy"

    return check
