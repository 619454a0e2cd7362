from __future__ import annotations

import sys
from pathlib import Path

import pytest

from quiveralg.quiver import Quiver
from quiveralg.textformat import load

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
sys.path.insert(0, str(Path(__file__).resolve().parent))

# acceptance criterion id -> (passed, one-line detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def corpus_files() -> list[Path]:
    return sorted(CORPUS.glob("*.quiv"))


def corpus_doc(name: str):
    return load(CORPUS / f"{name}.quiv")


def corpus_algebra(name: str):
    return corpus_doc(name).build()


@pytest.fixture(scope="session")
def quaternion():
    return corpus_algebra("quaternion")


@pytest.fixture(scope="session")
def nakayama2():
    return corpus_algebra("nakayama2")


@pytest.fixture(scope="session")
def dual_numbers():
    return corpus_algebra("dual_numbers")


def two_loops() -> Quiver:
    return Quiver.from_edges(1, [(0, 0), (0, 0)], ["x", "y"])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
