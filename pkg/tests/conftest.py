import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running search, enabled by CENTRALSETS_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CENTRALSETS_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set CENTRALSETS_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def corpus_dir():
    return CORPUS


# filled by the acceptance criteria, echoed after the run
RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
