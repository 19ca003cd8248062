import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ddeproof.config import default_config_path, load_config  # noqa: E402
from ddeproof.verifier import ProofContext, verify_all  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bundled_run_config():
    return load_config(default_config_path())


@pytest.fixture(scope="session")
def bundled_cfg(bundled_run_config):
    return bundled_run_config.proof


@pytest.fixture(scope="session")
def bundled_ctx(bundled_cfg):
    return ProofContext(bundled_cfg)


@pytest.fixture(scope="session")
def bundled_cert(bundled_cfg):
    return verify_all(bundled_cfg)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
