import os
import sys
from pathlib import Path

import pytest

# Environment set by ctest: the CLI path, the built extension, schemas,
# and test fixtures.
CLI = os.environ.get("SRL_CLI")
MODULE_DIR = os.environ.get("SRL_MODULE_DIR")
PACKAGE_DIR = os.environ.get("SRL_PACKAGE_DIR")
SCHEMA_DIR = os.environ.get("SRL_SCHEMA_DIR")
DATA_DIR = os.environ.get("SRL_DATA_DIR")

for entry in (MODULE_DIR, PACKAGE_DIR):
    if entry and entry not in sys.path:
        sys.path.insert(0, entry)


@pytest.fixture(scope="session")
def cli():
    if not CLI or not Path(CLI).exists():
        pytest.skip("SRL_CLI not set; run through ctest")
    return CLI


@pytest.fixture(scope="session")
def schema_dir():
    if not SCHEMA_DIR:
        pytest.skip("SRL_SCHEMA_DIR not set; run through ctest")
    return Path(SCHEMA_DIR)


@pytest.fixture(scope="session")
def data_dir():
    if not DATA_DIR:
        pytest.skip("SRL_DATA_DIR not set; run through ctest")
    return Path(DATA_DIR)
