import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("SPINMOD_CLI", str(ROOT / "build" / "spinmod"))

    def run(*args, expect=0, env=None):
        full_env = dict(os.environ)
        full_env.update(env or {})
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True, env=full_env)
        assert proc.returncode == expect, proc.stderr
        return proc

    return run


@pytest.fixture(scope="session")
def schema():
    base = pathlib.Path(os.environ.get("SPINMOD_SCHEMAS", ROOT / "docs" / "schemas"))
    return lambda name: json.loads((base / f"{name}.schema.json").read_text())


@pytest.fixture(scope="session")
def data():
    return pathlib.Path(os.environ.get("SPINMOD_DATA", ROOT / "tests" / "data"))
