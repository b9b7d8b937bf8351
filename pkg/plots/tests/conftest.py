import subprocess
import sys
from pathlib import Path

import pytest

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def _run_scenario(config: Path, out_dir: Path) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "hhgsim", "scenario", "--config", str(config),
         "--out", str(out_dir)],
        capture_output=True, text=True)
    assert proc.returncode == 0, f"{config.name} failed:\n{proc.stdout}\n{proc.stderr}"


@pytest.fixture(scope="session")
def scenario_outputs(tmp_path_factory) -> Path:
    """Artifacts of all four toy scenarios, produced through the public CLI."""
    out = tmp_path_factory.mktemp("scenario_out")
    for name in ("a_toy", "b_toy", "c_fock", "d_toy"):
        _run_scenario(CONFIGS / f"{name}.toml", out)
    return out
