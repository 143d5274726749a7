import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synth import write_dataset, write_reference_file


@pytest.fixture(scope="session")
def toy_data(tmp_path_factory):
    """A 64-entry canonical dataset plus a Triple-strategy corpus built
    through the kgtext CLI (the real pipeline, not a mock)."""
    root = tmp_path_factory.mktemp("toy")
    entries = write_dataset(root / "train.canon", 64, "train", seed=5)
    write_reference_file(entries, root / "train_refs.txt")
    test_entries = write_dataset(root / "test.canon", 10, "test", seed=6)
    write_reference_file(test_entries, root / "test_refs.txt")
    result = subprocess.run(
        [sys.executable, "-m", "kgtext", "mask", "--strategy", "triple",
         "--seed", "3", "--in", str(root / "train.canon"),
         "--out", str(root / "corpus.jsonl"), "--min-triples", "1", "--no-per-level"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    return root
