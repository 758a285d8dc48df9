import json
import subprocess
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_backends_agree():
    proc = subprocess.run([sys.executable, str(SCRIPT), "--points", "2000", "--repeat", "1", "--json"],
                          capture_output=True, text=True, check=True)
    rows = json.loads(proc.stdout)
    assert len(rows) == 5
    for row in rows:
        assert row["python_s"] > 0
        if "cython_s" in row:
            assert row["max_rel_diff"] < 1e-12
