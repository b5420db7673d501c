"""CLI invocations with golden outputs under ``tests/golden``.

Regenerate after a deliberate output change with ``python tests/golden_cases.py``
and review the diff.
"""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN_DIR = HERE / "golden"

CASES = [
    ("square_body.json", ["body", "square.json"]),
    ("square_measure.json", ["measure", "square.json"]),
    ("square_mixedvol.json", ["mixedvol", "square.json", "square.json"]),
    ("sum_square_disk.json", ["sum", "square.json", "disk.json"]),
    ("blaschke_square_triangle.json", ["sum", "--blaschke", "square.json", "triangle.json"]),
    ("majorize_linear.json", ["majorize", "--linear", "disk.json", "square.json"]),
    ("majorize_affine.json", ["majorize", "--affine", "mu_spread.json", "nu_center.json"]),
    ("solve_triangle.json", ["solve", "urysohn-triangle", "--side", "1", "--breadth", "1.7", "--grid", "72"]),
    ("solve_lens.json", ["solve", "lens", "--a", "1", "--r", "2", "--grid", "72"]),
    ("solve_stadium.json", ["solve", "stadium", "--r", "1", "--l", "2", "--grid", "72"]),
    ("pareto_square_segment.json", ["pareto", "square.json", "segment.json", "--weights", "1,0.5",
                                    "--area", "2", "--scan", "50", "--seed", "3"]),
    ("square.svg", ["render", "square.json"]),
    ("solve_triangle.svg", ["render", str(GOLDEN_DIR / "solve_triangle.json")]),
]


def run_case(argv, optimize: bool = False) -> bytes:
    """Standard output of ``python [-O] -m dido argv`` run inside the fixtures directory."""
    cmd = [sys.executable] + (["-O"] if optimize else []) + ["-m", "dido"] + list(argv)
    return subprocess.run(cmd, cwd=FIXTURES, capture_output=True, check=False).stdout


if __name__ == "__main__":
    for name, argv in CASES:
        (GOLDEN_DIR / name).write_bytes(run_case(argv))
        print("wrote", name)
