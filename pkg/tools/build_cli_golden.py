"""Regenerate the pinned CLI output files under tests/golden/cli/.

Run from the repository root after an intentional output-format change, then
review the diff; the test suite compares command output byte for byte.
"""

import json
import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from compalg.cli import run  # noqa: E402
from compalg.diagrams import cycle_diagram  # noqa: E402

GOLDEN = ROOT / "tests" / "golden" / "cli"

CASES = {
    "algebra_verify_quaternions.json": ["algebra", "verify", "--name", "quaternions", "--format", "json"],
    "hurwitz_classify.json": ["hurwitz", "classify", "--format", "json"],
    "hurwitz_classify.txt": ["hurwitz", "classify"],
    "sym_extract_reals.json": ["sym", "extract", "--algebra", "reals", "--format", "json"],
    "diagram_reduce_theta.json": ["diagram", "reduce", "--rules", "g2", "theta_input.json", "--format", "json"],
    "verify_all.json": ["verify-all", "--format", "json"],
}


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    with open(GOLDEN / "theta_input.json", "w") as fh:
        json.dump(cycle_diagram(2).to_json(), fh, sort_keys=True)
        fh.write("\n")
    os.chdir(GOLDEN)
    for fname, argv in CASES.items():
        report, fmt = run(argv)
        text = report.render(fmt)
        with open(GOLDEN / fname, "w") as fh:
            fh.write(text)
        print(f"wrote {fname} ({len(text)} bytes)")


if __name__ == "__main__":
    main()
