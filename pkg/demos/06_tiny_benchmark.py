"""
A benchmark run end to end
==========================

The bench subcommand expands a JSON suite into jobs, solves each one, and
writes a CSV with per-job rows plus per-configuration averages.  Here the
suite is tiny so the whole thing finishes in seconds.
"""

import csv
import json
import tempfile
from pathlib import Path

from latalloc.cli import main

suite = {
    "entries": [
        {"class": "base", "sizes": [10, 20]},
        {"class": "random", "q": 12, "seeds": [1, 2, 3], "modes": ["nary", "binary"]},
        {"class": "partition", "weights": [2, 3, 5, 4]},
    ]
}

workdir = Path(tempfile.mkdtemp())
suite_path = workdir / "suite.json"
out_path = workdir / "results.csv"
suite_path.write_text(json.dumps(suite, indent=2))

code = main(["bench", str(suite_path), "--out", str(out_path)])
print(f"exit code {code}\n")

with open(out_path, newline="") as fh:
    rows = list(csv.reader(fh))

widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
for r in rows:
    print("  ".join(v.ljust(w) for v, w in zip(r, widths)))

# nary vs binary on the same seeds: compare the node columns of the two
# average rows at the bottom
