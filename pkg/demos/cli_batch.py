"""Driving the command-line tool on a directory of JSON configurations.

Writes three configurations (one of them malformed) to a temporary
directory, classifies the batch, and prints the summary block.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

configs = {
    "conic.json": {"r": 2, "field": "rational",
                   "points": [[1, 0, 0], [1, 1, 1], [1, 2, 4], [1, -1, 1], ["2", "1", "1/2"], [0, 0, 1]]},
    "random.json": {"r": 2, "field": "fp:1000003",
                    "points": [[1, 5, 9], [2, 6, 5], [3, 5, 8], [9, 7, 9], [3, 2, 3], [8, 4, 6]]},
    "broken.json": {"r": 2, "points": [[1, 0, 0], [1, 0]]},
}

with tempfile.TemporaryDirectory() as tmp:
    for name, data in configs.items():
        Path(tmp, name).write_text(json.dumps(data))
    proc = subprocess.run([sys.executable, "-m", "veronese_lab", "classify", "--degree", "2", "--batch", tmp],
                          capture_output=True, text=True)
    report = json.loads(proc.stdout)
    print("exit code:", proc.returncode)
    for entry in report["reports"]:
        rep = entry["report"]
        outcome = rep["result"]["verdict"] if "result" in rep else "error: " + rep["error"]["message"]
        print(f"  {entry['file']:<12} {outcome}")
    print("summary:", report["summary"])
