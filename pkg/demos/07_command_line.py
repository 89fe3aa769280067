"""The `retract` command-line tool, driven end to end.

Generates an instance, solves it with two algorithms, verifies the solution
file, and prints a lower bound - exactly what the CLI subcommands
gen / solve / verify / lb do.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = [sys.executable, "-m", "retract.cli"]


def run(*args):
    out = subprocess.run(CLI + list(args), capture_output=True, text=True)
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return out

with tempfile.TemporaryDirectory() as tmp:
    inst = Path(tmp) / "instance.json"
    sol = Path(tmp) / "solution.json"

    run("gen", "grid", "--m", "4", "-o", str(inst))
    print("generated", json.loads(inst.read_text())["n"], "vertex instance")

    out = run("solve", "--algo", "planar", "-i", str(inst), "-o", str(sol))
    record = json.loads(out.stderr)
    print("planar solve: stretch=%d in %.2fs (distance bound %s)"
          % (record["stretch"], record["wall_time_s"],
             record["lower_bounds"]["distance"]))

    run("verify", "-i", str(inst), "-r", str(sol))
    print("verify: solution accepted")

    out = run("lb", "--method", "lp", "-i", str(inst))
    print("lp lower bound:", json.loads(out.stdout)["bound"])
