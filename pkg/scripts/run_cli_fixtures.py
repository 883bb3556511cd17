#!/usr/bin/env python3
"""Run a fixed battery of CLI invocations against the bundled fixtures.

Prints, for each invocation, a header line with the argument list, the
command's stdout, and its exit code.  The concatenated output is used by
the determinism acceptance check: two runs must be byte-identical, and
the --threads value must not change the output.
"""

import argparse
import subprocess
import sys
from importlib.resources import files


def fixture(name):
    return str(files("latcert.fixtures").joinpath(name))


def invocations():
    leech = fixture("leech.json")
    mukai = fixture("mukai.json")
    a3 = fixture("a3_in_mukai.json")
    return [
        ["catalog", "Leech"],
        ["catalog", "Mukai"],
        ["catalog", "E8neg"],
        ["catalog", "U"],
        ["lat", "info", leech],
        ["lat", "roots", "--count-only", leech],
        ["lat", "disc", a3],
        ["grp", "invariant", fixture("action_inv_8_8.json")],
        ["thm1", "check", fixture("action_trivial.json")],
        ["thm1", "check", fixture("action_minus_id.json")],
        ["star", "check", a3, mukai],
        ["embed", "check", a3, "--target", "4,20"],
        ["period", "build", fixture("ng_inv_8_8.json")],
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", default="1")
    opts = ap.parse_args()
    for argv in invocations():
        cmd = [sys.executable, "-m", "latcert.cli", "--threads", opts.threads] + argv
        res = subprocess.run(cmd, capture_output=True, text=True)
        print("$ latcert " + " ".join(argv))
        sys.stdout.write(res.stdout)
        print(f"exit {res.returncode}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
