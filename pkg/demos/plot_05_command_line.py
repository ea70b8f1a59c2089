"""
Command-line batch use
======================

Every library entry point has a subcommand.  Here they run in-process on the
bundled data files; the same argument lists work with the ``ftsmetric``
executable.
"""

import sys
from pathlib import Path

from ftsmetric.cli import run

data = Path(__file__).parent / "data"
four_states = str(data / "four_states.json")

commands = [
    ["validate", four_states],
    ["distance", four_states, "--trace"],
    ["quotient", four_states, "--lambda", "0.6"],
    ["bisim", four_states, "s2", "s3"],
    ["similar", four_states],
    ["compose", four_states, "--op", "parallel", "--from", "s2", "s3"],
    ["lift", str(data / "two_states.json"), "--mu", "mu", "--eta", "theta",
     "--metric", str(data / "discrete_st.json")],
]
for argv in commands:
    print("$ ftsmetric", " ".join(Path(a).name if a.endswith(".json") else a for a in argv))
    status = run(argv, out=sys.stdout, err=sys.stderr)
    print(f"(exit {status})\n")
