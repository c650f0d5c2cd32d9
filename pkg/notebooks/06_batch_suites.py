# %% [markdown]
# # Seeded suites from Python and from the shell
#
# `run_suite` returns the same document the `ov-lab verify` command prints.

# %%
import json
import subprocess
import sys
from collections import Counter

from ovlab.suites import run_suite

doc = run_suite("section7", (4, 5), 4, seed=7)
print(doc["summary"]["counts"])
print(Counter(c["check_id"] for c in doc["checks"]).most_common(5))

# %%
out = subprocess.run([sys.executable, "-m", "ovlab.cli", "gen", "--kind", "two-quasi-umbilical",
                      "--n", "5", "--seed", "3"], capture_output=True, text=True, check=True)
print(json.loads(out.stdout))
