"""Encrypt a bundled benchmark end to end and print the run report.

Run:  python demos/encrypt_benchmark.py [name] [seed]
"""

import json
import random
import sys

from logicenc import load_benchmark, run_encryption

name = sys.argv[1] if len(sys.argv) > 1 else "c1355"
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1

oc = load_benchmark(name)
r = run_encryption(oc, random.Random(seed))

print(json.dumps(r.report, indent=2))
print(f"\nkey ({len(r.k_fc)} bits): {r.k_fc.as_bitstring()}")
print(f"verification: {r.verdict.result} via {r.verdict.method}")
