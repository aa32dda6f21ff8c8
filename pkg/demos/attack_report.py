"""Attack-evaluation round-up on one benchmark:

  * baseline key guessing on a deliberately leaky XOR/XNOR-locked circuit
    (sanity check: everything should be recovered),
  * baseline and resynthesis-vote guessing on a properly protected circuit,
  * worst-case analyses of the leaked components in isolation.

Run:  python demos/attack_report.py [name] [seed]
"""

import random
import sys

from logicenc import OptEffort, load_benchmark, run_encryption
from logicenc.attack import (
    lock_leaky_xor,
    scope_baseline,
    scope_resynth,
    worst_case_split,
)

name = sys.argv[1] if len(sys.argv) > 1 else "mini10"
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7


def show(tag, rep):
    kpa = "-" if rep.kpa is None else f"{rep.kpa:.1f}"
    resolved = sum(1 for b in rep.per_key_bit if b.guess is not None)
    print(f"{tag:28s} AC {rep.ac:5.1f}%  KPA {kpa:>5}%  "
          f"resolved {resolved}/{len(rep.per_key_bit)}")


oc = load_benchmark(name)
rng = random.Random(seed)

leaky = lock_leaky_xor(oc, rng, num_bits=6)
show("leaky XOR/XNOR lock", scope_baseline(leaky))

r = run_encryption(oc, rng)
show("protected circuit, baseline", scope_baseline(r.fc))
recipes = [OptEffort.from_spec(s)
           for s in ("standard", "heavy:seed=1", "heavy:seed=2")]
show("protected, resynth vote", scope_resynth(r.fc, recipes))
show("leaked EC component", worst_case_split(r.ec_final, r.k_ec, "worst_case_ec"))
show("leaked CC component", worst_case_split(r.cc, r.k_cc, "worst_case_cc"))
