"""Walk the encryption flow on the tiny circuit po = (a AND b) OR c,
with every random draw pinned so each intermediate artifact is printable.

Run:  python demos/worked_example.py
"""

import random

from logicenc import (
    CodingScheme,
    Overrides,
    forced_cipher,
    load_benchmark,
    run_encryption,
    simulate,
    write_bench,
)
from logicenc.pipeline import restore

oc = load_benchmark("golden")
print("original circuit:\n" + write_bench(oc))

ov = Overrides(
    cipher=forced_cipher("101"),     # pin the ciphertext prefix
    coding_scheme=CodingScheme(0, (0, 1, 2)),  # NAND->0, identity order
    k_cc=(1,),
    k_ec=(0,),
    k_mux=(1, 0),
)
r = run_encryption(oc, random.Random(0), overrides=ov)

m = r.core.mapped
print(f"NAND/NOR mapped: {m.gate_count} gates "
      f"({m.duplicated_input_count} duplicated-input)")
print("mapped kinds:   ", [g.kind for g in m.netlist.gates])
print("ciphertext[:3] =", r.trace.ciphertext[:3],
      f"(plus {r.trace.pad_len} padded bits)")
print("decoded kinds:  ", [g.kind for g in r.core.basic_ec.gates])
print("K_EC =", r.k_ec.as_bitstring(), " K_CC =", r.k_cc.as_bitstring(),
      " K_MUX =", r.k_mux.as_bitstring(), " -> K_FC =",
      r.k_fc.as_bitstring())

restored = restore(r.fc, r.k_fc)
print("\nchecking all 8 input vectors:")
for v in range(8):
    assign = {"a": v & 1, "b": (v >> 1) & 1, "c": (v >> 2) & 1}
    want = simulate(oc, assign)["po"]
    got = simulate(restored, assign)["po"]
    print(f"  a={assign['a']} b={assign['b']} c={assign['c']}  "
          f"oc={want} fc(key)={got}")
    assert want == got
print("final circuit behaves exactly like the original under K_FC")
