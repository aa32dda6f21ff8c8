"""Regenerate the bundled benchmark corpus (deterministic).

c17 and `golden` are written verbatim. The c1355..c7552 files are synthetic
circuits matching the PI/PO interface sizes of the classic ISCAS-85
benchmarks of the same name, since the originals cannot be bundled; every
formal property the test suite checks (key-size law, equivalence, key
sensitivity) depends only on interfaces and gate-level structure, not on
the specific logic. mini8/mini10/mid14 are small circuits for exhaustive
checking.

Run from the repository root:  python demos/generate_benchmarks.py
"""

from __future__ import annotations

import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "logicenc" / "benchmarks"

C17 = """\
# c17 (classic 6-NAND benchmark)
INPUT(1)
INPUT(2)
INPUT(3)
INPUT(6)
INPUT(7)
OUTPUT(22)
OUTPUT(23)
10 = NAND(1, 3)
11 = NAND(3, 6)
16 = NAND(2, 11)
19 = NAND(11, 7)
22 = NAND(10, 16)
23 = NAND(16, 19)
"""

GOLDEN = """\
# single output: po = (a AND b) OR c
INPUT(a)
INPUT(b)
INPUT(c)
OUTPUT(po)
t = AND(a, b)
po = OR(t, c)
"""

# name -> (PIs, POs, gates, seed); interface sizes follow the ISCAS-85
# circuits of the same name
SYNTH = {
    "c1355": (41, 32, 182, 1355),
    "c1908": (33, 25, 189, 1908),
    "c2670": (157, 64, 266, 2670),
    "c3540": (50, 22, 484, 3540),
    "c5315": (178, 123, 666, 5315),
    "c6288": (32, 32, 709, 6288),
    "c7552": (207, 107, 726, 7552),
    "mini8": (8, 3, 35, 8),
    "mini10": (10, 4, 60, 10),
    "mid14": (14, 8, 140, 14),
}

KIND_POOL = (
    ["NAND"] * 5 + ["NOR"] * 3 + ["AND"] * 3 + ["OR"] * 3
    + ["NOT"] * 2 + ["XOR"] * 1 + ["XNOR"] * 1
)


def generate(name: str, n_pi: int, n_po: int, n_gates: int, seed: int) -> str:
    rng = random.Random(seed)
    pis = [f"G{i}" for i in range(1, n_pi + 1)]
    nets = list(pis)
    unconsumed = list(pis)  # nets no gate reads yet
    gates = []

    def consume(net: str) -> None:
        if net in unconsumed:
            unconsumed.remove(net)

    def pick() -> str:
        # prefer dangling nets so (almost) everything ends up in a PO cone,
        # with a bias toward recent nets so the circuit gains depth
        if unconsumed and rng.random() < 0.6:
            return rng.choice(unconsumed)
        if len(nets) > 40 and rng.random() < 0.75:
            return rng.choice(nets[-40:])
        return rng.choice(nets)

    for i in range(n_gates):
        out = f"G{n_pi + i + 1}"
        kind = rng.choice(KIND_POOL)
        a = pis[i] if i < n_pi else pick()  # round-robin: every PI gets used
        if kind == "NOT":
            ins = [a]
        else:
            b = pick()
            for _ in range(8):
                if b != a:
                    break
                b = pick()
            ins = [a, b]
        for net in ins:
            consume(net)
        gates.append((out, kind, ins))
        nets.append(out)
        unconsumed.append(out)

    # POs: the dangling gate outputs, topped up from the tail if short
    outputs = [g[0] for g in gates]
    dangling = [p for p in unconsumed if p not in pis]
    if len(dangling) >= n_po:
        pos = rng.sample(dangling, n_po)
    else:
        pos = list(dangling)
        extra = [o for o in reversed(outputs) if o not in pos]
        pos += extra[: n_po - len(pos)]
    pos = sorted(pos, key=outputs.index)

    lines = [f"# synthetic circuit: {n_pi} PIs, {n_po} POs, {n_gates} gates"]
    lines += [f"INPUT({p})" for p in pis]
    lines += [f"OUTPUT({p})" for p in pos]
    lines += [f"{o} = {k}({', '.join(i)})" for o, k, i in gates]
    return "\n".join(lines) + "\n"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "c17.bench").write_text(C17)
    (OUT / "golden.bench").write_text(GOLDEN)
    for name, (n_pi, n_po, n_gates, seed) in SYNTH.items():
        (OUT / f"{name}.bench").write_text(
            generate(name, n_pi, n_po, n_gates, seed)
        )
    print(f"wrote {2 + len(SYNTH)} benchmarks to {OUT}")


if __name__ == "__main__":
    main()
