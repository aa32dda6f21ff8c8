import random

import pytest
from hypothesis import strategies as st

from logicenc import Gate, Netlist, load_benchmark
from logicenc.netlist import exhaustive_po_words

KINDS2 = ["AND", "NAND", "OR", "NOR", "XOR", "XNOR"]


@pytest.fixture
def golden():
    return load_benchmark("golden")


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def po_words(n):
    return exhaustive_po_words(n, n.inputs)


def assert_equiv_exhaustive(a, b):
    """Truth-table equality oracle, independent of the SAT machinery."""
    assert a.inputs == b.inputs and a.outputs == b.outputs
    wa, wb = po_words(a), po_words(b)
    for po in a.outputs:
        assert wa[po] == wb[po], f"functions differ on {po}"


@st.composite
def netlists(draw, max_pi=5, max_gates=12):
    n_pi = draw(st.integers(2, max_pi))
    pis = [f"i{k}" for k in range(n_pi)]
    nets = list(pis)
    gates = []
    for idx in range(draw(st.integers(1, max_gates))):
        kind = draw(st.sampled_from(KINDS2 + ["NOT"]))
        a = draw(st.sampled_from(nets))
        ins = (a,) if kind == "NOT" else (a, draw(st.sampled_from(nets)))
        out = f"n{idx}"
        gates.append(Gate(out, kind, ins))
        nets.append(out)
    outs = [g.output for g in gates]
    n_po = draw(st.integers(1, min(3, len(outs))))
    pos = draw(st.permutations(outs))[:n_po]
    return Netlist("h", tuple(pis), tuple(pos), tuple(gates))
