import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import netlists
from logicenc import Gate, Netlist, NetlistError, simulate, stats, validate
from logicenc.netlist import (
    GATE_ARITY,
    evaluate_nets,
    exhaustive_po_words,
    fanin_cone,
    from_json_dict,
    literal_count,
    to_json_dict,
)

# independent truth oracles for every 1/2-input kind
TRUTH = {
    "AND": lambda a, b: a & b,
    "NAND": lambda a, b: 1 - (a & b),
    "OR": lambda a, b: a | b,
    "NOR": lambda a, b: 1 - (a | b),
    "XOR": lambda a, b: a ^ b,
    "XNOR": lambda a, b: 1 - (a ^ b),
}


def test_gate_arity_table():
    assert GATE_ARITY["NOT"] == 1
    assert GATE_ARITY["MUX2"] == 3
    assert GATE_ARITY["CONST0"] == 0
    for k in TRUTH:
        assert GATE_ARITY[k] == 2


@pytest.mark.parametrize("kind", sorted(TRUTH))
def test_two_input_gate_truth(kind):
    n = Netlist("t", ("a", "b"), ("y",), (Gate("y", kind, ("a", "b")),))
    for a, b in itertools.product((0, 1), repeat=2):
        assert simulate(n, {"a": a, "b": b})["y"] == TRUTH[kind](a, b)


def test_not_buf_mux_const_truth():
    gates = (
        Gate("n", "NOT", ("a",)),
        Gate("f", "BUF", ("a",)),
        Gate("m", "MUX2", ("s", "a", "b")),  # select, data0, data1
        Gate("c0", "CONST0", ()),
        Gate("c1", "CONST1", ()),
    )
    n = Netlist("t", ("a", "b", "s"), ("n", "f", "m", "c0", "c1"), gates)
    for a, b, s in itertools.product((0, 1), repeat=3):
        out = simulate(n, {"a": a, "b": b, "s": s})
        assert out["n"] == 1 - a
        assert out["f"] == a
        assert out["m"] == (b if s else a)
        assert out["c0"] == 0 and out["c1"] == 1


def test_gate_arity_enforced():
    with pytest.raises(NetlistError):
        Netlist("t", ("a",), ("y",), (Gate("y", "AND", ("a",)),))


def test_topo_raises_on_cycle():
    n = Netlist(
        "c",
        ("a",),
        ("y",),
        (Gate("x", "AND", ("a", "y")), Gate("y", "NOT", ("x",))),
    )
    with pytest.raises(NetlistError, match="cyclic"):
        n.topo_gates()


def test_validate_diagnostics():
    n = Netlist("v", ("a",), ("y", "z"), (Gate("y", "NOT", ("q",)),))
    diags = validate(n)
    assert any("q" in d for d in diags)  # undriven net
    assert any("z" in d for d in diags)  # undriven PO


def test_validate_duplicate_driver():
    n = Netlist(
        "v",
        ("a",),
        ("y",),
        (Gate("y", "NOT", ("a",)), Gate("y", "BUF", ("a",))),
    )
    assert any("duplicate" in d for d in validate(n))


def test_stats_and_literals(golden):
    s = stats(golden)
    assert s.gate_count == 2
    assert s.depth == 2
    assert s.type_histogram == {"AND": 1, "OR": 1}
    assert literal_count(golden) == 4


def test_fanin_cone(golden):
    assert fanin_cone(golden, ["po"]) == {"po", "t", "a", "b", "c"}
    assert fanin_cone(golden, ["t"]) == {"t", "a", "b"}


def test_exhaustive_words_golden(golden):
    words = exhaustive_po_words(golden, ("a", "b", "c"))
    # po = (a&b)|c, LSB-first input indexing: expect 0b11111000
    expect = 0
    for j in range(8):
        a, b, c = j & 1, (j >> 1) & 1, (j >> 2) & 1
        expect |= ((a & b) | c) << j
    assert words["po"] == expect


def test_evaluate_nets_bit_parallel(golden):
    vals = evaluate_nets(golden, {"a": 0b1100, "b": 0b1010, "c": 0b0000}, 4)
    assert vals["po"] == 0b1000


def test_json_round_trip(golden):
    again = from_json_dict(to_json_dict(golden))
    assert again == golden


@given(netlists())
def test_simulate_matches_exhaustive_words(n):
    words = exhaustive_po_words(n, n.inputs)
    for j in range(min(1 << len(n.inputs), 16)):
        assignment = {pi: (j >> k) & 1 for k, pi in enumerate(n.inputs)}
        out = simulate(n, assignment)
        for po in n.outputs:
            assert out[po] == (words[po] >> j) & 1
