import itertools

import pytest
from hypothesis import given, settings

from conftest import assert_equiv_exhaustive, netlists
from logicenc import (
    Gate,
    Netlist,
    NetlistError,
    load_benchmark,
    map_to_nand_nor,
    simulate,
)
from logicenc.nandnor import rewrite_table

ORACLE = {
    "AND": lambda a, b: a & b,
    "NAND": lambda a, b: 1 - (a & b),
    "OR": lambda a, b: a | b,
    "NOR": lambda a, b: 1 - (a | b),
    "XOR": lambda a, b: a ^ b,
    "XNOR": lambda a, b: 1 - (a ^ b),
    "NOT": lambda a, b: 1 - a,
    "BUF": lambda a, b: a,
}


def test_rewrite_table_covers_all_mappable_kinds():
    table = rewrite_table()
    assert set(table) == set(ORACLE)
    for kind, steps in table.items():
        assert all(step[0] in ("NAND", "NOR") for step in steps)


@pytest.mark.parametrize("kind", sorted(ORACLE))
def test_single_gate_template_truth(kind):
    ins = ("a",) if kind in ("NOT", "BUF") else ("a", "b")
    n = Netlist("t", ("a", "b"), ("y",), (Gate("y", kind, ins),))
    m = map_to_nand_nor(n)
    for a, b in itertools.product((0, 1), repeat=2):
        got = simulate(m.netlist, {"a": a, "b": b})["y"]
        assert got == ORACLE[kind](a, b), (kind, a, b)


def test_mapped_gates_are_all_two_input_nand_nor(golden):
    m = map_to_nand_nor(golden)
    for g in m.netlist.gates:
        assert g.kind in ("NAND", "NOR")
        assert len(g.inputs) == 2


def test_golden_maps_to_three_gates(golden):
    m = map_to_nand_nor(golden)
    assert m.gate_count == 3
    assert_equiv_exhaustive(m.netlist, golden)
    # one duplicated-input inverter (for the OR's c leg)
    assert m.duplicated_input_count == 1


def test_mux_and_const_rejected():
    n = Netlist(
        "m", ("s", "a", "b"), ("y",), (Gate("y", "MUX2", ("s", "a", "b")),)
    )
    with pytest.raises(NetlistError):
        map_to_nand_nor(n)
    n2 = Netlist("c", ("a",), ("y",), (Gate("y", "CONST0", ()),))
    with pytest.raises(NetlistError):
        map_to_nand_nor(n2)


@pytest.mark.parametrize("name", ["c17", "mini8", "mini10"])
def test_mapping_preserves_function_on_benchmarks(name):
    n = load_benchmark(name)
    m = map_to_nand_nor(n)
    assert_equiv_exhaustive(m.netlist, n)


@settings(max_examples=40)
@given(netlists())
def test_mapping_preserves_function_random(n):
    m = map_to_nand_nor(n)
    assert_equiv_exhaustive(m.netlist, n)


def test_cleanup_flag_changes_size_not_function(golden):
    raw = map_to_nand_nor(golden, cleanup=False)
    tidy = map_to_nand_nor(golden)
    assert tidy.gate_count <= raw.gate_count
    assert_equiv_exhaustive(raw.netlist, tidy.netlist)
