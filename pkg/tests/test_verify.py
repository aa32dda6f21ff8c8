import random

import pytest
from hypothesis import given, settings

from conftest import netlists
from logicenc import (
    EquivBudget,
    Gate,
    Netlist,
    NetlistError,
    build_miter,
    check_equiv,
    load_benchmark,
    map_to_nand_nor,
    simulate,
)

SAT_ONLY = EquivBudget(exhaustive_threshold=0)  # force the SAT route


def inverted_po(n, po):
    gates = [
        Gate(
            g.output + "_x" if g.output == po else g.output,
            g.kind,
            tuple(i + "_x" if i == po else i for i in g.inputs),
        )
        for g in n.gates
    ]
    gates.append(Gate(po, "NOT", (po + "_x",)))
    return Netlist(n.name, n.inputs, n.outputs, tuple(gates))


def test_equivalent_exhaustive(golden):
    v = check_equiv(golden, golden)
    assert v.result == "equivalent"
    assert v.method == "exhaustive"
    assert v.witness is None
    assert v.vectors_checked == 8


def test_inequivalent_with_witness(golden):
    bad = inverted_po(golden, "po")
    v = check_equiv(golden, bad)
    assert v.result == "inequivalent"
    a = simulate(golden, v.witness)
    b = simulate(bad, v.witness)
    assert a != b


def test_equivalent_sat_route(golden):
    v = check_equiv(golden, golden, SAT_ONLY)
    assert v.result == "equivalent"
    assert v.method == "sat"


def test_inequivalent_sat_route_confirms_witness(golden):
    bad = inverted_po(golden, "po")
    v = check_equiv(golden, bad, SAT_ONLY)
    assert v.result == "inequivalent"
    assert simulate(golden, v.witness) != simulate(bad, v.witness)


def test_sat_route_on_mapped_benchmark():
    n = load_benchmark("mini10")
    m = map_to_nand_nor(n).netlist
    assert check_equiv(n, m, SAT_ONLY).result == "equivalent"
    bad = inverted_po(m, n.outputs[0])
    assert check_equiv(n, bad, SAT_ONLY).result == "inequivalent"


def test_interface_mismatch_rejected(golden):
    other = load_benchmark("c17")
    with pytest.raises(NetlistError):
        check_equiv(golden, other)


def test_miter_shape(golden):
    m = build_miter(golden, golden)
    assert m.outputs == ("miter_out",)
    assert m.inputs == golden.inputs


def test_verdict_json(golden):
    d = check_equiv(golden, golden).to_json_dict()
    assert d["result"] == "equivalent"
    assert "method" in d and "witness" in d


@settings(max_examples=30, deadline=None)
@given(netlists(max_pi=4, max_gates=8))
def test_sat_agrees_with_exhaustive_on_random_pairs(n):
    # compare n against a lightly perturbed copy via both routes
    po = n.outputs[0]
    for other in (n, inverted_po(n, po)):
        exh = check_equiv(n, other)
        sat = check_equiv(n, other, SAT_ONLY)
        assert exh.result == sat.result
