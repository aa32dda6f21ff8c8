import pytest
from hypothesis import given, settings

from conftest import assert_equiv_exhaustive, netlists, po_words
from logicenc import Gate, Netlist, NetlistError, OptEffort, optimize
from logicenc.optimize import (
    _LEVEL_PASSES,
    HEAVY,
    LIGHT,
    NONE,
    STANDARD,
    propagate_constants,
)

EFFORTS = [NONE, LIGHT, STANDARD, HEAVY]


@settings(max_examples=60)
@given(netlists())
@pytest.mark.parametrize("effort", EFFORTS)
def test_optimize_preserves_function(effort, n):
    out = optimize(n, effort)
    assert out.inputs == n.inputs and out.outputs == n.outputs
    assert_equiv_exhaustive(out, n)
    assert len(out.gates) <= len(n.gates)


def test_duplicate_input_collapses():
    n = Netlist("d", ("a",), ("y",), (Gate("y", "AND", ("a", "a")),))
    out = optimize(n, STANDARD)
    # protected PO becomes a buffer of the PI
    assert [g.kind for g in out.gates] == ["BUF"]


def test_double_inversion_cancels():
    n = Netlist(
        "nn",
        ("a", "b"),
        ("y",),
        (
            Gate("t", "NOT", ("a",)),
            Gate("u", "NOT", ("t",)),
            Gate("y", "AND", ("u", "b")),
        ),
    )
    out = optimize(n, STANDARD)
    assert len(out.gates) == 1
    assert out.gates[0] == Gate("y", "AND", ("a", "b"))


def test_constant_folding_and_dead_removal():
    n = Netlist(
        "c",
        ("a", "b"),
        ("y",),
        (
            Gate("zero", "CONST0", ()),
            Gate("t", "AND", ("a", "zero")),
            Gate("u", "OR", ("t", "b")),
            Gate("dead", "XOR", ("a", "b")),
            Gate("y", "BUF", ("u",)),
        ),
    )
    out = optimize(n, STANDARD)
    assert len(out.gates) == 1
    assert out.gates[0] == Gate("y", "BUF", ("b",))


def test_mux_select_constant():
    n = Netlist(
        "m",
        ("a", "b"),
        ("y",),
        (
            Gate("one", "CONST1", ()),
            Gate("y", "MUX2", ("one", "a", "b")),
        ),
    )
    out = optimize(n, STANDARD)
    assert out.gates == (Gate("y", "BUF", ("b",)),)


def test_structural_hash_merges_duplicates():
    n = Netlist(
        "h",
        ("a", "b"),
        ("y",),
        (
            Gate("t1", "AND", ("a", "b")),
            Gate("t2", "AND", ("b", "a")),  # commutative duplicate
            Gate("y", "XOR", ("t1", "t2")),
        ),
    )
    out = optimize(n, STANDARD)
    # XOR of a net with itself is constant 0
    assert out.gates == (Gate("y", "CONST0", ()),)


def test_frozen_nets_survive():
    n = Netlist(
        "f",
        ("a",),
        ("y",),
        (Gate("keep", "NOT", ("a",)), Gate("y", "NOT", ("keep",))),
    )
    out = optimize(n, STANDARD, frozen={"keep"})
    assert "keep" in {g.output for g in out.gates}
    assert_equiv_exhaustive(out, n)


def test_effort_spec_parsing():
    e = OptEffort.from_spec("heavy:seed=7")
    assert e.level == "heavy" and e.seed == 7
    assert OptEffort.from_spec("light").level == "light"
    assert set(_LEVEL_PASSES) == {"none", "light", "standard", "heavy"}
    with pytest.raises(ValueError):
        OptEffort.from_spec("turbo")


def test_heavy_seeds_differ_but_stay_equivalent():
    n = Netlist(
        "s",
        ("a", "b", "c"),
        ("y",),
        (
            Gate("t", "NAND", ("a", "b")),
            Gate("u", "NAND", ("t", "c")),
            Gate("y", "NAND", ("u", "u")),
        ),
    )
    for seed in (1, 2, 3):
        out = optimize(n, OptEffort.from_spec(f"heavy:seed={seed}"))
        assert_equiv_exhaustive(out, n)


def test_propagate_constants_binds_and_removes_pi(golden):
    out = propagate_constants(golden, {"c": 1})
    assert "c" not in out.inputs
    # (a&b)|1 == 1
    assert po_words(out)["po"] == (1 << (1 << len(out.inputs))) - 1


def test_propagate_constants_unknown_pi(golden):
    with pytest.raises(NetlistError):
        propagate_constants(golden, {"nope": 0})
