import random

import pytest

from conftest import po_words
from logicenc import (
    Gate,
    KeyVector,
    Netlist,
    NetlistError,
    build_cc,
    load_benchmark,
    map_to_nand_nor,
    randomize_ec,
)


def _mask(n):
    return (1 << (1 << len(n.inputs))) - 1


@pytest.fixture
def pair():
    """A small OC together with a randomly re-keyed EC on the same graph."""
    oc = load_benchmark("mini8")
    m = map_to_nand_nor(oc)
    rng = random.Random(3)
    flipped = tuple(
        Gate(
            g.output,
            ("NOR" if g.kind == "NAND" else "NAND")
            if rng.random() < 0.5
            else g.kind,
            g.inputs,
        )
        for g in m.netlist.gates
    )
    ec = Netlist("mini8_ec", oc.inputs, oc.outputs, flipped)
    return oc, ec


def test_key_vector_validation():
    kv = KeyVector((1, 0, 1), "K_CC")
    assert kv.as_bitstring() == "101"
    assert KeyVector.from_bitstring("101", "K_CC") == kv
    assert len(kv) == 3
    with pytest.raises(ValueError):
        KeyVector((2,), "K_CC")
    with pytest.raises(ValueError):
        KeyVector((0,), "K_WHAT")


def test_cc_defining_identity(pair):
    """CC_po == OC_po ^ EC_po ^ K_CC[po], exhaustively."""
    oc, ec = pair
    cc, key = build_cc(oc, ec, random.Random(1))
    mask = _mask(oc)
    woc, wec, wcc = po_words(oc), po_words(ec), po_words(cc)
    for po, k in zip(oc.outputs, key.bits):
        expect = woc[po] ^ wec[po] ^ (mask if k else 0)
        assert wcc[po] == expect, po


def test_cc_forced_key_bits(pair):
    oc, ec = pair
    bits = (1, 0, 1)
    cc, key = build_cc(oc, ec, random.Random(1), k_cc=bits)
    assert key.bits == bits and key.role == "K_CC"
    with pytest.raises(NetlistError):
        build_cc(oc, ec, random.Random(1), k_cc=(1,))


def test_cc_interface_mismatch():
    a = load_benchmark("mini8")
    b = load_benchmark("mini10")
    with pytest.raises(NetlistError):
        build_cc(a, b, random.Random(0))


def test_cc_rejects_po_that_is_pi():
    n = Netlist("p", ("a", "b"), ("a",), (Gate("t", "AND", ("a", "b")),))
    with pytest.raises(NetlistError):
        build_cc(n, n, random.Random(0))


def test_randomize_ec_identity(pair):
    _, ec = pair
    ec_final, key = randomize_ec(ec, random.Random(7))
    mask = _mask(ec)
    wec, wfin = po_words(ec), po_words(ec_final)
    for po, k in zip(ec.outputs, key.bits):
        assert wfin[po] == wec[po] ^ (mask if k else 0), po


def test_randomize_ec_forced_bits(pair):
    _, ec = pair
    for bits in ((0, 0, 0), (1, 1, 1)):
        ec_final, key = randomize_ec(ec, random.Random(7), k_ec=bits)
        assert key.bits == bits
        mask = _mask(ec)
        wec, wfin = po_words(ec), po_words(ec_final)
        for po, k in zip(ec.outputs, bits):
            assert wfin[po] == wec[po] ^ (mask if k else 0)


def test_key_draws_are_uniformish():
    # over 1200 drawn bits the ones-fraction sits in a 3-sigma band
    oc = load_benchmark("mini8")
    m = map_to_nand_nor(oc)
    ec = Netlist("mini8_ec", oc.inputs, oc.outputs, m.netlist.gates)
    rng = random.Random(123)
    ones = total = 0
    for _ in range(200):
        _, kc = build_cc(oc, ec, rng)
        _, ke = randomize_ec(ec, rng)
        ones += sum(kc.bits) + sum(ke.bits)
        total += len(kc) + len(ke)
    assert total >= 1000
    p = ones / total
    band = 3 * (0.25 / total) ** 0.5
    assert abs(p - 0.5) < band
