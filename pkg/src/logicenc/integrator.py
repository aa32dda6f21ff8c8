"""System integration: MUX key-gate structures, final circuit, final key.

Each primary output of the encrypted and correction circuits passes through
a 2:1 MUX whose data inputs carry the buffered and inverted signal in a
randomized order (memorized as K_MUX), the select line being a fresh key
port. An XOR of the two MUX outputs drives the final circuit's PO, so the
final key has exactly 2x|PO| bits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Dict, Optional, Sequence, Tuple

from .corrector import KeyVector, _check_interfaces, _draw_bits
from .netlist import Gate, Netlist, NetlistError, clone_gates_prefixed, validate
from .optimize import STANDARD, OptEffort, optimize

KEY_PORT_PREFIX = "keyinput"


@dataclass(frozen=True)
class FinalCircuit:
    netlist: Netlist
    # (key_port, po_name, side) per key bit; EC side first for each PO
    key_map: Tuple[Tuple[str, str, str], ...]
    k_fc: Optional[KeyVector] = None

    @property
    def key_ports(self) -> Tuple[str, ...]:
        return tuple(port for port, _po, _side in self.key_map)

    def key_bindings(self, bits: Sequence[int]) -> Dict[str, int]:
        if len(bits) != len(self.key_map):
            raise NetlistError("key length does not match key port count")
        return {port: int(b) for (port, _, _), b in zip(self.key_map, bits)}

    def with_final_key(self, k_fc: KeyVector) -> "FinalCircuit":
        return replace(self, k_fc=k_fc)


def build_fc(
    ec_final: Netlist,
    cc: Netlist,
    rng: random.Random,
    k_mux: Optional[Sequence[int]] = None,
    effort: OptEffort = STANDARD,
) -> Tuple[FinalCircuit, KeyVector]:
    """Assemble the final circuit; returns it together with K_MUX.

    Key ports are named keyinput0..keyinput(2|PO|-1), interleaved EC then CC
    per PO in declared PO order. K_MUX bit 0 puts the buffered signal on
    data0 and the inverted one on data1; bit 1 swaps them.
    """
    _check_interfaces(ec_final, cc)
    pos = ec_final.outputs
    bits = tuple(k_mux) if k_mux is not None else _draw_bits(2 * len(pos), rng)
    key_mux = KeyVector(bits, "K_MUX")
    if len(key_mux) != 2 * len(pos):
        raise NetlistError("K_MUX must have 2 bits per PO")

    shared = ec_final.inputs
    ec_gates, ec_map = clone_gates_prefixed(ec_final, "fce_", shared)
    cc_gates, cc_map = clone_gates_prefixed(cc, "fcc_", shared)
    gates = list(ec_gates) + list(cc_gates)
    key_map = []
    key_ports = []

    for j, po in enumerate(pos):
        mux_nets = []
        for side, sig, mbit in (
            ("EC", ec_map[po], key_mux.bits[2 * j]),
            ("CC", cc_map[po], key_mux.bits[2 * j + 1]),
        ):
            port = f"{KEY_PORT_PREFIX}{len(key_ports)}"
            key_ports.append(port)
            key_map.append((port, po, side))
            tag = "fce" if side == "EC" else "fcc"
            inv = f"{tag}_{po}_inv"
            gates.append(Gate(inv, "NOT", (sig,)))
            data = (sig, inv) if mbit == 0 else (inv, sig)
            mux = f"{tag}_{po}_kg"
            gates.append(Gate(mux, "MUX2", (port, data[0], data[1])))
            mux_nets.append(mux)
        gates.append(Gate(po, "XOR", tuple(mux_nets)))

    inputs = tuple(ec_final.inputs) + tuple(key_ports)
    fc_name = ec_final.name.replace("_ec_final", "") + "_fc"
    net = Netlist(fc_name, inputs, pos, tuple(gates))
    diags = validate(net)
    if diags:
        raise NetlistError("FC wrapper is malformed: " + "; ".join(diags[:3]))
    net = optimize(net, effort, frozen=set(key_ports))
    return FinalCircuit(net, tuple(key_map)), key_mux


def derive_final_key(
    k_mux: KeyVector, k_ec: KeyVector, k_cc: KeyVector
) -> KeyVector:
    """K_FC per PO: EC-side bit = K_MUX(EC) ^ K_EC, CC-side = K_MUX(CC) ^ K_CC."""
    if len(k_ec) != len(k_cc) or len(k_mux) != 2 * len(k_ec):
        raise NetlistError("key vector sizes are inconsistent")
    bits = []
    for j in range(len(k_ec)):
        bits.append(k_mux.bits[2 * j] ^ k_ec.bits[j])
        bits.append(k_mux.bits[2 * j + 1] ^ k_cc.bits[j])
    return KeyVector(tuple(bits), "K_FC")


def lower_mux(n: Netlist) -> Netlist:
    """Replace each MUX2(s,d0,d1) with OR(AND(NOT s, d0), AND(s, d1)).

    Needed before BENCH export; a no-op on MUX-free netlists.
    """
    gates = []
    used = set(n.inputs) | {g.output for g in n.gates}

    def fresh(base):
        i = 0
        while f"{base}_l{i}" in used:
            i += 1
        used.add(f"{base}_l{i}")
        return f"{base}_l{i}"

    for g in n.gates:
        if g.kind != "MUX2":
            gates.append(g)
            continue
        s, d0, d1 = g.inputs
        ns, a0, a1 = fresh(g.output), fresh(g.output), fresh(g.output)
        gates.append(Gate(ns, "NOT", (s,)))
        gates.append(Gate(a0, "AND", (ns, d0)))
        gates.append(Gate(a1, "AND", (s, d1)))
        gates.append(Gate(g.output, "OR", (a0, a1)))
    return Netlist(n.name, n.inputs, n.outputs, tuple(gates))


def lower_fc(fc: FinalCircuit) -> Netlist:
    return lower_mux(fc.netlist)
