"""Correction-circuit construction and encrypted-circuit randomization.

The correction circuit (CC) computes, per primary output, the XOR of the
original and encrypted circuits, with a random per-PO buffer/invert choice
memorized as key bits. The encrypted circuit's own outputs get the same
randomized buffer/invert treatment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .netlist import Gate, Netlist, NetlistError, clone_gates_prefixed, validate
from .optimize import STANDARD, OptEffort, optimize

KEY_ROLES = ("K_EC", "K_CC", "K_MUX", "K_FC")


@dataclass(frozen=True)
class KeyVector:
    bits: Tuple[int, ...]
    role: str

    def __post_init__(self):
        if self.role not in KEY_ROLES:
            raise ValueError(f"unknown key role {self.role!r}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("key bits must be 0/1")
        object.__setattr__(self, "bits", tuple(self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def as_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    @staticmethod
    def from_bitstring(bits: str, role: str) -> "KeyVector":
        return KeyVector(tuple(int(b) for b in bits), role)


def _draw_bits(count: int, rng: random.Random) -> Tuple[int, ...]:
    return tuple(rng.getrandbits(1) for _ in range(count))


def _check_interfaces(a: Netlist, b: Netlist) -> None:
    if a.inputs != b.inputs or a.outputs != b.outputs:
        raise NetlistError(
            f"PI/PO mismatch between {a.name!r} and {b.name!r}"
        )
    bad = [po for po in a.outputs if po in a.inputs]
    if bad:
        raise NetlistError(
            f"POs driven directly by PIs are not supported in wrappers: {bad}"
        )


def build_cc(
    oc: Netlist,
    ec: Netlist,
    rng: random.Random,
    k_cc: Optional[Sequence[int]] = None,
    effort: OptEffort = STANDARD,
) -> Tuple[Netlist, KeyVector]:
    """Flatten OC and EC into one wrapper computing OC ^ EC ^ K_CC per PO.

    The clones share the primary inputs; joint optimization afterwards may
    merge common structure, which is what entangles the two halves.
    """
    _check_interfaces(oc, ec)
    bits = tuple(k_cc) if k_cc is not None else _draw_bits(len(oc.outputs), rng)
    key = KeyVector(bits, "K_CC")
    if len(key) != len(oc.outputs):
        raise NetlistError("K_CC length must equal the PO count")

    shared = oc.inputs
    oc_gates, oc_map = clone_gates_prefixed(oc, "occ_", shared)
    ec_gates, ec_map = clone_gates_prefixed(ec, "ecc_", shared)
    gates = list(oc_gates) + list(ec_gates)
    for po, b in zip(oc.outputs, key.bits):
        ec_sig = ec_map[po]
        if b:
            inv = f"ecc_{po}_inv"
            gates.append(Gate(inv, "NOT", (ec_sig,)))
            ec_sig = inv
        gates.append(Gate(po, "XOR", (oc_map[po], ec_sig)))
    cc = Netlist(oc.name + "_cc", oc.inputs, oc.outputs, tuple(gates))
    diags = validate(cc)
    if diags:
        raise NetlistError("CC wrapper is malformed: " + "; ".join(diags[:3]))
    return optimize(cc, effort), key


def randomize_ec(
    ec: Netlist,
    rng: random.Random,
    k_ec: Optional[Sequence[int]] = None,
    effort: OptEffort = STANDARD,
) -> Tuple[Netlist, KeyVector]:
    """Buffer or invert each PO of the intermediate EC, memorizing K_EC."""
    bad = [po for po in ec.outputs if po in ec.inputs]
    if bad:
        raise NetlistError(f"POs driven directly by PIs unsupported: {bad}")
    bits = tuple(k_ec) if k_ec is not None else _draw_bits(len(ec.outputs), rng)
    key = KeyVector(bits, "K_EC")
    if len(key) != len(ec.outputs):
        raise NetlistError("K_EC length must equal the PO count")

    inverted = {po for po, b in zip(ec.outputs, key.bits) if b}
    rename = {po: po + "_pre" for po in inverted}
    gates = [
        Gate(
            rename.get(g.output, g.output),
            g.kind,
            tuple(rename.get(i, i) for i in g.inputs),
        )
        for g in ec.gates
    ]
    for po in ec.outputs:
        if po in inverted:
            gates.append(Gate(po, "NOT", (rename[po],)))
    out = Netlist(ec.name + "_final", ec.inputs, ec.outputs, tuple(gates))
    return optimize(out, effort), key
