"""Rewrite arbitrary netlists into 2-input NAND/NOR-only form.

One bit can then describe each gate's kind, which is what the coding scheme
needs. Inverters are expressed as duplicated-input NAND/NOR gates so every
gate stays uniformly 2-input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .netlist import Gate, Netlist, NetlistError
from .optimize import OptEffort, optimize

# template entries: (kind, ref, ref) with refs "a"/"b" for the gate inputs
# or an int index of an earlier template gate; the last entry is the output.
_TEMPLATES = {
    "NAND": (("NAND", "a", "b"),),
    "NOR": (("NOR", "a", "b"),),
    "NOT": (("NAND", "a", "a"),),
    "AND": (("NAND", "a", "b"), ("NAND", 0, 0)),
    # inverted-input NAND: lets inverters cancel against upstream templates
    "OR": (("NAND", "a", "a"), ("NAND", "b", "b"), ("NAND", 0, 1)),
    "XOR": (
        ("NAND", "a", "b"),
        ("NAND", "a", 0),
        ("NAND", "b", 0),
        ("NAND", 1, 2),
    ),
    "XNOR": (
        ("NAND", "a", "b"),
        ("NAND", "a", 0),
        ("NAND", "b", 0),
        ("NAND", 1, 2),
        ("NAND", 3, 3),
    ),
    "BUF": (),  # wire alias
}

_MAP_CLEANUP = OptEffort("standard", ("invpair", "hash", "dead"))


@dataclass(frozen=True)
class MappedNetlist:
    """A netlist whose gates are all 2-input NAND or NOR."""

    netlist: Netlist

    @property
    def gate_count(self) -> int:
        return len(self.netlist.gates)

    @property
    def duplicated_input_count(self) -> int:
        """Gates of the form NAND(x,x)/NOR(x,x); their coded bit does not
        change their function (both decode to an inverter)."""
        return sum(
            1 for g in self.netlist.gates if g.inputs[0] == g.inputs[1]
        )


def rewrite_table() -> dict:
    """The fixed per-kind NAND/NOR rewrite templates."""
    return {k: v for k, v in _TEMPLATES.items()}


def map_to_nand_nor(n: Netlist, cleanup: bool = True) -> MappedNetlist:
    """Rewrite every gate via the fixed templates, then deduplicate."""
    alias = {}
    gates = []
    used = set(n.inputs) | {g.output for g in n.gates}
    counter = 0

    def fresh(base: str) -> str:
        nonlocal counter
        while True:
            cand = f"{base}_m{counter}"
            counter += 1
            if cand not in used:
                used.add(cand)
                return cand

    po_set = set(n.outputs)
    for g in n.topo_gates():
        if g.kind in ("MUX2", "CONST0", "CONST1"):
            raise NetlistError(
                f"cannot NAND/NOR-map {g.kind} gate {g.output!r}"
            )
        ins = [alias.get(i, i) for i in g.inputs]
        template = _TEMPLATES[g.kind]
        if not template:  # BUF
            if g.output in po_set:
                # POs keep their name: realize the wire as two inverters
                t = Gate(fresh(g.output), "NAND", (ins[0], ins[0]))
                gates.append(t)
                gates.append(Gate(g.output, "NAND", (t.output, t.output)))
            else:
                alias[g.output] = ins[0]
            continue
        ref_nets = {"a": ins[0], "b": ins[1] if len(ins) > 1 else ins[0]}
        step_nets = []
        for idx, (kind, x, y) in enumerate(template):
            last = idx == len(template) - 1
            out = g.output if last else fresh(g.output)
            xi = ref_nets[x] if isinstance(x, str) else step_nets[x]
            yi = ref_nets[y] if isinstance(y, str) else step_nets[y]
            gates.append(Gate(out, kind, (xi, yi)))
            step_nets.append(out)

    mapped = Netlist(n.name, n.inputs, n.outputs, tuple(gates))
    if cleanup:
        mapped = optimize(mapped, _MAP_CLEANUP)
    bad = [g.output for g in mapped.gates if g.kind not in ("NAND", "NOR")]
    if bad:
        raise NetlistError(f"non-NAND/NOR gates after mapping: {bad[:5]}")
    return MappedNetlist(mapped)
