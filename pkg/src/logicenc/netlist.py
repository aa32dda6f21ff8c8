"""Core combinational netlist IR: gates, validation, simulation, statistics.

A Netlist is an immutable DAG of named nets. Every net is driven by exactly
one primary input or one gate. All transformations in this package produce
new Netlist values instead of mutating in place, so netlists are safe to
share across workers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

# kind -> arity; MUX2 inputs are ordered (select, data0, data1)
GATE_ARITY = {
    "AND": 2,
    "NAND": 2,
    "OR": 2,
    "NOR": 2,
    "XOR": 2,
    "XNOR": 2,
    "NOT": 1,
    "BUF": 1,
    "MUX2": 3,
    "CONST0": 0,
    "CONST1": 0,
}

# input order is irrelevant for these kinds (used by structural hashing)
COMMUTATIVE = {"AND", "NAND", "OR", "NOR", "XOR", "XNOR"}


class NetlistError(Exception):
    """Raised for malformed netlists or inconsistent operations on them."""


@dataclass(frozen=True)
class Gate:
    output: str
    kind: str
    inputs: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise NetlistError(f"unknown gate kind {self.kind!r}")
        if len(self.inputs) != GATE_ARITY[self.kind]:
            raise NetlistError(
                f"{self.kind} expects {GATE_ARITY[self.kind]} inputs, "
                f"got {len(self.inputs)} for net {self.output!r}"
            )
        if not isinstance(self.inputs, tuple):
            object.__setattr__(self, "inputs", tuple(self.inputs))


@dataclass(frozen=True)
class CircuitStats:
    gate_count: int
    depth: int
    type_histogram: Dict[str, int]


@dataclass(frozen=True)
class Netlist:
    name: str
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    gates: Tuple[Gate, ...]
    _topo_cache: List[Optional[Tuple[Gate, ...]]] = field(
        default_factory=lambda: [None], repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def net_table(self) -> Dict[str, object]:
        """Map net name -> driving Gate, or the string 'PI' for inputs."""
        table: Dict[str, object] = {pi: "PI" for pi in self.inputs}
        for g in self.gates:
            table[g.output] = g
        return table

    def driver(self, net: str) -> Optional[Gate]:
        for g in self.gates:
            if g.output == net:
                return g
        return None

    def topo_gates(self) -> Tuple[Gate, ...]:
        """Gates in topological order; raises NetlistError on cycles."""
        if self._topo_cache[0] is not None:
            return self._topo_cache[0]
        by_output = {g.output: g for g in self.gates}
        placed = set(self.inputs)
        order: List[Gate] = []
        # Kahn-style: repeatedly emit gates whose inputs are all placed
        pending = list(self.gates)
        while pending:
            emitted = []
            rest = []
            for g in pending:
                if all(i in placed or i not in by_output for i in g.inputs):
                    emitted.append(g)
                else:
                    rest.append(g)
            if not emitted:
                cyc = ", ".join(sorted(g.output for g in rest)[:5])
                raise NetlistError(f"cyclic dependency involving nets: {cyc}")
            for g in emitted:
                placed.add(g.output)
                order.append(g)
            pending = rest
        result = tuple(order)
        self._topo_cache[0] = result
        return result

    def with_name(self, name: str) -> "Netlist":
        return Netlist(name, self.inputs, self.outputs, self.gates)


def validate(n: Netlist) -> List[str]:
    """Return a list of diagnostics; empty iff the netlist is well-formed."""
    diags: List[str] = []
    seen: Dict[str, str] = {}
    for pi in n.inputs:
        if pi in seen:
            diags.append(f"duplicate definition of net {pi!r}")
        seen[pi] = "PI"
    for g in n.gates:
        if g.output in seen:
            diags.append(f"duplicate definition of net {g.output!r}")
        seen[g.output] = "gate"
    driven = set(seen)
    for g in n.gates:
        for i in g.inputs:
            if i not in driven:
                diags.append(f"gate {g.output!r} reads undriven net {i!r}")
    for po in n.outputs:
        if po not in driven:
            diags.append(f"primary output {po!r} is undriven")
    if len(set(n.outputs)) != len(n.outputs):
        diags.append("duplicate primary output names")
    try:
        n.topo_gates()
    except NetlistError as e:
        diags.append(str(e))
    return diags


def evaluate_nets(
    n: Netlist, pi_values: Mapping[str, int], width: int = 1
) -> Dict[str, int]:
    """Evaluate every net bit-parallel over `width` patterns.

    Each value is an int whose bit j is the net's value under pattern j.
    With width=1 this is plain scalar simulation.
    """
    mask = (1 << width) - 1
    values: Dict[str, int] = {}
    for pi in n.inputs:
        if pi not in pi_values:
            raise NetlistError(f"missing assignment for primary input {pi!r}")
        values[pi] = pi_values[pi] & mask
    for g in n.topo_gates():
        a = g.inputs
        if g.kind == "AND":
            v = values[a[0]] & values[a[1]]
        elif g.kind == "NAND":
            v = mask ^ (values[a[0]] & values[a[1]])
        elif g.kind == "OR":
            v = values[a[0]] | values[a[1]]
        elif g.kind == "NOR":
            v = mask ^ (values[a[0]] | values[a[1]])
        elif g.kind == "XOR":
            v = values[a[0]] ^ values[a[1]]
        elif g.kind == "XNOR":
            v = mask ^ (values[a[0]] ^ values[a[1]])
        elif g.kind == "NOT":
            v = mask ^ values[a[0]]
        elif g.kind == "BUF":
            v = values[a[0]]
        elif g.kind == "MUX2":
            s, d0, d1 = values[a[0]], values[a[1]], values[a[2]]
            v = (d0 & (mask ^ s)) | (d1 & s)
        elif g.kind == "CONST0":
            v = 0
        else:  # CONST1
            v = mask
        values[g.output] = v
    return values


def simulate(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, int]:
    """Single-pattern simulation: PI assignment -> PO values (0/1)."""
    values = evaluate_nets(n, assignment, width=1)
    return {po: values[po] for po in n.outputs}


def exhaustive_po_words(n: Netlist, pi_order: Sequence[str]) -> Dict[str, int]:
    """PO truth tables over all 2^|PI| patterns, as big-int words.

    Bit j of each word is the PO value when the PIs (in pi_order) take the
    binary expansion of j, pi_order[0] being the least significant.
    """
    num = len(pi_order)
    width = 1 << num
    pi_words = {}
    for idx, pi in enumerate(pi_order):
        pi_words[pi] = _input_word(idx, num)
    values = evaluate_nets(n, pi_words, width=width)
    return {po: values[po] for po in n.outputs}


def _input_word(idx: int, num_inputs: int) -> int:
    """Truth-table word for input variable `idx` over 2^num_inputs rows."""
    half = 1 << idx
    period = half << 1
    rows = 1 << num_inputs
    pattern = ((1 << half) - 1) << half  # 2^idx zeros, then 2^idx ones
    repeats = rows // period
    repunit = ((1 << (period * repeats)) - 1) // ((1 << period) - 1)
    return pattern * repunit


def stats(n: Netlist) -> CircuitStats:
    hist = Counter(g.kind for g in n.gates)
    level: Dict[str, int] = {pi: 0 for pi in n.inputs}
    depth = 0
    for g in n.topo_gates():
        lvl = 1 + max((level.get(i, 0) for i in g.inputs), default=0)
        level[g.output] = lvl
    for po in n.outputs:
        depth = max(depth, level.get(po, 0))
    return CircuitStats(
        gate_count=len(n.gates), depth=depth, type_histogram=dict(hist)
    )


def literal_count(n: Netlist) -> int:
    """Total gate input pin count (a crude area proxy)."""
    return sum(len(g.inputs) for g in n.gates)


def fanin_cone(n: Netlist, nets: Iterable[str]) -> set:
    """All nets in the transitive fanin of `nets` (inclusive)."""
    by_output = {g.output: g for g in n.gates}
    seen = set()
    stack = list(nets)
    while stack:
        net = stack.pop()
        if net in seen:
            continue
        seen.add(net)
        g = by_output.get(net)
        if g is not None:
            stack.extend(g.inputs)
    return seen


def clone_gates_prefixed(n: Netlist, prefix: str, shared: Iterable[str]):
    """Copy a netlist's gates with internal nets renamed `prefix<net>`.

    Nets in `shared` (typically the PIs of a wrapper) keep their names.
    Returns (gates, name_map) where name_map covers every net of `n`.
    """
    shared = set(shared)
    name_map = {net: net for net in shared}
    for g in n.gates:
        if g.output not in shared:
            name_map[g.output] = prefix + g.output
    gates = tuple(
        Gate(
            name_map[g.output],
            g.kind,
            tuple(name_map.get(i, prefix + i) for i in g.inputs),
        )
        for g in n.gates
    )
    return gates, name_map


def to_json_dict(n: Netlist) -> dict:
    return {
        "name": n.name,
        "inputs": list(n.inputs),
        "outputs": list(n.outputs),
        "gates": [
            {"output": g.output, "kind": g.kind, "inputs": list(g.inputs)}
            for g in n.gates
        ],
    }


def from_json_dict(d: dict) -> Netlist:
    gates = tuple(
        Gate(g["output"], g["kind"], tuple(g["inputs"])) for g in d["gates"]
    )
    return Netlist(d["name"], tuple(d["inputs"]), tuple(d["outputs"]), gates)
