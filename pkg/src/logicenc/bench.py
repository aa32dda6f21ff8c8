"""BENCH-format reader/writer for combinational netlists.

Dialect notes:
  * `NOT`/`INV` and `BUF`/`BUFF` are accepted as synonyms; we emit `NOT`
    and `BUFF`.
  * AND/OR/NAND/NOR with more than two inputs are decomposed into
    left-deep 2-input trees on parse; XOR/XNOR likewise (parity reading).
  * `CONST0()` / `CONST1()` are a dialect extension used to express
    constant nets, which standard BENCH has no syntax for.
MUX2 gates cannot be written; lower them first (see integrator.lower_mux).
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .netlist import Gate, Netlist, NetlistError, validate

_KIND_SYNONYMS = {
    "AND": "AND",
    "NAND": "NAND",
    "OR": "OR",
    "NOR": "NOR",
    "XOR": "XOR",
    "XNOR": "XNOR",
    "NOT": "NOT",
    "INV": "NOT",
    "BUF": "BUF",
    "BUFF": "BUF",
    "CONST0": "CONST0",
    "CONST1": "CONST1",
}

_EMIT_KIND = {"NOT": "NOT", "BUF": "BUFF"}

_RE_IO = re.compile(r"^(INPUT|OUTPUT)\s*\(\s*([A-Za-z0-9_]+)\s*\)$")
_RE_GATE = re.compile(r"^([A-Za-z0-9_]+)\s*=\s*([A-Za-z0-9]+)\s*\(([^()]*)\)$")


class BenchError(Exception):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def parse_bench(text: str, name: str = "netlist") -> Netlist:
    inputs: List[str] = []
    outputs: List[str] = []
    raw_gates: List[Tuple[int, str, str, List[str]]] = []
    defined: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RE_IO.match(line)
        if m:
            kw, net = m.group(1), m.group(2)
            if kw == "INPUT":
                if net in defined:
                    raise BenchError(f"duplicate definition of {net!r}", lineno)
                defined[net] = lineno
                inputs.append(net)
            else:
                if net in outputs:
                    raise BenchError(f"duplicate OUTPUT({net})", lineno)
                outputs.append(net)
            continue
        m = _RE_GATE.match(line)
        if m:
            out, kind_raw, args_raw = m.group(1), m.group(2), m.group(3)
            kind = _KIND_SYNONYMS.get(kind_raw.upper())
            if kind is None:
                raise BenchError(f"unknown gate kind {kind_raw!r}", lineno)
            args = [a.strip() for a in args_raw.split(",")] if args_raw.strip() else []
            for a in args:
                if not re.fullmatch(r"[A-Za-z0-9_]+", a):
                    raise BenchError(f"bad net name {a!r}", lineno)
            if out in defined:
                raise BenchError(f"duplicate definition of {out!r}", lineno)
            defined[out] = lineno
            raw_gates.append((lineno, out, kind, args))
            continue
        raise BenchError(f"cannot parse: {line!r}", lineno)

    gates = _expand_gates(raw_gates, set(defined) | set(inputs))

    for lineno, _out, _kind, args in raw_gates:
        for a in args:
            if a not in defined:
                raise BenchError(f"undefined net {a!r}", lineno)
    for po in outputs:
        if po not in defined:
            raise BenchError(f"OUTPUT({po}) is never driven")

    n = Netlist(name, tuple(inputs), tuple(outputs), tuple(gates))
    diags = validate(n)
    if diags:
        raise BenchError("; ".join(diags))
    n.topo_gates()  # raise early on cycles (validate already reports them)
    return n


def _expand_gates(raw_gates, used_names) -> List[Gate]:
    """Turn parsed gate lines into 2-input IR gates (left-deep decomposition)."""
    gates: List[Gate] = []
    fresh_ctr = 0

    def fresh(base: str) -> str:
        nonlocal fresh_ctr
        while True:
            cand = f"{base}_x{fresh_ctr}"
            fresh_ctr += 1
            if cand not in used_names:
                used_names.add(cand)
                return cand

    for lineno, out, kind, args in raw_gates:
        try:
            if kind in ("NOT", "BUF"):
                if len(args) != 1:
                    raise NetlistError(f"{kind} expects 1 input, got {len(args)}")
                gates.append(Gate(out, kind, tuple(args)))
            elif kind in ("CONST0", "CONST1"):
                if args:
                    raise NetlistError(f"{kind} takes no inputs")
                gates.append(Gate(out, kind, ()))
            elif len(args) == 2:
                gates.append(Gate(out, kind, tuple(args)))
            elif len(args) < 2:
                raise NetlistError(f"{kind} expects 2 inputs, got {len(args)}")
            else:
                # left-deep tree; for inverting kinds only the root inverts
                inner = {"NAND": "AND", "NOR": "OR", "XNOR": "XOR"}.get(kind, kind)
                acc = args[0]
                for a in args[1:-1]:
                    t = fresh(out)
                    gates.append(Gate(t, inner, (acc, a)))
                    acc = t
                gates.append(Gate(out, kind, (acc, args[-1])))
        except NetlistError as e:
            raise BenchError(str(e), lineno) from e
    return gates


def write_bench(n: Netlist) -> str:
    lines = [f"# {n.name}"]
    for pi in n.inputs:
        lines.append(f"INPUT({pi})")
    for po in n.outputs:
        lines.append(f"OUTPUT({po})")
    lines.append("")
    for g in n.topo_gates():
        if g.kind == "MUX2":
            raise NetlistError(
                f"cannot write MUX2 gate {g.output!r} to BENCH; lower it first"
            )
        kind = _EMIT_KIND.get(g.kind, g.kind)
        lines.append(f"{g.output} = {kind}({', '.join(g.inputs)})")
    return "\n".join(lines) + "\n"
