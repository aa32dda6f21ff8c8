"""Equivalence-preserving netlist cleanup passes.

This is the stand-in for resynthesis: constant propagation, duplicated-input
simplification, double-inverter removal, BUF collapsing, structural hashing,
and dead-gate elimination. Passes never change what a netlist computes; they
only shrink or rename internal structure. Nets listed as frozen survive by
name (key inputs, module boundaries).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .netlist import COMMUTATIVE, Gate, Netlist, NetlistError, fanin_cone

CLEANUP_PASSES = ("const", "dup", "notnot", "buf", "hash", "dead")

_LEVEL_PASSES = {
    "none": (),
    "light": ("const", "dup", "notnot", "buf", "dead"),
    "standard": CLEANUP_PASSES,
    "heavy": CLEANUP_PASSES,
}


@dataclass(frozen=True)
class OptEffort:
    level: str = "standard"
    passes: Tuple[str, ...] = _LEVEL_PASSES["standard"]
    seed: Optional[int] = None

    @staticmethod
    def from_spec(spec: str) -> "OptEffort":
        """Parse a recipe string like 'light' or 'heavy:seed=7'."""
        level, _, rest = spec.partition(":")
        level = level.strip()
        if level not in _LEVEL_PASSES:
            raise ValueError(f"unknown effort level {level!r}")
        seed = None
        if rest:
            key, _, val = rest.partition("=")
            if key.strip() != "seed":
                raise ValueError(f"unknown recipe option {rest!r}")
            seed = int(val)
        return OptEffort(level, _LEVEL_PASSES[level], seed)


NONE = OptEffort("none", ())
LIGHT = OptEffort("light", _LEVEL_PASSES["light"])
STANDARD = OptEffort("standard", _LEVEL_PASSES["standard"])
HEAVY = OptEffort("heavy", _LEVEL_PASSES["heavy"])


class _Work:
    """Mutable view of a netlist while passes run."""

    def __init__(self, n: Netlist, frozen: Set[str]):
        self.inputs = list(n.inputs)
        self.outputs = list(n.outputs)
        self.name = n.name
        self.gates: Dict[str, Gate] = {g.output: g for g in n.topo_gates()}
        self.order: List[str] = [g.output for g in n.topo_gates()]
        self.alias: Dict[str, str] = {}
        self.protected = frozen | set(n.outputs) | set(n.inputs)
        self._const_nets: Dict[int, str] = {}
        for g in n.gates:
            if g.kind == "CONST0":
                self._const_nets.setdefault(0, g.output)
            elif g.kind == "CONST1":
                self._const_nets.setdefault(1, g.output)

    def resolve(self, net: str) -> str:
        seen = []
        while net in self.alias:
            seen.append(net)
            net = self.alias[net]
        for s in seen:  # path compression
            self.alias[s] = net
        return net

    def const_value(self, net: str) -> Optional[int]:
        g = self.gates.get(self.resolve(net))
        if g is None:
            return None
        if g.kind == "CONST0":
            return 0
        if g.kind == "CONST1":
            return 1
        return None

    def const_net(self, value: int) -> str:
        if value not in self._const_nets:
            base = f"_const{value}"
            name = base
            i = 0
            while name in self.gates or name in self.inputs:
                name = f"{base}_{i}"
                i += 1
            self.gates[name] = Gate(name, f"CONST{value}", ())
            self.order.insert(0, name)
            self._const_nets[value] = name
        return self._const_nets[value]

    def replace(self, out: str, target: str) -> None:
        """Make `out` an alias of `target`, or a BUF if `out` must survive."""
        target = self.resolve(target)
        if out == target:
            return
        if out in self.protected:
            cv = self.const_value(target)
            if cv is not None:
                self.gates[out] = Gate(out, f"CONST{cv}", ())
            else:
                self.gates[out] = Gate(out, "BUF", (target,))
        else:
            del self.gates[out]
            self.order.remove(out)
            self.alias[out] = target

    def rewrite(self, out: str, kind: str, inputs: Tuple[str, ...]) -> None:
        self.gates[out] = Gate(out, kind, inputs)

    def to_netlist(self) -> Netlist:
        gates = []
        for out in self.order:
            g = self.gates.get(out)
            if g is None:
                continue
            gates.append(Gate(g.output, g.kind, tuple(self.resolve(i) for i in g.inputs)))
        po = []
        for p in self.outputs:
            po.append(p)  # protected: never aliased away
        return Netlist(self.name, tuple(self.inputs), tuple(po), tuple(gates))


def _complementary(w: _Work, a: str, b: str) -> bool:
    """True when one net provably drives the inversion of the other."""
    for x, y in ((a, b), (b, a)):
        src = _is_inverter(w.gates.get(x))
        if src is not None and w.resolve(src) == y:
            return True
    return False


def _pass_const(w: _Work) -> bool:
    changed = False
    for out in list(w.order):
        g = w.gates.get(out)
        if g is None or g.kind.startswith("CONST"):
            continue
        ins = tuple(w.resolve(i) for i in g.inputs)
        vals = tuple(w.const_value(i) for i in ins)
        k = g.kind
        new: Optional[Tuple[str, object]] = None  # ("const", v) | ("wire", net) | ("not", net)
        if k in ("NOT", "BUF") and vals[0] is not None:
            v = vals[0] ^ (1 if k == "NOT" else 0)
            new = ("const", v)
        elif k in ("AND", "NAND", "OR", "NOR", "XOR", "XNOR"):
            if vals[0] is not None and vals[1] is not None:
                a, b = vals
                v = {"AND": a & b, "NAND": 1 - (a & b), "OR": a | b,
                     "NOR": 1 - (a | b), "XOR": a ^ b, "XNOR": 1 - (a ^ b)}[k]
                new = ("const", v)
            elif _complementary(w, ins[0], ins[1]):
                v = {"AND": 0, "NAND": 1, "OR": 1,
                     "NOR": 0, "XOR": 1, "XNOR": 0}[k]
                new = ("const", v)
            elif vals[0] is not None or vals[1] is not None:
                c = vals[0] if vals[0] is not None else vals[1]
                other = ins[1] if vals[0] is not None else ins[0]
                rule = {
                    ("AND", 0): ("const", 0), ("AND", 1): ("wire", other),
                    ("NAND", 0): ("const", 1), ("NAND", 1): ("not", other),
                    ("OR", 1): ("const", 1), ("OR", 0): ("wire", other),
                    ("NOR", 1): ("const", 0), ("NOR", 0): ("not", other),
                    ("XOR", 0): ("wire", other), ("XOR", 1): ("not", other),
                    ("XNOR", 1): ("wire", other), ("XNOR", 0): ("not", other),
                }[(k, c)]
                new = rule
        elif k == "MUX2":
            s, d0, d1 = ins
            if vals[0] is not None:
                new = ("wire", d1 if vals[0] else d0)
            elif d0 == d1:
                new = ("wire", d0)
            elif vals[1] == 0 and vals[2] == 1:
                new = ("wire", s)
            elif vals[1] == 1 and vals[2] == 0:
                new = ("not", s)
        if new is None:
            if ins != g.inputs:
                w.rewrite(out, k, ins)
            continue
        tag, payload = new
        if tag == "const":
            w.replace(out, w.const_net(payload))
        elif tag == "wire":
            w.replace(out, payload)
        else:
            w.rewrite(out, "NOT", (payload,))
        changed = True
    return changed


def _pass_dup(w: _Work) -> bool:
    changed = False
    for out in list(w.order):
        g = w.gates.get(out)
        if g is None or len(g.inputs) != 2:
            continue
        a, b = (w.resolve(i) for i in g.inputs)
        if a != b:
            continue
        k = g.kind
        if k in ("NAND", "NOR"):
            w.rewrite(out, "NOT", (a,))
        elif k in ("AND", "OR"):
            w.replace(out, a)
        elif k == "XOR":
            w.replace(out, w.const_net(0))
        elif k == "XNOR":
            w.replace(out, w.const_net(1))
        else:
            continue
        changed = True
    return changed


def _pass_notnot(w: _Work) -> bool:
    changed = False
    for out in list(w.order):
        g = w.gates.get(out)
        if g is None or g.kind != "NOT":
            continue
        src = w.resolve(g.inputs[0])
        inner = w.gates.get(src)
        if inner is not None and inner.kind == "NOT":
            w.replace(out, w.resolve(inner.inputs[0]))
            changed = True
    return changed


def _pass_buf(w: _Work) -> bool:
    changed = False
    for out in list(w.order):
        g = w.gates.get(out)
        if g is None or g.kind != "BUF" or out in w.protected:
            continue
        w.replace(out, g.inputs[0])
        changed = True
    return changed


def _pass_hash(w: _Work) -> bool:
    changed = False
    seen: Dict[Tuple, str] = {}
    for out in list(w.order):
        g = w.gates.get(out)
        if g is None:
            continue
        ins = tuple(w.resolve(i) for i in g.inputs)
        key_ins = tuple(sorted(ins)) if g.kind in COMMUTATIVE else ins
        key = (g.kind, key_ins)
        prev = seen.get(key)
        if prev is None:
            seen[key] = out
            if ins != g.inputs:
                w.rewrite(out, g.kind, ins)
            continue
        # merge duplicates; prefer keeping a name that must survive
        if out in w.protected and prev in w.protected:
            continue
        if out in w.protected:
            w.replace(prev, out)
            seen[key] = out
        else:
            w.replace(out, prev)
        changed = True
    return changed


def _is_inverter(g: Optional[Gate]) -> Optional[str]:
    if g is None:
        return None
    if g.kind == "NOT":
        return g.inputs[0]
    if g.kind in ("NAND", "NOR") and g.inputs[0] == g.inputs[1]:
        return g.inputs[0]
    return None


def _pass_invpair(w: _Work) -> bool:
    """Remove back-to-back inverters, including duplicated-input NAND/NOR
    forms, without introducing gate kinds outside the source netlist."""
    changed = False
    for out in list(w.order):
        if out in w.protected:
            continue
        g = w.gates.get(out)
        src = _is_inverter(g)
        if src is None:
            continue
        src = w.resolve(src)
        inner = _is_inverter(w.gates.get(src))
        if inner is not None:
            w.replace(out, w.resolve(inner))
            changed = True
    return changed


def _pass_dead(w: _Work, frozen: Set[str]) -> bool:
    live_roots = [w.resolve(p) for p in list(w.outputs) + list(frozen)]
    live_roots += [p for p in w.outputs]
    tmp = w.to_netlist()
    live = fanin_cone(tmp, set(live_roots) | set(frozen))
    changed = False
    for out in list(w.order):
        if out in w.gates and out not in live and w.resolve(out) == out:
            del w.gates[out]
            w.order.remove(out)
            changed = True
    # the const cache must not outlive its gates
    for v, name in list(w._const_nets.items()):
        if name not in w.gates:
            del w._const_nets[v]
    return changed


_PASS_FUNCS = {
    "const": _pass_const,
    "dup": _pass_dup,
    "notnot": _pass_notnot,
    "buf": _pass_buf,
    "hash": _pass_hash,
    "invpair": _pass_invpair,
}


def optimize(n: Netlist, effort: OptEffort = STANDARD,
             frozen: Iterable[str] = ()) -> Netlist:
    """Run the cleanup pipeline to fixpoint; frozen nets survive by name."""
    frozen = set(frozen)
    if not effort.passes:
        return n
    rng = random.Random(effort.seed if effort.seed is not None else 0)
    w = _Work(n, frozen)
    for _round in range(50):
        passes = [p for p in effort.passes if p != "dead"]
        if effort.level == "heavy":
            rng.shuffle(passes)
        changed = False
        for p in passes:
            changed |= _PASS_FUNCS[p](w)
        if "dead" in effort.passes:
            changed |= _pass_dead(w, frozen)
        if not changed:
            break
    result = w.to_netlist()
    present = set(result.inputs) | {g.output for g in result.gates}
    missing = frozen - present
    if missing:
        raise NetlistError(f"optimizer eliminated frozen nets: {sorted(missing)}")
    return result


def propagate_constants(n: Netlist, bindings: Mapping[str, int],
                        effort: OptEffort = STANDARD,
                        frozen: Iterable[str] = ()) -> Netlist:
    """Hardcode PI values and simplify under that restriction.

    Bound PIs are removed from the input list; their nets become constant
    drivers and usually dissolve during cleanup.
    """
    pis = set(n.inputs)
    for net in bindings:
        if net not in pis:
            raise NetlistError(f"cannot bind non-PI net {net!r}")
    const_gates = tuple(
        Gate(net, f"CONST{int(v) & 1}", ()) for net, v in bindings.items()
    )
    remaining = tuple(i for i in n.inputs if i not in bindings)
    bound = Netlist(n.name, remaining, n.outputs, const_gates + n.gates)
    return optimize(bound, effort, frozen=frozen)
