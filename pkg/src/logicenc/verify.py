"""Functional equivalence checking between netlists.

Small interfaces are checked exhaustively with bit-parallel simulation.
Larger ones go through a SAT miter: the two circuits are joined over their
shared inputs, internal nets are merged bottom-up when random-simulation
signatures suggest and SAT proves they match (classic sweeping), and each
output pair is then discharged by the CDCL solver. A random-simulation
fallback exists for exhausted SAT budgets but only ever reports an
inconclusive verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .netlist import (
    COMMUTATIVE,
    Gate,
    Netlist,
    NetlistError,
    clone_gates_prefixed,
    evaluate_nets,
    exhaustive_po_words,
    simulate,
)
from .sat import CNF, SatResult, sat_solve

_SIG_BITS = 512


@dataclass(frozen=True)
class EquivBudget:
    exhaustive_threshold: int = 20
    sat_conflicts: int = 200_000
    sweep_conflicts: int = 2_000
    random_vectors: int = 100_000
    seed: int = 0


@dataclass(frozen=True)
class EquivVerdict:
    result: str  # "equivalent" | "inequivalent" | "inconclusive"
    method: str  # "exhaustive" | "sat" | "random-sim"
    witness: Optional[Dict[str, int]] = None
    vectors_checked: int = 0

    def to_json_dict(self) -> dict:
        return {
            "result": self.result,
            "method": self.method,
            "witness": self.witness,
            "vectors_checked": self.vectors_checked,
        }


def build_miter(a: Netlist, b: Netlist) -> Netlist:
    """Single-output netlist that is 1 iff some PO of a and b differs."""
    _check_interface(a, b)
    a_gates, a_map = clone_gates_prefixed(a, "mA_", a.inputs)
    b_gates, b_map = clone_gates_prefixed(b, "mB_", a.inputs)
    gates = list(a_gates) + list(b_gates)
    diff_nets = []
    for po in a.outputs:
        d = f"mD_{po}"
        gates.append(Gate(d, "XOR", (a_map[po], b_map[po])))
        diff_nets.append(d)
    acc = diff_nets[0]
    for i, d in enumerate(diff_nets[1:]):
        nxt = f"mOR_{i}"
        gates.append(Gate(nxt, "OR", (acc, d)))
        acc = nxt
    out = "miter_out"
    gates.append(Gate(out, "BUF", (acc,)))
    return Netlist(f"miter_{a.name}_{b.name}", a.inputs, (out,), tuple(gates))


_TSEITIN = {
    # kind -> clause templates over (z, a, b); literals as ±index into (z,a,b)
    "AND": [(-1, 2), (-1, 3), (1, -2, -3)],
    "NAND": [(1, 2), (1, 3), (-1, -2, -3)],
    "OR": [(1, -2), (1, -3), (-1, 2, 3)],
    "NOR": [(-1, -2), (-1, -3), (1, 2, 3)],
    "XOR": [(-1, 2, 3), (-1, -2, -3), (1, -2, 3), (1, 2, -3)],
    "XNOR": [(1, 2, 3), (1, -2, -3), (-1, -2, 3), (-1, 2, -3)],
    "NOT": [(1, 2), (-1, -2)],
    "BUF": [(1, -2), (-1, 2)],
}


def to_cnf(n: Netlist) -> Tuple[CNF, Dict[str, int]]:
    """Tseitin-encode a single-PO netlist; the PO is asserted to 1."""
    if len(n.outputs) != 1:
        raise NetlistError("to_cnf expects a single-output netlist")
    var_of: Dict[str, int] = {}
    cnf = CNF(0)

    def var(net: str) -> int:
        if net not in var_of:
            var_of[net] = cnf.new_var()
        return var_of[net]

    for g in n.topo_gates():
        z = var(g.output)
        if g.kind == "CONST0":
            cnf.add(-z)
            continue
        if g.kind == "CONST1":
            cnf.add(z)
            continue
        if g.kind == "MUX2":
            s, d0, d1 = (var(i) for i in g.inputs)
            cnf.add(-z, s, d0)
            cnf.add(z, s, -d0)
            cnf.add(-z, -s, d1)
            cnf.add(z, -s, -d1)
            continue
        operands = [z] + [var(i) for i in g.inputs]
        if len(operands) == 2:
            operands.append(operands[1])  # unary kinds reuse slot 3 unused
        for template in _TSEITIN[g.kind]:
            cnf.add(*(
                (1 if t > 0 else -1) * operands[abs(t) - 1] for t in template
            ))
    cnf.add(var(n.outputs[0]))
    return cnf, var_of


def _check_interface(a: Netlist, b: Netlist) -> None:
    if set(a.inputs) != set(b.inputs) or set(a.outputs) != set(b.outputs):
        raise NetlistError(
            f"PI/PO mismatch between {a.name!r} and {b.name!r}"
        )


def check_equiv(
    a: Netlist, b: Netlist, budget: EquivBudget = EquivBudget()
) -> EquivVerdict:
    """Decide functional equivalence of two netlists with matching I/O."""
    _check_interface(a, b)
    if len(a.inputs) <= budget.exhaustive_threshold:
        return _exhaustive_check(a, b)
    return _sat_check(a, b, budget)


def _exhaustive_check(a: Netlist, b: Netlist) -> EquivVerdict:
    pi_order = list(a.inputs)
    wa = exhaustive_po_words(a, pi_order)
    wb = exhaustive_po_words(b, pi_order)
    rows = 1 << len(pi_order)
    for po in a.outputs:
        diff = wa[po] ^ wb[po]
        if diff:
            row = (diff & -diff).bit_length() - 1
            witness = {
                pi: (row >> i) & 1 for i, pi in enumerate(pi_order)
            }
            _confirm_witness(a, b, witness)
            return EquivVerdict("inequivalent", "exhaustive", witness, rows)
    return EquivVerdict("equivalent", "exhaustive", None, rows)


def _confirm_witness(a: Netlist, b: Netlist, witness: Dict[str, int]) -> None:
    ra, rb = simulate(a, witness), simulate(b, witness)
    if ra == rb:
        raise NetlistError("internal error: witness does not distinguish")


# --- SAT path: signature-guided sweeping over the joined circuit ---------


class _Sweep:
    def __init__(self, joined: Netlist, budget: EquivBudget):
        self.joined = joined
        self.budget = budget
        # canonical form of every net: (representative net, inverted?)
        self.canon: Dict[str, Tuple[str, int]] = {
            pi: (pi, 0) for pi in joined.inputs
        }
        # defining gate of each representative: (kind, ((rep, inv), ...))
        self.defs: Dict[str, Tuple[str, Tuple[Tuple[str, int], ...]]] = {}
        self.sig_table: Dict[int, str] = {}
        self.struct_table: Dict[Tuple, Tuple[str, int]] = {}
        rng = random.Random(budget.seed)
        mask = (1 << _SIG_BITS) - 1
        pi_words = {pi: rng.getrandbits(_SIG_BITS) for pi in joined.inputs}
        self.words = evaluate_nets(joined, pi_words, width=_SIG_BITS)
        self.mask = mask

    def lookup(self, net: str) -> Tuple[str, int]:
        rep, inv = self.canon[net]
        while True:
            r2, i2 = self.canon[rep]
            if r2 == rep:
                return rep, inv
            rep, inv = r2, inv ^ i2

    def run(self) -> None:
        for g in self.joined.topo_gates():
            self._process(g)

    def _process(self, g: Gate) -> None:
        ins = tuple(self.lookup(i) for i in g.inputs)
        kind = g.kind
        # pure phase bookkeeping for inverter/buffer shapes
        if kind == "BUF":
            self.canon[g.output] = ins[0]
            return
        if kind == "NOT" or (
            kind in ("NAND", "NOR") and len(ins) == 2 and ins[0] == ins[1]
        ):
            rep, inv = ins[0]
            self.canon[g.output] = (rep, inv ^ 1)
            return
        key_ins = tuple(sorted(ins)) if kind in COMMUTATIVE else ins
        skey = (kind, key_ins)
        hit = self.struct_table.get(skey)
        if hit is not None:
            self.canon[g.output] = hit
            return
        w = self.words[g.output]
        sig = min(w, w ^ self.mask)
        phase_of_sig = 0 if sig == w else 1
        cand = self.sig_table.get(sig)
        if cand is not None and cand != g.output:
            cw = self.words[cand]
            phase = 0 if cw == w else 1
            if self._prove_equal(g.output, kind, ins, cand, phase):
                self.canon[g.output] = (cand, phase)
                self.struct_table[skey] = (cand, phase)
                return
        # keep as a new representative
        self.canon[g.output] = (g.output, 0)
        self.defs[g.output] = (kind, ins)
        self.struct_table[skey] = (g.output, 0)
        if cand is None:
            self.sig_table[sig] = g.output

    def _cnf_for(self, roots: List[str]) -> Tuple[CNF, Dict[str, int]]:
        cnf = CNF(0)
        var_of: Dict[str, int] = {}
        stack = list(roots)
        done = set()
        order: List[str] = []
        while stack:
            net = stack.pop()
            if net in done:
                continue
            done.add(net)
            d = self.defs.get(net)
            if d is not None:
                order.append(net)
                stack.extend(rep for rep, _ in d[1])
        for net in done:
            var_of[net] = cnf.new_var()
        for net in order:
            kind, ins = self.defs[net]
            z = var_of[net]
            if kind == "CONST0":
                cnf.add(-z)
                continue
            if kind == "CONST1":
                cnf.add(z)
                continue
            lits = [
                (var_of[rep] if not inv else -var_of[rep]) for rep, inv in ins
            ]
            if kind == "MUX2":
                s, d0, d1 = lits
                cnf.add(-z, s, d0)
                cnf.add(z, s, -d0)
                cnf.add(-z, -s, d1)
                cnf.add(z, -s, -d1)
                continue
            operands = [z] + lits
            if len(operands) == 2:
                operands.append(operands[1])
            for template in _TSEITIN[kind]:
                cnf.add(*(
                    (1 if t > 0 else -1) * operands[abs(t) - 1]
                    for t in template
                ))
        return cnf, var_of

    def _prove_equal(
        self,
        out: str,
        kind: str,
        ins: Tuple[Tuple[str, int], ...],
        cand: str,
        phase: int,
    ) -> bool:
        # temporary def for the gate under test
        self.defs[out] = (kind, ins)
        try:
            cnf, var_of = self._cnf_for([out, cand])
            x, y = var_of[out], var_of[cand]
            ysign = -1 if phase else 1
            cnf.add(x, ysign * y)
            cnf.add(-x, -ysign * y)
            res = sat_solve(cnf, max_conflicts=self.budget.sweep_conflicts)
            return res.status == "unsat"
        finally:
            del self.defs[out]

    def difference_sat(
        self, x_net: str, y_net: str, max_conflicts: int
    ) -> Tuple[str, Optional[Dict[str, int]]]:
        """Is canon(x) != canon(y) satisfiable? Returns (status, pi_model)."""
        (xr, xi), (yr, yi) = self.lookup(x_net), self.lookup(y_net)
        if xr == yr:
            return ("unsat", None) if xi == yi else ("sat", {})
        cnf, var_of = self._cnf_for([xr, yr])
        xs = -1 if xi else 1
        ys = -1 if yi else 1
        cnf.add(xs * var_of[xr], ys * var_of[yr])
        cnf.add(-xs * var_of[xr], -ys * var_of[yr])
        res = sat_solve(cnf, max_conflicts=max_conflicts)
        if res.status == "sat":
            model = {
                pi: int(res.model.get(var_of[pi], False))
                for pi in self.joined.inputs
                if pi in var_of
            }
            return "sat", model
        return res.status, None


def _sat_check(a: Netlist, b: Netlist, budget: EquivBudget) -> EquivVerdict:
    a_gates, a_map = clone_gates_prefixed(a, "sA_", a.inputs)
    b_gates, b_map = clone_gates_prefixed(b, "sB_", a.inputs)
    joined = Netlist(
        "joined",
        a.inputs,
        tuple(),
        tuple(a_gates) + tuple(b_gates),
    )
    sweep = _Sweep(joined, budget)
    sweep.run()
    exhausted = False
    for po in a.outputs:
        status, model = sweep.difference_sat(
            a_map[po], b_map[po], budget.sat_conflicts
        )
        if status == "unsat":
            continue
        if status == "sat":
            witness = {pi: 0 for pi in a.inputs}
            witness.update(model or {})
            _confirm_witness(a, b, witness)
            return EquivVerdict("inequivalent", "sat", witness)
        exhausted = True
        break
    if not exhausted:
        return EquivVerdict("equivalent", "sat")
    return _random_sim_check(a, b, budget)


def _random_sim_check(
    a: Netlist, b: Netlist, budget: EquivBudget
) -> EquivVerdict:
    rng = random.Random(budget.seed)
    chunk = 4096
    checked = 0
    while checked < budget.random_vectors:
        pi_words = {pi: rng.getrandbits(chunk) for pi in a.inputs}
        va = evaluate_nets(a, pi_words, width=chunk)
        vb = evaluate_nets(b, pi_words, width=chunk)
        for po in a.outputs:
            diff = va[po] ^ vb[po]
            if diff:
                row = (diff & -diff).bit_length() - 1
                witness = {
                    pi: (pi_words[pi] >> row) & 1 for pi in a.inputs
                }
                _confirm_witness(a, b, witness)
                return EquivVerdict(
                    "inequivalent", "random-sim", witness, checked + row + 1
                )
        checked += chunk
    return EquivVerdict("inconclusive", "random-sim", None, checked)
