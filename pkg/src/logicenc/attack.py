"""Oracle-less key-guessing evaluation (SCOPE-style) and its metrics.

The attacker holds the protected netlist and its key ports, never a working
chip. Each key bit is hardcoded both ways, the circuit is cleaned up, and
structural features decide the guess. Ground truth enters only at scoring
time, via compute_metrics.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .corrector import KeyVector
from .integrator import KEY_PORT_PREFIX, FinalCircuit
from .netlist import (
    Gate,
    Netlist,
    NetlistError,
    fanin_cone,
    literal_count,
    stats,
)
from .optimize import STANDARD, OptEffort, optimize, propagate_constants

UNRESOLVED = None

Guess = Optional[int]  # 0, 1, or None for unresolved


@dataclass(frozen=True)
class BitResult:
    key_port: str
    guess: Guess
    feature_delta: int


@dataclass(frozen=True)
class AttackReport:
    mode: str  # baseline | resynthesis | worst_case_ec | worst_case_cc
    per_key_bit: Tuple[BitResult, ...]
    ac: float  # percent over all bits
    kpa: Optional[float]  # percent over resolved bits; None if none resolved
    recipes: Tuple[str, ...] = ()
    complemented: bool = False  # best of the two complementary guess sets

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "per_bit": [
                {
                    "key_port": r.key_port,
                    "guess": r.guess,
                    "feature_delta": r.feature_delta,
                }
                for r in self.per_key_bit
            ],
            "ac": self.ac,
            "kpa": self.kpa,
            "recipes": list(self.recipes),
            "complemented": self.complemented,
        }


def features(n: Netlist) -> Tuple[int, int, int]:
    """(gate count, literal count, depth): the desk-scale PPA stand-in."""
    s = stats(n)
    return (s.gate_count, literal_count(n), s.depth)


def _delta_and_guess(f0, f1) -> Tuple[int, Guess]:
    """Compare the two hardcoded variants lexicographically.

    The smaller variant determines the guess; equal features leave the bit
    unresolved. The guess direction is an interpretation, which is why
    scoring always also evaluates the complementary guess set.
    """
    for c0, c1 in zip(f0, f1):
        if c0 != c1:
            delta = c0 - c1
            return delta, (1 if delta > 0 else 0)
    return 0, UNRESOLVED


def compute_metrics(
    guesses: Sequence[Guess], truth: Sequence[int]
) -> Tuple[float, Optional[float]]:
    """AC counts unresolved bits as wrong; KPA skips them entirely."""
    if len(guesses) != len(truth):
        raise ValueError("guess/truth length mismatch")
    total = len(truth)
    resolved = [(g, t) for g, t in zip(guesses, truth) if g is not None]
    correct = sum(1 for g, t in resolved if g == t)
    ac = 100.0 * correct / total if total else 0.0
    kpa = 100.0 * correct / len(resolved) if resolved else None
    return ac, kpa


def score_best_of_complements(
    guesses: Sequence[Guess], truth: Sequence[int]
) -> Tuple[float, Optional[float], bool]:
    """Evaluate the guess set and its bitwise complement; keep the max AC."""
    ac, kpa = compute_metrics(guesses, truth)
    comp = [None if g is None else 1 - g for g in guesses]
    ac_c, kpa_c = compute_metrics(comp, truth)
    if ac_c > ac:
        return ac_c, kpa_c, True
    return ac, kpa, False


def _guess_bits(
    netlist: Netlist, key_ports: Sequence[str], effort: OptEffort = STANDARD
) -> List[BitResult]:
    results = []
    for port in key_ports:
        variants = []
        for v in (0, 1):
            hard = propagate_constants(netlist, {port: v}, effort)
            variants.append(features(hard))
        delta, guess = _delta_and_guess(variants[0], variants[1])
        results.append(BitResult(port, guess, delta))
    return results


def scope_baseline(
    fc: FinalCircuit, effort: OptEffort = STANDARD
) -> AttackReport:
    """Hardcode each key bit 0 and 1, compare features, then score."""
    if not fc.key_map:
        raise NetlistError("final circuit has no key ports")
    per_bit = _guess_bits(fc.netlist, fc.key_ports, effort)
    return _scored_report("baseline", per_bit, fc.k_fc)


def scope_resynth(
    fc: FinalCircuit, recipes: Sequence[OptEffort]
) -> AttackReport:
    """Baseline attack on each resynthesized variant, majority vote per bit."""
    if len(recipes) < 2:
        raise ValueError("resynthesis attack needs at least two recipes")
    votes: List[List[BitResult]] = []
    for recipe in recipes:
        variant = optimize(fc.netlist, recipe, frozen=set(fc.key_ports))
        votes.append(_guess_bits(variant, fc.key_ports))
    per_bit = []
    for i, port in enumerate(fc.key_ports):
        counts = Counter(
            v[i].guess for v in votes if v[i].guess is not None
        )
        if not counts:
            per_bit.append(BitResult(port, UNRESOLVED, 0))
            continue
        ranked = counts.most_common()
        if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
            per_bit.append(BitResult(port, UNRESOLVED, 0))
        else:
            delta = sum(v[i].feature_delta for v in votes)
            per_bit.append(BitResult(port, ranked[0][0], delta))
    recipe_names = tuple(
        r.level if r.seed is None else f"{r.level}:seed={r.seed}"
        for r in recipes
    )
    return _scored_report("resynthesis", per_bit, fc.k_fc, recipe_names)


def worst_case_split(
    component: Netlist,
    key: KeyVector,
    mode: str,
    effort: OptEffort = STANDARD,
) -> AttackReport:
    """Attack the EC or CC in isolation: per PO, test buffered vs inverted.

    A constant PO cone is read off directly (its value is the key bit for a
    degenerate CC); otherwise the feature heuristic compares the buffered
    and inverted hypotheses.
    """
    if mode not in ("worst_case_ec", "worst_case_cc"):
        raise ValueError(f"bad worst-case mode {mode!r}")
    if not component.outputs:
        raise NetlistError("component has no primary outputs")
    if len(key) != len(component.outputs):
        raise NetlistError("key vector does not match PO count")
    base = optimize(component, effort)
    drivers = {g.output: g for g in base.gates}
    per_bit = []
    for po in base.outputs:
        g = drivers.get(po)
        if g is not None and g.kind in ("CONST0", "CONST1"):
            const_val = 1 if g.kind == "CONST1" else 0
            per_bit.append(BitResult(f"po:{po}", const_val, 0))
            continue
        f0 = features(base)
        f1 = features(optimize(_invert_po(base, po), effort))
        delta, guess = _delta_and_guess(f0, f1)
        per_bit.append(BitResult(f"po:{po}", guess, delta))
    return _scored_report(mode, per_bit, key)


def _invert_po(n: Netlist, po: str) -> Netlist:
    pre = po + "_hyp"
    gates = [
        Gate(
            pre if g.output == po else g.output,
            g.kind,
            tuple(pre if i == po else i for i in g.inputs),
        )
        for g in n.gates
    ]
    gates.append(Gate(po, "NOT", (pre,)))
    return Netlist(n.name, n.inputs, n.outputs, tuple(gates))


def _scored_report(
    mode: str,
    per_bit: List[BitResult],
    truth: Optional[KeyVector],
    recipes: Tuple[str, ...] = (),
) -> AttackReport:
    guesses = [r.guess for r in per_bit]
    if truth is None:
        return AttackReport(mode, tuple(per_bit), 0.0, None, recipes)
    ac, kpa, comp = score_best_of_complements(guesses, truth.bits)
    return AttackReport(mode, tuple(per_bit), ac, kpa, recipes, comp)


def lock_leaky_xor(
    n: Netlist, rng: random.Random, num_bits: Optional[int] = None
) -> FinalCircuit:
    """Hand-built leaky reference scheme: plain XOR/XNOR key gates whose
    type reveals the key bit (the classic leak SCOPE exploits). Used to
    validate the attack harness, not as a defense."""
    live = fanin_cone(n, n.outputs)
    # avoid inverter-adjacent nets: there the wrong key value creates a
    # NOT-NOT pair that cancels, which would defeat the intended leak
    not_consumers = {
        g.inputs[0] for g in n.gates if g.kind in ("NOT", "BUF")
    }
    # POs are excluded as well: a PO keeps a protected buffer when the key
    # gate collapses, so both key values would tie
    po_set = set(n.outputs)
    candidates = [
        g.output
        for g in n.topo_gates()
        if g.output in live
        and g.kind not in ("NOT", "BUF")
        and g.output not in not_consumers
        and g.output not in po_set
    ]
    if not candidates:
        raise NetlistError("need at least one gate to lock")
    if num_bits is None:
        num_bits = min(4, len(candidates))
    targets = rng.sample(candidates, num_bits)
    gates = list(n.gates)
    key_map = []
    truth_bits = []
    by_output = {g.output: i for i, g in enumerate(gates)}
    for idx, net in enumerate(targets):
        port = f"{KEY_PORT_PREFIX}{idx}"
        bit = rng.getrandbits(1)
        truth_bits.append(bit)
        pre = net + "_pre"
        gi = by_output[net]
        g = gates[gi]
        # the key gate takes over the net name, so consumers stay untouched
        gates[gi] = Gate(pre, g.kind, g.inputs)
        kg_kind = "XNOR" if bit else "XOR"
        gates.append(Gate(net, kg_kind, (pre, port)))
        key_map.append((port, net, "EC"))
        by_output = {g.output: i for i, g in enumerate(gates)}
    inputs = tuple(n.inputs) + tuple(p for p, _, _ in key_map)
    locked = Netlist(n.name + "_leaky", inputs, n.outputs, tuple(gates))
    return FinalCircuit(
        locked, tuple(key_map), KeyVector(tuple(truth_bits), "K_FC")
    )
