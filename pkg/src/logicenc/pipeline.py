"""End-to-end encryption flow: map, encode+encrypt, correct, integrate.

Stages, in order:
  A  NAND/NOR-map the original circuit (OC)
  B  code the gate kinds, AES-encrypt under a one-shot key, decode -> basic EC
  C  optimize the basic EC into the intermediate EC
  D  build the correction circuit (CC) and randomize the EC's outputs
  E  assemble the final circuit (FC) with MUX key gates, derive the final key

All randomness flows from a single random.Random so runs are reproducible
from a seed; individual draws (cipher, K_CC, K_EC, K_MUX, coding scheme)
can be overridden for testing. By default the FC is verified equivalent to
the OC under the derived key before anything is returned.
"""

from __future__ import annotations

import random
import secrets
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .corrector import KeyVector, build_cc, randomize_ec
from .encrypt import (
    Cipher,
    CodingScheme,
    EncryptionTrace,
    decode,
    encode,
    encrypt,
    flip_count,
    make_coding_scheme,
)
from .integrator import FinalCircuit, build_fc, derive_final_key
from .nandnor import MappedNetlist, map_to_nand_nor
from .netlist import Netlist, stats
from .optimize import STANDARD, OptEffort, optimize, propagate_constants
from .verify import EquivBudget, EquivVerdict, check_equiv


class VerificationError(Exception):
    """The assembled circuit failed its internal equivalence check."""

    def __init__(self, verdict: EquivVerdict):
        self.verdict = verdict
        super().__init__(
            f"final circuit verification came back {verdict.result!r}"
            f" (method {verdict.method})"
        )


@dataclass(frozen=True)
class Overrides:
    """Injection points for deterministic tests; all default to random."""

    cipher: Optional[Cipher] = None
    coding_scheme: Optional[CodingScheme] = None
    k_cc: Optional[Sequence[int]] = None
    k_ec: Optional[Sequence[int]] = None
    k_mux: Optional[Sequence[int]] = None


@dataclass(frozen=True)
class EncryptedCore:
    """Output of the encryption stage (A-C), before any keys exist."""

    oc: Netlist
    mapped: MappedNetlist
    scheme: CodingScheme
    trace: EncryptionTrace
    basic_ec: Netlist
    ec: Netlist  # intermediate (optimized) EC


@dataclass(frozen=True)
class EncryptionResult:
    core: EncryptedCore
    ec_final: Netlist
    cc: Netlist
    fc: FinalCircuit
    k_ec: KeyVector
    k_cc: KeyVector
    k_mux: KeyVector
    k_fc: KeyVector
    verdict: Optional[EquivVerdict]
    report: dict = field(default_factory=dict)

    @property
    def oc(self) -> Netlist:
        return self.core.oc

    @property
    def trace(self) -> EncryptionTrace:
        return self.core.trace

    def key_file_dict(self) -> dict:
        return {
            "benchmark": self.oc.name,
            "po_order": list(self.oc.outputs),
            "k_ec": self.k_ec.as_bitstring(),
            "k_cc": self.k_cc.as_bitstring(),
            "k_mux": self.k_mux.as_bitstring(),
            "k_fc": self.k_fc.as_bitstring(),
            "key_port_map": [list(entry) for entry in self.fc.key_map],
        }


def restore(
    fc: FinalCircuit, k_fc: KeyVector, effort: OptEffort = STANDARD
) -> Netlist:
    """Hardcode the final key into the FC and clean up."""
    return propagate_constants(fc.netlist, fc.key_bindings(k_fc.bits), effort)


def encrypt_stage(
    oc: Netlist,
    rng: random.Random,
    effort: OptEffort = STANDARD,
    overrides: Optional[Overrides] = None,
) -> EncryptedCore:
    ov = overrides or Overrides()
    mapped = map_to_nand_nor(oc)
    scheme = ov.coding_scheme or make_coding_scheme(mapped.gate_count, rng)
    plaintext = encode(mapped, scheme)
    trace = encrypt(plaintext, rng, cipher=ov.cipher)
    basic_ec = decode(trace, scheme, mapped)
    ec = optimize(basic_ec, effort)
    return EncryptedCore(oc, mapped, scheme, trace, basic_ec, ec)


def integrate_stage(
    core: EncryptedCore,
    rng: random.Random,
    effort: OptEffort = STANDARD,
    budget: Optional[EquivBudget] = None,
    overrides: Optional[Overrides] = None,
    verify: bool = True,
) -> EncryptionResult:
    ov = overrides or Overrides()
    oc = core.oc
    cc, k_cc = build_cc(oc, core.ec, rng, k_cc=ov.k_cc, effort=effort)
    ec_final, k_ec = randomize_ec(core.ec, rng, k_ec=ov.k_ec, effort=effort)
    fc, k_mux = build_fc(ec_final, cc, rng, k_mux=ov.k_mux, effort=effort)
    k_fc = derive_final_key(k_mux, k_ec, k_cc)
    fc = fc.with_final_key(k_fc)

    verdict = None
    if verify:
        verdict = check_equiv(
            restore(fc, k_fc, effort), oc, budget or EquivBudget()
        )
        if verdict.result != "equivalent":
            raise VerificationError(verdict)

    flips = flip_count(core.mapped, core.basic_ec)
    g = core.mapped.gate_count
    oc_stats, fc_stats = stats(oc), stats(fc.netlist)
    cc_alone = len(cc.gates)
    # how much joint optimization shrank the flattened OC+EC pair
    cc_unmerged = len(oc.gates) + len(core.ec.gates) + 2 * len(oc.outputs)
    report = {
        "benchmark": oc.name,
        "pi_count": len(oc.inputs),
        "po_count": len(oc.outputs),
        "key_bits": len(k_fc),
        "g": g,
        "pad_len": core.trace.pad_len,
        "gate_flips": flips,
        "flip_rate": flips / g,
        "duplicated_input_gates": core.mapped.duplicated_input_count,
        "oc_gates": oc_stats.gate_count,
        "oc_depth": oc_stats.depth,
        "fc_gates": fc_stats.gate_count,
        "fc_depth": fc_stats.depth,
        "area_overhead": (fc_stats.gate_count - oc_stats.gate_count)
        / oc_stats.gate_count,
        "cc_gates": cc_alone,
        "cc_merge_savings": 1.0 - cc_alone / cc_unmerged,
        "verification": verdict.to_json_dict() if verdict else None,
    }
    return EncryptionResult(
        core, ec_final, cc, fc, k_ec, k_cc, k_mux, k_fc, verdict, report
    )


def run_encryption(
    oc: Netlist,
    rng: Optional[random.Random] = None,
    effort: OptEffort = STANDARD,
    budget: Optional[EquivBudget] = None,
    overrides: Optional[Overrides] = None,
    verify: bool = True,
) -> EncryptionResult:
    if rng is None:
        rng = random.Random(secrets.randbits(64))
    core = encrypt_stage(oc, rng, effort, overrides)
    return integrate_stage(core, rng, effort, budget, overrides, verify)


def run_matrix(
    oc: Netlist,
    seed: int,
    runs_encrypt: int = 10,
    runs_e2e: int = 4,
    effort: OptEffort = STANDARD,
    budget: Optional[EquivBudget] = None,
    verify: bool = True,
) -> List[Tuple[int, int, EncryptionResult]]:
    """N independent encryption runs, each integrated end to end M times."""
    if runs_encrypt < 1 or runs_e2e < 1:
        raise ValueError("run counts must be >= 1")
    root = random.Random(seed)
    out = []
    for i in range(runs_encrypt):
        core = encrypt_stage(oc, random.Random(root.getrandbits(64)), effort)
        for j in range(runs_e2e):
            rng = random.Random(root.getrandbits(64))
            out.append(
                (i, j, integrate_stage(core, rng, effort, budget, None, verify))
            )
    return out
