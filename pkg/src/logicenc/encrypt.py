"""Gate coding, AES encryption of the coded netlist, and ciphertext decoding.

The mapped circuit's NAND/NOR kinds become a g-bit plaintext (one bit per
gate, in a memorized random order), which is padded, encrypted block by
block under fresh random AES-128 keys, and the ciphertext decoded back onto
the same gate graph. The AES keys are drawn, used once, and dropped; nothing
in this module retains or serializes them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .aes import aes128_encrypt_block
from .nandnor import MappedNetlist
from .netlist import Gate, Netlist

BLOCK_BITS = 128

Cipher = Callable[[bytes], bytes]


@dataclass(frozen=True)
class CodingScheme:
    bit_for_nand: int
    gate_order: Tuple[int, ...]

    @property
    def bit_for_nor(self) -> int:
        return 1 - self.bit_for_nand

    def __post_init__(self):
        if self.bit_for_nand not in (0, 1):
            raise ValueError("bit_for_nand must be 0 or 1")
        if sorted(self.gate_order) != list(range(len(self.gate_order))):
            raise ValueError("gate_order must be a permutation of 0..g-1")


@dataclass(frozen=True)
class EncryptionTrace:
    plaintext_len_g: int
    ciphertext: str  # bit string, length a multiple of 128
    pad_len: int

    def __post_init__(self):
        blocks = -(-self.plaintext_len_g // BLOCK_BITS)
        if len(self.ciphertext) != blocks * BLOCK_BITS:
            raise ValueError("ciphertext length inconsistent with g")
        if self.pad_len != len(self.ciphertext) - self.plaintext_len_g:
            raise ValueError("pad_len inconsistent")

    def to_json_dict(self) -> dict:
        return {
            "plaintext_len": self.plaintext_len_g,
            "pad_len": self.pad_len,
            "ciphertext_hex": bits_to_bytes(self.ciphertext).hex(),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "EncryptionTrace":
        total = d["plaintext_len"] + d["pad_len"]
        bits = bytes_to_bits(bytes.fromhex(d["ciphertext_hex"]))[:total]
        return EncryptionTrace(d["plaintext_len"], bits, d["pad_len"])


def bits_to_bytes(bits: str) -> bytes:
    if len(bits) % 8:
        raise ValueError("bit string length must be a byte multiple")
    return bytes(
        int(bits[i : i + 8], 2) for i in range(0, len(bits), 8)
    )


def bytes_to_bits(data: bytes) -> str:
    return "".join(f"{b:08b}" for b in data)


def make_coding_scheme(g: int, rng: random.Random) -> CodingScheme:
    if g < 1:
        raise ValueError("need at least one gate to build a coding scheme")
    order = list(range(g))
    rng.shuffle(order)
    return CodingScheme(rng.getrandbits(1), tuple(order))


def encode(m: MappedNetlist, cs: CodingScheme) -> str:
    """Plaintext bit i = code of the gate at cs.gate_order[i]."""
    gates = m.netlist.gates
    if len(cs.gate_order) != len(gates):
        raise ValueError(
            f"coding scheme covers {len(cs.gate_order)} gates, "
            f"netlist has {len(gates)}"
        )
    code = {"NAND": cs.bit_for_nand, "NOR": cs.bit_for_nor}
    return "".join(str(code[gates[idx].kind]) for idx in cs.gate_order)


def random_key_cipher(rng: random.Random) -> Cipher:
    """AES-128 under a freshly drawn key; the key escapes only via closure
    and is dropped with it."""
    key = rng.getrandbits(128).to_bytes(16, "big")
    return lambda block: aes128_encrypt_block(key, block)


def forced_cipher(prefix_bits: str) -> Cipher:
    """Test-mode cipher producing a fixed ciphertext prefix, then zeros."""

    state = {"pos": 0}

    def cipher(block: bytes) -> bytes:
        start = state["pos"]
        state["pos"] += BLOCK_BITS
        bits = prefix_bits[start : start + BLOCK_BITS]
        bits = bits.ljust(BLOCK_BITS, "0")
        return bits_to_bytes(bits)

    return cipher


def encrypt(
    plaintext: str,
    rng: random.Random,
    cipher: Optional[Cipher] = None,
) -> EncryptionTrace:
    """Pad with random bits to a block multiple and encrypt each block.

    Each run uses one freshly drawn random key (or the injected test
    cipher); the key is never part of the returned trace.
    """
    g = len(plaintext)
    if g == 0:
        raise ValueError("empty plaintext")
    if set(plaintext) - {"0", "1"}:
        raise ValueError("plaintext must be a bit string")
    blocks = -(-g // BLOCK_BITS)
    pad_len = blocks * BLOCK_BITS - g
    padded = plaintext + "".join(
        str(rng.getrandbits(1)) for _ in range(pad_len)
    )
    if cipher is None:
        cipher = random_key_cipher(rng)
    out = []
    for b in range(blocks):
        chunk = padded[b * BLOCK_BITS : (b + 1) * BLOCK_BITS]
        out.append(bytes_to_bits(cipher(bits_to_bytes(chunk))))
    return EncryptionTrace(g, "".join(out), pad_len)


def decode(
    trace: EncryptionTrace, cs: CodingScheme, m: MappedNetlist
) -> Netlist:
    """Reassign gate kinds from the ciphertext; interconnects stay put."""
    src = m.netlist
    if trace.plaintext_len_g != len(src.gates):
        raise ValueError("trace length does not match mapped netlist")
    kinds = {cs.bit_for_nand: "NAND", cs.bit_for_nor: "NOR"}
    new_kinds = {}
    for i, gate_idx in enumerate(cs.gate_order):
        new_kinds[gate_idx] = kinds[int(trace.ciphertext[i])]
    gates = tuple(
        Gate(g.output, new_kinds[idx], g.inputs)
        for idx, g in enumerate(src.gates)
    )
    return Netlist(src.name + "_ec", src.inputs, src.outputs, gates)


def flip_count(m: MappedNetlist, ec: Netlist) -> int:
    """Gates whose kind differs between the mapped OC and the basic EC."""
    return sum(
        1 for a, b in zip(m.netlist.gates, ec.gates) if a.kind != b.kind
    )
