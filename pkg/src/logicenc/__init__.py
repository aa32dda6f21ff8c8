"""Gate-level logic encryption toolchain.

Protects a combinational netlist by AES-encrypting its NAND/NOR gate-kind
bitstring, wrapping the result with a correction circuit, and exposing a
per-output MUX-based key interface; includes equivalence checking and an
oracle-less attack evaluation harness.
"""

from .bench import BenchError, parse_bench, write_bench
from .benchmarks import available_benchmarks, load_benchmark
from .corrector import KeyVector, build_cc, randomize_ec
from .encrypt import (
    CodingScheme,
    EncryptionTrace,
    decode,
    encode,
    encrypt,
    forced_cipher,
    make_coding_scheme,
)
from .integrator import FinalCircuit, build_fc, derive_final_key, lower_fc
from .nandnor import MappedNetlist, map_to_nand_nor
from .netlist import (
    CircuitStats,
    Gate,
    Netlist,
    NetlistError,
    simulate,
    stats,
    validate,
)
from .optimize import HEAVY, LIGHT, NONE, STANDARD, OptEffort, optimize, propagate_constants
from .pipeline import (
    EncryptionResult,
    Overrides,
    VerificationError,
    run_encryption,
    run_matrix,
)
from .verify import EquivBudget, EquivVerdict, build_miter, check_equiv

__all__ = [
    "BenchError",
    "CircuitStats",
    "CodingScheme",
    "EncryptionResult",
    "EncryptionTrace",
    "EquivBudget",
    "EquivVerdict",
    "FinalCircuit",
    "Gate",
    "HEAVY",
    "KeyVector",
    "LIGHT",
    "MappedNetlist",
    "NONE",
    "Netlist",
    "NetlistError",
    "OptEffort",
    "Overrides",
    "STANDARD",
    "VerificationError",
    "available_benchmarks",
    "build_cc",
    "build_fc",
    "build_miter",
    "check_equiv",
    "decode",
    "derive_final_key",
    "encode",
    "encrypt",
    "forced_cipher",
    "load_benchmark",
    "lower_fc",
    "make_coding_scheme",
    "map_to_nand_nor",
    "optimize",
    "parse_bench",
    "propagate_constants",
    "randomize_ec",
    "run_encryption",
    "run_matrix",
    "simulate",
    "stats",
    "validate",
    "write_bench",
]

__version__ = "0.1.0"
