"""Bundled BENCH-format benchmark circuits.

c17 is the classic 6-NAND circuit. The c1355..c7552 files are synthetic
stand-ins that reproduce the published PI/PO interface sizes of their
namesakes (the originals are not redistributable here); the key-size law
and all formal checks depend only on the interface, not the logic. The
mini*/mid* circuits are small enough for exhaustive checking.
"""

from __future__ import annotations

from importlib import resources
from typing import List

from ..bench import parse_bench
from ..netlist import Netlist


def available_benchmarks() -> List[str]:
    root = resources.files(__name__)
    return sorted(
        p.name[: -len(".bench")]
        for p in root.iterdir()
        if p.name.endswith(".bench")
    )


def load_benchmark(name: str) -> Netlist:
    path = resources.files(__name__) / f"{name}.bench"
    if not path.is_file():
        raise FileNotFoundError(
            f"no bundled benchmark {name!r}; have {available_benchmarks()}"
        )
    return parse_bench(path.read_text(), name=name)
