import random

import pytest

from conftest import assert_equiv_exhaustive
from logicenc import (
    Overrides,
    forced_cipher,
    load_benchmark,
    run_encryption,
    run_matrix,
)
from logicenc.pipeline import restore


def test_same_seed_same_artifacts():
    oc = load_benchmark("mini8")
    a = run_encryption(oc, random.Random(42))
    b = run_encryption(oc, random.Random(42))
    assert a.key_file_dict() == b.key_file_dict()
    assert a.trace == b.trace
    assert a.fc.netlist == b.fc.netlist


def test_different_seeds_differ():
    oc = load_benchmark("mini8")
    a = run_encryption(oc, random.Random(1))
    b = run_encryption(oc, random.Random(2))
    assert a.trace != b.trace or a.k_fc != b.k_fc


def test_restored_fc_equals_oc():
    oc = load_benchmark("mini10")
    r = run_encryption(oc, random.Random(3))
    assert_equiv_exhaustive(restore(r.fc, r.k_fc), oc)
    assert r.verdict.result == "equivalent"


def test_report_contents():
    oc = load_benchmark("mini8")
    r = run_encryption(oc, random.Random(4))
    rep = r.report
    assert rep["key_bits"] == 2 * len(oc.outputs)
    assert rep["g"] == r.core.mapped.gate_count
    assert rep["g"] + rep["pad_len"] == len(r.trace.ciphertext)
    assert 0.0 <= rep["flip_rate"] <= 1.0
    assert rep["area_overhead"] > 0
    assert rep["verification"]["result"] == "equivalent"
    assert 0.0 <= rep["cc_merge_savings"] <= 1.0


def test_overrides_are_honored(golden):
    ov = Overrides(
        cipher=forced_cipher("101"), k_cc=(1,), k_ec=(0,), k_mux=(1, 0)
    )
    r = run_encryption(golden, random.Random(0), overrides=ov)
    assert r.k_cc.bits == (1,) and r.k_ec.bits == (0,)
    assert r.k_mux.bits == (1, 0)
    assert r.trace.ciphertext[:3] == "101"


def test_skip_verification_flag():
    oc = load_benchmark("mini8")
    r = run_encryption(oc, random.Random(5), verify=False)
    assert r.verdict is None
    assert r.report["verification"] is None


def test_run_matrix_structure():
    oc = load_benchmark("mini8")
    results = run_matrix(oc, seed=6, runs_encrypt=3, runs_e2e=2)
    assert [(i, j) for i, j, _ in results] == [
        (i, j) for i in range(3) for j in range(2)
    ]
    by_i = {}
    for i, _, r in results:
        by_i.setdefault(i, []).append(r)
    # same ciphertext within an encryption run, fresh keys across e2e runs
    for runs in by_i.values():
        assert runs[0].trace == runs[1].trace
        assert runs[0].k_fc != runs[1].k_fc or runs[0].k_mux != runs[1].k_mux
    traces = {runs[0].trace.ciphertext for runs in by_i.values()}
    assert len(traces) == 3


def test_run_matrix_deterministic():
    oc = load_benchmark("mini8")
    a = run_matrix(oc, seed=7, runs_encrypt=2, runs_e2e=2)
    b = run_matrix(oc, seed=7, runs_encrypt=2, runs_e2e=2)
    assert [r.key_file_dict() for _, _, r in a] == [
        r.key_file_dict() for _, _, r in b
    ]
    with pytest.raises(ValueError):
        run_matrix(oc, seed=7, runs_encrypt=0, runs_e2e=1)
