"""End-to-end acceptance checks, one test per claim the package makes.

Run with ``pytest tests/test_acceptance.py -v -s`` for one PASS line per
criterion.  Everything here exercises public entry points only: the library
API and the installed CLI.
"""

import hashlib
import json
import math
import os

import pytest

from parity_ramsey import verify
from parity_ramsey.cli import main
from parity_ramsey.codes import (
    build_parity_classes,
    clique_mask,
    graph_signatures,
    verify_code,
    pairwise_verify,
    ParityClass,
)
from parity_ramsey.coloring import (
    BitVector,
    count_colors,
    derive_params,
    edge_color,
    enumerate_vertices,
    format_color,
)
from parity_ramsey.construct import (
    assignment_matrix,
    moser_tardos,
    required_colors,
)
from parity_ramsey.patterns import (
    canonical_from_colors,
    filter_and_classify,
    watch_list,
)

JOBS = os.cpu_count() or 1


def _psi_matrix_oracle(n, beta=2):
    params = derive_params(beta)
    return verify.psi_oracle(params, enumerate_vertices(params, n))


@pytest.fixture(scope="module")
def scan64(oracle64):
    """The full m=5 sweep at n=64, shared between criteria 2 and 5."""
    run = verify.scan(oracle64, 5, jobs=JOBS)
    return list(run), run.summary


def test_criterion_1_worked_example(capsys):
    params = derive_params(2)
    v = BitVector.from_string("00000000")
    w = BitVector.from_string("00010000")
    color = edge_color(params, v, w)

    text = format_color(color)
    assert "level-2 profile: (1, {0000, 0001})" in text
    assert "level-1 profile: (2, {00, 01}), Zero" in text
    assert "level-0 profile: Zero, (2, {0, 1}), Zero, Zero" in text
    assert "signs:           +1, 0" in text

    assert main(["color", "--beta", "2", "00000000", "00010000"]) == 0
    out = capsys.readouterr().out
    for line in text.splitlines():
        assert line in out
    print("PASS criterion 1: worked 8-bit example matches at library and CLI level")


def test_criterion_2_no_forbidden_patterns_at_64(oracle64, scan64):
    run4 = verify.scan(oracle64, 4, ("striped-k4", "k4-type-222"), jobs=JOBS)
    found4 = list(run4)
    assert run4.summary.subsets_scanned == math.comb(64, 4) == 635376
    assert found4 == []

    found5, summary5 = scan64
    assert summary5.subsets_scanned == math.comb(64, 5) == 7624512
    assert sorted(summary5.violations) == [
        "forbidden-config-1", "forbidden-config-2", "forbidden-config-3",
        "k5-few-colors", "parity-even-k5",
    ]
    assert found5 == []
    print(
        "PASS criterion 2: zero violations over all "
        f"{635376 + 7624512} 4- and 5-subsets at n=64"
    )


def test_criterion_3_no_monochromatic_odd_cycle():
    params = derive_params(2)
    for n, order, seed in ((64, "lex", None), (128, "random", 2024)):
        verts = enumerate_vertices(params, n, order=order, seed=seed)
        oracle = verify.psi_oracle(params, verts)
        found = verify.check_mono_odd_cycle(oracle)
        assert found == []
    print("PASS criterion 3: color classes bipartite at n=64 lex and n=128 random")


def test_criterion_4_classification():
    report = filter_and_classify()
    assert report.raw_count == 945
    assert report.class_count == 15
    assert report.survivor_count == 5
    assert report.bucket_counts() == {0: 1, 1: 1, 3: 1, 4: 1, 5: 1}
    assert 2 not in report.buckets
    print(
        "PASS criterion 4: 945 colorings -> 15 classes -> 5 survivors "
        "with path counts {0, 1, 3, 4, 5}"
    )


def test_criterion_5_watch_list_absent(scan64):
    wl = watch_list()
    assert len(wl) == 5
    found5, _ = scan64
    seen = {
        canonical_from_colors([color_hex for _, _, color_hex in v.edges])
        for v in found5
        if len(v.vertices) == 5
    }
    assert seen.isdisjoint(set(wl))
    print("PASS criterion 5: none of the 5 watched shapes occurs at n=64")


@pytest.mark.parametrize("n,p,c", [(20, 4, 2), (50, 4, 4), (30, 5, 4)])
def test_criterion_6_randomized_construction(n, p, c):
    t = required_colors(n, p, c)
    check = "parity-even-k4" if p == 4 else "parity-even-k5"
    for seed in range(20):
        result = moser_tardos(n, p, t, seed=seed)
        assert result.converged, f"seed {seed} did not converge"
        assert result.rounds <= 10**6
        mat = assignment_matrix(n, result.coloring.assignment)
        left_over = list(verify.scan(verify.matrix_oracle(mat), p, (check,)))
        assert left_over == []
    print(
        f"PASS criterion 6: resampling reaches an all-even-free coloring at "
        f"n={n}, p={p}, t={t} for 20 consecutive seeds"
    )


def test_criterion_7_parity_class_code():
    oracle6 = _psi_matrix_oracle(6)
    report, chosen = build_parity_classes(6, oracle6)
    assert sum(report.class_sizes.values()) == 2**15 == 32768
    assert verify_code(chosen).ok

    oracle5 = _psi_matrix_oracle(5)
    sigs = graph_signatures(oracle5)
    for g in range(1024):
        for h in range(1024):
            assert sigs[g ^ h] == sigs[g] ^ sigs[h]

    # agreement between the probe verifier and the quadratic one on a
    # violation-rich class (single color, prefix + its 5-clique flips)
    const = verify.matrix_oracle(_constant_matrix(6))
    _, big = build_parity_classes(6, const)
    mask = clique_mask(6, (0, 1, 2, 3, 4))
    prefix = big.indices().tolist()[:1000]
    rich = ParityClass.from_indices(6, prefix + [g ^ mask for g in prefix])
    a, b = verify_code(rich), pairwise_verify(rich)
    assert a.ok is b.ok is False
    assert a.violations == b.violations
    print(
        "PASS criterion 7: 32768-class code at n=6 verifies clean; "
        "signatures are XOR-linear; both verifiers agree"
    )


def _constant_matrix(n):
    import numpy as np

    m = np.ones((n, n), dtype=np.int64)
    np.fill_diagonal(m, 0)
    return m


def test_criterion_8_parallel_determinism(tmp_path, capsys):
    corrupt = ["verify", "--beta", "2", "--n", "24", "--m", "4",
               "--corrupt", "0,17,1,16"]
    sample = ["verify", "--beta", "2", "--n", "64", "--m", "5",
              "--mode", "sample", "--samples", "2000", "--seed", "11"]
    for label, args in (("corrupt", corrupt), ("sample", sample)):
        digests = set()
        for jobs in ("1", "8"):
            out = tmp_path / f"{label}-{jobs}.jsonl"
            main([*args, "--jobs", jobs, "--out", str(out)])
            capsys.readouterr()
            digests.add(hashlib.sha256(out.read_bytes()).hexdigest())
        assert len(digests) == 1, f"{label} output depends on --jobs"
    print("PASS criterion 8: output files byte-identical at --jobs 1 and 8")


def test_criterion_9_color_budget():
    params = derive_params(2)
    census = count_colors(params, enumerate_vertices(params, 256))
    assert census.colors == 6000
    assert census.sign_parts <= 9
    print(
        f"PASS criterion 9: full 256-vertex universe uses {census.colors} "
        f"colors in {census.sign_parts} sign groups (budget 9)"
    )
