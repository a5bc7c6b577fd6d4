import hashlib
import json
import subprocess
import sys

import pytest

from parity_ramsey.cli import build_parser, main

CORRUPT_ARGS = ["--beta", "2", "--n", "24", "--m", "4", "--corrupt", "0,17,1,16"]


def digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


class TestColor:
    def test_worked_pair(self, capsys):
        assert main(["color", "--beta", "2", "00000000", "00010000"]) == 0
        out = capsys.readouterr().out
        assert "(1, {0000, 0001})" in out
        assert "Zero" in out
        assert "+1, 0" in out
        assert "hex: " in out

    def test_symmetric(self, capsys):
        main(["color", "--beta", "2", "00010000", "00000000"])
        a = capsys.readouterr().out
        main(["color", "--beta", "2", "00000000", "00010000"])
        assert capsys.readouterr().out == a

    def test_bad_width(self, capsys):
        assert main(["color", "--beta", "2", "000", "111"]) == 2
        assert capsys.readouterr().err

    def test_self_pair(self, capsys):
        assert main(["color", "--beta", "2", "00000000", "00000000"]) == 2


class TestVerify:
    def test_clean_small(self, capsys):
        assert main(["verify", "--beta", "2", "--n", "16", "--m", "5"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert sum(summary["violations"].values()) == 0
        assert summary["subsets_scanned"] == 4368

    def test_corrupt_control(self, capsys, tmp_path):
        out = tmp_path / "v.jsonl"
        rc = main(["verify", *CORRUPT_ARGS, "--out", str(out)])
        assert rc == 1
        summary = json.loads(capsys.readouterr().out)
        assert summary["violations"] == {"k4-type-222": 2, "striped-k4": 2}
        kinds = [json.loads(l)["kind"] for l in out.read_text().splitlines()]
        assert sorted(kinds) == ["k4-type-222"] * 2 + ["striped-k4"] * 2

    def test_sample_needs_seed(self, capsys):
        rc = main(["verify", "--beta", "2", "--n", "16", "--m", "5",
                   "--mode", "sample", "--samples", "10"])
        assert rc == 2
        assert "seed" in capsys.readouterr().err

    def test_sampled_scan(self, capsys):
        rc = main(["verify", "--beta", "2", "--n", "32", "--m", "5",
                   "--mode", "sample", "--samples", "500", "--seed", "3"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["subsets_scanned"] == 500

    def test_odd_cycle_mode(self, capsys):
        assert main(["verify", "--beta", "2", "--n", "32", "--odd-cycle"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary == {"check": "mono-odd-cycle", "n": 32, "order": "lex",
                           "violations": 0}

    def test_jobs_do_not_change_output(self, capsys, tmp_path):
        hashes = set()
        for jobs in ("1", "8"):
            out = tmp_path / f"v{jobs}.jsonl"
            main(["verify", *CORRUPT_ARGS, "--jobs", jobs, "--out", str(out)])
            capsys.readouterr()
            hashes.add(digest(out))
        assert len(hashes) == 1

    def test_bad_check_name(self, capsys):
        rc = main(["verify", "--beta", "2", "--n", "8", "--m", "4",
                   "--checks", "bogus"])
        assert rc == 2


class TestClassify:
    def test_default(self, capsys):
        assert main(["classify"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["raw"] == 945
        assert payload["classes"] == 15
        assert payload["buckets"] == {str(k): 1 for k in (0, 1, 3, 4, 5)}
        assert payload["filtered"] == {"forbidden-config-1": 6, "k4-222": 4}
        assert payload["matches_expected"] is True

    def test_skip_claim31_matches(self, capsys):
        assert main(["classify", "--skip-filter", "claim31"]) == 0
        assert json.loads(capsys.readouterr().out)["survivors"] == 5

    def test_skip_key_filter_diffs(self, capsys):
        rc = main(["classify", "--skip-filter", "forbidden-config-1",
                   "--skip-filter", "forbidden-config-2",
                   "--skip-filter", "forbidden-config-3",
                   "--skip-filter", "claim31"])
        captured = capsys.readouterr()
        assert rc == 1
        assert "bucket 2: expected 0 classes, got 2" in captured.err
        assert json.loads(captured.out)["survivors"] == 11

    def test_2224(self, capsys):
        assert main(["classify", "--type", "2224"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["classes"] == 40
        assert payload["survivors"] == 0

    def test_report_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        main(["classify", "--out", str(out)])
        capsys.readouterr()
        report = json.loads(out.read_text())
        assert report["class_count"] == 15
        assert report["buckets"]["0"] == ["1 2 3 4 3 4 5 5 1 2"]

    def test_bad_type(self, capsys):
        assert main(["classify", "--type", "33"]) == 2


class TestConstruct:
    def test_reference(self, capsys, tmp_path):
        out = tmp_path / "c.csv"
        rc = main(["construct", "--n", "20", "--p", "4", "--c", "2",
                   "--seed", "7", "--out", str(out)])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["t"] == 15
        assert payload["rounds"] == 2044
        assert payload["converged"] is True
        assert payload["bad_count"] == 0
        assert payload["verified_bad_copies"] == 0
        assert payload["lll_D"] == 918
        assert out.read_text().splitlines()[1] == "u,w,color_id"

    def test_reruns_identical(self, capsys, tmp_path):
        hashes = set()
        for tag in ("a", "b"):
            out = tmp_path / f"{tag}.csv"
            main(["construct", "--n", "14", "--p", "4", "--c", "2",
                  "--seed", "5", "--out", str(out)])
            capsys.readouterr()
            hashes.add(digest(out))
        assert len(hashes) == 1

    def test_stuck(self, capsys):
        rc = main(["construct", "--n", "10", "--p", "4", "--t", "1",
                   "--seed", "0", "--max-rounds", "40"])
        assert rc == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["converged"] is False

    def test_bad_p(self, capsys):
        assert main(["construct", "--n", "20", "--p", "6", "--seed", "0"]) == 2

    def test_seed_required(self, capsys):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["construct", "--n", "20", "--p", "4"])


class TestCode:
    def test_rainbow(self, capsys, tmp_path):
        out = tmp_path / "code.json"
        bmp = tmp_path / "class.bin"
        rc = main(["code", "--beta", "2", "--n", "6",
                   "--out", str(out), "--bitmap", str(bmp)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["color_count"] == 15
        assert payload["size_histogram"] == {"1": 32768}
        assert payload["verification"]["ok"] is True
        assert payload["planted"] is False
        assert bmp.stat().st_size == 8 + 4096

    def test_planted(self, capsys):
        rc = main(["code", "--beta", "2", "--n", "6", "--plant"])
        assert rc == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["code_ok"] is False
        assert payload["violations"] == 1

    def test_too_big(self, capsys):
        assert main(["code", "--beta", "2", "--n", "8"]) == 2

    def test_clique_order_4(self, capsys):
        assert main(["code", "--beta", "2", "--n", "5", "--clique-order", "4"]) == 0


class TestStats:
    def test_default_rows(self, capsys):
        assert main(["stats", "--beta", "2"]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert rows[0] == "beta,n,edges,distinct_colors,distinct_delta_parts"
        table = [r.split(",") for r in rows[1:]]
        assert [r[1] for r in table] == ["2", "4", "8", "16", "32", "64", "128", "256"]
        row16 = next(r for r in table if r[1] == "16")
        assert row16[2] == row16[3] == "120"

    def test_explicit_list(self, capsys, tmp_path):
        out = tmp_path / "stats.csv"
        assert main(["stats", "--beta", "2", "--n-list", "4,8", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 3


class TestBench:
    def test_runs(self, capsys):
        assert main(["bench", "--beta", "2", "--n", "16", "--m", "4",
                     "--repeats", "1"]) == 0
        out = capsys.readouterr().out
        assert "subsets/s" in out or "backend" in out


class TestEntryPoint:
    def test_installed_script(self):
        proc = subprocess.run(
            ["parity-ramsey", "color", "--beta", "2", "00000000", "00010000"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "(1, {0000, 0001})" in proc.stdout

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "parity_ramsey.cli", "classify"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
