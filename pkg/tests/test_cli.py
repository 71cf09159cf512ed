"""Command-line surface: subcommands, exit codes, machine output."""

import math

import pytest

from netgrowth import write_log
from netgrowth.cli import run_cli
from conftest import NN, make_log


@pytest.fixture
def worked_file(tmp_path, worked_log):
    path = tmp_path / "worked.log"
    write_log(str(path), worked_log)
    return str(path)


def machine_dict(path) -> dict[str, str]:
    out = {}
    for line in open(path, encoding="utf-8"):
        key, _, value = line.rstrip("\n").partition("\t")
        out[key] = value
    return out


class TestEvaluate:
    def test_worked_example_ratio(self, worked_file, tmp_path, capsys):
        machine = tmp_path / "rep.tsv"
        code = run_cli([
            "evaluate", "--log", worked_file,
            "--newnode", "degree", "--inneredge", "degree",
            "--machine", str(machine),
        ])
        assert code == 0
        record = machine_dict(machine)
        assert record["format_version"] == "1"
        assert float(record["overall.c0"]) == pytest.approx(math.sqrt(3), abs=1e-9)
        assert "overall" in capsys.readouterr().out

    def test_missing_file_is_data_error(self, capsys):
        code = run_cli([
            "evaluate", "--log", "/nonexistent.log",
            "--newnode", "null", "--inneredge", "null",
        ])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_model_spec(self, worked_file, capsys):
        code = run_cli([
            "evaluate", "--log", worked_file,
            "--newnode", "0.6*degree+0.6*null", "--inneredge", "null",
        ])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_usage_error_exit_2(self, capsys):
        assert run_cli(["evaluate", "--log"]) == 2
        capsys.readouterr()

    def test_unknown_subcommand_exit_2(self, capsys):
        assert run_cli(["frobnicate"]) == 2
        capsys.readouterr()


class TestPreprocess:
    def test_normalizes_and_reports(self, tmp_path, capsys):
        raw = tmp_path / "raw.txt"
        raw.write_text("a b\nc d\nb c\na b\n")
        out = tmp_path / "norm.log"
        code = run_cli(["preprocess", "--input", str(raw), "--output", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        assert "duplicates        1" in text
        assert "delayed           1" in text
        assert out.read_text().startswith("# netgrowth-log format=1 seed_size=1")

    def test_idempotent(self, tmp_path, capsys):
        raw = tmp_path / "raw.txt"
        raw.write_text("a b\nb c\nc d\na c\n")
        out1 = tmp_path / "n1.log"
        out2 = tmp_path / "n2.log"
        assert run_cli(["preprocess", "--input", str(raw), "--output", str(out1)]) == 0
        assert run_cli(["preprocess", "--input", str(out1), "--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        capsys.readouterr()

    def test_timestamped_input(self, tmp_path, capsys):
        raw = tmp_path / "raw.txt"
        raw.write_text("20 b c\n10 a b\n")
        out = tmp_path / "norm.log"
        code = run_cli([
            "preprocess", "--input", str(raw), "--output", str(out),
            "--format", "timestamped",
        ])
        assert code == 0
        body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert body[0] == "a b"
        capsys.readouterr()


class TestGrow:
    def _grow(self, out, manifest, seed="7"):
        return run_cli([
            "grow", "--newnode", "degree", "--target-edges", "120",
            "--rng", seed, "--output", str(out), "--manifest", str(manifest),
        ])

    def test_deterministic_output(self, tmp_path, capsys):
        a, b = tmp_path / "a.log", tmp_path / "b.log"
        ma, mb = tmp_path / "a.tsv", tmp_path / "b.tsv"
        assert self._grow(a, ma) == 0
        assert self._grow(b, mb) == 0
        assert a.read_bytes() == b.read_bytes()
        assert ma.read_bytes() == mb.read_bytes()
        capsys.readouterr()

    def test_manifest_contents(self, tmp_path, capsys):
        out, manifest = tmp_path / "g.log", tmp_path / "m.tsv"
        assert self._grow(out, manifest) == 0
        record = machine_dict(manifest)
        assert record["rng_seed"] == "7"
        assert record["rng_algorithm"] == "numpy-pcg64"
        assert record["edges"] == "120"
        assert record["newnode_model"] == "degree"
        capsys.readouterr()

    def test_grown_log_reusable(self, tmp_path, capsys):
        out, manifest = tmp_path / "g.log", tmp_path / "m.tsv"
        assert self._grow(out, manifest) == 0
        code = run_cli([
            "stats", "--graph", str(out), "--machine", str(tmp_path / "s.tsv"),
        ])
        assert code == 0
        record = machine_dict(tmp_path / "s.tsv")
        assert record["edges"] == "120"
        capsys.readouterr()


class TestStats:
    def test_k3_clustering(self, tmp_path, capsys):
        path = tmp_path / "k3.log"
        from conftest import IE

        write_log(str(path), make_log([(NN, 0, 1), (NN, 2, 1), (IE, 0, 2)]))
        machine = tmp_path / "s.tsv"
        assert run_cli(["stats", "--graph", str(path), "--machine", str(machine)]) == 0
        record = machine_dict(machine)
        assert float(record["mean_clustering"]) == 1.0
        assert record["assortativity"] == "undef"
        capsys.readouterr()


class TestFitAndScan:
    def test_fit_machine_record(self, tmp_path, capsys):
        out, manifest = tmp_path / "g.log", tmp_path / "m.tsv"
        assert run_cli([
            "grow", "--newnode", "0.7*degree+0.3*null", "--target-edges", "2000",
            "--rng", "1", "--output", str(out), "--manifest", str(manifest),
        ]) == 0
        machine = tmp_path / "fit.tsv"
        code = run_cli([
            "fit", "--log", str(out), "--stream", "new_node",
            "--components", "degree,null", "--rng", "0",
            "--machine", str(machine),
        ])
        assert code == 0
        record = machine_dict(machine)
        assert float(record["beta.degree"]) == pytest.approx(0.7, abs=0.1)
        capsys.readouterr()

    def test_scan_machine_record(self, tmp_path, capsys):
        out, manifest = tmp_path / "g.log", tmp_path / "m.tsv"
        assert run_cli([
            "grow", "--newnode", "degree", "--target-edges", "1500",
            "--rng", "2", "--output", str(out), "--manifest", str(manifest),
        ]) == 0
        machine = tmp_path / "scan.tsv"
        code = run_cli([
            "scan", "--log", str(out), "--stream", "new_node",
            "--terms", "pfp(0)", "--lo", "-0.3", "--hi", "0.3",
            "--step", "0.1", "--refine", "1", "--machine", str(machine),
        ])
        assert code == 0
        record = machine_dict(machine)
        assert abs(float(record["best_delta"])) <= 0.05
        capsys.readouterr()
