"""Command-line interface: artifacts, determinism, exit codes."""

import json

import numpy as np
import pytest

from framesel import load_certificate, load_frame, verify_certificate
from framesel.cli import main


def run(*argv):
    return main([str(a) for a in argv])


class TestGen:
    def test_writes_valid_frame(self, tmp_path, capsys):
        out = tmp_path / "frame.json"
        assert run("gen", "--k", 8, "--N", 25, "--out", out) == 0
        frame = load_frame(out)
        assert frame.m == 200
        assert "PASS" in capsys.readouterr().out

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run("gen", "--k", 2, "--N", 2, "--kind", "modulated", "--seed", 7, "--out", a)
        run("gen", "--k", 2, "--N", 2, "--kind", "modulated", "--seed", 7, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_modulated_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run("gen", "--k", 2, "--N", 3, "--kind", "modulated", "--seed", 1, "--out", a)
        run("gen", "--k", 2, "--N", 3, "--kind", "modulated", "--seed", 2, "--out", b)
        assert a.read_bytes() != b.read_bytes()

    def test_rejects_n_one(self, tmp_path):
        assert run("gen", "--k", 3, "--N", 1, "--out", tmp_path / "x.json") == 2

    def test_unwritable_path_is_io_error(self):
        assert run("gen", "--k", 2, "--N", 2, "--out", "/nonexistent/dir/f.json") == 3


@pytest.fixture()
def frame_file(tmp_path):
    out = tmp_path / "frame.json"
    run("gen", "--k", 4, "--N", 9, "--out", out)
    return out


class TestSelect:
    def test_certificate_round_trip(self, frame_file, tmp_path, capsys):
        cert_file = tmp_path / "cert.json"
        assert run("select", "--frame", frame_file, "--n", 18, "--out", cert_file) == 0
        out = capsys.readouterr().out
        assert "lambda_max" in out and "margin" in out
        cert = load_certificate(cert_file)
        assert verify_certificate(load_frame(frame_file), cert).passed

    def test_half_ratio_bound(self, tmp_path, capsys):
        frame = tmp_path / "f.json"
        cert = tmp_path / "c.json"
        run("gen", "--k", 8, "--N", 25, "--out", frame)
        capsys.readouterr()
        assert run("select", "--frame", frame, "--n", 100, "--out", cert) == 0
        printed = capsys.readouterr().out
        lam = float(next(l for l in printed.splitlines() if l.startswith("lambda_max")).split("=")[1])
        assert lam < 0.825

    def test_rejects_n_zero_and_n_m(self, frame_file, tmp_path):
        assert run("select", "--frame", frame_file, "--n", 0, "--out", tmp_path / "c.json") == 2
        assert run("select", "--frame", frame_file, "--n", 36, "--out", tmp_path / "c.json") == 2

    def test_missing_frame_is_io_error(self, tmp_path):
        assert run("select", "--frame", tmp_path / "nope.json", "--n", 2, "--out", tmp_path / "c.json") == 3

    def test_malformed_frame_is_usage_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run("select", "--frame", bad, "--n", 2, "--out", tmp_path / "c.json") == 2

    def test_invalid_frame_is_usage_error(self, frame_file, tmp_path):
        data = json.loads(frame_file.read_text())
        for row in data["vectors"]:
            for pair in row:
                pair[0] *= 1.5
                pair[1] *= 1.5
        bad = tmp_path / "scaled.json"
        bad.write_text(json.dumps(data))
        assert run("select", "--frame", bad, "--n", 2, "--out", tmp_path / "c.json") == 2

    def test_threads_flag_accepted_and_inert(self, frame_file, tmp_path):
        c1, c2 = tmp_path / "c1.json", tmp_path / "c2.json"
        assert run("select", "--frame", frame_file, "--n", 9, "--out", c1) == 0
        assert run("select", "--frame", frame_file, "--n", 9, "--threads", 4, "--out", c2) == 0
        assert c1.read_bytes() == c2.read_bytes()


class TestSweep:
    def test_n_range_rows(self, tmp_path, capsys):
        assert run("sweep", "--k", 2, "--N", 4, "--n-min", 1, "--n-max", 5) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[0].split(",")
        assert header == [
            "k", "N", "m", "n", "lambda_max", "a_n",
            "excess", "excess_sqrt_N", "complement_lambda_min",
        ]
        assert len(lines) == 6
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert float(row["lambda_max"]) < float(row["a_n"])
            assert int(row["m"]) == 8

    def test_17_digit_round_trip(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run("sweep", "--k", 2, "--N", 4, "--n-min", 3, "--n-max", 3, "--out", out)
        header, row = out.read_text().strip().splitlines()
        values = dict(zip(header.split(","), row.split(",")))
        text = values["lambda_max"]
        assert float(text) == float(repr(float(text)))  # lossless double text form
        assert np.float64(text).hex() == np.float64(float(text)).hex()

    def test_empty_range_header_only(self, capsys):
        assert run("sweep", "--k", 2, "--N", 4, "--n-min", 1, "--n-max", 0) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1

    def test_n_list_mode(self, capsys):
        assert run("sweep", "--k", 2, "--N-list", "4,9", "--ratio", "0.5") == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3
        for line in lines[1:]:
            parts = line.split(",")
            n, m = int(parts[3]), int(parts[2])
            assert n * 2 == m

    def test_requires_consistent_flags(self):
        assert run("sweep", "--k", 2) == 2
        assert run("sweep", "--k", 2, "--N", 4) == 2
        assert run("sweep", "--k", 2, "--N-list", "4", "--n-min", 1, "--n-max", 2) == 2


class TestKatz:
    def test_exhaustive_run(self, tmp_path, capsys):
        out = tmp_path / "katz.json"
        assert run("katz", "--N", 3, "--out", out) == 0
        data = json.loads(out.read_text())
        assert data["passed"] is True
        assert data["subsets_checked"] == 64

    def test_sampled_run(self, tmp_path):
        out = tmp_path / "katz.json"
        assert run("katz", "--N", 10, "--sampled", "--trials", 200, "--seed", 1, "--out", out) == 0
        data = json.loads(out.read_text())
        assert data["mode"] == "sampled"
        assert data["subsets_checked"] == 200

    def test_large_n_needs_sampled(self, tmp_path):
        assert run("katz", "--N", 10, "--out", tmp_path / "k.json") == 2

    def test_rejects_nonpositive_n(self, tmp_path):
        assert run("katz", "--N", 0, "--out", tmp_path / "k.json") == 2


class TestVerify:
    def test_fresh_certificate_passes(self, frame_file, tmp_path, capsys):
        cert = tmp_path / "cert.json"
        run("select", "--frame", frame_file, "--n", 12, "--out", cert)
        assert run("verify", "--frame", frame_file, "--cert", cert) == 0
        assert "certificate verified" in capsys.readouterr().out

    def test_tampered_lambda_fails(self, frame_file, tmp_path, capsys):
        cert = tmp_path / "cert.json"
        run("select", "--frame", frame_file, "--n", 12, "--out", cert)
        data = json.loads(cert.read_text())
        data["steps"][-1]["lambda_max"] -= 0.05
        data["final"]["eigenvalues"][-1] -= 0.05
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(data))
        assert run("verify", "--frame", frame_file, "--cert", tampered) == 1
        assert "REJECTED" in capsys.readouterr().out

    def test_wrong_frame_fails_with_mismatch(self, frame_file, tmp_path, capsys):
        cert = tmp_path / "cert.json"
        run("select", "--frame", frame_file, "--n", 12, "--out", cert)
        other = tmp_path / "other.json"
        run("gen", "--k", 2, "--N", 3, "--out", other)
        capsys.readouterr()
        assert run("verify", "--frame", other, "--cert", cert) == 1
        assert "mismatch" in capsys.readouterr().out

    def test_malformed_certificate_is_usage_error(self, frame_file, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schedule": {}}')
        assert run("verify", "--frame", frame_file, "--cert", bad) == 2


class TestParser:
    def test_unknown_subcommand(self):
        assert run("explode") == 2

    def test_no_subcommand(self):
        assert main([]) == 2

    def test_help_exits_zero(self):
        assert run("--help") == 0
