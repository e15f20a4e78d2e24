"""
End-to-end tests for CLI commands
"""

import json
import os
import subprocess
import sys

import pytest

from rainbowham.constructions import make_H, make_two_cliques


def run_cli(*args, cwd=None):
    """Run ``python -m rainbowham`` with a clean RAINBOWHAM_* environment"""
    env = {k: v for k, v in os.environ.items() if not k.startswith("RAINBOWHAM_")}
    cmd = [sys.executable, "-m", "rainbowham"] + [str(a) for a in args]
    return subprocess.run(cmd, capture_output=True, text=True, timeout=120, cwd=cwd, env=env)


@pytest.mark.e2e
class TestGeneralCommands:
    """Help, version and usage errors"""

    def test_help(self):
        result = run_cli("--help")
        assert result.returncode == 0
        assert "usage" in result.stdout.lower()

    def test_version_command(self):
        result = run_cli("version")
        assert result.returncode == 0
        assert result.stdout.startswith("rainbowham ")

    def test_version_flag(self):
        result = run_cli("--version")
        assert result.returncode == 0
        assert "rainbowham" in result.stdout

    def test_missing_command(self):
        assert run_cli().returncode == 2

    def test_unknown_option(self):
        assert run_cli("solve", "hc", "x.json", "--bogus").returncode == 2

    def test_missing_config_file(self, temp_dir):
        result = run_cli("--config", temp_dir / "absent.yaml", "version", cwd=temp_dir)
        assert result.returncode == 2
        assert "Configuration error" in result.stderr


@pytest.mark.e2e
class TestGenerateAndSolve:
    """gen followed by solve"""

    def test_odd_b_collection_has_no_cycle(self, temp_dir):
        path = temp_dir / "h.json"
        gen = run_cli("gen", "hab", "--n", 6, "--a", 5, "--b", 1, "-o", path, cwd=temp_dir)
        assert gen.returncode == 0, gen.stderr
        assert path.exists()

        result = run_cli("solve", "hc", path, cwd=temp_dir)
        assert result.returncode == 1
        assert "status: exhausted" in result.stdout

    def test_exact_search_without_precheck(self, temp_dir, collection_file):
        path = collection_file(make_H(6, 5, 1))
        result = run_cli("solve", "hc", path, "--no-parity-precheck", "--format", "json", cwd=temp_dir)
        assert result.returncode == 1
        document = json.loads(result.stdout)
        assert document["status"] == "exhausted"
        assert document["witness"] is None
        assert document["stats"]["backing"] == "search"

    def test_complete_collection_has_witness(self, temp_dir, collection_file, complete_collection):
        path = collection_file(complete_collection(6))
        witness = temp_dir / "witness.txt"
        result = run_cli("solve", "hc", path, "--format", "json", "-o", witness, cwd=temp_dir)
        assert result.returncode == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["status"] == "found"
        assert document["witness"] is not None
        assert witness.exists()

    def test_matching(self, temp_dir, collection_file):
        path = collection_file(make_two_cliques(6))
        result = run_cli("solve", "matching", path, cwd=temp_dir)
        assert result.returncode == 0
        assert "size: 1" in result.stdout

    def test_malformed_collection(self, temp_dir):
        path = temp_dir / "broken.json"
        path.write_text("{oops")
        result = run_cli("solve", "hc", path, cwd=temp_dir)
        assert result.returncode == 2
        assert "Malformed collection file" in result.stderr

    def test_wrong_color_count_is_an_input_error(self, temp_dir, collection_file):
        path = collection_file(make_H(6, 2, 1))
        assert run_cli("solve", "hc", path, cwd=temp_dir).returncode == 2


@pytest.mark.e2e
class TestCertificates:
    """cert find and cert check"""

    def test_find_then_check(self, temp_dir, collection_file):
        collection = collection_file(make_H(6, 5, 1))
        certificate = temp_dir / "cert.json"
        found = run_cli("cert", "find", collection, "-o", certificate, cwd=temp_dir)
        assert found.returncode == 0, found.stderr
        assert json.loads(certificate.read_text())["kind"] == "parity"

        checked = run_cli("cert", "check", collection, certificate, cwd=temp_dir)
        assert checked.returncode == 0
        assert "ok: True" in checked.stdout

    def test_corrupted_certificate_names_invariant(self, temp_dir, collection_file):
        collection = collection_file(make_H(6, 5, 1))
        certificate = temp_dir / "cert.json"
        run_cli("cert", "find", collection, "-o", certificate, cwd=temp_dir)
        document = json.loads(certificate.read_text())
        document["crossing_count"] = 3
        certificate.write_text(json.dumps(document))

        result = run_cli("cert", "check", collection, certificate, cwd=temp_dir)
        assert result.returncode == 1
        assert "crossing_count" in result.stderr

    def test_no_certificate_for_complete_collection(self, temp_dir, collection_file, complete_collection):
        path = collection_file(complete_collection(6))
        assert run_cli("cert", "find", path, cwd=temp_dir).returncode == 1


@pytest.mark.e2e
class TestAnalysis:
    """analyze and dist"""

    def test_unstable_collection(self, temp_dir, collection_file):
        path = collection_file(make_H(8, 8, 0))
        result = run_cli("analyze", "stability", path, "--format", "json", cwd=temp_dir)
        assert result.returncode == 1
        assert json.loads(result.stdout)["verdict"]["status"] == "not_stable"

    def test_extremal_color(self, temp_dir, collection_file):
        path = collection_file(make_two_cliques(12))
        result = run_cli("analyze", "color", path, "--eps", 0.2, cwd=temp_dir)
        assert result.returncode == 1
        assert "partition: EC1_extremal" in result.stdout

    def test_distance_of_member(self, temp_dir, collection_file):
        path = collection_file(make_H(8, 5, 3))
        result = run_cli("dist", "hab", path, cwd=temp_dir)
        assert result.returncode == 0
        assert "distance: 0" in result.stdout


@pytest.mark.e2e
@pytest.mark.slow
class TestVerify:
    """Experiment suites from the command line"""

    def test_extremal_suite_writes_report(self, temp_dir):
        reports = temp_dir / "reports"
        result = run_cli(
            "verify", "extremal", "--n", 5, "--report-dir", reports, "--format", "json", cwd=temp_dir
        )
        assert result.returncode == 0, result.stderr
        document = json.loads(result.stdout)
        assert document["failures"] == []
        assert (reports / "extremal-sweep-n4-5.json").read_text() == result.stdout
