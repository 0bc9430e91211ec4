import json
from pathlib import Path

import pytest

from ccx.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, SUITES, main

DATA = Path(__file__).resolve().parents[1] / "src" / "ccx" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestAnalyze:
    def test_catalog_entry(self, capsys):
        code, out = run(capsys, "analyze", "iwasawa")
        assert code == EXIT_OK
        assert "betti [1, 4, 8, 10, 8, 4, 1]" in out
        assert "FAIL" not in out

    def test_zigzags(self, capsys):
        code, out = run(capsys, "analyze", "iwasawa", "--zigzags")
        assert code == EXIT_OK
        assert "S1[1; 1,1]" in out

    def test_json_matches_between_file_and_catalog(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["analyze", "iwasawa", "--json", str(a)]) == EXIT_OK
        assert main(["analyze", str(DATA / "iwasawa.ccx"), "--json", str(b)]) == EXIT_OK
        da, db = json.loads(a.read_text()), json.loads(b.read_text())
        da.pop("name"), db.pop("name")
        assert da == db

    def test_json_is_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["analyze", "hopf", "--json", str(a)])
        main(["analyze", "hopf", "--json", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_class_only_entry(self, capsys):
        code, out = run(capsys, "analyze", "ot:3")
        assert code == EXIT_OK

    def test_unknown_input(self, capsys):
        assert main(["analyze", "nowhere"]) == EXIT_INPUT

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.ccx"
        bad.write_text("n = 2\nd phi2 = w(1,\n")
        assert main(["analyze", str(bad)]) == EXIT_INPUT

    def test_bad_arguments(self, capsys):
        assert main(["analyze"]) == EXIT_INPUT


class TestProduct:
    def test_product_passes_its_cross_checks(self, capsys):
        code, out = run(capsys, "product", "hopf", "cp1")
        assert code == EXIT_OK


class TestRing:
    def test_rank(self, capsys):
        code, out = run(capsys, "ring", "rank", "rbprime", "--degree", "3")
        assert code == EXIT_OK and out.strip() == "16"

    def test_basis(self, capsys):
        code, out = run(capsys, "ring", "basis", "Hform", "--degree", "2")
        assert code == EXIT_OK and len(out.strip().splitlines()) >= 5

    def test_member_refusal_exit_code(self, capsys):
        code, out = run(capsys, "ring", "member", "Hform", "x*z")
        assert code == EXIT_MISMATCH and "refused" in out

    def test_member_certificate(self, capsys):
        code, out = run(capsys, "ring", "member", "Hform", "A*d")
        assert code == EXIT_OK

    @pytest.mark.parametrize("text,code", [("R=2e-Bd", EXIT_OK), ("Q=CS-AR", EXIT_OK), ("Q=AR-CS", EXIT_MISMATCH)])
    def test_identity(self, capsys, text, code):
        assert run(capsys, "ring", "identity", "--check", text)[0] == code

    def test_identity_in_de_rham_ring(self, capsys):
        assert run(capsys, "ring", "identity", "--check", "2Cd=Be", "--ring", "DR")[0] == EXIT_OK

    def test_presentation(self, capsys):
        code, out = run(capsys, "ring", "presentation", "Phi", "--degree", "4", "--up-to")
        assert code == EXIT_OK and out.count("pass") == 5

    def test_quotient_mod_c(self, capsys):
        code, out = run(capsys, "ring", "quotient-mod-C", "--degree", "3")
        assert code == EXIT_OK
        assert "2 exclusions" in out

    def test_bimero_basis(self, capsys):
        code, out = run(capsys, "ring", "bimero-basis", "--degree", "2")
        assert code == EXIT_OK

    def test_unknown_ring(self, capsys):
        assert main(["ring", "rank", "nope", "--degree", "2"]) == EXIT_INPUT


class TestVerify:
    def test_list(self, capsys):
        code, out = run(capsys, "verify", "--list")
        assert code == EXIT_OK
        assert len(out.strip().splitlines()) == len(SUITES)

    def test_single_suite(self, capsys, tmp_path):
        report = tmp_path / "v.json"
        code, out = run(capsys, "verify", "iwasawa", "--json", str(report))
        assert code == EXIT_OK
        doc = json.loads(report.read_text())
        assert doc["schema"] == "ccx.verify/1"
        assert all(r["passed"] for r in doc["results"])

    def test_parallel_output_is_ordered(self, capsys):
        _, serial = run(capsys, "verify", "ranks")
        _, parallel = run(capsys, "verify", "ranks", "--jobs", "2")
        assert serial == parallel

    def test_unknown_suite(self, capsys):
        assert main(["verify", "nosuch"]) == EXIT_INPUT

    def test_every_check_has_provenance(self):
        for make in SUITES.values():
            for check in make().checks:
                assert check.provenance in ("PAPER", "TRIVIAL", "DERIVED")

    def test_all_suites_pass(self, capsys):
        code, out = run(capsys, "verify", "all", "--jobs", "2")
        assert code == EXIT_OK, [line for line in out.splitlines() if line.startswith("FAIL")]
