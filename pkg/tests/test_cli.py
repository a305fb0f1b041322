import csv
import json

from lumps.cli import main
from lumps.polyring import poly_xy


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


class TestVerify:
    def test_lump2(self, capsys):
        code, report, _ = run(capsys, "verify", "--tau", "lump2",
                              "--form", "standard")
        assert code == 0
        assert report["results"]["is_solution"] is True
        assert report["results"]["residual_term_count"] == 0
        assert report["exact"] is True

    def test_yang_bindings(self, capsys):
        code, report, _ = run(capsys, "verify", "--tau", "yang6",
                              "--param", "a=2", "--param", "b=-3")
        assert code == 0
        assert report["inputs"]["params"] == {"a": "2", "b": "-3"}

    def test_nonsolution_exits_one(self, capsys):
        code, report, _ = run(capsys, "verify", "--tau", "pelin12")
        assert code == 1
        assert report["results"]["is_solution"] is False
        assert len(report["results"]["residual_terms"]) == 10

    def test_unknown_id_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--tau", "nope")
        assert code == 2
        assert "unknown tau id" in err

    def test_unbound_param_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--tau", "yang6",
                           "--param", "a=1")
        assert code == 2
        assert "unbound parameter" in err

    def test_bad_param_value_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--tau", "yang6",
                           "--param", "a=oops", "--param", "b=0")
        assert code == 2

    def test_polynomial_file_input(self, capsys, tmp_path):
        path = tmp_path / "tau.json"
        path.write_text(poly_xy({(2, 0): 1, (0, 2): 1, (0, 0): 3}).dumps())
        code, report, _ = run(capsys, "verify", "--tau", str(path),
                              "--form", "standard")
        assert code == 0
        assert report["results"]["is_solution"] is True

    def test_malformed_file_exits_two(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "verify", "--tau", str(path))
        assert code == 2
        assert "malformed" in err

    def test_custom_form(self, capsys):
        custom = json.dumps([["1", 4, 0], ["-3", 2, 0], ["-3", 0, 2]])
        code, report, _ = run(capsys, "verify", "--tau", "yang6",
                              "--param", "a=0", "--param", "b=0",
                              "--custom-form", custom)
        assert code == 0


class TestScan:
    def test_law_to_30(self, capsys, tmp_path):
        out = tmp_path / "табле.csv"
        code, report, _ = run(capsys, "scan-jn", "--max-n", "30",
                              "--routes", "J,sigma", "--out", str(out))
        assert code == 0
        res = report["results"]
        assert res["zero_set"] == [1, 3, 6, 10, 15, 21, 28]
        assert res["zero_set_is_triangular"] is True
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0][0] == "n"
        assert len(rows) == 31

    def test_gamma_route(self, capsys):
        code, report, _ = run(capsys, "scan-jn", "--max-n", "10",
                              "--routes", "J,gamma")
        assert code == 0

    def test_bad_route_exits_two(self, capsys):
        code, _, err = run(capsys, "scan-jn", "--max-n", "5",
                           "--routes", "bogus")
        assert code == 2


class TestCertify:
    def test_n15(self, capsys):
        code, report, _ = run(capsys, "certify", "--n", "15")
        assert code == 0
        gammas = report["results"]["gammas"]
        assert gammas["1"] == "3219950475/374"
        assert gammas["7"] == "-5460/17"
        assert report["results"]["all_nonzero"] is True

    def test_n1_vacuous(self, capsys):
        code, report, _ = run(capsys, "certify", "--n", "1")
        assert code == 0
        assert report["results"]["gammas"] == {}


class TestCmCheck:
    def test_lump2(self, capsys):
        code, report, _ = run(capsys, "cm-check", "--tau", "lump2",
                              "--y", "0,1/2,1,2")
        assert code == 0
        rows = report["results"]["rows"]
        assert [r["n_poles"] for r in rows] == [2, 2, 2, 2]
        assert all(r["max_locus_residual"] <= 1e-9 for r in rows)
        assert all(r["max_tangent_residual_of_flow"] <= 1e-9 for r in rows)
        assert report["exact"] is False

    def test_explicit_bnew_id(self, capsys):
        code, report, _ = run(capsys, "cm-check", "--tau", "pelin6-bnew",
                              "--y", "0")
        assert code == 0
        assert report["results"]["rows"][0]["n_poles"] == 6


class TestLax:
    def test_table(self, capsys):
        code, report, _ = run(capsys, "lax-table")
        assert code == 0
        res = report["results"]
        assert len(res["entries"]) == 12
        assert res["mismatches_are_documented_errata"] is True
        assert res["mismatched_entries"] == [["k1-", 2], ["k1-", 3]]

    def test_probe(self, capsys):
        code, report, _ = run(capsys, "lax-probe", "--point", "k1+",
                              "--x", "1.0")
        assert code == 0
        assert report["results"]["cauchy_decreasing"] is True

    def test_probe_bad_point(self, capsys):
        code, _, err = run(capsys, "lax-probe", "--point", "k9+")
        assert code == 2


class TestEnergyAndDegree:
    def test_energy_ratio(self, capsys):
        code, report, _ = run(capsys, "energy", "--tau", "pelin6-bnew",
                              "--half-width", "40", "--step", "0.2",
                              "--ratio-to", "lump2-bnew")
        assert code == 0
        assert abs(report["results"]["ratio"] - 3.0) < 0.2

    def test_energy_wrong_record_exits_two(self, capsys):
        code, _, err = run(capsys, "energy", "--tau", "lump2")
        assert code == 2
        assert "normalization" in err

    def test_degree(self, capsys):
        code, report, _ = run(capsys, "degree", "--k", "3")
        assert code == 0
        assert report["results"]["m"] == "-18"
        assert report["results"]["balanced"] is True
        assert report["results"]["tau_degree"] == 12

    def test_rationals_never_floats(self, capsys):
        _, report, _ = run(capsys, "certify", "--n", "6")
        for v in report["results"]["gammas"].values():
            assert isinstance(v, str)
