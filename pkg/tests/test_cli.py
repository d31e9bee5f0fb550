import io
import json
import subprocess
import sys

import pytest

from stminor.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def result(*argv):
    code, out = call(*argv)
    assert code == 0, out
    return json.loads(out)["result"]


class TestExamples:
    def test_measure(self):
        assert result("measure", "-1:1")["mu_st"] == 1.0
        both = result("measure", "-1:-0.61,0.61:1")["mu_st"]
        middle = result("measure", "-0.61:0.61")["mu_st"]
        assert both == pytest.approx(1 - middle, abs=1e-14)

    def test_classify(self):
        r = result("classify", "-0.333333", "0.6")
        assert r["minorizable"] and r["case"] == 3

    def test_minorize(self):
        r = result("minorize", "-0.333333:0.6", "4")
        assert r["status"] == "Feasible" and r["b0"] > 0 and r["tol"] == 1e-9
        r = result("minorize", "-0.333333:0.4", "4", "--json")
        assert r["status"] == "Infeasible"

    def test_majorize(self):
        r = result("majorize", "0:1", "4")
        assert 0.5 - 1e-9 <= r["b0"] <= 1 + 1e-9

    def test_selberg(self):
        r = result("selberg", "-0.9:0.9", "--delta", "1")
        assert r["status"] == "Feasible" and r["degree_condition"]

    def test_extreme(self):
        r = result("extreme", "2", "0.7", "--verify")
        assert r["integral_formula"] == pytest.approx(0.0025)
        assert r["status"] == "Feasible"

    def test_proportion_small(self):
        r = result("proportion", "--samples", "65536")
        assert r["quadrature"] == pytest.approx(0.388, abs=5e-3)
        assert r["sampling"] == pytest.approx(0.388, abs=1e-2)

    def test_thresholds(self):
        r = result("thresholds")
        assert r["mu_all"] == pytest.approx(0.534, abs=2e-3)

    def test_constants(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text('{"c_hoheisel": 2.0}')
        code, out = call("constants", "--config", str(cfg), "--d", "2", "--q", "11",
                         "--kappas", "0.5,1.5")
        doc = json.loads(out)
        assert code == 0
        assert doc["result"]["analytic_conductor"] == pytest.approx(173.25)
        assert doc["result"]["constants"]["c_hoheisel"] == 2.0
        assert "config_sha256" in doc["manifest"]["input_hashes"]

    def test_pretty(self):
        code, out = call("--pretty", "measure", "0:1")
        assert code == 0 and "mu_st" in out and not out.lstrip().startswith("{")
        assert all(line == line.rstrip() for line in out.splitlines())


class TestData:
    def test_angles_and_moments(self, tmp_path):
        r = result("angles", "--source", "delta", "--limit", "100", "--cache-dir", str(tmp_path))
        assert r["n_primes"] == 25 and r["head"][0]["a_raw"] == -24
        r = result("moments", "--source", "ec", "1", "1", "--limit", "2000",
                   "--cache-dir", str(tmp_path))
        assert set(r["means"]) == {"1", "2", "3", "4"}

    def test_scan(self, tmp_path):
        csv = tmp_path / "scan.csv"
        r = result("scan", "--source", "ec:1,1", "--limit", "20000", "--interval", "0:1",
                   "--delta", "0.2", "--x0", "1000", "--steps", "3", "--N", "4",
                   "--csv", str(csv), "--cache-dir", str(tmp_path))
        assert len(r["windows"]) == 3
        assert csv.read_text().startswith("x,h,count")

    def test_leastprime(self, tmp_path):
        r = result("leastprime", "--source", "delta", "--limit", "5000",
                   "--interval", "0.9:1", "--N", "12", "--cache-dir", str(tmp_path))
        assert r["p"] is not None and r["log_p_within_bound"]
        r = result("leastprime", "--source", "delta", "--limit", "5000",
                   "--interval", "0.9:1", "--N", "8", "--cache-dir", str(tmp_path))
        assert r["certificate_status"] == "not Feasible" and "log_bound" not in r

    def test_file_source(self, tmp_path):
        f = tmp_path / "a.csv"
        f.write_text("p,a_raw,weight,ramified\n5,-3,2,0\n7,99,2,0\n")
        code, _ = call("angles", "--source", "file", str(f), "--limit", "10")
        assert code == 2

    def test_incomplete_range_is_invalid(self, tmp_path):
        code, _ = call("scan", "--source", "delta", "--limit", "1000", "--interval", "0:1",
                       "--delta", "0.1", "--x0", "800", "--steps", "2",
                       "--cache-dir", str(tmp_path))
        assert code == 2


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["classify", "0.5", "0.2"],
        ["measure", "0.5:0.2"],
        ["minorize", "0:1", "-1"],
        ["minorize", "0:1"],
        ["measure", "0:1", "--bogus"],
        ["nosuchcommand"],
        ["extreme", "0", "0.5"],
        ["angles", "--source", "ec", "0", "0", "--limit", "100"],
    ])
    def test_invalid(self, argv):
        assert call(*argv)[0] == 2

    def test_unresolved(self):
        # degree above the exact root-isolation cap cannot be certified
        code, out = call("minorize", "-0.5:0.5", "70")
        assert code == 3
        assert json.loads(out)["result"]["status"] == "Unresolved"

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "stminor", "measure", "0:1"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["mu_st"] == 0.5


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["minorize", "-0.4:0.8", "6"],
        ["classify", "-1", "-0.6"],
        ["selberg", "-0.95:0.95", "8"],
    ])
    def test_rerun_identical(self, argv):
        assert call(*argv, "--threads", "1") == call(*argv, "--threads", "1")

    def test_timestamp_from_environment(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
        doc = json.loads(call("measure", "0:1")[1])
        assert doc["manifest"]["timestamp"] == 0
        monkeypatch.delenv("SOURCE_DATE_EPOCH")
        assert json.loads(call("measure", "0:1")[1])["manifest"]["timestamp"] is None
