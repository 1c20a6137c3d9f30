import json

import pytest

from invmetrics.cli import SEED_ENV, main


@pytest.fixture
def spec(tmp_path):
    def write(doc) -> str:
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(doc))
        return str(path)
    return write


D122 = {"type": "reinhardt", "alpha": [1, 2, 2]}
D11 = {"type": "reinhardt", "alpha": [1, 1]}


class TestEval:
    def test_green_closed_form(self, spec, capsys):
        code = main(["eval", spec(D122), "--metric", "green", "--base", "0:0,0:0,0:0",
                     "--target", "0.5:0,0.5:0,0.5:0"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out == {"lower": pytest.approx(0.5), "upper": pytest.approx(0.5), "status": "Exact"}

    def test_proven_zero_with_citation(self, spec, capsys):
        code = main(["eval", spec({"type": "hartogs", "variant": "exam1"}), "--metric",
                     "caratheodory", "--base", "0:0,0:0,0:0", "--dir", "1:0,0:0,0:0"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["status"] == "ProvenExact" and out["upper"] == 0
        assert out["citation"]

    def test_unknown_needs_allow_bounds(self, spec, capsys):
        argv = ["eval", spec(D11), "--metric", "sibony-metric", "--order", "6",
                "--base", "0:0,0:0", "--dir", "1:0,2:0"]
        assert main(argv) == 3
        out = json.loads(capsys.readouterr().out)
        assert out["lower"] == 0 and out["upper"] == pytest.approx(2 ** 0.5)
        assert main(argv + ["--allow-bounds"]) == 0

    def test_csv_format(self, spec, capsys):
        main(["eval", spec(D11), "--metric", "azukawa", "--base", "0:0,0:0", "--dir", "1:0,2:0",
              "--format", "csv"])
        header, row = capsys.readouterr().out.splitlines()
        assert header == "lower,upper,status,citation,certified_error"
        assert row.split(",")[:3] == ["1.4142135623730951"] * 2 + ["Exact"]

    def test_domain_violation(self, spec):
        assert main(["eval", spec(D11), "--metric", "green", "--base", "0:0,0:0",
                     "--target", "2:0,1:0"]) == 4

    @pytest.mark.parametrize("argv", [
        ["--metric", "green", "--base", "0:0,0:0", "--target", "oops"],
        ["--metric", "warp", "--base", "0:0,0:0", "--target", "0:0,0:0"],
        ["--metric", "green", "--base", "0:0", "--target", "0:0,0:0"],
        ["--metric", "green", "--base", "0:0,0:0", "--dir", "1:0,0:0"],
    ])
    def test_bad_input(self, spec, argv):
        assert main(["eval", spec(D11)] + argv) == 2

    def test_bad_spec(self, spec, tmp_path):
        assert main(["eval", spec({"type": "disc", "extra": 1}), "--metric", "green",
                     "--base", "0:0", "--target", "0:0"]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["eval", str(bad), "--metric", "green", "--base", "0:0",
                     "--target", "0:0"]) == 2

    def test_missing_required_flag_exits_2(self, spec):
        with pytest.raises(SystemExit) as exc:
            main(["eval", spec(D11), "--base", "0:0,0:0", "--target", "0:0,0:0"])
        assert exc.value.code == 2


class TestDemo:
    def test_csv_file_is_stable(self, tmp_path, capsys):
        out = tmp_path / "inc.csv"
        assert main(["demo", "increasing", "--out", str(out)]) == 0
        raw = out.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
        lines = raw.decode().splitlines()
        assert lines[0] == "k,phi_k_0,exp_phi_k_0,lower_bound,limit_value,proven_G_value"
        k, phi = lines[1].split(",")[:2]
        assert k == "2" and float(phi) == pytest.approx(-0.17328679513998632, abs=1e-16)
        assert phi == f"{float(phi):.17g}"
        assert "reproduced" in capsys.readouterr().err

    def test_stdout(self, capsys):
        assert main(["demo", "chain"]) == 0
        assert capsys.readouterr().out.startswith("t,z_alpha_modulus,mobius,sibony,green\n")

    def test_unknown_demo(self):
        assert main(["demo", "nosuch"]) == 2


class TestVerify:
    def test_chain_1000(self, capsys):
        assert main(["verify", "--suite", "chain", "--seed", "42", "--samples", "1000"]) == 0

    def test_reports_are_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert main(["verify", "--suite", "rotation", "--seed", "3", "--samples", "50",
                         "--report", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()
        report = json.loads(a.read_text())
        assert report["seed"] == 3 and report["passed"]

    def test_seed_from_environment(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv(SEED_ENV, "17")
        path = tmp_path / "r.json"
        assert main(["verify", "--suite", "normalization", "--report", str(path)]) == 0
        assert json.loads(path.read_text())["seed"] == 17
        monkeypatch.setenv(SEED_ENV, "x")
        assert main(["verify", "--suite", "normalization"]) == 2

    @pytest.mark.parametrize("argv", [["--suite", "nosuch"], ["--samples", "0"],
                                      ["--seed", "-1"]])
    def test_bad_input(self, argv):
        assert main(["verify"] + argv) == 2
