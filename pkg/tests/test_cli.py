import io
import json
import math
import subprocess
import sys

import pytest

from bldrag.cli import main, parse_correlation, UsageError
from bldrag.correlations import LANGLEY, LogSquare, PipeAsymptotic, PipeExact, PowerLaw
from bldrag.io import profile_text, read_profile, read_samples, samples_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def profile_file(tmp_path):
    path = tmp_path / "p.csv"
    assert run("synth", "profile", "--re", 22026.4658, "--n", 200, "--noise", 0,
               "--seed", 1, "--out", path)[0] == 0
    return path


@pytest.fixture
def dragset_file(tmp_path):
    path = tmp_path / "d.csv"
    assert run("synth", "dragset", "--constant", 0.26, "--n", 40, "--noise", 0.03,
               "--seed", 42, "--out", path)[0] == 0
    return path


class TestParseCorrelation:
    @pytest.mark.parametrize("spec, corr", [
        ("logsq", LogSquare()),
        ("logsq:0.23", LogSquare(0.23)),
        ("langley", LANGLEY),
        ("pipe-exact", PipeExact()),
        ("pipe-asym", PipeAsymptotic()),
        ("power:0.01:0.2", PowerLaw(0.01, 0.2)),
        ("power:0.01:0.2:re_eff", PowerLaw(0.01, 0.2, "re_eff")),
    ])
    def test_specs(self, spec, corr):
        assert parse_correlation(spec) == corr

    @pytest.mark.parametrize("spec", ["nope", "logsq:x", "power:1", "langley:3", "power:1:5"])
    def test_bad(self, spec):
        with pytest.raises(UsageError):
            parse_correlation(spec)


class TestFit:
    def test_round_trip(self, profile_file):
        doc = run_json("fit", profile_file)
        assert doc["effective_re"]["re_eff"] == pytest.approx(22026.47, rel=1e-3)
        assert doc["effective_re"]["consistent"] is True
        assert doc["cf"] == pytest.approx(0.0026, rel=1e-8)
        assert doc["predictions"]["cf_pred_logsq"] == pytest.approx(0.0026, rel=1e-6)
        assert doc["input"]["rows"] == 200
        assert doc["two_layer_fit"]["inner"]["exponent"] == pytest.approx(0.15, rel=1e-6)
        assert doc["effective_re"]["length_scale"] == pytest.approx(0.0330397, rel=1e-5)

    def test_deterministic(self, profile_file, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run("fit", profile_file, "--out", a)[0] == 0
        assert run("fit", profile_file, "--out", b)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_malformed_row(self, profile_file):
        lines = profile_file.read_text().splitlines()
        lines[20] = "0.01,not-a-number"
        profile_file.write_text("\n".join(lines) + "\n")
        code, _, err = run("fit", profile_file)
        assert code == 2
        assert "line 21" in err

    def test_missing_file(self, tmp_path):
        assert run("fit", tmp_path / "absent.csv")[0] == 2

    def test_strict_inconsistent(self, tmp_path):
        # wall-layer data whose coefficient and exponent imply different Re
        path = tmp_path / "bad.csv"
        nu, u_tau = 1.5e-5, 0.36
        rows = []
        for i in range(40):
            eta = 30 * 1.1 ** i
            rows.append(f"{eta * nu / u_tau!r},{12.0 * eta ** 0.15 * u_tau!r}")
        path.write_text("# name = bad\n# nu = 1.5e-5\n# U_inf = 20\n# u_tau = 0.36\ny,u\n"
                        + "\n".join(rows) + "\n")
        code, out, _ = run("fit", path)
        assert code == 0
        assert json.loads(out)["effective_re"]["consistent"] is False
        assert run("fit", path, "--strict")[0] == 3

    def test_custom_correlations(self, profile_file):
        doc = run_json("fit", profile_file, "--corr", "pipe-exact", "--corr", "logsq:0.3")
        assert set(doc["predictions"]) == {"cf_pred_pipe_exact", "cf_pred_logsq"}


class TestDrag:
    def test_logsq(self):
        doc = run_json("drag", "--corr", "logsq", "--re", 22026.4658)
        assert doc["cf"] == pytest.approx(0.0026, rel=1e-8)

    def test_langley(self):
        doc = run_json("drag", "--corr", "langley", "--re-theta", 30000)
        assert doc["cf"] == pytest.approx(0.0021981, abs=1e-6)
        assert doc["in_range"] is True

    def test_pipe_asym(self):
        doc = run_json("drag", "--corr", "pipe-asym", "--re", 22026.4658)
        assert doc["cf"] == pytest.approx(0.00298722, abs=5e-9)

    def test_domain_error(self):
        code, _, err = run("drag", "--corr", "logsq", "--re", 2.0)
        assert code == 2 and "ln Re > 1" in err

    def test_missing_argument(self):
        assert run("drag", "--corr", "langley", "--re", 1e6)[0] == 1


class TestFitConstant:
    def test_exact(self, tmp_path):
        path = tmp_path / "exact.csv"
        assert run("synth", "dragset", "--noise", 0, "--seed", 5, "--out", path)[0] == 0
        code, out, _ = run("fit-constant", path)
        assert code == 0
        assert '"C": 0.260000000' in out

    def test_noisy(self, dragset_file):
        doc = run_json("fit-constant", dragset_file)
        assert 0.25 <= doc["C"] <= 0.27 and doc["n"] == 40

    def test_two_rows(self, tmp_path):
        path = tmp_path / "two.csv"
        path.write_text("source,re_eff,re_theta,cf\na,1e6,,0.0013\nb,1e7,,0.001\n")
        assert run("fit-constant", path)[0] == 2

    def test_missing_column(self, tmp_path):
        path = tmp_path / "nocol.csv"
        path.write_text("source,re_theta,cf\na,1e5,0.002\nb,2e5,0.002\nc,3e5,0.002\n")
        assert run("fit-constant", path)[0] == 2


class TestCompare:
    def test_systematic(self, tmp_path):
        path, fig = tmp_path / "low.csv", tmp_path / "fig.csv"
        assert run("synth", "dragset", "--constant", 0.23, "--noise", 0, "--seed", 2,
                   "--out", path)[0] == 0
        doc = run_json("compare", path, "--corr", "logsq:0.26", "--figure-out", fig)
        rep = doc["comparisons"][0]
        assert rep["systematic"] is True and rep["n_neg"] == 40
        assert rep["mean_rel"] == pytest.approx(0.23 / 0.26 - 1, rel=1e-8)
        assert len(fig.read_text().splitlines()) == 41
        assert fig.read_text().splitlines()[0] == "source,re_eff,re_theta,cf_obs,cf_pred_logsq"

    def test_self(self, tmp_path):
        path = tmp_path / "self.csv"
        assert run("synth", "dragset", "--noise", 0, "--seed", 3, "--out", path)[0] == 0
        rep = run_json("compare", path, "--corr", "logsq")["comparisons"][0]
        assert rep["systematic"] is False
        assert all(r == 0 for r in rep["residuals"])

    def test_missing_field(self, dragset_file):
        code, _, err = run("compare", dragset_file, "--corr", "langley")
        assert code == 2 and "re_theta" in err


class TestSynth:
    def test_same_seed_identical(self, tmp_path):
        for kind, extra in (("profile", ["--re", 1e5, "--noise", 0.02]), ("dragset", [])):
            a, b = tmp_path / f"{kind}a", tmp_path / f"{kind}b"
            assert run("synth", kind, *extra, "--seed", 7, "--out", a)[0] == 0
            assert run("synth", kind, *extra, "--seed", 7, "--out", b)[0] == 0
            assert a.read_bytes() == b.read_bytes()

    def test_parse_back(self, tmp_path, dragset_file):
        path = tmp_path / "p.csv"
        run("synth", "profile", "--re", 3e5, "--noise", 0.01, "--seed", 8, "--out", path)
        text = path.read_text()
        p = read_profile(path)
        assert profile_text(p) == text
        assert samples_text(read_samples(dragset_file)) == dragset_file.read_text()

    @pytest.mark.parametrize("argv", [
        ["synth", "profile", "--re", 0.5, "--seed", 1],
        ["synth", "profile", "--seed", 1],
        ["synth", "profile", "--re", 1e5],
        ["synth", "dragset", "--re-lo", 1e8, "--re-hi", 1e5, "--seed", 1],
    ])
    def test_invalid(self, argv):
        assert run(*argv)[0] == 1


class TestApprox:
    def test_x0(self):
        doc = run_json("approx", "--x0", 22026.4658)
        assert doc["gamma"] == pytest.approx(0.2, rel=1e-8)
        assert doc["G"] == pytest.approx(0.0738906, rel=1e-6)

    def test_gamma(self):
        doc = run_json("approx", "--gamma", 0.144)
        assert doc["x0"] == pytest.approx(1.07614e6, rel=1e-5)

    def test_interval(self):
        doc = run_json("approx", "--x0", 22026.4658, "--lo", 8103.08, "--hi", 59874.1)
        assert doc["max_rel_deviation"] == pytest.approx(0.0106638, rel=1e-4)

    def test_domain(self):
        assert run("approx", "--x0", 2.0)[0] == 2
        assert run("approx")[0] == 1


class TestTheta:
    def test_table(self, tmp_path, profile_file):
        other = tmp_path / "q.csv"
        run("synth", "profile", "--re", 1e6, "--seed", 1, "--out", other)
        code, out, _ = run("theta", profile_file, other, "--jobs", 2)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "source,length_scale,theta,lambda_over_theta,re_eff,re_theta"
        assert len(lines) == 3
        assert lines[1].startswith("synth_Re22026.5,0.0330396987,")
        code1, out1, _ = run("theta", profile_file, other)
        assert out1 == out


class TestUsage:
    def test_unknown_command(self):
        assert run("frobnicate")[0] == 1

    def test_bad_flag_value(self, profile_file):
        assert run("fit", profile_file, "--tol-ln", "-1")[0] == 1
        assert run("fit", profile_file, "--min-seg", "abc")[0] == 1

    def test_help(self):
        assert run("--help")[0] == 0

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "bldrag", "drag", "--corr", "logsq",
                            "--re", str(math.exp(10))], capture_output=True, text=True)
        assert r.returncode == 0
        assert json.loads(r.stdout)["cf"] == pytest.approx(0.0026)
